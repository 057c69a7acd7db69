"""Dense complex linear algebra primitives and the seeded random source.

Thin, validated wrappers over LAPACK (through numpy). Every function accepts
anything ``np.asarray`` understands and returns fresh arrays.
"""
from __future__ import annotations

import numpy as np

from .errors import FailedToConverge, NotHermitian, RankDeficient

HERMITIAN_TOL = 1e-10
RANK_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    return m.astype(complex, copy=False)


def gram(frame) -> np.ndarray:
    """Gram matrix ``Phi^* Phi`` of the columns of ``frame``."""
    a = as_matrix(frame)
    g = a.conj().T @ a
    # enforce exact Hermitian symmetry and a real diagonal
    g = 0.5 * (g + g.conj().T)
    return g


def hermitian_eigenvalues(h) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, with multiplicity, in descending order.

    Raises NotHermitian when any entry of ``h - h^*`` exceeds 1e-10 in modulus.
    """
    a = as_matrix(h)
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix is not square: {a.shape}")
    if a.size and np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
        raise NotHermitian("max |H - H*| entry exceeds 1e-10")
    try:
        w = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise FailedToConverge(str(exc)) from exc
    return w[::-1].copy()


def singular_values(m) -> np.ndarray:
    a = as_matrix(m)
    if a.size == 0:
        return np.zeros(0)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise FailedToConverge(str(exc)) from exc


def spectral_norm(m) -> float:
    s = singular_values(m)
    return float(s[0]) if s.size else 0.0


def smallest_singular_value(m) -> float:
    """Smallest of the min(rows, cols) singular values."""
    s = singular_values(m)
    return float(s[-1]) if s.size else 0.0


def least_squares(a, y) -> np.ndarray:
    """Minimum-residual solution of ``a x = y`` for a full column rank ``a``.

    Raises RankDeficient unless the smallest singular value exceeds 1e-10 times
    the largest.
    """
    a = as_matrix(a)
    y = np.asarray(y, dtype=complex).reshape(-1)
    if a.shape[0] != y.shape[0]:
        raise ValueError(f"row mismatch: a has {a.shape[0]} rows, y has {y.shape[0]}")
    if a.shape[1] == 0:
        return np.zeros(0, dtype=complex)
    if a.shape[1] > a.shape[0]:
        raise RankDeficient(f"{a.shape[1]} columns exceed {a.shape[0]} rows")
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s[-1] <= RANK_TOL * s[0]:
        raise RankDeficient(f"smallest singular value {s[-1]:.3e} <= 1e-10 * {s[0]:.3e}")
    return vh.conj().T @ ((u.conj().T @ y) / s)


class Rng:
    """Seeded pseudo-random source (PCG64). Same seed, same stream, everywhere."""

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def normal(self, size=None, scale=1.0):
        return self.generator.normal(0.0, scale, size)

    def complex_normal(self, size, variance=1.0):
        """Circular complex Gaussian with total variance ``variance`` per entry."""
        s = np.sqrt(variance / 2.0)
        return s * self.generator.normal(size=size) + 1j * s * self.generator.normal(size=size)

    def uniform(self, size=None):
        return self.generator.random(size)

    def integers(self, low, high=None, size=None):
        return self.generator.integers(low, high, size)

    def permutation(self, n):
        return self.generator.permutation(n)

    def choice(self, n, size, replace=False):
        return self.generator.choice(n, size=size, replace=replace)

    def signs(self, size):
        return 2.0 * self.generator.integers(0, 2, size) - 1.0

    def spawn(self, index: int) -> "Rng":
        """Independent child stream, fixed by (seed, index)."""
        child = Rng.__new__(Rng)
        child.seed = self.seed
        child.generator = np.random.Generator(np.random.PCG64([self.seed, int(index)]))
        return child


def as_rng(rng) -> Rng:
    if isinstance(rng, Rng):
        return rng
    if rng is None:
        return Rng(0)
    return Rng(int(rng))
