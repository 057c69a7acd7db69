"""Wiggling/flipping equivalence and flipping algorithms that lower average coherence."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frame import Frame
from .linalg import gram
from .parallel import ordered_map

EXHAUSTIVE_MAX_N = 22


@dataclass
class FlipPattern:
    signs: np.ndarray

    def __post_init__(self):
        self.signs = np.asarray(self.signs, dtype=complex).reshape(-1)
        if not np.allclose(np.abs(self.signs), 1.0, atol=1e-12):
            raise ValueError("pattern entries must be unimodular")

    def __len__(self):
        return self.signs.size

    @property
    def is_flip(self) -> bool:
        return bool(np.all(self.signs.imag == 0) and np.all(np.abs(self.signs.real) == 1))

    def to_string(self) -> str:
        if not self.is_flip:
            raise ValueError("only +-1 patterns have a string form")
        return "".join("+" if s.real > 0 else "-" for s in self.signs)

    @classmethod
    def from_string(cls, text: str) -> "FlipPattern":
        table = {"+": 1.0, "-": -1.0, "−": -1.0}
        try:
            return cls([table[c] for c in text.strip()])
        except KeyError as exc:
            raise ValueError(f"pattern characters must be + or -, got {exc.args[0]!r}") from None


def apply_pattern(f: Frame, d: FlipPattern) -> Frame:
    """Psi = Phi D: column i multiplied by d.signs[i]."""
    if len(d) != f.n:
        raise ValueError(f"pattern length {len(d)} != N = {f.n}")
    return f.with_matrix(f.matrix * d.signs[None, :])


def nu_of_pattern(g_off: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Average coherence of Phi D for a batch of sign patterns (rows of ``signs``)."""
    n = g_off.shape[0]
    s = signs @ g_off.T  # (B, N): sum_j d_j G_ij
    return np.max(np.abs(s), axis=1) / (n - 1)


@dataclass
class FlipResult:
    frame: Frame = field(repr=False)
    pattern: FlipPattern
    partial_sq_norms: np.ndarray = field(repr=False)


def linear_time_flip(f: Frame) -> FlipResult:
    """Greedy pass: keep phi_n unless flipping it makes the running sum shorter.

    The running sums satisfy ||psi_1 + ... + psi_k||^2 <= k for unit norm input.
    """
    a = f.matrix
    signs = np.ones(f.n)
    total = a[:, 0].copy()
    partial = np.empty(f.n)
    partial[0] = np.vdot(total, total).real
    for i in range(1, f.n):
        v = a[:, i]
        if np.linalg.norm(total + v) > np.linalg.norm(total - v):
            signs[i] = -1.0
        total = total + signs[i] * v
        partial[i] = np.vdot(total, total).real
    pat = FlipPattern(signs)
    return FlipResult(apply_pattern(f, pat), pat, partial)


def exhaustive_flip(f: Frame, threads=None, batch_bits: int = 14) -> tuple[FlipPattern, float]:
    """Pattern minimising nu over the whole flipping class (first sign fixed to +1)."""
    n = f.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive flipping needs N <= {EXHAUSTIVE_MAX_N}")
    if n == 1:
        return FlipPattern([1.0]), 0.0
    g = gram(f.matrix)
    np.fill_diagonal(g, 0)
    if np.all(g.imag == 0):
        g = g.real
    free = n - 1
    total = 1 << free
    step = 1 << min(batch_bits, free)
    bits = np.arange(free)

    def work(start):
        codes = np.arange(start, min(start + step, total))
        s = 1.0 - 2.0 * ((codes[:, None] >> bits[None, :]) & 1)
        signs = np.hstack([np.ones((codes.size, 1)), s])
        vals = nu_of_pattern(g, signs)
        j = int(np.argmin(vals))
        return float(vals[j]), signs[j]

    best, best_signs = np.inf, None
    for val, sg in ordered_map(work, range(0, total, step), threads):
        if val < best - 1e-15:
            best, best_signs = val, sg
    return FlipPattern(best_signs), best
