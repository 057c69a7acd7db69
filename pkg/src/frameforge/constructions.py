"""Deterministic and seeded frame constructions."""
from __future__ import annotations

import numpy as np

from .designs import DesignIncidence
from .errors import BadPrime, EmptyRowSet, HadamardUnavailable, NotPrime, UnsupportedSize, ZeroIndexIncluded
from .finite import FiniteField, hadamard, is_prime, quadratic_residues
from .frame import Frame
from .linalg import as_rng

# Index set of the 18 x 37 spherical 2-design example (a 9-element subset of Z_37).
DIFFERENCE_SET_37 = (1, 7, 9, 10, 12, 16, 26, 33, 34)


def _rows(rows, n):
    rows = sorted({int(r) for r in rows})
    if not rows:
        raise EmptyRowSet("row set is empty")
    if rows[0] < 0 or rows[-1] >= n:
        raise ValueError(f"rows must lie in 0..{n - 1}")
    return rows


def dft_rows(n: int, rows) -> np.ndarray:
    """Rows of the n x n matrix with entries w^(mk), w = exp(-2 pi i / n)."""
    r = np.asarray(rows)[:, None]
    k = np.arange(n)[None, :]
    return np.exp(-2j * np.pi * ((r * k) % n) / n)


def build_harmonic(n: int, rows, normalize: bool = True) -> Frame:
    rows = _rows(rows, n)
    a = dft_rows(n, rows)
    if normalize:
        a = a / np.sqrt(len(rows))
    return Frame(a, family="harmonic", params={"n": n, "rows": rows, "normalize": int(normalize)})


def build_harmonic_plus_identity(n: int, rows, k: int = 1) -> Frame:
    """Rescaled harmonic rows followed by the first k identity basis vectors.

    The first k selected rows are weighted sqrt((N+K-M)/(MN)), the rest
    sqrt((N+K)/(MN)), which makes the (M, N+K) result a unit norm tight frame.
    """
    rows = _rows(rows, n)
    m = len(rows)
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= number of rows")
    d = np.full(m, np.sqrt((n + k) / (m * n)))
    d[:k] = np.sqrt((n + k - m) / (m * n))
    a = np.hstack([d[:, None] * dft_rows(n, rows), np.eye(m)[:, :k]])
    return Frame(a, family="harmonic_identity", params={"n": n, "rows": rows, "k": k})


def build_vandermonde(bases, m: int, normalize: bool = False) -> Frame:
    """m x N matrix with rows 1, a, ..., a^(m-1) for the given bases a."""
    if m < 1:
        raise ValueError("m must be >= 1")
    z = np.asarray(bases, dtype=complex)
    a = z[None, :] ** np.arange(m)[:, None]
    if normalize:
        a = a / np.linalg.norm(a, axis=0)
    return Frame(a, family="vandermonde", params={"m": m, "N": z.size})


def build_steiner_etf(d: DesignIncidence, h_kind: str = "auto", row_choice=None) -> Frame:
    """ETF from a (2,k,v)-Steiner system.

    Column j of the b x v incidence becomes a b x (r+1) block: the t-th one
    (in block order) is replaced by row ``row_choice[t]`` of a Hadamard matrix
    of size r+1, zeros by zero rows. Blocks are concatenated and scaled by
    sqrt((k-1)/(v-1)). By default the all-ones row 0 is skipped, so the
    columns sum to zero.
    """
    size = d.r + 1
    if h_kind == "auto":
        h_kind = "real_sylvester" if size & (size - 1) == 0 else "complex_dft"
    try:
        h = hadamard(size, h_kind)
    except UnsupportedSize as exc:
        raise HadamardUnavailable(str(exc)) from exc
    chosen = list(range(1, size)) if row_choice is None else [int(i) for i in row_choice]
    if len(chosen) != d.r or len(set(chosen)) != d.r or not all(0 <= i < size for i in chosen):
        raise ValueError(f"row_choice needs {d.r} distinct rows of the {size} x {size} Hadamard matrix")
    inc = np.asarray(d.incidence)
    blocks = []
    for j in range(d.v):
        phi = np.zeros((d.b, size), dtype=complex)
        for t, i in enumerate(np.flatnonzero(inc[:, j])):
            phi[i] = h[chosen[t]]
        blocks.append(phi)
    a = np.hstack(blocks) * np.sqrt((d.k - 1) / (d.v - 1))
    return Frame(a, family="steiner", params={"v": d.v, "k": d.k, "hadamard": h_kind, "rows": chosen})


def build_paley_etf(p: int, real: bool = False) -> Frame:
    """(p+1)/2 x (p+1) ETF: quadratic-residue DFT rows (0 included) plus e_0.

    With ``real`` the frame is rotated to a real frame with the same Gram matrix.
    """
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    if p % 4 != 1:
        raise BadPrime(f"need p = 1 mod 4, got p = {p} = {p % 4} mod 4")
    f = build_harmonic_plus_identity(p, quadratic_residues(p), 1)
    f = f.with_matrix(f.matrix, family="paley", params={"p": p})
    return real_rotation(f) if real else f


def real_rotation(f: Frame) -> Frame:
    """Real frame with the same Gram matrix, when the Gram matrix is real."""
    g = f.matrix.conj().T @ f.matrix
    if np.max(np.abs(g.imag)) > 1e-9:
        raise ValueError("Gram matrix is not real; no real rotation exists")
    w, v = np.linalg.eigh(g.real)
    top = np.argsort(w)[::-1][: f.m]
    a = np.sqrt(np.clip(w[top], 0, None))[:, None] * v[:, top].T
    return f.with_matrix(a, params={**f.params, "real": 1})


def build_gabor(m: int, seed_kind: str = "alltop", rng=None, modulation: str = "shifted") -> Frame:
    """m x m^2 Gabor frame of time-frequency shifts of a seed vector f.

    Columns are ordered (x, y) row-major. With ``modulation="shifted"`` (default)
    the element is f(t-x) e^(2 pi i y (t-x)/m), i.e. modulate then translate;
    ``"fixed"`` gives f(t-x) e^(2 pi i y t/m). The two differ by a unimodular
    factor per column, so mu and the spectral norm agree while nu does not.
    ``alltop`` uses f(t) = e^(2 pi i t^3/m)/sqrt(m); ``steinhaus`` draws phases
    uniformly from [0, 1) with ``rng``.
    """
    t = np.arange(m)
    seed = None
    if seed_kind == "alltop":
        g = np.exp(2j * np.pi * (t ** 3 % m) / m) / np.sqrt(m)
    elif seed_kind == "steinhaus":
        rng = as_rng(rng)
        seed = rng.seed
        g = np.exp(2j * np.pi * rng.uniform(m)) / np.sqrt(m)
    else:
        raise ValueError(f"unknown seed kind {seed_kind!r}")
    if modulation not in ("shifted", "fixed"):
        raise ValueError(f"unknown modulation {modulation!r}")
    cols = []
    for x in range(m):
        shifted = g[(t - x) % m]
        origin = (t - x) if modulation == "shifted" else t
        for y in range(m):
            cols.append(shifted * np.exp(2j * np.pi * y * origin / m))
    return Frame(np.array(cols).T, family="gabor",
                 params={"m": m, "seed_kind": seed_kind, "modulation": modulation}, seed=seed)


def build_chirp(m: int) -> Frame:
    """m x m^2 frame h_ab(t) = h(t)^a e^(2 pi i b t/m)/sqrt(m), h(t) = e^(pi i t(t-m)/m)."""
    if not is_prime(m):
        raise NotPrime(f"{m} is not prime")
    t = np.arange(m)
    cols = []
    for a in range(m):
        base = np.exp(1j * np.pi * a * t * (t - m) / m)
        for b in range(m):
            cols.append(base * np.exp(2j * np.pi * b * t / m) / np.sqrt(m))
    return Frame(np.array(cols).T, family="chirp", params={"m": m})


def build_spherical_2design(dft_size: int, rows) -> Frame:
    """Real 2|rows| x N frame of cosine/sine pairs at the selected nonzero frequencies.

    Frequencies are taken in decreasing order; row 2j-1 holds the cosine and
    row 2j the sine of the j-th largest.
    """
    n = int(dft_size)
    if any(int(r) % n == 0 for r in rows):
        raise ZeroIndexIncluded("frequency 0 is not allowed")
    freqs = sorted({int(r) % n for r in rows}, reverse=True)
    m = 2 * len(freqs)
    if n < 2 * m:
        raise ValueError(f"need dft_size >= 2M = {2 * m}")
    ell = np.arange(n)
    a = np.empty((m, n))
    for j, f in enumerate(freqs):
        a[2 * j] = np.cos(2 * np.pi * f * ell / n)
        a[2 * j + 1] = np.sin(2 * np.pi * f * ell / n)
    a *= np.sqrt(2.0 / m)
    return Frame(a, family="spherical", params={"n": n, "rows": sorted(freqs)})


def build_code_frame(m: int, t: int) -> Frame:
    """2^m x 2^((t+1)m) frame (-1)^Tr[a0 x + sum_i a_i x^(2^i+1)] / sqrt(2^m).

    Rows are indexed by x in GF(2^m), columns by (a0, ..., at) with a0 varying fastest.
    """
    F = FiniteField(2, m)
    q = F.q
    x = np.arange(q)
    tr = F.trace_table[F.mul_table]  # tr[a, y] = Tr(a y)
    powers = [x] + [F.power(x, 2 ** i + 1) for i in range(1, t + 1)]
    exps = np.zeros((q, q ** (t + 1)), dtype=np.int64)
    for col in range(q ** (t + 1)):
        alpha = [(col // q ** i) % q for i in range(t + 1)]
        e = np.zeros(q, dtype=np.int64)
        for a_i, pw in zip(alpha, powers):
            e += tr[a_i, pw]
        exps[:, col] = e % 2
    a = (1.0 - 2.0 * exps) / np.sqrt(q)
    return Frame(a, family="code", params={"m": m, "t": t})


def build_simplex(n: int) -> Frame:
    """(n-1) x n regular simplex: unit vectors with pairwise inner product -1/(n-1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    c = np.eye(n) - 1.0 / n
    q, _ = np.linalg.qr(c)
    a = q[:, : n - 1].T @ c
    a /= np.linalg.norm(a, axis=0)
    return Frame(a, family="simplex", params={"n": n})


def build_planar(n: int) -> Frame:
    """n equally spaced lines in the plane: columns (cos(pi k/n), sin(pi k/n))."""
    th = np.pi * np.arange(n) / n
    return Frame(np.vstack([np.cos(th), np.sin(th)]), family="planar", params={"n": n})


def build_identity_fourier(m: int) -> Frame:
    """The m x 2m frame [I F] with F the unitary DFT."""
    f = dft_rows(m, range(m)) / np.sqrt(m)
    return Frame(np.hstack([np.eye(m), f]), family="identity_fourier", params={"m": m})


def build_random(kind: str, m: int, n: int | None = None, rng=None) -> Frame:
    """Seeded random frames.

    kind: ``normalized_gaussian`` (real Gaussian columns scaled to unit norm),
    ``random_harmonic`` (each DFT row kept independently with probability m/n;
    the realised row count is recorded as ``rows``), ``steinhaus_gabor``,
    or ``rademacher`` (independent +-1/sqrt(m) entries).
    """
    rng = as_rng(rng)
    if kind == "normalized_gaussian":
        a = rng.normal((m, n))
        a /= np.linalg.norm(a, axis=0)
        return Frame(a, family="normalized_gaussian", params={"m": m, "n": n}, seed=rng.seed)
    if kind == "random_harmonic":
        keep = np.flatnonzero(rng.uniform(n) < m / n)
        if keep.size == 0:
            raise EmptyRowSet("no rows selected")
        f = build_harmonic(n, keep, normalize=True)
        return f.with_matrix(f.matrix, family="random_harmonic",
                             params={"m": m, "n": n, "rows": keep.size, "row_set": list(keep)}, seed=rng.seed)
    if kind == "steinhaus_gabor":
        return build_gabor(m, "steinhaus", rng)
    if kind == "rademacher":
        a = rng.signs((m, n)) / np.sqrt(m)
        return Frame(a, family="rademacher", params={"m": m, "n": n}, seed=rng.seed)
    raise ValueError(f"unknown random kind {kind!r}")
