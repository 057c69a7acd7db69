"""Worst-case and average coherence, Welch and packing bounds, and the SCP verdict."""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .frame import Frame
from .linalg import gram, spectral_norm

SCP1_CONSTANT = 164


@dataclass
class CoherenceReport:
    mu: float
    nu: float
    spectral_norm: float
    frame_potential: float
    welch_bound: float
    scp1: bool
    scp2: bool
    argmax_pair: tuple[int, int]
    normalized: bool = False

    def to_text(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.as_dict().items()) + "\n"

    def as_dict(self) -> dict:
        d = asdict(self)
        d["argmax_pair"] = list(self.argmax_pair)
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _unit(f: Frame):
    if f.unit_norm:
        return f, False
    warnings.warn("frame columns are not unit norm; normalizing before computing coherence", stacklevel=3)
    return f.normalized(), True


def _off_diagonal(g):
    g = g.copy()
    np.fill_diagonal(g, 0)
    return g


def worst_case_coherence(f: Frame) -> float:
    g = gram(f.matrix)
    return float(np.max(np.abs(_off_diagonal(g)))) if f.n > 1 else 0.0


def average_coherence(f: Frame) -> float:
    """max_i |sum_{j != i} <phi_i, phi_j>| / (N-1)."""
    if f.n < 2:
        return 0.0
    g = _off_diagonal(gram(f.matrix))
    return float(np.max(np.abs(g.sum(axis=1)))) / (f.n - 1)


def welch_lower_bound(m: int, n: int) -> float:
    if not n >= m >= 1:
        raise ValueError("need n >= m >= 1")
    if n == 1:
        return 0.0
    return math.sqrt((n - m) / (m * (n - 1)))


def coherence_report(f: Frame) -> CoherenceReport:
    """All coherence statistics of a frame (normalizing its columns first if needed).

    SCP-1 is mu <= 1/(164 ln N) with the natural logarithm; SCP-2 is nu <= mu/sqrt(M).
    """
    f, normalized = _unit(f)
    n, m = f.n, f.m
    g = gram(f.matrix)
    off = np.abs(_off_diagonal(g))
    if n > 1:
        flat = int(np.argmax(off))  # first maximiser in row-major order
        i, j = divmod(flat, n)
        mu = float(off[i, j])
        pair = (min(i, j), max(i, j))
        nu = float(np.max(np.abs(_off_diagonal(g).sum(axis=1)))) / (n - 1)
    else:
        mu, nu, pair = 0.0, 0.0, (0, 0)
    scp1 = n > 1 and mu <= 1.0 / (SCP1_CONSTANT * math.log(n))
    scp2 = nu <= mu / math.sqrt(m) + 1e-12
    return CoherenceReport(
        mu=mu,
        nu=nu,
        spectral_norm=spectral_norm(f.matrix),
        frame_potential=float(np.sum(np.abs(g) ** 2)),
        welch_bound=welch_lower_bound(m, n),
        scp1=bool(scp1),
        scp2=bool(scp2),
        argmax_pair=pair,
        normalized=normalized,
    )


@dataclass
class LowerBounds:
    complex_bound: float
    real_bound: float
    dim3_bound: float | None


def real_packing_bound(m: int, n: int) -> float:
    """cos[pi ((M-1)/(N sqrt(pi)) Gamma((M-1)/2)/Gamma(M/2))^(1/(M-1))] for real unit norm frames."""
    if m < 2:
        raise ValueError("need m >= 2")
    log_ratio = math.lgamma((m - 1) / 2) - math.lgamma(m / 2)
    base = (m - 1) / (n * math.sqrt(math.pi)) * math.exp(log_ratio)
    return math.cos(math.pi * base ** (1.0 / (m - 1)))


def asymptotic_lower_bounds(m: int, n: int) -> LowerBounds:
    """Coherence lower bounds: 1 - 2N^(-1/(M-1)) for any unit norm frame,
    the real-frame cap-packing bound, and 1 - 4/N + 2/N^2 when M = 3.

    The real bound is derived for N >= 2M; it is evaluated for any N.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    cb = 1.0 - 2.0 * n ** (-1.0 / (m - 1))
    rb = real_packing_bound(m, n)
    d3 = 1.0 - 4.0 / n + 2.0 / n ** 2 if m == 3 else None
    return LowerBounds(cb, rb, d3)


@dataclass
class SufficientConditions:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool

    @property
    def any(self) -> bool:
        return self.cond_i or self.cond_ii or self.cond_iii


def check_nu_sufficient_conditions(f: Frame, tol: float = 1e-9) -> SufficientConditions:
    """Conditions on a unit norm frame that each imply nu <= mu/sqrt(M).

    (i)   <phi_k, sum_n phi_n> = N/M for every k
    (ii)  N >= 2M and sum_n phi_n = 0
    (iii) N >= M^2 + 3M + 3 and ||sum_n phi_n||^2 <= N
    """
    f, _ = _unit(f)
    m, n = f.m, f.n
    s = f.matrix.sum(axis=1)
    inner = f.matrix.conj().T @ s  # <phi_k, s> up to conjugation; compared to a real target
    c1 = bool(np.all(np.abs(inner - n / m) <= tol * max(1.0, n / m)))
    ss = float(np.vdot(s, s).real)
    c2 = n >= 2 * m and math.sqrt(ss) <= tol * math.sqrt(n)
    c3 = n >= m * m + 3 * m + 3 and ss <= n + tol
    return SufficientConditions(c1, bool(c2), bool(c3))
