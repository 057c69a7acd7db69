"""Noisy sparse measurements and one-step thresholding (OST) recovery."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coherence import worst_case_coherence
from .errors import RankDeficient
from .frame import Frame
from .linalg import as_rng, least_squares, spectral_norm

_E = math.exp(-0.5)
C1 = 37 * math.e
C2 = 2 / (1 - _E)
C3 = 1 + _E / (1 - _E)


@dataclass
class SparseSignal:
    n: int
    support: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.support = np.asarray(self.support, dtype=np.intp).reshape(-1)
        self.values = np.asarray(self.values, dtype=complex).reshape(-1)
        if self.support.size != self.values.size:
            raise ValueError("support and values differ in length")
        if np.unique(self.support).size != self.support.size:
            raise ValueError("support indices repeat")
        if self.support.size and (self.support.min() < 0 or self.support.max() >= self.n):
            raise ValueError("support index out of range")

    def dense(self) -> np.ndarray:
        x = np.zeros(self.n, dtype=complex)
        x[self.support] = self.values
        return x

    @classmethod
    def random(cls, n, k, magnitude=1.0, rng=None, random_phase=True):
        """K entries of equal magnitude on a uniformly random support."""
        rng = as_rng(rng)
        support = np.sort(rng.choice(n, k))
        phase = np.exp(2j * np.pi * rng.uniform(k)) if random_phase else np.ones(k)
        return cls(n, support, magnitude * phase)


def measure(f: Frame, x: SparseSignal, sigma: float, rng=None) -> np.ndarray:
    """y = Phi x + z, z circular complex Gaussian with E|z_m|^2 = sigma^2."""
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    y = f.matrix @ x.dense()
    if sigma > 0:
        y = y + as_rng(rng).complex_normal(f.m, sigma ** 2)
    return y


@dataclass
class OstResult:
    estimated_support: np.ndarray
    estimate: np.ndarray = field(repr=False)
    threshold: float
    proxy: np.ndarray = field(repr=False)
    rank_deficient: bool = False
    l2_error: float | None = None
    support_flags: dict | None = None


def ost(f: Frame, y, lambda_: float, truth: SparseSignal | None = None) -> OstResult:
    """Threshold the proxy Phi^* y at lambda_ (strictly) and refit by least squares.

    When the selected columns are rank deficient the estimate falls back to the
    proxy restricted to the selection and ``rank_deficient`` is set.
    """
    if lambda_ <= 0:
        raise ValueError("lambda_ must be positive")
    y = np.asarray(y, dtype=complex)
    proxy = f.matrix.conj().T @ y
    sel = np.flatnonzero(np.abs(proxy) > lambda_)
    est = np.zeros(f.n, dtype=complex)
    deficient = False
    if sel.size:
        try:
            est[sel] = least_squares(f.matrix[:, sel], y)
        except RankDeficient:
            deficient = True
            est[sel] = proxy[sel]
    res = OstResult(sel, est, float(lambda_), proxy, deficient)
    if truth is not None:
        x = truth.dense()
        res.l2_error = float(np.linalg.norm(x - est))
        true = set(truth.support.tolist())
        res.support_flags = {"subset_of_true": set(sel.tolist()) <= true, "exact": set(sel.tolist()) == true}
    return res


@dataclass
class Threshold:
    lambda_: float
    coherence_branch: float
    noise_branch: float


def threshold_rule(f: Frame, sigma: float, snr: float, t: float) -> Threshold:
    """lambda = sqrt(2 sigma^2 ln N) max{(10/t) mu sqrt(M SNR), sqrt(2)/(1-t)}.

    SNR is ||x||^2 / (M sigma^2). Both branches are returned already multiplied
    by sqrt(2 sigma^2 ln N).
    """
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    base = math.sqrt(2 * sigma ** 2 * math.log(f.n))
    mu = worst_case_coherence(f)
    a = base * (10 / t) * mu * math.sqrt(f.m * snr)
    b = base * math.sqrt(2) / (1 - t)
    return Threshold(max(a, b), a, b)


def snr(f: Frame, x: SparseSignal, sigma: float) -> float:
    return float(np.vdot(x.values, x.values).real) / (f.m * sigma ** 2)


def recovery_error_bound(k_hat: int, sigma: float, n: int, residual_energy: float) -> float:
    """c2 sqrt(sigma^2 |K_hat| ln N) + c3 ||x_{K \\ K_hat}||.

    ``residual_energy`` is the norm of the missed part of x (not its square).
    """
    if min(k_hat, sigma, residual_energy) < 0:
        raise ValueError("inputs must be nonnegative")
    return C2 * math.sqrt(sigma ** 2 * k_hat * math.log(n)) + C3 * residual_energy


def missed_energy(x: SparseSignal, support) -> float:
    keep = np.isin(x.support, np.asarray(support))
    return float(np.linalg.norm(x.values[~keep]))


def guaranteed_support(f: Frame, x: SparseSignal, sigma: float, t: float) -> np.ndarray:
    """T_sigma(t) intersect T_mu(t): entries large enough that OST must keep them."""
    n = f.n
    mu = worst_case_coherence(f)
    mag = np.abs(x.values)
    t_sigma = mag > (2 * math.sqrt(2) / (1 - t)) * math.sqrt(2 * sigma ** 2 * math.log(n))
    t_mu = mag > (20 / t) * mu * np.linalg.norm(x.values) * math.sqrt(2 * math.log(n))
    return np.sort(x.support[t_sigma & t_mu])


def in_recovery_regime(f: Frame, k: int) -> bool:
    """K <= N / (c1^2 ||Phi||^2 ln N) with c1 = 37e."""
    return k <= f.n / (C1 ** 2 * spectral_norm(f.matrix) ** 2 * math.log(f.n))
