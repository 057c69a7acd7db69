"""Fingerprint collusion channel: focused correlation detector, error bounds and geometry."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .coherence import worst_case_coherence
from .frame import Frame
from .linalg import as_rng


def q_function(x: float) -> float:
    """Standard normal upper tail Q(x) = P(Z > x)."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


@dataclass
class CollusionScenario:
    """Fingerprints gamma * phi_n for the columns phi_n of a unit norm frame."""

    frame: Frame
    coalition: list
    weights: np.ndarray
    sigma: float
    tau: float
    gamma: float = 1.0

    def __post_init__(self):
        self.coalition = [int(c) for c in self.coalition]
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(set(self.coalition)) != len(self.coalition) or self.weights.size != len(self.coalition):
            raise ValueError("coalition indices must be distinct, one weight each")
        if np.any(self.weights < 0) or abs(self.weights.sum() - 1) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")
        if not self.frame.is_real:
            raise ValueError("fingerprints must be real; rotate the frame to real form first")
        if self.sigma <= 0 or self.gamma <= 0:
            raise ValueError("sigma and gamma must be positive")

    @classmethod
    def equal_weights(cls, frame, coalition, sigma, tau, gamma=1.0):
        k = len(coalition)
        return cls(frame, coalition, np.full(k, 1.0 / k), sigma, tau, gamma)


@dataclass
class DetectionRates:
    empirical_PI: float
    empirical_PII: float
    per_user_accuse: np.ndarray
    trials: int


def simulate_detection(s: CollusionScenario, trials: int, rng=None, chunk: int = 20000) -> DetectionRates:
    """Monte Carlo of y = sum_k x_k gamma phi_k + z and the detector T_n(y) >= tau.

    T_n(y) = <y, gamma phi_n> / gamma^2, z real Gaussian with variance sigma^2
    per entry. PI is the worst false-accusation rate over innocent users, PII
    the smallest miss rate over coalition members.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = as_rng(rng)
    phi = s.frame.matrix.real
    m, n = phi.shape
    signal = (phi[:, s.coalition] @ s.weights) * s.gamma
    mean_t = phi.T @ signal / s.gamma
    hits = np.zeros(n)
    done = 0
    while done < trials:
        b = min(chunk, trials - done)
        z = rng.normal((b, m), scale=s.sigma)
        t = mean_t[None, :] + (z @ phi) / s.gamma
        hits += np.sum(t >= s.tau, axis=0)
        done += b
    rate = hits / trials
    guilty = np.zeros(n, bool)
    guilty[s.coalition] = True
    p1 = float(rate[~guilty].max()) if (~guilty).any() else 0.0
    p2 = float((1 - rate[guilty]).min())
    return DetectionRates(p1, p2, rate, trials)


@dataclass
class ErrorBounds:
    PI_bound: float
    PII_bound: float
    mu: float


def theoretical_bounds(s: CollusionScenario, mu: float | None = None) -> ErrorBounds:
    """Q((gamma/sigma)(tau - mu)) and Q((gamma/sigma)((1+mu) max x_k - mu - tau))."""
    if mu is None:
        mu = worst_case_coherence(s.frame.normalized())
    r = s.gamma / s.sigma
    return ErrorBounds(q_function(r * (s.tau - mu)),
                       q_function(r * ((1 + mu) * s.weights.max() - mu - s.tau)), mu)


def _averages(a, n, k):
    """Equal-weight averages of column subsets of size <= k, split by whether they contain n."""
    inside, outside = [], []
    for size in range(1, k + 1):
        for c in itertools.combinations(range(a.shape[1]), size):
            (inside if n in c else outside).append(a[:, list(c)].mean(axis=1))
    return np.array(inside), np.array(outside)


def guilt_distance(f: Frame, k: int, n: int, limit: int = 14) -> float:
    """Distance between equal-weight averages of <= k fingerprints that include
    user n and those that do not, by brute force."""
    if f.n > limit or k > 4:
        raise ValueError(f"brute force limited to N <= {limit}, K <= 4")
    g_in, g_out = _averages(f.matrix, n, k)
    if not len(g_out):
        return math.inf
    d2 = (np.sum(np.abs(g_in) ** 2, 1)[:, None] + np.sum(np.abs(g_out) ** 2, 1)[None, :]
          - 2 * np.real(g_in.conj() @ g_out.T))
    return float(math.sqrt(max(d2.min(), 0.0)))


def simplex_distance(n: int, k: int) -> float:
    """Closed form of the guilt distance for the (N-1) x N simplex."""
    return math.sqrt(n / ((n - 1) * k * (k - 1)))


def rip_distance_bound(delta_2k: float, k: int) -> float:
    return math.sqrt(max(1 - delta_2k, 0.0) / (k * (k - 1)))


def coherence_distance_bound(mu: float, k: int) -> float | None:
    """sqrt((1 - (2K-1) mu)/(K(K-1))), or None when the radicand is negative."""
    v = 1 - (2 * k - 1) * mu
    return math.sqrt(v / (k * (k - 1))) if v >= 0 else None
