"""Restricted isometry and restricted orthogonality: exact enumeration and estimates."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .coherence import coherence_report, worst_case_coherence
from .errors import BadPrime, BudgetExceeded
from .finite import is_prime, legendre
from .frame import Frame
from .linalg import as_rng, gram
from .parallel import combination_batches, ordered_map

DEFAULT_BUDGET = 10 ** 7
FRO_CONSTANT = 75.0
FRO_CONSTANT_PROOF = 74.17
TIE_TOL = 1e-12


@dataclass
class RipReport:
    k: int
    method: str  # exact | gershgorin | power(q) | flat_ro | ro_bridge
    delta: float
    witness: tuple | None = None
    runtime_ms: float = 0.0

    def as_dict(self):
        w = None if self.witness is None else [list(map(int, x)) if isinstance(x, tuple) else int(x) for x in self.witness]
        return {"k": self.k, "method": self.method, "delta": self.delta, "witness": w,
                "runtime_ms": round(self.runtime_ms, 3)}


def _check_budget(count, budget):
    if count > budget:
        raise BudgetExceeded(f"{count} subsets exceed the enumeration budget {budget}")


def _argmax_subsets(n, k, score, budget, threads):
    """Max of score(batch) over all k-subsets, with the lexicographically first near-maximiser."""
    _check_budget(math.comb(n, k), budget)

    def work(idx):
        vals = score(idx)
        j = int(np.argmax(vals))
        first = int(np.flatnonzero(vals >= vals[j] - TIE_TOL)[0])
        return float(vals[j]), tuple(int(i) for i in idx[first])

    best, witness = -np.inf, None
    for val, w in ordered_map(work, combination_batches(n, k), threads):
        if val > best + TIE_TOL:
            best, witness = val, w
        elif val > best:
            best = val
    return best, witness


def _principal(g, idx):
    return g[idx[:, :, None], idx[:, None, :]]


def exact_delta(f: Frame, k: int, budget: int = DEFAULT_BUDGET, threads=None) -> RipReport:
    """delta_K = max over |S| = K of ||Phi_S^* Phi_S - I||_2, by full enumeration."""
    t0 = time.perf_counter()
    g = gram(f.matrix)
    eye = np.eye(k)

    def score(idx):
        ev = np.linalg.eigvalsh(_principal(g, idx) - eye)
        return np.max(np.abs(ev), axis=1)

    d, w = _argmax_subsets(f.n, k, score, budget, threads)
    return RipReport(k, "exact", d, w, 1e3 * (time.perf_counter() - t0))


def gershgorin_delta(f: Frame, k: int) -> RipReport:
    """(K-1) mu, the Gershgorin upper bound on delta_K of a unit norm frame."""
    t0 = time.perf_counter()
    mu = worst_case_coherence(f)
    return RipReport(k, "gershgorin", (k - 1) * mu, None, 1e3 * (time.perf_counter() - t0))


def power_delta(f: Frame, k: int, q: int, budget: int = DEFAULT_BUDGET, threads=None) -> RipReport:
    """delta_{K;q} = max over |S| = K of Tr[(Phi_S^* Phi_S - I)^(2q)]^(1/(2q)).

    Nonincreasing in q and converging to delta_K from above.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    t0 = time.perf_counter()
    g = gram(f.matrix)
    eye = np.eye(k)

    def score(idx):
        b = np.linalg.matrix_power(_principal(g, idx) - eye, q)
        return np.sum(np.abs(b) ** 2, axis=(1, 2))  # Tr(A^(2q)) = ||A^q||_F^2

    tr, w = _argmax_subsets(f.n, k, score, budget, threads)
    return RipReport(k, f"power({q})", float(max(tr, 0.0) ** (1.0 / (2 * q))), w,
                     1e3 * (time.perf_counter() - t0))


def _splits(s, k):
    """Ways to split positions 0..s-1 into nonempty I, J with |I|, |J| <= k and 0 in I."""
    out = []
    rest = list(range(1, s))
    for a in range(1, min(k, s - 1) + 1):
        b = s - a
        if b > k:
            continue
        for tail in itertools.combinations(rest, a - 1):
            i = (0,) + tail
            j = tuple(x for x in range(s) if x not in i)
            out.append((i, j))
    return out


def restricted_orthogonality(f: Frame, k: int, budget: int = DEFAULT_BUDGET, threads=None,
                             return_witness: bool = False):
    """theta_K: max over disjoint I, J with |I|, |J| <= K of sigma_max(Phi_I^* Phi_J).

    Only maximal supports are scanned (|I| + |J| = min(2K, N)); shrinking a
    support can only shrink the top singular value of the block.
    """
    n = f.n
    if n < 2:
        return (0.0, None) if return_witness else 0.0
    s = min(2 * k, n)
    splits = _splits(s, k)
    _check_budget(math.comb(n, s) * len(splits), budget)
    g = gram(f.matrix)
    groups = {}
    for i, j in splits:
        groups.setdefault(len(i), []).append((i, j))

    def work(idx):
        top, w = -1.0, None
        for size, sp in groups.items():
            ii = np.array([x[0] for x in sp])
            jj = np.array([x[1] for x in sp])
            rows = idx[:, ii]  # (B, P, a)
            cols = idx[:, jj]  # (B, P, b)
            blk = g[rows[..., :, None], cols[..., None, :]]
            sv = np.linalg.svd(blk, compute_uv=False)[..., 0]
            flat = int(np.argmax(sv))
            if sv.flat[flat] > top + TIE_TOL:
                bi, pj = divmod(flat, sv.shape[1])
                top = float(sv.flat[flat])
                w = (tuple(int(x) for x in rows[bi, pj]), tuple(int(x) for x in cols[bi, pj]))
        return top, w

    best, witness = 0.0, None
    for val, w in ordered_map(work, combination_batches(n, s, 2048), threads):
        if val > best + TIE_TOL:
            best, witness = val, w
    return (best, witness) if return_witness else best


@dataclass
class FlatRO:
    theta_hat: float
    ro_upper: float
    witness: tuple | None = None
    constant: float = FRO_CONSTANT


def flat_ro(f: Frame, k: int, constant: float = FRO_CONSTANT, budget: int = DEFAULT_BUDGET) -> FlatRO:
    """Tightest flat restricted orthogonality constant and the RO bound it implies.

    theta_hat = max |<sum_I phi, sum_J phi>| / sqrt(|I||J|) over disjoint nonempty
    I, J with sizes <= K. ro_upper = constant * theta_hat * ln K (theta_hat when K = 1).
    """
    n = f.n
    subsets = [c for s in range(1, k + 1) for c in itertools.combinations(range(n), s)]
    _check_budget(len(subsets) ** 2, budget)
    sums = np.stack([f.matrix[:, list(c)].sum(axis=1) for c in subsets], axis=1)
    sizes = np.array([len(c) for c in subsets], dtype=float)
    masks = np.array([sum(1 << i for i in c) for c in subsets], dtype=np.uint64)
    p = np.abs(sums.conj().T @ sums) / np.sqrt(np.outer(sizes, sizes))
    disjoint = (masks[:, None] & masks[None, :]) == 0
    p = np.where(disjoint, p, -1.0)
    flat = int(np.argmax(p))
    a, b = divmod(flat, len(subsets))
    th = max(float(p[a, b]), 0.0)
    upper = th if k == 1 else constant * th * math.log(k)
    return FlatRO(th, upper, (subsets[a], subsets[b]), constant)


def ro_to_rip(theta_k: float, delta_1: float) -> float:
    """delta_2K <= 2 theta_K + delta_1."""
    if theta_k < 0 or delta_1 < 0:
        raise ValueError("inputs must be nonnegative")
    return 2.0 * theta_k + delta_1


def iterated_ro_bound(theta_k: float, delta_1: float, k: int) -> float:
    """The older estimate delta_2K <= (1 + ceil(log2 K)) theta_K + delta_1."""
    return (1 + math.ceil(math.log2(k))) * theta_k + delta_1


@dataclass
class WeakRipProbe:
    distortions: np.ndarray = field(repr=False)
    quantiles: dict
    regime: bool | None
    mu: float
    nu: float


def weak_rip_probe(f: Frame, values, trials: int, rng=None, delta: float | None = None) -> WeakRipProbe:
    """Distortion |(||Phi x||^2 - ||x||^2)| / ||x||^2 for random permutations x of a K-sparse vector.

    ``values`` are the K nonzero entries; each trial places them on a uniformly
    random support (in a random order). ``regime`` reports whether the frame and
    K fall under the weak-RIP guarantee (SCP, N >= 128 and
    2K ln N <= min(delta^2/(100 mu^2), M)); it is None when delta is not given.
    """
    rng = as_rng(rng)
    vals = np.asarray(values, dtype=complex)
    k, n = vals.size, f.n
    out = np.empty(trials)
    norm2 = float(np.vdot(vals, vals).real)
    for t in range(trials):
        support = rng.permutation(n)[:k]
        y = f.matrix[:, support] @ vals
        out[t] = abs(float(np.vdot(y, y).real) - norm2) / norm2
    rep = coherence_report(f)
    regime = None
    if delta is not None:
        cap = delta ** 2 / (100 * rep.mu ** 2) if rep.mu > 0 else math.inf
        regime = bool(rep.scp1 and rep.scp2 and n >= 128 and 2 * k * math.log(n) <= min(cap, f.m))
    qs = {"max": float(out.max()), "q99": float(np.quantile(out, 0.99)), "q90": float(np.quantile(out, 0.9)),
          "median": float(np.median(out)), "mean": float(out.mean())}
    return WeakRipProbe(out, qs, regime, rep.mu, rep.nu)


def paley_graph(p: int):
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(p))
    g.add_edges_from((i, j) for i in range(p) for j in range(i + 1, p) if legendre(j - i, p) == 1)
    return g


@dataclass
class CliqueAudit:
    p: int
    omega: int
    clique: list
    sqrt_p: float
    verdict: bool


def paley_clique_audit(p: int) -> CliqueAudit:
    """Exact clique number of the Paley graph on Z_p, checked against omega < sqrt(p)."""
    import networkx as nx

    if not is_prime(p) or p % 4 != 1:
        raise BadPrime(f"need a prime p = 1 mod 4, got {p}")
    if p > 101:
        raise BudgetExceeded("clique search is limited to p <= 101")
    clique, size = nx.max_weight_clique(paley_graph(p), weight=None)
    return CliqueAudit(p, int(size), sorted(clique), math.sqrt(p), size < math.sqrt(p))
