"""Phaseless recovery by polarization over a measurement graph."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import Disconnected, InconsistentCycle, NotFullSpark
from .frame import Frame
from .linalg import as_rng

PRUNE_TOL = 1e-9
CYCLE_TOL = 1e-6
UNITS = np.array([1, 1j, -1, -1j])  # i^k, k = 0..3


@dataclass
class MeasurementGraph:
    n: int
    edges: list
    degree: int | None = None
    expansion: float | None = None

    def __post_init__(self):
        clean = []
        seen = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            if not (0 <= key[0] and key[1] < self.n):
                raise ValueError(f"edge {key} out of range")
            seen.add(key)
            clean.append(key)
        self.edges = clean
        deg = np.bincount(np.array(clean, dtype=int).reshape(-1), minlength=self.n) if clean else np.zeros(self.n, int)
        if self.degree is None and self.n and np.all(deg == deg[0]):
            self.degree = int(deg[0])
        if self.expansion is None and self.degree:
            self.expansion = spectral_expansion(self)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    def neighbours(self):
        nb = [[] for _ in range(self.n)]
        for e, (i, j) in enumerate(self.edges):
            nb[i].append((j, e))
            nb[j].append((i, e))
        return nb


def spectral_expansion(g: MeasurementGraph) -> float:
    """max(|lambda_2|, |lambda_n|) / d for a d-regular graph."""
    if not g.degree:
        raise ValueError("expansion needs a regular graph of positive degree")
    ev = np.sort(np.linalg.eigvalsh(g.adjacency()))[::-1]
    return float(max(abs(ev[1]), abs(ev[-1])) / g.degree) if g.n > 1 else 0.0


def complete_graph(n: int) -> MeasurementGraph:
    return MeasurementGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int, centre: int = 0) -> MeasurementGraph:
    return MeasurementGraph(n, [(centre, j) for j in range(n) if j != centre])


def cycle_graph(n: int) -> MeasurementGraph:
    return MeasurementGraph(n, [(i, (i + 1) % n) for i in range(n)])


def random_regular_graph(n: int, d: int, rng=None, max_restarts: int = 1000) -> MeasurementGraph:
    """Simple d-regular graph from configuration-model pairing.

    Half-edges are paired one random pair at a time; a pair that would form a
    loop or a repeated edge is rejected and redrawn, and the whole pairing
    restarts if it gets stuck.
    """
    if (n * d) % 2 or not 0 <= d < n:
        raise ValueError("need n*d even and 0 <= d < n")
    rng = as_rng(rng)
    for _ in range(max_restarts):
        points = list(np.repeat(np.arange(n), d))
        edges = set()
        stuck = False
        while points:
            for _attempt in range(100):
                i, j = rng.choice(len(points), 2)
                u, v = points[i], points[j]
                if u != v and (min(u, v), max(u, v)) not in edges:
                    break
            else:
                stuck = True
                break
            edges.add((min(u, v), max(u, v)))
            for idx in sorted((i, j), reverse=True):
                points.pop(idx)
        if not stuck:
            return MeasurementGraph(n, sorted(edges), degree=d)
    raise RuntimeError("random regular pairing failed repeatedly")  # pragma: no cover


@dataclass
class PolarizationDesign:
    vertex_frame: Frame
    graph: MeasurementGraph
    vectors: np.ndarray = field(repr=False)  # M x (|V| + 4|E|)

    @property
    def count(self) -> int:
        return self.vectors.shape[1]


def build_design(frame: Frame, graph: MeasurementGraph, certify: bool = True) -> PolarizationDesign:
    """Vertex vectors phi_i followed by phi_i + i^k phi_j (k = 0..3) for each edge (i, j)."""
    if frame.n != graph.n:
        raise ValueError(f"frame has {frame.n} columns but graph has {graph.n} vertices")
    if certify:
        from .spark import is_full_spark

        if not is_full_spark(frame):
            raise NotFullSpark("vertex frame is not full spark")
    a = frame.matrix
    cols = [a]
    for i, j in graph.edges:
        cols.append(a[:, [i]] + UNITS[None, :] * a[:, [j]])
    return PolarizationDesign(frame, graph, np.hstack(cols))


def phaseless_measure(design: PolarizationDesign, x) -> np.ndarray:
    """|<x, v>| = |v^* x| for every design vector, vertices first then edges."""
    x = np.asarray(x, dtype=complex)
    return np.abs(design.vectors.conj().T @ x)


@dataclass
class Recovery:
    estimate: np.ndarray
    status: str
    component: list
    max_cycle_error: float


def recover(design: PolarizationDesign, magnitudes, prune_tol: float = PRUNE_TOL,
            cycle_tol: float | None = CYCLE_TOL) -> Recovery:
    """Recover x up to a global phase from the magnitudes of ``phaseless_measure``.

    Vertices with magnitude below prune_tol * max are removed; the largest
    surviving component must hold at least M vertices. Relative phases from
    the polarization identity are propagated along a breadth-first tree rooted
    at the strongest vertex, and x is rebuilt with the canonical dual frame of
    the component. Non-tree edges are checked for consistency; pass
    cycle_tol=None to skip the check.
    """
    g = design.graph
    a = design.vertex_frame.matrix
    m, n = a.shape
    mags = np.asarray(magnitudes, dtype=float)
    if mags.size != design.count:
        raise ValueError(f"expected {design.count} magnitudes, got {mags.size}")
    vert = mags[:n]
    edge = mags[n:].reshape(len(g.edges), 4)
    # conj(<x,phi_i>) <x,phi_j> = 1/4 sum_k i^k |<x, phi_i + i^k phi_j>|^2
    products = 0.25 * (edge ** 2 * UNITS[None, :]).sum(axis=1)
    top = vert.max() if vert.size else 0.0
    alive = vert >= prune_tol * top if top > 0 else np.zeros(n, bool)

    nb = g.neighbours()
    comp_of = -np.ones(n, int)
    comps = []
    for s in range(n):
        if alive[s] and comp_of[s] < 0:
            members = [s]
            comp_of[s] = len(comps)
            q = deque([s])
            while q:
                u = q.popleft()
                for w, _ in nb[u]:
                    if alive[w] and comp_of[w] < 0:
                        comp_of[w] = len(comps)
                        members.append(w)
                        q.append(w)
            comps.append(sorted(members))
    if not comps or max(map(len, comps)) < m:
        size = max(map(len, comps)) if comps else 0
        raise Disconnected(f"largest surviving component has {size} vertices, need at least M = {m}")
    comp = max(comps, key=len)  # first of the largest, in vertex order

    root = max(comp, key=lambda v: (vert[v], -v))
    phase = {root: 1.0 + 0j}
    tree_edges = set()
    q = deque([root])
    while q:
        u = q.popleft()
        for w, e in nb[u]:
            if alive[w] and w not in phase:
                i, j = g.edges[e]
                omega = products[e] / abs(products[e])  # conj(u_i) u_j
                phase[w] = phase[u] * (omega if u == i else np.conj(omega))
                tree_edges.add(e)
                q.append(w)

    worst = 0.0
    for e, (i, j) in enumerate(g.edges):
        if e in tree_edges or i not in phase or j not in phase:
            continue
        omega = products[e] / abs(products[e])
        worst = max(worst, abs(phase[j] - phase[i] * omega))
    if cycle_tol is not None and worst > cycle_tol:
        raise InconsistentCycle(f"cycle phase mismatch {worst:.3e} exceeds {cycle_tol:.1e}")

    idx = np.array(comp)
    c = np.array([vert[v] * phase[v] for v in comp])  # estimates of <x, phi_v> = phi_v^* x
    sub = a[:, idx]
    frame_op = sub @ sub.conj().T
    est = np.linalg.solve(frame_op, sub @ c)  # canonical dual reconstruction
    return Recovery(est, "ok", comp, float(worst))


def phase_error(x, x_hat) -> float:
    """min over theta of ||x - e^(i theta) x_hat|| / ||x||."""
    x = np.asarray(x, dtype=complex)
    x_hat = np.asarray(x_hat, dtype=complex)
    inner = np.vdot(x_hat, x)
    rot = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.linalg.norm(x - rot * x_hat) / np.linalg.norm(x))
