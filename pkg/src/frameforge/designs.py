"""(2,k,v)-Steiner systems as transposed incidence matrices.

Rows of ``incidence`` are blocks (sorted lexicographically), columns are points.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import FrameFormatError, InadmissibleParameters
from .finite import FiniteField, prime_power

FAMILIES = ("2-blocks", "triples", "affine", "projective")

# (k, v) pairs whose Steiner systems are known not to exist, and open cases
NONEXISTENT = {(6, 36), (7, 43)}
UNKNOWN = {(10, 46), (14, 92)}


@dataclass
class DesignIncidence:
    v: int
    b: int
    r: int
    k: int
    lambda_: int
    incidence: np.ndarray = field(repr=False)

    @classmethod
    def from_blocks(cls, v: int, blocks) -> "DesignIncidence":
        blocks = sorted(tuple(sorted(int(x) for x in blk)) for blk in blocks)
        b = len(blocks)
        a = np.zeros((b, v), dtype=np.int8)
        for i, blk in enumerate(blocks):
            a[i, list(blk)] = 1
        k = len(blocks[0]) if blocks else 0
        r = (v - 1) // (k - 1) if k > 1 else 0
        return cls(v=v, b=b, r=r, k=k, lambda_=1, incidence=a)

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        return [tuple(np.flatnonzero(row)) for row in self.incidence]

    def to_text(self) -> str:
        lines = [f"{self.v} {self.b} {self.r} {self.k} {self.lambda_}"]
        lines += ["".join(str(int(c)) for c in row) for row in self.incidence]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DesignIncidence":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        try:
            v, b, r, k, lam = (int(t) for t in lines[0].split())
        except (ValueError, IndexError) as exc:
            raise FrameFormatError("design header must be 'v b r k lambda'") from exc
        rows = lines[1:]
        if len(rows) != b or any(len(s) != v or set(s) - {"0", "1"} for s in rows):
            raise FrameFormatError(f"expected {b} rows of {v} characters in {{0,1}}")
        a = np.array([[int(c) for c in s] for s in rows], dtype=np.int8).reshape(b, v)
        return cls(v=v, b=b, r=r, k=k, lambda_=lam, incidence=a)


@dataclass
class DesignCertificate:
    ok: bool
    violations: list[str]

    def __bool__(self):
        return self.ok


def verify_design(d: DesignIncidence) -> DesignCertificate:
    """Check row sums, column sums, pairwise column inner products and dimension formulas."""
    a = np.asarray(d.incidence, dtype=np.int64)
    out = []
    if a.shape != (d.b, d.v):
        out.append(f"incidence shape {a.shape} != (b, v) = ({d.b}, {d.v})")
    for i, s in enumerate(a.sum(axis=1)):
        if s != d.k:
            out.append(f"block {i} has {s} points, expected k={d.k}")
    for j, s in enumerate(a.sum(axis=0)):
        if s != d.r:
            out.append(f"point {j} lies in {s} blocks, expected r={d.r}")
    g = a.T @ a
    for i, j in zip(*np.triu_indices(a.shape[1], 1)):
        if g[i, j] != d.lambda_:
            out.append(f"points ({i}, {j}) share {g[i, j]} blocks, expected lambda={d.lambda_}")
    if d.k > 1 and d.lambda_ == 1:
        if d.b * d.k * (d.k - 1) != d.v * (d.v - 1):
            out.append("b != v(v-1)/(k(k-1))")
        if d.r * (d.k - 1) != d.v - 1:
            out.append("r != (v-1)/(k-1)")
    return DesignCertificate(not out, out)


# constructions

def _two_blocks(v):
    if v < 2:
        raise InadmissibleParameters("2-blocks need v >= 2")
    return list(itertools.combinations(range(v), 2))


def _bose(v):
    # v = 6n + 3 on Z_{2n+1} x Z_3 with x o y = (n+1)(x+y) mod (2n+1)
    n = (v - 3) // 6
    m = 2 * n + 1
    pt = lambda x, i: x + m * (i % 3)
    op = lambda x, y: ((n + 1) * (x + y)) % m
    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in itertools.combinations(range(m), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return blocks


def _skolem(v):
    # v = 6n + 1 on {inf} u Z_{2n} x Z_3 with the half-idempotent quasigroup
    n = (v - 1) // 6
    m = 2 * n
    inf = 3 * m
    pt = lambda x, i: x + m * (i % 3)

    def op(x, y):
        s = (x + y) % m
        return s // 2 if s % 2 == 0 else (s - 1) // 2 + n

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)]
    for x in range(n):
        for i in range(3):
            blocks.append((inf, pt(x + n, i), pt(x, i + 1)))
    for x, y in itertools.combinations(range(m), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return blocks


def _triples(v):
    if v % 6 not in (1, 3) or v < 3:
        raise InadmissibleParameters(f"triple systems need v = 1 or 3 mod 6, got v = {v} = {v % 6} mod 6")
    return _bose(v) if v % 6 == 3 else _skolem(v)


def _field_for(q):
    if q is None or prime_power(q) is None:
        raise InadmissibleParameters(f"q must be a prime power, got {q}")
    return FiniteField.of_order(q)


def _affine(q, n):
    if n is None or n < 2:
        raise InadmissibleParameters("affine lines need n >= 2")
    F = _field_for(q)
    points = list(itertools.product(range(q), repeat=n))
    index = {p: i for i, p in enumerate(points)}
    scalars = np.arange(q)
    lines = set()
    for d in points:
        nz = [c for c in d if c]
        if not nz or nz[0] != 1:
            continue  # direction normalised to leading coefficient 1
        dv = np.array(d)
        for a in points:
            pts = F.add(np.array(a)[None, :], F.mul(scalars[:, None], dv[None, :]))
            lines.add(tuple(sorted(index[tuple(int(c) for c in row)] for row in pts)))
    return q ** n, sorted(lines)


def _normalise(F, vec):
    vec = np.asarray(vec)
    nz = np.flatnonzero(vec)
    if nz.size == 0:
        return None
    lead = vec[nz[0]]
    return tuple(int(c) for c in F.mul(F.inverse(lead), vec))


def _projective(q, n):
    if n is None or n < 2:
        raise InadmissibleParameters("projective lines need n >= 2")
    F = _field_for(q)
    points = sorted({_normalise(F, v) for v in itertools.product(range(q), repeat=n + 1)} - {None})
    index = {p: i for i, p in enumerate(points)}
    lines = set()
    for u, w in itertools.combinations(points, 2):
        pts = set()
        for s, t in itertools.product(range(q), repeat=2):
            comb = F.add(F.mul(s, np.array(u)), F.mul(t, np.array(w)))
            p = _normalise(F, comb)
            if p is not None:
                pts.add(index[p])
        lines.add(tuple(sorted(pts)))
    return len(points), sorted(lines)


def steiner_system(family: str, v: int | None = None, q: int | None = None, n: int | None = None) -> DesignIncidence:
    """Generate a (2,k,v)-Steiner system.

    family: ``2-blocks`` (all pairs of v points), ``triples`` (v = 1, 3 mod 6),
    ``affine`` (lines of AG(n, q)) or ``projective`` (lines of PG(n, q)).
    """
    if family == "2-blocks":
        d = DesignIncidence.from_blocks(v, _two_blocks(v))
    elif family == "triples":
        d = DesignIncidence.from_blocks(v, _triples(v))
    elif family == "affine":
        vv, blocks = _affine(q, n)
        d = DesignIncidence.from_blocks(vv, blocks)
    elif family == "projective":
        vv, blocks = _projective(q, n)
        d = DesignIncidence.from_blocks(vv, blocks)
    else:
        raise InadmissibleParameters(f"unknown family {family!r}; choose from {FAMILIES}")
    cert = verify_design(d)
    if not cert:  # pragma: no cover - construction bug
        raise AssertionError("; ".join(cert.violations[:5]))
    return d


# parameter solver

@dataclass
class SteinerParameters:
    m: int
    n: int
    v: Fraction | float
    b: int
    r: Fraction | float
    k: Fraction | float
    admissible: bool
    status: str  # inadmissible | admissible | nonexistent | unknown

    def as_dict(self):
        conv = lambda x: str(x) if isinstance(x, Fraction) else x
        return {"M": self.m, "N": self.n, "v": conv(self.v), "b": self.b, "r": conv(self.r),
                "k": conv(self.k), "admissible": self.admissible, "status": self.status}


def _exact_sqrt(fr: Fraction):
    a, b = fr.numerator, fr.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def steiner_parameter_solver(m: int, n: int) -> SteinerParameters:
    """Design parameters an M x N Steiner ETF would need, evaluated exactly.

    alpha = sqrt((N-M)/(M(N-1))), v = N alpha/(1+alpha), b = M, r = 1/alpha,
    k = N/(M(1+alpha)). Non-integral values mark the size as inadmissible.
    """
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    alpha2 = Fraction(n - m, m * (n - 1))
    alpha = _exact_sqrt(alpha2)
    if alpha is None:
        a = math.sqrt(alpha2)
        return SteinerParameters(m, n, n * a / (1 + a), m, 1 / a, n / (m * (1 + a)), False, "inadmissible")
    v = n * alpha / (1 + alpha)
    r = 1 / alpha
    k = Fraction(n) / (m * (1 + alpha))
    ok = all(x.denominator == 1 for x in (v, r, k)) and k >= 2
    status = "inadmissible"
    if ok:
        key = (int(k), int(v))
        status = "nonexistent" if key in NONEXISTENT else "unknown" if key in UNKNOWN else "admissible"
    return SteinerParameters(m, n, v, m, r, k, ok, status)


def steiner_etf_size(k: int, v: int) -> tuple[int, int]:
    """(M, N) of the ETF generated by a (2,k,v)-Steiner system."""
    m = Fraction(v * (v - 1), k * (k - 1))
    n = v * (1 + Fraction(v - 1, k - 1))
    return int(m), int(n)
