"""Exact arithmetic over GF(p^n), number-theory helpers and Hadamard matrices."""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import UnsupportedSize

_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int):
    """Return (p, n) with q = p**n, or None when q is not a prime power."""
    q = int(q)
    if q < 2:
        return None
    p = next(d for d in itertools.count(2) if q % d == 0)
    n = 0
    while q % p == 0:
        q //= p
        n += 1
    return (p, n) if q == 1 else None


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def legendre(k: int, p: int) -> int:
    """Legendre symbol (k/p) for an odd prime p."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    k %= p
    if k == 0:
        return 0
    return 1 if pow(k, (p - 1) // 2, p) == 1 else -1


def quadratic_residues(p: int) -> list[int]:
    """Sorted squares mod p, including 0."""
    return sorted({(k * k) % p for k in range(p)})


# polynomials over GF(p): coefficient lists, constant term first

def _poly_rem(a, b, p):
    a = [c % p for c in a]
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        if c:
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(reversed(tail)) + [1]


def is_irreducible(poly, p) -> bool:
    """Exhaustive factor check for a monic polynomial over GF(p)."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_rem(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, n: int):
    """Lexicographically smallest monic irreducible of degree n (leading coefficient first)."""
    for poly in _monic_polys(p, n):
        if n == 1 or is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """GF(p^n) with elements encoded as integers 0..q-1.

    The code of an element is sum(c_i * p**i) for the coefficients c_i of its
    polynomial representative. The modulus is the smallest irreducible, so
    labels are reproducible.
    """

    def __init__(self, p: int, n: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = int(p)
        self.n = int(n)
        self.q = self.p ** self.n
        self.modulus = smallest_irreducible(self.p, self.n)
        if not is_irreducible(self.modulus, self.p):
            raise AssertionError("modulus is reducible")  # pragma: no cover
        self._weights = self.p ** np.arange(self.n)

    @classmethod
    def of_order(cls, q: int) -> "FiniteField":
        pp = prime_power(q)
        if pp is None:
            raise ValueError(f"{q} is not a prime power")
        return cls(*pp)

    def __repr__(self):
        return f"FiniteField(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((self.p, self.n))

    # code <-> coefficient vectors

    def digits(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._weights) % self.p

    def encode(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._weights

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        return FieldElement(self, int(value))

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    # vectorised arithmetic on codes

    def add(self, a, b):
        return self.encode(self.digits(a) + self.digits(b))

    def neg(self, a):
        return self.encode(-self.digits(a))

    def sub(self, a, b):
        return self.encode(self.digits(a) - self.digits(b))

    @cached_property
    def _reduction(self) -> np.ndarray:
        # rows: x^k reduced mod the modulus, for k = n .. 2n-2
        rows = []
        for k in range(self.n, 2 * self.n - 1):
            r = _poly_rem([0] * k + [1], self.modulus, self.p)
            rows.append(r + [0] * (self.n - len(r)))
        return np.array(rows, dtype=np.int64).reshape(-1, self.n)

    def _mul_codes(self, a, b):
        da, db = self.digits(a), self.digits(b)
        da, db = np.broadcast_arrays(da, db)
        prod = np.zeros(da.shape[:-1] + (2 * self.n - 1,), dtype=np.int64)
        for i in range(self.n):
            prod[..., i:i + self.n] += da[..., i:i + 1] * db
        low = prod[..., : self.n] + prod[..., self.n:] @ self._reduction
        return self.encode(low)

    @cached_property
    def mul_table(self) -> np.ndarray:
        c = np.arange(self.q)
        return self._mul_codes(c[:, None], c[None, :])

    def mul(self, a, b):
        if self.q <= _TABLE_LIMIT:
            return self.mul_table[np.asarray(a), np.asarray(b)]
        return self._mul_codes(a, b)

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        result = np.ones_like(a)
        base = a.copy()
        e = int(e)
        if e < 0:
            base = self.inverse(base)
            e = -e
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self.power(a, self.q - 2)

    def trace(self, a):
        """Tr(z) = sum_i z^(p^i), returned as an integer in 0..p-1."""
        a = np.asarray(a, dtype=np.int64)
        total = np.zeros_like(a)
        cur = a
        for _ in range(self.n):
            total = self.add(total, cur)
            cur = self.power(cur, self.p)
        if np.any(total >= self.p):
            raise AssertionError("trace left the prime subfield")  # pragma: no cover
        return total

    @cached_property
    def trace_table(self) -> np.ndarray:
        return self.trace(np.arange(self.q))


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        if not 0 <= int(value) < field.q:
            raise ValueError(f"code {value} outside 0..{field.q - 1}")
        self.field = field
        self.value = int(value)

    @property
    def coeffs(self) -> list[int]:
        return [int(c) for c in self.field.digits(self.value)]

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return int(other) % self.field.p  # integers act through the prime subfield

    def __add__(self, other):
        return FieldElement(self.field, int(self.field.add(self.value, self._coerce(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self.value, self._coerce(other))))

    def __rsub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self._coerce(other), self.value)))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __mul__(self, other):
        return FieldElement(self.field, int(self.field.mul(self.value, self._coerce(other))))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, int(self.field.inverse(self.value)))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self._coerce(other)).inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, int(self.field.power(self.value, e)))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p and self.value < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.value))

    def __repr__(self):
        return f"FieldElement({self.coeffs}, GF({self.field.p}^{self.field.n}))"

    def trace(self) -> int:
        return int(self.field.trace(self.value))


def field_trace(x: FieldElement) -> int:
    return x.trace()


def hadamard(size: int, kind: str = "real_sylvester") -> np.ndarray:
    """Unimodular matrix with orthogonal rows.

    ``real_sylvester`` needs a power of two; ``complex_dft`` has entries
    exp(-2 pi i j k / size), so row j of the size-3 matrix is (1, w^-j, w^-2j)
    with w = exp(2 pi i / 3).
    """
    size = int(size)
    if size < 1:
        raise UnsupportedSize("size must be positive")
    if kind in ("real_sylvester", "real", "sylvester"):
        if size & (size - 1):
            raise UnsupportedSize(f"Sylvester Hadamard needs a power of 2, got {size}")
        h = np.ones((1, 1))
        while h.shape[0] < size:
            h = np.block([[h, h], [h, -h]])
        return h.astype(complex)
    if kind in ("complex_dft", "dft", "complex"):
        j = np.arange(size)
        return np.exp(-2j * np.pi * np.outer(j, j) / size)
    raise ValueError(f"unknown Hadamard kind {kind!r}")
