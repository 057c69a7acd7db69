"""The Frame value type and its text file format."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import FrameFormatError

UNIT_TOL = 1e-9
TIGHT_TOL = 1e-8


@dataclass(frozen=True)
class Frame:
    """An M x N matrix whose columns are the frame elements.

    ``family``/``params``/``seed`` record how it was made; they travel with the
    frame through the file format.
    """

    matrix: np.ndarray
    family: str = "custom"
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self):
        a = np.array(self.matrix, dtype=complex)
        if a.ndim != 2:
            raise ValueError(f"frame must be a matrix, got shape {a.shape}")
        m, n = a.shape
        if m < 1 or m > n:
            raise ValueError(f"frame needs 1 <= M <= N, got {m} x {n}")
        if np.any(np.linalg.norm(a, axis=0) == 0):
            raise ValueError("frame has a zero column")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def shape(self):
        return self.matrix.shape

    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.matrix.imag == 0))

    @property
    def unit_norm(self) -> bool:
        return bool(np.all(np.abs(self.column_norms() - 1) <= UNIT_TOL))

    @property
    def tight(self) -> bool:
        s = self.matrix @ self.matrix.conj().T
        c = np.trace(s).real / self.m
        return bool(np.max(np.abs(s - c * np.eye(self.m))) <= TIGHT_TOL)

    @property
    def equiangular(self) -> bool:
        g = np.abs(self.matrix.conj().T @ self.matrix)
        off = g[~np.eye(self.n, dtype=bool)]
        return bool(off.size == 0 or off.max() - off.min() <= UNIT_TOL)

    @property
    def etf(self) -> bool:
        return self.unit_norm and self.tight and self.equiangular

    def normalized(self) -> "Frame":
        return self.with_matrix(self.matrix / self.column_norms())

    def with_matrix(self, matrix, **changes) -> "Frame":
        kw = dict(family=self.family, params=self.params, seed=self.seed)
        kw.update(changes)
        return Frame(matrix, **kw)

    def columns(self, idx) -> "Frame":
        idx = [int(i) for i in idx]
        return self.with_matrix(self.matrix[:, idx], params={**self.params, "columns": _compact(idx)})

    # file format

    def to_text(self) -> str:
        params = ",".join(f"{k}={_token(v)}" for k, v in self.params.items()) or "-"
        seed = "-" if self.seed is None else str(self.seed)
        lines = [f"{self.m} {self.n} {_token(self.family)} {params} {seed}"]
        for z in self.matrix.T.reshape(-1):  # column-major
            lines.append(f"{z.real:.17g} {z.imag:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Frame":
        lines = text.splitlines()
        if not lines:
            raise FrameFormatError("empty frame file")
        head = lines[0].split()
        if len(head) != 5:
            raise FrameFormatError("header must be 'M N family params seed'")
        try:
            m, n = int(head[0]), int(head[1])
            vals = np.array([[float(t) for t in ln.split()] for ln in lines[1:] if ln.strip()])
        except ValueError as exc:
            raise FrameFormatError(f"malformed frame file: {exc}") from exc
        if vals.shape != (m * n, 2):
            raise FrameFormatError(f"expected {m * n} lines of 're im', got shape {vals.shape}")
        data = (vals[:, 0] + 1j * vals[:, 1]).reshape(n, m).T
        params = {}
        if head[3] != "-":
            for item in head[3].split(","):
                k, _, v = item.partition("=")
                params[k] = v
        seed = None if head[4] == "-" else int(head[4])
        return cls(data, family=head[2], params=params, seed=seed)

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "Frame":
        return cls.from_text(Path(path).read_text())


def _token(v) -> str:
    s = str(v).replace(" ", "")
    return s.replace(",", ";") if s else "-"


def _compact(idx) -> str:
    return ";".join(str(i) for i in idx) if len(idx) <= 16 else f"{len(idx)}cols"
