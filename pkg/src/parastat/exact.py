"""Exact sparse matrices over the rationals.

Every entry is a ``gmpy2.mpq`` exact rational; nothing is ever rounded, so an
identity that fails to hold is a genuine counterexample.  Matrices are square,
immutable, and store only nonzero entries, row by row.
"""

from __future__ import annotations

from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Tuple

import gmpy2

Rational = gmpy2.mpq

Vector = Dict[int, Rational]

PLUS = "+"
MINUS = "-"


class DimensionError(ValueError):
    pass


def as_rational(x) -> Rational:
    """Coerce ints, Fractions and ``"p/q"`` strings; reject floats."""
    if type(x) is Rational:
        return x
    if isinstance(x, (int, str, _RationalABC)) and not isinstance(x, bool):
        return Rational(x)
    raise TypeError(f"refusing non-rational scalar {x!r}")


def fstr(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class SparseMat:
    """Square sparse matrix with exact rational entries.

    >>> A = SparseMat(2, {(0, 1): 1})
    >>> (A @ A).nnz
    0
    >>> kron(SparseMat.identity(2), A).entries
    {(0, 1): mpq(1,1), (2, 3): mpq(1,1)}
    """

    __slots__ = ("dim", "_rows", "_hash")

    def __init__(self, dim: int, entries: Mapping[Tuple[int, int], object] | None = None):
        if dim < 1:
            raise DimensionError(f"dimension must be positive, got {dim}")
        rows: Dict[int, Dict[int, Rational]] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"entry ({i}, {j}) outside {dim}x{dim}")
            v = as_rational(v)
            if v:
                rows.setdefault(i, {})[j] = v
        self.dim = dim
        self._rows = rows
        self._hash = None

    @classmethod
    def _wrap(cls, dim: int, rows: Dict[int, Dict[int, Rational]]) -> "SparseMat":
        # trusted constructor: rows already free of zeros and empty dicts
        m = cls.__new__(cls)
        m.dim = dim
        m._rows = rows
        m._hash = None
        return m

    @classmethod
    def zero(cls, dim: int) -> "SparseMat":
        if dim < 1:
            raise DimensionError(f"dimension must be positive, got {dim}")
        return cls._wrap(dim, {})

    @classmethod
    def identity(cls, dim: int) -> "SparseMat":
        return cls.diagonal([1] * dim)

    @classmethod
    def diagonal(cls, values: Iterable) -> "SparseMat":
        values = [as_rational(v) for v in values]
        return cls._wrap(len(values), {i: {i: v} for i, v in enumerate(values) if v})

    @classmethod
    def from_dense(cls, rows) -> "SparseMat":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("dense input is not square")
        return cls(n, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    # -- access -----------------------------------------------------------

    @property
    def entries(self) -> Dict[Tuple[int, int], Rational]:
        return {(i, j): v for i, row in sorted(self._rows.items()) for j, v in sorted(row.items())}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def items(self) -> Iterator[Tuple[int, int, Rational]]:
        for i, row in self._rows.items():
            for j, v in row.items():
                yield i, j, v

    def row(self, i: int) -> Vector:
        return dict(self._rows.get(i, {}))

    def __getitem__(self, ij: Tuple[int, int]) -> Rational:
        i, j = ij
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(ij)
        return self._rows.get(i, {}).get(j, Rational(0))

    def columns(self) -> Dict[int, Vector]:
        """Column-major view: ``{col: {row: value}}`` for nonempty columns."""
        cols: Dict[int, Vector] = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                cols.setdefault(j, {})[i] = v
        return cols

    def column(self, j: int) -> Vector:
        return {i: row[j] for i, row in self._rows.items() if j in row}

    def apply(self, vec: Mapping[int, Rational]) -> Vector:
        """Matrix-vector product on a sparse vector ``{index: value}``."""
        if not vec:
            return {}
        out: Vector = {}
        for i, row in self._rows.items():
            acc = 0
            for j, v in row.items():
                x = vec.get(j)
                if x is not None:
                    acc += v * x
            if acc:
                out[i] = acc
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> list:
        out = [[Rational(0)] * self.dim for _ in range(self.dim)]
        for i, j, v in self.items():
            out[i][j] = v
        return out

    # -- algebra ----------------------------------------------------------

    def scale(self, c) -> "SparseMat":
        c = as_rational(c)
        if not c:
            return SparseMat.zero(self.dim)
        return SparseMat._wrap(self.dim, {i: {j: c * v for j, v in row.items()} for i, row in self._rows.items()})

    def __add__(self, other: "SparseMat") -> "SparseMat":
        return mat_add(self, other)

    def __sub__(self, other: "SparseMat") -> "SparseMat":
        return mat_add(self, other.scale(-1))

    def __neg__(self) -> "SparseMat":
        return self.scale(-1)

    def __matmul__(self, other: "SparseMat") -> "SparseMat":
        return mat_mul(self, other)

    def __rmul__(self, c) -> "SparseMat":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMat):
            return NotImplemented
        return self.dim == other.dim and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, tuple(sorted(self.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"SparseMat(dim={self.dim}, nnz={self.nnz})"


def _check_dims(A: SparseMat, B: SparseMat) -> None:
    if A.dim != B.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {B.dim}")


def mat_add(A: SparseMat, B: SparseMat) -> SparseMat:
    _check_dims(A, B)
    rows = {i: dict(r) for i, r in A._rows.items()}
    for i, brow in B._rows.items():
        row = rows.get(i)
        if row is None:
            rows[i] = dict(brow)
            continue
        for j, v in brow.items():
            s = row.get(j, 0) + v
            if s:
                row[j] = s
            else:
                row.pop(j, None)
        if not row:
            del rows[i]
    return SparseMat._wrap(A.dim, rows)


def mat_mul(A: SparseMat, B: SparseMat) -> SparseMat:
    _check_dims(A, B)
    brows = B._rows
    rows = {}
    for i, arow in A._rows.items():
        acc: Dict[int, Rational] = {}
        for k, a in arow.items():
            brow = brows.get(k)
            if brow is None:
                continue
            for j, b in brow.items():
                acc[j] = acc.get(j, 0) + a * b
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            rows[i] = acc
    return SparseMat._wrap(A.dim, rows)


def kron(A: SparseMat, B: SparseMat) -> SparseMat:
    """Kronecker product, first factor slowest: ``(i*m + r, j*m + s) -> A[i,j]*B[r,s]``."""
    m = B.dim
    rows = {}
    for i, arow in A._rows.items():
        for r, brow in B._rows.items():
            rows[i * m + r] = {j * m + s: a * b for j, a in arow.items() for s, b in brow.items()}
    return SparseMat._wrap(A.dim * m, rows)


def kron_all(mats: Iterable[SparseMat]) -> SparseMat:
    mats = list(mats)
    if not mats:
        raise ValueError("empty Kronecker product")
    out = mats[0]
    for M in mats[1:]:
        out = kron(out, M)
    return out


def bracket(A: SparseMat, B: SparseMat, sign: str) -> SparseMat:
    """``AB + BA`` for sign ``"+"``, ``AB - BA`` for ``"-"``."""
    if sign not in (PLUS, MINUS):
        raise ValueError(f"bracket sign must be '+' or '-', got {sign!r}")
    AB = mat_mul(A, B)
    BA = mat_mul(B, A)
    return mat_add(AB, BA) if sign == PLUS else mat_add(AB, BA.scale(-1))


def vec_add(u: Mapping[int, Rational], v: Mapping[int, Rational], c=1) -> Vector:
    """``u + c*v`` on sparse vectors."""
    out = dict(u)
    for i, x in v.items():
        s = out.get(i, 0) + c * x
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out
