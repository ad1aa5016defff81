"""Exact sparse linear algebra over the rationals.

Vectors are plain ``dict`` objects mapping an index to a nonzero
:class:`~fractions.Fraction` (or ``int``).  Matrices are :class:`Mat`
instances stored column-wise.  Nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


def vec_add(a: Mapping, b: Mapping, scale=1) -> Vec:
    """Return ``a + scale * b`` with zero entries dropped."""
    out = dict(a)
    if scale == 0:
        return out
    for k, v in b.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(a: Mapping, c) -> Vec:
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def vec_is_zero(a: Mapping) -> bool:
    return not any(a.values())


class Mat:
    """Sparse matrix with column storage: ``cols[j][i]`` is entry ``(i, j)``."""

    __slots__ = ("nrows", "ncols", "cols", "_rows")

    def __init__(self, nrows: int, ncols: int, cols: Optional[Dict[int, Dict[int, Fraction]]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols: Dict[int, Dict[int, Fraction]] = {}
        for j, col in (cols or {}).items():
            col = {i: v for i, v in col.items() if v}
            if col:
                self.cols[j] = col
        self._rows = None

    # construction helpers
    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "Mat":
        return cls(n, n if m is None else m)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_entries(cls, n: int, m: int, entries: Iterable[Tuple[int, int, object]]) -> "Mat":
        cols: Dict[int, Dict[int, Fraction]] = {}
        for i, j, v in entries:
            if v:
                col = cols.setdefault(j, {})
                s = col.get(i, 0) + v
                if s:
                    col[i] = s
                else:
                    col.pop(i)
        return cls(n, m, cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "Mat":
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls.from_entries(n, m, ((i, j, Fraction(rows[i][j])) for i in range(n) for j in range(m)))

    # access
    @property
    def rows(self) -> Dict[int, Dict[int, Fraction]]:
        if self._rows is None:
            rows: Dict[int, Dict[int, Fraction]] = {}
            for j, col in self.cols.items():
                for i, v in col.items():
                    rows.setdefault(i, {})[j] = v
            self._rows = rows
        return self._rows

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.cols.get(j, {}).get(i, Fraction(0))

    def entries(self) -> List[Tuple[int, int, Fraction]]:
        """Nonzero entries as sorted ``(row, col, value)`` triplets."""
        return sorted((i, j, v) for j, col in self.cols.items() for i, v in col.items())

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = Fraction(v)
        return out

    def is_zero(self) -> bool:
        return not self.cols

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    # arithmetic
    def apply(self, v: Mapping[int, object]) -> Vec:
        out: Vec = {}
        for j, x in v.items():
            col = self.cols.get(j)
            if not col or not x:
                continue
            for i, a in col.items():
                s = out.get(i, 0) + a * x
                if s:
                    out[i] = s
                else:
                    del out[i]
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return Mat(self.nrows, other.ncols, {j: self.apply(col) for j, col in other.cols.items()})

    def __add__(self, other: "Mat") -> "Mat":
        return self.combine(other, 1)

    def __sub__(self, other: "Mat") -> "Mat":
        return self.combine(other, -1)

    def combine(self, other: "Mat", scale=1) -> "Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        cols = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            cols[j] = vec_add(cols.get(j, {}), col, scale)
        return Mat(self.nrows, self.ncols, cols)

    def scaled(self, c) -> "Mat":
        return Mat(self.nrows, self.ncols, {j: vec_scale(col, c) for j, col in self.cols.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.entries())))

    def __repr__(self) -> str:
        return f"Mat({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def trace(self) -> Fraction:
        return sum((col.get(j, 0) for j, col in self.cols.items()), Fraction(0))


def commutator(a: Mat, b: Mat) -> Mat:
    return (a @ b) - (b @ a)


def trace_of_product(a: Mat, b: Mat) -> Fraction:
    """``tr(a @ b)`` without forming the product."""
    total = Fraction(0)
    brows = b.rows
    for j, col in a.cols.items():
        brow = brows.get(j)
        if not brow:
            continue
        for i, x in col.items():
            y = brow.get(i)
            if y:
                total += x * y
    return total


def linear_combination(coeffs: Mapping[int, object], mats: Sequence[Mat]) -> Mat:
    n, m = mats[0].nrows, mats[0].ncols
    out = Mat(n, m)
    for k, c in coeffs.items():
        if c:
            out = out.combine(mats[k], c)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Pivots are the smallest index in each stored row (indices must be
    mutually comparable).  Because the basis is kept fully reduced, the
    coordinates of a vector in the span are its entries at the pivots.
    """

    def __init__(self):
        self.rows: Dict[Hashable, Vec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> Vec:
        v = {k: Fraction(x) for k, x in v.items() if x}
        for p in sorted(k for k in v if k in self.rows):
            c = v.get(p)
            if c:
                v = vec_add(v, self.rows[p], -c)
        return v

    def add(self, v: Mapping) -> Optional[Vec]:
        """Insert ``v``; return its reduced nonzero remainder or ``None``."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        r = vec_scale(r, 1 / r[p])
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                self.rows[q] = vec_add(row, r, -c)
        self.rows[p] = r
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)

    def basis(self) -> List[Vec]:
        return [self.rows[p] for p in self.pivots()]

    def coordinates(self, v: Mapping) -> Dict[Hashable, Fraction]:
        """Coordinates of ``v`` in :meth:`basis`, keyed by pivot."""
        if self.reduce(v):
            raise ValueError("vector is not in the span")
        return {p: Fraction(v[p]) for p in self.rows if v.get(p)}


def rank(rows: Iterable[Mapping]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def nullspace(rows: Iterable[Mapping], unknowns: Sequence[Hashable]) -> List[Vec]:
    """Basis of ``{x : row . x = 0 for every row}`` over the given unknowns.

    Free variables are taken in the order of ``unknowns``; each basis vector
    has a 1 at its free variable.
    """
    order = {u: k for k, u in enumerate(unknowns)}
    ech = Echelon()
    for r in rows:
        ech.add({order[u]: x for u, x in r.items() if x})
    pivots = set(ech.rows)
    basis = []
    for f in range(len(unknowns)):
        if f in pivots:
            continue
        x = {unknowns[f]: Fraction(1)}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c:
                x[unknowns[p]] = -c
        basis.append(x)
    return basis
