"""Simple root systems over exact rationals.

Roots are integer tuples in the basis of simple roots; weights are
:class:`Weight` tuples in the basis of fundamental dominant weights.
Simple roots follow Bourbaki numbering, and the Cartan matrix satisfies
``cartan_matrix[i][j] == pairing(alpha_i, alpha_j)``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import CapExceeded, NotARoot, NotARootSum, UnsupportedRootSystem

Root = Tuple[int, ...]

DEFAULT_WEYL_CAP = 100_000
MAX_CLASSICAL_RANK = 8


class Weight(tuple):
    """Integer coordinates over the fundamental dominant weights."""

    __slots__ = ()

    def __new__(cls, coords=()):
        return super().__new__(cls, (int(c) for c in coords))

    def __repr__(self) -> str:
        return f"Weight({list(self)})"

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Weight(-a for a in self)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self)


def _cartan(type_letter: str, n: int) -> Tuple[List[List[int]], List[int]]:
    """Cartan matrix and squared root lengths (shortest = 2)."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if type_letter in "ABCD":
        chain = n - 1 if type_letter != "D" else n - 2
        for i in range(chain):
            A[i][i + 1] = A[i + 1][i] = -1
    if type_letter == "A":
        norms = [2] * n
    elif type_letter == "B":
        A[n - 2][n - 1] = -2
        norms = [4] * (n - 1) + [2]
    elif type_letter == "C":
        A[n - 1][n - 2] = -2
        norms = [2] * (n - 1) + [4]
    elif type_letter == "D":
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
        norms = [2] * n
    elif type_letter == "G":
        A[0][1], A[1][0] = -1, -3
        norms = [2, 6]
    elif type_letter == "F":
        A[0][1] = A[1][0] = -1
        A[1][2], A[2][1] = -2, -1
        A[2][3] = A[3][2] = -1
        norms = [4, 4, 2, 2]
    else:  # pragma: no cover - guarded by _check_type
        raise UnsupportedRootSystem(type_letter)
    return A, norms


def _check_type(type_letter: str, rank: int) -> None:
    ok = {
        "A": 1 <= rank <= MAX_CLASSICAL_RANK,
        "B": 2 <= rank <= MAX_CLASSICAL_RANK,
        "C": 2 <= rank <= MAX_CLASSICAL_RANK,
        "D": 4 <= rank <= MAX_CLASSICAL_RANK,
        "G": rank == 2,
        "F": rank == 4,
    }.get(type_letter, False)
    if not ok:
        raise UnsupportedRootSystem(f"unsupported root system {type_letter}{rank}")


def _root_key(r: Root):
    return (sum(r), tuple(-c for c in r))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Combinatorial datum of a simple root system.

    Instances are immutable; use :func:`build_root_system`, which caches
    one instance per ``(type_letter, rank)``.
    """

    type_letter: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    root_norms: Tuple[int, ...]
    roots: Tuple[Root, ...]
    index: Dict[Root, int] = field(repr=False)
    sum_index: Tuple[Tuple[int, ...], ...] = field(repr=False)
    structure_constants: Dict[Tuple[Root, Root], int] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @property
    def positive_roots(self) -> Tuple[Root, ...]:
        return tuple(r for r in self.roots if sum(r) > 0)

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(simple_root(self.rank, i) for i in range(self.rank))

    @property
    def symmetrizer(self) -> Tuple[Fraction, ...]:
        """Half squared lengths ``d``; ``cartan_matrix @ diag(d)`` is symmetric."""
        return tuple(Fraction(x, 2) for x in self.root_norms)

    @property
    def highest_root(self) -> Root:
        return self.roots[-1]

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, |roots|={len(self.roots)})"

    def __reduce__(self):
        return (build_root_system, (self.type_letter, self.rank))

    # bilinear data
    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """Symmetric form ``(x, y)`` on root coordinates."""
        A, nm = self.cartan_matrix, self.root_norms
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj and A[i][j]:
                        total += Fraction(xi * yj * A[i][j] * nm[j], 2)
        return total

    def norm(self, r: Sequence) -> Fraction:
        return self.inner(r, r)

    def is_root(self, r: Sequence) -> bool:
        return tuple(r) in self.index

    def require_root(self, r: Sequence) -> Root:
        r = tuple(int(c) for c in r)
        if r not in self.index:
            raise NotARoot(f"not a root: {list(r)}")
        return r

    def root_to_weight(self, r: Sequence) -> Weight:
        A = self.cartan_matrix
        return Weight(sum(r[j] * A[j][i] for j in range(self.rank)) for i in range(self.rank))

    def weight_to_root_coords(self, mu: Sequence) -> Tuple[Fraction, ...]:
        """Rational simple-root coordinates of a weight."""
        return tuple(_solve_rational([list(col) for col in zip(*self.cartan_matrix)], list(mu)))

    def coroot_coords(self, r: Sequence) -> Tuple[int, ...]:
        """Coordinates of ``h_r`` over the simple coroots ``h_1..h_n``."""
        nr = self.norm(r)
        out = []
        for i, c in enumerate(r):
            x = Fraction(c * self.root_norms[i]) / nr
            if x.denominator != 1:  # pragma: no cover - root data invariant
                raise AssertionError("non-integral coroot")
            out.append(int(x))
        return tuple(out)

    def height(self, r: Sequence) -> int:
        return sum(r)

    def negate(self, r: Root) -> Root:
        return tuple(-c for c in r)

    def weyl_dimension(self, lam: Sequence[int]) -> int:
        """Dimension of ``V(lam)`` from the Weyl dimension formula."""
        num, den = Fraction(1), Fraction(1)
        rho = [1] * self.rank
        for beta in self.positive_roots:
            num *= pairing(self, Weight(a + b for a, b in zip(lam, rho)), beta)
            den *= pairing(self, Weight(rho), beta)
        d = num / den
        assert d.denominator == 1
        return int(d)


def simple_root(rank: int, i: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(rank))


def _solve_rational(M: List[List[int]], b: List[int]) -> List[Fraction]:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n] for row in aug]


def _generate_roots(A, n) -> List[Root]:
    simple = [simple_root(n, i) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = sum(r[j] * A[j][i] for j in range(n))
                if c:
                    s = tuple(r[k] - (c if k == i else 0) for k in range(n))
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
        frontier = nxt
    return sorted(seen, key=_root_key)


def _structure_constants(rs_roots, index, inner, negate) -> Dict[Tuple[Root, Root], int]:
    """Chevalley structure constants by the extraspecial-pair algorithm.

    Extraspecial pairs get ``N = +(p + 1)``; every other positive special
    pair follows from the four-root identity, and arbitrary pairs from the
    three-root cyclic identity and ``N_{-a,-b} = -N_{a,b}``.
    """
    pos = [r for r in rs_roots if sum(r) > 0]
    order = {r: k for k, r in enumerate(pos)}
    special: Dict[Tuple[Root, Root], int] = {}

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def string_p(a, b):
        p = 0
        while sub(b, tuple((p + 1) * x for x in a)) in index:
            p += 1
        return p

    def N(x, y) -> int:
        s = add(x, y)
        if s not in index:
            return 0
        z = negate(s)
        trip = (x, y, z)
        npos = sum(1 for t in trip if sum(t) > 0)
        if npos == 1:
            return -N(negate(x), negate(y))
        # exactly two positive entries; locate them as a cyclic neighbour pair
        for k in range(3):
            a, b = trip[k], trip[(k + 1) % 3]
            if sum(a) > 0 and sum(b) > 0:
                val = special[(a, b)] if order[a] < order[b] else -special[(b, a)]
                if k == 0:
                    res = Fraction(val)
                elif k == 1:
                    res = Fraction(val) * inner(z, z) / inner(x, x)
                else:
                    res = Fraction(val) * inner(z, z) / inner(y, y)
                assert res.denominator == 1
                return int(res)
        raise AssertionError("unreachable")  # pragma: no cover

    for xi in pos:
        pairs = [(a, sub(xi, a)) for a in pos if sub(xi, a) in order and order[a] < order[sub(xi, a)]]
        if not pairs:
            continue
        g, d = pairs[0]
        special[(g, d)] = string_p(g, d) + 1
        for a, b in pairs[1:]:
            total = Fraction(0)
            bg = sub(b, g)
            if bg in index:
                total += Fraction(N(b, negate(g)) * N(a, negate(d))) / inner(bg, bg)
            ag = sub(a, g)
            if ag in index:
                total += Fraction(N(negate(g), a) * N(b, negate(d))) / inner(ag, ag)
            val = inner(xi, xi) / special[(g, d)] * total
            assert val.denominator == 1
            special[(a, b)] = int(val)

    table: Dict[Tuple[Root, Root], int] = {}
    for x in rs_roots:
        for y in rs_roots:
            if add(x, y) in index:
                table[(x, y)] = N(x, y)
    return table


@functools.lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Build (and cache) the root system of type ``type_letter`` and ``rank``."""
    type_letter = str(type_letter).upper()
    rank = int(rank)
    _check_type(type_letter, rank)
    A, norms = _cartan(type_letter, rank)
    roots = _generate_roots(A, rank)
    index = {r: k for k, r in enumerate(roots)}
    sum_index = tuple(
        tuple(index.get(tuple(a + b for a, b in zip(x, y)), -1) for y in roots) for x in roots
    )

    def inner(x, y):
        total = Fraction(0)
        for i in range(rank):
            for j in range(rank):
                if x[i] and y[j] and A[i][j]:
                    total += Fraction(x[i] * y[j] * A[i][j] * norms[j], 2)
        return total

    def negate(r):
        return tuple(-c for c in r)

    table = _structure_constants(roots, index, inner, negate)
    return RootSystem(
        type_letter=type_letter,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in A),
        root_norms=tuple(norms),
        roots=tuple(roots),
        index=index,
        sum_index=sum_index,
        structure_constants=table,
    )


def pairing(rs: RootSystem, mu, beta: Sequence[int]) -> int:
    """Return ``<mu, beta> = mu(h_beta)``.

    ``mu`` is a :class:`Weight` (fundamental-weight coordinates) or any
    other sequence, which is read as simple-root coordinates.
    """
    beta = tuple(beta)
    if not any(beta):
        raise NotARoot("not a root: zero vector")
    nb = rs.norm(beta)
    if isinstance(mu, Weight):
        val = sum((Fraction(mu[i] * beta[i] * rs.root_norms[i]) for i in range(rs.rank)), Fraction(0)) / nb
    else:
        val = 2 * rs.inner(mu, beta) / nb
    if val.denominator != 1:
        raise NotARoot(f"not a root: {list(beta)}")
    return int(val)


def structure_constant(rs: RootSystem, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Chevalley structure constant ``N_{alpha,beta}``."""
    a, b = rs.require_root(alpha), rs.require_root(beta)
    try:
        return rs.structure_constants[(a, b)]
    except KeyError:
        raise NotARootSum(f"not a root sum: {list(a)} + {list(b)}") from None


def root_string(rs: RootSystem, alpha: Root, beta: Root) -> Tuple[int, int]:
    """``(p, q)`` with ``beta + k alpha`` a root exactly for ``-p <= k <= q``."""
    p = 0
    while tuple(b - (p + 1) * a for a, b in zip(alpha, beta)) in rs.index:
        p += 1
    q = 0
    while tuple(b + (q + 1) * a for a, b in zip(alpha, beta)) in rs.index:
        q += 1
    return p, q


def simple_reflection_perm(rs: RootSystem, i: int) -> Tuple[int, ...]:
    out = []
    for r in rs.roots:
        c = sum(r[j] * rs.cartan_matrix[j][i] for j in range(rs.rank))
        out.append(rs.index[tuple(r[k] - (c if k == i else 0) for k in range(rs.rank))])
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _weyl_elements(type_letter: str, rank: int, cap: int) -> Tuple[Tuple[int, ...], ...]:
    rs = build_root_system(type_letter, rank)
    gens = [simple_reflection_perm(rs, i) for i in range(rs.rank)]
    ident = tuple(range(len(rs.roots)))
    seen = {ident: None}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = tuple(s[k] for k in w)
                if ws not in seen:
                    seen[ws] = None
                    order.append(ws)
                    nxt.append(ws)
                    if len(order) > cap:
                        raise CapExceeded(f"Weyl group too large (more than {cap} elements)")
        frontier = nxt
    return tuple(order)


def weyl_elements(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP) -> Tuple[Tuple[int, ...], ...]:
    """All Weyl group elements as permutations of ``rs.roots`` (identity first).

    ``w[k]`` is the index of the image of ``rs.roots[k]``.
    """
    return _weyl_elements(rs.type_letter, rs.rank, cap)


def weyl_apply_root(rs: RootSystem, w: Sequence[int], r: Root) -> Root:
    return rs.roots[w[rs.index[tuple(r)]]]


def weyl_apply_weight(rs: RootSystem, w: Sequence[int], mu: Sequence[int]) -> Weight:
    """Act on a weight by linear extension of the action on simple roots."""
    coords = rs.weight_to_root_coords(mu)
    img = [Fraction(0)] * rs.rank
    for i, c in enumerate(coords):
        if c:
            wi = weyl_apply_root(rs, w, simple_root(rs.rank, i))
            for k in range(rs.rank):
                img[k] += c * wi[k]
    A = rs.cartan_matrix
    out = []
    for i in range(rs.rank):
        x = sum((img[j] * A[j][i] for j in range(rs.rank)), Fraction(0))
        assert x.denominator == 1
        out.append(int(x))
    return Weight(out)


def fundamental_weight(rank: int, i: int) -> Weight:
    return Weight(1 if k == i else 0 for k in range(rank))


def to_json(rs: RootSystem) -> dict:
    """Canonical JSON document for a root system."""
    table = sorted(
        [rs.index[a], rs.index[b], n] for (a, b), n in rs.structure_constants.items()
    )
    return {
        "type": rs.type_letter,
        "rank": rs.rank,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "roots": [list(r) for r in rs.roots],
        "structure_constants": table,
    }
