"""Dyck paths and FFLV multi-exponents for ``sl_{n+1}``.

Positive roots of ``A_n`` are written ``alpha_{p,q} = alpha_p + ... + alpha_q``
with ``1 <= p <= q <= n``; :func:`alpha` converts to simple-root coordinates.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import CapExceeded, InputError, NotDominant
from .rootsys import Root, Weight, build_root_system

DEFAULT_MAX_BASIS = 200_000


def alpha(n: int, p: int, q: int) -> Root:
    """Simple-root coordinates of ``alpha_{p,q}`` in ``A_n`` (1-based, inclusive)."""
    if not 1 <= p <= q <= n:
        raise InputError(f"alpha_{{{p},{q}}} is not a positive root of A{n}")
    return tuple(1 if p - 1 <= k <= q - 1 else 0 for k in range(n))


def pq(root: Sequence[int]) -> Tuple[int, int]:
    support = [k + 1 for k, c in enumerate(root) if c]
    return support[0], support[-1]


@dataclass(frozen=True)
class DyckPath:
    steps: Tuple[Root, ...]

    @property
    def start(self) -> int:
        return pq(self.steps[0])[0]

    @property
    def end(self) -> int:
        return pq(self.steps[-1])[1]

    def __len__(self) -> int:
        return len(self.steps)

    def __repr__(self) -> str:
        return "DyckPath(" + ", ".join("a%d,%d" % pq(r) for r in self.steps) + ")"


def enumerate_dyck_paths(n: int) -> List[DyckPath]:
    """All Dyck paths of ``A_n`` ordered by ``(i, j)``, then step choices (``p`` before ``q``)."""
    if n < 1:
        raise InputError("rank must be at least 1")
    paths = []
    for i in range(1, n + 1):
        paths.append(DyckPath((alpha(n, i, i),)))
        for j in range(i + 1, n + 1):
            for seq in _walks(i, i, j):
                paths.append(DyckPath(tuple(alpha(n, p, q) for p, q in seq)))
    paths.sort(key=lambda P: (P.start, P.end))
    return paths


def _walks(p: int, q: int, j: int) -> Iterator[List[Tuple[int, int]]]:
    if (p, q) == (j, j):
        yield [(p, q)]
        return
    if p + 1 <= q and p + 1 <= j:
        for rest in _walks(p + 1, q, j):
            yield [(p, q)] + rest
    if q + 1 <= j:
        for rest in _walks(p, q + 1, j):
            yield [(p, q)] + rest


@dataclass(frozen=True)
class MultiExponent:
    """Finitely supported map from positive roots to nonnegative integers."""

    exponents: Tuple[Tuple[Root, int], ...]

    @classmethod
    def from_dict(cls, d: Dict[Root, int]) -> "MultiExponent":
        return cls(tuple(sorted((tuple(r), int(v)) for r, v in d.items() if v)))

    def __getitem__(self, r) -> int:
        return dict(self.exponents).get(tuple(r), 0)

    def as_dict(self) -> Dict[Root, int]:
        return dict(self.exponents)

    def to_json(self) -> dict:
        return {"[" + ",".join(str(c) for c in r) + "]": v for r, v in self.exponents}


def _check_lambda(lam: Sequence[int]) -> Weight:
    lam = Weight(lam)
    if not lam:
        raise InputError("empty weight")
    if not lam.is_dominant():
        raise NotDominant(f"not dominant: {list(lam)}")
    return lam


def path_bound(lam: Sequence[int], path: DyckPath) -> int:
    return sum(lam[path.start - 1: path.end])


def is_admissible(s, lam: Sequence[int]) -> bool:
    """Every Dyck path inequality ``sum_{beta in path} s_beta <= m_i + ... + m_j`` holds."""
    lam = _check_lambda(lam)
    n = len(lam)
    d = s.as_dict() if isinstance(s, MultiExponent) else {tuple(k): v for k, v in s.items()}
    pos = set(build_root_system("A", n).positive_roots)
    for r, v in d.items():
        if r not in pos or v < 0:
            raise InputError(f"multi-exponent not supported on positive roots: {list(r)} -> {v}")
    for P in enumerate_dyck_paths(n):
        if sum(d.get(r, 0) for r in P.steps) > path_bound(lam, P):
            return False
    return True


def enumerate_fflv_basis(lam: Sequence[int], max_size: int = DEFAULT_MAX_BASIS) -> List[MultiExponent]:
    """The index set ``S(lam)`` in lexicographic order over the positive roots.

    Depth-first over positive roots; each path keeps a running sum so that a
    partial assignment is cut as soon as one path exceeds its bound.
    """
    lam = _check_lambda(lam)
    n = len(lam)
    rs = build_root_system("A", n)
    pos = list(rs.positive_roots)
    paths = enumerate_dyck_paths(n)
    bounds = [path_bound(lam, P) for P in paths]
    on_paths = [[k for k, P in enumerate(paths) if r in P.steps] for r in pos]
    caps = [min(bounds[k] for k in on_paths[i]) for i in range(len(pos))]
    sums = [0] * len(paths)
    cur = [0] * len(pos)
    out: List[MultiExponent] = []

    def grow(i: int) -> None:
        if i == len(pos):
            if len(out) >= max_size:
                raise CapExceeded(f"FFLV basis larger than {max_size}")
            out.append(MultiExponent.from_dict(dict(zip(pos, cur))))
            return
        room = min([caps[i]] + [bounds[k] - sums[k] for k in on_paths[i]])
        for v in range(room + 1):
            cur[i] = v
            for k in on_paths[i]:
                sums[k] += v
            grow(i + 1)
            for k in on_paths[i]:
                sums[k] -= v
        cur[i] = 0

    grow(0)
    return out


def fflv_weight(lam: Sequence[int], s: MultiExponent) -> Weight:
    """``lam - sum_beta s_beta beta`` in fundamental-weight coordinates."""
    rs = build_root_system("A", len(lam))
    w = list(lam)
    for r, v in s.exponents:
        rw = rs.root_to_weight(r)
        for k in range(len(w)):
            w[k] -= v * rw[k]
    return Weight(w)


def fflv_weight_multiset(lam: Sequence[int]) -> Counter:
    return Counter(fflv_weight(lam, s) for s in enumerate_fflv_basis(lam))


def lemma_nonzero_holds(lam: Sequence[int], i: int, j: int, kind: str = "ij") -> bool:
    """Admissibility of the unit multi-exponent at ``alpha_{i,j}`` (``kind="ij"``,
    ``i <= j``) or at ``alpha_{j,i}`` (``kind="ji"``, ``j <= i``), given ``m_i > 0``."""
    lam = _check_lambda(lam)
    n = len(lam)
    if not 1 <= i <= n:
        raise InputError(f"index {i} out of range for A{n}")
    if lam[i - 1] <= 0:
        raise InputError("m_i must be positive")
    if kind == "ij":
        if not i <= j <= n:
            raise InputError(f"need {i} <= j <= {n}, got j={j}")
        root = alpha(n, i, j)
    elif kind == "ji":
        if not 1 <= j <= i:
            raise InputError(f"need 1 <= j' <= {i}, got j'={j}")
        root = alpha(n, j, i)
    else:
        raise InputError(f"unknown kind {kind!r}")
    return is_admissible({root: 1}, lam)
