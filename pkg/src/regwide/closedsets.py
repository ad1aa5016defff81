"""Closed subsets of a root system.

Subsets are handled internally as bitmasks over ``rs.roots``; the public
value type is :class:`ClosedSubset`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import CapExceeded, NotClosed
from .rootsys import Root, RootSystem, weyl_elements

EXHAUSTIVE_MAX_ROOTS = 14
SCAN_MAX_ROOTS = 8


def to_mask(rs: RootSystem, roots: Iterable[Sequence[int]]) -> int:
    mask = 0
    for r in roots:
        mask |= 1 << rs.index[rs.require_root(r)]
    return mask


def from_mask(rs: RootSystem, mask: int) -> Tuple[Root, ...]:
    return tuple(rs.roots[k] for k in range(len(rs.roots)) if mask >> k & 1)


def _bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _neg_index(rs: RootSystem) -> List[int]:
    return [rs.index[rs.negate(r)] for r in rs.roots]


def negate_mask(rs: RootSystem, mask: int) -> int:
    neg = _neg_index(rs)
    out = 0
    for k in _bits(mask):
        out |= 1 << neg[k]
    return out


def mask_is_closed(rs: RootSystem, mask: int) -> bool:
    bits = _bits(mask)
    table = rs.sum_index
    for i in bits:
        row = table[i]
        for j in bits:
            s = row[j]
            if s >= 0 and not mask >> s & 1:
                return False
    return True


def mask_closure(rs: RootSystem, mask: int) -> int:
    table = rs.sum_index
    work = _bits(mask)
    while work:
        i = work.pop()
        row = table[i]
        for j in _bits(mask):
            s = row[j]
            if s >= 0 and not mask >> s & 1:
                mask |= 1 << s
                work.append(s)
    return mask


@dataclass(frozen=True)
class ClosedSubset:
    """A closed subset ``T`` together with its symmetric/special split."""

    rs: RootSystem
    mask: int

    def __post_init__(self):
        if not mask_is_closed(self.rs, self.mask):
            raise NotClosed(f"subset is not closed: {[list(r) for r in self.roots]}")

    @classmethod
    def from_roots(cls, rs: RootSystem, roots: Iterable[Sequence[int]]) -> "ClosedSubset":
        return cls(rs, to_mask(rs, roots))

    @property
    def roots(self) -> Tuple[Root, ...]:
        return from_mask(self.rs, self.mask)

    @property
    def symmetric_mask(self) -> int:
        return self.mask & negate_mask(self.rs, self.mask)

    @property
    def symmetric_part(self) -> Tuple[Root, ...]:
        return from_mask(self.rs, self.symmetric_mask)

    @property
    def special_part(self) -> Tuple[Root, ...]:
        return from_mask(self.rs, self.mask & ~self.symmetric_mask)

    @property
    def rootset(self) -> FrozenSet[Root]:
        return frozenset(self.roots)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, r) -> bool:
        k = self.rs.index.get(tuple(r))
        return k is not None and bool(self.mask >> k & 1)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    def __repr__(self) -> str:
        return f"ClosedSubset({self.rs.name}, {[list(r) for r in self.roots]})"

    def to_json(self) -> list:
        return [list(r) for r in self.roots]


def is_closed(rs: RootSystem, S: Iterable[Sequence[int]]) -> bool:
    """True iff ``x, y in S`` and ``x + y`` a root imply ``x + y in S``."""
    return mask_is_closed(rs, to_mask(rs, S))


def closure(rs: RootSystem, S: Iterable[Sequence[int]]) -> ClosedSubset:
    """Smallest closed subset containing ``S``."""
    return ClosedSubset(rs, mask_closure(rs, to_mask(rs, S)))


def symmetrized_closure(rs: RootSystem, T: ClosedSubset) -> ClosedSubset:
    """The closure of ``T`` together with its negatives."""
    return ClosedSubset(rs, mask_closure(rs, T.mask | negate_mask(rs, T.mask)))


def is_full(rs: RootSystem, T: ClosedSubset) -> bool:
    return symmetrized_closure(rs, T).mask == (1 << len(rs.roots)) - 1


def apply_weyl_mask(w: Sequence[int], mask: int) -> int:
    out = 0
    for k in _bits(mask):
        out |= 1 << w[k]
    return out


def are_weyl_conjugate(rs: RootSystem, T1: ClosedSubset, T2: ClosedSubset) -> Optional[Tuple[int, ...]]:
    """Return some ``w`` with ``w(T1) == T2`` (as a root permutation), else ``None``."""
    if len(T1) != len(T2):
        return None
    for w in weyl_elements(rs):
        if apply_weyl_mask(w, T1.mask) == T2.mask:
            return w
    return None


def canonical_mask(rs: RootSystem, mask: int) -> int:
    """Smallest mask in the Weyl orbit; equal for conjugate subsets."""
    return min(apply_weyl_mask(w, mask) for w in weyl_elements(rs))


def _sort_key(mask: int):
    return (bin(mask).count("1"), _bits(mask))


def _scan(rs: RootSystem) -> List[int]:
    return [m for m in range(1 << len(rs.roots)) if mask_is_closed(rs, m)]


def _dfs(rs: RootSystem) -> List[int]:
    n = len(rs.roots)
    table = rs.sum_index
    # pairs summing to each root, restricted to pairs decided before it
    summands: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = table[i][j]
            if s >= 0:
                summands[s].append((i, j))
    out: List[int] = []

    def grow(k: int, inc: int, exc: int) -> None:
        if k == n:
            out.append(inc)
            return
        # include k: sums with included roots must not be excluded
        bad = False
        row = table[k]
        for i in _bits(inc | 1 << k):
            s = row[i]
            if s >= 0 and exc >> s & 1:
                bad = True
                break
        if not bad:
            grow(k + 1, inc | 1 << k, exc)
        # exclude k: k must not be a sum of included roots
        for i, j in summands[k]:
            if inc >> i & 1 and inc >> j & 1:
                return
        grow(k + 1, inc, exc | 1 << k)

    grow(0, 0, 0)
    return out


def enumerate_closed_subsets(
    rs: RootSystem,
    mode: str = "exhaustive",
    *,
    method: str = "auto",
    max_roots: int = EXHAUSTIVE_MAX_ROOTS,
    samples: int = 200,
    seed: int = 0,
) -> List[ClosedSubset]:
    """Closed subsets of ``rs`` in canonical order (size, then root indices).

    ``mode="exhaustive"`` lists every closed subset using a raw scan
    (``method="scan"``) or pruned depth-first growth (``method="dfs"``);
    ``"auto"`` picks the scan up to 8 roots.  ``mode="sampled"`` returns the
    distinct closures of ``samples`` seeded random subsets.
    """
    n = len(rs.roots)
    if mode == "sampled":
        rng = random.Random(seed)
        found = {0, (1 << n) - 1}
        for _ in range(samples):
            found.add(mask_closure(rs, rng.getrandbits(n) & rng.getrandbits(n)))
        masks = found
    elif mode == "exhaustive":
        if n > max_roots:
            raise CapExceeded(f"exhaustive enumeration capped at {max_roots} roots ({rs.name} has {n})")
        if method == "auto":
            method = "scan" if n <= SCAN_MAX_ROOTS else "dfs"
        masks = _scan(rs) if method == "scan" else _dfs(rs)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return [ClosedSubset(rs, m) for m in sorted(masks, key=_sort_key)]
