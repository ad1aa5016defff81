"""Explicit finite-dimensional modules with exact generator matrices.

Two constructions are provided: the adjoint module of any supported
simple Lie algebra, and ``V(lambda)`` for type A realised as the cyclic
span of a highest-weight vector inside a tensor power of the natural
module.  Both expose the Chevalley basis action: ``root_ops[alpha]`` is the
matrix of ``e_alpha`` for every root (``f_beta = e_{-beta}``) and
``cartan_ops[i]`` the matrix of the simple coroot ``h_i``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .closedsets import ClosedSubset
from .errors import CapExceeded, InputError, NotDominant
from .linalg import Echelon, Mat, Vec, commutator, nullspace
from .rootsys import Root, RootSystem, Weight, build_root_system, pairing

DEFAULT_MAX_DEGREE = 8


@dataclass(frozen=True, eq=False)
class ExplicitModule:
    rs: RootSystem
    basis_weights: Tuple[Weight, ...]
    root_ops: Dict[Root, Mat] = field(repr=False)
    cartan_ops: Tuple[Mat, ...] = field(repr=False)
    highest_weight: Optional[Weight] = None
    highest_vector_index: Optional[int] = None
    name: str = ""

    @property
    def dimension(self) -> int:
        return len(self.basis_weights)

    def __repr__(self) -> str:
        return f"ExplicitModule({self.name or self.rs.name}, dim={self.dimension})"

    def cartan_element(self, coeffs: Sequence) -> Mat:
        """Matrix of ``sum_i coeffs[i] h_i``; diagonal on the weight basis."""
        diag = {}
        for k, mu in enumerate(self.basis_weights):
            v = sum((Fraction(c) * m for c, m in zip(coeffs, mu)), Fraction(0))
            if v:
                diag[k] = {k: v}
        return Mat(self.dimension, self.dimension, diag)

    def highest_vector(self) -> Vec:
        if self.highest_vector_index is None:
            raise InputError("module has no distinguished highest weight vector")
        return {self.highest_vector_index: Fraction(1)}

    def to_json(self) -> dict:
        def mat(m: Mat):
            return [[i, j, f"{Fraction(v).numerator}/{Fraction(v).denominator}"] for i, j, v in m.entries()]

        ops = {}
        for r, m in self.root_ops.items():
            label = ("e" if sum(r) > 0 else "f") + str([abs(c) for c in r]).replace(" ", "")
            ops[label] = mat(m)
        for i, m in enumerate(self.cartan_ops):
            ops[f"h{i + 1}"] = mat(m)
        return {
            "root_system": {"type": self.rs.type_letter, "rank": self.rs.rank},
            "dimension": self.dimension,
            "basis_weights": [list(w) for w in self.basis_weights],
            "highest_weight": None if self.highest_weight is None else list(self.highest_weight),
            "highest_vector_index": self.highest_vector_index,
            "generators": dict(sorted(ops.items())),
        }


# ---------------------------------------------------------------------------
# Lie bracket on the Chevalley basis


GenLabel = Union[Tuple[str, Root], Tuple[str, int]]


def generator_labels(rs: RootSystem) -> List[GenLabel]:
    return [("e", r) for r in rs.roots] + [("h", i) for i in range(rs.rank)]


def bracket(rs: RootSystem, x: GenLabel, y: GenLabel) -> Dict[GenLabel, int]:
    """``[x, y]`` expanded over the Chevalley basis labels."""
    if x[0] == "h" and y[0] == "h":
        return {}
    if x[0] == "h":
        c = pairing(rs, y[1], rs.simple_roots[x[1]])
        return {y: c} if c else {}
    if y[0] == "h":
        return {lab: -c for lab, c in bracket(rs, y, x).items()}
    a, b = x[1], y[1]
    s = tuple(p + q for p, q in zip(a, b))
    if not any(s):
        return {("h", i): c for i, c in enumerate(rs.coroot_coords(a)) if c}
    if s in rs.index:
        return {("e", s): rs.structure_constants[(a, b)]}
    return {}


def _label_matrix(V: ExplicitModule, lab: GenLabel) -> Mat:
    return V.root_ops[lab[1]] if lab[0] == "e" else V.cartan_ops[lab[1]]


def commutation_defects(V: ExplicitModule) -> List[Tuple[GenLabel, GenLabel]]:
    """Generator pairs with ``[rho(x), rho(y)] != rho([x, y])``."""
    labels = generator_labels(V.rs)
    bad = []
    n = V.dimension
    for a, b in itertools.combinations(labels, 2):
        lhs = commutator(_label_matrix(V, a), _label_matrix(V, b))
        rhs = Mat(n, n)
        for lab, c in bracket(V.rs, a, b).items():
            rhs = rhs.combine(_label_matrix(V, lab), c)
        if lhs != rhs:
            bad.append((a, b))
    return bad


def _check(V: ExplicitModule) -> ExplicitModule:
    for i, h in enumerate(V.cartan_ops):
        expect = {k: {k: Fraction(mu[i])} for k, mu in enumerate(V.basis_weights) if mu[i]}
        if h.cols != expect:
            raise AssertionError(f"h_{i + 1} is not diagonal with the basis weights")
    bad = commutation_defects(V)
    if bad:
        raise AssertionError(f"commutation fidelity fails on {bad[:3]}")
    return V


# ---------------------------------------------------------------------------
# adjoint module


def adjoint_module(rs: RootSystem, check: bool = True) -> ExplicitModule:
    """The adjoint module on the Chevalley basis: root vectors, then ``h_1..h_n``."""
    return _adjoint_cached(rs.type_letter, rs.rank, check)


@functools.lru_cache(maxsize=None)
def _adjoint_cached(type_letter: str, rank: int, check: bool) -> ExplicitModule:
    rs = build_root_system(type_letter, rank)
    nroots = len(rs.roots)
    n = nroots + rs.rank
    labels = generator_labels(rs)
    pos = {lab: k for k, lab in enumerate(labels)}

    def ad(x: GenLabel) -> Mat:
        cols = {}
        for j, y in enumerate(labels):
            col = {pos[lab]: Fraction(c) for lab, c in bracket(rs, x, y).items()}
            if col:
                cols[j] = col
        return Mat(n, n, cols)

    weights = tuple([rs.root_to_weight(r) for r in rs.roots] + [Weight([0] * rs.rank)] * rs.rank)
    theta = rs.highest_root
    V = ExplicitModule(
        rs=rs,
        basis_weights=weights,
        root_ops={r: ad(("e", r)) for r in rs.roots},
        cartan_ops=tuple(ad(("h", i)) for i in range(rs.rank)),
        highest_weight=rs.root_to_weight(theta),
        highest_vector_index=rs.index[theta],
        name=f"adjoint {rs.name}",
    )
    return _check(V) if check else V


# ---------------------------------------------------------------------------
# modules from simple-generator images


def _complete_root_ops(rs: RootSystem, simple_e: List[Mat], simple_f: List[Mat]) -> Dict[Root, Mat]:
    """Matrices of all ``e_alpha`` from those of ``e_{alpha_i}``, ``f_{alpha_i}``."""
    ops: Dict[Root, Mat] = {}
    for i in range(rs.rank):
        ops[rs.simple_roots[i]] = simple_e[i]
        ops[rs.negate(rs.simple_roots[i])] = simple_f[i]
    for xi in rs.positive_roots:
        if xi in ops:
            continue
        for sign in (1, -1):
            target = tuple(sign * c for c in xi)
            for a in rs.simple_roots:
                a = tuple(sign * c for c in a)
                b = tuple(t - c for t, c in zip(target, a))
                if b in ops:
                    N = rs.structure_constants[(a, b)]
                    ops[target] = commutator(ops[a], ops[b]).scaled(Fraction(1, N))
                    break
            else:  # pragma: no cover - every non-simple root has a simple summand
                raise AssertionError(f"cannot reach root {target}")
    return {r: ops[r] for r in rs.roots}


def _natural_weight(n: int, k: int) -> Tuple[int, ...]:
    """Fundamental-weight coordinates of the k-th standard basis vector of C^{n+1}."""
    w = [0] * n
    if k < n:
        w[k] += 1
    if k > 0:
        w[k - 1] -= 1
    return tuple(w)


def _wedge_block(k: int) -> Dict[Tuple[int, ...], int]:
    out = {}
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for a, b in itertools.combinations(range(k), 2) if perm[a] > perm[b])
        out[perm] = -1 if inv % 2 else 1
    return out


def _tensor(u: Mapping[Tuple[int, ...], int], v: Mapping[Tuple[int, ...], int]) -> Dict[Tuple[int, ...], int]:
    return {a + b: x * y for a, x in u.items() for b, y in v.items()}


def _apply_unit(vec: Mapping[Tuple[int, ...], object], src: int, dst: int) -> Dict[Tuple[int, ...], Fraction]:
    """Apply ``E_{dst,src}`` (``v_src -> v_dst``) to every tensor slot."""
    out: Dict[Tuple[int, ...], Fraction] = {}
    for key, x in vec.items():
        for pos, k in enumerate(key):
            if k == src:
                nk = key[:pos] + (dst,) + key[pos + 1:]
                s = out.get(nk, 0) + x
                if s:
                    out[nk] = s
                else:
                    del out[nk]
    return out


def tensor_degree(lam: Sequence[int]) -> int:
    return sum((i + 1) * m for i, m in enumerate(lam))


def typeA_module(rs: RootSystem, lam: Sequence[int], *, max_degree: int = DEFAULT_MAX_DEGREE,
                 check: bool = True) -> ExplicitModule:
    """``V(lam)`` for ``sl_{n+1}`` inside the ``d``-th tensor power of ``C^{n+1}``.

    The highest weight vector is a tensor product of wedge blocks
    ``v_1 ^ ... ^ v_k`` (``m_k`` blocks of each size ``k``); the module is
    its span under the simple lowering operators.
    """
    if rs.type_letter != "A":
        raise InputError(f"typeA_module needs type A, got {rs.name}")
    lam = Weight(lam)
    if len(lam) != rs.rank:
        raise InputError(f"weight {list(lam)} has wrong length for {rs.name}")
    if not lam.is_dominant():
        raise NotDominant(f"not dominant: {list(lam)}")
    d = tensor_degree(lam)
    if d > max_degree:
        raise CapExceeded(f"tensor degree too large: {d} > {max_degree}")
    return _typeA_cached(rs.rank, lam, check)


def _depth(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    return sum(rs.weight_to_root_coords(lam - mu))


@functools.lru_cache(maxsize=None)
def _typeA_cached(rank: int, lam: Weight, check: bool) -> ExplicitModule:
    rs = build_root_system("A", rank)
    n = rank
    hv: Dict[Tuple[int, ...], int] = {(): 1}
    for k in range(n, 0, -1):
        for _ in range(lam[k - 1]):
            hv = _tensor(hv, _wedge_block(k))

    def weight_of(key: Tuple[int, ...]) -> Weight:
        w = [0] * n
        for k in key:
            for i, c in enumerate(_natural_weight(n, k)):
                w[i] += c
        return Weight(w)

    spaces: Dict[Weight, Echelon] = {lam: Echelon()}
    spaces[lam].add(hv)
    queue = [(lam, spaces[lam].basis()[0])]
    while queue:
        mu, v = queue.pop()
        for i in range(n):
            img = _apply_unit(v, i, i + 1)
            if not img:
                continue
            nu = weight_of(next(iter(img)))
            ech = spaces.setdefault(nu, Echelon())
            r = ech.add(img)
            if r is not None:
                queue.append((nu, r))

    order = sorted(spaces, key=lambda mu: (_depth(rs, lam, mu), tuple(-c for c in mu)))
    basis: List[Tuple[Weight, Vec]] = [(mu, b) for mu in order for b in spaces[mu].basis()]
    offset: Dict[Weight, int] = {}
    k = 0
    for mu in order:
        offset[mu] = k
        k += len(spaces[mu])
    dim = len(basis)
    expected = rs.weyl_dimension(lam)
    if dim != expected:  # pragma: no cover - construction invariant
        raise AssertionError(f"V({list(lam)}) has dimension {dim}, Weyl formula gives {expected}")

    def op_matrix(src: int, dst: int) -> Mat:
        cols = {}
        for j, (mu, b) in enumerate(basis):
            img = _apply_unit(b, src, dst)
            if not img:
                continue
            nu = weight_of(next(iter(img)))
            ech = spaces[nu]
            pivots = ech.pivots()
            coords = ech.coordinates(img)
            cols[j] = {offset[nu] + pivots.index(p): c for p, c in coords.items()}
        return Mat(dim, dim, cols)

    simple_e = [op_matrix(i + 1, i) for i in range(n)]
    simple_f = [op_matrix(i, i + 1) for i in range(n)]
    weights = tuple(mu for mu, _ in basis)
    cartan = tuple(
        Mat(dim, dim, {j: {j: Fraction(mu[i])} for j, mu in enumerate(weights) if mu[i]}) for i in range(n)
    )
    V = ExplicitModule(
        rs=rs,
        basis_weights=weights,
        root_ops=_complete_root_ops(rs, simple_e, simple_f),
        cartan_ops=cartan,
        highest_weight=lam,
        highest_vector_index=0,
        name=f"V({list(lam)}) of {rs.name}",
    )
    return _check(V) if check else V


def trivial_module(rs: RootSystem) -> ExplicitModule:
    z = Mat(1, 1)
    zero = Weight([0] * rs.rank)
    return ExplicitModule(rs, (zero,), {r: z for r in rs.roots}, tuple(z for _ in range(rs.rank)),
                          zero, 0, f"trivial {rs.name}")


def highest_weight_module(rs: RootSystem, lam: Sequence[int], *, max_degree: int = DEFAULT_MAX_DEGREE) -> ExplicitModule:
    """``V(lam)`` where constructible: any weight in type A, else 0 or the highest root."""
    lam = Weight(lam)
    if not lam.is_dominant():
        raise NotDominant(f"not dominant: {list(lam)}")
    if rs.type_letter == "A":
        return typeA_module(rs, lam, max_degree=max_degree)
    if not any(lam):
        return trivial_module(rs)
    if lam == rs.root_to_weight(rs.highest_root):
        return adjoint_module(rs)
    raise InputError(f"V({list(lam)}) is only constructed for type A; use the adjoint weight for {rs.name}")


# ---------------------------------------------------------------------------
# regular subalgebras and subspaces


@dataclass(frozen=True, eq=False)
class RegularSubalgebra:
    """``t + sum_{alpha in T} g_alpha``; ``cartan_part`` spans ``t`` in coroot coordinates."""

    T: ClosedSubset
    cartan_part: Tuple[Tuple[Fraction, ...], ...]
    cartan_mode: str = "custom"

    @property
    def rs(self) -> RootSystem:
        return self.T.rs

    def __repr__(self) -> str:
        return f"RegularSubalgebra({[list(r) for r in self.T.roots]}, dim t={len(self.cartan_part)}, {self.cartan_mode})"

    def generator_matrices(self, V: ExplicitModule) -> List[Tuple[Optional[Root], Mat]]:
        """``(root, matrix)`` for each root vector, ``(None, matrix)`` for Cartan generators."""
        gens: List[Tuple[Optional[Root], Mat]] = [(r, V.root_ops[r]) for r in self.T.roots]
        gens += [(None, V.cartan_element(h)) for h in self.cartan_part]
        return gens

    def to_json(self) -> dict:
        return {
            "T": self.T.to_json(),
            "cartan_mode": self.cartan_mode,
            "cartan_part": [[str(Fraction(c)) for c in h] for h in self.cartan_part],
        }


def regular_subalgebra(T: ClosedSubset, cartan: Union[str, Sequence[Sequence]] = "minimal") -> RegularSubalgebra:
    """Build ``s_{T,t}``.

    ``cartan`` is ``"minimal"`` (span of ``h_alpha`` for symmetric roots of
    ``T``), ``"full"`` (all of ``h``) or an explicit spanning list in coroot
    coordinates, which must contain the minimal part.
    """
    rs = T.rs
    required = [rs.coroot_coords(r) for r in T.symmetric_part]
    if cartan == "full":
        vecs = [tuple(1 if k == i else 0 for k in range(rs.rank)) for i in range(rs.rank)]
        mode = "full"
    elif cartan == "minimal":
        vecs = required
        mode = "minimal"
    elif isinstance(cartan, str):
        raise InputError(f"unknown Cartan mode {cartan!r}")
    else:
        vecs = [tuple(Fraction(c) for c in h) for h in cartan]
        mode = "custom"
        span = Echelon()
        for h in vecs:
            span.add(dict(enumerate(h)))
        if any(not span.contains(dict(enumerate(h))) for h in required):
            raise InputError("Cartan part must contain h_alpha for every symmetric root of T")
    ech = Echelon()
    for h in vecs:
        ech.add(dict(enumerate(h)))
    part = tuple(tuple(row.get(i, Fraction(0)) for i in range(rs.rank)) for row in ech.basis())
    return RegularSubalgebra(T, part, mode)


def weight_spaces(V: ExplicitModule) -> Dict[Weight, List[int]]:
    out: Dict[Weight, List[int]] = {}
    for k, mu in enumerate(V.basis_weights):
        out.setdefault(mu, []).append(k)
    return out


def annihilated_subspace(V: ExplicitModule, s: RegularSubalgebra) -> Dict[Weight, List[Vec]]:
    """Basis of ``{v : s . v = 0}``, one list per weight space (empty ones omitted)."""
    gens = s.generator_matrices(V)
    out: Dict[Weight, List[Vec]] = {}
    for mu, idx in weight_spaces(V).items():
        rows = []
        for _, m in gens:
            rowmap: Dict[int, Dict[int, Fraction]] = {}
            for j in idx:
                for i, v in m.cols.get(j, {}).items():
                    rowmap.setdefault(i, {})[j] = v
            rows.extend(rowmap.values())
        ker = nullspace(rows, idx)
        if ker:
            out[mu] = ker
    return out


def generated_submodule(V: ExplicitModule, S, start) -> List[Vec]:
    """Smallest subspace containing ``start`` and stable under ``e_beta``, ``beta in S``.

    ``start`` is a basis index or a sparse vector; ``S`` any iterable of roots
    (a :class:`ClosedSubset` included).
    """
    if isinstance(start, int):
        start = {start: Fraction(1)}
    if not any(start.values()):
        raise InputError("zero start vector")
    mats = [V.root_ops[V.rs.require_root(b)] for b in S]
    ech = Echelon()
    queue = [ech.add(start)]
    while queue:
        v = queue.pop()
        for m in mats:
            r = ech.add(m.apply(v))
            if r is not None:
                queue.append(r)
    return ech.basis()
