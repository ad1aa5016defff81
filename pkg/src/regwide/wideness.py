"""Wide / narrow / lambda-wide classification of regular subalgebras.

The decision procedure is combinatorial: ``s_{T,t}`` is lambda-wide
exactly when the closure of ``T`` and ``-T`` generates all of ``V(lambda)``
from a highest weight vector.  Independently, :func:`is_indecomposable_restriction`
decides indecomposability by computing the commutant ``(End V)^s`` and
checking that it is a local algebra.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .closedsets import ClosedSubset, is_full, symmetrized_closure
from .errors import CapExceeded, InputError
from .linalg import Echelon, Mat, linear_combination, nullspace, rank, trace_of_product
from .repmod import (
    DEFAULT_MAX_DEGREE,
    ExplicitModule,
    RegularSubalgebra,
    adjoint_module,
    generated_submodule,
    highest_weight_module,
    regular_subalgebra,
)
from .rootsys import RootSystem, Weight, fundamental_weight

DEFAULT_MAX_DIM = 200
WITNESS_ATTEMPTS = 60

LAMBDA_WIDE = "LambdaWide"
LAMBDA_NARROW = "LambdaNarrow"
WIDE = "Wide"
NARROW = "Narrow"


# ---------------------------------------------------------------------------
# commutant


@dataclass(frozen=True)
class Commutant:
    """Weight-graded basis of ``(End V)^s``: ``basis[k]`` has weight ``weights[k]``."""

    basis: Tuple[Mat, ...]
    weights: Tuple[Weight, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def weight_set(self) -> set:
        return set(self.weights)


def commutant(V: ExplicitModule, s: RegularSubalgebra, max_dim: int = DEFAULT_MAX_DIM) -> Commutant:
    """All ``X`` commuting with every generator of ``s`` on ``V``.

    Every generator is weight-homogeneous, so the commutant splits into the
    weight spaces of ``End V`` and each one is solved separately.
    """
    n = V.dimension
    if n > max_dim:
        raise CapExceeded(f"module dimension {n} exceeds the linear-algebra cap {max_dim}")
    wts = V.basis_weights
    blocks: Dict[Weight, List[Tuple[int, int]]] = {}
    for i in range(n):
        for j in range(n):
            blocks.setdefault(wts[i] - wts[j], []).append((i, j))
    roots = [(r, V.root_ops[r]) for r in s.T.roots]
    basis, weights = [], []
    for mu in sorted(blocks, key=lambda w: (sum(abs(c) for c in w), tuple(w))):
        if any(sum(Fraction(c) * m for c, m in zip(h, mu)) for h in s.cartan_part):
            continue
        unknowns = blocks[mu]
        eqs: Dict[Tuple[int, int], Dict[Tuple[int, int], Fraction]] = {}
        for _, g in roots:
            grows, gcols = g.rows, g.cols
            for (i, j) in unknowns:
                for l, v in grows.get(j, {}).items():
                    row = eqs.setdefault((i, l), {})
                    row[(i, j)] = row.get((i, j), 0) + v
                for k, v in gcols.get(i, {}).items():
                    row = eqs.setdefault((k, j), {})
                    row[(i, j)] = row.get((i, j), 0) - v
        for x in nullspace(eqs.values(), unknowns):
            basis.append(Mat.from_entries(n, n, ((i, j, c) for (i, j), c in x.items())))
            weights.append(mu)
    return Commutant(tuple(basis), tuple(weights))


# ---------------------------------------------------------------------------
# locality test


@dataclass
class CommutantSummary:
    commutant_dimension: int
    radical_dimension: int
    semisimple_quotient_dimension: int
    indecomposable: bool
    status: str
    witness: Optional[Mat] = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "commutant_dimension": self.commutant_dimension,
            "radical_dimension": self.radical_dimension,
            "semisimple_quotient_dimension": self.semisimple_quotient_dimension,
            "indecomposable": self.indecomposable,
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = [[i, j, f"{v.numerator}/{v.denominator}"] for i, j, v in self.witness.entries()]
        return out


def radical_dimension(A: Commutant) -> int:
    """``dim rad(A)`` as the kernel of the trace form ``(a, b) -> tr(ab)``."""
    k = len(A)
    zero = Weight([0] * len(A.weights[0])) if k else None
    gram = []
    for a in range(k):
        row = {}
        for b in range(k):
            if A.weights[a] + A.weights[b] == zero:
                t = trace_of_product(A.basis[a], A.basis[b])
                if t:
                    row[b] = t
        gram.append(row)
    return k - rank(gram)


def _matrix_poly(coeffs: Sequence[Fraction], a: Mat) -> Mat:
    """Evaluate ``sum coeffs[i] x^i`` at ``a`` by Horner's rule."""
    n = a.nrows
    out = Mat(n, n)
    ident = Mat.identity(n)
    for c in reversed(coeffs):
        out = (out @ a).combine(ident, c)
    return out


def minimal_polynomial(a: Mat) -> List[Fraction]:
    """Monic minimal polynomial of ``a``, low degree first."""
    n = a.nrows
    powers: List[Mat] = [Mat.identity(n)]
    ech = Echelon()
    ech.add({(i, j): v for i, j, v in powers[0].entries()})
    while True:
        p = powers[-1] @ a
        vec = {(i, j): v for i, j, v in p.entries()}
        if ech.add(vec) is None:
            keys = sorted({key for m in powers + [p] for key in ((i, j) for i, j, _ in m.entries())})
            vecs = [{(i, j): v for i, j, v in m.entries()} for m in powers + [p]]
            rows = [{k: vec[key] for k, vec in enumerate(vecs) if key in vec} for key in keys]
            (sol,) = nullspace(rows, list(range(len(vecs))))
            lead = sol[len(vecs) - 1]
            return [Fraction(sol.get(k, 0)) / lead for k in range(len(vecs))]
        powers.append(p)


def idempotent_from(a: Mat) -> Optional[Mat]:
    """A nontrivial idempotent in ``Q[a]``, if the minimal polynomial splits into coprime parts."""
    x = sympy.Symbol("x")
    coeffs = minimal_polynomial(a)
    if len(coeffs) <= 2:
        return None
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    f = factors[0][0] ** factors[0][1]
    g = sympy.Poly(sympy.prod([q ** e for q, e in factors[1:]]), x, domain="QQ")
    s_, t_, h = sympy.gcdex(f, g)
    assert h == 1 or h.as_expr() == 1
    e_poly = sympy.Poly(t_ * g, x, domain="QQ").rem(poly)
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(e_poly.all_coeffs())]
    return _matrix_poly(cs, a)


def _is_nontrivial_idempotent(e: Mat) -> bool:
    n = e.nrows
    return (e @ e) == e and not e.is_zero() and e != Mat.identity(n)


def find_idempotent(A: Commutant, attempts: int = WITNESS_ATTEMPTS, seed: int = 0) -> Optional[Mat]:
    """Search ``A`` for a nontrivial rational idempotent.

    Tries each basis element, then small integer combinations, taking an
    idempotent from the primary decomposition of the minimal polynomial.
    """
    k = len(A)
    candidates = [dict([(i, 1)]) for i in range(k)]
    candidates += [{i: 1, j: c} for i, j in itertools.combinations(range(k), 2) for c in (1, 2)]
    rng = random.Random(seed)
    candidates += [{i: rng.randint(-3, 3) for i in range(k)} for _ in range(attempts)]
    for coeffs in candidates[: k + attempts * 4]:
        a = linear_combination(coeffs, A.basis)
        if a.is_zero():
            continue
        e = idempotent_from(a)
        if e is not None and _is_nontrivial_idempotent(e):
            return e
    return None


def is_indecomposable_restriction(V: ExplicitModule, s: RegularSubalgebra,
                                  max_dim: int = DEFAULT_MAX_DIM) -> CommutantSummary:
    """Decide whether ``V`` stays indecomposable on restriction to ``s``.

    ``V`` is indecomposable iff ``A = (End V)^s`` has no nontrivial
    idempotent iff ``A / rad A`` is one-dimensional.  A larger quotient
    certifies decomposability over an algebraic closure; a rational
    idempotent is then searched for and shipped as a witness, and the
    status is ``"indeterminate"`` when none is found.
    """
    A = commutant(V, s, max_dim=max_dim)
    rad = radical_dimension(A)
    quotient = len(A) - rad
    if quotient == 1:
        return CommutantSummary(len(A), rad, quotient, True, "indecomposable")
    e = find_idempotent(A)
    status = "decomposable" if e is not None else "indeterminate"
    return CommutantSummary(len(A), rad, quotient, False, status, e)


# ---------------------------------------------------------------------------
# the combinatorial criterion


def _module(rs: RootSystem, lam, max_degree: int = DEFAULT_MAX_DEGREE) -> ExplicitModule:
    return highest_weight_module(rs, lam, max_degree=max_degree)


def is_lambda_wide(rs: RootSystem, T: ClosedSubset, lam: Sequence[int], *,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """True iff ``[T u -T]`` generates ``V(lam)`` from its highest weight vector."""
    V = _module(rs, lam, max_degree)
    S = symmetrized_closure(rs, T)
    return len(generated_submodule(V, S.roots, V.highest_vector())) == V.dimension


def is_wide(rs: RootSystem, T: ClosedSubset) -> bool:
    return is_full(rs, T)


def wide_via_adjoint(rs: RootSystem, T: ClosedSubset, max_dim: int = DEFAULT_MAX_DIM) -> bool:
    """Indecomposability of the adjoint module restricted to ``s_{T,t}`` (minimal ``t``)."""
    return is_indecomposable_restriction(adjoint_module(rs), regular_subalgebra(T, "minimal"), max_dim).indecomposable


def default_lambda_set(rank: int) -> List[Weight]:
    """Fundamental weights, ``lambda_i + lambda_j`` (``i < j``) and ``2 lambda_1``."""
    out = [fundamental_weight(rank, i) for i in range(rank)]
    out += [fundamental_weight(rank, i) + fundamental_weight(rank, j)
            for i, j in itertools.combinations(range(rank), 2)]
    two = Weight([2] + [0] * (rank - 1))
    if two not in out:
        out.append(two)
    return out


@dataclass
class Verdict:
    subalgebra: RegularSubalgebra
    classification: str
    per_lambda: Dict[Weight, str]
    oracle_agreement: Optional[bool]
    oracle: Dict[Weight, Dict[str, CommutantSummary]] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "subalgebra": self.subalgebra.to_json(),
            "classification": self.classification,
            "per_lambda": [{"lambda": list(l), "verdict": v} for l, v in self.per_lambda.items()],
            "oracle_agreement": self.oracle_agreement,
        }
        if self.oracle:
            out["oracle"] = [
                {"lambda": list(l), **{mode: summ.to_json() for mode, summ in modes.items()}}
                for l, modes in self.oracle.items()
            ]
        if self.failures:
            out["failures"] = self.failures
        return out


def classify(rs: RootSystem, T: ClosedSubset, lambda_test_set: Optional[Sequence[Sequence[int]]] = None, *,
             verify: bool = True, cartan: str = "minimal", max_dim: int = DEFAULT_MAX_DIM,
             max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """Classify ``s_{T,t}`` in type A.

    ``classification`` follows closure fullness; ``per_lambda`` follows the
    generated-submodule criterion.  With ``verify`` the commutant oracle is
    run for every weight at both minimal and full Cartan part, and
    ``oracle_agreement`` records whether all of them match the criterion.
    """
    if rs.type_letter != "A":
        raise InputError(f"classify needs type A, got {rs.name}; use wide_via_adjoint")
    lams = [Weight(l) for l in (lambda_test_set if lambda_test_set is not None else default_lambda_set(rs.rank))]
    per_lambda: Dict[Weight, str] = {}
    oracle: Dict[Weight, Dict[str, CommutantSummary]] = {}
    failures: List[dict] = []
    for lam in lams:
        wide = is_lambda_wide(rs, T, lam, max_degree=max_degree)
        per_lambda[lam] = LAMBDA_WIDE if wide else LAMBDA_NARROW
        if not verify:
            continue
        V = _module(rs, lam, max_degree)
        oracle[lam] = {}
        for mode in ("minimal", "full"):
            summ = is_indecomposable_restriction(V, regular_subalgebra(T, mode), max_dim)
            oracle[lam][mode] = summ
            if summ.status == "indeterminate" or summ.indecomposable != wide:
                failures.append({
                    "T": T.to_json(), "lambda": list(lam), "cartan": mode,
                    "criterion": wide, "oracle": summ.status,
                })
    return Verdict(
        subalgebra=regular_subalgebra(T, cartan),
        classification=WIDE if is_wide(rs, T) else NARROW,
        per_lambda=per_lambda,
        oracle_agreement=(not failures) if verify else None,
        oracle=oracle,
        failures=failures,
    )
