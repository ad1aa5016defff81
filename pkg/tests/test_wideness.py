import pytest

from regwide.closedsets import ClosedSubset, enumerate_closed_subsets
from regwide.errors import CapExceeded, InputError
from regwide.linalg import Mat, commutator
from regwide.repmod import adjoint_module, regular_subalgebra, typeA_module
from regwide.rootsys import Weight, build_root_system
from regwide.wideness import (
    LAMBDA_NARROW,
    LAMBDA_WIDE,
    NARROW,
    WIDE,
    classify,
    commutant,
    default_lambda_set,
    is_indecomposable_restriction,
    is_lambda_wide,
    is_wide,
    minimal_polynomial,
    wide_via_adjoint,
)

A2 = build_root_system("A", 2)


def T_of(rs, roots):
    return ClosedSubset.from_roots(rs, roots)


def test_schur_for_whole_algebra():
    V = typeA_module(A2, (1, 1))
    summ = is_indecomposable_restriction(V, regular_subalgebra(T_of(A2, A2.roots), "full"))
    assert (summ.commutant_dimension, summ.radical_dimension, summ.semisimple_quotient_dimension) == (1, 0, 1)
    assert summ.indecomposable and summ.status == "indecomposable"


def test_zero_subalgebra_decomposes_with_witness():
    V = typeA_module(A2, (1, 0))
    s = regular_subalgebra(T_of(A2, []), "minimal")
    summ = is_indecomposable_restriction(V, s)
    assert summ.commutant_dimension == 9
    assert summ.status == "decomposable"
    e = summ.witness
    assert e @ e == e and not e.is_zero() and e != Mat.identity(3)


def test_witness_commutes_with_subalgebra():
    V = adjoint_module(A2)
    s = regular_subalgebra(T_of(A2, [(1, 0)]), "minimal")
    summ = is_indecomposable_restriction(V, s)
    assert summ.status == "decomposable"
    for _, g in s.generator_matrices(V):
        assert commutator(summ.witness, g).is_zero()


def test_adjoint_sl3_borel_like():
    V = adjoint_module(A2)
    summ = is_indecomposable_restriction(V, regular_subalgebra(T_of(A2, [(1, 0), (1, 1)]), "minimal"))
    assert summ.indecomposable


def test_commutant_cap():
    V = typeA_module(A2, (1, 1))
    with pytest.raises(CapExceeded):
        commutant(V, regular_subalgebra(T_of(A2, []), "minimal"), max_dim=5)


def test_commutant_weights_are_block_weights():
    V = typeA_module(A2, (1, 0))
    A = commutant(V, regular_subalgebra(T_of(A2, [(1, 0)]), "minimal"))
    for a, mu in zip(A.basis, A.weights):
        for i, j, _ in a.entries():
            assert V.basis_weights[i] - V.basis_weights[j] == mu


def test_minimal_polynomial():
    a = Mat.from_dense([[2, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert minimal_polynomial(a) == [6, -5, 1]


def test_classify_examples():
    v = classify(A2, T_of(A2, A2.positive_roots))
    assert v.classification == WIDE and set(v.per_lambda.values()) == {LAMBDA_WIDE} and v.oracle_agreement
    v = classify(A2, T_of(A2, [(1, 0)]), [(1, 0), (0, 1), (1, 1)])
    assert v.classification == NARROW and set(v.per_lambda.values()) == {LAMBDA_NARROW} and v.oracle_agreement
    v = classify(A2, T_of(A2, []), [(0, 0)])
    assert v.per_lambda == {Weight((0, 0)): LAMBDA_WIDE} and v.classification == NARROW


def test_classify_type_a_only():
    B2 = build_root_system("B", 2)
    with pytest.raises(InputError):
        classify(B2, T_of(B2, []))


def test_wide_via_adjoint_examples():
    assert wide_via_adjoint(A2, T_of(A2, A2.positive_roots))
    assert not wide_via_adjoint(A2, T_of(A2, [(1, 0)]))
    assert wide_via_adjoint(A2, T_of(A2, A2.roots))


def test_default_lambda_set():
    assert default_lambda_set(2) == [(1, 0), (0, 1), (1, 1), (2, 0)]
    assert len(default_lambda_set(3)) == 3 + 3 + 1


def test_trivial_weight_always_wide():
    for T in enumerate_closed_subsets(A2):
        assert is_lambda_wide(A2, T, (0, 0))


def test_verdict_json_shapes():
    v = classify(A2, T_of(A2, [(1, 0)]), [(1, 0)])
    js = v.to_json()
    assert js["classification"] == NARROW
    assert js["per_lambda"] == [{"lambda": [1, 0], "verdict": LAMBDA_NARROW}]
    w = js["oracle"][0]["minimal"]["witness"]
    assert all(isinstance(x[2], str) and "/" in x[2] for x in w)


def test_is_wide_is_closure_fullness():
    # brute force: grow T u -T by pairwise sums until stable
    for T in enumerate_closed_subsets(A2):
        S = set(T.roots) | {A2.negate(r) for r in T.roots}
        while True:
            new = {tuple(x + y for x, y in zip(a, b)) for a in S for b in S} & set(A2.roots)
            if new <= S:
                break
            S |= new
        assert is_wide(A2, T) == (S == set(A2.roots))
