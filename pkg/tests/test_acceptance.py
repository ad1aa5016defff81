"""Acceptance criteria 1-8, all exact over the rationals.

Each test records one PASS/FAIL line, printed in the pytest terminal
summary (and to stdout when this file is run as a script).
"""
import itertools
import time

from conftest import ACCEPTANCE
from regwide.closedsets import (
    ClosedSubset,
    apply_weyl_mask,
    enumerate_closed_subsets,
    is_closed,
    is_full,
    mask_closure,
    symmetrized_closure,
)
from regwide.fflv import enumerate_fflv_basis, fflv_weight_multiset, lemma_nonzero_holds
from regwide.linalg import Mat
from regwide.repmod import (
    adjoint_module,
    annihilated_subspace,
    commutation_defects,
    highest_weight_module,
    regular_subalgebra,
    typeA_module,
    weight_spaces,
)
from regwide.rootsys import Weight, build_root_system, pairing, weyl_elements
from regwide.wideness import (
    classify,
    commutant,
    default_lambda_set,
    is_indecomposable_restriction,
    is_lambda_wide,
    is_wide,
    wide_via_adjoint,
)

A2 = build_root_system("A", 2)
A3 = build_root_system("A", 3)
SL3_SET = [(1, 0), (0, 1), (1, 1), (2, 0)]
SL4_SET = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)]
RANK_LE_3 = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)]


def record(n, ok, text):
    ACCEPTANCE[n] = (ok, text)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
    assert ok, text


def all_closed(rs):
    return enumerate_closed_subsets(rs, max_roots=18)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


# 1 ---------------------------------------------------------------------------


def test_criterion_1_lambda_wide_equivalence():
    t0 = time.perf_counter()
    bad, cases = [], 0
    for T in all_closed(A2):
        for lam in SL3_SET:
            crit = is_lambda_wide(A2, T, lam)
            V = typeA_module(A2, lam)
            for mode in ("minimal", "full"):
                summ = is_indecomposable_restriction(V, regular_subalgebra(T, mode))
                cases += 1
                if summ.status == "indeterminate" or summ.indecomposable != crit:
                    bad.append((T.to_json(), lam, mode, summ.status))
    record(1, not bad, f"A2 criterion vs commutant oracle: {cases} cases, {len(bad)} mismatches, "
                       f"{time.perf_counter() - t0:.1f}s")


# 2 ---------------------------------------------------------------------------


def test_criterion_2_wide_iff_full_closure():
    bad, cases = [], 0
    for rs in (A2, A3):
        lams = default_lambda_set(rs.rank)
        for T in all_closed(rs):
            cases += 1
            if is_wide(rs, T) != all(is_lambda_wide(rs, T, lam) for lam in lams):
                bad.append((rs.name, T.to_json()))
    record(2, not bad, f"A2 and A3 wide vs all lambda-wide: {cases} subsets, {len(bad)} mismatches")


# 3 ---------------------------------------------------------------------------


def test_criterion_3_adjoint_suffices():
    t0 = time.perf_counter()
    bad, cases = [], 0
    for key in (("A", 2), ("B", 2), ("G", 2)):
        rs = build_root_system(*key)
        for T in all_closed(rs):
            cases += 1
            if wide_via_adjoint(rs, T) != is_full(rs, T):
                bad.append((rs.name, T.to_json()))
    record(3, not bad, f"A2, B2, G2 adjoint oracle vs full closure: {cases} subsets, {len(bad)} mismatches, "
                       f"{time.perf_counter() - t0:.1f}s")


# 4 ---------------------------------------------------------------------------


def test_criterion_4_dichotomy():
    exceptions, cases = [], 0
    for rs, lams in ((A2, SL3_SET), (A3, SL4_SET)):
        for T in all_closed(rs):
            cases += 1
            if len({is_lambda_wide(rs, T, lam) for lam in lams}) != 1:
                exceptions.append((rs.name, T.to_json()))
    record(4, not exceptions, f"sl3 and sl4 per-lambda maps constant: {cases} subsets, {len(exceptions)} exceptions")


# 5 ---------------------------------------------------------------------------


def test_criterion_5_fflv_basis():
    bad, cases = [], 0
    for n, bound in ((2, 3), (3, 2)):
        rs = build_root_system("A", n)
        for lam in itertools.product(range(bound + 1), repeat=n):
            if sum(lam) > bound:
                continue
            cases += 1
            if len(enumerate_fflv_basis(lam)) != rs.weyl_dimension(lam):
                bad.append(lam)
    for lam in ((1, 0), (0, 1), (1, 1)):
        V = typeA_module(A2, lam)
        module = {mu: len(idx) for mu, idx in weight_spaces(V).items()}
        cases += 1
        if dict(fflv_weight_multiset(lam)) != module:
            bad.append(("weights", lam))
    record(5, not bad, f"|S(lambda)| = Weyl dimension and weight multisets: {cases} checks, {len(bad)} failures")


# 6 ---------------------------------------------------------------------------


def test_criterion_6_unit_exponents_admissible():
    bad, cases = [], 0
    for n in (2, 3):
        for lam in itertools.product(range(4), repeat=n):
            if sum(lam) > 3:
                continue
            for i in range(1, n + 1):
                if lam[i - 1] == 0:
                    continue
                for j in range(i, n + 1):
                    cases += 1
                    if not lemma_nonzero_holds(lam, i, j, "ij"):
                        bad.append((lam, i, j, "ij"))
                for j in range(1, i + 1):
                    cases += 1
                    if not lemma_nonzero_holds(lam, i, j, "ji"):
                        bad.append((lam, i, j, "ji"))
    record(6, not bad, f"unit multi-exponents admissible: {cases} cases, {len(bad)} exceptions")


# 7 ---------------------------------------------------------------------------


def _decomposition_suite():
    fails = 0
    for key in RANK_LE_3:
        rs = build_root_system(*key)
        for T in all_closed(rs):
            sym, spec = set(T.symmetric_part), set(T.special_part)
            if not is_closed(rs, sym) or any(rs.negate(r) not in sym for r in sym) or not is_closed(rs, spec):
                fails += 1
            for a in spec:
                for b in T.roots:
                    s = vadd(a, b)
                    if rs.is_root(s) and s not in spec:
                        fails += 1
    return fails


def _positivity_suite():
    fails = 0
    jobs = [(A2, lam) for lam in SL3_SET]
    jobs += [(build_root_system(*k), None) for k in (("B", 2), ("G", 2))]
    for rs, lam in jobs:
        V = typeA_module(rs, lam) if lam is not None else adjoint_module(rs)
        for T in all_closed(rs):
            for mode in ("minimal", "full"):
                wts = set(annihilated_subspace(V, regular_subalgebra(T, mode)))
                for mu in wts:
                    for b in T.roots:
                        p = pairing(rs, mu, b)
                        if p < 0 or (rs.negate(b) in T and p != 0) or (-mu in wts and p != 0):
                            fails += 1
    return fails


def _sum_closure_suite():
    fails = 0
    for key in RANK_LE_3:
        rs = build_root_system(*key)
        rootset = set(rs.roots)
        for S in all_closed(rs):
            members = S.rootset
            level = set(members)
            for _ in range(3):
                level = {vadd(s, b) for s in level for b in members}
                fails += sum(1 for v in level if v in rootset and v not in members)
    return fails


def _wide_cases():
    for T in all_closed(A2):
        for lam in SL3_SET:
            if is_lambda_wide(A2, T, lam):
                yield A2, T, lam, typeA_module(A2, lam)
    for T in all_closed(A3):
        for lam in default_lambda_set(3):
            if is_lambda_wide(A3, T, lam):
                yield A3, T, lam, typeA_module(A3, lam)
    for key in (("B", 2), ("G", 2)):
        rs = build_root_system(*key)
        theta = rs.root_to_weight(rs.highest_root)
        for T in all_closed(rs):
            if is_lambda_wide(rs, T, theta):
                yield rs, T, theta, highest_weight_module(rs, theta)


def _injectivity_suite():
    fails = cases = 0
    for rs, T, lam, V in _wide_cases():
        S = symmetrized_closure(rs, T).roots
        wts = list(weight_spaces(V))
        sigs = {tuple(pairing(rs, mu, b) for b in S) for mu in wts}
        cases += 1
        fails += len(sigs) != len(wts)
    return fails, cases


def _commutant_weight_suite():
    fails = cases = 0
    for T in all_closed(A2):
        for lam in SL3_SET:
            if not is_lambda_wide(A2, T, lam):
                continue
            V = typeA_module(A2, lam)
            for mode in ("minimal", "full"):
                A = commutant(V, regular_subalgebra(T, mode))
                zero = Weight((0, 0))
                cases += 1
                if sum(1 for w in A.weights if w == zero) != 1:
                    fails += 1
                nonzero = {w for w in A.weights if w != zero}
                if any(-w in nonzero for w in nonzero):
                    fails += 1
    return fails, cases


def _block_ok(V, m, mu):
    return all(V.basis_weights[i] - V.basis_weights[j] == mu for i, j, _ in m.entries())


def _additivity_suite():
    fails = cases = 0
    for lam in SL3_SET:
        V = typeA_module(A2, lam)
        n, wts = V.dimension, V.basis_weights
        # elementary basis E_ij of End V, weight wts[i] - wts[j]
        graded = [(wts[i] - wts[j], Mat.from_entries(n, n, [(i, j, 1)])) for i in range(n) for j in range(n)]
        graded += [(A2.root_to_weight(r), V.root_ops[r]) for r in A2.roots]
        for T in all_closed(A2):
            A = commutant(V, regular_subalgebra(T, "minimal"))
            graded += list(zip(A.weights, A.basis))[:4]
        for (mu, a), (eta, b) in itertools.product(graded, repeat=2):
            cases += 1
            if not _block_ok(V, a, mu) or not _block_ok(V, a @ b, mu + eta):
                fails += 1
    return fails, cases


def test_criterion_7_property_suites():
    parts = {
        "decomposition": (_decomposition_suite(), None),
        "positivity": (_positivity_suite(), None),
        "sum-closure": (_sum_closure_suite(), None),
        "injectivity": _injectivity_suite(),
        "commutant-weights": _commutant_weight_suite(),
        "additivity": _additivity_suite(),
    }
    failed = {k: v[0] for k, v in parts.items() if v[0]}
    record(7, not failed, "suites " + ", ".join(parts) + (f"; failures {failed}" if failed else ": all exhaustive, 0 failures"))


# 8 ---------------------------------------------------------------------------


def _closure_suite():
    fails = 0
    for key in (("A", 2), ("B", 2), ("G", 2)):
        rs = build_root_system(*key)
        closed = [T.mask for T in all_closed(rs)]
        n = len(rs.roots)
        full = (1 << n) - 1
        for m in range(1 << n):
            c = mask_closure(rs, m)
            brute = full
            for t in closed:
                if m & ~t == 0:
                    brute &= t
            if c != brute or mask_closure(rs, c) != c:
                fails += 1
            for k in range(n):
                if c & ~mask_closure(rs, m | 1 << k):
                    fails += 1
    return fails


def _equivariance_suite():
    fails = 0
    for T in all_closed(A2):
        ref = classify(A2, T, SL3_SET, verify=False)
        for w in weyl_elements(A2):
            v = classify(A2, ClosedSubset(A2, apply_weyl_mask(w, T.mask)), SL3_SET, verify=False)
            if v.classification != ref.classification or v.per_lambda != ref.per_lambda:
                fails += 1
    return fails


def test_criterion_8_infrastructure():
    adj = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 2), ("C", 3), ("C", 4),
           ("D", 4), ("F", 4), ("G", 2)]
    jacobi = sum(len(commutation_defects(adjoint_module(build_root_system(*k)))) for k in adj)
    modules = [typeA_module(A2, lam) for lam in SL3_SET]
    modules += [typeA_module(A3, lam) for lam in list(default_lambda_set(3)) + [(1, 0, 1)]]
    fidelity = sum(len(commutation_defects(V)) for V in modules)
    closure_fails = _closure_suite()
    equiv = _equivariance_suite()
    ok = not (jacobi or fidelity or closure_fails or equiv)
    record(8, ok, f"Jacobi on {len(adj)} adjoint modules ({jacobi} defects), fidelity on {len(modules)} modules "
                  f"({fidelity}), closure at rank 2 ({closure_fails}), Weyl equivariance on A2 ({equiv})")


if __name__ == "__main__":
    import sys

    rc = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                rc = 1
    sys.exit(rc)
