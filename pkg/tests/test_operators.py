import pytest

from ciext import Field, Ideal, Matrix, Module, PolyRing, QuotientRing, resolve
from ciext.ext import family_ext_table
from ciext.family import build_family
from ciext.operators import (
    CohomOperators, check_lift_identity, eisenbud_operators, perturb_lifts, verify_chain_map,
    verify_commute_homotopy,
)


def test_example_operator_is_identity(ex_module):
    res = resolve(ex_module, 8)
    ops = eisenbud_operators(res)
    assert ops.c == 1
    assert check_lift_identity(ops)
    assert verify_chain_map(ops, 5)["ok"]
    for i in range(5):
        assert [[str(e) for e in r] for r in ops.t(0, i).rows()] == [["1"]]


def test_ci_operators(ci_k):
    res = resolve(ci_k, 10)
    ops = eisenbud_operators(res)
    assert check_lift_identity(ops)
    assert verify_chain_map(ops, 6)["ok"]
    t1, t2 = ops.t(0, 0), ops.t(1, 0)
    r1 = [str(e) for e in t1.rows()[0]]
    r2 = [str(e) for e in t2.rows()[0]]
    # each operator picks out one of the two degree-2 syzygies x^2 e, y^2 e of F_2
    assert sorted(r1) == ["0", "0", "1"] and sorted(r2) == ["0", "0", "1"]
    assert r1.index("1") != r2.index("1")


def test_commutator_homotopy(ci_k):
    res = resolve(ci_k, 10)
    ops = eisenbud_operators(res)
    rep = verify_commute_homotopy(ops, 0, 1, 6)
    assert rep["solvable"]
    # internal degrees force h = 0, so the commutator must already vanish
    assert rep["commutator_zero"]


def test_commutator_homotopy_nontrivial_window():
    # Q[x,y]/(x^2, y^3): k has a non-linear resolution; homotopy entries have room
    A = QuotientRing(PolyRing(Field(0), ["x", "y"]), ["x^2", "y^3"])
    k = Module.quotient_ring(Ideal.maximal(A))
    res = resolve(k, 8)
    ops = eisenbud_operators(res)
    assert check_lift_identity(ops)
    assert verify_chain_map(ops, 4)["ok"]
    rep = verify_commute_homotopy(ops, 0, 1, 3)
    assert rep["solvable"]


def test_homotopy_window_guard(ci_k):
    ops = eisenbud_operators(resolve(ci_k, 4))
    with pytest.raises(ValueError):
        verify_commute_homotopy(ops, 0, 1, 3)


def test_fault_injection_detected(ci_k):
    res = resolve(ci_k, 8)
    ops = eisenbud_operators(res)
    bad = ops.t(0, 2)
    rows = bad.rows()
    rows[0][0] = rows[0][0] + res.ring.base.parse("x")
    broken = Matrix.from_rows(res.ring, rows, bad.row_degrees, bad.col_degrees)
    fam = [list(f) for f in ops.ops]
    fam[0][2] = broken
    tampered = CohomOperators(res, ops.lifts, ops.lifted_ops, fam)
    rep = verify_chain_map(tampered, 5)
    assert not rep["ok"]
    assert (0, 1) in rep["defects"] or (0, 2) in rep["defects"]


def test_lift_independence_on_homology():
    # entries of degree >= deg f are needed for a homogeneous perturbation
    A = QuotientRing(PolyRing(Field(0), ["x", "y"]), ["x^2"])
    M = Module.quotient_ring(Ideal(A, ["x*y"]))
    res = resolve(M, 7)
    ops = eisenbud_operators(res)
    alt_lifts = perturb_lifts(res, ops.lifts)
    assert any(a.columns != b.columns for a, b in zip(alt_lifts, ops.lifts))
    alt = eisenbud_operators(res, alt_lifts)
    assert check_lift_identity(alt)
    assert verify_chain_map(alt, 3)["ok"]
    fam = build_family(None, M, "constant", 0)
    T1 = family_ext_table(M, fam, 5, res=res, ops=ops)
    T2 = family_ext_table(M, fam, 5, res=res, ops=alt)
    for i in range(4):
        a = T1.map_matrix("t", 0, i, 0)
        b = T2.map_matrix("t", 0, i, 0)
        tgt = T1.cells[(i + 2, 0)].module
        # equal as maps on homology: images agree modulo the target cell's relations
        for va, vb in zip(T1.t_map(0, i, 0), T2.t_map(0, i, 0)):
            diff = dict(va)
            for key, c in vb.items():
                s = diff.get(key, 0) - c
                if s:
                    diff[key] = s
                else:
                    diff.pop(key, None)
            assert not diff or tgt.is_zero_element(diff)
        assert a.nrows == b.nrows


def test_operator_export(ex_module):
    ops = eisenbud_operators(resolve(ex_module, 4))
    d = ops.to_dict()
    assert d["operators"][0]["source"] == 2 and d["operators"][0]["target"] == 0
