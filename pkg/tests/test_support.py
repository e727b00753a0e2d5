import pytest

from ciext import Ideal, Module
from ciext.support import (
    annihilator_T, complexity, cx_stability_report, open_question_table, operator_ring, report_csv,
    total_ext_mod_k,
)


def test_complexity_sequences():
    assert complexity([1] * 9) == 1
    assert complexity([n + 1 for n in range(9)]) == 2
    assert complexity([3, 2, 0, 0, 0, 0, 0, 0, 0]) == 0
    assert complexity([1, 0] * 5) == 1
    with pytest.raises(ValueError):
        complexity([1, 2, 4, 8, 16, 32, 64], window=range(3, 7))


def test_c_over_hypersurface(hyp_ring):
    k = Module.quotient_ring(Ideal.maximal(hyp_ring))
    d = total_ext_mod_k(k, k, 8)
    assert d.mu_sequence == [1] * 9
    assert d.annihilator.is_zero() and d.vdim == 1 == d.cx_estimate


def test_c_over_ci(ci_k):
    d = total_ext_mod_k(ci_k, ci_k, 8)
    assert d.mu_sequence == [n + 1 for n in range(9)]
    assert d.annihilator.is_zero()
    assert d.vdim == 2 == d.cx_estimate
    # even part: 2m+1 in T-degree m, odd part: 2m+2
    even, odd = d.parts
    assert even.hilbert_series().coefficients(0, 3) == [1, 3, 5, 7]
    assert odd.hilbert_series().coefficients(0, 3) == [2, 4, 6, 8]


def test_c_example(ex_module):
    d = total_ext_mod_k(ex_module, ex_module, 8)
    assert d.annihilator.is_zero() and d.vdim == 1 == d.cx_estimate


def test_c_free_module(ex_ring, ex_module):
    d = total_ext_mod_k(Module.free(ex_ring, (0,)), ex_module, 6)
    assert d.mu_sequence == [1, 0, 0, 0, 0, 0, 0]
    assert d.cx_estimate == 0 and d.vdim == 0
    assert str(d.annihilator) == "(t1)"


def test_annihilator_T_direct(ex_ring):
    T = operator_ring(ex_ring.field, 2)
    C = Module.quotient_ring(Ideal(T, ["t1"]))
    assert str(annihilator_T(C)) == "(t1)"
    assert annihilator_T(Module.free(T, (0,))).is_zero()


def test_mu_sequence_matches_ext(ci_k):
    from ciext.ext import ext
    d = total_ext_mod_k(ci_k, ci_k, 5)
    assert d.mu_sequence == [c.mu for c in ext(ci_k, ci_k, 5)]


def test_cx_stability(ex_ring, ex_module):
    rep = cx_stability_report(ex_module, Ideal(ex_ring, ["x"]), Module.free(ex_ring, (0,)), 4, 8)
    rows = rep["rows"]
    assert [r["cx"] for r in rows[1:]] == [1] * 4
    assert rep["onset"] == 1
    assert all(r["vdim"] == r["cx"] for r in rows)
    assert "j,cx,vdim,ann" in report_csv(rows)


def test_cx_constant_and_free(ex_ring, ex_module):
    rep = cx_stability_report(ex_module, Ideal.unit(ex_ring), ex_module, 2, 6)
    assert rep["onset"] == 0
    rep = cx_stability_report(Module.free(ex_ring, (0,)), Ideal(ex_ring, ["x"]), ex_module, 2, 6)
    assert all(r["cx"] == 0 for r in rep["rows"]) and rep["onset"] == 0


def test_open_question_is_exploratory(ex_ring, ex_module):
    rep = open_question_table(ex_module, Ideal(ex_ring, ["x"]), Module.free(ex_ring, (0,)), 3, 6)
    assert rep["label"] == "EXPLORATORY"
    assert len(rep["rows"]) == 4


def test_open_question_nilpotent_image(hyp_ring):
    # I = (x) with x^2 = 0: I^j N = 0 for j >= 2, so N / I^j N = N eventually
    k = Module.quotient_ring(Ideal.maximal(hyp_ring))
    A = Module.free(hyp_ring, (0,))
    rep = open_question_table(k, Ideal(hyp_ring, ["x"]), A, 3, 6)
    direct = total_ext_mod_k(k, A, 6).cx_estimate
    assert [r["cx"] for r in rep["rows"][2:]] == [direct, direct]
