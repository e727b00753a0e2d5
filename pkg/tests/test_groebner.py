import random

from hypothesis import given, settings, strategies as st

from ciext import Field, PolyRing, QuotientRing, buchberger
from ciext.groebner import Elimination, minimal_subset, poly_to_vec, spair_reductions, syzygies, vec_entry
from ciext.hilbert import quotient_series

from oracles import hilbert_function, in_ideal

R = PolyRing(Field(101), ["x", "y", "z"])
Q = QuotientRing(R)


def gb_of(polys):
    return buchberger([poly_to_vec(R.parse(p)) for p in polys], 1, Q, (0,))


def test_known_basis():
    A = PolyRing(Field(0), ["x", "y"])
    gb = buchberger([poly_to_vec(A.parse("x^2 - y")), poly_to_vec(A.parse("y^2"))], 1,
                    QuotientRing(A), (0,))
    assert gb.truncated is False
    # x^2 - y is not homogeneous; reduced basis still computed
    leads = sorted(gb.leads)
    assert leads


def test_spair_reductions_vanish():
    gb = gb_of(["x^2 - y*z", "x*y - z^2", "y^3 - x*z^2"])
    assert all(not r for _, r in spair_reductions(gb))


def random_forms(rng, d, k):
    from oracles import monomials
    out = []
    for _ in range(k):
        p = R.zero()
        for m in rng.sample(monomials(3, d), 3):
            p = p + R.monomial(m, rng.randrange(1, 101))
        out.append(p)
    return out


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_membership_matches_linear_algebra(seed):
    rng = random.Random(seed)
    gens = random_forms(rng, 2, 2) + random_forms(rng, 3, 1)
    gb = buchberger([poly_to_vec(g) for g in gens], 1, Q, (0,))
    for d in (3, 4):
        # random element of the ideal and a random form
        f = sum((g * R.monomial((d - g.degree(), 0, 0), rng.randrange(1, 101)) for g in gens
                 if g.degree() <= d), R.zero())
        assert gb.contains(poly_to_vec(f)) == in_ideal(R, gens, f, 101)
        h = random_forms(rng, d, 1)[0]
        assert gb.contains(poly_to_vec(h)) == in_ideal(R, gens, h, 101)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_hilbert_series_matches_brute_force(seed):
    rng = random.Random(seed)
    gens = random_forms(rng, 2, 2)
    gb = buchberger([poly_to_vec(g) for g in gens], 1, Q, (0,))
    hs = quotient_series(gb)
    coeffs = hs.coefficients(0, 5)
    for d in range(6):
        assert coeffs[d] == hilbert_function(R, gens, d, 101)


def test_degree_cap_truncates_and_flags():
    gens = [poly_to_vec(R.parse(p)) for p in ["x^2 - y*z", "x*y - z^2"]]
    full = buchberger(gens, 1, Q, (0,))
    capped = buchberger(gens, 1, Q, (0,), degree_cap=2)
    assert capped.truncated and not full.truncated
    assert all(sum(e) <= 2 for (_, e) in capped.leads)


def test_syzygies_of_koszul_pair():
    x, y = poly_to_vec(R.parse("x")), poly_to_vec(R.parse("y"))
    syz = syzygies([x, y], 1, Q, (0,))
    assert len(syz) == 1
    s = syz[0]
    a, b = vec_entry(s, 0, R), vec_entry(s, 1, R)
    assert (a * R.parse("x") + b * R.parse("y")).is_zero()


def test_elimination_lift():
    gens = [poly_to_vec(R.parse(p)) for p in ["x^2", "y^2"]]
    el = Elimination(Q, 1, (0,), gens)
    w = poly_to_vec(R.parse("x^2*z + 3*y^3"))
    c = el.lift(w)
    a, b = vec_entry(c, 0, R), vec_entry(c, 1, R)
    assert a * R.parse("x^2") + b * R.parse("y^2") == R.parse("x^2*z + 3*y^3")
    assert el.lift(poly_to_vec(R.parse("x*y"))) is None


def test_minimal_subset_drops_redundant():
    vs = [poly_to_vec(R.parse(p)) for p in ["x", "x*y", "y", "x + y"]]
    keep = minimal_subset(vs, 1, Q, (0,))
    assert keep == [0, 2]


def test_quotient_ring_reduction():
    A = QuotientRing(PolyRing(Field(0), ["u", "x"]), ["u*x"])
    assert A.reduce(A.base.parse("u*x^2 + u")) == A.base.parse("u")
    assert len(A.standard_monomials(3)) == 2
