"""Homogeneous ideals of A = Q/(f): powers, colons, intersections, dimension."""

from functools import cached_property
from itertools import combinations_with_replacement

from .groebner import (
    Elimination, buchberger, minimal_subset, poly_to_vec, vec_entry,
)
from .hilbert import quotient_series


class Ideal:
    """Ideal of ``ring`` (a QuotientRing) given by generators reduced modulo (f)."""

    def __init__(self, ring, gens):
        self.ring = ring
        polys = []
        for g in gens:
            g = ring.reduce(ring.base(g))
            if not g.is_zero():
                polys.append(g)
        self.gens = tuple(polys)

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.base.one()])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def maximal(cls, ring):
        """The irrelevant maximal ideal generated by the variables."""
        return cls(ring, ring.base.gens())

    def __getstate__(self):
        return {"ring": self.ring, "gens": self.gens}

    def __setstate__(self, state):
        self.ring = state["ring"]
        self.gens = state["gens"]

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    @cached_property
    def gb(self):
        return buchberger([poly_to_vec(g) for g in self.gens], 1, self.ring, (0,))

    def reduced_gb(self):
        """Reduced GB elements that are nonzero in A, as polynomials."""
        out = []
        for g in self.gb.elements:
            p = vec_entry(g, 0, self.ring.base)
            if not self.ring.reduce(p).is_zero():
                out.append(p)
        return out

    def contains(self, p):
        p = self.ring.base(p)
        return self.gb.contains(poly_to_vec(p))

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def equals(self, other):
        return self.gb == other.gb

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.equals(other)

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return tuple(str(p) for p in self.reduced_gb())

    def is_unit(self):
        return self.contains(self.ring.base.one())

    def is_zero(self):
        return not self.gens

    def __add__(self, other):
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def mingens(self):
        """A minimal homogeneous generating set (greedy by degree)."""
        vecs = [poly_to_vec(g) for g in self.gens]
        keep = minimal_subset(vecs, 1, self.ring, (0,))
        return [self.gens[k] for k in keep]

    @property
    def mu(self):
        return len(self.mingens())

    def minimalized(self):
        return Ideal(self.ring, self.mingens())

    def power(self, n):
        return ideal_power(self, n)

    def colon(self, other):
        """``(self : other) = {a : a*other ⊆ self}``."""
        result = Ideal.unit(self.ring)
        for g in other.gens:
            result = result.intersect(self.colon_element(g))
        return result

    def colon_element(self, g):
        rels = [poly_to_vec(h) for h in self.gens]
        syz = Elimination(self.ring, 1, (0,), [poly_to_vec(g)], rels).syzygies()
        return Ideal(self.ring, [vec_entry(s, 0, self.ring.base) for s in syz])

    def intersect(self, other):
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        # a in I ∩ J  iff  (a, a) lies in I x J inside A^2
        z, one = self.ring.base.zero_exp, self.ring.field.one
        gen = {(0, z): one, (1, z): one}
        rels = [poly_to_vec(h, 0) for h in self.gens] + [poly_to_vec(h, 1) for h in other.gens]
        syz = Elimination(self.ring, 2, (0, 0), [gen], rels).syzygies()
        return Ideal(self.ring, [vec_entry(s, 0, self.ring.base) for s in syz])

    def hilbert_series(self):
        """Hilbert series of A/I."""
        return quotient_series(self.gb)

    def krull_dim(self):
        return self.hilbert_series().dim

    def __str__(self):
        gens = self.reduced_gb()
        if not gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def ideal_power(I, n):
    """I^n with a minimal generating set; I^0 is the unit ideal."""
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return Ideal.unit(I.ring)
    gens = I.mingens()
    prods = []
    for combo in combinations_with_replacement(range(len(gens)), n):
        p = I.ring.base.one()
        for k in combo:
            p = p * gens[k]
        prods.append(p)
    return Ideal(I.ring, prods).minimalized()


def krull_dim(J):
    """Krull dimension of A/J; -1 for the unit ideal."""
    return J.krull_dim()


def is_regular_sequence(base, seq):
    """Hilbert-series test: HS(Q/(f)) == HS(Q) * prod(1 - z^deg f_j)."""
    from .groebner import QuotientRing
    from .hilbert import HilbertSeries

    Q = QuotientRing(base)
    polys = [base(f) for f in seq]
    for f in polys:
        if f.is_zero() or not f.is_homogeneous():
            return False
    lhs = Ideal(Q, polys).hilbert_series()
    rhs = HilbertSeries({0: 1}, base.nvars)
    for f in polys:
        rhs = rhs.times_poly({0: 1, f.degree(): -1})
    return lhs == rhs

