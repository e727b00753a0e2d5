"""Groebner bases for submodules of graded free modules over Q and A = Q/(f).

Module elements are plain dicts ``{(position, exponent): coefficient}``.  The
module order is position-over-term: a smaller position index is larger, and
ties are broken by the ring's monomial order.  Working over A appends the
multiples ``f_j * e_p`` to every input, so one engine serves both rings.
"""

import heapq
from functools import cached_property

from .poly import Polynomial


class QuotientRing:
    """A = Q/(f) for a graded polynomial ring Q and homogeneous f (possibly empty)."""

    def __init__(self, base, modulus=()):
        self.base = base
        self.field = base.field
        mod = []
        for f in modulus:
            f = base(f)
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise ValueError(f"modulus element {f} is not homogeneous")
            mod.append(f)
        self.modulus = tuple(mod)

    def __eq__(self, other):
        return (isinstance(other, QuotientRing) and self.base == other.base
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.base, self.modulus))

    def __repr__(self):
        if not self.modulus:
            return repr(self.base)
        return f"{self.base!r}/({', '.join(map(str, self.modulus))})"

    def __getstate__(self):
        return {"base": self.base, "modulus": self.modulus}

    def __setstate__(self, state):
        self.__init__(state["base"], state["modulus"])

    @property
    def codim(self):
        return len(self.modulus)

    @property
    def nvars(self):
        return self.base.nvars

    def __call__(self, value):
        return self.reduce(self.base(value))

    @cached_property
    def modulus_gb(self):
        gens = [{(0, e): c for e, c in f.terms.items()} for f in self.modulus]
        return buchberger(gens, 1, QuotientRing(self.base), (0,))

    def reduce(self, p):
        """Normal form of a polynomial modulo (f)."""
        if not self.modulus or p.is_zero():
            return p
        v = self.modulus_gb.reduce({(0, e): c for e, c in p.terms.items()})
        return Polynomial(self.base, {e: c for (_, e), c in v.items()})

    def standard_monomials(self, d):
        """Exponents of degree ``d`` not in the initial ideal of (f)."""
        if d < 0:
            return []
        leads = [e for (_, e) in self.modulus_gb.leads] if self.modulus else []
        out = []
        for e in _exponents(self.nvars, d):
            if not any(_divides(l, e) for l in leads):
                out.append(e)
        out.sort(key=self.base.key, reverse=True)
        return out


def _exponents(n, d):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _exponents(n - 1, d - a):
            yield (a,) + rest


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


# --- sparse vector helpers -------------------------------------------------

def poly_to_vec(p, pos=0):
    return {(pos, e): c for e, c in p.terms.items()}


def polys_to_vec(polys):
    v = {}
    for pos, p in enumerate(polys):
        for e, c in p.terms.items():
            v[(pos, e)] = c
    return v


def vec_to_polys(v, rank, base):
    out = [dict() for _ in range(rank)]
    for (pos, e), c in v.items():
        out[pos][e] = c
    return [Polynomial(base, t) for t in out]


def vec_entry(v, pos, base):
    return Polynomial(base, {e: c for (p, e), c in v.items() if p == pos})


def vec_degree(v, degrees):
    """Degree of a homogeneous vector; None if zero or inhomogeneous."""
    degs = {sum(e) + degrees[p] for (p, e) in v}
    return degs.pop() if len(degs) == 1 else None


def vec_is_homogeneous(v, degrees):
    return len({sum(e) + degrees[p] for (p, e) in v}) <= 1


def vec_add(a, b, field, scale=None):
    """Return ``a + scale*b`` (new dict)."""
    out = dict(a)
    vec_iadd(out, b, field, scale)
    return out


def vec_iadd(out, b, field, scale=None, shift=None, pos_offset=0):
    """In place ``out += scale * x^shift * b`` with positions moved by ``pos_offset``."""
    P = field.p
    zero = field.zero
    for (pos, e), c in b.items():
        if shift is not None:
            e = tuple(x + y for x, y in zip(e, shift))
        if scale is not None:
            c = c * scale % P if P else c * scale
        t = (pos + pos_offset, e)
        s = out.get(t, zero) + c
        if P:
            s %= P
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def vec_scale(v, c, field):
    if not c:
        return {}
    P = field.p
    if P:
        return {t: a * c % P for t, a in v.items()}
    return {t: a * c for t, a in v.items()}


def vec_mul_poly(v, p, field):
    """``p * v`` for a polynomial ``p``."""
    out = {}
    for e, c in p.terms.items():
        vec_iadd(out, v, field, scale=c, shift=e)
    return out


def vec_shift_positions(v, offset):
    return {(pos + offset, e): c for (pos, e), c in v.items()}


def vec_lincomb(coeffs, vectors, field):
    """``sum_k coeffs[k] * vectors[k]`` with polynomial coefficients."""
    out = {}
    for p, v in zip(coeffs, vectors):
        for e, c in p.terms.items():
            vec_iadd(out, v, field, scale=c, shift=e)
    return out


def vec_apply(v, columns, field):
    """Apply the matrix with the given columns to ``v`` (``v[pos]`` scales ``columns[pos]``)."""
    out = {}
    for (pos, e), c in v.items():
        vec_iadd(out, columns[pos], field, scale=c, shift=e)
    return out


def vec_str(v, rank, base):
    return "(" + ", ".join(str(p) for p in vec_to_polys(v, rank, base)) + ")"


# --- Groebner bases ---------------------------------------------------------

class GroebnerBasis:
    """Reduced Groebner basis of a submodule of ``A^rank`` (modulus included)."""

    def __init__(self, ring, rank, degrees, elements, degree_cap=None, truncated=False):
        self.ring = ring
        self.rank = rank
        self.degrees = tuple(degrees)
        self.elements = elements
        self.degree_cap = degree_cap
        self.truncated = truncated
        key = ring.base.key
        self._tkey = lambda t: (-t[0], key(t[1]))
        self.leads = [max(g, key=self._tkey) for g in elements]
        self._by_pos = {}
        for g, (pos, e) in zip(elements, self.leads):
            self._by_pos.setdefault(pos, []).append((e, g))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def reduce(self, v, full=True):
        """Normal form of ``v``; divisors are tried in basis order."""
        return _reduce(dict(v), self._by_pos, self._tkey, self.ring.field, full)

    def contains(self, v):
        return not self.reduce(v, full=False)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.rank == other.rank and len(self.elements) == len(other.elements)
                and all(a == b for a, b in zip(self.elements, other.elements)))

    def lead_monomials(self, pos):
        return [e for (p, e) in self.leads if p == pos]

    def elements_as_polys(self):
        return [vec_to_polys(g, self.rank, self.ring.base) for g in self.elements]


def _reduce(r, by_pos, tkey, field, full):
    P = field.p
    out = {}
    while r:
        t = max(r, key=tkey)
        c = r[t]
        pos, e = t
        for le, g in by_pos.get(pos, ()):
            if all(a <= b for a, b in zip(le, e)):
                shift = tuple(b - a for a, b in zip(le, e))
                neg = (-c) % P if P else -c
                vec_iadd(r, g, field, scale=neg, shift=shift)
                break
        else:
            if not full:
                out[t] = c
                out.update(r)
                return out
            out[t] = r.pop(t)
    return out


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def buchberger(gens, rank, ring, degrees=None, degree_cap=None):
    """Reduced Groebner basis of the submodule of ``A^rank`` generated by ``gens``.

    With ``degree_cap`` the basis is exact in degrees <= cap (homogeneous input).
    """
    field = ring.field
    P = field.p
    key = ring.base.key
    degrees = tuple(degrees) if degrees is not None else (0,) * rank

    def tkey(t):
        return (-t[0], key(t[1]))

    def tdeg(t):
        return sum(t[1]) + degrees[t[0]]

    inputs = [dict(g) for g in gens if g]
    for f in ring.modulus:
        for pos in range(rank):
            inputs.append(poly_to_vec(f, pos))

    queue = []
    counter = 0
    for v in inputs:
        lt = max(v, key=tkey)
        heapq.heappush(queue, (tdeg(lt), counter, "gen", v))
        counter += 1

    G, leads, by_pos = [], [], {}
    pending = set()
    truncated = False

    def add(v):
        nonlocal counter
        lt = max(v, key=tkey)
        inv = field.inv(v[lt])
        v = vec_scale(v, inv, field)
        idx = len(G)
        pos, e = lt
        for j, (pj, ej) in enumerate(leads):
            if pj != pos:
                continue
            if rank == 1 and not ring.modulus and all(min(a, b) == 0 for a, b in zip(e, ej)):
                continue
            l = _lcm(e, ej)
            heapq.heappush(queue, (sum(l) + degrees[pos], counter, "pair", (j, idx)))
            pending.add((j, idx))
            counter += 1
        G.append(v)
        leads.append(lt)
        by_pos.setdefault(pos, []).append((e, v))

    while queue:
        deg, _, kind, item = heapq.heappop(queue)
        if degree_cap is not None and deg > degree_cap:
            truncated = True
            break
        if kind == "gen":
            h = _reduce(item, by_pos, tkey, field, full=False)
            if h:
                add(h)
            continue
        i, j = item
        pending.discard((i, j))
        pos, ei = leads[i]
        ej = leads[j][1]
        l = _lcm(ei, ej)
        # Buchberger's chain criterion
        skip = False
        for k, (pk, ek) in enumerate(leads):
            if k in (i, j) or pk != pos or not _divides(ek, l):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        s = {}
        vec_iadd(s, G[i], field, shift=tuple(x - y for x, y in zip(l, ei)))
        vec_iadd(s, G[j], field, scale=(P - 1) if P else -1, shift=tuple(x - y for x, y in zip(l, ej)))
        h = _reduce(s, by_pos, tkey, field, full=False)
        if h:
            add(h)

    # minimalize and interreduce
    order = sorted(range(len(G)), key=lambda k: tkey(leads[k]))
    keep = []
    for k in order:
        pos, e = leads[k]
        if any(leads[m][0] == pos and _divides(leads[m][1], e) for m in keep):
            continue
        keep.append(k)
    basis = [G[k] for k in keep]
    reduced = []
    for idx, g in enumerate(basis):
        others = {}
        for m, h in enumerate(basis):
            if m != idx:
                lt = max(h, key=tkey)
                others.setdefault(lt[0], []).append((lt[1], h))
        lt = max(g, key=tkey)
        tail = dict(g)
        lc = tail.pop(lt)
        tail = _reduce(tail, others, tkey, field, full=True)
        tail[lt] = lc
        reduced.append(vec_scale(tail, field.inv(lc), field))
    reduced.sort(key=lambda g: tkey(max(g, key=tkey)))
    return GroebnerBasis(ring, rank, degrees, reduced, degree_cap, truncated)


def normal_form(v, gb):
    if isinstance(v, Polynomial):
        v = poly_to_vec(v)
    return gb.reduce(v)


def spair_reductions(gb):
    """Remainders of all same-position S-vectors of ``gb`` (all zero for a GB)."""
    field = gb.ring.field
    P = field.p
    out = []
    els = gb.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            (pi, ei), (pj, ej) = gb.leads[i], gb.leads[j]
            if pi != pj:
                continue
            l = _lcm(ei, ej)
            s = {}
            vec_iadd(s, els[i], field, shift=tuple(x - y for x, y in zip(l, ei)))
            vec_iadd(s, els[j], field, scale=(P - 1) if P else -1,
                     shift=tuple(x - y for x, y in zip(l, ej)))
            out.append(((i, j), gb.reduce(s)))
    return out


# --- syzygies and lifting via an elimination basis ---------------------------

class Elimination:
    """Groebner basis of ``[gens | rels]`` stacked over ``[identity | 0]``.

    Positions ``0..rank-1`` carry the vectors and dominate the order;
    positions ``rank..rank+n-1`` record coefficients on ``gens``.  Elements with
    a vanishing first block are syzygies of ``gens`` modulo ``rels``, and the
    normal form of ``(w, 0)`` exposes an expression of ``w`` in ``gens``.
    """

    def __init__(self, ring, rank, degrees, gens, rels=(), degree_cap=None, gen_degrees=None):
        self.ring = ring
        self.rank = rank
        self.n = len(gens)
        degrees = tuple(degrees)
        if gen_degrees is None:
            gen_degrees = []
            for g in gens:
                d = vec_degree(g, degrees)
                gen_degrees.append(0 if d is None else d)
        self.gen_degrees = tuple(gen_degrees)
        aug = []
        for k, g in enumerate(gens):
            v = dict(g)
            v[(rank + k, ring.base.zero_exp)] = ring.field.one
            aug.append(v)
        aug.extend(dict(r) for r in rels if r)
        self.gb = buchberger(aug, rank + self.n, ring, degrees + self.gen_degrees, degree_cap)

    def syzygies(self):
        out = []
        for g, (pos, _) in zip(self.gb.elements, self.gb.leads):
            if pos >= self.rank:
                out.append(vec_shift_positions(g, -self.rank))
        return out

    def lift(self, w):
        """Coefficient vector ``c`` with ``sum c_k gens_k = w`` mod rels, or None."""
        r = self.gb.reduce(w)
        if any(pos < self.rank for (pos, _) in r):
            return None
        neg = vec_scale(r, (self.ring.field.p - 1) if self.ring.field.p else -1, self.ring.field)
        return vec_shift_positions(neg, -self.rank)


def syzygies(gens, rank, ring, degrees=None, rels=(), degree_cap=None):
    """Generators of ``{a : sum a_k gens_k in rels}`` over ``ring`` (as vectors in A^len(gens))."""
    degrees = tuple(degrees) if degrees is not None else (0,) * rank
    if not gens:
        return []
    return Elimination(ring, rank, degrees, gens, rels, degree_cap).syzygies()


def minimal_subset(vectors, rank, ring, degrees, rels=(), degree_cap=None):
    """Indices of a minimal generating subset of ``vectors`` modulo ``rels``.

    Vectors are processed by increasing degree (graded Nakayama), ties by input order.
    """
    degs = []
    for v in vectors:
        d = vec_degree(v, degrees)
        degs.append(d if d is not None else 0)
    order = sorted(range(len(vectors)), key=lambda k: (degs[k], k))
    kept = []
    current = [r for r in rels if r]
    gb = buchberger(current, rank, ring, degrees, degree_cap) if current or ring.modulus else None
    for k in order:
        v = vectors[k]
        if not v:
            continue
        if gb is not None and gb.contains(v):
            continue
        kept.append(k)
        current.append(v)
        gb = buchberger(current, rank, ring, degrees, degree_cap)
    return sorted(kept)
