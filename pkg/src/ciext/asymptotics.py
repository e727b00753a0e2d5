"""Asymptotic invariants of Rees families and associated-prime reports for Ext tables."""

import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .groebner import QuotientRing, vec_apply, vec_iadd, vec_shift_positions
from .ideals import Ideal
from .modules import Module, annihilator, module_colon, reduce_vec


# --- annihilators, spread -----------------------------------------------------------

def stable_annihilator(family):
    """``(L, onset, stabilized)``: the last computed annihilator and where it became constant."""
    anns = [p.module.annihilator() if p.presentation.rank else Ideal.unit(family.ring)
            for p in family.pieces]
    onset = len(anns) - 1
    while onset > 0 and anns[onset - 1] == anns[-1]:
        onset -= 1
    stabilized = onset < len(anns) - 1
    return anns[-1], onset, stabilized


def limdim(family):
    L, _, _ = stable_annihilator(family)
    return L.krull_dim()


def _difference_degree(values):
    """Smallest d with vanishing (d+1)-st forward differences, -1 if all zero, None if undetermined."""
    vals = [Fraction(v) for v in values]
    if not any(vals):
        return -1
    diffs = vals
    for d in range(len(vals)):
        nxt = [b - a for a, b in zip(diffs, diffs[1:])]
        if not nxt:
            return None
        if not any(nxt):
            return d
        diffs = nxt
    return None


def analytic_spread(family, tail=None):
    """Growth of n ↦ μ(N_n) (= dim_k N_n/𝔪N_n) on the top of the window: degree + 1, 0 if eventually 0."""
    mus = [p.presentation.rank for p in family.pieces]
    if tail is None:
        tail = max(2, len(mus) // 2 + 1)
    window = mus[-tail:]
    if not any(window):
        return 0
    d = _difference_degree(window)
    if d is None:
        raise ValueError("window too short to determine the growth of the fiber module")
    return d + 1


# --- filter-regular elements -----------------------------------------------------------

def _word_matrix(family, n, word):
    """Matrix of u_{g_{k_s}} ... u_{g_{k_1}}: N_n -> N_{n+s}."""
    m = None
    for step, k in enumerate(word):
        a = family.actions[n + step][k]
        m = a if m is None else a @ m
    return m


def _multiplication_kernel_zero(family, n, terms):
    """True if the map N_n -> N_{n+s} of sum_c c * word is injective."""
    ring = family.ring
    src = family.presentation(n)
    s = len(terms[0][1])
    tgt = family.presentation(n + s)
    if src.rank == 0:
        return True
    cols = [dict() for _ in range(src.rank)]
    for c, word in terms:
        m = _word_matrix(family, n, word)
        for k, col in enumerate(m.columns):
            vec_iadd(cols[k], col, ring.field, scale=c)
    images = [reduce_vec(ring, c) for c in cols]
    K = src.kernel_of(images, tgt)
    return K.is_zero()


def _describe(family, terms):
    base = family.ring.base
    p = base.zero()
    for c, word in terms:
        q = base.constant(c)
        for k in word:
            q = q * family.rees_gens[k]
        p = p + q
    return family.ring.reduce(p)


def filter_regular_search(family, s_max=2, trials=20, verify_window=2, seed=0):
    """Search a degree-s element u of the Rees algebra with (0 :_N u)_n = 0 on the top window.

    Pure products of the chosen Rees generators are tried first, then seeded random
    combinations.  Returns a report dict; ``found`` is False when trials run out.
    """
    rng = random.Random(seed)
    field = family.ring.field
    mu = family.mu_ideal
    for s in range(1, s_max + 1):
        last = family.n_max - s
        if last < 0:
            break
        words = list(combinations_with_replacement(range(mu), s))
        candidates = [[(field.one, w)] for w in words]
        for _ in range(trials):
            coeffs = [field(rng.randrange(1, 1000)) for _ in words]
            candidates.append([(c, w) for c, w in zip(coeffs, words) if c])
        for terms in candidates:
            if not terms:
                continue
            ok = [_multiplication_kernel_zero(family, n, terms) for n in range(last + 1)]
            top = ok[max(0, last + 1 - verify_window):]
            if all(top):
                onset = last + 1
                while onset > 0 and ok[onset - 1]:
                    onset -= 1
                return {"found": True, "u": str(_describe(family, terms)), "degree": s,
                        "terms": [(field.fmt(c), list(w)) for c, w in terms], "terms_raw": terms,
                        "window": (onset, last), "seed": seed}
    return {"found": False, "u": None, "degree": None, "window": None, "seed": seed}


# --- d-values and theta ---------------------------------------------------------------

def _modules_of(W):
    if hasattr(W, "pieces"):
        return [p.module for p in W.pieces]
    return W if isinstance(W, dict) else list(W)


def d_invariant(W, a, j_range):
    """``d_a(W, j)`` for j in ``j_range``: 0 on a dimension drop, else the multiplicity of W_j."""
    mods = _modules_of(W)
    target = a.krull_dim()
    out = {}
    for j in j_range:
        Wj = mods[j]
        ann = annihilator(Wj)
        if not ann.contains_ideal(a):
            raise ValueError(f"ideal {a} is not contained in ann W_{j} = {ann}")
        h = Wj.hilbert_series()
        out[j] = 0 if h.dim < target else h.multiplicity
    return out


def fit_degree(values, bound=None):
    """Degree of the unique polynomial through consecutive values; -1 for identically zero."""
    d = _difference_degree(values)
    if d is None:
        raise ValueError("non-polynomial window: values do not fit a polynomial of verifiable degree")
    if bound is not None and d > bound:
        raise ValueError(f"non-polynomial window: fitted degree {d} exceeds bound {bound}")
    return d


def theta(a, W, j_window, mu_bound=None):
    """θ(a, W): degree of j ↦ d_a(W, j) on the window (exact forward differences)."""
    if mu_bound is None and hasattr(W, "mu_ideal"):
        mu_bound = W.mu_ideal
    js = list(j_window)
    if mu_bound is not None and len(js) <= mu_bound:
        raise ValueError(f"window of length {len(js)} must exceed mu(I) = {mu_bound}")
    d = d_invariant(W, a, js)
    bound = mu_bound - 1 if mu_bound is not None else None
    return fit_degree([d[j] for j in js], bound)


def filter_quotient_modules(family, terms_or_report, j_range):
    """W_j / u W_{j-s} inside the ambient of each piece (for the θ-drop property)."""
    terms = terms_or_report["terms_raw"] if isinstance(terms_or_report, dict) else terms_or_report
    s = len(terms[0][1])
    ring = family.ring
    out = {}
    for j in j_range:
        Wj = family.pieces[j].module
        if j < s:
            out[j] = Wj
            continue
        src = family.pieces[j - s].gens_module
        extra = []
        for y in src.gens:
            v = {}
            for c, word in terms:
                g = ring.base.constant(c)
                for k in word:
                    g = g * family.rees_gens[k]
                g = ring.reduce(g)
                for e, cc in g.terms.items():
                    vec_iadd(v, y, ring.field, scale=cc, shift=e)
            v = reduce_vec(ring, v)
            if v:
                extra.append(v)
        out[j] = Module(ring, Wj.degrees, Wj.gens, Wj.rels + extra, Wj.degree_cap)
    return out


# --- primes --------------------------------------------------------------------------

class PrimeIdeal:
    """A prime of A with the method that certified it."""

    METHODS = ("monomial-split", "binomial-split", "user-asserted")

    def __init__(self, ideal, method):
        if method not in self.METHODS:
            raise ValueError(f"unknown certificate {method!r}")
        self.ideal = ideal
        self.method = method

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal.key())

    def __str__(self):
        return str(self.ideal)

    def __repr__(self):
        return f"PrimeIdeal{self.ideal} [{self.method}]"

    def key(self):
        return self.ideal.key()


def _linear_prime(ring, forms):
    """Certify that linear forms (containing f in Q) generate a prime of A."""
    base = ring.base
    Q = QuotientRing(base)
    lin = Ideal(Q, forms)
    if not all(f.degree() == 1 and f.is_homogeneous() for f in forms):
        return None
    if not all(lin.contains(f) for f in ring.modulus):
        return None
    method = "monomial-split" if all(len(f.terms) == 1 for f in forms) else "binomial-split"
    return PrimeIdeal(Ideal(ring, forms), method)


def certify_prime(ideal, asserted=False):
    """PrimeIdeal for an ideal generated by linear forms, or user-asserted."""
    if asserted:
        return PrimeIdeal(ideal, "user-asserted")
    gens = ideal.reduced_gb() if ideal.gens else []
    forms = [g for g in gens]
    if not ideal.gens:
        # the zero ideal is prime only when A is a domain; not certifiable here
        raise ValueError("cannot certify primality of the zero ideal")
    p = _linear_prime(ideal.ring, list(forms))
    if p is None:
        raise ValueError(f"cannot certify {ideal} as prime (supply it as user-asserted)")
    return p


def _linear_factors(g):
    """Linear factors of a monomial or a monomial times a linear binomial, else None."""
    base = g.ring
    terms = list(g.terms.items())
    if len(terms) == 1:
        e, _ = terms[0]
        return [base.monomial(tuple(1 if k == i else 0 for k in range(len(e))))
                for i, x in enumerate(e) if x]
    if len(terms) != 2:
        return None
    (e1, c1), (e2, c2) = terms
    common = tuple(min(a, b) for a, b in zip(e1, e2))
    r1 = tuple(a - b for a, b in zip(e1, common))
    r2 = tuple(a - b for a, b in zip(e2, common))
    if sum(r1) != 1 or sum(r2) != 1:
        return None
    factors = [base.monomial(tuple(1 if k == i else 0 for k in range(len(common))))
               for i, x in enumerate(common) if x]
    factors.append(base.monomial(r1, c1) + base.monomial(r2, c2))
    return factors


def minimal_primes(J):
    """Minimal primes of J when J + (f) splits into linear factors; None when unsupported."""
    ring = J.ring
    base = ring.base
    Q = QuotientRing(base)
    if J.is_unit():
        return []
    gens = list(J.reduced_gb()) + list(ring.modulus)
    factored = []
    for g in gens:
        fs = _linear_factors(g)
        if fs is None:
            return None
        factored.append((g, fs))
    found = []

    def branch(forms, k):
        I = Ideal(Q, forms)
        while k < len(factored) and I.contains(factored[k][0]):
            k += 1
        if k == len(factored):
            found.append(tuple(forms))
            return
        for fac in factored[k][1]:
            branch(forms + [fac], k + 1)

    branch([], 0)
    ideals = []
    for forms in found:
        I = Ideal(Q, list(forms))
        if not any(I == x for x in ideals):
            ideals.append(I)
    minimal = [I for I in ideals if not any(o != I and I.contains_ideal(o) for o in ideals)]
    out = []
    for I in minimal:
        p = _linear_prime(ring, list(I.reduced_gb()))
        if p is not None:
            out.append(p)
    return sorted(set(out), key=lambda p: p.key())


def coordinate_primes(ring, max_vars=8):
    """Primes generated by subsets of the variables that contain (f)."""
    base = ring.base
    n = base.nvars if hasattr(base, "nvars") else len(base.variables)
    if n > max_vars:
        return []
    out = []
    gens = base.gens()
    for r in range(1, n + 1):
        for sub in combinations(range(n), r):
            p = _linear_prime(ring, [gens[k] for k in sub])
            if p is not None:
                out.append(p)
    return out


def is_associated(E, prime):
    """Criterion: p in Ass(E) iff ann(0 :_E p) == p."""
    C = module_colon(E, prime.ideal)
    if C.is_zero():
        return False
    return annihilator(C) == prime.ideal


def associated_primes(E, candidates=()):
    """Associated primes of E among candidates extended by minimal primes of ann(E) and coordinate primes."""
    for p in candidates:
        if not isinstance(p, PrimeIdeal):
            raise ValueError(f"candidate {p} is not a certified prime")
    if E.ngens == 0 or E.is_zero():
        return []
    pool = list(candidates)
    mins = minimal_primes(annihilator(E))
    if mins:
        pool.extend(mins)
    pool.extend(coordinate_primes(E.ring))
    seen, out = set(), []
    for p in pool:
        if p.key() in seen:
            continue
        seen.add(p.key())
        if is_associated(E, p):
            out.append(p)
    return sorted(out, key=lambda p: p.key())


def _fmt_set(primes):
    return sorted(str(p) for p in primes)


def ass_stability_report(table, candidates=()):
    """Ass per cell and the smallest observed stable corner for even and odd rows (empirical)."""
    ass = {}
    for key in sorted(table.cells):
        ass[key] = tuple(_fmt_set(associated_primes(table.cells[key].module, candidates)))
    union = sorted({p for s in ass.values() for p in s})
    best = None
    for i0 in range(table.i_max):
        for n0 in range(table.n_max + 1):
            even = {ass[(i, n)] for (i, n) in ass if i >= i0 and n >= n0 and i % 2 == 0}
            odd = {ass[(i, n)] for (i, n) in ass if i >= i0 and n >= n0 and i % 2 == 1}
            if len(even) <= 1 and len(odd) <= 1:
                cand = (i0 + n0, i0, n0, even, odd)
                if best is None or cand[:3] < best[:3]:
                    best = cand
    report = {"cells": {f"{i},{n}": list(v) for (i, n), v in ass.items()}, "union": union,
              "empirical": True}
    if best is None:
        report.update({"i0": None, "n0": None, "even": None, "odd": None})
    else:
        _, i0, n0, even, odd = best
        report.update({"i0": i0, "n0": n0,
                       "even": list(next(iter(even))) if even else [],
                       "odd": list(next(iter(odd))) if odd else []})
    return report


# --- injectivity of the joint S_1 maps ----------------------------------------------------

def _joint_map_injective(table, i, n, l):
    ring = table.ring
    src = table.cells[(i, n)].module
    if src.ngens == 0:
        return True
    tgt = table.cells[(i + 2, n + l)].module
    c = table.ops.c if table.ops is not None else 0
    words = list(combinations_with_replacement(range(table.family.mu_ideal), l))
    blocks = []
    for j in range(c):
        t_imgs = table.t_map(j, i, n)
        for word in words:
            imgs = t_imgs
            for step, k in enumerate(word):
                cols = table.u_columns(k, i + 2, n + step)
                imgs = [reduce_vec(ring, _apply_cols(ring, v, cols)) for v in imgs]
            blocks.append(imgs)
    if not blocks:
        return False
    r = tgt.rank
    nb = len(blocks)
    degrees = tgt.degrees * nb
    rels = [vec_shift_positions(v, b * r) for b in range(nb) for v in tgt.rels]
    images = []
    for k in range(src.ngens):
        v = {}
        for b in range(nb):
            v.update(vec_shift_positions(blocks[b][k], b * r))
        images.append(v)
    target = Module(ring, degrees, [], rels)
    K = src.kernel_of(images, target)
    return K.is_zero()


def _apply_cols(ring, v, cols):
    return vec_apply(v, cols, ring.field)


def p_stable_injectivity(table, l=1):
    """Smallest corner (i0, n0) beyond which z ↦ (u^l t_j z) is injective on every checkable cell."""
    status = {}
    for (i, n) in sorted(table.cells):
        if i + 2 <= table.i_max and n + l <= table.n_max:
            status[(i, n)] = _joint_map_injective(table, i, n, l)
    best = None
    for i0 in range(table.i_max - 1):
        for n0 in range(table.n_max - l + 1):
            if all(ok for (i, n), ok in status.items() if i >= i0 and n >= n0):
                cand = (i0 + n0, i0, n0)
                if best is None or cand < best:
                    best = cand
    failures = sorted(k for k, ok in status.items() if not ok)
    return {"onset": None if best is None else (best[1], best[2]), "failures": failures,
            "checked": len(status), "l": l}
