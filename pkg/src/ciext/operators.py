"""Eisenbud operators t_1..t_c on a resolution over A = Q/(f), extracted from lifts to Q.

Indexing: ``t_j^{(i)}: F_{i+2} -> F_i`` is defined by
``d~_{i+1} d~_{i+2} = sum_j f_j t~_j^{(i)}`` over Q, then reduced modulo (f).
"""

from .groebner import Elimination, QuotientRing, poly_to_vec
from .linalg import solve
from .modules import Matrix, reduce_vec
from .poly import Polynomial


class CohomOperators:
    """Lifted differentials and the operator matrices ``ops[j][i] = t_j^{(i)}``."""

    def __init__(self, resolution, lifts, lifted_ops, ops):
        self.resolution = resolution
        self.lifts = lifts
        self.lifted_ops = lifted_ops
        self.ops = ops

    @property
    def c(self):
        return len(self.ops)

    @property
    def verified_to(self):
        return len(self.ops[0]) - 1 if self.ops else -1

    def t(self, j, i):
        """``t_j^{(i)}: F_{i+2} -> F_i`` (0-based operator index ``j``)."""
        return self.ops[j][i]

    def to_dict(self):
        out = []
        for j, fam in enumerate(self.ops):
            for i, m in enumerate(fam):
                out.append({"operator": j + 1, "source": i + 2, "target": i, "rows": m.to_lists()})
        return {"operators": out}


def lift_resolution(res):
    """Entrywise lifts of the differentials to Q: the normal form modulo (f), as Q-matrices."""
    Q = QuotientRing(res.ring.base)
    lifts = []
    for m in res.differentials:
        cols = [reduce_vec(res.ring, c) for c in m.columns]
        lifts.append(Matrix(Q, m.nrows, cols, m.row_degrees, m.col_degrees))
    return lifts


def _divide_by_sequence(ring, modulus, entries):
    """Coefficients (one list per f_j) with ``entry == sum_j c_j f_j`` exactly over Q."""
    Q = QuotientRing(ring.base)
    gens = [poly_to_vec(f) for f in modulus]
    elim = Elimination(Q, 1, (0,), gens)
    out = []
    for p in entries:
        if p.is_zero():
            out.append([ring.base.zero()] * len(modulus))
            continue
        c = elim.lift(poly_to_vec(p))
        if c is None:
            raise ArithmeticError(f"entry {p} does not lie in (f): lifted differentials are invalid")
        polys = [dict() for _ in modulus]
        for (pos, e), a in c.items():
            polys[pos][e] = a
        coeffs = [Polynomial(ring.base, t) for t in polys]
        out.append(coeffs)
    return out


def eisenbud_operators(res, lifts=None):
    """Solve ``d~_{i+1} d~_{i+2} = sum_j f_j t~_j^{(i)}`` entrywise and reduce into A."""
    ring = res.ring
    if lifts is None:
        lifts = lift_resolution(res)
    c = ring.codim
    base = ring.base
    n = len(lifts)
    lifted_ops = [[] for _ in range(c)]
    ops = [[] for _ in range(c)]
    for i in range(n - 1):
        prod = lifts[i] @ lifts[i + 1]
        rows = prod.rows()
        nr, nc = prod.nrows, prod.ncols
        flat = [rows[r][k] for r in range(nr) for k in range(nc)]
        coeffs = _divide_by_sequence(ring, ring.modulus, flat)
        # degree of t_j: entries shift by -deg f_j
        for j in range(c):
            entries = [[coeffs[r * nc + k][j] for k in range(nc)] for r in range(nr)]
            col_deg = tuple(d - ring.modulus[j].degree() for d in prod.col_degrees)
            tq = Matrix.from_rows(QuotientRing(base), entries, prod.row_degrees, col_deg) if nr else \
                Matrix(QuotientRing(base), 0, [{} for _ in range(nc)], (), col_deg)
            lifted_ops[j].append(tq)
            ops[j].append(Matrix(ring, nr, [reduce_vec(ring, col) for col in tq.columns],
                                 prod.row_degrees, col_deg))
    return CohomOperators(res, lifts, lifted_ops, ops)


def check_lift_identity(ops):
    """True if d~_{i+1} d~_{i+2} == sum_j f_j t~_j^{(i)} exactly over Q for every i."""
    ring = ops.resolution.ring
    lifts = ops.lifts
    for i in range(len(lifts) - 1):
        lhs = lifts[i] @ lifts[i + 1]
        rhs = None
        for j, f in enumerate(ring.modulus):
            term = ops.lifted_ops[j][i].scale(f)
            rhs = term if rhs is None else rhs + term
        if rhs is None:
            if not lhs.is_zero():
                return False
            continue
        if lhs.columns != rhs.columns:
            return False
    return True


def verify_chain_map(ops, i_bound):
    """Chain-map defects ``d_{i+1} t^{(i+1)} - t^{(i)} d_{i+3}`` over A for i <= i_bound.

    Returns a report dict; ``defects`` lists ``(j, i)`` pairs with a nonzero defect.
    """
    res = ops.resolution
    defects = []
    checked = []
    for j in range(ops.c):
        fam = ops.ops[j]
        for i in range(0, i_bound + 1):
            if i + 1 >= len(fam) or i + 3 > res.length:
                break
            lhs = res.d(i + 1) @ fam[i + 1]
            rhs = fam[i] @ res.d(i + 3)
            diff = (lhs - rhs).reduced()
            checked.append((j, i))
            if not diff.is_zero():
                defects.append((j, i))
    return {"checked": checked, "defects": defects, "ok": not defects}


def _homogeneous_basis(ring, d):
    return ring.standard_monomials(d)


def verify_commute_homotopy(ops, j, jp, i_bound):
    """Solve ``t_j t_j' - t_j' t_j = d h + h d`` for a homotopy h in the window i <= i_bound.

    ``h^{(i)}: F_{i+3} -> F_i``; the equations at index i read
    ``K^{(i)} = d_{i+1} h^{(i+1)} + h^{(i)} d_{i+4}`` with
    ``K^{(i)} = t_j^{(i)} t_j'^{(i+2)} - t_j'^{(i)} t_j^{(i+2)}``.
    Solved per internal degree by linear algebra over the field.
    """
    res = ops.resolution
    ring = res.ring
    field = ring.field
    base = ring.base
    if j == jp or ops.c < 2:
        return {"solvable": True, "homotopy": {}, "trivial": True, "commutator_zero": True}
    if i_bound + 4 > res.length or i_bound + 2 >= len(ops.ops[j]):
        raise ValueError("window exceeds computed resolution")

    def comm(i):
        a = ops.t(j, i) @ ops.t(jp, i + 2)
        b = ops.t(jp, i) @ ops.t(j, i + 2)
        return (a - b).reduced()

    K = {i: comm(i) for i in range(i_bound + 1)}
    shift = ring.modulus[j].degree() + ring.modulus[jp].degree()
    # unknowns: entries of h^{(i)} for i = 0..i_bound+1
    unknowns = []
    index = {}
    for i in range(i_bound + 2):
        tgt = res.degrees[i] if i < len(res.degrees) else ()
        src = res.degrees[i + 3] if i + 3 < len(res.degrees) else ()
        for r, a in enumerate(tgt):
            for c, b in enumerate(src):
                deg = b - a - shift
                for mono in _homogeneous_basis(ring, deg):
                    index[(i, r, c, mono)] = len(unknowns)
                    unknowns.append((i, r, c, mono))
    # equations keyed by (i, r, c, monomial) -> {unknown: coeff}, plus constant from K
    eqs = {}

    def add_term(key, u, coeff):
        row = eqs.setdefault(key, {})
        s = field.add(row.get(u, field.zero), coeff)
        if s:
            row[u] = s
        else:
            row.pop(u, None)

    rhs = {}
    for i, Km in K.items():
        for c, col in enumerate(Km.columns):
            for (r, e), a in col.items():
                rhs[(i, r, c, e)] = a
                eqs.setdefault((i, r, c, e), {})
    for (i, r, c, mono), u in index.items():
        mono_poly = Polynomial(base, {mono: field.one})
        # contribution to equation i-1 through d_i h^{(i)}: (d_i h)[r', c] += d_i[r', r] * mono
        if i >= 1:
            d = res.d(i)
            for rp in range(d.nrows):
                entry = d.entry(rp, r)
                if entry.is_zero():
                    continue
                val = ring.reduce(entry * mono_poly)
                for e, a in val.terms.items():
                    add_term((i - 1, rp, c, e), u, a)
        # contribution to equation i through h^{(i)} d_{i+4}: (h d)[r, c'] += mono * d_{i+4}[c, c']
        if i <= i_bound and i + 4 <= res.length:
            d = res.d(i + 4)
            for cp in range(d.ncols):
                entry = d.entry(c, cp)
                if entry.is_zero():
                    continue
                val = ring.reduce(entry * mono_poly)
                for e, a in val.terms.items():
                    add_term((i, r, cp, e), u, a)
    keys = [k for k in eqs if k[0] <= i_bound]
    keys.sort(key=lambda k: (k[0], k[1], k[2], base.key(k[3])))
    rows = [[eqs[k].get(u, field.zero) for u in range(len(unknowns))] for k in keys]
    b = [rhs.get(k, field.zero) for k in keys]
    x = solve(rows, b, field, len(unknowns)) if keys else []
    if x is None:
        return {"solvable": False, "homotopy": None, "commutator_zero": all(m.is_zero() for m in K.values())}
    homotopy = {}
    for u, val in enumerate(x):
        if not val:
            continue
        i, r, c, mono = unknowns[u]
        homotopy.setdefault(i, {}).setdefault((r, c), {})[mono] = val
    h = {}
    for i in range(i_bound + 2):
        tgt = res.degrees[i] if i < len(res.degrees) else ()
        src = res.degrees[i + 3] if i + 3 < len(res.degrees) else ()
        cols = []
        for c in range(len(src)):
            col = {}
            for r in range(len(tgt)):
                for mono, val in homotopy.get(i, {}).get((r, c), {}).items():
                    col[(r, mono)] = val
            cols.append(col)
        h[i] = Matrix(ring, len(tgt), cols, tgt, tuple(s - shift for s in src))
    # independent confirmation of the solved identity
    for i in range(i_bound + 1):
        lhs = K[i]
        rhs = (res.d(i + 1) @ h[i + 1]) if i + 1 in h else None
        hd = h[i] @ res.d(i + 4)
        total = hd if rhs is None else rhs + hd
        if (lhs - total).reduced().columns != [{} for _ in lhs.columns]:
            return {"solvable": False, "homotopy": None, "commutator_zero": False}
    return {"solvable": True, "homotopy": h,
            "commutator_zero": all(m.is_zero() for m in K.values()), "unknowns": len(unknowns),
            "equations": len(keys)}


def perturb_lifts(res, lifts, scalar=1):
    """Alternative lifts: add ``scalar * f_1 * x_1^k`` to every entry of degree ``k + deg f_1``.

    The perturbed lifts reduce to the same differentials modulo (f) and stay homogeneous.
    """
    ring = res.ring
    f = ring.modulus[0]
    base = ring.base
    out = []
    for m in lifts:
        rows = m.rows()
        new_rows = []
        for row in rows:
            new_row = []
            for e in row:
                k = e.degree() - f.degree()
                if not e.is_zero() and k >= 0:
                    e = e + (f * base.gen(base.variables[0]) ** k).scale(scalar)
                new_row.append(e)
            new_rows.append(new_row)
        out.append(Matrix.from_rows(m.ring, new_rows, m.row_degrees, m.col_degrees) if rows else m)
    return out
