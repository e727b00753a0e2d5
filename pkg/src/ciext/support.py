"""Complexity and support varieties: C(U,V) = Ext_A(U,V) ⊗ k over T = k[t_1..t_c].

T is graded here with deg t_j = 1 and C is split by parity of the cohomological
degree i, the piece C_i sitting in T-degree floor(i/2).  This is the usual
grading with deg t_j = 2, halved.
"""

import csv
import io

from .asymptotics import _difference_degree
from .ext import family_ext_table
from .family import build_family
from .groebner import QuotientRing
from .ideals import Ideal
from .linalg import nullspace, rref
from .modules import Module, annihilator
from .operators import eisenbud_operators
from .poly import PolyRing
from .resolution import resolve


def operator_ring(field, c):
    return QuotientRing(PolyRing(field, [f"t{j + 1}" for j in range(c)]))


class SupportVarietyData:
    """C(U,V) through cohomological degree ``i_max`` with its invariants."""

    def __init__(self, T, mu, t_mats, parts, ann, vdim, cx, generator_degrees):
        self.T = T
        self.mu_sequence = mu
        self.t_mats = t_mats
        self.parts = parts
        self.annihilator = ann
        self.vdim = vdim
        self.cx_estimate = cx
        self.generator_degrees = generator_degrees

    def summary(self):
        return {"mu": self.mu_sequence, "ann": str(self.annihilator) if self.annihilator is not None else None,
                "vdim": self.vdim, "cx": self.cx_estimate, "generator_degrees": self.generator_degrees}


def _const(p):
    return p.constant_term()


def _mod_m(table, j, i):
    """Matrix over k (rows = mu_{i+2}) of t_j: Ext^i ⊗ k -> Ext^{i+2} ⊗ k."""
    m = table.map_matrix("t", j, i, 0)
    field = table.ring.field
    rows = m.rows()
    return [[field(_const(e)) if not e.is_zero() else field.zero for e in row] for row in rows] \
        if m.nrows else []


def _apply(mat, v, field):
    if not mat:
        return []
    return [sum_field(field, [field.mul(a, b) for a, b in zip(row, v)]) for row in mat]


def sum_field(field, xs):
    s = field.zero
    for x in xs:
        s = field.add(s, x)
    return s


def _monomials(c, d):
    if c == 0:
        return [()] if d == 0 else []
    if c == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in _monomials(c - 1, d - a):
            out.append((a,) + rest)
    return out


def _t_apply(t_mats, alpha, i, v, field):
    """Apply t^alpha to v in C_i (t_1 first, then t_2, ...); None when the image is zero."""
    for j, a in enumerate(alpha):
        for _ in range(a):
            m = t_mats[j].get(i)
            i += 2
            if not m:
                return i, None
            v = _apply(m, v, field)
    return i, v


def _build_part(T, mu, t_mats, parity, i_max, field):
    """Graded T-module presentation of the parity part of C, exact in degrees <= i_max."""
    c = len(t_mats)
    gens = []      # (cohomological degree, basis vector)
    rels = []
    degs = [i for i in range(parity, i_max + 1, 2)]
    for i in degs:
        n = mu[i]
        # images of existing generators under monomials landing in C_i
        cols = []
        labels = []
        for g, (ig, vec) in enumerate(gens):
            d = (i - ig) // 2
            for alpha in _monomials(c, d):
                _, img = _t_apply(t_mats, alpha, ig, vec, field)
                cols.append(img if img else [field.zero] * n)
                labels.append((g, alpha))
        # kernel of the span map gives relations in T-degree (i - parity)//2
        if cols:
            rows = [[cols[k][r] for k in range(len(cols))] for r in range(n)]
            for kv in nullspace(rows, field, len(cols)):
                v = {}
                for k, a in enumerate(kv):
                    if a:
                        g, alpha = labels[k]
                        v[(g, alpha)] = a
                if v:
                    rels.append(v)
            span = rref(cols, field, n)[0] if n else []
        else:
            span = []
        # new generators complete the span to a basis of C_i
        basis = [list(r) for r in span]
        for r in range(n):
            e = [field.zero] * n
            e[r] = field.one
            if len(rref(basis + [e], field, n)[1]) > len(basis):
                basis.append(e)
                gens.append((i, e))
    degrees = tuple((ig - parity) // 2 for ig, _ in gens)
    M = Module(T, degrees, [{(g, T.base.zero_exp): field.one} for g in range(len(gens))], rels)
    return M, [ig for ig, _ in gens]


def total_ext_mod_k(U, V, i_max, res=None, ops=None, jobs=1):
    """C(U,V) = ⊕_i Ext^i(U,V) ⊗ k with the induced action of t_1..t_c."""
    ring = U.ring
    c = ring.codim
    if res is None:
        res = resolve(U, i_max + 1)
    if ops is None and c and res.length >= 2:
        ops = eisenbud_operators(res)
    fam = build_family(None, V, "constant", 0)
    table = family_ext_table(U, fam, i_max, res=res, ops=ops, jobs=jobs, verify=False)
    field = ring.field
    mu = [table.cells[(i, 0)].mu for i in range(i_max + 1)]
    t_mats = []
    for j in range(c):
        mats = {}
        for i in range(i_max - 1):
            if mu[i] and mu[i + 2]:
                mats[i] = _mod_m(table, j, i) if ops is not None else None
        t_mats.append(mats)
    if c == 0:
        cx = complexity(mu)
        return SupportVarietyData(None, mu, t_mats, [], None, 0 if any(mu) else -1, cx,
                                  [i for i in range(i_max + 1) if mu[i]])
    T = operator_ring(field, c)
    parts, gdeg = [], []
    for parity in (0, 1):
        P, gd = _build_part(T, mu, t_mats, parity, i_max, field)
        parts.append(P)
        gdeg.extend(gd)
    ann = annihilator_T(parts)
    vdim = ann.krull_dim()
    try:
        cx = complexity(mu)
    except ValueError:
        cx = None
    return SupportVarietyData(T, mu, t_mats, parts, ann, vdim, cx, sorted(gdeg))


def annihilator_T(C):
    """ann_T of a T-module, or the intersection over the parity parts."""
    parts = C.parts if hasattr(C, "parts") else (C if isinstance(C, (list, tuple)) else [C])
    T = parts[0].ring
    out = Ideal.unit(T)
    for P in parts:
        if P.ngens == 0:
            continue
        out = out.intersect(annihilator(P))
    if not all(g.is_homogeneous() for g in out.gens):
        raise AssertionError("annihilator of C is not homogeneous")
    return out


def complexity(mu, window=None):
    """1 + max degree of the even and odd interpolants of mu on the window; 0 if eventually zero."""
    n = len(mu)
    if window is None:
        # the top of the sequence, at least three points per parity
        window = range(max(0, n - max(6, n // 2)), n)
    idx = list(window)
    even = [mu[i] for i in idx if i % 2 == 0]
    odd = [mu[i] for i in idx if i % 2 == 1]
    degs = []
    for seq in (even, odd):
        if not seq:
            continue
        d = _difference_degree(seq)
        if d is None:
            raise ValueError("window too short or not polynomial")
        degs.append(d)
    if not degs or max(degs) < 0:
        return 0
    return 1 + max(degs)


def _ideal_power_family(I, N, j_max):
    return build_family(I, N, "ideal-power-module", j_max)


def _per_j(M, family, i_max, jobs=1):
    res = resolve(M, i_max + 1)
    ops = eisenbud_operators(res) if M.ring.codim and res.length >= 2 else None
    rows = []
    for j in range(family.n_max + 1):
        V = family.presentation(j)
        data = total_ext_mod_k(M, V, i_max, res=res, ops=ops, jobs=jobs)
        rows.append({"j": j, "cx": data.cx_estimate, "vdim": data.vdim, "ann": data.annihilator,
                     "mu": data.mu_sequence})
    return rows


def cx_stability_report(M, I, N, j_max, i_max, jobs=1):
    """cx and ann_T C(M, I^j N) for j <= j_max with the observed onset of ann stability."""
    if I.is_unit():
        fam = build_family(None, N, "constant", j_max)
    else:
        fam = _ideal_power_family(I, N, j_max)
    rows = _per_j(M, fam, i_max, jobs)
    onset = len(rows) - 1
    last = rows[-1]["ann"]
    while onset > 0 and _same(rows[onset - 1]["ann"], last):
        onset -= 1
    return {"rows": rows, "onset": onset, "empirical": True}


def _same(a, b):
    if a is None or b is None:
        return a is b
    return a == b


def open_question_table(M, I, N, j_max, i_max, jobs=1):
    """EXPLORATORY: cx of N / I^j N for j <= j_max, no stabilization claim."""
    fam = build_family(I, N, "quotient-family", j_max)
    rows = _per_j(M, fam, i_max, jobs)
    return {"label": "EXPLORATORY", "rows": rows}


def report_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "cx", "vdim", "ann"])
    for r in rows:
        w.writerow([r["j"], r["cx"], r["vdim"], str(r["ann"]) if r["ann"] is not None else ""])
    return buf.getvalue()


def report_text(report, title):
    lines = [title]
    if report.get("label"):
        lines.append(report["label"])
    for r in report["rows"]:
        lines.append(f"j={r['j']}  cx={r['cx']}  vdim={r['vdim']}  ann={r['ann']}")
    if "onset" in report:
        lines.append(f"observed onset j0={report['onset']} (empirical)")
    return "\n".join(lines) + "\n"
