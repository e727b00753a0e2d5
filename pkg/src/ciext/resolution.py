"""Minimal graded free resolutions over Q (finite) and over A = Q/(f) (truncated)."""

import json

from .groebner import Elimination, buchberger, minimal_subset, syzygies, vec_degree
from .hilbert import HilbertSeries
from .modules import Matrix, Module, reduce_vec


class FreeResolution:
    """``F_i = A^{betti[i]}`` with generator degrees ``degrees[i]``; ``d[i]: F_i -> F_{i-1}``.

    ``differentials[0]`` is ``d_1``.  ``projdim`` is set when the resolution is
    known to stop (kernel zero); otherwise the resolution is truncated at
    ``truncated_at``.
    """

    def __init__(self, ring, module, degrees, differentials, degree_cap=None,
                 projdim=None, minimal=True, truncated=False):
        self.ring = ring
        self.module = module
        self.degrees = [tuple(d) for d in degrees]
        self.differentials = differentials
        self.degree_cap = degree_cap
        self.projdim = projdim
        self.minimal = minimal
        # True when a degree cap actually cut off part of some syzygy computation
        self.truncated = truncated

    @property
    def length(self):
        return len(self.differentials)

    @property
    def truncated_at(self):
        return self.length

    def betti(self):
        return [len(d) for d in self.degrees]

    def rank(self, i):
        if i < 0 or i >= len(self.degrees):
            return 0
        return len(self.degrees[i])

    def d(self, i):
        """``d_i: F_i -> F_{i-1}``; zero matrices outside the computed range."""
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        src = self.degrees[i] if 0 <= i < len(self.degrees) else ()
        tgt = self.degrees[i - 1] if 0 <= i - 1 < len(self.degrees) else ()
        return Matrix(self.ring, len(tgt), [{} for _ in src], tgt, src)

    def graded_betti(self):
        out = []
        for degs in self.degrees:
            table = {}
            for a in degs:
                table[a] = table.get(a, 0) + 1
            out.append(dict(sorted(table.items())))
        return out

    def to_dict(self):
        return {
            "ring": repr(self.ring),
            "betti": self.betti(),
            "degrees": [list(d) for d in self.degrees],
            "degree_cap": self.degree_cap,
            "projdim": self.projdim,
            "minimal": self.minimal,
            "truncated": self.truncated,
            "differentials": [
                {"index": i + 1, "source_degrees": list(m.col_degrees),
                 "target_degrees": list(m.row_degrees), "rows": m.to_lists()}
                for i, m in enumerate(self.differentials)
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def resolve(M, i_max, degree_cap=None):
    """Minimal graded free resolution of the Module ``M`` through ``F_{i_max}``."""
    if i_max < 0:
        raise ValueError("i_max must be >= 0")
    ring = M.ring
    cap = degree_cap if degree_cap is not None else M.degree_cap
    P = M.presentation()
    if P.rank == 0:
        return FreeResolution(ring, M, [()], [], cap, projdim=-1)
    degrees = [P.degrees]
    diffs = []
    projdim = None
    truncated = False
    if i_max >= 1:
        cols = list(P.rels)
        col_deg = [vec_degree(c, P.degrees) for c in cols]
        if not cols:
            projdim = 0
        else:
            order = sorted(range(len(cols)), key=lambda k: (col_deg[k], k))
            cols = [cols[k] for k in order]
            degrees.append(tuple(col_deg[k] for k in order))
            diffs.append(Matrix(ring, P.rank, cols, P.degrees, degrees[-1]))
    elif not P.rels:
        projdim = 0
    while projdim is None and len(diffs) < i_max:
        prev = diffs[-1]
        src = degrees[-1]
        elim = Elimination(ring, prev.nrows, prev.row_degrees, prev.columns, degree_cap=cap)
        truncated = truncated or elim.gb.truncated
        syz = elim.syzygies()
        syz = [v for v in (reduce_vec(ring, s) for s in syz) if v]
        keep = minimal_subset(syz, len(src), ring, src, degree_cap=cap)
        if not keep:
            projdim = len(diffs)
            break
        syz = [syz[k] for k in keep]
        sd = [vec_degree(v, src) for v in syz]
        order = sorted(range(len(syz)), key=lambda k: (sd[k], k))
        cols = [syz[k] for k in order]
        degrees.append(tuple(sd[k] for k in order))
        diffs.append(Matrix(ring, len(src), cols, src, degrees[-1]))
    if projdim is None and not ring.modulus and len(diffs) == i_max:
        # over Q the next kernel may already vanish
        prev = diffs[-1]
        syz = syzygies(prev.columns, prev.nrows, ring, prev.row_degrees, degree_cap=cap)
        if not any(reduce_vec(ring, s) for s in syz):
            projdim = len(diffs)
    return FreeResolution(ring, M, degrees, diffs, cap, projdim=projdim, truncated=truncated)


def check_complex(res):
    """Indices i with d_i ∘ d_{i+1} != 0 (empty list means a complex)."""
    bad = []
    for i in range(1, res.length):
        if not (res.d(i) @ res.d(i + 1)).is_zero():
            bad.append(i)
    return bad


def exactness_certificate(res, i):
    """True if ker d_i == im d_{i+1} (reduced Groebner bases compared), 1 <= i < length."""
    ring = res.ring
    src = res.degrees[i]
    di = res.d(i)
    ker = syzygies(di.columns, di.nrows, ring, di.row_degrees, degree_cap=res.degree_cap)
    gk = buchberger(ker, len(src), ring, src, res.degree_cap)
    gi = buchberger(res.d(i + 1).columns, len(src), ring, src, res.degree_cap)
    return gk == gi


def euler_characteristic(res):
    """Alternating sum of the Hilbert series of the free modules F_i."""
    m = res.ring.nvars
    free = Module.free(res.ring, (0,)).hilbert_series()
    total = HilbertSeries.zero(m)
    for i, degs in enumerate(res.degrees):
        for a in degs:
            term = free.shift(a)
            total = total + term if i % 2 == 0 else total - term
    return total


def minimize(res):
    """Cancel unit entries (lexicographically first first) until the resolution is minimal."""
    ring = res.ring
    field = ring.field
    mats = [[list(r) for r in m.rows()] for m in res.differentials]
    degrees = [list(d) for d in res.degrees]
    while True:
        hit = None
        for i, m in enumerate(mats):
            for r, row in enumerate(m):
                for c, e in enumerate(row):
                    if not e.is_zero() and e.degree() == 0:
                        hit = (i, r, c)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        i, r, c = hit
        m = mats[i]
        lam = m[r][c].constant_term()
        inv = field.inv(lam)
        new = []
        for rr, row in enumerate(m):
            if rr == r:
                continue
            factor = row[c]
            new.append([ring.reduce(row[cc] - (factor * m[r][cc]).scale(inv))
                        for cc in range(len(row)) if cc != c])
        mats[i] = new
        # d_{i+2} (next matrix) loses row c; d_i (previous) loses column r
        if i + 1 < len(mats):
            mats[i + 1] = [row for rr, row in enumerate(mats[i + 1]) if rr != c]
        if i - 1 >= 0:
            mats[i - 1] = [[e for cc, e in enumerate(row) if cc != r] for row in mats[i - 1]]
        del degrees[i + 1][c]
        del degrees[i][r]
    while len(mats) and not degrees[-1]:
        mats.pop()
        degrees.pop()
    diffs = []
    for i, m in enumerate(mats):
        tgt, src = degrees[i], degrees[i + 1]
        diffs.append(Matrix.from_rows(ring, m, tgt, src) if m else
                     Matrix(ring, len(tgt), [{} for _ in src], tgt, src))
    projdim = res.projdim
    if projdim is not None:
        projdim = len(diffs) if degrees[0] else -1
    if not degrees[0]:
        degrees, diffs = [()], []
    return FreeResolution(ring, res.module, degrees, diffs, res.degree_cap, projdim, minimal=True,
                          truncated=res.truncated)


def detect_periodicity(res):
    """Smallest onset s with d_{i+2} == d_i for all computed i >= s (hypersurfaces only).

    Returns ``{"onset": s, "period": 2}``, ``None`` when no periodicity shows in
    the computed range, or ``{"unsupported": True}`` when codim != 1.
    """
    if res.ring.codim != 1:
        return {"unsupported": True}
    n = res.length
    if n < 3:
        return None

    def same(i, j):
        a, b = res.d(i), res.d(j)
        if (a.nrows, a.ncols) != (b.nrows, b.ncols) or a.columns != b.columns:
            return False
        shift = {y - x for x, y in zip(a.row_degrees + a.col_degrees, b.row_degrees + b.col_degrees)}
        return len(shift) <= 1

    onset = None
    for s in range(n - 2, 0, -1):
        if same(s, s + 2):
            onset = s
        else:
            break
    if onset is None:
        return None
    return {"onset": onset, "period": 2}
