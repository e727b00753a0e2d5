"""Ext^i_A(M, L) from the Hom complex of a resolution, and bigraded Ext tables of Rees families.

A cokernel presentation ``L = A^g / P`` with generator degrees ``b`` turns
``Hom(F_i, L)`` into ``A^{beta_i * g} / (P in every block)``: position
``k*g + l`` stands for ``e_k^* ⊗ y_l`` and has degree ``b_l - a_k``.
"""

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor

from .groebner import minimal_subset, vec_apply, vec_iadd, vec_shift_positions, vec_to_polys
from .modules import Matrix, Module, reduce_vec
from .operators import eisenbud_operators
from .resolution import resolve


class DegreeCapError(RuntimeError):
    """A degree cap cut off part of a computation the requested window depends on."""


# --- Hom complex -------------------------------------------------------------

def hom_degrees(res, L, i):
    a = res.degrees[i] if 0 <= i < len(res.degrees) else ()
    return tuple(b - x for x in a for b in L.degrees)


def hom_relations(res, L, i):
    beta = res.rank(i)
    g = L.rank
    return [vec_shift_positions(r, k * g) for k in range(beta) for r in L.rels]


def pullback_columns(phi, g):
    """Columns of ``psi ↦ psi ∘ phi`` for ``phi: F_s -> F_r`` on Hom(F_r, L) -> Hom(F_s, L)."""
    cols = [dict() for _ in range(phi.nrows * g)]
    for m, col in enumerate(phi.columns):
        for (k, e), c in col.items():
            for l in range(g):
                cols[k * g + l][(m * g + l, e)] = c
    return cols


def pushforward_columns(U, beta):
    """Columns of ``psi ↦ U ∘ psi`` on Hom(F, L) -> Hom(F, L') with ``beta = rank F``."""
    g, gp = U.ncols, U.nrows
    cols = []
    for k in range(beta):
        for l in range(g):
            cols.append({(k * gp + lp, e): c for (lp, e), c in U.columns[l].items()})
    return cols


def _apply(ring, v, cols):
    return reduce_vec(ring, vec_apply(v, cols, ring.field))


def _zero_matrix(ring, rows, cols):
    return Matrix(ring, len(rows), [{} for _ in cols], rows, cols)


def ext_module(res, L, i):
    """Ext^i(M, L) as a pruned subquotient of the Hom(F_i, L) ambient."""
    ring = res.ring
    if res.projdim is None and i + 1 > res.length:
        raise ValueError(f"resolution too short: need d_{i + 1}, have {res.length}")
    if res.truncated:
        raise DegreeCapError("resolution was truncated by its degree cap; raise --degcap")
    g = L.rank
    deg_i = hom_degrees(res, L, i)
    if not deg_i:
        return Module.zero(ring)
    one = ring.field.one
    z = ring.base.zero_exp
    basis = [{(p, z): one} for p in range(len(deg_i))]
    rels_i = hom_relations(res, L, i)
    src = Module(ring, deg_i, basis, rels_i)
    delta = pullback_columns(res.d(i + 1), g)
    images = [reduce_vec(ring, c) for c in delta]
    target = Module(ring, hom_degrees(res, L, i + 1), [], hom_relations(res, L, i + 1))
    Z = src.kernel_of(images, target)
    B = []
    if i >= 1:
        B = [reduce_vec(ring, c) for c in pullback_columns(res.d(i), g)]
    cell = Module(ring, deg_i, Z.gens, rels_i + [b for b in B if b])
    return cell.pruned()


class ExtCell:
    """One computed Ext module with its cached invariants."""

    def __init__(self, i, n, module):
        self.i = i
        self.n = n
        self.module = module
        self.mu = module.ngens
        self.hilbert = module.hilbert_series() if module.rank else None
        self.annihilator = module.annihilator()

    @property
    def is_zero(self):
        return self.mu == 0

    @property
    def dim(self):
        return -1 if self.hilbert is None else self.hilbert.dim

    @property
    def length(self):
        """Length when finite, else None."""
        if self.hilbert is None:
            return 0
        return self.hilbert.length if self.hilbert.dim <= 0 else None

    def summary(self):
        return {"i": self.i, "n": self.n, "mu": self.mu,
                "ann": [str(p) for p in self.annihilator.gens] if not self.annihilator.is_unit() else ["1"],
                "dim": self.dim, "length": self.length,
                "hilbert": str(self.hilbert) if self.hilbert is not None else "0"}


def _cell_task(args):
    res, L, i, n = args
    return ExtCell(i, n, ext_module(res, L, i))


def ext(M, L, i_max, degree_cap=None, res=None):
    """``[Ext^0(M, L), ..., Ext^{i_max}(M, L)]`` as ExtCell objects (n = 0)."""
    if res is None:
        res = resolve(M, i_max + 1, degree_cap)
    P = L if L.is_cokernel() else L.presentation()
    return [_cell_task((res, P, i, 0)) for i in range(i_max + 1)]


# --- bigraded tables ---------------------------------------------------------

def _run(tasks, jobs):
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_cell_task, tasks))
    return [_cell_task(t) for t in tasks]


class ExtTable:
    """cells[(i, n)] = Ext^i(M, N_n); ``t_images`` and ``u_images`` hold generator images."""

    def __init__(self, M, family, res, ops, i_max, n_max, cells):
        self.M = M
        self.family = family
        self.res = res
        self.ops = ops
        self.i_max = i_max
        self.n_max = n_max
        self.cells = cells
        self.t_images = {}
        self.u_images = {}
        self.square_report = None

    @property
    def ring(self):
        return self.res.ring

    def cell(self, i, n):
        return self.cells[(i, n)]

    def mu_grid(self):
        return [[self.cells[(i, n)].mu for n in range(self.n_max + 1)] for i in range(self.i_max + 1)]

    def t_columns(self, j, i, n):
        """Ambient map Hom(F_i, L_n) -> Hom(F_{i+2}, L_n) induced by t_j^{(i)}."""
        ring = self.ring
        L = self.family.presentation(n)
        ops = self.ops.ops[j] if self.ops is not None and j < self.ops.c else []
        t = ops[i] if i < len(ops) else _zero_matrix(
            ring, self.res.degrees[i] if i < len(self.res.degrees) else (),
            self.res.degrees[i + 2] if i + 2 < len(self.res.degrees) else ())
        return pullback_columns(t, L.rank)

    def u_columns(self, k, i, n):
        """Ambient map Hom(F_i, L_n) -> Hom(F_i, L_{n+1}) induced by u_{g_k}."""
        return pushforward_columns(self.family.actions[n][k], self.res.rank(i))

    def t_map(self, j, i, n):
        """Images of the generators of cell(i, n) under t_j, in the ambient of cell(i+2, n)."""
        key = (j, i, n)
        if key not in self.t_images:
            cols = self.t_columns(j, i, n)
            self.t_images[key] = [_apply(self.ring, z, cols) for z in self.cells[(i, n)].module.gens]
        return self.t_images[key]

    def u_map(self, k, i, n):
        key = (k, i, n)
        if key not in self.u_images:
            cols = self.u_columns(k, i, n)
            self.u_images[key] = [_apply(self.ring, z, cols) for z in self.cells[(i, n)].module.gens]
        return self.u_images[key]

    def map_matrix(self, kind, idx, i, n):
        """Induced map as a matrix in the generator coordinates of source and target cells."""
        if kind == "t":
            images, tgt = self.t_map(idx, i, n), self.cells[(i + 2, n)].module
        else:
            images, tgt = self.u_map(idx, i, n), self.cells[(i, n + 1)].module
        cols = []
        for v in images:
            cols.append({} if not tgt.gens or tgt.is_zero_element(v) else reduce_vec(self.ring, tgt.lift(v)))
        return Matrix(self.ring, tgt.ngens, cols, tgt.gen_degrees())

    def verify_squares(self):
        """u_g ∘ t_j == t_j ∘ u_g on every cell, checked modulo the target cell's relations."""
        ring = self.ring
        c = self.ops.c if self.ops is not None else 0
        checked, failures = 0, []
        for i in range(self.i_max - 1):
            for n in range(self.n_max):
                tgt = self.cells[(i + 2, n + 1)].module
                for j in range(c):
                    tc_next = self.t_columns(j, i, n + 1)
                    for k in range(self.family.mu_ideal):
                        uc_up = self.u_columns(k, i + 2, n)
                        ut = [_apply(ring, v, uc_up) for v in self.t_map(j, i, n)]
                        tu = [_apply(ring, v, tc_next) for v in self.u_map(k, i, n)]
                        for a, b in zip(ut, tu):
                            checked += 1
                            diff = dict(a)
                            vec_iadd(diff, b, ring.field, scale=ring.field.neg(ring.field.one))
                            if diff and not tgt.is_zero_element(diff):
                                failures.append((i, n, j, k))
        self.square_report = {"checked": checked, "failures": failures, "ok": not failures}
        return self.square_report

    def stabilization(self):
        """Observed onset per row: first n after which (mu, dim, multiplicity, length) stop changing.

        Empirical within the computed box.
        """
        out = {}
        for i in range(self.i_max + 1):
            sig = []
            for n in range(self.n_max + 1):
                cell = self.cells[(i, n)]
                h = cell.hilbert
                sig.append((cell.mu, cell.dim, h.multiplicity if h is not None else 0, cell.length))
            onset = self.n_max
            while onset > 0 and sig[onset - 1] == sig[self.n_max]:
                onset -= 1
            out[i] = {"onset": onset, "empirical": True}
        return out

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "n", "mu", "ann", "dim", "length"])
        for (i, n) in sorted(self.cells, key=lambda x: (x[1], x[0])):
            s = self.cells[(i, n)].summary()
            w.writerow([i, n, s["mu"], "; ".join(s["ann"]), s["dim"],
                        "" if s["length"] is None else s["length"]])
        return buf.getvalue()

    def to_dict(self):
        maps = []
        c = self.ops.c if self.ops is not None else 0
        for (i, n) in sorted(self.cells):
            if i + 2 <= self.i_max:
                for j in range(c):
                    maps.append({"kind": "t", "index": j + 1, "source": [i, n], "target": [i + 2, n],
                                 "rows": self.map_matrix("t", j, i, n).to_lists()})
            if n + 1 <= self.n_max:
                for k in range(self.family.mu_ideal):
                    maps.append({"kind": "u", "index": k + 1, "source": [i, n], "target": [i, n + 1],
                                 "rows": self.map_matrix("u", k, i, n).to_lists()})
        return {"i_max": self.i_max, "n_max": self.n_max,
                "rees_generators": [str(g) for g in self.family.rees_gens],
                "cells": [self.cells[k].summary() for k in sorted(self.cells)],
                "maps": maps, "squares": self.square_report}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def family_ext_table(M, family, i_max, degree_cap=None, jobs=1, res=None, ops=None, verify=True):
    """All cells Ext^i(M, N_n), 0 <= i <= i_max, 0 <= n <= family.n_max, plus action maps."""
    if res is None:
        res = resolve(M, i_max + 1, degree_cap)
    if ops is None and res.ring.modulus and res.length >= 2:
        ops = eisenbud_operators(res)
    tasks = [(res, family.presentation(n), i, n)
             for n in range(family.n_max + 1) for i in range(i_max + 1)]
    cells = {(c.i, c.n): c for c in _run(tasks, jobs)}
    table = ExtTable(M, family, res, ops, i_max, family.n_max, cells)
    if verify:
        table.verify_squares()
    return table


# --- generation certificates -------------------------------------------------

class GenerationCertificate:
    def __init__(self, box, generators, closure_band, status, swept):
        self.box = box
        self.generators = generators
        self.closure_band_checked = closure_band
        self.status = status
        self.swept = swept

    def generator_bidegrees(self):
        return sorted({b for b, _ in self.generators}, key=lambda x: (x[1], x[0]))

    def to_dict(self):
        return {"box": list(self.box), "generators": [[list(b), k] for b, k in self.generators],
                "closure_band_checked": list(self.closure_band_checked), "status": self.status}


def _new_generators(table, i, n, use_u=True, use_t=True):
    """Indices of generators of cell(i, n) not reached from earlier cells by S_1."""
    ring = table.ring
    cell = table.cells[(i, n)].module
    if not cell.gens:
        return []
    images = []
    if use_u and n >= 1 and (i, n - 1) in table.cells:
        for k in range(table.family.mu_ideal):
            images.extend(table.u_map(k, i, n - 1))
    if use_t and i >= 2 and table.ops is not None:
        for j in range(table.ops.c):
            images.extend(table.t_map(j, i - 2, n))
    rels = cell.rels + [v for v in images if v]
    return minimal_subset(cell.gens, cell.rank, ring, cell.degrees, rels)


def certify_generation_box(table, box):
    """Sweep bidegrees (n major, then i) and record generators not in S_1-images of earlier cells."""
    i_box, n_box = box
    if i_box + 2 > table.i_max or n_box + 1 > table.n_max:
        raise ValueError(f"margin missing: box {box} needs a table through i={i_box + 2}, n={n_box + 1}")
    gens = []
    band_new = 0
    for n in range(n_box + 2):
        for i in range(i_box + 3):
            new = _new_generators(table, i, n)
            gens.extend(((i, n), k) for k in new)
            if new and (i > i_box or n > n_box):
                band_new += len(new)
    status = "generated-in-box" if band_new == 0 else "inconclusive"
    return GenerationCertificate(box, gens, (i_box + 2, n_box + 1), status, (i_box + 2, n_box + 1))


def gulliksen_column_check(table, n):
    """Is column n generated over A[t_1..t_c] by its low rows?  Reports the detected bound."""
    degrees = []
    for i in range(table.i_max + 1):
        if _new_generators(table, i, n, use_u=False):
            degrees.append(i)
    bound = max(degrees) if degrees else -1
    top = {table.i_max - 1, table.i_max}
    generated = not (top & set(degrees))
    return {"column": n, "generator_degrees": degrees, "bound": bound,
            "verified_through": table.i_max, "generated": generated}


def explain_cell(table, i, n):
    """Human-readable generators of a cell (debug output)."""
    cell = table.cells[(i, n)].module
    base = table.ring.base
    return ["(" + ", ".join(map(str, vec_to_polys(g, cell.rank, base))) + ")" for g in cell.gens]
