"""Finitely generated graded modules over A as subquotients of free modules.

A ``Module`` is ``(gens + rels) / rels`` inside a free module ``A^rank`` whose
basis vector ``e_k`` has degree ``degrees[k]``.  A cokernel presentation is
the special case where ``gens`` is the standard basis.
"""

from functools import cached_property

from .groebner import (
    Elimination, buchberger, minimal_subset, polys_to_vec, vec_apply, vec_degree,
    vec_iadd, vec_is_homogeneous, vec_mul_poly, vec_shift_positions, vec_to_polys,
)
from .hilbert import quotient_series
from .ideals import Ideal


class Matrix:
    """Graded matrix over A stored by columns (each a sparse vector of length ``nrows``)."""

    def __init__(self, ring, nrows, columns, row_degrees=None, col_degrees=None):
        self.ring = ring
        self.nrows = nrows
        self.columns = [dict(c) for c in columns]
        self.row_degrees = tuple(row_degrees) if row_degrees is not None else (0,) * nrows
        if col_degrees is None:
            col_degrees = []
            for c in self.columns:
                d = vec_degree(c, self.row_degrees)
                col_degrees.append(0 if d is None else d)
        self.col_degrees = tuple(col_degrees)

    @classmethod
    def from_rows(cls, ring, rows, row_degrees=None, col_degrees=None):
        rows = [[ring(e) for e in r] for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [polys_to_vec([rows[i][j] for i in range(nrows)]) for j in range(ncols)]
        return cls(ring, nrows, cols, row_degrees, col_degrees)

    @property
    def ncols(self):
        return len(self.columns)

    def entry(self, i, j):
        return vec_to_polys(self.columns[j], self.nrows, self.ring.base)[i]

    def rows(self):
        cols = [vec_to_polys(c, self.nrows, self.ring.base) for c in self.columns]
        return [[cols[j][i] for j in range(self.ncols)] for i in range(self.nrows)]

    def __matmul__(self, other):
        """Composition ``self ∘ other`` over A (entries reduced modulo f)."""
        assert other.nrows == self.ncols
        cols = [reduce_vec(self.ring, vec_apply(c, self.columns, self.ring.field))
                for c in other.columns]
        return Matrix(self.ring, self.nrows, cols, self.row_degrees, other.col_degrees)

    def reduced(self):
        return Matrix(self.ring, self.nrows, [reduce_vec(self.ring, c) for c in self.columns],
                      self.row_degrees, self.col_degrees)

    def is_zero(self):
        return all(not c for c in self.columns)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows == other.nrows and self.columns == other.columns)

    def __sub__(self, other):
        F = self.ring.field
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            vec_iadd(c, b, F, scale=(F.p - 1) if F.p else -1)
            cols.append(c)
        return Matrix(self.ring, self.nrows, cols, self.row_degrees, self.col_degrees)

    def __add__(self, other):
        F = self.ring.field
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            vec_iadd(c, b, F)
            cols.append(c)
        return Matrix(self.ring, self.nrows, cols, self.row_degrees, self.col_degrees)

    def scale(self, p):
        p = self.ring.base(p)
        return Matrix(self.ring, self.nrows, [vec_mul_poly(c, p, self.ring.field) for c in self.columns],
                      self.row_degrees, self.col_degrees)

    def to_lists(self):
        return [[str(e) for e in row] for row in self.rows()]

    def __str__(self):
        rows = self.to_lists()
        if not rows:
            return f"[](0 x {self.ncols})"
        return "\n".join("[" + ", ".join(r) + "]" for r in rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def reduce_vec(ring, v):
    """Reduce every entry of ``v`` modulo (f)."""
    if not ring.modulus or not v:
        return v
    gb = ring.modulus_gb
    out = {}
    by_pos = {}
    for (pos, e), c in v.items():
        by_pos.setdefault(pos, {})[(0, e)] = c
    for pos, w in by_pos.items():
        r = gb.reduce(w)
        for (_, e), c in r.items():
            out[(pos, e)] = c
    return out


class Module:
    """Subquotient ``(gens + rels)/rels`` of a graded free A-module."""

    def __init__(self, ring, degrees, gens, rels=(), degree_cap=None):
        self.ring = ring
        self.degrees = tuple(degrees)
        self.rank = len(self.degrees)
        self.gens = [reduce_vec(ring, dict(g)) for g in gens]
        self.rels = [r for r in (reduce_vec(ring, dict(r)) for r in rels) if r]
        self.degree_cap = degree_cap
        for v in self.gens + self.rels:
            if not vec_is_homogeneous(v, self.degrees):
                raise ValueError("module generators and relations must be homogeneous")

    # construction -----------------------------------------------------------

    @classmethod
    def cokernel(cls, ring, degrees, relations, degree_cap=None):
        """coker of the relation columns (sparse vectors or lists of polynomials)."""
        degrees = tuple(degrees)
        rels = [c if isinstance(c, dict) else polys_to_vec([ring(e) for e in c]) for c in relations]
        gens = [{(k, ring.base.zero_exp): ring.field.one} for k in range(len(degrees))]
        return cls(ring, degrees, gens, rels, degree_cap)

    @classmethod
    def free(cls, ring, degrees):
        return cls.cokernel(ring, degrees, [])

    @classmethod
    def from_matrix(cls, matrix, degree_cap=None):
        return cls.cokernel(matrix.ring, matrix.row_degrees, matrix.columns, degree_cap)

    @classmethod
    def quotient_ring(cls, ideal, degree=0):
        """A/J as a cyclic module generated in ``degree``."""
        rels = [{(0, e): c for e, c in g.terms.items()} for g in ideal.gens]
        return cls.cokernel(ideal.ring, (degree,), rels)

    @classmethod
    def zero(cls, ring):
        return cls(ring, (), [])

    def __getstate__(self):
        return {"ring": self.ring, "degrees": self.degrees, "gens": self.gens,
                "rels": self.rels, "degree_cap": self.degree_cap}

    def __setstate__(self, state):
        self.ring = state["ring"]
        self.degrees = state["degrees"]
        self.rank = len(self.degrees)
        self.gens = state["gens"]
        self.rels = state["rels"]
        self.degree_cap = state["degree_cap"]

    @property
    def ngens(self):
        return len(self.gens)

    def gen_degrees(self):
        out = []
        for g in self.gens:
            d = vec_degree(g, self.degrees)
            out.append(0 if d is None else d)
        return tuple(out)

    def is_cokernel(self):
        return (self.ngens == self.rank and all(
            g == {(k, self.ring.base.zero_exp): self.ring.field.one} for k, g in enumerate(self.gens)))

    # Groebner data -------------------------------------------------------------

    @cached_property
    def rels_gb(self):
        return buchberger(self.rels, self.rank, self.ring, self.degrees, self.degree_cap)

    @cached_property
    def span_gb(self):
        return buchberger(self.gens + self.rels, self.rank, self.ring, self.degrees, self.degree_cap)

    @cached_property
    def _elimination(self):
        return Elimination(self.ring, self.rank, self.degrees, self.gens, self.rels,
                           self.degree_cap, self.gen_degrees())

    def is_zero_element(self, v):
        """True if ``v`` (an ambient vector) is zero in the module."""
        return self.rels_gb.contains(reduce_vec(self.ring, v))

    def contains(self, v):
        """True if ``v`` lies in ``gens + rels``."""
        return self.span_gb.contains(reduce_vec(self.ring, v))

    def lift(self, v):
        """Coefficients ``c`` (vector in A^ngens) with ``sum c_k gens_k == v`` in the module."""
        c = self._elimination.lift(reduce_vec(self.ring, v))
        if c is None:
            raise ValueError("element does not lie in the module")
        return c

    def relations_on_gens(self):
        """Generators of the syzygies of ``gens`` modulo ``rels`` (vectors in A^ngens)."""
        return self._elimination.syzygies()

    def is_zero(self):
        return all(self.is_zero_element(g) for g in self.gens)

    # minimal structure -------------------------------------------------------------

    def minimal_generators(self):
        """Indices of a minimal generating subset of ``gens`` (graded Nakayama)."""
        return minimal_subset(self.gens, self.rank, self.ring, self.degrees, self.rels, self.degree_cap)

    @cached_property
    def mu(self):
        return len(self.minimal_generators())

    def pruned(self):
        """Same module with a minimal generating set, in generator order by degree."""
        keep = self.minimal_generators()
        degs = self.gen_degrees()
        keep.sort(key=lambda k: (degs[k], k))
        return Module(self.ring, self.degrees, [self.gens[k] for k in keep], self.rels, self.degree_cap)

    def presentation(self, minimal=True):
        """Cokernel presentation ``A^ngens / relations_on_gens`` (a Module)."""
        M = self.pruned() if minimal else self
        gdeg = M.gen_degrees()
        syz = M.relations_on_gens()
        if minimal and syz:
            keep = minimal_subset(syz, M.ngens, self.ring, gdeg)
            syz = [syz[k] for k in keep]
        return Module.cokernel(self.ring, gdeg, syz, self.degree_cap)

    def presentation_matrix(self):
        P = self.presentation()
        return Matrix(self.ring, P.rank, P.rels, P.degrees)

    # numerical invariants ------------------------------------------------------------------

    def hilbert_series(self):
        return quotient_series(self.rels_gb) - quotient_series(self.span_gb)

    @property
    def dim(self):
        return self.hilbert_series().dim

    @property
    def multiplicity(self):
        return self.hilbert_series().multiplicity

    @property
    def length(self):
        return self.hilbert_series().length

    def annihilator(self):
        return annihilator(self)

    # maps -----------------------------------------------------------------------------

    def kernel_of(self, images, target):
        """Kernel of the map sending ``gens[k]`` to ``images[k]`` in ``target`` (a Module).

        Returned as a submodule of ``self`` (same ambient, same rels).
        """
        if not self.gens:
            return Module(self.ring, self.degrees, [], self.rels, self.degree_cap)
        syz = Elimination(target.ring, target.rank, target.degrees, images, target.rels,
                          target.degree_cap, self.gen_degrees()).syzygies()
        F = self.ring.field
        vecs = []
        for s in syz:
            v = {}
            for (pos, e), c in s.items():
                vec_iadd(v, self.gens[pos], F, scale=c, shift=e)
            v = reduce_vec(self.ring, v)
            if v:
                vecs.append(v)
        return Module(self.ring, self.degrees, vecs, self.rels, self.degree_cap)

    def submodule(self, vectors):
        return Module(self.ring, self.degrees, vectors, self.rels, self.degree_cap)

    def quotient_by(self, vectors):
        return Module(self.ring, self.degrees, self.gens, self.rels + list(vectors), self.degree_cap)

    def scalar_images(self, p):
        """Images of the generators under multiplication by a ring element."""
        p = self.ring(p)
        return [reduce_vec(self.ring, vec_mul_poly(g, p, self.ring.field)) for g in self.gens]

    def colon(self, J):
        """(0 :_M J) as a submodule of M."""
        return module_colon(self, J)

    def __str__(self):
        base = self.ring.base
        g = ", ".join("(" + ", ".join(map(str, vec_to_polys(v, self.rank, base))) + ")" for v in self.gens)
        r = ", ".join("(" + ", ".join(map(str, vec_to_polys(v, self.rank, base))) + ")" for v in self.rels)
        return f"Module(rank={self.rank}, degrees={list(self.degrees)}, gens=[{g}], rels=[{r}])"


def stacked(vectors, rank):
    """Stack vectors of A^rank into one vector of A^(rank*len)."""
    out = {}
    for k, v in enumerate(vectors):
        out.update(vec_shift_positions(v, k * rank))
    return out


def annihilator(M):
    """ann(M) = {a : a*g in rels for every generator g}."""
    ring = M.ring
    if not M.gens:
        return Ideal.unit(ring)
    gdeg = M.gen_degrees()
    n = M.ngens
    degrees = []
    for d in gdeg:
        degrees.extend(x - d for x in M.degrees)
    big = stacked(M.gens, M.rank)
    rels = [vec_shift_positions(r, k * M.rank) for k in range(n) for r in M.rels]
    syz = Elimination(ring, n * M.rank, degrees, [big], rels, M.degree_cap, (0,)).syzygies()
    return Ideal(ring, [vec_to_polys(s, 1, ring.base)[0] for s in syz])


def module_colon(M, J):
    """(0 :_M J) = {m in M : J m = 0}, as a submodule of M."""
    ring = M.ring
    gens = list(J.gens)
    if not gens:
        return M
    if not M.gens:
        return M
    # m ↦ (j_1 m, ..., j_r m) into M^r
    n = len(gens)
    images = []
    for g in M.gens:
        images.append(stacked([reduce_vec(ring, vec_mul_poly(g, j, ring.field)) for j in gens], M.rank))
    degrees = []
    for j in gens:
        degrees.extend(d - j.degree() for d in M.degrees)
    target = Module(ring, degrees, [], [vec_shift_positions(r, k * M.rank)
                                        for k in range(n) for r in M.rels], M.degree_cap)
    return M.kernel_of(images, target)
