"""Graded Rees-algebra families N = ⊕ N_n with multiplication maps N_n -> N_{n+1}."""

from .groebner import minimal_subset, vec_mul_poly
from .ideals import Ideal, ideal_power
from .modules import Matrix, Module, reduce_vec

KINDS = ("ideal-power-module", "quotient-family", "constant", "explicit")


class Piece:
    """One graded piece ``N_n``: the module inside D's ambient plus a minimal cokernel presentation."""

    def __init__(self, module, presentation, gens_module):
        self.module = module
        self.presentation = presentation
        self.gens_module = gens_module

    @property
    def mu(self):
        return self.presentation.rank


class ReesFamily:
    """``N_n`` for ``0 <= n <= n_max`` with actions ``u_g: N_n -> N_{n+1}`` for g in ``rees_gens``.

    ``actions[n][k]`` is the matrix of multiplication by ``rees_gens[k]`` from the
    presentation of ``N_n`` to the presentation of ``N_{n+1}``.
    """

    def __init__(self, ideal, kind, seed, n_max, pieces, actions, rees_gens, start=0):
        self.ideal = ideal
        self.kind = kind
        self.seed = seed
        self.n_max = n_max
        self.pieces = pieces
        self.actions = actions
        self.rees_gens = rees_gens
        self.start = start

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def mu_ideal(self):
        return len(self.rees_gens)

    def presentation(self, n):
        return self.pieces[n].presentation

    def module(self, n):
        return self.pieces[n].module

    def truncate(self, j):
        """N_{>=j}: pieces below j replaced by zero."""
        ring = self.ring
        zero = Piece(Module.zero(ring), Module.zero(ring), Module.zero(ring))
        pieces = [zero if n < j else p for n, p in enumerate(self.pieces)]
        actions = []
        for n, acts in enumerate(self.actions):
            if n < j:
                tgt = self.pieces[n + 1].presentation
                actions.append([Matrix(ring, tgt.rank if n + 1 >= j else 0, [], tgt.degrees if n + 1 >= j else ())
                                for _ in self.rees_gens])
            else:
                actions.append(acts)
        return ReesFamily(self.ideal, self.kind, self.seed, self.n_max, pieces, actions,
                          self.rees_gens, start=j)


def _piece(module):
    pruned = module.pruned()
    syz = pruned.relations_on_gens()
    gdeg = pruned.gen_degrees()
    if syz:
        keep = minimal_subset(syz, pruned.ngens, module.ring, gdeg)
        syz = [syz[k] for k in keep]
    pres = Module.cokernel(module.ring, gdeg, syz, module.degree_cap)
    return Piece(module, pres, pruned)


def _action(src, tgt, g):
    """Matrix of multiplication by g from src's presentation to tgt's presentation."""
    ring = src.module.ring
    cols = []
    for y in src.gens_module.gens:
        image = reduce_vec(ring, vec_mul_poly(y, g, ring.field))
        if tgt.gens_module.ngens == 0 or tgt.gens_module.is_zero_element(image):
            cols.append({})
            continue
        cols.append(reduce_vec(ring, tgt.gens_module.lift(image)))
    return Matrix(ring, tgt.presentation.rank, cols, tgt.presentation.degrees,
                  tuple(d + max(g.degree(), 0) for d in src.presentation.degrees))


def build_family(I, D, kind, n_max):
    """Construct the pieces and action maps of a Rees family seeded by the module D.

    ``ideal-power-module``: N_n = I^n D.  ``quotient-family``: N_n = D / I^n D.
    ``constant``: N_n = D with every u the identity (I is replaced by the unit ideal).
    """
    if kind not in KINDS[:3]:
        raise ValueError(f"unknown family kind {kind!r}")
    ring = D.ring
    if kind == "constant":
        I = Ideal.unit(ring)
        rees_gens = [ring.base.one()]
    else:
        if I.is_unit() and kind == "quotient-family":
            raise ValueError("quotient family needs a proper ideal")
        rees_gens = I.mingens()
    modules = []
    for n in range(n_max + 1):
        if kind == "constant":
            modules.append(D)
        elif kind == "ideal-power-module":
            J = ideal_power(I, n)
            gens = [reduce_vec(ring, vec_mul_poly(y, m, ring.field)) for m in J.gens for y in D.gens]
            modules.append(Module(ring, D.degrees, [g for g in gens if g], D.rels, D.degree_cap))
        else:
            J = ideal_power(I, n)
            extra = [reduce_vec(ring, vec_mul_poly(y, m, ring.field)) for m in J.gens for y in D.gens]
            modules.append(D.quotient_by([e for e in extra if e]))
    pieces = [_piece(m) for m in modules]
    actions = []
    for n in range(n_max):
        actions.append([_action(pieces[n], pieces[n + 1], g) for g in rees_gens])
    return ReesFamily(I, kind, D, n_max, pieces, actions, rees_gens)


def explicit_family(I, presentations, actions, rees_gens=None):
    """Family from user cokernel presentations and action matrices ``actions[n][k]``."""
    pieces = []
    for P in presentations:
        pieces.append(Piece(P, P, P))
    rees_gens = rees_gens if rees_gens is not None else I.mingens()
    return ReesFamily(I, "explicit", None, len(presentations) - 1, pieces, actions, rees_gens)
