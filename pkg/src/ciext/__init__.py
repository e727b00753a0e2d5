"""Ext modules over graded complete intersections: resolutions, Eisenbud operators,
bigraded Ext tables of Rees families, associated primes and complexity."""

from .poly import Field, PolyRing, Polynomial, parse_polynomial
from .groebner import QuotientRing, buchberger, syzygies
from .ideals import Ideal, ideal_power, is_regular_sequence, krull_dim
from .modules import Matrix, Module, annihilator, module_colon
from .resolution import FreeResolution, resolve
from .operators import eisenbud_operators, verify_chain_map, verify_commute_homotopy
from .family import ReesFamily, build_family, explicit_family
from .ext import ExtTable, certify_generation_box, ext, family_ext_table, gulliksen_column_check

__version__ = "0.1.0"
