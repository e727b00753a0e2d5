"""YAML experiment configs: ring, module, ideal, family and bounds."""

import hashlib
import json

import yaml

from .groebner import QuotientRing
from .ideals import Ideal, is_regular_sequence
from .modules import Module
from .poly import Field, PolyRing


class ConfigError(ValueError):
    """Config cannot be parsed (usage error)."""


class PreconditionError(ValueError):
    """A mathematical precondition fails; ``invariant`` names it."""

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


DEFAULT_BOUNDS = {"i_max": 6, "n_max": 3, "j_max": 4, "degree_cap": None}


class ExperimentConfig:
    def __init__(self, raw, text):
        self.raw = raw
        self.text = text
        self.bounds = dict(DEFAULT_BOUNDS)
        self.bounds.update(raw.get("bounds") or {})
        self.random_seed = int(raw.get("random_seed", 0))
        self._build()

    # ---- parsing -------------------------------------------------------------------

    def _build(self):
        raw = self.raw
        try:
            self.field = Field.parse(raw.get("field", 0))
            variables = raw["variables"]
            self.base = PolyRing(self.field, [str(v) for v in variables], raw.get("order", "grevlex"))
            f = [self.base.parse(str(p)) for p in raw.get("f", [])]
        except KeyError as e:
            raise ConfigError(f"missing key {e}") from None
        except (SyntaxError, ValueError, TypeError) as e:
            raise ConfigError(str(e)) from None
        for p in f:
            if p.is_zero() or not p.is_homogeneous():
                raise PreconditionError("regular-sequence", f"{p} is not a nonzero homogeneous form")
        if not is_regular_sequence(self.base, f):
            raise PreconditionError("regular-sequence", "not a regular sequence")
        self.f = f
        self.ring = QuotientRing(self.base, f)
        self.M = self._module(raw.get("module", "k"), "module")
        self.N = self._module(raw.get("seed", raw.get("module", "k")), "seed")
        self.I = Ideal(self.ring, [self._poly(p) for p in raw.get("ideal", [])]) \
            if raw.get("ideal") is not None else Ideal.maximal(self.ring)
        self.family_kind = raw.get("family", "constant")
        self.candidates = [[self._poly(p) for p in c] for c in raw.get("candidates", [])]
        self.box = raw.get("box")
        self.theta_cfg = raw.get("theta") or {}

    def _poly(self, text):
        try:
            return self.ring.reduce(self.base.parse(str(text)))
        except (SyntaxError, ValueError, TypeError) as e:
            raise ConfigError(f"cannot parse polynomial {text!r}: {e}") from None

    def _module(self, spec, where):
        ring = self.ring
        if spec == "k":
            return Module.quotient_ring(Ideal.maximal(ring))
        if spec in ("A", "free"):
            return Module.free(ring, (0,))
        if spec in ("0", 0, "zero"):
            return Module.zero(ring)
        if not isinstance(spec, dict):
            raise ConfigError(f"{where}: unknown module spec {spec!r}")
        if "quotient" in spec:
            return Module.quotient_ring(Ideal(ring, [self._poly(p) for p in spec["quotient"]]),
                                        int(spec.get("degree", 0)))
        degrees = tuple(int(d) for d in spec.get("degrees", [0]))
        cols = []
        for col in spec.get("relations", []):
            if len(col) != len(degrees):
                raise ConfigError(f"{where}: relation column {col} does not match rank {len(degrees)}")
            cols.append([self._poly(p) for p in col])
        try:
            return Module.cokernel(ring, degrees, cols)
        except ValueError as e:
            raise PreconditionError("module-homogeneous", str(e)) from None

    # ---- derived ---------------------------------------------------------------------

    def apply_overrides(self, imax=None, nmax=None, degcap=None, seed=None):
        if imax is not None:
            self.bounds["i_max"] = imax
        if nmax is not None:
            self.bounds["n_max"] = nmax
            self.bounds["j_max"] = nmax
        if degcap is not None:
            self.bounds["degree_cap"] = degcap
        if seed is not None:
            self.random_seed = seed

    def config_hash(self):
        """sha256 of the config text together with the effective bounds and seed."""
        h = hashlib.sha256()
        h.update(self.text.encode())
        h.update(json.dumps({"bounds": self.bounds, "seed": self.random_seed}, sort_keys=True).encode())
        return h.hexdigest()

    def header(self):
        return {"config_hash": self.config_hash(), "bounds": dict(self.bounds), "random_seed": self.random_seed}


def load_config(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    return parse_config(text)


def parse_config(text):
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"unparseable config: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    return ExperimentConfig(raw, text)
