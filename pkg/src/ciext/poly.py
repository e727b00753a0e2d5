"""Exact sparse multivariate polynomials over a prime field or the rationals."""

import ast
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

MAX_PRIME = 2**31


class Field:
    """Coefficient field: ``Field(p)`` is F_p, ``Field(0)`` is QQ.

    Elements of F_p are Python ints in ``[0, p)``; rationals are ``gmpy2.mpq``.
    """

    __slots__ = ("p",)

    def __init__(self, p=0):
        p = int(p)
        if p:
            if p < 2 or p > MAX_PRIME or not gmpy2.is_prime(p):
                raise ValueError(f"{p} is not a prime <= 2^31")
        self.p = p

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        if text.upper() in ("QQ", "Q", "RATIONALS", "0"):
            return cls(0)
        if text.upper().startswith("F"):
            text = text[1:].lstrip("_")
        return cls(int(text))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"F{self.p}" if self.p else "QQ"

    def __call__(self, value):
        p = self.p
        if p:
            if isinstance(value, (Fraction, type(mpq(0)))):
                num, den = int(value.numerator), int(value.denominator)
                if den % p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {p}")
                return num * pow(den, -1, p) % p
            return int(value) % p
        return mpq(value)

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def signed(self, a):
        """Symmetric representative used for printing."""
        if self.p:
            return a - self.p if a > self.p // 2 else a
        return a

    def fmt(self, a):
        a = self.signed(a)
        if not self.p and a.denominator == 1:
            return str(a.numerator)
        return str(a)


class MonomialOrder:
    """``grevlex`` or ``lex``; variable 0 is the largest variable."""

    KINDS = ("grevlex", "lex")

    def __init__(self, kind="grevlex"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def key(self, e):
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return self.kind


class PolyRing:
    """Standard-graded polynomial ring k[x_1..x_m] with a fixed monomial order."""

    def __init__(self, field, variables, order="grevlex"):
        variables = tuple(str(v).strip() for v in variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable name in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise ValueError(f"invalid variable name {v!r}")
        if not isinstance(order, MonomialOrder):
            order = MonomialOrder(order)
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self._keys = {}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.variables == other.variables and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.variables)}] ({self.order!r})"

    def __getstate__(self):
        return {"field": self.field, "variables": self.variables, "order": self.order}

    def __setstate__(self, state):
        self.__init__(state["field"], state["variables"], state["order"])

    def key(self, e):
        """Sort key of an exponent vector; larger key means larger monomial."""
        k = self._keys.get(e)
        if k is None:
            k = self._keys[e] = self.order.key(e)
        return k

    @property
    def zero_exp(self):
        return (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Polynomial(self, {self.zero_exp: c} if c else {})

    def monomial(self, e, c=1):
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def gen(self, name):
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return self.monomial(tuple(e))

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def var_index(self, name):
        return self._index[name]

    def parse(self, text):
        return parse_polynomial(self, text)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ValueError("polynomial belongs to another ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)


def ring_build(field, variables, order="grevlex"):
    return PolyRing(field, variables, order)


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        return self.ring.constant(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        F = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(a, c) for e, a in self.terms.items()})

    def mul_monomial(self, e, c=1):
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, e)): F.mul(a_c, c)
                                      for m, a_c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sorted_terms(self):
        """Terms in descending monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self):
        """Common degree of all terms, or None if inhomogeneous (or zero)."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d):
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead()[1]))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(a, b, op):
    """``op`` is ``"add"``, ``"mul"`` or ``"scale"`` (``b`` a field scalar)."""
    if op == "scale":
        return a.scale(b)
    if isinstance(b, Polynomial) and a.ring != b.ring:
        raise ValueError("polynomials over different rings")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def homogeneous_part(a, d):
    return a.homogeneous_part(d)


def format_monomial(ring, e):
    parts = []
    for v, k in zip(ring.variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_polynomial(f):
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for e, c in f.sorted_terms():
        c = F.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(f.ring, e)
        a_str = F.fmt(a)
        if not mono:
            body = a_str
        elif a == 1:
            body = mono
        else:
            body = f"{a_str}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.Div)


def parse_polynomial(ring, text):
    """Parse text such as ``3*u^2*x + 5`` or ``(x+y)^2 - 1/2*x`` into ``ring``."""
    try:
        tree = ast.parse(str(text).replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring._index:
                raise ValueError(f"unknown variable {node.id!r} in {text!r}")
            return ring.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError(f"exponent must be an integer literal in {text!r}")
                return left ** node.right.value
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if right.degree() != 0:
                raise ValueError(f"division only by nonzero constants in {text!r}")
            return left.scale(ring.field.inv(right.constant_term()))
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree)
