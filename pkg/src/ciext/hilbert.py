"""Hilbert series of graded quotients of free modules, via initial monomial modules."""

from functools import lru_cache
from math import factorial


def _padd(a, b, scale=1, shift=0):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k + shift, 0) + scale * v
        if s:
            out[k + shift] = s
        else:
            out.pop(k + shift, None)
    return out


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(out)


@lru_cache(maxsize=None)
def _numerator(gens):
    """K-polynomial numerator N with HS(k[x]/J) = N(z) / (1-z)^m, ``gens`` minimal."""
    if not gens:
        return ((0, 1),)
    supports = [tuple(i for i, a in enumerate(g) if a) for g in gens]
    if all(len(s) == 1 for s in supports) and len({s[0] for s in supports}) == len(supports):
        poly = {0: 1}
        for g in gens:
            poly = _padd(poly, poly, scale=-1, shift=sum(g))
        return tuple(sorted(poly.items()))
    # pivot on the generator of largest degree
    g = gens[-1]
    rest = gens[:-1]
    colon = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(h, g)) for h in rest))
    n1 = dict(_numerator(rest))
    n2 = dict(_numerator(colon))
    return tuple(sorted(_padd(n1, n2, scale=-1, shift=sum(g)).items()))


def monomial_numerator(gens):
    return dict(_numerator(_minimalize(tuple(tuple(g) for g in gens))))


class HilbertSeries:
    """Rational function ``numerator(z) / (1 - z)^nvars`` with an integer Laurent numerator."""

    def __init__(self, numerator, nvars):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.nvars = nvars

    @classmethod
    def zero(cls, nvars):
        return cls({}, nvars)

    def __add__(self, other):
        assert self.nvars == other.nvars
        return HilbertSeries(_padd(self.numerator, other.numerator), self.nvars)

    def __sub__(self, other):
        assert self.nvars == other.nvars
        return HilbertSeries(_padd(self.numerator, other.numerator, scale=-1), self.nvars)

    def shift(self, d):
        """Series of M(-d), i.e. multiplied by z^d."""
        return HilbertSeries({k + d: v for k, v in self.numerator.items()}, self.nvars)

    def times_poly(self, poly):
        out = {}
        for k, v in poly.items():
            out = _padd(out, self.numerator, scale=v, shift=k)
        return HilbertSeries(out, self.nvars)

    def is_zero(self):
        return not self.numerator

    def reduced(self):
        """``(h, d)`` with the series equal to h(z)/(1-z)^d and h(1) != 0 (or h = 0)."""
        h = dict(self.numerator)
        d = self.nvars
        while h and d > 0 and sum(h.values()) == 0:
            # divide by (1 - z): coefficients of the quotient are partial sums
            lo, hi = min(h), max(h)
            q, acc = {}, 0
            for k in range(lo, hi):
                acc += h.get(k, 0)
                if acc:
                    q[k] = acc
            h = q
            d -= 1
        return h, d

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        return self.reduced() == other.reduced()

    def __hash__(self):
        h, d = self.reduced()
        return hash((tuple(sorted(h.items())), d))

    @property
    def dim(self):
        h, d = self.reduced()
        return -1 if not h else d

    @property
    def multiplicity(self):
        h, _ = self.reduced()
        return sum(h.values())

    def is_polynomial(self):
        h, d = self.reduced()
        return d == 0 or not h

    @property
    def length(self):
        if not self.is_polynomial():
            return None
        return sum(self.reduced()[0].values())

    def coefficients(self, lo, hi):
        """Hilbert function values for degrees lo..hi inclusive."""
        h, d = self.reduced()
        out = []
        for n in range(lo, hi + 1):
            total = 0
            for k, v in h.items():
                m = n - k
                if m < 0:
                    continue
                total += v * (_binom(m + d - 1, d - 1) if d > 0 else (1 if m == 0 else 0))
            out.append(total)
        return out

    def hilbert_polynomial_degree(self):
        return self.dim - 1

    def __str__(self):
        h, d = self.reduced()
        num = _format_laurent(h)
        if d == 0:
            return num
        den = "(1-z)" if d == 1 else f"(1-z)^{d}"
        if len(h) == 1 and 0 <= h[next(iter(h))] and next(iter(h)) == 0:
            return f"{num}/{den}"
        return f"({num})/{den}"

    def __repr__(self):
        return f"HilbertSeries({self})"


def _binom(n, k):
    if k < 0 or n < k:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def _format_laurent(h):
    if not h:
        return "0"
    parts = []
    for k in sorted(h):
        c = h[k]
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if mono:
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


def quotient_series(gb):
    """Hilbert series of ``A^rank / U`` from a Groebner basis of U (modulus included)."""
    m = gb.ring.nvars
    total = HilbertSeries.zero(m)
    for pos in range(gb.rank):
        num = monomial_numerator(gb.lead_monomials(pos))
        total = total + HilbertSeries(num, m).shift(gb.degrees[pos])
    return total
