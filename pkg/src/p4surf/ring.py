"""Exact arithmetic core: prime fields, grevlex monomials, sparse homogeneous polynomials.

Monomials are packed into single integers so that integer comparison is
graded reverse lexicographic order (x0 > x1 > ... > x_{n-1}) and monomial
multiplication is a single integer addition.  Layout for n variables:

    key = deg << 16*(n-1)  |  (M - e_{n-1}) << 16*(n-2)  |  ...  |  (M - e_1)

with M = 0x7FFF.  The exponent of x0 is implicit (deg minus the rest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import DegreeError, ParseError, UsageError

FIELDW = 16
FIELDM = 0x7FFF
DEGCAP = 0x7FFF  # total degree must stay below this for fixed-width keys


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z/p for a prime p; elements are ints in [0, p)."""

    p: int = 31991

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"characteristic {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def neg(self, a: int) -> int:
        return -a % self.p


class PolyRing:
    """Graded polynomial ring over a prime field with grevlex order.

    Default is the homogeneous coordinate ring of P^4: five variables
    x0..x4 over F_31991.
    """

    def __init__(self, p: int = 31991, nvars: int = 5):
        if nvars < 1:
            raise UsageError("need at least one variable")
        self.field = PrimeField(p)
        self.p = self.field.p
        self.nvars = nvars
        self.names = tuple(f"x{i}" for i in range(nvars))
        self.deg_shift = FIELDW * (nvars - 1)
        self.keybits = FIELDW * nvars
        self.mono_one = sum(FIELDM << (FIELDW * i) for i in range(nvars - 1))
        self.high_mask = sum(0x8000 << (FIELDW * i) for i in range(nvars - 1))
        self._field_shifts = tuple(FIELDW * i for i in range(nvars - 1))

    def __repr__(self):
        return f"PolyRing(p={self.p}, nvars={self.nvars})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.nvars == other.nvars

    def __hash__(self):
        return hash((self.p, self.nvars))

    # ---- packed monomial arithmetic ----

    def mono(self, exps) -> int:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise UsageError(f"expected {self.nvars} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise UsageError("negative exponent")
        deg = sum(exps)
        if deg >= DEGCAP:
            raise UsageError(f"degree {deg} exceeds packing capacity")
        key = deg << self.deg_shift
        for i, sh in enumerate(self._field_shifts):
            key |= (FIELDM - exps[i + 1]) << sh
        return key

    def mono_exps(self, m: int) -> tuple:
        deg = m >> self.deg_shift
        rest = [FIELDM - ((m >> sh) & 0xFFFF) for sh in self._field_shifts]
        return (deg - sum(rest), *rest)

    def mono_deg(self, m: int) -> int:
        return m >> self.deg_shift

    def mono_mul(self, a: int, b: int) -> int:
        return a + b - self.mono_one

    def mono_div(self, a: int, b: int):
        """Quotient monomial a/b, or None when b does not divide a."""
        q = a - b + self.mono_one
        if q < 0 or (q & self.high_mask):
            return None
        deg = q >> self.deg_shift
        rest = 0
        for sh in self._field_shifts:
            rest += FIELDM - ((q >> sh) & 0xFFFF)
        if deg - rest < 0:
            return None
        return q

    def mono_lcm(self, a: int, b: int) -> int:
        ea, eb = self.mono_exps(a), self.mono_exps(b)
        return self.mono(tuple(max(x, y) for x, y in zip(ea, eb)))

    def mono_coprime(self, a: int, b: int) -> bool:
        ea, eb = self.mono_exps(a), self.mono_exps(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def mono_str(self, m: int) -> str:
        exps = self.mono_exps(m)
        parts = [f"{n}^{e}" if e > 1 else n for n, e in zip(self.names, exps) if e]
        return "*".join(parts) if parts else "1"

    def monomials_of_degree(self, d: int):
        """All packed monomials of total degree d, in decreasing grevlex order."""
        return _monomials_of_degree(self, d)

    # ---- polynomial constructors ----

    def zero(self) -> "Poly":
        return Poly(self, {}, _trusted=True)

    def one(self) -> "Poly":
        return Poly(self, {self.mono_one: 1}, _trusted=True)

    def variable(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {self.mono(e): 1}, _trusted=True)

    def monomial(self, exps, coeff: int = 1) -> "Poly":
        return Poly(self, {self.mono(exps): coeff % self.p})

    def linear_form(self, coeffs) -> "Poly":
        """c0*x0 + ... + c_{n-1}*x_{n-1}."""
        terms = {}
        for i, c in enumerate(coeffs):
            c %= self.p
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[self.mono(e)] = c
        return Poly(self, terms, _trusted=True)

    def parse(self, text: str) -> "Poly":
        return _parse_poly(self, text)


@lru_cache(maxsize=None)
def _mono_exp_lists(nvars: int, d: int):
    if nvars == 1:
        return [(d,)]
    out = []
    for e0 in range(d, -1, -1):
        for tail in _mono_exp_lists(nvars - 1, d - e0):
            out.append((e0, *tail))
    return out


def _monomials_of_degree(ring: PolyRing, d: int):
    monos = [ring.mono(e) for e in _mono_exp_lists(ring.nvars, d)]
    monos.sort(reverse=True)
    return monos


def compare_grevlex(a, b) -> int:
    """Compare two exponent tuples in grevlex; returns -1, 0 or 1."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise UsageError("exponent vectors have different lengths")
    ring = PolyRing(2, len(a))
    ka, kb = ring.mono(a), ring.mono(b)
    return (ka > kb) - (ka < kb)


class Poly:
    """Sparse homogeneous polynomial: dict from packed monomial to nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
            return
        p = ring.p
        clean = {}
        for m, c in terms.items():
            c %= p
            if c:
                clean[m] = c
        degs = {ring.mono_deg(m) for m in clean}
        if len(degs) > 1:
            raise DegreeError(f"inhomogeneous polynomial (degrees {sorted(degs)})")
        self.terms = clean

    # ---- basic queries ----

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return self.ring.mono_deg(next(iter(self.terms)))

    def lead_monomial(self) -> int:
        return max(self.terms)

    def lead_coeff(self) -> int:
        return self.terms[max(self.terms)]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lead_coeff())
        p = self.ring.p
        return Poly(self.ring, {m: (c * inv) % p for m, c in self.terms.items()}, _trusted=True)

    # ---- arithmetic ----

    def __add__(self, other: "Poly") -> "Poly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeError("adding homogeneous polynomials of different degrees")
        p = self.ring.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = (terms.get(m, 0) + c) % p
            if s:
                terms[m] = s
            elif m in terms:
                del terms[m]
        return Poly(self.ring, terms, _trusted=True)

    def __neg__(self) -> "Poly":
        p = self.ring.p
        return Poly(self.ring, {m: p - c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        ring = self.ring
        p = ring.p
        one = ring.mono_one
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out = {}
        for ms, cs in small.items():
            shift = ms - one
            for mb, cb in big.items():
                m = mb + shift
                v = (out.get(m, 0) + cs * cb) % p
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return Poly(ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise UsageError("negative polynomial power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {m: (v * c) % p for m, v in self.terms.items()}, _trusted=True)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def derivative(self, i: int) -> "Poly":
        """Partial derivative with respect to x_i."""
        ring = self.ring
        p = ring.p
        out = {}
        for m, c in self.terms.items():
            exps = ring.mono_exps(m)
            e = exps[i]
            if e == 0:
                continue
            v = (c * e) % p
            if not v:
                continue
            new = list(exps)
            new[i] = e - 1
            out[ring.mono(new)] = v
        return Poly(ring, out, _trusted=True)

    def divide_exact(self, g: "Poly") -> "Poly":
        """Exact division by g; raises if g does not divide self."""
        ring = self.ring
        p = ring.p
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        glm = g.lead_monomial()
        ginv = ring.field.inv(g.lead_coeff())
        rem = dict(self.terms)
        quo = {}
        while rem:
            t = max(rem)
            q = ring.mono_div(t, glm)
            if q is None:
                raise UsageError("polynomial division is not exact")
            c = (rem[t] * ginv) % p
            quo[q] = c
            shift = q - ring.mono_one
            for m, cg in g.terms.items():
                mm = m + shift
                v = (rem.get(mm, 0) - c * cg) % p
                if v:
                    rem[mm] = v
                elif mm in rem:
                    del rem[mm]
        return Poly(ring, quo, _trusted=True)

    # ---- text form ----

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = ring.mono_str(m)
            if mono == "1":
                piece = str(c)
            elif c == 1:
                piece = mono
            else:
                piece = f"{c}*{mono}"
            parts.append(piece)
        return " + ".join(parts)

    __repr__ = __str__


_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z_]\w*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse `3*x0^2*x4 - x1*x2*x3` style input; coefficients reduced mod p."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos)
        tokens.append((m.lastindex, m.group(m.lastindex), pos))
        pos = m.end()

    var_index = {n: i for i, n in enumerate(ring.names)}
    result = ring.zero()
    i = 0
    n = len(tokens)

    def parse_term(sign):
        nonlocal i
        coeff = 1
        exps = [0] * ring.nvars
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val, col = tokens[i]
            if kind == 1:  # integer
                coeff *= int(val)
                i += 1
                saw_factor = True
            elif kind == 2:  # variable
                if val not in var_index:
                    raise ParseError(f"unknown variable {val!r}", column=col)
                e = 1
                i += 1
                if i < n and tokens[i][0] == 3:  # ^
                    i += 1
                    if i >= n or tokens[i][0] != 1:
                        raise ParseError("expected integer exponent", column=col)
                    e = int(tokens[i][1])
                    i += 1
                exps[var_index[val]] += e
                saw_factor = True
            else:
                break
            expect_factor = False
            if i < n and tokens[i][0] == 4:  # *
                i += 1
                expect_factor = True
        if not saw_factor or expect_factor:
            col = tokens[i][2] if i < n else len(text)
            raise ParseError("expected a term", column=col)
        return ring.monomial(exps, sign * coeff)

    if n == 0:
        raise ParseError("empty polynomial")
    # leading sign
    sign = 1
    first = True
    while i < n:
        kind, val, col = tokens[i]
        if kind == 5:
            if first and i == 0:
                raise ParseError("leading '+' not allowed", column=col)
            i += 1
            sign = 1
        elif kind == 6:
            i += 1
            sign = -1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {val!r}", column=col)
        term = parse_term(sign)
        if not result.is_zero() and not term.is_zero() and result.degree != term.degree:
            raise ParseError("inhomogeneous polynomial")
        result = result + term
        sign = 1
        first = False
    return result
