"""Hilbert functions, series and polynomials; numerical invariants of schemes.

All series arithmetic is exact: numerators are integer coefficient lists and
Hilbert polynomials carry Fraction coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DimensionError
from .groebner import GroebnerBasis
from .ring import PolyRing


# ---- Hilbert function by standard monomial counting ----


def lead_exponents_by_pos(gb: GroebnerBasis):
    ring = gb.order.ring
    out = {}
    for e in gb.elements:
        pos, mono = gb.order.decode(max(e))
        out.setdefault(pos, []).append(ring.mono_exps(mono))
    return out


def hilbert_function(gb: GroebnerBasis, m: int) -> int:
    """dim of the degree-m piece of the cokernel presented by the GB columns.

    For an ideal GB this is dim (S/I)_m.
    """
    ring = gb.order.ring
    n = ring.nvars
    leads = lead_exponents_by_pos(gb)
    total = 0
    for pos, twist in enumerate(gb.order.twists):
        d = m - twist
        if d < 0:
            continue
        exps = leads.get(pos, [])
        count = 0
        for mono in ring.monomials_of_degree(d):
            me = ring.mono_exps(mono)
            if not any(all(me[k] >= le[k] for k in range(n)) for le in exps):
                count += 1
        total += count
    return total


def ideal_dim_in_degree(gb: GroebnerBasis, m: int) -> int:
    """dim I_m for an ideal GB (rank-one, twist 0)."""
    if m < 0:
        return 0
    ring = gb.order.ring
    return comb(m + ring.nvars - 1, ring.nvars - 1) - hilbert_function(gb, m)


# ---- series numerator by monomial-ideal recursion ----


def _minimalize(exps):
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    kept = []
    for e in exps:
        if not any(all(e[k] >= f[k] for k in range(len(e))) for f in kept):
            kept.append(e)
    return kept


def _poly_add(a, b, sign=1):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += sign * c
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return out


def _shift(a, k):
    return [0] * k + list(a)


def monomial_numerator(exps, nvars: int):
    """Numerator of the Hilbert series of S/(monomial ideal) over (1-t)^nvars.

    ``exps`` lists exponent tuples of the generators.  Pivot recursion:
    N(I) = N(I + (x^e)) + t^e N(I : x^e).
    """
    exps = _minimalize([tuple(e) for e in exps])
    if not exps:
        return [1]
    if any(sum(e) == 0 for e in exps):
        return []
    # variables appearing in more than one generator force recursion
    support = [sum(1 for e in exps if e[k] > 0) for k in range(nvars)]
    pivot_var = max(range(nvars), key=lambda k: support[k])
    if support[pivot_var] <= 1:
        # generators have pairwise disjoint support in distinct variables:
        # only possible when each is a pure power, so the ideal is a
        # complete intersection of pure powers
        out = [1]
        for e in exps:
            out = _poly_mul(out, _poly_add([1], _shift([1], sum(e)), sign=-1))
        return out
    pe = min(e[pivot_var] for e in exps if e[pivot_var] > 0)
    pivot = tuple(pe if k == pivot_var else 0 for k in range(nvars))
    plus = exps + [pivot]
    colon = [tuple(max(e[k] - pivot[k], 0) for k in range(nvars)) for e in exps]
    return _poly_add(monomial_numerator(plus, nvars),
                     _shift(monomial_numerator(colon, nvars), pe))


def series_numerator(gb: GroebnerBasis):
    """Hilbert series numerator of the cokernel presented by the GB columns."""
    ring = gb.order.ring
    leads = lead_exponents_by_pos(gb)
    out = []
    for pos, twist in enumerate(gb.order.twists):
        n = monomial_numerator(leads.get(pos, []), ring.nvars)
        out = _poly_add(out, _shift(n, twist) if twist >= 0 else _neg_shift(n, twist))
    return out


def _neg_shift(a, k):
    # negative twists shift the numerator left; pad by multiplying through
    # is impossible for plain lists, so track an offset instead
    raise DimensionError("negative twists need series_numerator_offset")


def series_numerator_offset(gb: GroebnerBasis):
    """Like series_numerator but returns (coeffs, offset): N(t) = t^offset * coeffs."""
    ring = gb.order.ring
    leads = lead_exponents_by_pos(gb)
    offset = min((t for t in gb.order.twists), default=0)
    offset = min(offset, 0)
    out = []
    for pos, twist in enumerate(gb.order.twists):
        n = monomial_numerator(leads.get(pos, []), ring.nvars)
        out = _poly_add(out, _shift(n, twist - offset))
    return out, offset


# ---- Hilbert polynomial and invariants ----


@dataclass(frozen=True)
class HilbertData:
    """Numerical summary of a graded quotient S/I (or module cokernel)."""

    krull_dim: int          # Krull dimension of the quotient
    degree: int             # leading multiplicity (0 for the zero module)
    polynomial: tuple       # Fraction coefficients, ascending in m

    @property
    def projective_dim(self) -> int:
        return self.krull_dim - 1

    def value(self, m: int) -> Fraction:
        acc = Fraction(0)
        for k, c in enumerate(self.polynomial):
            acc += c * m ** k
        return acc


def hilbert_data_from_numerator(numer, nvars: int, offset: int = 0) -> HilbertData:
    coeffs = list(numer)
    strips = 0
    while coeffs and sum(coeffs) == 0:
        # divide by (1 - t)
        out = []
        acc = 0
        for c in coeffs[:-1]:
            acc += c
            out.append(acc)
        coeffs = out
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        strips += 1
    dim = nvars - strips
    if not coeffs:
        return HilbertData(0, 0, ())
    if dim <= 0:
        return HilbertData(max(dim, 0), 0, (Fraction(0),))
    degree = sum(coeffs)
    # P(m) = sum_k Q_k * C(m - k - offset + dim - 1, dim - 1)
    poly = [Fraction(0)] * dim
    for k, q in enumerate(coeffs):
        if q == 0:
            continue
        term = [Fraction(1)]
        for j in range(1, dim):
            term = _frac_mul_linear(term, Fraction(j - k - offset), Fraction(1))
        fact = Fraction(1)
        for j in range(1, dim):
            fact *= j
        for i, c in enumerate(term):
            poly[i] += q * c / fact
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return HilbertData(dim, degree, tuple(poly))


def _frac_mul_linear(poly, const, lin):
    """Multiply a Fraction-coefficient polynomial by (const + lin * m)."""
    out = [Fraction(0)] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i] += c * const
        out[i + 1] += c * lin
    return out


def hilbert_data(gb: GroebnerBasis) -> HilbertData:
    numer, offset = series_numerator_offset(gb)
    return hilbert_data_from_numerator(numer, gb.order.ring.nvars, offset)


@dataclass(frozen=True)
class SurfaceInvariants:
    degree: int
    sectional_genus: int
    chi: int                  # chi(O_X)

    def self_intersection_canonical(self) -> int:
        """K^2 for a smooth surface in P4, from the double point formula."""
        d, pi, chi = self.degree, self.sectional_genus, self.chi
        num = d * d - 5 * d - 10 * pi + 12 * chi + 10
        if num % 2:
            raise DimensionError("double point formula gives a non-integer K^2")
        return num // 2

    def hyperplane_dot_canonical(self) -> int:
        return 2 * self.sectional_genus - 2 - self.degree


@dataclass(frozen=True)
class CurveInvariants:
    degree: int
    arithmetic_genus: int


def surface_invariants(data: HilbertData) -> SurfaceInvariants:
    """Read (degree, sectional genus, chi(O)) off the Hilbert polynomial.

    P(m) = (d/2) m^2 + (d/2 - pi + 1) m + chi for a surface in P4.
    """
    if data.krull_dim != 3:
        raise DimensionError(f"expected a surface (Krull dim 3), got {data.krull_dim}")
    a = data.polynomial[2] if len(data.polynomial) > 2 else Fraction(0)
    b = data.polynomial[1] if len(data.polynomial) > 1 else Fraction(0)
    c = data.polynomial[0]
    d = 2 * a
    pi = a - b + 1
    if d.denominator != 1 or pi.denominator != 1 or c.denominator != 1:
        raise DimensionError("Hilbert polynomial is not that of a surface")
    return SurfaceInvariants(int(d), int(pi), int(c))


def curve_invariants(data: HilbertData) -> CurveInvariants:
    """P(m) = deg * m + 1 - p_a for a curve."""
    if data.krull_dim != 2:
        raise DimensionError(f"expected a curve (Krull dim 2), got {data.krull_dim}")
    b = data.polynomial[1] if len(data.polynomial) > 1 else Fraction(0)
    c = data.polynomial[0]
    if b.denominator != 1 or c.denominator != 1:
        raise DimensionError("Hilbert polynomial is not that of a curve")
    return CurveInvariants(int(b), int(1 - c))


def genus_of_union(ga: int, gb_: int, meet: int) -> int:
    """Arithmetic genus of a union from the pieces and their intersection length."""
    return ga + gb_ + meet - 1


def ideal_sheaf_chi(inv: SurfaceInvariants, m: int, q: int, pg: int) -> int:
    """chi(I_X(m)) in P4 for a smooth surface with irregularity q and genus pg."""
    d, pi = inv.degree, inv.sectional_genus
    return (comb(m + 4, 4) - comb(m + 1, 2) * d + m * (pi - 1)
            - 1 + q - pg)


def speciality(inv: SurfaceInvariants, q: int, pg: int) -> int:
    """Speciality s = h1(O_X(1)) of a surface in P4 via Riemann-Roch."""
    return inv.sectional_genus - inv.degree + 3 + q - pg
