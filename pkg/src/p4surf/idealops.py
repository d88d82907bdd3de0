"""Homogeneous ideal arithmetic: sums, intersections, quotients, saturation,
smoothness certificates, and extraction of an ideal from a rank-one module."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, DimensionError, UsageError
from .groebner import (GroebnerBasis, ModuleOrder, buchberger_vecs, groebner_ideal,
                       kernel_columns, minimal_generators, normal_form)
from .hilbert import hilbert_data, HilbertData
from .linalg import Echelon, rank as mat_rank
from .modules import FreeModule, GradedMatrix, GradedModule
from .ring import Poly, PolyRing


class Ideal:
    """Homogeneous ideal with a lazily computed, cached grevlex GB."""

    def __init__(self, ring: PolyRing, gens, cache_dir=None):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self.cache_dir = cache_dir
        self._gb = None
        self._hd = None

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_ideal(self.gens, ring=self.ring,
                                      cache_dir=self.cache_dir)
        return self._gb

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self.gb()).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, self.gb())

    def hilbert_data(self) -> HilbertData:
        if self._hd is None:
            self._hd = hilbert_data(self.gb())
        return self._hd

    def projective_dim(self) -> int:
        """Dimension of V(I) in P4 (-1 when empty)."""
        return self.hilbert_data().krull_dim - 1

    def degree(self) -> int:
        return self.hilbert_data().degree

    def minimal_gens(self):
        return minimal_generators(self.gens)

    def gens_of_degree(self, d: int):
        return [g for g in self.gens if g.degree == d]

    def is_one(self) -> bool:
        return any(not e.is_zero() and e.degree == 0
                   for col in (self.gb().columns()) for e in col)

    def same_ideal(self, other: "Ideal") -> bool:
        return self.gb() == other.gb()

    def __repr__(self):
        degs = sorted(g.degree for g in self.gens)
        return f"Ideal(p={self.ring.p}, gen degrees {degs})"


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return Ideal(a.ring, a.gens + b.gens, cache_dir=a.cache_dir)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """a ∩ b via elimination in S^2 on generators (g, 0) and (h, h)."""
    ring = a.ring
    order = ModuleOrder(ring, (0, 0), "pot")
    vecs = []
    for g in a.gens:
        vecs.append(order.vec_from_polys([g, ring.zero()]))
    for h in b.gens:
        vecs.append(order.vec_from_polys([h, h]))
    gb = buchberger_vecs(vecs, order)
    gens = []
    for col in gb.columns():
        if col[0].is_zero() and not col[1].is_zero():
            gens.append(col[1].monic())
    return Ideal(ring, gens, cache_dir=a.cache_dir)


def quotient_by_poly(a: Ideal, f: Poly) -> Ideal:
    """a : (f) = (a ∩ (f)) / f."""
    if f.is_zero():
        raise UsageError("cannot take a quotient by zero")
    meet = intersect(a, Ideal(a.ring, [f], cache_dir=a.cache_dir))
    gens = [g.divide_exact(f) for g in meet.gens]
    return Ideal(a.ring, gens, cache_dir=a.cache_dir)


def quotient(a: Ideal, b: Ideal) -> Ideal:
    """a : b as the intersection of the quotients by b's generators."""
    gens = [g for g in b.gens if not g.is_zero()]
    if not gens:
        raise UsageError("cannot take a quotient by the zero ideal")
    out = quotient_by_poly(a, gens[0])
    for h in gens[1:]:
        out = intersect(out, quotient_by_poly(a, h))
    return out


def saturate(a: Ideal, b: Ideal = None, max_rounds: int = 30) -> Ideal:
    """a : b^infinity; b defaults to the irrelevant ideal."""
    ring = a.ring
    if b is None:
        b = Ideal(ring, [ring.variable(i) for i in range(ring.nvars)],
                  cache_dir=a.cache_dir)
    current = a
    for _ in range(max_rounds):
        nxt = quotient(current, b)
        if nxt.gb() == current.gb():
            return current
        current = nxt
    raise ConstructionError("saturation did not stabilize")


def is_saturated(a: Ideal) -> bool:
    ring = a.ring
    irr = Ideal(ring, [ring.variable(i) for i in range(ring.nvars)],
                cache_dir=a.cache_dir)
    return quotient(a, irr).gb() == a.gb()


def random_element(a: Ideal, degree: int, rng: random.Random) -> Poly:
    """A random F_p-combination of monomial multiples of the generators."""
    ring = a.ring
    acc = ring.zero()
    for g in a.gens:
        if g.degree > degree:
            continue
        terms = {}
        for mono in ring.monomials_of_degree(degree - g.degree):
            c = rng.randrange(ring.p)
            if c:
                terms[mono] = c
        acc = acc + g * Poly(ring, terms)
    return acc


def degree_basis(a: Ideal, d: int):
    """A deterministic basis of the degree-d piece of the ideal."""
    ring = a.ring
    monos = list(ring.monomials_of_degree(d))
    index = {m: i for i, m in enumerate(monos)}
    ech = Echelon(len(monos), ring.p)
    out = []
    for col in a.gb().columns():
        g = col[0]
        if g.degree > d:
            continue
        for m in ring.monomials_of_degree(d - g.degree):
            h = g * Poly(ring, {m: 1}, _trusted=True)
            row = np.zeros(len(monos), dtype=np.int64)
            for mono, c in h.terms.items():
                row[index[mono]] = c
            if ech.insert(row):
                out.append(h)
    return out


def random_in_degree(a: Ideal, d: int, rng: random.Random) -> Poly:
    """A random element of the degree-d piece, uniform over the slice."""
    basis = degree_basis(a, d)
    acc = a.ring.zero()
    for h in basis:
        c = rng.randrange(a.ring.p)
        if c:
            acc = acc + h.scale(c)
    return acc


def module_to_ideal(module: GradedModule, cache_dir=None):
    """Present a rank-one torsion-free module as an ideal, up to twist.

    Computes Hom(M, S) as the kernel of the dual presentation and takes a
    kernel generator of minimal degree; its entries generate the image ideal.
    Returns (ideal, twist) where twist is the degree of the chosen map.
    """
    ker = kernel_columns(module.presentation.dual(), cache_dir=cache_dir)
    if ker.source.rank == 0:
        raise ConstructionError("module has no nonzero maps to S")
    degrees = ker.source.twists
    j = min(range(len(degrees)), key=lambda k: degrees[k])
    col = ker.cols[j]
    gens = [e for e in col if not e.is_zero()]
    ring = module.ring
    return Ideal(ring, [g.monic() for g in gens], cache_dir=cache_dir), degrees[j]


# ---- smoothness ----


@dataclass(frozen=True)
class SmoothnessCertificate:
    smooth: bool
    method: str            # "rank" (full Macaulay rank) or "saturation"
    witness_degree: int    # degree where emptiness was certified (-1 if singular)


def jacobian_minor_ideal(a: Ideal, codim: int = 2) -> Ideal:
    """a + the (codim x codim) minors of the Jacobian of its generators.

    Vanishing locus = singular points of V(a), assuming V(a) has pure
    codimension ``codim``.
    """
    ring = a.ring
    gens = a.minimal_gens()
    rows = [[g.derivative(k) for k in range(ring.nvars)] for g in gens]

    def det(ridx, cidx):
        if len(ridx) == 1:
            return rows[ridx[0]][cidx[0]]
        out = ring.zero()
        for t, i in enumerate(ridx):
            sub = det(ridx[:t] + ridx[t + 1:], cidx[1:])
            term = rows[i][cidx[0]] * sub
            out = out + term if t % 2 == 0 else out - term
        return out

    minors = []
    from itertools import combinations
    for ridx in combinations(range(len(gens)), codim):
        for cidx in combinations(range(ring.nvars), codim):
            m = det(list(ridx), list(cidx))
            if not m.is_zero():
                minors.append(m)
    return Ideal(ring, a.gens + minors, cache_dir=a.cache_dir)


def certify_empty(a: Ideal, rng: random.Random = None, max_degree: int = 14,
                  allow_saturation_fallback: bool = True) -> SmoothnessCertificate:
    """Certify V(a) = empty by exhibiting a degree m with a_m = S_m.

    Builds the degree-m multiplication matrix row-sampled for speed; a full
    rank certifies emptiness (rows only span a subspace of a_m, so full rank
    is sound).  Falls back to an exact saturation check when sampling fails.
    """
    ring = a.ring
    p = ring.p
    if rng is None:
        rng = random.Random(0)
    gens = [g for g in a.gens if not g.is_zero()]
    if not gens:
        raise UsageError("cannot certify emptiness of the zero ideal")
    mindeg = min(g.degree for g in gens)
    for m in range(mindeg, max_degree + 1):
        basis = ring.monomials_of_degree(m)
        index = {mono: k for k, mono in enumerate(basis)}
        ncols = len(basis)
        pool = []
        for gi, g in enumerate(gens):
            if g.degree > m:
                continue
            for mono in ring.monomials_of_degree(m - g.degree):
                pool.append((gi, mono))
        if len(pool) < ncols:
            continue
        rng.shuffle(pool)
        rows = []
        budget = min(len(pool), 3 * ncols)
        for gi, mono in pool[:budget]:
            row = np.zeros(ncols, dtype=np.int64)
            shift = mono - ring.mono_one
            for mm, c in gens[gi].terms.items():
                row[index[mm + shift]] = c
            rows.append(row)
        if mat_rank(rows, ncols, p) == ncols:
            return SmoothnessCertificate(True, "rank", m)
        if len(pool) > budget:
            rows = []
            for gi, mono in pool:
                row = np.zeros(ncols, dtype=np.int64)
                shift = mono - ring.mono_one
                for mm, c in gens[gi].terms.items():
                    row[index[mm + shift]] = c
                rows.append(row)
            if mat_rank(rows, ncols, p) == ncols:
                return SmoothnessCertificate(True, "rank", m)
    if not allow_saturation_fallback:
        return SmoothnessCertificate(False, "rank", -1)
    empty = a.hilbert_data().krull_dim == 0
    return SmoothnessCertificate(empty, "saturation", -1)


def smoothness_certificate(a: Ideal, codim: int = 2,
                           rng: random.Random = None) -> SmoothnessCertificate:
    """Smoothness of V(a): the Jacobian-minor locus must be empty."""
    sing = jacobian_minor_ideal(a, codim=codim)
    return certify_empty(sing, rng=rng)
