"""Groebner engine checked against Macaulay-matrix linear algebra.

Ideal membership is compared with a brute-force degreewise span computation
on random instances in at most 3 variables and degree at most 5; reduced
bases are checked to be canonical under generator shuffles and rescalings.
"""

import random

from p4surf.groebner import groebner_ideal, kernel_columns, syzygies_of_columns
from p4surf.idealops import Ideal
from p4surf.linalg import Echelon
from p4surf.modules import FreeModule, GradedMatrix
from p4surf.ring import Poly, PolyRing

P = 101
ring2 = PolyRing(p=P, nvars=2)
ring3 = PolyRing(p=P, nvars=3)


def random_poly(rng, ring, degree, terms=3):
    monos = ring.monomials_of_degree(degree)
    out = {}
    for _ in range(terms):
        out[rng.choice(monos)] = rng.randrange(1, ring.p)
    return Poly(ring, out)


def random_gens(rng, ring, count=None, max_deg=3):
    count = count or rng.randrange(2, 5)
    return [random_poly(rng, ring, rng.randrange(1, max_deg + 1))
            for _ in range(count)]


def degree_span(gens, ring, d):
    """Echelon basis of the degree-d piece of (gens), by Macaulay rows."""
    monos = ring.monomials_of_degree(d)
    idx = {m: i for i, m in enumerate(monos)}
    ech = Echelon(len(monos), ring.p)
    for f in gens:
        if f.is_zero() or f.degree > d:
            continue
        for m in ring.monomials_of_degree(d - f.degree):
            g = f * Poly(ring, {m: 1}, _trusted=True)
            row = [0] * len(monos)
            for mono, c in g.terms.items():
                row[idx[mono]] = c
            ech.insert(row)
    return ech


def poly_vector(f, ring, d):
    monos = ring.monomials_of_degree(d)
    idx = {m: i for i, m in enumerate(monos)}
    row = [0] * len(monos)
    for mono, c in f.terms.items():
        row[idx[mono]] = c
    return row


def oracle_contains(gens, ring, f):
    """Membership through the Macaulay matrix in f's degree."""
    from p4surf.linalg import in_row_space
    d = f.degree
    ech = degree_span(gens, ring, d)
    if ech.rank == 0:
        return f.is_zero()
    return in_row_space(ech.mat, poly_vector(f, ring, d),
                        len(ring.monomials_of_degree(d)), ring.p)


class TestMembershipOracle:
    def test_random_members_and_nonmembers(self):
        # 120 instances x 2 candidates, mixed 2- and 3-variable rings
        rng = random.Random(10)
        for k in range(120):
            ring = ring3 if k % 3 else ring2
            gens = random_gens(rng, ring)
            ideal = Ideal(ring, gens)
            # certain member: random combination of the generators
            d = max(g.degree for g in gens) + rng.randrange(0, 3)
            member = ring.zero()
            for g in gens:
                e = d - g.degree
                if e < 0:
                    continue
                member = member + g * random_poly(rng, ring, e, terms=2)
            if not member.is_zero():
                assert ideal.contains(member)
                assert oracle_contains(gens, ring, member)
            # random candidate of degree <= 5: both answers must agree
            cand = random_poly(rng, ring, rng.randrange(1, 6))
            assert ideal.contains(cand) == oracle_contains(gens, ring, cand)

    def test_normal_form_is_canonical_remainder(self):
        rng = random.Random(11)
        for _ in range(40):
            gens = random_gens(rng, ring3)
            ideal = Ideal(ring3, gens)
            f = random_poly(rng, ring3, rng.randrange(2, 5))
            nf = ideal.normal_form(f)
            assert ideal.contains(f - nf)
            assert ideal.contains(f) == nf.is_zero()


class TestCanonicality:
    def test_shuffled_and_rescaled_generators(self):
        # 125 ideals x 8 shuffles = 1000 comparisons
        rng = random.Random(12)
        for k in range(125):
            ring = ring3 if k % 2 else ring2
            gens = random_gens(rng, ring)
            reference = groebner_ideal(gens, ring)
            for _ in range(8):
                shuffled = gens[:]
                rng.shuffle(shuffled)
                shuffled = [g.scale(rng.randrange(1, ring.p)) for g in shuffled]
                assert groebner_ideal(shuffled, ring) == reference

    def test_gb_spans_same_degree_pieces(self):
        rng = random.Random(13)
        for _ in range(30):
            gens = random_gens(rng, ring3)
            gb = groebner_ideal(gens, ring3)
            gb_polys = [col[0] for col in gb.columns()]
            for d in range(1, 6):
                assert degree_span(gens, ring3, d).rank == \
                    degree_span(gb_polys, ring3, d).rank


class TestSyzygies:
    def test_syzygy_columns_annihilate(self):
        rng = random.Random(14)
        for _ in range(25):
            gens = random_gens(rng, ring3, count=3, max_deg=2)
            target = FreeModule(ring3, (0,))
            source = FreeModule(ring3, tuple(g.degree for g in gens))
            mat = GradedMatrix(target, source, [[g] for g in gens])
            syz = syzygies_of_columns(mat)
            assert mat.compose(syz).is_zero()

    def test_kernel_columns_annihilate_and_catch_koszul(self):
        rng = random.Random(15)
        for _ in range(25):
            f = random_poly(rng, ring3, 2)
            g = random_poly(rng, ring3, 2)
            target = FreeModule(ring3, (0,))
            source = FreeModule(ring3, (2, 2))
            mat = GradedMatrix(target, source, [[f], [g]])
            ker = kernel_columns(mat)
            assert mat.compose(ker).is_zero()
            if not f.is_zero() and not g.is_zero() and f.monic() != g.monic():
                # the Koszul relation (-g, f) must be reachable
                kos = GradedMatrix(source, FreeModule(ring3, (4,)),
                                   [[g.scale(P - 1), f]])
                assert mat.compose(kos).is_zero()
