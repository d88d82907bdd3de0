"""Liaison construction of a degree-12 irregular elliptic surface in P4.

The surface is reached through two links.  A degenerate cubic scroll U0
(three planes through a line L) together with a cubic surface U1 in a
hyperplane H0 is linked (4, 4) to a smooth degree-10 surface T.  The
hyperplane section T cap H0 splits as C1 cup D with D an elliptic quartic
curve; C1 moves in a pencil of cubic surfaces inside H0, and a general
smooth member X0 of that pencil meets T exactly along C1.  The union
Y = T cup X0 is cut out by five quintics, and linking Y (5, 5) produces
the surface.

Every numerical claim along the way is recorded as an expected-versus-
computed assertion, including an explicit configuration over F_p whose
five distinguished quartics span the (4, 4) linkage system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cohomology import CohomologySheet, cohomology_table
from .errors import ConstructionError
from .hilbert import curve_invariants, genus_of_union, surface_invariants
from .idealops import (Ideal, degree_basis, ideal_sum, intersect, is_saturated,
                       quotient, random_in_degree, saturate,
                       smoothness_certificate)
from .linalg import Echelon
from .monad import (BETTI_SURFACE, SURFACE_INVARIANTS, SURFACE_PG_Q_K2_S,
                    ideal_resolution)
from .report import ConstructionReport
from .ring import Poly, PolyRing

import numpy as np


@dataclass
class LiaisonConfiguration:
    """The linear-algebra input data of the construction."""

    hyperplane: Poly         # h0 cutting H0
    line_forms: list         # (h0, h1, h2) cutting the line L
    scroll_quadrics: list    # Q1, Q2, Q3 generating the three-plane scroll U0
    curve_quadrics: list     # q1, q2 with D = V(h0, q1, q2)
    cubic: Poly              # f with U1 = V(h0, f), f in (q1, q2) and in I_L


@dataclass
class LiaisonArtifacts:
    ring: PolyRing
    config: LiaisonConfiguration
    line: Ideal
    scroll: Ideal            # U0
    cubic_surface: Ideal     # U1
    quartic_curve: Ideal     # D
    linked_ten: Ideal        # T
    conics: Ideal            # C1
    pencil_member: Ideal     # X0
    union: Ideal             # Y = T cup X0
    ideal: Ideal             # the final surface
    resolution: object
    sheet: CohomologySheet


def example_configuration(ring: PolyRing) -> LiaisonConfiguration:
    """The explicit configuration whose distinguished quartics are checked."""
    x = [ring.variable(i) for i in range(5)]
    h0 = x[1]
    m1, m2, m3 = x[1] - x[4], x[4] - x[0], x[1] + x[0]
    q1 = x[4] * x[0] - x[2] * x[3]
    q2 = x[2] * x[2] + x[3] * x[3] + x[4] * x[4]
    f = q1 * x[0] + q2 * x[4]
    return LiaisonConfiguration(
        hyperplane=h0,
        line_forms=[x[0], x[1], x[4]],
        scroll_quadrics=[m1 * m2, m2 * m3, m3 * m1],
        curve_quadrics=[q1, q2],
        cubic=f,
    )


def distinguished_quartics(ring: PolyRing):
    """Five quartics that must span the (4, 4) linkage system of the
    example configuration."""
    x = [ring.variable(i) for i in range(5)]
    h0 = x[1]
    m1, m2, m3 = x[1] - x[4], x[4] - x[0], x[1] + x[0]
    quad1, quad2, quad3 = m1 * m2, m2 * m3, m3 * m1
    q1 = x[4] * x[0] - x[2] * x[3]
    q2 = x[2] * x[2] + x[3] * x[3] + x[4] * x[4]
    h0sq = h0 * h0
    a = x[1] * x[1] - x[4] * x[4]
    g1 = a * h0sq
    g2 = (quad3 - a) * h0sq
    g3 = (h0sq * q2 - (x[0] * x[4] + x[1] * x[4]) * quad1
          + (x[1] * x[4] - x[4] * x[4] - q1) * quad2
          - q2 * quad3 - x[4] * x[4] * q2)
    g4 = (a - quad2 - quad3) * h0sq
    g5 = (q2 * h0sq + (x[4] * x[4] - x[1] * x[4]) * quad2
          + (x[4] * x[4] - x[2] * x[3]) * quad3 - x[4] * x[4] * q2)
    return [g1, g2, g3, g4, g5]


def random_configuration(ring: PolyRing, rng: random.Random) -> LiaisonConfiguration:
    """A random configuration with the same incidence pattern."""
    def lin():
        return ring.linear_form([rng.randrange(ring.p) for _ in range(5)])

    def quad():
        terms = {}
        for mono in ring.monomials_of_degree(2):
            c = rng.randrange(ring.p)
            if c:
                terms[mono] = c
        return Poly(ring, terms)

    def in_span(forms):
        acc = ring.zero()
        for g in forms:
            c = rng.randrange(ring.p)
            if c:
                acc = acc + g.scale(c)
        return acc

    h0, h1, h2 = lin(), lin(), lin()
    m = [in_span([h0, h1, h2]) for _ in range(3)]
    q1, q2 = quad(), quad()
    f = q1 * in_span([h0, h1, h2]) + q2 * in_span([h0, h1, h2])
    return LiaisonConfiguration(
        hyperplane=h0,
        line_forms=[h0, h1, h2],
        scroll_quadrics=[m[0] * m[1], m[1] * m[2], m[2] * m[0]],
        curve_quadrics=[q1, q2],
        cubic=f,
    )


def _configuration_ok(ring, cfg, cache_dir):
    """Build the configuration ideals and validate the incidence pattern."""
    line = Ideal(ring, cfg.line_forms, cache_dir=cache_dir)
    scroll = Ideal(ring, cfg.scroll_quadrics, cache_dir=cache_dir)
    cubic = Ideal(ring, [cfg.hyperplane, cfg.cubic], cache_dir=cache_dir)
    curve = Ideal(ring, [cfg.hyperplane] + cfg.curve_quadrics,
                  cache_dir=cache_dir)
    double = Ideal(ring, [cfg.hyperplane * cfg.hyperplane] + cfg.curve_quadrics,
                   cache_dir=cache_dir)
    hl = line.hilbert_data()
    if (hl.krull_dim, hl.degree) != (2, 1):
        return None
    hs = scroll.hilbert_data()
    if (hs.krull_dim, hs.degree) != (3, 3):
        return None
    hc = cubic.hilbert_data()
    if (hc.krull_dim, hc.degree) != (3, 3):
        return None
    hd = curve.hilbert_data()
    if (hd.krull_dim, hd.degree) != (2, 4):
        return None
    if curve_invariants(hd).arithmetic_genus != 1:
        return None
    # D misses L; the double structure sticks out of U1 (h0 is not in its ideal)
    if not saturate(ideal_sum(curve, line)).is_one():
        return None
    if double.contains(cfg.hyperplane):
        return None
    return line, scroll, cubic, curve, double


def _span_dim(polys, ring: PolyRing, d: int):
    monos = list(ring.monomials_of_degree(d))
    index = {m: i for i, m in enumerate(monos)}
    ech = Echelon(len(monos), ring.p)
    count = 0
    for f in polys:
        row = np.zeros(len(monos), dtype=np.int64)
        for mono, c in f.terms.items():
            row[index[mono]] = c
        if ech.insert(row):
            count += 1
    return count


def liaison_pipeline(seed: int = 1, char: int = 31991, cache_dir=None,
                     example: bool = False, max_retries: int = 8):
    """Run the two-step liaison construction; returns (artifacts, report)."""
    ring = PolyRing(p=char, nvars=5)
    pipeline = "liaison-example" if example else "liaison"
    report = ConstructionReport(pipeline, seed, char)
    rng_master = random.Random(seed)

    with report.stage("configuration") as st:
        for attempt in range(max_retries):
            draw_seed = rng_master.randrange(1 << 62)
            rng = random.Random(draw_seed)
            cfg = (example_configuration(ring) if example
                   else random_configuration(ring, rng))
            built = _configuration_ok(ring, cfg, cache_dir)
            if built is not None:
                break
            if example:
                raise ConstructionError("explicit configuration is degenerate")
            report.record_retry("configuration", draw_seed, "degenerate configuration")
        else:
            raise ConstructionError("no valid configuration found")
        line, scroll, cubic, curve, double = built
        st.check("line (dim, degree)", (1, 1),
                 (line.projective_dim(), line.degree()))
        st.check("three-plane scroll (dim, degree)", (2, 3),
                 (scroll.projective_dim(), scroll.degree()))
        st.check("cubic surface (dim, degree)", (2, 3),
                 (cubic.projective_dim(), cubic.degree()))
        inv_d = curve_invariants(curve.hilbert_data())
        st.check("elliptic quartic curve (degree, genus)", (4, 1),
                 (inv_d.degree, inv_d.arithmetic_genus))
        st.check("curve misses the line", True,
                 saturate(ideal_sum(curve, line)).is_one())
        st.check("curve lies on the cubic surface", True,
                 curve.contains_ideal(cubic))
        st.check("double structure leaves the cubic surface", False,
                 double.contains(cfg.hyperplane))

    with report.stage("quartic-system") as st:
        scroll_curve = saturate(intersect(scroll, curve))
        st.check("cubics through scroll and curve", 3,
                 len(degree_basis(scroll_curve, 3)))
        big = saturate(intersect(intersect(cubic, scroll), double))
        quartics = degree_basis(big, 4)
        st.check("quartics through the full linkage scheme", 5, len(quartics))
        if example:
            special = distinguished_quartics(ring)
            st.check("distinguished quartics lie in the system", True,
                     all(big.contains(g) for g in special))
            st.check("distinguished quartics span the system", 5,
                     _span_dim(special, ring, 4))

    union_u = saturate(intersect(scroll, cubic))
    with report.stage("first-link") as st:
        for attempt in range(max_retries):
            draw_seed = rng_master.randrange(1 << 62)
            rng = random.Random(draw_seed)
            f1 = random_in_degree(big, 4, rng)
            f2 = random_in_degree(big, 4, rng)
            ci = Ideal(ring, [f1, f2], cache_dir=cache_dir)
            linked = saturate(quotient(ci, union_u))
            hd = linked.hilbert_data()
            if hd.krull_dim != 3:
                report.record_retry("first-link", draw_seed, "wrong dimension")
                continue
            inv_t = surface_invariants(hd)
            if (inv_t.degree, inv_t.sectional_genus, inv_t.chi) != (10, 10, 4):
                report.record_retry("first-link", draw_seed, "wrong invariants")
                continue
            cert = smoothness_certificate(linked, rng=random.Random(draw_seed))
            if not cert.smooth:
                report.record_retry("first-link", draw_seed, "singular link")
                continue
            break
        else:
            raise ConstructionError("no good quartic pencil found")
        st.check("linked surface (degree, genus, chi)", (10, 10, 4),
                 (inv_t.degree, inv_t.sectional_genus, inv_t.chi))
        st.check("linked surface smooth over F_p", True, cert.smooth)
        st.check("linked surface contains the curve", True,
                 curve.contains_ideal(linked))
        inv_u = surface_invariants(union_u.hilbert_data())
        st.check("linkage degree sum", 16, inv_u.degree + inv_t.degree)
        secant = saturate(ideal_sum(linked, line))
        st.check("line is a 6-secant", (1, 6),
                 (secant.hilbert_data().krull_dim, secant.degree()))
        tsheet = CohomologySheet(linked, cache_dir=cache_dir)
        st.check("h^0 I_T(4)", 3, tsheet.h(0, 4))
        st.check("h^1 I_T(4)", 1, tsheet.h(1, 4))
        st.check("h^1 I_T(3)", 2, tsheet.h(1, 3))

    with report.stage("hyperplane-section") as st:
        section = saturate(ideal_sum(
            linked, Ideal(ring, [cfg.hyperplane], cache_dir=cache_dir)))
        inv_c = curve_invariants(section.hilbert_data())
        st.check("hyperplane section (degree, genus)", (10, 10),
                 (inv_c.degree, inv_c.arithmetic_genus))
        conics = quotient(section, curve)
        inv_c1 = curve_invariants(conics.hilbert_data())
        st.check("residual conics (degree, genus)", (6, -2),
                 (inv_c1.degree, inv_c1.arithmetic_genus))
        meet = saturate(ideal_sum(conics, curve))
        st.check("conics meet the curve in 12 points", (1, 12),
                 (meet.hilbert_data().krull_dim, meet.degree()))
        st.check("union genus formula", inv_c.arithmetic_genus,
                 genus_of_union(inv_c1.arithmetic_genus,
                                inv_d.arithmetic_genus, meet.degree()))

    with report.stage("cubic-pencil") as st:
        st.check("cubics through the conics form a pencil", 2,
                 len(degree_basis(conics, 3)) - 15)
        for attempt in range(max_retries):
            draw_seed = rng_master.randrange(1 << 62)
            rng = random.Random(draw_seed)
            member = saturate(Ideal(
                ring, [cfg.hyperplane, random_in_degree(conics, 3, rng)],
                cache_dir=cache_dir))
            hd = member.hilbert_data()
            if (hd.krull_dim, hd.degree) != (3, 3):
                report.record_retry("cubic-pencil", draw_seed, "degenerate member")
                continue
            if member.same_ideal(cubic):
                report.record_retry("cubic-pencil", draw_seed, "hit the given cubic")
                continue
            if curve.contains_ideal(member):
                report.record_retry("cubic-pencil", draw_seed, "member contains the curve")
                continue
            cert0 = smoothness_certificate(member, rng=random.Random(draw_seed))
            if not cert0.smooth:
                report.record_retry("cubic-pencil", draw_seed, "singular member")
                continue
            break
        else:
            raise ConstructionError("no good pencil member found")
        st.check("pencil member smooth over F_p", True, cert0.smooth)
        st.check("member meets the link exactly in the conics", True,
                 saturate(ideal_sum(linked, member)).same_ideal(conics))
        st.check("member meets the curve where the conics do", True,
                 saturate(ideal_sum(member, curve)).same_ideal(meet))

    with report.stage("surface-union") as st:
        union_y = intersect(linked, member)
        inv_y = surface_invariants(union_y.hilbert_data())
        st.check("union degree", 13, inv_y.degree)
        st.check("h^0 I_Y(4)", 0, len(degree_basis(union_y, 4)))
        quintics = degree_basis(union_y, 5)
        st.check("h^0 I_Y(5)", 5, len(quintics))
        st.check("union cut out by its five quintics", True,
                 saturate(Ideal(ring, quintics,
                                cache_dir=cache_dir)).same_ideal(union_y))
        # restriction to a general hyperplane through L but not through X0
        for attempt in range(max_retries):
            draw_seed = rng_master.randrange(1 << 62)
            rng = random.Random(draw_seed)
            h = (cfg.line_forms[1].scale(rng.randrange(1, ring.p))
                 + cfg.line_forms[2].scale(rng.randrange(1, ring.p))
                 + cfg.hyperplane.scale(rng.randrange(ring.p)))
            if not member.contains(h):
                break
            report.record_retry("surface-union", draw_seed, "hyperplane contains the member")
        else:
            raise ConstructionError("no transverse hyperplane through the line")
        sliced = saturate(ideal_sum(
            union_y, Ideal(ring, [h], cache_dir=cache_dir)))
        st.check("restricted quintics through the hyperplane section", 7,
                 len(degree_basis(sliced, 5)) - 70)
        st.check("restricted quadrics through the quartic curve", 2,
                 len(degree_basis(curve, 2)) - 5)

    with report.stage("second-link") as st:
        for attempt in range(max_retries):
            draw_seed = rng_master.randrange(1 << 62)
            rng = random.Random(draw_seed)
            g1 = random_in_degree(union_y, 5, rng)
            g2 = random_in_degree(union_y, 5, rng)
            ci = Ideal(ring, [g1, g2], cache_dir=cache_dir)
            surf = saturate(quotient(ci, union_y))
            hd = surf.hilbert_data()
            if hd.krull_dim != 3:
                report.record_retry("second-link", draw_seed, "wrong dimension")
                continue
            inv_x = surface_invariants(hd)
            if (inv_x.degree, inv_x.sectional_genus,
                    inv_x.chi) != SURFACE_INVARIANTS:
                report.record_retry("second-link", draw_seed, "wrong invariants")
                continue
            break
        else:
            raise ConstructionError("no good quintic pencil found")
        st.check("surface (degree, genus, chi)", SURFACE_INVARIANTS,
                 (inv_x.degree, inv_x.sectional_genus, inv_x.chi))
        cert_x = smoothness_certificate(surf, rng=random.Random(seed))
        st.check("surface smooth over F_p", True, cert_x.smooth)
        st.check("saturated", True, is_saturated(surf))
        st.check("linkage degree sum", 25, inv_y.degree + inv_x.degree)
        st.check("linkage genus difference",
                 (5 + 5 - 4) * (inv_y.degree - inv_x.degree) // 2,
                 inv_y.sectional_genus - inv_x.sectional_genus)
        st.check("complete intersection quintics through the triple union", 2,
                 len(degree_basis(ci, 5)))
        st.check("surface misses the line", True,
                 saturate(ideal_sum(surf, line)).is_one())

    with report.stage("invariants") as st:
        res_x = ideal_resolution(surf, cache_dir=cache_dir)
        st.check("betti(S/I)", BETTI_SURFACE,
                 {k: v for k, v in res_x.betti_table().entries.items() if v})
        report.add_table("betti S/I", res_x.betti_table().render(),
                         res_x.betti_table().to_json())
        sheet = CohomologySheet(surf, cache_dir=cache_dir, resolution=res_x)
        table = cohomology_table(surf, -1, 5, sheet=sheet)
        report.add_table("cohomology of the ideal sheaf", table.render(),
                         table.to_json())
        st.check("h^0 I_X(5)", 5, table.h(0, 5))
        pg = table.h(3, 0)
        q = table.h(2, 0)
        s = table.h(2, 1)
        k2 = inv_x.self_intersection_canonical()
        st.check("(p_g, q, K^2, s)", SURFACE_PG_Q_K2_S, (pg, q, k2, s))
        st.check("h^3 I(-1)", 15, table.h(3, -1))
        st.check("h^2 I at 0,1,2", (1, 2, 1),
                 tuple(table.h(2, m) for m in (0, 1, 2)))
        st.check("h^1 I at 2,3", (1, 4),
                 tuple(table.h(1, m) for m in (2, 3)))

    artifacts = LiaisonArtifacts(
        ring=ring, config=cfg, line=line, scroll=scroll, cubic_surface=cubic,
        quartic_curve=curve, linked_ten=linked, conics=conics,
        pencil_member=member, union=union_y, ideal=surf,
        resolution=res_x, sheet=sheet)
    return artifacts, report
