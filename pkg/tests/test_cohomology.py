"""Sheaf cohomology of ideal sheaves on small fixtures with known tables."""

from math import comb

from p4surf.cohomology import CohomologySheet, cohomology_table, hartshorne_rao
from p4surf.idealops import Ideal, intersect
from p4surf.ring import PolyRing

ring = PolyRing(p=31991, nvars=5)
x = [ring.variable(i) for i in range(5)]


def sheet_of(gens):
    return CohomologySheet(Ideal(ring, gens))


class TestPlane:
    def test_acm_table(self):
        sheet = sheet_of([x[3], x[4]])
        for m in range(-1, 6):
            assert sheet.h(1, m) == 0
            assert sheet.h(2, m) == 0
            expect0 = comb(m + 4, 4) - comb(m + 2, 2) if m >= 0 else 0
            assert sheet.h(0, m) == max(expect0, 0)

    def test_euler_equals_alternating_sum(self):
        sheet = sheet_of([x[3], x[4]])
        for m in range(-1, 6):
            alt = sum((-1) ** i * sheet.h(i, m) for i in range(5))
            assert sheet.euler(m) == alt

    def test_h3_is_serre_dual_tail(self):
        sheet = sheet_of([x[3], x[4]])
        # h^3 I(m) = h^2 O_plane(m) = h^0 O_plane(-m-3) by duality
        for m in range(-6, 0):
            assert sheet.h(3, m) == comb(-m - 1, 2)


class TestPoint:
    def test_table(self):
        sheet = sheet_of([x[0], x[1], x[2], x[3]])
        for m in range(0, 5):
            assert sheet.h(0, m) == comb(m + 4, 4) - 1
            assert sheet.h(1, m) == 0
            assert sheet.h(2, m) == 0


class TestTwoSkewLines:
    def gens(self):
        l1 = Ideal(ring, [x[0], x[1], x[2]])
        l2 = Ideal(ring, [x[2], x[3], x[4]])
        return intersect(l1, l2)

    def test_rao_module_is_one_dimensional(self):
        rao = hartshorne_rao(self.gens(), index=1, window=(-3, 5))
        assert rao.dims == {0: 1}
        assert rao.monogeneous

    def test_cohomology_values(self):
        sheet = CohomologySheet(self.gens())
        assert sheet.h(1, 0) == 1
        assert sheet.h(1, 1) == 0
        assert sheet.h(0, 1) == 1   # the two lines span a hyperplane
        assert sheet.h(0, 2) == 9   # 5 reducible + 4 quadrics inside the P3


class TestTwistedCubicInHyperplane:
    def test_acm_rao_vanishes(self):
        gens = [x[4], x[0] * x[2] - x[1] * x[1], x[0] * x[3] - x[1] * x[2],
                x[1] * x[3] - x[2] * x[2]]
        rao = hartshorne_rao(Ideal(ring, gens), index=1, window=(-3, 6))
        assert rao.dims == {}
        sheet = sheet_of(gens)
        assert sheet.h(0, 1) == 1
        assert sheet.h(0, 2) == 3 + 5  # three quadrics plus x4 * linears


class TestTableObject:
    def test_table_matches_sheet_and_serializes(self):
        ideal = Ideal(ring, [x[3], x[4]])
        sheet = CohomologySheet(ideal)
        table = cohomology_table(ideal, -1, 3, sheet=sheet)
        for m in range(-1, 4):
            for i in range(5):
                assert table.h(i, m) == sheet.h(i, m)
        text = table.render()
        assert "h^0" in text and "h^4" in text
        js = table.to_json()
        assert js
