"""Round-trip tests for the line-oriented ideal and matrix file formats."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from p4surf.errors import ParseError, ShapeError
from p4surf.io import (format_ideal, format_matrix, parse_ideal, parse_matrix,
                       read_ideal, read_matrix, write_ideal, write_matrix)
from p4surf.modules import FreeModule, GradedMatrix
from p4surf.ring import Poly, PolyRing

ring = PolyRing(p=31991, nvars=5)


def poly_strategy(degree):
    monos = ring.monomials_of_degree(degree)

    def build(pairs):
        return Poly(ring, {monos[i % len(monos)]: c
                           for i, c in pairs})
    return st.lists(
        st.tuples(st.integers(min_value=0, max_value=len(monos) - 1),
                  st.integers(min_value=1, max_value=ring.p - 1)),
        min_size=0, max_size=6).map(build)


class TestIdealFiles:
    @given(st.lists(poly_strategy(3), min_size=1, max_size=5))
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, gens):
        gens = [g for g in gens if not g.is_zero()]
        text = format_ideal(gens)
        assert parse_ideal(ring, text) == gens

    def test_comments_and_blanks_ignored(self):
        text = "# heading\n\nx0*x1 - x2^2  # trailing\n\n"
        gens = parse_ideal(ring, text)
        assert len(gens) == 1
        assert gens[0] == ring.parse("x0*x1 - x2^2")

    def test_file_round_trip(self, tmp_path):
        gens = [ring.parse("x0^2 + 3*x1*x2"), ring.parse("x3*x4")]
        path = tmp_path / "ideal.txt"
        write_ideal(path, gens)
        assert read_ideal(ring, path) == gens

    def test_parse_error_carries_line(self):
        with pytest.raises(ParseError) as err:
            parse_ideal(ring, "x0\nx1 + bogus\n")
        assert err.value.line == 2


class TestMatrixFiles:
    @given(st.lists(poly_strategy(1), min_size=4, max_size=4),
           st.lists(poly_strategy(2), min_size=2, max_size=2))
    @settings(max_examples=50, deadline=None)
    def test_round_trip(self, lin, quad):
        target = FreeModule(ring, (0, 0))
        source = FreeModule(ring, (1, 1, 2))
        rows = [[lin[0], lin[1], quad[0]], [lin[2], lin[3], quad[1]]]
        mat = GradedMatrix.from_rows(target, source, rows)
        back = parse_matrix(ring, format_matrix(mat))
        assert back.target == mat.target
        assert back.source == mat.source
        for i in range(2):
            for j in range(3):
                assert back.entry(i, j) == mat.entry(i, j)

    def test_file_round_trip(self, tmp_path):
        target = FreeModule(ring, (0,))
        source = FreeModule(ring, (1, 1))
        mat = GradedMatrix.from_rows(
            target, source, [[ring.parse("x0 - x4"), ring.parse("2*x2")]])
        path = tmp_path / "mat.txt"
        write_matrix(path, mat)
        back = read_matrix(ring, path)
        assert format_matrix(back) == format_matrix(mat)

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_matrix(ring, "cols 1\nrows 0\nx0\n")

    def test_wrong_row_count(self):
        with pytest.raises(ShapeError):
            parse_matrix(ring, "rows 0,0\ncols 1\nx0\n")

    def test_wrong_entry_count(self):
        with pytest.raises(ParseError):
            parse_matrix(ring, "rows 0\ncols 1,1\nx0\n")

    def test_bad_twists(self):
        with pytest.raises(ParseError):
            parse_matrix(ring, "rows a,b\ncols 1\nx0\n")
