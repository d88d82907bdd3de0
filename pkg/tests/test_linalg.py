"""Dense F_p linear algebra checked against brute-force oracles."""

import random

import numpy as np
import pytest

from p4surf.linalg import (Echelon, in_row_space, nullspace, rank, rref,
                           solve_in_row_space)

P = 101


def random_matrix(rng, nrows, ncols, p=P):
    return np.array([[rng.randrange(p) for _ in range(ncols)]
                     for _ in range(nrows)], dtype=np.int64)


def span_size(rows, ncols, p):
    """Enumerate the row span of a small matrix (oracle, exponential)."""
    seen = {tuple([0] * ncols)}
    frontier = [np.zeros(ncols, dtype=np.int64)]
    basis = [r for r in rows if r.any()]
    for b in basis:
        new = []
        for v in frontier:
            for c in range(1, p):
                w = tuple((v + c * b) % p)
                if w not in seen:
                    seen.add(w)
                    new.append(np.array(w, dtype=np.int64))
        frontier.extend(new)
    return len(seen)


class TestRank:
    def test_against_span_enumeration(self):
        rng = random.Random(0)
        p = 3
        for _ in range(60):
            a = random_matrix(rng, rng.randrange(1, 4), rng.randrange(1, 4), p)
            r = rank(a, a.shape[1], p)
            assert span_size(list(a), a.shape[1], p) == p ** r

    def test_known_values(self):
        a = np.array([[1, 2, 3], [2, 4, 6], [0, 0, 1]], dtype=np.int64)
        assert rank(a, 3, P) == 2
        assert rank([], 5, P) == 0
        assert rank(np.eye(4, dtype=np.int64), 4, P) == 4

    def test_rank_of_product_bound(self):
        rng = random.Random(1)
        for _ in range(40):
            a = random_matrix(rng, 4, 5)
            b = random_matrix(rng, 5, 3)
            rab = rank((a @ b) % P, 3, P)
            assert rab <= min(rank(a, 5, P), rank(b, 3, P))


class TestRref:
    def test_idempotent_and_span_preserving(self):
        rng = random.Random(2)
        for _ in range(60):
            a = random_matrix(rng, rng.randrange(1, 6), rng.randrange(1, 6))
            r, pivots = rref(a, a.shape[1], P)
            r2, pivots2 = rref(r, a.shape[1], P)
            assert (r == r2).all() and pivots == pivots2
            # every original row reduces to zero against the rref rows
            for row in a:
                assert in_row_space(r, row, a.shape[1], P)
            # pivot columns of the rref are unit vectors
            for i, c in enumerate(pivots):
                col = r[:, c]
                assert col[i] == 1 and (np.delete(col, i) == 0).all()


class TestNullspace:
    def test_kernel_property_and_dimension(self):
        rng = random.Random(3)
        for _ in range(60):
            nrows = rng.randrange(1, 6)
            ncols = rng.randrange(1, 6)
            a = random_matrix(rng, nrows, ncols)
            ns = nullspace(a, ncols, P)
            assert ns.shape[0] == ncols - rank(a, ncols, P)
            if ns.shape[0]:
                assert ((a @ ns.T) % P == 0).all()
                assert rank(ns, ncols, P) == ns.shape[0]


class TestSolve:
    def test_round_trip(self):
        rng = random.Random(4)
        for _ in range(80):
            nrows = rng.randrange(1, 6)
            ncols = rng.randrange(1, 6)
            a = random_matrix(rng, nrows, ncols)
            coeffs = np.array([rng.randrange(P) for _ in range(nrows)])
            vec = (coeffs @ a) % P
            sol = solve_in_row_space(a, vec, ncols, P)
            assert sol is not None
            assert ((sol @ a) % P == vec % P).all()

    def test_infeasible(self):
        a = np.array([[1, 0, 0], [0, 1, 0]], dtype=np.int64)
        assert solve_in_row_space(a, [0, 0, 1], 3, P) is None
        assert not in_row_space(a, [1, 1, 1], 3, P)


class TestEchelon:
    def test_matches_batch_rank(self):
        rng = random.Random(5)
        for _ in range(40):
            ncols = rng.randrange(1, 7)
            rows = random_matrix(rng, rng.randrange(1, 8), ncols)
            ech = Echelon(ncols, P)
            grew = [ech.insert(r) for r in rows]
            assert ech.rank == rank(rows, ncols, P)
            assert sum(grew) == ech.rank
            # stored matrix stays fully reduced: pivot columns are unit
            for i, c in enumerate(ech.pivots):
                col = ech.mat[:, c]
                assert col[i] == 1 and (np.delete(col, i) == 0).all()

    def test_dependent_insert_rejected(self):
        ech = Echelon(3, P)
        assert ech.insert([1, 2, 3])
        assert ech.insert([0, 1, 1])
        assert not ech.insert([2, 5, 7])  # sum of scaled previous rows
        assert ech.rank == 2
