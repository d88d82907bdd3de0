"""Graded free modules, graded matrices between them, and presented modules."""

from __future__ import annotations

from math import comb

import numpy as np

from .errors import ShapeError
from .ring import Poly, PolyRing


class FreeModule:
    """S(-d1) + ... + S(-dr): a free module with recorded generator twists."""

    def __init__(self, ring: PolyRing, twists):
        self.ring = ring
        self.twists = tuple(twists)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dual(self) -> "FreeModule":
        return FreeModule(self.ring, tuple(-t for t in self.twists))

    def dim_in_degree(self, m: int) -> int:
        n = self.ring.nvars
        return sum(comb(m - t + n - 1, n - 1) for t in self.twists if m >= t)

    def basis_in_degree(self, m: int):
        """Pairs (position, packed monomial) spanning the degree-m piece."""
        out = []
        for pos, t in enumerate(self.twists):
            if m >= t:
                for mono in self.ring.monomials_of_degree(m - t):
                    out.append((pos, mono))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.twists == other.twists
        )

    def __repr__(self):
        return f"FreeModule{self.twists}"


class GradedMatrix:
    """Map between graded free modules; column j is the image of source generator j."""

    def __init__(self, target: FreeModule, source: FreeModule, cols, check: bool = True):
        self.target = target
        self.source = source
        self.cols = [list(col) for col in cols]
        if check:
            self._validate()

    def _validate(self):
        if len(self.cols) != self.source.rank:
            raise ShapeError(f"{len(self.cols)} columns for source rank {self.source.rank}")
        for j, col in enumerate(self.cols):
            if len(col) != self.target.rank:
                raise ShapeError(f"column {j} has {len(col)} entries, target rank {self.target.rank}")
            want = None
            for i, entry in enumerate(col):
                if entry.is_zero():
                    continue
                want = self.source.twists[j] - self.target.twists[i]
                if entry.degree != want:
                    raise ShapeError(
                        f"entry ({i},{j}) has degree {entry.degree}, expected {want}"
                    )

    @property
    def ring(self) -> PolyRing:
        return self.target.ring

    def entry(self, i: int, j: int) -> Poly:
        return self.cols[j][i]

    @classmethod
    def identity(cls, module: FreeModule) -> "GradedMatrix":
        ring = module.ring
        cols = []
        for j in range(module.rank):
            col = [ring.zero()] * module.rank
            col[j] = ring.one()
            cols.append(col)
        return cls(module, module, cols, check=False)

    @classmethod
    def from_rows(cls, target: FreeModule, source: FreeModule, rows) -> "GradedMatrix":
        cols = [[rows[i][j] for i in range(target.rank)] for j in range(source.rank)]
        return cls(target, source, cols)

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self o other (apply other first)."""
        if other.target.twists != self.source.twists:
            raise ShapeError(
                f"composition twist mismatch: {other.target.twists} vs {self.source.twists}"
            )
        ring = self.ring
        cols = []
        for col in other.cols:
            new = []
            for i in range(self.target.rank):
                acc = ring.zero()
                for k, entry in enumerate(col):
                    if entry.is_zero() or self.cols[k][i].is_zero():
                        continue
                    acc = acc + self.cols[k][i] * entry
                new.append(acc)
            cols.append(new)
        return GradedMatrix(self.target, other.source, cols, check=False)

    def dual(self) -> "GradedMatrix":
        """Hom(-, S): transpose with negated twists."""
        cols = [[self.cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]
        return GradedMatrix(self.source.dual(), self.target.dual(), cols, check=False)

    def is_zero(self) -> bool:
        return all(entry.is_zero() for col in self.cols for entry in col)

    def macaulay(self, m: int):
        """Degree-m piece as a numpy matrix over F_p.

        Rows are indexed by the source basis in degree m, columns by the
        target basis; also returns both bases.
        """
        ring = self.ring
        src = self.source.basis_in_degree(m)
        tgt = self.target.basis_in_degree(m)
        index = {pm: k for k, pm in enumerate(tgt)}
        mat = np.zeros((len(src), len(tgt)), dtype=np.int64)
        one = ring.mono_one
        for r, (j, mono) in enumerate(src):
            shift = mono - one
            for i, entry in enumerate(self.cols[j]):
                for mm, c in entry.terms.items():
                    mat[r, index[(i, mm + shift)]] = c
        return mat, src, tgt

    def __repr__(self):
        return f"GradedMatrix({self.target.twists} <- {self.source.twists})"


class GradedModule:
    """Finitely presented graded module: the cokernel of its presentation."""

    def __init__(self, presentation: GradedMatrix):
        self.presentation = presentation
        self._gb = None  # filled lazily by groebner helpers

    @property
    def ring(self) -> PolyRing:
        return self.presentation.ring

    @property
    def generator_twists(self):
        return self.presentation.target.twists

    @classmethod
    def from_cyclic(cls, ring: PolyRing, gens, twist: int = 0) -> "GradedModule":
        """S(-twist)/(gens): quotient of a rank-one free module."""
        target = FreeModule(ring, (twist,))
        source = FreeModule(ring, tuple(twist + g.degree for g in gens))
        return cls(GradedMatrix(target, source, [[g] for g in gens]))

    def __repr__(self):
        return f"GradedModule(gens {self.generator_twists})"
