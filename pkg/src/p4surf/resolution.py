"""Free resolutions of graded modules, minimization, and Betti tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ConstructionError
from .modules import FreeModule, GradedMatrix
from .ring import Poly, PolyRing
from .groebner import ModuleOrder, minimal_generators_vecs, syzygies_of_columns


@dataclass
class Resolution:
    """Chain complex F_0 <- F_1 <- ... with differentials d[i]: F_{i+1} -> F_i."""

    modules: list
    differentials: list

    @property
    def ring(self) -> PolyRing:
        return self.modules[0].ring

    @property
    def length(self) -> int:
        return len(self.differentials)

    def check_complex(self):
        for i in range(len(self.differentials) - 1):
            if not self.differentials[i].compose(self.differentials[i + 1]).is_zero():
                raise ConstructionError(f"d_{i + 1} o d_{i + 2} is nonzero")

    def betti_table(self) -> "BettiTable":
        entries = {}
        for i, mod in enumerate(self.modules):
            for t in mod.twists:
                entries[(i, t)] = entries.get((i, t), 0) + 1
        return BettiTable(entries)

    def is_minimal(self) -> bool:
        for d in self.differentials:
            for col in d.cols:
                for e in col:
                    if not e.is_zero() and e.degree == 0:
                        return False
        return True


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}, displayed in the j-i by i layout."""

    entries: dict = field(default_factory=dict)

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def max_step(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def rows(self):
        return sorted({j - i for i, j in self.entries})

    def to_json(self):
        return {f"{i},{j}": v for (i, j), v in sorted(self.entries.items())}

    def render(self) -> str:
        steps = range(self.max_step() + 1)
        lines = []
        header = ["    "] + [f"{i:>6}" for i in steps]
        lines.append("".join(header))
        totals = ["tot:"] + [f"{self.total(i):>6}" for i in steps]
        lines.append("".join(totals))
        lines.append("-" * (4 + 6 * len(list(steps))))
        for r in self.rows():
            cells = [f"{r:>3}:"]
            for i in steps:
                b = self.beta(i, i + r)
                cells.append(f"{b:>6}" if b else f"{'.':>6}")
            lines.append("".join(cells))
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        a = {k: v for k, v in self.entries.items() if v}
        b = {k: v for k, v in other.entries.items() if v}
        return a == b


def free_resolution(presentation: GradedMatrix, max_length: int = None,
                    cache_dir=None) -> Resolution:
    """Minimal free resolution of coker(presentation).

    Built by iterated kernel computations over minimal generating sets, so
    the ranks stay at the graded Betti numbers; a final unit-cancelling pass
    guards against stray degree-0 entries.
    """
    ring = presentation.ring
    if max_length is None:
        max_length = ring.nvars + 1
    modules = [presentation.target]
    differentials = []
    current = presentation
    for _ in range(max_length):
        # keep every level at minimal rank: a minimal generating set of the
        # current kernel, then its syzygies over those generators
        order = ModuleOrder(ring, current.target.twists, "top")
        vecs = minimal_generators_vecs(
            [order.vec_from_polys(c) for c in current.cols], order)
        vecs.sort(key=lambda v: (order.vec_degree(v), -max(v)))
        if not vecs:
            break
        source = FreeModule(ring, tuple(order.vec_degree(v) for v in vecs))
        d = GradedMatrix(modules[-1], source,
                         [order.polys_from_vec(v) for v in vecs], check=False)
        differentials.append(d)
        modules.append(source)
        syz = syzygies_of_columns(d)
        if not syz.cols:
            break
        current = syz
    res = Resolution(modules, differentials)
    return minimize(res)


def minimize(res: Resolution) -> Resolution:
    """Cancel unit entries until every differential lands in the maximal ideal.

    A unit at (r, c) of d_i is removed by a Schur complement on d_i, deleting
    row c of d_{i+1} and column r of d_{i-1}.
    """
    ring = res.ring
    diffs = [GradedMatrix(d.target, d.source, d.cols, check=False)
             for d in res.differentials]
    changed = True
    while changed:
        changed = False
        for i, d in enumerate(diffs):
            unit = _find_unit(d)
            if unit is None:
                continue
            r, c = unit
            diffs[i] = _schur(d, r, c)
            if i + 1 < len(diffs):
                diffs[i + 1] = _drop_row(diffs[i + 1], c)
            if i > 0:
                diffs[i - 1] = _drop_col(diffs[i - 1], r)
            changed = True
    # trim trailing zero maps
    while diffs and diffs[-1].source.rank == 0:
        diffs.pop()
    modules = [diffs[0].target] + [d.source for d in diffs] if diffs else [res.modules[0]]
    return Resolution(modules, diffs)


def _find_unit(d: GradedMatrix):
    for c, col in enumerate(d.cols):
        for r, e in enumerate(col):
            if not e.is_zero() and e.degree == 0:
                return r, c
    return None


def _schur(d: GradedMatrix, r: int, c: int) -> GradedMatrix:
    ring = d.ring
    u = d.cols[c][r]
    uinv = ring.field.inv(u.terms[ring.mono_one])
    new_cols = []
    new_src = []
    for j, col in enumerate(d.cols):
        if j == c:
            continue
        a = col[r]
        if a.is_zero():
            new = [e for i, e in enumerate(col) if i != r]
        else:
            factor = a.scale(uinv)
            new = []
            for i, e in enumerate(col):
                if i == r:
                    continue
                corr = d.cols[c][i]
                if corr.is_zero():
                    new.append(e)
                else:
                    new.append(e - corr * factor)
        new_cols.append(new)
        new_src.append(d.source.twists[j])
    target = FreeModule(ring, tuple(t for i, t in enumerate(d.target.twists) if i != r))
    source = FreeModule(ring, tuple(new_src))
    return GradedMatrix(target, source, new_cols, check=False)


def _drop_row(d: GradedMatrix, r: int) -> GradedMatrix:
    target = FreeModule(d.ring, tuple(t for i, t in enumerate(d.target.twists) if i != r))
    cols = [[e for i, e in enumerate(col) if i != r] for col in d.cols]
    return GradedMatrix(target, d.source, cols, check=False)


def _drop_col(d: GradedMatrix, c: int) -> GradedMatrix:
    source = FreeModule(d.ring, tuple(t for j, t in enumerate(d.source.twists) if j != c))
    cols = [col for j, col in enumerate(d.cols) if j != c]
    return GradedMatrix(d.target, source, cols, check=False)


def colex_subsets(n: int, k: int):
    """All k-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def koszul_matrices(polys):
    """Differentials of the Koszul complex on the given polynomials.

    Returns [d_1, ..., d_n] with d_k mapping the free module on colex-ordered
    k-subsets to the one on (k-1)-subsets; d_1 has target S.
    """
    ring = polys[0].ring
    n = len(polys)
    degs = [f.degree for f in polys]
    out = []
    prev_sets = colex_subsets(n, 0)
    prev_mod = FreeModule(ring, (0,))
    for k in range(1, n + 1):
        sets = colex_subsets(n, k)
        index = {s: i for i, s in enumerate(prev_sets)}
        source = FreeModule(ring, tuple(sum(degs[t] for t in s) for s in sets))
        cols = []
        for s in sets:
            col = [ring.zero()] * prev_mod.rank
            for j, t in enumerate(s):
                rest = tuple(v for v in s if v != t)
                sign = -1 if j % 2 else 1
                entry = polys[t] if sign == 1 else polys[t].scale(ring.p - 1)
                col[index[rest]] = entry
            cols.append(col)
        out.append(GradedMatrix(prev_mod, source, cols, check=False))
        prev_sets, prev_mod = sets, source
    return out
