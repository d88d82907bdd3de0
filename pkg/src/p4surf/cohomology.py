"""Sheaf cohomology of ideal sheaves on P4 via graded local duality.

For a saturated ideal I with module M = I:

* h^0(I~(d)) = dim I_d;
* h^i(I~(d)) = dim Ext^{4-i}(M, S(-5))_{-d} for 1 <= i <= 4.

Ext groups are computed degreewise from the dualized minimal free resolution
with plain linear algebra, which also exposes the module structure of the
intermediate cohomology (Hartshorne-Rao) modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import UsageError
from .groebner import GroebnerBasis
from .hilbert import hilbert_data, ideal_dim_in_degree
from .linalg import Echelon, rank as mat_rank, rref, solve_in_row_space
from .modules import FreeModule, GradedMatrix
from .resolution import Resolution, free_resolution


def twist_matrix(d: GradedMatrix, a: int) -> GradedMatrix:
    """Shift all twists by a; the entries are unchanged."""
    ring = d.ring
    tgt = FreeModule(ring, tuple(t + a for t in d.target.twists))
    src = FreeModule(ring, tuple(t + a for t in d.source.twists))
    return GradedMatrix(tgt, src, d.cols, check=False)


class GradedExt:
    """Ext^k(M, S(-c)) degreewise, for M with free resolution G_1 <- G_2 <- ...

    Constructed from a resolution of S/I: the G_i are its F_{i+1} and M = I.
    The k-th Ext sits on Hom(G_{k+1}, S(-c)) between the duals of d_{k+1}
    and d_{k+2} (differentials of M's resolution).
    """

    def __init__(self, res: Resolution, k: int, c: int = 5):
        self.res = res
        self.k = k
        self.ring = res.ring
        self.p = self.ring.p
        self._pieces = {}
        # M's resolution: modules res.modules[1:], differentials res.differentials[1:]
        mods = res.modules[1:]
        diffs = res.differentials[1:]
        if k >= len(mods):
            self.middle = None
            return
        self.middle = FreeModule(self.ring, tuple(c - t for t in mods[k].twists))
        # incoming map: Hom(G_k, N) -> Hom(G_{k+1}, N), dual of diffs[k-1]
        self.inc = None
        if k >= 1:
            self.inc = twist_matrix(diffs[k - 1].dual(), c)
        # outgoing map: Hom(G_{k+1}, N) -> Hom(G_{k+2}, N), dual of diffs[k]
        self.out = None
        if k < len(diffs):
            self.out = twist_matrix(diffs[k].dual(), c)

    def _piece(self, e: int):
        """(representative rows, im rows, middle basis) of the degree-e piece."""
        if e in self._pieces:
            return self._pieces[e]
        if self.middle is None:
            self._pieces[e] = (np.zeros((0, 0), dtype=np.int64),
                               np.zeros((0, 0), dtype=np.int64), [])
            return self._pieces[e]
        basis = self.middle.basis_in_degree(e)
        ncols = len(basis)
        if ncols == 0:
            self._pieces[e] = (np.zeros((0, 0), dtype=np.int64),
                               np.zeros((0, 0), dtype=np.int64), basis)
            return self._pieces[e]
        if self.out is not None:
            omat, _, _ = self.out.macaulay(e)
            # rows of omat: basis of Hom(G_{k+1})_e (source of dual map)
            # columns: basis of Hom(G_{k+2})_e; kernel vectors are Ext cycles
            from .linalg import nullspace
            kerrows = nullspace(omat.T, ncols, self.p)
        else:
            kerrows = np.eye(ncols, dtype=np.int64)
        if self.inc is not None:
            imat, _, _ = self.inc.macaulay(e)
            imrows = imat
        else:
            imrows = np.zeros((0, ncols), dtype=np.int64)
        imrr, _ = rref(imrows, ncols, self.p)
        # pick kernel rows extending the image to a basis of the cycles
        ech = Echelon(ncols, self.p)
        for row in imrr:
            ech.insert(row)
        reps = [row for row in kerrows if ech.insert(row)]
        reps = (np.array(reps, dtype=np.int64) if reps
                else np.zeros((0, ncols), dtype=np.int64))
        self._pieces[e] = (reps, imrr, basis)
        return self._pieces[e]

    def dim(self, e: int) -> int:
        reps, _, _ = self._piece(e)
        return reps.shape[0]

    def multiplication(self, e: int, var: int) -> np.ndarray:
        """Matrix of x_var: Ext_e -> Ext_{e+1} in the representative bases."""
        reps, _, basis = self._piece(e)
        reps2, im2, basis2 = self._piece(e + 1)
        index2 = {pm: i for i, pm in enumerate(basis2)}
        ring = self.ring
        shift = ring.variable(var).lead_monomial() - ring.mono_one
        n_out = reps2.shape[0]
        out = np.zeros((reps.shape[0], n_out), dtype=np.int64)
        if reps.shape[0] == 0:
            return out
        ncols2 = len(basis2)
        span = np.vstack([im2, reps2]) if im2.size or reps2.size else np.zeros((0, ncols2), dtype=np.int64)
        for r, row in enumerate(reps):
            vec = np.zeros(ncols2, dtype=np.int64)
            for c, (pos, mono) in enumerate(basis):
                if row[c]:
                    vec[index2[(pos, mono + shift)]] = row[c]
            sol = solve_in_row_space(span, vec, ncols2, self.p)
            if sol is None:
                raise UsageError("multiplication left the cycle space")
            out[r] = sol[im2.shape[0]:]
        return out


class CohomologySheet:
    """All h^i(I~(m)) for a saturated ideal, from one minimal resolution."""

    def __init__(self, ideal, cache_dir=None, resolution=None):
        self.ideal = ideal
        self.ring = ideal.ring
        if resolution is None:
            gens = ideal.minimal_gens()
            ring = self.ring
            tgt = FreeModule(ring, (0,))
            src = FreeModule(ring, tuple(g.degree for g in gens))
            pres = GradedMatrix(tgt, src, [[g] for g in gens])
            resolution = free_resolution(pres, cache_dir=cache_dir)
        self.resolution = resolution
        self._exts = {}

    def ext(self, k: int) -> GradedExt:
        if k not in self._exts:
            self._exts[k] = GradedExt(self.resolution, k)
        return self._exts[k]

    def h(self, i: int, m: int) -> int:
        if i == 0:
            return ideal_dim_in_degree(self.ideal.gb(), m)
        if 1 <= i <= 4:
            return self.ext(4 - i).dim(-m)
        raise UsageError(f"h^{i} undefined on P4")

    def euler(self, m: int) -> int:
        return sum((-1) ** i * self.h(i, m) for i in range(5))


@dataclass
class CohomologyTable:
    """h^i(I~(m)) over a window of twists."""

    lo: int
    hi: int
    values: dict  # (i, m) -> h

    def h(self, i, m):
        return self.values.get((i, m), 0)

    def to_json(self):
        return {
            "range": [self.lo, self.hi],
            "h": {f"{i},{m}": v for (i, m), v in sorted(self.values.items()) if v},
        }

    def render(self) -> str:
        ms = range(self.lo, self.hi + 1)
        lines = ["      " + "".join(f"{m:>6}" for m in ms)]
        for i in range(4, -1, -1):
            cells = [f"h^{i}: "]
            for m in ms:
                v = self.h(i, m)
                cells.append(f"{v:>6}" if v else f"{'.':>6}")
            lines.append("".join(cells))
        return "\n".join(lines)


def cohomology_table(ideal, lo: int, hi: int, cache_dir=None,
                     check_euler: bool = True,
                     sheet: CohomologySheet = None) -> CohomologyTable:
    if sheet is None:
        sheet = CohomologySheet(ideal, cache_dir=cache_dir)
    values = {}
    hd = ideal.hilbert_data()
    for m in range(lo, hi + 1):
        for i in range(5):
            v = sheet.h(i, m)
            if v:
                values[(i, m)] = v
        if check_euler:
            chi_o = (m + 1) * (m + 2) * (m + 3) * (m + 4) // 24
            chi = chi_o - int(hd.value(m))
            got = sum((-1) ** i * values.get((i, m), 0) for i in range(5))
            if got != chi:
                raise UsageError(
                    f"cohomology table fails Euler check at m={m}: {got} != {chi}")
    return CohomologyTable(lo, hi, values)


@dataclass
class RaoModule:
    """Graded dual description of an intermediate cohomology module."""

    index: int          # which h^i it collects
    dims: dict          # m -> h^i(I~(m)) over the probed window
    monogeneous: bool   # generated by its piece of lowest degree


def hartshorne_rao(ideal, index: int = 1, window=(-10, 14),
                   cache_dir=None, sheet: CohomologySheet = None) -> RaoModule:
    """The module H^index_*(I~) restricted to a finite twist window.

    Dims are read off degreewise; the module is monogeneous iff every
    multiplication S_1 x H_m -> H_{m+1} is surjective above the bottom
    degree, which dualizes to injectivity of the joint multiplication on
    the Ext side.
    """
    if sheet is None:
        sheet = CohomologySheet(ideal, cache_dir=cache_dir)
    k = 4 - index
    ext = sheet.ext(k)
    lo, hi = window
    dims = {}
    for m in range(lo, hi + 1):
        v = ext.dim(-m)
        if v:
            dims[m] = v
    if not dims:
        return RaoModule(index, {}, True)
    support = sorted(dims)
    bottom = support[0]
    mono = True
    ring = ideal.ring
    for m in range(bottom, max(support)):
        if dims.get(m + 1, 0) == 0:
            continue
        # surjectivity of S_1 x H_m -> H_{m+1} dualizes to injectivity of
        # v -> (x_l v)_l on Ext in degree -(m+1)
        e = -(m + 1)
        blocks = [ext.multiplication(e, l) for l in range(ring.nvars)]
        joint = np.hstack(blocks) if blocks else np.zeros((0, 0), dtype=np.int64)
        dsrc = ext.dim(e)
        if dsrc == 0:
            mono = False
            continue
        if mat_rank(joint, joint.shape[1], ring.p) < dsrc:
            mono = False
    return RaoModule(index, dims, mono)
