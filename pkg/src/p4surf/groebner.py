"""Buchberger engine for homogeneous ideals and submodules of graded free modules.

Module elements are flat dicts mapping a packed term (monomial + position) to
a coefficient.  Two orders are supported:

* ``top`` — term over position: grevlex on monomials, lower position wins ties
  (the working order for ideals and syzygy computations);
* ``pot`` — position over term with lower positions dominant (an elimination
  order, used for kernels, intersections and quotients).

The reduced Groebner basis is canonical: inter-reduced, monic, sorted by
(degree, leading term), hence independent of the processing schedule.
"""

from __future__ import annotations

import hashlib
import json
from heapq import heapify, heappop, heappush
from pathlib import Path

from .errors import DegreeError, UsageError
from .modules import FreeModule, GradedMatrix
from .ring import Poly, PolyRing

POSBITS = 12
POSMAX = (1 << POSBITS) - 1


class ModuleOrder:
    """Term order on a graded free module, with packed-term codecs."""

    def __init__(self, ring: PolyRing, twists, kind: str = "top"):
        if kind not in ("top", "pot"):
            raise UsageError(f"unknown order kind {kind!r}")
        if len(twists) > POSMAX:
            raise UsageError("free module rank too large for term packing")
        self.ring = ring
        self.twists = tuple(twists)
        self.kind = kind

    @property
    def rank(self) -> int:
        return len(self.twists)

    def encode(self, pos: int, mono: int) -> int:
        if self.kind == "top":
            return (mono << POSBITS) | (POSMAX - pos)
        return ((POSMAX - pos) << self.ring.keybits) | mono

    def decode(self, term: int):
        if self.kind == "top":
            return POSMAX - (term & POSMAX), term >> POSBITS
        return POSMAX - (term >> self.ring.keybits), term & ((1 << self.ring.keybits) - 1)

    def shift_of(self, mono_quotient: int) -> int:
        """Additive term shift realizing multiplication by a monomial."""
        delta = mono_quotient - self.ring.mono_one
        if self.kind == "top":
            return delta << POSBITS
        return delta

    def term_degree(self, term: int) -> int:
        pos, mono = self.decode(term)
        return self.ring.mono_deg(mono) + self.twists[pos]

    def vec_degree(self, vec: dict):
        if not vec:
            return None
        degs = {self.term_degree(t) for t in vec}
        if len(degs) > 1:
            raise DegreeError(f"inhomogeneous module element (degrees {sorted(degs)})")
        return degs.pop()

    # ---- conversions ----

    def vec_from_polys(self, col) -> dict:
        vec = {}
        for pos, poly in enumerate(col):
            for mono, c in poly.terms.items():
                vec[self.encode(pos, mono)] = c
        return vec

    def polys_from_vec(self, vec: dict):
        ring = self.ring
        per_pos = [dict() for _ in range(self.rank)]
        for term, c in vec.items():
            pos, mono = self.decode(term)
            per_pos[pos][mono] = c
        return [Poly(ring, d, _trusted=True) for d in per_pos]


def vec_scale(vec: dict, c: int, p: int) -> dict:
    c %= p
    return {t: (v * c) % p for t, v in vec.items()}


def vec_monic(vec: dict, ring: PolyRing) -> dict:
    if not vec:
        return vec
    lc = vec[max(vec)]
    if lc == 1:
        return vec
    return vec_scale(vec, ring.field.inv(lc), ring.p)


def reduce_vec(vec: dict, elems, leads_by_pos, order: ModuleOrder, record=None) -> dict:
    """Full normal form of vec against monic elements with the given leads.

    ``leads_by_pos`` maps position -> list of (lead monomial, element index).
    When ``record`` is a dict it accumulates the cofactors used, as
    index -> {monomial: coefficient}.
    """
    ring = order.ring
    p = ring.p
    mono_div = ring.mono_div
    decode = order.decode
    shift_of = order.shift_of
    work = dict(vec)
    heap = [-t for t in work]
    heapify(heap)
    out = {}
    while heap:
        t = -heappop(heap)
        c = work.get(t)
        if not c:
            work.pop(t, None)
            continue
        pos, mono = decode(t)
        hit = None
        for lm, idx in leads_by_pos.get(pos, ()):
            q = mono_div(mono, lm)
            if q is not None:
                hit = (idx, q)
                break
        if hit is None:
            out[t] = c
            del work[t]
            continue
        idx, q = hit
        shift = shift_of(q)
        for t2, c2 in elems[idx].items():
            nt = t2 + shift
            v = (work.get(nt, 0) - c * c2) % p
            if v:
                if nt not in work:
                    heappush(heap, -nt)
                work[nt] = v
            else:
                work.pop(nt, None)
        if record is not None:
            d = record.setdefault(idx, {})
            v = (d.get(q, 0) + c) % p
            if v:
                d[q] = v
            else:
                d.pop(q, None)
    return out


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of a graded free module."""

    def __init__(self, order: ModuleOrder, elements):
        self.order = order
        self.elements = list(elements)  # monic, reduced, canonically sorted vecs
        self._leads_by_pos = None

    @property
    def leads_by_pos(self):
        if self._leads_by_pos is None:
            by_pos = {}
            for idx, e in enumerate(self.elements):
                pos, mono = self.order.decode(max(e))
                by_pos.setdefault(pos, []).append((mono, idx))
            self._leads_by_pos = by_pos
        return self._leads_by_pos

    def __len__(self):
        return len(self.elements)

    def lead_terms(self):
        return [max(e) for e in self.elements]

    def element_degrees(self):
        return [self.order.vec_degree(e) for e in self.elements]

    def normal_form_vec(self, vec: dict) -> dict:
        return reduce_vec(vec, self.elements, self.leads_by_pos, self.order)

    def contains_vec(self, vec: dict) -> bool:
        return not self.normal_form_vec(vec)

    def columns(self):
        return [self.order.polys_from_vec(e) for e in self.elements]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order.twists == other.order.twists
            and self.order.kind == other.order.kind
            and self.elements == other.elements
        )


def _canonical_sort(elements, order: ModuleOrder):
    return sorted(elements, key=lambda e: (order.vec_degree(e), -max(e)))


class _BuchbergerEngine:
    """Incremental Buchberger state: feed generators, run pairs, query NF.

    The element list is a (non-reduced) Groebner basis of the submodule
    generated by everything fed so far, once ``run`` has drained the queue.
    """

    def __init__(self, order: ModuleOrder, track: bool = False):
        self.order = order
        self.inputs = []
        self.elems = []        # accepted basis elements (monic vecs)
        self.lead = []         # (pos, mono) per element
        self.leads_by_pos = {}
        self.done_pairs = set()
        self.heap = []         # (degree, kind, a, b) kind 0 = input, 1 = s-pair
        # expression tracking: writes every basis element as a combination of
        # the fed inputs, and captures each reduction to zero as a syzygy of
        # the inputs (terms packed in "top" encoding over the input indices)
        self.track = track
        self.expr = []         # per element, combination over the inputs
        self.input_expr = []   # per (monic) input, its unit combination
        self.relations = []    # captured syzygies over the inputs

    def feed(self, vec: dict):
        if not vec:
            return
        self.order.vec_degree(vec)  # homogeneity check
        k = len(self.inputs)
        ring = self.order.ring
        self.inputs.append(vec_monic(vec, ring))
        if self.track:
            lc = vec[max(vec)]
            t = (ring.mono_one << POSBITS) | (POSMAX - k)
            self.input_expr.append({t: ring.field.inv(lc)})
        heappush(self.heap, (self.order.vec_degree(vec), 0, k, -1))

    def _expr_combine(self, base: dict, record: dict) -> dict:
        """base minus the recorded cofactor combination of element expressions."""
        ring = self.order.ring
        p = ring.p
        one = ring.mono_one
        out = dict(base)
        for idx, cof in record.items():
            e = self.expr[idx]
            for mono, c in cof.items():
                shift = (mono - one) << POSBITS
                for t, v in e.items():
                    nt = t + shift
                    w = (out.get(nt, 0) - c * v) % p
                    if w:
                        out[nt] = w
                    else:
                        out.pop(nt, None)
        return out

    def normal_form(self, vec: dict) -> dict:
        return reduce_vec(vec, self.elems, self.leads_by_pos, self.order)

    def _push_pairs(self, j):
        order = self.order
        posj, lmj = self.lead[j]
        twist = order.twists[posj]
        mono_lcm = order.ring.mono_lcm
        mono_deg = order.ring.mono_deg
        for i in range(j):
            posi, lmi = self.lead[i]
            if posi != posj:
                continue
            lcm = mono_lcm(lmi, lmj)
            heappush(self.heap, (mono_deg(lcm) + twist, 1, i, j))

    def _add_element(self, vec):
        idx = len(self.elems)
        self.elems.append(vec)
        pos, mono = self.order.decode(max(vec))
        self.lead.append((pos, mono))
        self.leads_by_pos.setdefault(pos, []).append((mono, idx))
        self._push_pairs(idx)

    def run(self, up_to_degree=None):
        order = self.order
        ring = order.ring
        mono_div = ring.mono_div
        mono_lcm = ring.mono_lcm
        one = ring.mono_one
        while self.heap:
            if up_to_degree is not None and self.heap[0][0] > up_to_degree:
                return
            _, kind, a, b = heappop(self.heap)
            if kind == 0:
                record = {} if self.track else None
                r = reduce_vec(self.inputs[a], self.elems, self.leads_by_pos,
                               order, record=record)
                if self.track:
                    rel = self._expr_combine(self.input_expr[a], record)
                    if r:
                        self.expr.append(vec_scale(rel, ring.field.inv(r[max(r)]), ring.p))
                    elif rel:
                        self.relations.append(rel)
                if r:
                    self._add_element(vec_monic(r, ring))
                continue
            i, j = a, b
            if (i, j) in self.done_pairs:
                continue
            self.done_pairs.add((i, j))
            posi, lmi = self.lead[i]
            posj, lmj = self.lead[j]
            lcm = mono_lcm(lmi, lmj)
            # the product criterion is only sound in rank one; with tracking
            # the coprime pairs must still be reduced, since their Koszul
            # relations are needed generators of the syzygy module
            if (not self.track and order.rank == 1
                    and ring.mono_coprime(lmi, lmj)):
                continue
            # chain criterion
            skip = False
            for lmk, k in self.leads_by_pos.get(posi, ()):
                if k == i or k == j:
                    continue
                if mono_div(lcm, lmk) is None:
                    continue
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in self.done_pairs and pjk in self.done_pairs:
                    skip = True
                    break
            if skip:
                continue
            spair = _spair(self.elems[i], self.elems[j], lmi, lmj, lcm, order)
            record = {} if self.track else None
            r = reduce_vec(spair, self.elems, self.leads_by_pos, order,
                           record=record)
            if self.track:
                si = (mono_div(lcm, lmi) - one) << POSBITS
                sj = (mono_div(lcm, lmj) - one) << POSBITS
                base = {t + si: c for t, c in self.expr[i].items()}
                for t, c in self.expr[j].items():
                    nt = t + sj
                    w = (base.get(nt, 0) - c) % ring.p
                    if w:
                        base[nt] = w
                    else:
                        base.pop(nt, None)
                rel = self._expr_combine(base, record)
                if r:
                    self.expr.append(vec_scale(rel, ring.field.inv(r[max(r)]), ring.p))
                elif rel:
                    self.relations.append(rel)
            if r:
                self._add_element(vec_monic(r, ring))


def buchberger_vecs(vectors, order: ModuleOrder) -> GroebnerBasis:
    """Reduced GB of the submodule generated by the given homogeneous vectors.

    Normal (degree-by-degree) selection with the coprimality and chain
    criteria; output is canonical.
    """
    engine = _BuchbergerEngine(order)
    for v in vectors:
        engine.feed(v)
    engine.run()
    return _interreduce(engine.elems, order)


def _spair(gi: dict, gj: dict, lmi: int, lmj: int, lcm: int, order: ModuleOrder) -> dict:
    ring = order.ring
    p = ring.p
    si = order.shift_of(ring.mono_div(lcm, lmi))
    sj = order.shift_of(ring.mono_div(lcm, lmj))
    out = {}
    for t, c in gi.items():
        out[t + si] = c
    for t, c in gj.items():
        nt = t + sj
        v = (out.get(nt, 0) - c) % p
        if v:
            out[nt] = v
        else:
            out.pop(nt, None)
    return out


def _interreduce(elems, order: ModuleOrder) -> GroebnerBasis:
    ring = order.ring
    # drop elements whose lead is divisible by another lead
    keep = []
    leads = [order.decode(max(e)) for e in elems]
    for i, e in enumerate(elems):
        posi, lmi = leads[i]
        redundant = False
        for j in range(len(elems)):
            if i == j:
                continue
            posj, lmj = leads[j]
            if posi != posj:
                continue
            q = ring.mono_div(lmi, lmj)
            if q is not None and (lmi != lmj or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(e)
    # tail-reduce each against the others
    final = []
    for i, e in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        by_pos = {}
        for idx, o in enumerate(others):
            pos, mono = order.decode(max(o))
            by_pos.setdefault(pos, []).append((mono, idx))
        r = reduce_vec(e, others, by_pos, order)
        if r:
            final.append(vec_monic(r, ring))
    return GroebnerBasis(order, _canonical_sort(final, order))


# ---- public ideal/module entry points ----


def ideal_order(ring: PolyRing, kind: str = "top") -> ModuleOrder:
    return ModuleOrder(ring, (0,), kind)


def groebner_ideal(gens, ring: PolyRing = None, cache_dir=None) -> GroebnerBasis:
    """Reduced grevlex GB of the ideal generated by homogeneous polynomials."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise UsageError("cannot infer ring from an empty generator list")
        ring = gens[0].ring
    order = ideal_order(ring)
    vecs = [order.vec_from_polys([g]) for g in gens]
    return _cached_buchberger(vecs, order, cache_dir)


def groebner_columns(matrix: GradedMatrix, kind: str = "top", cache_dir=None) -> GroebnerBasis:
    """Reduced GB of the submodule generated by the columns of a graded matrix."""
    order = ModuleOrder(matrix.ring, matrix.target.twists, kind)
    vecs = [order.vec_from_polys(col) for col in matrix.cols]
    return _cached_buchberger(vecs, order, cache_dir)


def normal_form(element, gb: GroebnerBasis):
    """Normal form of a polynomial or column (list of Polys) against a GB."""
    if isinstance(element, Poly):
        vec = gb.order.vec_from_polys([element])
        return gb.order.polys_from_vec(gb.normal_form_vec(vec))[0]
    vec = gb.order.vec_from_polys(element)
    return gb.order.polys_from_vec(gb.normal_form_vec(vec))


def syzygies_of_gb(gb: GroebnerBasis) -> GradedMatrix:
    """Generators of the syzygy module of the GB elements (Schreyer lifting).

    Columns live in the free module on the GB elements.  Every same-position
    pair contributes: reductions to zero are recorded as cofactors, and
    coprime-lead pairs contribute their Koszul syzygy directly.
    """
    order = gb.order
    ring = order.ring
    p = ring.p
    elems = gb.elements
    leads = [order.decode(max(e)) for e in elems]
    degrees = gb.element_degrees()

    syz_order = ModuleOrder(ring, tuple(degrees), "top")
    by_pos = {}
    for idx, (pos, lm) in enumerate(leads):
        by_pos.setdefault(pos, []).append((lm, idx))
    # ascending (degree, lcm) order so the chain criterion can drop pairs
    # whose partners were already processed
    pairs = []
    for j in range(len(elems)):
        posj, lmj = leads[j]
        for i in range(j):
            posi, lmi = leads[i]
            if posi != posj:
                continue
            lcm = ring.mono_lcm(lmi, lmj)
            pairs.append((ring.mono_deg(lcm) + order.twists[posj], lcm, i, j))
    pairs.sort()
    done = set()
    cols = []
    for _, lcm, i, j in pairs:
        done.add((i, j))
        posi, lmi = leads[i]
        posj, lmj = leads[j]
        if order.rank == 1 and ring.mono_coprime(lmi, lmj):
            # Koszul syzygy g_j e_i - g_i e_j (only valid in rank one)
            vec = _koszul_syzygy(elems[i], elems[j], i, j, syz_order, order)
            cols.append(vec)
            continue
        skip = False
        for lmk, k in by_pos.get(posi, ()):
            if k == i or k == j:
                continue
            if ring.mono_div(lcm, lmk) is None:
                continue
            if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        spair = _spair(elems[i], elems[j], lmi, lmj, lcm, order)
        record = {}
        r = reduce_vec(spair, elems, gb.leads_by_pos, order, record=record)
        if r:
            raise UsageError("syzygies_of_gb requires a Groebner basis")
        vec = {}
        qi = ring.mono_div(lcm, lmi)
        qj = ring.mono_div(lcm, lmj)
        vec[syz_order.encode(i, qi)] = 1
        t = syz_order.encode(j, qj)
        vec[t] = (vec.get(t, 0) - 1) % p
        for k, cof in record.items():
            for mono, c in cof.items():
                t = syz_order.encode(k, mono)
                v = (vec.get(t, 0) - c) % p
                if v:
                    vec[t] = v
                else:
                    vec.pop(t, None)
        vec = {t: c for t, c in vec.items() if c}
        if vec:
            cols.append(vec)

    cols = _canonical_sort(cols, syz_order)
    target = FreeModule(ring, tuple(degrees))
    source = FreeModule(ring, tuple(syz_order.vec_degree(v) for v in cols))
    poly_cols = [syz_order.polys_from_vec(v) for v in cols]
    return GradedMatrix(target, source, poly_cols, check=False)


def syzygies_of_columns(matrix: GradedMatrix) -> GradedMatrix:
    """Generators of the syzygy module of the columns of a graded matrix.

    Unlike ``syzygies_of_gb`` the relations come out over the given columns,
    not over a Groebner basis: an expression-tracking Buchberger run captures
    every reduction to zero, and a final division of each input against the
    finished basis closes the generating set.
    """
    ring = matrix.ring
    order = ModuleOrder(ring, matrix.target.twists, "top")
    out_order = ModuleOrder(ring, matrix.source.twists, "top")
    engine = _BuchbergerEngine(order, track=True)
    fed = []  # engine input index -> column index
    rels = []
    for k, col in enumerate(matrix.cols):
        v = order.vec_from_polys(col)
        if not v:
            # a zero column is its own syzygy
            rels.append({out_order.encode(k, ring.mono_one): 1})
        else:
            fed.append(k)
            engine.feed(v)
    engine.run()
    raw = list(engine.relations)
    # close the generating set: divide each input by the finished basis
    for a, v in enumerate(engine.inputs):
        record = {}
        r = reduce_vec(v, engine.elems, engine.leads_by_pos, order, record=record)
        if r:
            raise UsageError("input does not reduce to zero against its own basis")
        rel = engine._expr_combine(engine.input_expr[a], record)
        if rel:
            raw.append(rel)
    # relabel engine input positions back to column positions
    for rel in raw:
        out = {}
        for t, c in rel.items():
            pos, mono = out_order.decode(t)
            out[out_order.encode(fed[pos], mono)] = c
        rels.append(out)
    rels = _canonical_sort(rels, out_order)
    source = FreeModule(ring, tuple(out_order.vec_degree(v) for v in rels))
    poly_cols = [out_order.polys_from_vec(v) for v in rels]
    return GradedMatrix(matrix.source, source, poly_cols, check=False)


def _koszul_syzygy(gi, gj, i, j, syz_order, order):
    ring = order.ring
    p = ring.p
    vec = {}
    for t, c in gj.items():
        pos, mono = order.decode(t)
        # only makes sense for rank-1 component pairs: positions coincide
        nt = syz_order.encode(i, mono)
        vec[nt] = (vec.get(nt, 0) + c) % p
    for t, c in gi.items():
        pos, mono = order.decode(t)
        nt = syz_order.encode(j, mono)
        v = (vec.get(nt, 0) - c) % p
        if v:
            vec[nt] = v
        else:
            vec.pop(nt, None)
    return {t: c for t, c in vec.items() if c}


def kernel_columns(matrix: GradedMatrix, cache_dir=None) -> GradedMatrix:
    """Generators of the kernel of a graded matrix, by position elimination.

    Works for arbitrary (not necessarily Groebner) columns: compute a POT GB
    of the graph {(Av, v)} and harvest elements with vanishing image part.
    """
    ring = matrix.ring
    t = matrix.target.rank
    k = matrix.source.rank
    twists = matrix.target.twists + matrix.source.twists
    order = ModuleOrder(ring, twists, "pot")
    vecs = []
    for j, col in enumerate(matrix.cols):
        vec = {}
        for pos, poly in enumerate(col):
            for mono, c in poly.terms.items():
                vec[order.encode(pos, mono)] = c
        vec[order.encode(t + j, ring.mono_one)] = 1
        vecs.append(vec)
    gb = _cached_buchberger(vecs, order, cache_dir)
    kernel = []
    for e in gb.elements:
        cols_part = {}
        pure = True
        for term, c in e.items():
            pos, mono = order.decode(term)
            if pos < t:
                pure = False
                break
            cols_part[(pos - t, mono)] = c
        if pure and cols_part:
            kernel.append(cols_part)

    out_order = ModuleOrder(ring, matrix.source.twists, "top")
    vec_list = []
    for part in kernel:
        vec = {out_order.encode(pos, mono): c for (pos, mono), c in part.items()}
        vec_list.append(vec)
    vec_list = _canonical_sort(vec_list, out_order)
    source = FreeModule(ring, tuple(out_order.vec_degree(v) for v in vec_list))
    poly_cols = [out_order.polys_from_vec(v) for v in vec_list]
    return GradedMatrix(matrix.source, source, poly_cols, check=False)


def minimal_generators_vecs(vectors, order: ModuleOrder):
    """Subset of the input generating the same submodule, Nakayama-minimal.

    Candidates are scanned by ascending degree; one is kept iff its normal
    form against the (incrementally grown) Groebner basis of the elements
    already kept is nonzero.
    """
    tagged = []
    for i, v in enumerate(vectors):
        if v:
            tagged.append((order.vec_degree(v), -max(v), i, v))
    tagged.sort()
    kept = []
    engine = _BuchbergerEngine(order)
    for d, _, _, v in tagged:
        engine.run(up_to_degree=d)
        if engine.normal_form(v):
            kept.append(v)
            engine.feed(v)
            engine.run(up_to_degree=d)
    return kept


def minimal_columns(matrix: GradedMatrix) -> GradedMatrix:
    """The same column module, presented by a minimal generating set."""
    ring = matrix.ring
    order = ModuleOrder(ring, matrix.target.twists, "top")
    vecs = minimal_generators_vecs(
        [order.vec_from_polys(c) for c in matrix.cols], order)
    vecs.sort(key=lambda v: (order.vec_degree(v), -max(v)))
    source = FreeModule(ring, tuple(order.vec_degree(v) for v in vecs))
    return GradedMatrix(matrix.target, source,
                        [order.polys_from_vec(v) for v in vecs], check=False)


def minimal_generators(gens):
    """Minimal subset of homogeneous polynomials generating the same ideal."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    order = ideal_order(gens[0].ring)
    vecs = [order.vec_from_polys([g]) for g in gens]
    kept = minimal_generators_vecs(vecs, order)
    return [order.polys_from_vec(v)[0] for v in kept]


# ---- content-hash cache ----


def _vec_key(vec: dict):
    return sorted(vec.items())


def _cache_key(vecs, order: ModuleOrder) -> str:
    payload = {
        "p": order.ring.p,
        "nvars": order.ring.nvars,
        "kind": order.kind,
        "twists": list(order.twists),
        "gens": sorted([_vec_key(v) for v in vecs]),
    }
    blob = json.dumps(payload, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _cached_buchberger(vecs, order: ModuleOrder, cache_dir) -> GroebnerBasis:
    if cache_dir is None:
        return buchberger_vecs(vecs, order)
    path = Path(cache_dir) / f"{_cache_key(vecs, order)}.json"
    if path.exists():
        data = json.loads(path.read_text())
        elems = [{int(t): c for t, c in e} for e in data["elements"]]
        return GroebnerBasis(order, elems)
    gb = buchberger_vecs(vecs, order)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"elements": [sorted(e.items()) for e in gb.elements]}))
    tmp.replace(path)
    return gb
