"""The bigraded ring ``H^{*,*}(K) = ⊕_J H̃^*(K_J) ≅ H^*(Z_K)``.

A class of bidegree ``(l, J)`` lives in ``H̃^l(K_J)`` and contributes to
``H^{l + |J| + 1}(Z_K)``.  Products are the join maps
``H̃^p(K_I) ⊗ H̃^q(K_J) -> H̃^{p+q+1}(K_{I⊔J})`` for disjoint ``I, J`` and are
zero otherwise.

Sign convention for the cochain-level product: on a simplex ``σ`` of
``K_{I⊔J}`` the value is ``ε · a(σ∩I) · b(σ∩J)`` where ``ε`` is the sign of the
shuffle sorting ``(σ∩I, σ∩J)`` into ``σ``.
"""

from __future__ import annotations

import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator

import numpy as np

from .complex import (
    SimplicialComplex,
    VertexSet,
    full_mask,
    missing_faces,
    popcount,
    vertices_of,
)
from .homology import (
    ChainBasis,
    ChainVector,
    HomologySummary,
    _snf,
    coboundary_of,
    evaluate_sparse,
    reduced_homology,
    simplex_boundary_cycle,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 24

Bidegree = tuple[int, int]


class CapExceeded(RuntimeError):
    """Vertex count above the subset-enumeration cap."""


class NotACocycle(ValueError):
    pass


def subsets_by_cardinality(m: int) -> list[int]:
    """All subsets of ``[m]`` ordered by size, then lexicographically."""
    out = []
    for k in range(m + 1):
        out.extend(sum(1 << v for v in c) for c in combinations(range(1, m + 1), k))
    return out


def shuffle_sign(s: int, t: int) -> int:
    """Sign of the permutation sorting ``sorted(s) + sorted(t)``."""
    inv = 0
    for y in vertices_of(t):
        inv += popcount(s >> (y + 1))
    return -1 if inv % 2 else 1


def _entry(K: SimplicialComplex, J: int) -> tuple[dict, dict] | None:
    if J and K.is_face(J):
        return None  # a simplex is contractible
    summary = HomologySummary(ChainBasis.of(K, J), cohomology=True)
    if summary.is_zero():
        return None
    return summary.ranks, summary.torsion


def _entries_chunk(args):
    K, subsets = args
    return [(J, _entry(K, J)) for J in subsets]


@dataclass
class CohomologyClass:
    """A cocycle on ``K_J`` of degree ``l``, keyed by simplex bitmasks."""

    K: SimplicialComplex
    degree: int
    J: VertexSet
    cochain: dict[int, int]

    @property
    def bidegree(self) -> Bidegree:
        return (self.degree, self.J)

    @property
    def total_degree(self) -> int:
        return self.degree + popcount(self.J) + 1

    def vector(self) -> ChainVector:
        return ChainVector.from_dict(ChainBasis.of(self.K, self.J), self.degree, self.cochain)

    def is_cocycle(self) -> bool:
        above = (s for s in self.K.face_masks(self.degree + 1) if s & ~self.J == 0)
        return not coboundary_of(self.cochain, above)

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        return cup_product(self, other)


def cup_cochains(K: SimplicialComplex, a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    faces = K.face_set
    out: dict[int, int] = defaultdict(int)
    for s, x in a.items():
        for t, y in b.items():
            u = s | t
            if u in faces:
                out[u] += shuffle_sign(s, t) * x * y
    return {u: c for u, c in out.items() if c}


def cup_product(a: CohomologyClass, b: CohomologyClass, check: bool = True) -> CohomologyClass:
    """Product of two classes; zero (at bidegree ``(p+q+1, I∪J)``) if ``I ∩ J ≠ ∅``."""
    if a.K is not b.K and a.K != b.K:
        raise ValueError("classes live on different complexes")
    if check and not (a.is_cocycle() and b.is_cocycle()):
        raise NotACocycle("cup product inputs must be cocycles")
    degree = a.degree + b.degree + 1
    if a.J & b.J:
        return CohomologyClass(a.K, degree, a.J | b.J, {})
    c = CohomologyClass(a.K, degree, a.J | b.J, cup_cochains(a.K, a.cochain, b.cochain))
    if check:
        assert c.is_cocycle()
    return c


@dataclass
class PairingMatrix:
    """Cup products ``H̃^i(K_I) x H̃^{d-1-i}(K_{[m]∖I}) -> H̃^d(K) ≅ Z`` on free generators."""

    row: Bidegree
    col: Bidegree
    matrix: np.ndarray

    @property
    def is_square(self) -> bool:
        return self.matrix.shape[0] == self.matrix.shape[1]

    @property
    def determinant(self) -> int | None:
        if not self.is_square:
            return None
        n = self.matrix.shape[0]
        if n == 0:
            return 1
        return _bareiss([[int(x) for x in row] for row in self.matrix])

    @property
    def unimodular(self) -> bool:
        return self.is_square and abs(self.determinant) == 1


def _bareiss(M: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


class BigradedTable:
    """``H̃^l(K_J)`` for every ``J ⊆ [m]``; only nonzero entries are stored."""

    def __init__(self, K: SimplicialComplex, entries: dict[int, tuple[dict, dict]]):
        self.K = K
        self.m = K.m
        self._raw = entries
        self._summaries: dict[int, HomologySummary] = {}
        self._products: dict[tuple[Bidegree, Bidegree], list] = {}
        self.stats = {"computed": 0, "cached": 0}

    # --- additive structure -------------------------------------------------

    @property
    def subsets(self) -> list[int]:
        return sorted(self._raw, key=lambda J: (popcount(J), vertices_of(J)))

    def summary(self, J: VertexSet) -> HomologySummary | None:
        if J not in self._raw:
            return None
        if J not in self._summaries:
            ranks, torsion = self._raw[J]
            self._summaries[J] = HomologySummary(ChainBasis.of(self.K, J), True, ranks, torsion)
        return self._summaries[J]

    def rank(self, l: int, J: VertexSet) -> int:
        e = self._raw.get(J)
        return e[0].get(l, 0) if e else 0

    def torsion(self, l: int, J: VertexSet) -> tuple[int, ...]:
        e = self._raw.get(J)
        return tuple(e[1].get(l, ())) if e else ()

    def is_zero(self, l: int, J: VertexSet) -> bool:
        return self.rank(l, J) == 0 and not self.torsion(l, J)

    def nonzero(self) -> Iterator[Bidegree]:
        """Nonzero bidegrees ``(l, J)``, ordered by ``|J|``, then ``J``, then ``l``."""
        for J in self.subsets:
            ranks, torsion = self._raw[J]
            for l in sorted(set(ranks) | set(torsion)):
                yield (l, J)

    def betti(self) -> dict[int, int]:
        """Ranks of ``H^*(Z_K)`` by total degree."""
        out: dict[int, int] = defaultdict(int)
        for J, (ranks, _) in self._raw.items():
            for l, r in ranks.items():
                out[l + popcount(J) + 1] += r
        return dict(sorted(out.items()))

    def torsion_by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for J, (_, torsion) in self._raw.items():
            for l, t in torsion.items():
                out[l + popcount(J) + 1].extend(t)
        return {k: sorted(v) for k, v in sorted(out.items())}

    @property
    def has_torsion(self) -> bool:
        return any(t for _, tors in self._raw.values() for t in tors.values())

    def restrict(self, W: VertexSet) -> dict[tuple[int, tuple[int, ...]], int]:
        """Ranks of entries with ``J ⊆ W``, relabeled onto ``1..|W|``."""
        keep = vertices_of(W)
        index = {v: i + 1 for i, v in enumerate(keep)}
        out = {}
        for l, J in self.nonzero():
            if J & ~W == 0 and self.rank(l, J):
                out[(l, tuple(index[v] for v in vertices_of(J)))] = self.rank(l, J)
        return out

    # --- generators and coordinates ----------------------------------------

    def classes(self, l: int, J: VertexSet) -> list[CohomologyClass]:
        """Generator classes of ``H̃^l(K_J)``: torsion generators first, then free."""
        s = self.summary(J)
        if s is None or s.is_zero(l):
            return []
        simplices = s.basis.simplices[l]
        out = []
        for vec in s.group(l).generators:
            out.append(CohomologyClass(self.K, l, J, {x: c for x, c in zip(simplices, vec) if c}))
        return out

    def free_classes(self, l: int, J: VertexSet) -> list[CohomologyClass]:
        return self.classes(l, J)[len(self.torsion(l, J)):]

    def unit(self) -> CohomologyClass:
        return CohomologyClass(self.K, -1, 0, {0: 1})

    def coordinates(self, c: CohomologyClass) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``(torsion residues, free coordinates)`` of a class in its group."""
        s = self.summary(c.J)
        if s is None or s.is_zero(c.degree):
            return (), ()
        idx = s.basis.index[c.degree]
        vec = [0] * s.basis.size(c.degree)
        for x, a in c.cochain.items():
            vec[idx[x]] = a
        return s.group(c.degree).coordinates(vec)

    def is_zero_class(self, c: CohomologyClass) -> bool:
        tors, free = self.coordinates(c)
        return not any(tors) and not any(free)

    # --- products -----------------------------------------------------------

    def product_matrix(self, a: Bidegree, b: Bidegree) -> list[list[tuple]]:
        """Coordinates of ``g_i · h_j`` for generators ``g_i`` of ``a`` and ``h_j`` of ``b``."""
        key = (a, b)
        if key not in self._products:
            (p, I), (q, J) = a, b
            target = (p + q + 1, I | J)
            if I & J or self.is_zero(*target):
                rows = [[None] * len(self.classes(q, J)) for _ in self.classes(p, I)]
            else:
                rows = [
                    [self.coordinates(cup_product(g, h, check=False)) for h in self.classes(q, J)]
                    for g in self.classes(p, I)
                ]
            self._products[key] = rows
        return self._products[key]

    def products_vanish(self, a: Bidegree, b: Bidegree) -> bool:
        for row in self.product_matrix(a, b):
            for entry in row:
                if entry is not None and (any(entry[0]) or any(entry[1])):
                    return False
        return True

    def candidate_pairs(self, within: VertexSet | None = None) -> Iterator[tuple[Bidegree, Bidegree]]:
        """Unordered pairs of positive bidegrees whose product can be nonzero."""
        within = full_mask(self.m) if within is None else within
        nz = [bd for bd in self.nonzero() if bd[1] and bd[1] & ~within == 0]
        for i, a in enumerate(nz):
            for b in nz[i + 1:]:
                if a[1] & b[1]:
                    continue
                if not self.is_zero(a[0] + b[0] + 1, a[1] | b[1]):
                    yield a, b

    @cached_property
    def product_supports(self) -> frozenset[int]:
        """Sets ``I ⊔ J`` on which some product of generators is nonzero."""
        out = set()
        for a, b in self.candidate_pairs():
            if (a[1] | b[1]) in out:
                continue
            if not self.products_vanish(a, b):
                out.add(a[1] | b[1])
        return frozenset(out)

    # --- sphere data --------------------------------------------------------

    @cached_property
    def fundamental_cycle(self) -> dict[int, int]:
        """Generator of ``H̃_d(K)``, signed to be ``+1`` on the smallest facet."""
        d = self.K.dim
        hom = reduced_homology(self.K)
        if hom.rank(d) != 1:
            raise ValueError("K has no fundamental class in its top degree")
        vec = hom.generators(d)[0]
        simplices = hom.basis.simplices[d]
        cyc = {s: c for s, c in zip(simplices, vec) if c}
        first = min(simplices, key=vertices_of)
        if cyc.get(first, 0) < 0:
            cyc = {s: -c for s, c in cyc.items()}
        return cyc

    def top_value(self, c: CohomologyClass) -> int:
        """Coordinate of a top-degree class on ``[m]`` against the fixed generator."""
        if c.J != full_mask(self.m) or c.degree != self.K.dim:
            return 0
        return evaluate_sparse(c.cochain, self.fundamental_cycle)


def decompose(
    K: SimplicialComplex,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    threads: int = 1,
    cache=None,
) -> BigradedTable:
    """Hochster decomposition of ``H^*(Z_K)`` over all ``2^m`` subsets.

    ``threads > 1`` fans the subsets out to a process pool (``0`` means one
    worker per CPU).  ``cache`` is an optional :class:`~malring.cache.HomologyCache`.
    """
    if K.m > cap and not force:
        raise CapExceeded(f"m = {K.m} exceeds the subset cap {cap} (override with force)")
    subsets = subsets_by_cardinality(K.m)
    entries: dict[int, tuple[dict, dict]] = {}
    stats = {"computed": 0, "cached": 0}
    pending = []
    for J in subsets:
        hit = cache.get(K.digest, J) if cache is not None else None
        if hit is not None:
            stats["cached"] += 1
            if hit[0] or hit[1]:
                entries[J] = hit
        else:
            pending.append(J)
    workers = (os.cpu_count() or 1) if threads == 0 else threads
    if workers > 1 and len(pending) > 64:
        chunk = max(16, len(pending) // (workers * 8))
        parts = [(K, pending[i:i + chunk]) for i in range(0, len(pending), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_entries_chunk, parts) for r in part]
    else:
        results = _entries_chunk((K, pending))
    for J, entry in results:
        stats["computed"] += 1
        if entry is not None:
            entries[J] = entry
        if cache is not None:
            cache.put(K.digest, J, entry or ({}, {}))
    table = BigradedTable(K, entries)
    table.stats = stats
    log.debug("decomposed %s: %s", K.digest[:12], stats)
    return table


def aggregate_betti(table: BigradedTable) -> dict[int, int]:
    """Independent tally of ``rank H^l(Z_K) = Σ_J rank H̃^{l-|J|-1}(K_J)``."""
    out: dict[int, int] = {}
    for l in range(0, 2 * table.m + 2):
        total = 0
        for J in subsets_by_cardinality(table.m):
            total += table.rank(l - popcount(J) - 1, J)
        if total:
            out[l] = total
    return out


def pairing_matrix(table: BigradedTable, i: int, I: VertexSet) -> PairingMatrix:
    """Products of ``H̃^i(K_I)`` with ``H̃^{d-1-i}(K_{[m]∖I})`` read in ``H̃^d(K) ≅ Z``."""
    from .classify import certify_sphere

    if not certify_sphere(table.K).ok:
        raise ValueError("pairing matrices need a certified sphere")
    d = table.K.dim
    comp = full_mask(table.m) & ~I
    rows = table.free_classes(i, I)
    cols = table.free_classes(d - 1 - i, comp)
    M = np.zeros((len(rows), len(cols)), dtype=object)
    for r, a in enumerate(rows):
        for c, b in enumerate(cols):
            M[r, c] = table.top_value(cup_product(a, b, check=False))
    return PairingMatrix((i, I), (d - 1 - i, comp), M)


def pairing_blocks(table: BigradedTable) -> list[PairingMatrix]:
    """One pairing block per complementary pair of bidegrees (each pair once)."""
    d = table.K.dim
    full = full_mask(table.m)
    out = []
    for l, J in table.nonzero():
        if J == 0 or J == full:
            continue
        partner = (d - 1 - l, full & ~J)
        if (l, J) <= partner or table.is_zero(*partner):
            out.append(pairing_matrix(table, l, J))
    return out


def _reduce_span(elems, torsion: tuple[int, ...]):
    """Hermite-style reduction of ``[(coords, cochain)]`` modulo torsion relations.

    Returns a generating set (with matching cochains) of the subgroup spanned,
    dropping members whose class is zero.
    """
    t = len(torsion)
    rows = [(list(tc) + list(fc), dict(ch)) for (tc, fc), ch in elems]
    n = t + (len(rows[0][0]) - t if rows else 0)
    for i, d in enumerate(torsion):
        rel = [0] * n
        rel[i] = d
        rows.append((rel, {}))

    def combine(x, y, a, b):  # a*x + b*y
        vec = [a * u + b * v for u, v in zip(x[0], y[0])]
        ch = defaultdict(int)
        for s, c in x[1].items():
            ch[s] += a * c
        for s, c in y[1].items():
            ch[s] += b * c
        return vec, {s: c for s, c in ch.items() if c}

    out = []
    for col in range(n):
        pivots = [r for r in rows if r[0][col]]
        rest = [r for r in rows if not r[0][col]]
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[0][col]))
            p = pivots[0]
            new = [p]
            for r in pivots[1:]:
                q = r[0][col] // p[0][col]
                r2 = combine(r, p, 1, -q)
                (new if r2[0][col] else rest).append(r2)
            pivots = new
        if pivots:
            out.append(pivots[0])
        rows = rest
    keep = []
    for vec, ch in out:
        tors = [v % d for v, d in zip(vec[:t], torsion)]
        if any(tors) or any(vec[t:]):
            keep.append(((tuple(tors), tuple(vec[t:])), ch))
    return keep


def product_length(table: BigradedTable) -> int:
    """Largest ``r`` with a nonzero product of ``r`` positive-degree classes."""
    gens: dict[Bidegree, list[CohomologyClass]] = {}
    for bd in table.nonzero():
        if bd[1]:
            gens[bd] = table.classes(*bd)
    if not gens:
        return 0
    level: dict[Bidegree, list] = {
        bd: [(table.coordinates(c), c.cochain) for c in cs] for bd, cs in gens.items()
    }
    r = 1
    while True:
        nxt: dict[Bidegree, list] = defaultdict(list)
        for (p, I), elems in level.items():
            for (q, J), gs in gens.items():
                if I & J:
                    continue
                target = (p + q + 1, I | J)
                if table.is_zero(*target):
                    continue
                for _, ch in elems:
                    x = CohomologyClass(table.K, p, I, ch)
                    for g in gs:
                        prod = cup_product(x, g, check=False)
                        coords = table.coordinates(prod)
                        if any(coords[0]) or any(coords[1]):
                            nxt[target].append((coords, prod.cochain))
        level = {}
        for bd, elems in nxt.items():
            reduced = _reduce_span(elems, table.torsion(*bd))
            if reduced:
                level[bd] = reduced
        if not level:
            return r
        r += 1


@dataclass
class FaceEvaluation:
    """Evaluations of the generators of ``H̃^l(K_J)`` against ``∂Δ_I`` for ``I ⊆ J``."""

    bidegree: Bidegree
    faces: list[tuple[int, ...]]
    matrix: np.ndarray
    torsion: tuple[int, ...]
    injective: bool


def missing_face_evaluation(table: BigradedTable, l: int) -> dict[int, FaceEvaluation]:
    """Per nonzero ``H̃^l(K_J)``, the joint evaluation map into ``Z^N`` and whether it is injective."""
    mfs = missing_faces(table.K, l + 1) if l >= 0 else []
    cycles = [(mf.vertices, mf.mask, simplex_boundary_cycle(mf.vertices)) for mf in mfs]
    out = {}
    for deg, J in table.nonzero():
        if deg != l:
            continue
        here = [(v, cyc) for v, mask, cyc in cycles if mask & ~J == 0]
        classes = table.classes(l, J)
        M = np.zeros((len(classes), len(here)), dtype=object)
        for r, c in enumerate(classes):
            for k, (_, cyc) in enumerate(here):
                M[r, k] = evaluate_sparse(c.cochain, cyc)
        torsion = table.torsion(l, J)
        free = [[int(x) for x in row] for row in M[len(torsion):]]
        rank = len(_snf(free, len(free), len(here), track=False)) if free and here else 0
        injective = not torsion and rank == table.rank(l, J)
        out[J] = FaceEvaluation((l, J), [v for v, _ in here], M, torsion, injective)
    return out


def has_trivial_products(table: BigradedTable, within: VertexSet | None = None) -> bool:
    """True iff every product of positive-degree classes supported in ``within`` vanishes."""
    within = full_mask(table.m) if within is None else within
    return not any(U & ~within == 0 for U in table.product_supports)


def decomposable_evaluations(table: BigradedTable) -> Iterator[tuple[Bidegree, tuple[int, ...], int]]:
    """``(target bidegree, missing face, value)`` for every product of generators
    evaluated against every missing face cycle inside the target."""
    cycles_by_dim: dict[int, list] = {}
    for a, b in table.candidate_pairs():
        (p, I), (q, J) = a, b
        l = p + q + 1
        if l not in cycles_by_dim:
            cycles_by_dim[l] = [
                (mf.vertices, mf.mask, simplex_boundary_cycle(mf.vertices))
                for mf in missing_faces(table.K, l + 1)
            ]
        U = I | J
        here = [(v, cyc) for v, mask, cyc in cycles_by_dim[l] if mask & ~U == 0]
        if not here:
            continue
        for g in table.classes(p, I):
            for h in table.classes(q, J):
                prod = cup_cochains(table.K, g.cochain, h.cochain)
                for v, cyc in here:
                    yield (l, U), v, evaluate_sparse(prod, cyc)
