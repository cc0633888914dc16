"""Decision procedures for "is H*(Z_K) the ring of a connected sum of sphere products?".

Sphere certification, McGavran's formula for dual stacked polytopes, ring
presentations and their verification against a computed bigraded table, and
the classifiers for two- and three-dimensional spheres.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .complex import (
    SimplicialComplex,
    boundary_simplex,
    full_mask,
    link,
    mask_of,
    missing_faces,
    popcount,
    vertices_of,
)
from .graphs import ChordalityResult, Graph, MissingEdgeReport, is_chordal, missing_edge_structure
from .hochster import (
    BigradedTable,
    cup_product,
    decompose,
    has_trivial_products,
    missing_face_evaluation,
    pairing_blocks,
)
from .homology import describe_group, reduced_homology

CERTIFIED = "Certified"
CERTIFIED_HOMOLOGY = "CertifiedHomology"
FAILED = "Failed"

CROSS_POLYTOPE = "CrossPolytope"
CHORDAL = "Chordal"
TWO_MISSING_EDGES = "TwoMissingEdges"
PAIRS_VERIFIED = "PairsVerified"
NONE = "None"


class CertificationError(ValueError):
    """Input is not a (homology) sphere of the required dimension."""


@dataclass(frozen=True)
class SphereCertificate:
    dim: int
    checks: tuple[tuple[str, bool], ...]
    verdict: str
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != FAILED

    def as_dict(self) -> dict:
        return {"dim": self.dim, "verdict": self.verdict, "reason": self.reason, "checks": dict(self.checks)}


def _ridge_counts(K: SimplicialComplex) -> Counter:
    counts: Counter = Counter()
    for f in K.facet_masks:
        for v in vertices_of(f):
            counts[f & ~(1 << v)] += 1
    return counts


def _strongly_connected(K: SimplicialComplex) -> bool:
    by_ridge: dict[int, list[int]] = {}
    for i, f in enumerate(K.facet_masks):
        for v in vertices_of(f):
            by_ridge.setdefault(f & ~(1 << v), []).append(i)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        f = K.facet_masks[i]
        for v in vertices_of(f):
            for j in by_ridge[f & ~(1 << v)]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
    return len(seen) == len(K.facets)


def _homology_sphere_reason(K: SimplicialComplex) -> str:
    d = K.dim
    h = reduced_homology(K)
    for k in h.degrees:
        expected = 1 if k == d else 0
        if h.rank(k) != expected or h.torsion_of(k):
            return f"homology: H̃_{k} = {describe_group(h.rank(k), h.torsion_of(k))}"
    return ""


@lru_cache(maxsize=4096)
def certify_sphere(K: SimplicialComplex) -> SphereCertificate:
    """Combinatorial and homological sphere checks.

    Dimensions up to 2 are recognised exactly.  In dimension 3 and above the
    verdict is at best ``CertifiedHomology``: links are certified recursively and
    the homology is that of a sphere, but genuine sphere recognition is not
    attempted.
    """
    d = K.dim
    checks: list[tuple[str, bool]] = []

    def fail(name: str, reason: str) -> SphereCertificate:
        checks.append((name, False))
        return SphereCertificate(d, tuple(checks), FAILED, reason)

    if K.m == 0:
        return fail("nonempty", "empty complex")
    if not K.is_pure:
        return fail("pure", "not pure")
    checks.append(("pure", True))
    if d == 0:
        if K.m != 2:
            return fail("two_points", f"{K.m} points")
        checks.append(("two_points", True))
        return SphereCertificate(0, tuple(checks), CERTIFIED)
    if any(c != 2 for c in _ridge_counts(K).values()):
        return fail("pseudomanifold", "some ridge is not in exactly two facets")
    checks.append(("pseudomanifold", True))
    if not _strongly_connected(K):
        return fail("strongly_connected", "facet graph is disconnected")
    checks.append(("strongly_connected", True))
    for v in range(1, K.m + 1):
        lk = certify_sphere(link(K, v))
        if not lk.ok or lk.dim != d - 1:
            return fail("links", f"link of vertex {v} is not a {d - 1}-sphere ({lk.reason})")
    checks.append(("links", True))
    if d == 2:
        if K.euler_characteristic() != 2:
            reason = _homology_sphere_reason(K) or f"Euler characteristic {K.euler_characteristic()}"
            return fail("euler_characteristic", reason)
        checks.append(("euler_characteristic", True))
    reason = _homology_sphere_reason(K)
    if reason:
        return fail("homology", reason)
    checks.append(("homology", True))
    verdict = CERTIFIED if d <= 2 else CERTIFIED_HOMOLOGY
    return SphereCertificate(d, tuple(checks), verdict)


# --- sphere decompositions -------------------------------------------------


@dataclass(frozen=True)
class SphereDecomposition:
    """Connected sum of sphere products: ``((dims), multiplicity)`` per summand type."""

    summands: tuple[tuple[tuple[int, ...], int], ...]
    total_dim: int

    @classmethod
    def from_list(cls, products: Sequence[Sequence[int]], total_dim: int) -> "SphereDecomposition":
        counts = Counter(tuple(p) for p in products)
        return cls(tuple(counts.items()), total_dim)

    @property
    def count(self) -> int:
        return sum(n for _, n in self.summands)

    def canonical(self) -> "SphereDecomposition":
        counts: Counter = Counter()
        for dims, n in self.summands:
            counts[tuple(sorted(dims))] += n
        return SphereDecomposition(tuple(sorted(counts.items())), self.total_dim)

    def __str__(self) -> str:
        if not self.summands:
            return f"S^{self.total_dim}"
        parts = []
        for dims, n in self.summands:
            prod = "x".join(f"S^{d}" for d in dims)
            parts.append(f"({prod})^#{n}" if n > 1 else f"({prod})")
        return " # ".join(parts)

    def as_dict(self) -> dict:
        return {
            "total_dim": self.total_dim,
            "summands": [{"spheres": list(d), "count": n} for d, n in self.summands],
            "text": str(self),
        }


def mcgavran_decomposition(m: int, n: int) -> SphereDecomposition:
    """Connected sum predicted for the moment-angle manifold of a dual stacked
    ``n``-polytope with ``m`` facets: ``(k - 2) * C(m - n, k - 1)`` copies of
    ``S^k x S^{m+n-k}`` for ``k = 3, ..., m - n + 1``."""
    if m < n + 1:
        raise ValueError(f"need m >= n + 1, got m={m}, n={n}")
    summands = []
    for k in range(3, m - n + 2):
        count = (k - 2) * comb(m - n, k - 1)
        if count:
            summands.append(((k, m + n - k), count))
    return SphereDecomposition(tuple(summands), m + n)


def decomposition_to_betti(dec: SphereDecomposition, total_dim: int | None = None) -> dict[int, int]:
    """Betti numbers of the connected sum (bottom and top classes shared)."""
    total = dec.total_dim if total_dim is None else total_dim
    betti: Counter = Counter({0: 1, total: 1})
    for dims, n in dec.summands:
        if sum(dims) != total or any(d < 1 for d in dims):
            raise ValueError(f"summand {dims} does not have dimension {total}")
        for r in range(1, len(dims)):
            for sub in combinations(dims, r):
                betti[sum(sub)] += n
    return dict(sorted(betti.items()))


# --- ring presentations ------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    bidegree: tuple[int, int] | None = None  # (l, J) in the bigraded table


@dataclass
class RingPresentation:
    """Cohomology of ``M_1 # ... # M_k`` with ``M_i`` a product of spheres.

    Each summand lists the generators of one ``M_i``; the product of all of them
    is the fundamental class ``c``, every proper sub-product is a basis element,
    and products across summands vanish.
    """

    summands: list[tuple[Generator, ...]]
    total_dim: int
    note: str = ""

    @property
    def generators(self) -> list[Generator]:
        return [g for s in self.summands for g in s]

    @property
    def bound(self) -> bool:
        return all(g.bidegree is not None for g in self.generators)

    def betti(self) -> dict[int, int]:
        return decomposition_to_betti(self.decomposition())

    def decomposition(self) -> SphereDecomposition:
        return SphereDecomposition.from_list([[g.degree for g in s] for s in self.summands], self.total_dim)

    def bidegree_ranks(self) -> Counter:
        """Basis elements per bidegree (requires bound generators); excludes unit and top."""
        out: Counter = Counter()
        for s in self.summands:
            for r in range(1, len(s)):
                for sub in combinations(s, r):
                    out[_product_bidegree(sub)] += 1
        return out

    def relations(self) -> list[str]:
        return [" * ".join(g.name for g in s) + " = c" for s in self.summands]

    def as_dict(self) -> dict:
        return {
            "total_dim": self.total_dim,
            "generators": [
                {
                    "name": g.name,
                    "degree": g.degree,
                    "bidegree": None if g.bidegree is None else [g.bidegree[0], list(vertices_of(g.bidegree[1]))],
                }
                for g in self.generators
            ],
            "relations": self.relations(),
            "note": self.note,
        }


def _product_bidegree(gens: Sequence[Generator]) -> tuple[int, int]:
    l = sum(g.bidegree[0] for g in gens) + len(gens) - 1
    J = 0
    for g in gens:
        J |= g.bidegree[1]
    return (l, J)


def presentation_from_decomposition(dec: SphereDecomposition) -> RingPresentation:
    """Unbound presentation read off a decomposition (generators named by position)."""
    summands = []
    i = 0
    for dims, n in dec.summands:
        for _ in range(n):
            i += 1
            names = "abcdefgh"
            summands.append(tuple(Generator(f"{names[j]}{i}", d) for j, d in enumerate(dims)))
    return RingPresentation(summands, dec.total_dim)


def _total_degree(l: int, J: int) -> int:
    return l + popcount(J) + 1


def pairs_presentation(table: BigradedTable, skip: set | None = None) -> RingPresentation:
    """One pair ``(a, b)`` per rank of every complementary block ``(i, I) / (d-1-i, [m]∖I)``."""
    K = table.K
    d = K.dim
    full = full_mask(table.m)
    skip = skip or set()
    summands = []
    k = 0
    for l, J in table.nonzero():
        if J in (0, full) or (l, J) in skip:
            continue
        partner = (d - 1 - l, full & ~J)
        if partner in skip or (l, J) > partner and not table.is_zero(*partner):
            continue
        for _ in range(table.rank(l, J)):
            k += 1
            summands.append(
                (
                    Generator(f"a{k}", _total_degree(l, J), (l, J)),
                    Generator(f"b{k}", _total_degree(*partner), partner),
                )
            )
    return RingPresentation(summands, table.m + d + 1, note="pairs only")


def cross_polytope_presentation(table: BigradedTable, pairs: Sequence[tuple[int, int]]) -> RingPresentation:
    gens = tuple(Generator(f"a{i + 1}", 3, (0, mask_of(p))) for i, p in enumerate(pairs))
    return RingPresentation([gens], table.m + table.K.dim + 1, note=f"product of {len(pairs)} copies of S^3")


def two_missing_edges_presentation(table: BigradedTable, edges) -> RingPresentation:
    full = full_mask(table.m)
    I1, I2 = mask_of(edges[0]), mask_of(edges[1])
    Jb = full & ~(I1 | I2)
    a1 = Generator("a1", 3, (0, I1))
    a2 = Generator("a2", 3, (0, I2))
    b = Generator("b", _total_degree(1, Jb), (1, Jb))
    special = (a1, a2, b)
    skip = {_product_bidegree(sub) for r in (1, 2) for sub in combinations(special, r)}
    pairs = pairs_presentation(table, skip)
    summands = [special] + [
        (Generator(f"x{i + 1}", x.degree, x.bidegree), Generator(f"y{i + 1}", y.degree, y.bidegree))
        for i, (x, y) in enumerate(pairs.summands)
    ]
    N = len(pairs.summands)
    return RingPresentation(summands, table.m + 4, note=f"a1*a2*b = c plus N = {N} pairs x_i*y_i = c")


@dataclass
class PresentationVerdict:
    passed: bool
    checks: dict[str, bool]
    messages: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "messages": self.messages}


def _sole_class(table: BigradedTable, bidegree):
    classes = table.free_classes(*bidegree)
    return classes[0] if len(classes) == 1 and not table.torsion(*bidegree) else None


def verify_presentation(K: SimplicialComplex, table: BigradedTable, pres: RingPresentation) -> PresentationVerdict:
    """Check a presentation against the table.

    1. graded ranks (and per-bidegree ranks when generators are bound);
    2. no torsion anywhere;
    3. every complementary pairing block is square and unimodular;
    4. every product of bidegree groups the presentation does not allow vanishes;
    5. for summands with three or more generators, their full product pairs to
       ±1 with the fundamental class.
    """
    checks: dict[str, bool] = {}
    msgs: list[str] = []
    full = full_mask(table.m)
    d = K.dim

    try:
        expected = pres.betti()
    except ValueError as exc:
        return PresentationVerdict(False, {"well_formed": False}, [str(exc)])
    actual = table.betti()
    checks["graded_ranks"] = expected == actual
    if not checks["graded_ranks"]:
        msgs.append(f"rank mismatch: presentation {expected} vs table {actual}")
    if pres.bound:
        got = Counter({bd: table.rank(*bd) for bd in table.nonzero() if bd[1] not in (0, full)})
        got = +got
        checks["bidegree_ranks"] = pres.bidegree_ranks() == got
        if not checks["bidegree_ranks"]:
            msgs.append("bidegree ranks differ from the table")

    checks["torsion_free"] = not table.has_torsion
    if not checks["torsion_free"]:
        msgs.append(f"torsion in the table: {table.torsion_by_degree()}")

    cert = certify_sphere(K)
    if cert.ok and pres.total_dim == table.m + d + 1:
        blocks = pairing_blocks(table)
        bad = [b for b in blocks if not b.unimodular]
        checks["poincare_pairing"] = not bad
        for b in bad[:5]:
            msgs.append(f"pairing block {b.row} x {b.col} not unimodular (shape {b.matrix.shape})")
    else:
        checks["poincare_pairing"] = False
        msgs.append("not a certified sphere of the presented dimension")

    big = [s for s in pres.summands if len(s) >= 3]
    allowed: set = set()
    if any(g.bidegree is None for s in big for g in s):
        checks["claimed_zero_products"] = False
        msgs.append("summands with three or more spheres need bound generators")
    else:
        for s in big:
            for r in range(1, len(s)):
                for left in combinations(range(len(s)), r):
                    rest = [g for i, g in enumerate(s) if i not in left]
                    for r2 in range(1, len(rest) + 1):
                        for right in combinations(rest, r2):
                            x = _product_bidegree([s[i] for i in left])
                            y = _product_bidegree(right)
                            allowed.add((x, y))
                            allowed.add((y, x))
        bad_pairs = []
        for a, b in table.candidate_pairs():
            top = a[1] | b[1] == full and a[0] + b[0] + 1 == d
            if top or (a, b) in allowed:
                continue
            if not table.products_vanish(a, b):
                bad_pairs.append((a, b))
        checks["claimed_zero_products"] = not bad_pairs
        for a, b in bad_pairs[:5]:
            msgs.append(
                f"nonzero product H^{a[0]}(K_{list(vertices_of(a[1]))}) x H^{b[0]}(K_{list(vertices_of(b[1]))})"
            )

    if big:
        ok = True
        for s in big:
            classes = [_sole_class(table, g.bidegree) for g in s] if pres.bound else [None]
            if any(c is None for c in classes):
                ok = False
                msgs.append(f"summand {[g.name for g in s]} has ambiguous or missing classes")
                continue
            prod = classes[0]
            for c in classes[1:]:
                prod = cup_product(prod, c, check=False)
            value = table.top_value(prod)
            if abs(value) != 1:
                ok = False
                msgs.append(f"product {'*'.join(g.name for g in s)} pairs to {value} with c")
        checks["summand_products"] = ok

    return PresentationVerdict(all(checks.values()), checks, msgs)


# --- 2-spheres -----------------------------------------------------------------


def recognize_dual_stacked(K: SimplicialComplex) -> list[int] | None:
    """Undo stellar subdivisions of a 2-sphere down to the tetrahedron boundary.

    Repeatedly removes a degree-3 vertex (largest label first) whose link
    triangle is not already a face, filling the triangle in.  Returns the removed
    vertices in order, or ``None`` if no such vertex exists before reaching four
    vertices.
    """
    cert = certify_sphere(K)
    if not cert.ok or cert.dim != 2:
        raise CertificationError("recognize_dual_stacked needs a 2-sphere")
    facets = set(K.facet_masks)
    alive = full_mask(K.m)
    removed: list[int] = []
    while popcount(alive) > 4:
        step = None
        for v in reversed(vertices_of(alive)):
            bit = 1 << v
            star = [f for f in facets if f & bit]
            if len(star) != 3:
                continue
            lk = 0
            for f in star:
                lk |= f & ~bit
            if popcount(lk) == 3 and lk not in facets:
                step = (v, star, lk)
                break
        if step is None:
            return None
        v, star, lk = step
        facets.difference_update(star)
        facets.add(lk)
        alive &= ~(1 << v)
        removed.append(v)
    return removed


def is_cross_polytope(K: SimplicialComplex) -> list[tuple[int, int]] | None:
    """The antipodal pairs if ``K`` is the boundary of a cross-polytope."""
    if K.m % 2 or K.m < 2:
        return None
    G = Graph.from_complex(K)
    pairs = []
    for v in range(1, K.m + 1):
        non = [u for u in range(1, K.m + 1) if u != v and not G.has_edge(u, v)]
        if len(non) != 1:
            return None
        if v < non[0]:
            pairs.append((v, non[0]))
    n = len(pairs)
    if len(pairs) * 2 != K.m or len(K.facets) != 2 ** n:
        return None
    for f in K.facets:
        if len(f) != n or any(len(set(p) & set(f)) != 1 for p in pairs):
            return None
    return pairs


@dataclass
class ClassificationReport:
    certificate: SphereCertificate
    chordality: ChordalityResult | None = None
    missing_edges: MissingEdgeReport | None = None
    case: str = NONE
    decomposition: SphereDecomposition | None = None
    presentation: RingPresentation | None = None
    verification: PresentationVerdict | None = None
    extras: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.case != NONE and self.verification is not None and self.verification.passed

    def as_dict(self) -> dict:
        ch = self.chordality
        me = self.missing_edges
        return {
            "case": self.case,
            "verified": self.verified,
            "certificate": self.certificate.as_dict(),
            "chordality": None
            if ch is None
            else {
                "chordal": ch.chordal,
                "order": list(ch.order) if ch.order else None,
                "witness": list(ch.witness) if ch.witness else None,
            },
            "missing_edges": None
            if me is None
            else {
                "edges": [list(e) for e in me.edges],
                "disjoint": me.disjoint,
                "pairs_form_4cycles": me.pairs_form_4cycles,
                "join_condition": me.join_condition,
            },
            "decomposition": None if self.decomposition is None else self.decomposition.as_dict(),
            "presentation": None if self.presentation is None else self.presentation.as_dict(),
            "verification": None if self.verification is None else self.verification.as_dict(),
            "extras": self.extras,
            "notes": self.notes,
        }


def _require(K: SimplicialComplex, d: int) -> SphereCertificate:
    cert = certify_sphere(K)
    if not cert.ok or cert.dim != d:
        raise CertificationError(f"not a certified {d}-sphere: {cert.reason or f'dimension {cert.dim}'}")
    return cert


def classify_2sphere(K: SimplicialComplex, table: BigradedTable | None = None, golod: bool = False) -> ClassificationReport:
    """Classify a 2-sphere: octahedron, chordal (= dual stacked), or neither.

    The chordality verdict, the dual-stacked reduction and the verification of
    the pairs presentation are computed independently and reported together.
    """
    cert = _require(K, 2)
    table = table or decompose(K)
    report = ClassificationReport(cert, is_chordal(Graph.from_complex(K)), missing_edge_structure(K))
    pairs = is_cross_polytope(K)
    if pairs:
        report.case = CROSS_POLYTOPE
        report.presentation = cross_polytope_presentation(table, pairs)
        report.decomposition = report.presentation.decomposition()
        report.verification = verify_presentation(K, table, report.presentation)
        report.notes.append("octahedron: Z_K = S^3 x S^3 x S^3")
        return report
    reduction = recognize_dual_stacked(K)
    candidate = pairs_presentation(table)
    pairs_verdict = verify_presentation(K, table, candidate)
    report.extras["dual_stacked_reduction"] = reduction
    report.extras["equivalence"] = {
        "chordal": report.chordality.chordal,
        "dual_stacked": reduction is not None,
        "pairs_verified": pairs_verdict.passed,
    }
    if len(set(report.extras["equivalence"].values())) != 1:
        report.notes.append("INCONSISTENT: chordality, dual-stackedness and ring verification disagree")
    if golod:
        report.extras["weak_min_non_golod"] = weak_min_non_golod(K, table).as_dict()
    if report.chordality.chordal:
        report.case = CHORDAL
        report.presentation = candidate
        report.verification = pairs_verdict
        report.decomposition = mcgavran_decomposition(K.m, 3)
        if report.decomposition.canonical() != candidate.decomposition().canonical():
            report.notes.append("McGavran prediction differs from the presentation read off the table")
            report.verification.passed = False
    else:
        report.notes.append(f"chordless cycle {list(report.chordality.witness)}")
    return report


def classify_3sphere(K: SimplicialComplex, table: BigradedTable | None = None) -> ClassificationReport:
    """Classify a 3-sphere into cross-polytope / chordal / two missing edges / none."""
    cert = _require(K, 3)
    table = table or decompose(K)
    chord = is_chordal(Graph.from_complex(K))
    mer = missing_edge_structure(K)
    report = ClassificationReport(cert, chord, mer)
    report.notes.append("sphere recognised up to homology only (CertifiedHomology)")
    pairs = is_cross_polytope(K)
    if pairs:
        report.case = CROSS_POLYTOPE
        report.presentation = cross_polytope_presentation(table, pairs)
    elif chord.chordal:
        report.case = CHORDAL
        report.presentation = pairs_presentation(table)
    elif mer.r == 2 and mer.disjoint and mer.pairs_form_4cycles:
        report.case = TWO_MISSING_EDGES
        report.presentation = two_missing_edges_presentation(table, mer.edges)
        report.extras["N"] = len(report.presentation.summands) - 1
    else:
        report.notes.append(
            f"{mer.r} missing edges (disjoint={mer.disjoint}, join={mer.join_condition}); "
            f"chordless cycle {list(chord.witness)}"
        )
        return report
    report.decomposition = report.presentation.decomposition().canonical()
    report.verification = verify_presentation(K, table, report.presentation)
    return report


@dataclass
class SsndimResult:
    passed: bool
    q: int
    per_degree: dict[int, bool]
    presentation: RingPresentation | None = None
    verification: PresentationVerdict | None = None


def ssndim_check(K: SimplicialComplex, table: BigradedTable | None = None) -> SsndimResult:
    """Are ``H^{l,*}`` generated by missing faces for all ``l <= floor((2d-1)/3)``?"""
    cert = certify_sphere(K)
    if not cert.ok:
        raise CertificationError(f"not a certified sphere: {cert.reason}")
    d = cert.dim
    if K == boundary_simplex(d + 1):
        raise ValueError("the boundary of a simplex is excluded")
    table = table or decompose(K)
    q = (2 * d - 1) // 3
    per = {}
    for l in range(0, q + 1):
        per[l] = all(ev.injective for ev in missing_face_evaluation(table, l).values())
    passed = all(per.values())
    result = SsndimResult(passed, q, per)
    if passed:
        result.presentation = pairs_presentation(table)
        result.verification = verify_presentation(K, table, result.presentation)
    return result


def classify(K: SimplicialComplex, table: BigradedTable | None = None) -> ClassificationReport:
    """Dispatch on dimension; other dimensions use the missing-face criterion."""
    cert = certify_sphere(K)
    if not cert.ok:
        raise CertificationError(cert.reason)
    if cert.dim == 2:
        return classify_2sphere(K, table)
    if cert.dim == 3:
        return classify_3sphere(K, table)
    table = table or decompose(K)
    report = ClassificationReport(cert, is_chordal(Graph.from_complex(K)), missing_edge_structure(K))
    if K == boundary_simplex(cert.dim + 1):
        report.extras["ssndim"] = None
    else:
        s = ssndim_check(K, table)
        report.extras["ssndim"] = {"passed": s.passed, "q": s.q, "per_degree": s.per_degree}
    pres = pairs_presentation(table)
    verdict = verify_presentation(K, table, pres)
    if verdict.passed:
        report.case = PAIRS_VERIFIED
        report.presentation = pres
        report.verification = verdict
        report.decomposition = pres.decomposition().canonical()
    else:
        report.notes.append("no pairs presentation; outside the decided dimensions this is not a proof of 'no'")
    return report


# --- Golod (products only) ------------------------------------------------------


@dataclass
class WeakGolodVerdict:
    min_non_golod: bool
    golod: bool
    deletions_golod: dict[int, bool]
    note: str = "products only; Massey products are not checked"

    def __bool__(self) -> bool:
        return self.min_non_golod

    def as_dict(self) -> dict:
        return {
            "weak_min_non_golod": self.min_non_golod,
            "weak_golod": self.golod,
            "deletions_golod": {str(k): v for k, v in self.deletions_golod.items()},
            "note": self.note,
        }


def weak_min_non_golod(K: SimplicialComplex, table: BigradedTable | None = None) -> WeakGolodVerdict:
    """``K`` has a nonzero product but every ``K_{[m]∖{i}}`` has none."""
    table = table or decompose(K)
    full = full_mask(K.m)
    golod = has_trivial_products(table)
    deletions = {i: has_trivial_products(table, full & ~(1 << i)) for i in range(1, K.m + 1)}
    return WeakGolodVerdict((not golod) and all(deletions.values()), golod, deletions)


def missing_face_counts(K: SimplicialComplex) -> dict[int, int]:
    return {n: len(missing_faces(K, n)) for n in range(1, K.dim + 2) if missing_faces(K, n)}
