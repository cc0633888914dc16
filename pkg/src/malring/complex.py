"""Finite simplicial complexes on the vertex set ``[m] = {1, ..., m}``.

Vertex subsets are plain Python integers used as bitmasks: vertex ``i`` lives
in bit ``i`` (bit 0 is never set).  Faces of a complex are never listed
globally at this layer; membership is a subset test against the facet masks.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

VertexSet = int
"""A subset of ``[m]`` encoded as a bitmask with bits ``1..m``."""


def mask_of(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: VertexSet) -> tuple[int, ...]:
    """Vertices of ``mask`` in strictly increasing order."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def full_mask(m: int) -> VertexSet:
    return ((1 << m) - 1) << 1


def popcount(mask: VertexSet) -> int:
    return bin(mask).count("1")


class ComplexError(ValueError):
    """Invalid simplicial complex input."""


@dataclass(frozen=True)
class SimplicialComplex:
    """An abstract simplicial complex on ``[m]`` given by its facets.

    Facets are strictly increasing tuples stored in lexicographic order, so two
    equal complexes have identical encodings.  The complex with ``m == 0`` is the
    *empty complex* ``{∅}``; its only facet is the empty simplex.

    ``labels`` optionally records, for a complex produced by relabeling (full
    subcomplexes, links), the original label of each vertex ``1..m``.  It does
    not take part in equality.
    """

    m: int
    facets: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(f) for f in self.facets)

    @property
    def vertex_mask(self) -> VertexSet:
        return full_mask(self.m)

    def is_face(self, simplex: Iterable[int] | VertexSet) -> bool:
        mask = simplex if isinstance(simplex, int) else mask_of(simplex)
        return any(mask & ~f == 0 for f in self.facet_masks)

    @cached_property
    def _faces_by_size(self) -> tuple[tuple[int, ...], ...]:
        # masks of all faces grouped by cardinality, each group sorted lexicographically
        seen: set[int] = set()
        for f in self.facets:
            for k in range(len(f) + 1):
                for sub in combinations(f, k):
                    seen.add(mask_of(sub))
        groups: list[list[tuple[int, ...]]] = [[] for _ in range(self.dim + 2)]
        for mask in seen:
            verts = vertices_of(mask)
            groups[len(verts)].append(verts)
        return tuple(tuple(mask_of(s) for s in sorted(g)) for g in groups)

    def face_masks(self, k: int) -> tuple[int, ...]:
        """Masks of the ``k``-dimensional faces (``k = -1`` gives the empty face)."""
        if k < -1 or k > self.dim:
            return ()
        return self._faces_by_size[k + 1]

    def faces(self, k: int) -> list[tuple[int, ...]]:
        return [vertices_of(s) for s in self.face_masks(k)]

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(s for group in self._faces_by_size for s in group)

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Face counts ``(f_0, f_1, ..., f_dim)``."""
        return tuple(len(self.face_masks(k)) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def original_label(self, v: int) -> int:
        return self.labels[v - 1] if self.labels is not None else v

    def to_text(self) -> str:
        lines = [f"m {self.m}"]
        lines += [" ".join(map(str, f)) for f in self.facets if f]
        return "\n".join(lines) + "\n"

    @cached_property
    def digest(self) -> str:
        """Hex SHA-256 of the canonical text encoding."""
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.facets)


def _maximal(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for s in ordered:
        if not any(s & ~t == 0 for t in kept):
            kept.append(s)
    return kept


def _from_masks(m: int, masks: Iterable[int], labels=None) -> SimplicialComplex:
    facets = tuple(sorted(vertices_of(s) for s in _maximal(masks)))
    if not facets:
        facets = ((),)
    return SimplicialComplex(m, facets, labels)


def build_complex(m: int, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Canonical complex on ``[m]`` generated by ``facets``.

    Non-maximal input faces are absorbed.  Every label in ``1..m`` must occur in
    some face; isolated vertices have to be listed as singletons.
    """
    if m < 0:
        raise ComplexError(f"vertex count must be non-negative, got {m}")
    masks = []
    covered = 0
    for face in facets:
        face = list(face)
        for v in face:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ComplexError(f"vertex label {v!r} is not an integer")
            if not 1 <= v <= m:
                raise ComplexError(f"vertex label {v} out of range 1..{m}")
        if len(set(face)) != len(face):
            raise ComplexError(f"duplicate vertex in face {face}")
        s = mask_of(face)
        masks.append(s)
        covered |= s
    missing = full_mask(m) & ~covered
    if missing:
        raise ComplexError(f"vertices {list(vertices_of(missing))} lie in no face")
    return _from_masks(m, masks)


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex(0, ((),))


def _relabel(m_new: int, masks: Iterable[int], keep: tuple[int, ...], old: SimplicialComplex):
    index = {v: i + 1 for i, v in enumerate(keep)}
    new_masks = [mask_of(index[v] for v in vertices_of(s)) for s in masks]
    labels = tuple(old.original_label(v) for v in keep)
    return _from_masks(m_new, new_masks, labels)


def full_subcomplex(K: SimplicialComplex, J: Iterable[int] | VertexSet) -> SimplicialComplex:
    """The full subcomplex ``K_J``, relabeled onto ``1..|J|``.

    ``labels`` on the result maps new vertices back to the labels of ``K``'s
    original vertex set.
    """
    mask = J if isinstance(J, int) else mask_of(J)
    if mask & ~K.vertex_mask:
        raise ComplexError("J is not a subset of the vertex set")
    keep = vertices_of(mask)
    return _relabel(len(keep), (f & mask for f in K.facet_masks), keep, K)


def subcomplex_facet_masks(K: SimplicialComplex, J: VertexSet) -> list[int]:
    """Facet masks of ``K_J`` in the original labels (no relabeling)."""
    return _maximal(f & J for f in K.facet_masks)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join ``K1 * K2``; the vertices of ``K2`` are shifted by ``K1.m``."""
    shift = K1.m
    masks = [a | (b << shift) for a in K1.facet_masks for b in K2.facet_masks]
    return _from_masks(K1.m + K2.m, masks)


def join_all(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    out = empty_complex()
    for K in complexes:
        out = join(out, K)
    return out


@dataclass(frozen=True)
class MissingFace:
    """A minimal non-face of a complex."""

    vertices: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def mask(self) -> VertexSet:
        return mask_of(self.vertices)


def is_missing_face(K: SimplicialComplex, vertices: Iterable[int] | VertexSet) -> bool:
    mask = vertices if isinstance(vertices, int) else mask_of(vertices)
    if mask & ~K.vertex_mask or K.is_face(mask):
        return False
    return all(K.is_face(mask & ~(1 << v)) for v in vertices_of(mask))


def missing_faces(K: SimplicialComplex, n: int) -> list[MissingFace]:
    """All missing faces of dimension ``n`` (vertex sets of size ``n + 1``)."""
    if n < 0:
        return []
    found = []
    # every missing face is a face of size n extended by a larger vertex
    for base in K.face_masks(n - 1):
        top = base.bit_length() - 1
        for v in range(max(top, 0) + 1, K.m + 1):
            cand = base | (1 << v)
            if is_missing_face(K, cand):
                found.append(vertices_of(cand))
    return [MissingFace(v) for v in sorted(found)]


def stellar_subdivide_facet(K: SimplicialComplex, facet: Sequence[int]) -> SimplicialComplex:
    """Replace ``facet`` by the cone from a new vertex ``m + 1`` over its boundary."""
    facet = tuple(sorted(facet))
    if facet not in K.facets or not facet:
        raise ComplexError(f"{list(facet)} is not a facet")
    if not K.is_pure:
        raise ComplexError("stellar subdivision of a facet requires a pure complex")
    apex = 1 << (K.m + 1)
    fmask = mask_of(facet)
    masks = [s for s in K.facet_masks if s != fmask]
    masks += [(fmask & ~(1 << v)) | apex for v in facet]
    return _from_masks(K.m + 1, masks)


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood 2014).

    Each call adds ``0x9E3779B97F4A7C15`` to the state and returns the state
    passed through the mixing function below, all modulo ``2**64``.
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)


def boundary_simplex(k: int) -> SimplicialComplex:
    """Boundary of the ``k``-simplex: a ``(k-1)``-sphere on ``k + 1`` vertices."""
    verts = range(1, k + 2)
    return build_complex(k + 1, combinations(verts, k))


def generate_stacked_sphere(d: int, cuts: int, seed: int = 0) -> SimplicialComplex:
    """A stacked ``d``-sphere on ``d + 2 + cuts`` vertices.

    Starts from the boundary of the ``(d+1)``-simplex and performs ``cuts``
    stellar subdivisions.  The facet subdivided at each step is
    ``facets[x % len(facets)]`` where ``x`` is the next SplitMix64 output for
    ``seed`` and ``facets`` is the current canonical (lexicographic) facet list.
    """
    if d < 1 or cuts < 0:
        raise ComplexError("need d >= 1 and cuts >= 0")
    rng = SplitMix64(seed)
    K = boundary_simplex(d + 1)
    for _ in range(cuts):
        K = stellar_subdivide_facet(K, K.facets[rng.next() % len(K.facets)])
    return K


def link(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """Link of vertex ``v``, relabeled onto its own vertex set."""
    if not 1 <= v <= K.m:
        raise ComplexError(f"vertex {v} out of range")
    bit = 1 << v
    masks = [f & ~bit for f in K.facet_masks if f & bit]
    keep = vertices_of(0 if not masks else _union(masks))
    return _relabel(len(keep), masks, keep, K)


def _union(masks: Iterable[int]) -> int:
    out = 0
    for s in masks:
        out |= s
    return out


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    """All faces of dimension at most ``k``."""
    if k < 0:
        raise ComplexError("skeleton dimension must be non-negative")
    masks = []
    for f in K.facets:
        if len(f) <= k + 1:
            masks.append(mask_of(f))
        else:
            masks.extend(mask_of(s) for s in combinations(f, k + 1))
    return _from_masks(K.m, masks, K.labels)


def same_faces(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    return K1.m == K2.m and K1.facets == K2.facets
