"""Named complexes used as fixtures, demos and CLI builtins."""

from __future__ import annotations

from typing import Callable

from .complex import (
    SimplicialComplex,
    boundary_simplex,
    build_complex,
    generate_stacked_sphere,
    join,
    join_all,
    stellar_subdivide_facet,
)


def polygon(p: int) -> SimplicialComplex:
    """The ``p``-cycle ``1-2-...-p-1``."""
    if p < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    return build_complex(p, [(i, i % p + 1) for i in range(1, p + 1)])


def two_points() -> SimplicialComplex:
    return build_complex(2, [(1,), (2,)])


def cross_polytope(n: int) -> SimplicialComplex:
    """Boundary of the ``n``-dimensional cross-polytope: ``S^0 * ... * S^0``.

    Antipodal pairs are ``{2i-1, 2i}``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return join_all([two_points()] * n)


def octahedron() -> SimplicialComplex:
    return cross_polytope(3)


def example_5dimex() -> SimplicialComplex:
    """Tetrahedron boundary with facets ``123`` and then ``124`` subdivided."""
    return stellar_subdivide_facet(stellar_subdivide_facet(boundary_simplex(3), (1, 2, 3)), (1, 2, 4))


def c4_join_triangle() -> SimplicialComplex:
    return join(polygon(4), boundary_simplex(2))


def c5_join_triangle() -> SimplicialComplex:
    return join(polygon(5), boundary_simplex(2))


def rp2() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    return build_complex(
        6,
        [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
         (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)],
    )


def torus7() -> SimplicialComplex:
    """Möbius' seven-vertex torus: triangles ``{i, i+1, i+3}`` and ``{i, i+2, i+3}`` mod 7."""
    facets = []
    for i in range(7):
        facets.append(tuple(sorted((i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1))))
        facets.append(tuple(sorted((i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1))))
    return build_complex(7, facets)


def bipyramid(p: int) -> SimplicialComplex:
    """Suspension of the ``p``-gon; apexes are ``p+1`` and ``p+2``."""
    return join(polygon(p), two_points())


def subdivided_octahedron() -> SimplicialComplex:
    """Octahedron with one facet subdivided: a 2-sphere with chordless 4-cycles."""
    K = octahedron()
    return stellar_subdivide_facet(K, K.facets[0])


BARNETTE_FACETS = [
    (1, 2, 4, 5), (2, 3, 5, 6), (1, 3, 4, 6), (1, 2, 3, 7), (4, 5, 6, 7), (1, 2, 4, 7), (2, 4, 5, 7),
    (2, 3, 5, 7), (3, 5, 6, 7), (1, 3, 6, 7), (1, 4, 6, 7), (1, 2, 3, 8), (4, 5, 6, 8), (1, 2, 5, 8),
    (1, 4, 5, 8), (2, 3, 6, 8), (2, 5, 6, 8), (1, 3, 4, 8), (3, 4, 6, 8),
]


def barnette_candidate() -> SimplicialComplex:
    """An 8-vertex, 19-facet triangulated 3-sphere offered for exploration."""
    return build_complex(8, BARNETTE_FACETS)


BUILTINS: dict[str, Callable[[], SimplicialComplex]] = {
    "boundary-simplex-2": lambda: boundary_simplex(2),
    "boundary-simplex-3": lambda: boundary_simplex(3),
    "boundary-simplex-4": lambda: boundary_simplex(4),
    "square": lambda: polygon(4),
    "pentagon": lambda: polygon(5),
    "octahedron": octahedron,
    "cross-polytope-4": lambda: cross_polytope(4),
    "5dimex": example_5dimex,
    "c4-join-triangle": c4_join_triangle,
    "c5-join-triangle": c5_join_triangle,
    "rp2": rp2,
    "torus7": torus7,
    "bipyramid5": lambda: bipyramid(5),
    "octahedron-subdivided": subdivided_octahedron,
    "barnette": barnette_candidate,
}


def builtin(name: str) -> SimplicialComplex:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}") from None


def stacked_family(count: int = 25, max_cuts: int = 8, d: int = 2) -> list[tuple[str, SimplicialComplex]]:
    """Reproducible stacked spheres: instance ``i`` uses seed ``i`` and ``i % (max_cuts + 1)`` cuts."""
    out = []
    for i in range(count):
        cuts = i % (max_cuts + 1)
        out.append((f"stacked-d{d}-c{cuts}-s{i}", generate_stacked_sphere(d, cuts, seed=i)))
    return out


def sphere_corpus() -> list[tuple[str, SimplicialComplex]]:
    """Every sphere fixture: the sphere builtins plus a few stacked spheres."""
    names = [n for n in BUILTINS if n not in ("rp2", "torus7")]
    out = [(n, builtin(n)) for n in names]
    out += [("bipyramid6", bipyramid(6)), ("hexagon", polygon(6))]
    out += stacked_family(6, 5)
    out += [(f"stacked-d3-c{k}", generate_stacked_sphere(3, k, seed=k)) for k in (1, 3, 5)]
    return out
