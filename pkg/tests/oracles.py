"""Slow, independent reference implementations used to check the library.

Nothing here imports the package's algorithms; complexes are plain lists of
vertex tuples and all linear algebra goes through sympy.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def faces_of(facets) -> set[frozenset]:
    out = set()
    for f in facets:
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, k))
    return out


def restrict(faces: set[frozenset], J) -> set[frozenset]:
    J = set(J)
    return {f for f in faces if f <= J}


def _boundary(faces, k) -> Matrix:
    rows = sorted((tuple(sorted(f)) for f in faces if len(f) == k), key=lambda t: t)
    cols = sorted((tuple(sorted(f)) for f in faces if len(f) == k + 1), key=lambda t: t)
    index = {r: i for i, r in enumerate(rows)}
    M = Matrix.zeros(len(rows), len(cols))
    for j, c in enumerate(cols):
        for i in range(len(c)):
            M[index[c[:i] + c[i + 1:]], j] = (-1) ** i
    return M


def _factors(M: Matrix) -> list[int]:
    if M.rows == 0 or M.cols == 0 or all(x == 0 for x in M):
        return []
    return [int(abs(d)) for d in invariant_factors(M, domain=ZZ) if d != 0]


def reduced_homology(faces: set[frozenset]) -> dict[int, tuple[int, tuple[int, ...]]]:
    """``k -> (rank H̃_k, torsion of H̃_k)`` for ``k = -1 .. dim``, augmented complex."""
    top = max(len(f) for f in faces) - 1
    out = {}
    for k in range(-1, top + 1):
        n_k = sum(1 for f in faces if len(f) == k + 1)
        d_k = _factors(_boundary(faces, k)) if k >= 0 else []
        d_up = _factors(_boundary(faces, k + 1))
        rank = n_k - len(d_k) - len(d_up)
        out[k] = (rank, tuple(d for d in d_up if d > 1))
    return out


def reduced_cohomology(faces: set[frozenset]) -> dict[int, tuple[int, tuple[int, ...]]]:
    """By universal coefficients: free part of ``H̃_k``, torsion of ``H̃_{k-1}``."""
    h = reduced_homology(faces)
    return {k: (h[k][0], h[k - 1][1] if k - 1 in h else ()) for k in h}


def hochster_betti(m: int, facets) -> tuple[dict[int, int], dict[int, list[int]]]:
    """Betti numbers and torsion of ``H*(Z_K)`` by summing over all ``J``."""
    faces = faces_of(facets)
    betti: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for size in range(m + 1):
        for J in combinations(range(1, m + 1), size):
            for l, (r, t) in reduced_cohomology(restrict(faces, J)).items():
                deg = l + size + 1
                if r:
                    betti[deg] = betti.get(deg, 0) + r
                if t:
                    torsion.setdefault(deg, []).extend(t)
    return dict(sorted(betti.items())), {k: sorted(v) for k, v in sorted(torsion.items())}


def permutation_sign(seq) -> int:
    inversions = sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def join_product(faces, a: dict, b: dict, I, J) -> dict:
    """Cochain-level join product on ``K_{I ⊔ J}``; cochains keyed by sorted tuples."""
    I, J = set(I), set(J)
    p = len(next(iter(a))) if a else 0
    q = len(next(iter(b))) if b else 0
    out = {}
    for s in restrict(faces, I | J):
        if len(s) != p + q:
            continue
        si, sj = tuple(sorted(s & I)), tuple(sorted(s & J))
        if len(si) != p:
            continue
        v = a.get(si, 0) * b.get(sj, 0)
        if v:
            out[tuple(sorted(s))] = permutation_sign(si + sj) * v
    return out


def chordless_cycles(m: int, edges) -> set[frozenset]:
    """Vertex sets of induced cycles of length >= 4, by checking every subset."""
    G = nx.Graph()
    G.add_nodes_from(range(1, m + 1))
    G.add_edges_from(edges)
    found = set()
    for size in range(4, m + 1):
        for S in combinations(range(1, m + 1), size):
            H = G.subgraph(S)
            if all(d == 2 for _, d in H.degree()) and nx.is_connected(H):
                found.add(frozenset(S))
    return found


def connected_sum_betti(summands, total: int) -> dict[int, int]:
    """Betti numbers of a connected sum of sphere products via Poincaré polynomials."""
    coeffs = [0] * (total + 1)
    for dims in summands:
        poly = [1]
        for d in dims:
            new = [0] * (len(poly) + d)
            for i, c in enumerate(poly):
                new[i] += c
                new[i + d] += c
            poly = new
        for i, c in enumerate(poly):
            coeffs[i] += c
    n = len(summands)
    if n:
        coeffs[0] -= n - 1
        coeffs[total] -= n - 1
    else:
        coeffs[0] = coeffs[total] = 1
    return {i: c for i, c in enumerate(coeffs) if c}
