"""Reduced simplicial (co)homology over the integers.

Everything is exact: matrices hold Python integers and are reduced to Smith
normal form by unimodular row and column operations.  Degree ``-1`` is part
of every chain complex (its basis is the empty simplex), so the reduced
cohomology of the empty complex is ``Z`` in degree ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .complex import (
    MissingFace,
    SimplicialComplex,
    VertexSet,
    is_missing_face,
    mask_of,
    popcount,
    vertices_of,
)

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] if n else [] for row in A]


@dataclass
class SmithForm:
    """``P @ M @ Q == D`` with ``P``, ``Q`` unimodular; ``M == P_inv @ D @ Q_inv``.

    ``diagonal`` lists the nonzero invariant factors ``d_1 | d_2 | ...``.
    """

    D: np.ndarray
    P: np.ndarray
    P_inv: np.ndarray
    Q: np.ndarray
    Q_inv: np.ndarray
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def verify(self, M) -> bool:
        M = np.asarray(M, dtype=object)
        n, k = M.shape
        eye_n, eye_k = np.eye(n, dtype=int).astype(object), np.eye(k, dtype=int).astype(object)
        return (
            np.array_equal(self.P @ M @ self.Q, self.D)
            and np.array_equal(self.P_inv @ self.D @ self.Q_inv, M)
            and np.array_equal(self.P @ self.P_inv, eye_n)
            and np.array_equal(self.Q @ self.Q_inv, eye_k)
        )


def _snf(M: Matrix, nrows: int, ncols: int, track: bool = True):
    """Smith normal form on a list-of-lists copy of ``M``.

    Pivot: smallest nonzero absolute value in the remaining block.  Row ops are
    mirrored on ``P`` and (inverted) on ``P_inv``; column ops on ``Q``/``Q_inv``.
    """
    A = [list(r) for r in M]
    if track:
        P, Pi, Q, Qi = _identity(nrows), _identity(nrows), _identity(ncols), _identity(ncols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            P[i], P[j] = P[j], P[i]
            for row in Pi:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in Q:
                row[i], row[j] = row[j], row[i]
            Qi[i], Qi[j] = Qi[j], Qi[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        if c == 0:
            return
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        if track:
            P[dst] = [a + c * b for a, b in zip(P[dst], P[src])]
            for row in Pi:  # inverse: col_src -= c * col_dst
                row[src] -= c * row[dst]

    def add_col(dst, src, c):  # col_dst += c * col_src
        if c == 0:
            return
        for row in A:
            row[dst] += c * row[src]
        if track:
            for row in Q:
                row[dst] += c * row[src]
            Qi[src] = [a - c * b for a, b in zip(Qi[src], Qi[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        if track:
            P[i] = [-a for a in P[i]]
            for row in Pi:
                row[i] = -row[i]

    diag = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t to the pivot
                cands = [(abs(A[i][t]), i, "r") for i in range(t + 1, nrows) if A[i][t]]
                cands += [(abs(A[t][j]), j, "c") for j in range(t + 1, ncols) if A[t][j]]
                _, k, kind = min(cands)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            negate_row(t)
        diag.append(A[t][t])
        t += 1
    if track:
        return A, P, Pi, Q, Qi, diag
    return diag


def smith_normal_form(M) -> SmithForm:
    """Smith normal form of an integer matrix with both transforms and inverses."""
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        arr = arr.reshape(0, 0) if arr.size == 0 else np.atleast_2d(arr)
    n, k = arr.shape
    D, P, Pi, Q, Qi, diag = _snf([[int(x) for x in row] for row in arr], n, k)

    def obj(X, shape):
        out = np.zeros(shape, dtype=object)
        for i, row in enumerate(X):
            for j, x in enumerate(row):
                out[i, j] = x
        return out

    return SmithForm(
        obj(D, (n, k)), obj(P, (n, n)), obj(Pi, (n, n)), obj(Q, (k, k)), obj(Qi, (k, k)),
        tuple(diag),
    )


def invariant_factors(rows: Iterable[dict[int, int]], ncols: int) -> tuple[int, list[int]]:
    """Rank and nontrivial invariant factors of a sparse integer matrix.

    ``rows`` are dicts ``column -> entry``.  Unit pivots are eliminated first on
    the sparse rows; whatever survives is reduced densely.
    """
    rows = [dict(r) for r in rows if r]
    rank = 0
    while True:
        pivot = None
        for idx in sorted(range(len(rows)), key=lambda i: len(rows[i])):
            for c, a in rows[idx].items():
                if a == 1 or a == -1:
                    pivot = (idx, c, a)
                    break
            if pivot:
                break
        if pivot is None:
            break
        idx, c, a = pivot
        prow = rows.pop(idx)
        rank += 1
        for r in rows:
            b = r.get(c)
            if b:
                f = b * a  # a == 1/a for units
                for cc, v in prow.items():
                    nv = r.get(cc, 0) - f * v
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        rows = [r for r in rows if r]
    if not rows:
        return rank, []
    cols = sorted({c for r in rows for c in r})
    index = {c: i for i, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for c, a in r.items():
            dense[i][index[c]] = a
    diag = _snf(dense, len(rows), len(cols), track=False)
    return rank + len(diag), [d for d in diag if d > 1]


@dataclass
class ChainBasis:
    """Ordered simplices per degree ``k >= -1`` of a complex, as vertex bitmasks.

    Simplices carry the labels of the ambient complex, so a basis of a full
    subcomplex ``K_J`` shares its simplices with the basis of ``K``.
    """

    simplices: dict[int, tuple[int, ...]]

    @cached_property
    def index(self) -> dict[int, dict[int, int]]:
        return {k: {s: i for i, s in enumerate(v)} for k, v in self.simplices.items()}

    @property
    def top(self) -> int:
        return max((k for k, v in self.simplices.items() if v), default=-1)

    def size(self, k: int) -> int:
        return len(self.simplices.get(k, ()))

    def simplex(self, k: int, i: int) -> tuple[int, ...]:
        return vertices_of(self.simplices[k][i])

    @classmethod
    def of(cls, K: SimplicialComplex, J: VertexSet | None = None) -> "ChainBasis":
        simplices = {}
        for k in range(-1, K.dim + 1):
            faces = K.face_masks(k)
            if J is not None:
                faces = tuple(s for s in faces if s & ~J == 0)
            simplices[k] = faces
        return cls(simplices)


def boundary_entries(basis: ChainBasis, k: int) -> list[dict[int, int]]:
    """Columns of ``∂_k`` as sparse dicts ``row index -> ±1`` (one per k-simplex)."""
    lower = basis.index.get(k - 1, {})
    cols = []
    for s in basis.simplices.get(k, ()):
        col = {}
        for i, v in enumerate(vertices_of(s)):
            col[lower[s & ~(1 << v)]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


def boundary_matrix(basis: ChainBasis, k: int) -> np.ndarray:
    """Dense integer matrix of ``∂_k : C_k -> C_{k-1}``."""
    n_rows, n_cols = basis.size(k - 1), basis.size(k)
    M = np.zeros((n_rows, n_cols), dtype=object)
    for j, col in enumerate(boundary_entries(basis, k)):
        for i, a in col.items():
            M[i, j] = a
    return M


def _dense(cols: list[dict[int, int]], n_rows: int) -> Matrix:
    M = [[0] * len(cols) for _ in range(n_rows)]
    for j, col in enumerate(cols):
        for i, a in col.items():
            M[i][j] = a
    return M


def _transpose(M: Matrix, n_rows: int, n_cols: int) -> Matrix:
    return [[M[i][j] for i in range(n_rows)] for j in range(n_cols)]


@dataclass
class DegreeGroup:
    """One (co)homology group ``Z^rank ⊕ ⊕ Z/t``.

    When generators are present, ``torsion_generators[i]`` has order
    ``torsion[i]`` and ``projection`` maps a (co)cycle vector to its coordinates:
    first the torsion coordinates (to be read modulo ``torsion``), then the free
    ones.
    """

    degree: int
    rank: int
    torsion: tuple[int, ...]
    free_generators: list[tuple[int, ...]] | None = None
    torsion_generators: list[tuple[int, ...]] | None = None
    projection: Matrix | None = field(default=None, repr=False)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def generators(self) -> list[tuple[int, ...]]:
        return list(self.torsion_generators or []) + list(self.free_generators or [])

    def coordinates(self, vector: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``(torsion residues, free coordinates)`` of a (co)cycle vector."""
        coords = [sum(a * b for a, b in zip(row, vector)) for row in self.projection]
        t = len(self.torsion)
        tors = tuple(c % d for c, d in zip(coords[:t], self.torsion))
        return tors, tuple(coords[t:])


def _quotient(kernel_of: Matrix, kr: int, kc: int, image_of: Matrix, ir: int, ic: int, degree: int):
    """Generators of ``ker(A) / im(B)`` where ``A: Z^kc -> Z^kr``, ``B: Z^ic -> Z^ir``, ``kc == ir``."""
    n = kc
    _, _, _, Q, Qi, diag = _snf(kernel_of, kr, kc)
    r = len(diag)
    kernel = [[Q[i][j] for j in range(r, n)] for i in range(n)]  # n x z
    coords_of = Qi[r:]  # z x n
    z = n - r
    W = _matmul(coords_of, image_of) if z and ic else [[0] * ic for _ in range(z)]
    _, P2, P2i, _, _, d2 = _snf(W, z, ic)
    proj = _matmul(P2, coords_of) if z else []
    gens = _matmul(kernel, P2i) if z else []  # n x z
    columns = [tuple(gens[i][j] for i in range(n)) for j in range(z)]
    torsion_idx = [i for i, d in enumerate(d2) if d > 1]
    free_idx = list(range(len(d2), z))
    return DegreeGroup(
        degree=degree,
        rank=len(free_idx),
        torsion=tuple(d2[i] for i in torsion_idx),
        free_generators=[columns[i] for i in free_idx],
        torsion_generators=[columns[i] for i in torsion_idx],
        projection=[proj[i] for i in torsion_idx + free_idx],
    )


class HomologySummary:
    """Reduced homology or cohomology of a complex (or of a full subcomplex).

    Ranks and torsion come from the invariant factors of the boundary maps and
    are computed eagerly; generator representatives are computed on first
    request for a degree.
    """

    def __init__(self, basis: ChainBasis, cohomology: bool, ranks=None, torsion=None):
        self.basis = basis
        self.cohomology = cohomology
        self._groups: dict[int, DegreeGroup] = {}
        if ranks is None:
            ranks, torsion = _ranks_and_torsion(basis, cohomology)
        self.ranks: dict[int, int] = ranks
        self.torsion: dict[int, tuple[int, ...]] = torsion

    @property
    def degrees(self) -> range:
        return range(-1, self.basis.top + 1)

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def torsion_of(self, k: int) -> tuple[int, ...]:
        return self.torsion.get(k, ())

    def is_zero(self, k: int | None = None) -> bool:
        if k is None:
            return all(self.is_zero(d) for d in self.degrees)
        return self.rank(k) == 0 and not self.torsion_of(k)

    def nonzero_degrees(self) -> list[int]:
        return [k for k in self.degrees if not self.is_zero(k)]

    def group(self, k: int) -> DegreeGroup:
        """The degree-``k`` group with generators and coordinate projection."""
        if k not in self._groups:
            g = self._compute_group(k)
            assert g.rank == self.rank(k) and g.torsion == self.torsion_of(k)
            self._groups[k] = g
        return self._groups[k]

    def _compute_group(self, k: int) -> DegreeGroup:
        b = self.basis
        n_k = b.size(k)
        if self.cohomology:
            # ker δ^k / im δ^{k-1}, δ^k = (∂_{k+1})^T
            up = _transpose(_dense(boundary_entries(b, k + 1), n_k), n_k, b.size(k + 1))
            down = _transpose(_dense(boundary_entries(b, k), b.size(k - 1)), b.size(k - 1), n_k)
            return _quotient(up, b.size(k + 1), n_k, down, n_k, b.size(k - 1), k)
        A = _dense(boundary_entries(b, k), b.size(k - 1))
        B = _dense(boundary_entries(b, k + 1), n_k)
        return _quotient(A, b.size(k - 1), n_k, B, n_k, b.size(k + 1), k)

    def generators(self, k: int) -> list[tuple[int, ...]]:
        return self.group(k).generators

    def __repr__(self) -> str:
        kind = "H^" if self.cohomology else "H_"
        parts = [f"{kind}{k}={describe_group(self.rank(k), self.torsion_of(k))}" for k in self.nonzero_degrees()]
        return f"HomologySummary({', '.join(parts) or '0'})"


def describe_group(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    parts += [f"Z/{t}" for t in torsion]
    return " + ".join(parts) or "0"


def _ranks_and_torsion(basis: ChainBasis, cohomology: bool):
    top = basis.top
    bd_rank = {}
    bd_torsion = {}
    for k in range(0, top + 1):
        r, t = invariant_factors(_rows_of(boundary_entries(basis, k)), basis.size(k - 1))
        bd_rank[k], bd_torsion[k] = r, t
    ranks, torsion = {}, {}
    for k in range(-1, top + 1):
        rk = basis.size(k) - bd_rank.get(k, 0) - bd_rank.get(k + 1, 0)
        if rk:
            ranks[k] = rk
        # H_k torsion from ∂_{k+1}; H^k torsion from ∂_k
        t = bd_torsion.get(k if cohomology else k + 1, [])
        if t:
            torsion[k] = tuple(sorted(t))
    return ranks, torsion


def _rows_of(cols: list[dict[int, int]]) -> list[dict[int, int]]:
    # rank and invariant factors are transpose-invariant; columns serve as rows
    return cols


def reduced_homology(K: SimplicialComplex, J: VertexSet | None = None) -> HomologySummary:
    return HomologySummary(ChainBasis.of(K, J), cohomology=False)


def reduced_cohomology(K: SimplicialComplex, J: VertexSet | None = None) -> HomologySummary:
    return HomologySummary(ChainBasis.of(K, J), cohomology=True)


@dataclass(frozen=True)
class ChainVector:
    """A chain or cochain of degree ``degree`` with coefficients aligned to ``basis``."""

    basis: ChainBasis
    degree: int
    coeffs: tuple[int, ...]

    def as_dict(self) -> dict[int, int]:
        simplices = self.basis.simplices[self.degree]
        return {s: c for s, c in zip(simplices, self.coeffs) if c}

    @classmethod
    def from_dict(cls, basis: ChainBasis, degree: int, values: dict[int, int]) -> "ChainVector":
        idx = basis.index[degree]
        coeffs = [0] * basis.size(degree)
        for s, c in values.items():
            if s not in idx:
                raise ValueError(f"simplex {vertices_of(s)} is not in the basis")
            coeffs[idx[s]] += c
        return cls(basis, degree, tuple(coeffs))


def evaluate(cochain: ChainVector, chain: ChainVector) -> int:
    """Kronecker pairing ``<c, γ> = Σ c(σ) γ(σ)``."""
    if cochain.degree != chain.degree:
        raise ValueError("cochain and chain have different degrees")
    if cochain.basis.simplices.get(cochain.degree) != chain.basis.simplices.get(chain.degree):
        raise ValueError("cochain and chain are expressed in different bases")
    return sum(a * b for a, b in zip(cochain.coeffs, chain.coeffs))


def evaluate_sparse(cochain: dict[int, int], chain: dict[int, int]) -> int:
    if len(chain) < len(cochain):
        return sum(c * cochain.get(s, 0) for s, c in chain.items())
    return sum(c * chain.get(s, 0) for s, c in cochain.items())


def boundary_of(chain: dict[int, int]) -> dict[int, int]:
    """Simplicial boundary of a sparse chain (keys are simplex bitmasks)."""
    out: dict[int, int] = {}
    for s, c in chain.items():
        for i, v in enumerate(vertices_of(s)):
            t = s & ~(1 << v)
            out[t] = out.get(t, 0) + (-c if i % 2 else c)
    return {s: c for s, c in out.items() if c}


def coboundary_of(cochain: dict[int, int], simplices_above: Iterable[int]) -> dict[int, int]:
    """``δc`` evaluated on the given simplices of the next degree."""
    out = {}
    for s in simplices_above:
        val = 0
        for i, v in enumerate(vertices_of(s)):
            a = cochain.get(s & ~(1 << v))
            if a:
                val += -a if i % 2 else a
        if val:
            out[s] = val
    return out


def simplex_boundary_cycle(vertices: Iterable[int]) -> dict[int, int]:
    """The cycle ``∂Δ_I`` as a sparse chain of degree ``|I| - 2``."""
    return boundary_of({mask_of(vertices): 1})


def missing_face_cycle(K: SimplicialComplex, face: MissingFace | Sequence[int]) -> ChainVector:
    """``∂Δ_I`` for a missing face ``I``, in the chain basis of ``K``."""
    verts = face.vertices if isinstance(face, MissingFace) else tuple(face)
    if not is_missing_face(K, verts):
        raise ValueError(f"{list(verts)} is not a missing face")
    cycle = simplex_boundary_cycle(verts)
    assert not boundary_of(cycle)
    basis = ChainBasis.of(K)
    return ChainVector.from_dict(basis, popcount(mask_of(verts)) - 2, cycle)


def euler_characteristic_from_betti(summary: HomologySummary) -> int:
    """Reduced Euler characteristic ``Σ (-1)^k rank H̃_k``."""
    return sum((-1) ** k * summary.rank(k) for k in summary.degrees)
