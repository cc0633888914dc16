import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from malring.complex import boundary_simplex, build_complex, empty_complex, mask_of
from malring.corpus import polygon, rp2, torus7
from malring.homology import (
    ChainBasis,
    ChainVector,
    boundary_matrix,
    boundary_of,
    coboundary_of,
    describe_group,
    euler_characteristic_from_betti,
    evaluate,
    invariant_factors,
    missing_face_cycle,
    reduced_cohomology,
    reduced_homology,
    smith_normal_form,
)

from oracles import faces_of, reduced_cohomology as oracle_cohomology, reduced_homology as oracle_homology
from test_complex import complexes

small_ints = st.integers(-6, 6)


@st.composite
def matrices(draw, max_dim=6):
    n = draw(st.integers(1, max_dim))
    k = draw(st.integers(1, max_dim))
    return [[draw(small_ints) for _ in range(k)] for _ in range(n)]


def oracle_factors(M):
    S = Matrix(M)
    if all(x == 0 for x in S):
        return []
    return [int(abs(d)) for d in sympy_factors(S, domain=ZZ) if d != 0]


class TestSmithNormalForm:
    def test_small_example(self):
        snf = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        assert snf.diagonal == (2, 6, 12)
        assert snf.verify([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])

    def test_zero_matrix(self):
        snf = smith_normal_form([[0, 0], [0, 0]])
        assert snf.rank == 0 and snf.verify([[0, 0], [0, 0]])

    @given(matrices())
    def test_transforms_and_factors(self, M):
        snf = smith_normal_form(M)
        assert snf.verify(M)
        diag = list(snf.diagonal)
        assert all(d > 0 for d in diag)
        assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
        assert diag == oracle_factors(M)
        D = snf.D
        assert all(D[i, j] == 0 for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j)
        assert abs(int(Matrix(snf.P.tolist()).det())) == 1 and abs(int(Matrix(snf.Q.tolist()).det())) == 1

    @given(matrices(7))
    def test_sparse_factors_agree(self, M):
        rows = [{j: a for j, a in enumerate(r) if a} for r in M]
        rank, tors = invariant_factors(rows, len(M[0]))
        full = oracle_factors(M)
        assert rank == len(full) and tors == [d for d in full if d > 1]


class TestBoundary:
    def test_signs(self):
        basis = ChainBasis.of(boundary_simplex(3))
        B = boundary_matrix(basis, 2)
        # column for 123: +23 -13 +12 in the lexicographic edge basis 12,13,14,23,24,34
        assert list(B[:, 0]) == [1, -1, 0, 1, 0, 0]

    def test_augmentation(self):
        basis = ChainBasis.of(polygon(4))
        assert basis.simplices[-1] == (0,)
        assert list(boundary_matrix(basis, 0)[0]) == [1, 1, 1, 1]

    @given(complexes(7))
    def test_boundary_squared_is_zero(self, K):
        basis = ChainBasis.of(K)
        for k in range(1, K.dim + 1):
            prod = boundary_matrix(basis, k - 1) @ boundary_matrix(basis, k)
            assert not np.any(prod)
            assert set(np.unique(boundary_matrix(basis, k).astype(int))) <= {-1, 0, 1}


class TestHomology:
    def test_rp2_torsion(self):
        h, c = reduced_homology(rp2()), reduced_cohomology(rp2())
        assert h.torsion_of(1) == (2,) and h.rank(1) == 0 and h.rank(2) == 0
        assert c.torsion_of(2) == (2,) and c.rank(2) == 0

    def test_torus(self):
        h = reduced_homology(torus7())
        assert (h.rank(0), h.rank(1), h.rank(2)) == (0, 2, 1) and not h.torsion_of(1)

    def test_empty_complex_degree_minus_one(self):
        c = reduced_cohomology(empty_complex())
        assert c.rank(-1) == 1 and c.nonzero_degrees() == [-1]

    def test_two_points(self):
        c = reduced_cohomology(polygon(4), mask_of([1, 3]))
        assert c.rank(0) == 1 and c.nonzero_degrees() == [0]

    @given(complexes(6))
    def test_against_oracle(self, K):
        faces = faces_of(K.facets)
        exp_h, exp_c = oracle_homology(faces), oracle_cohomology(faces)
        h, c = reduced_homology(K), reduced_cohomology(K)
        for k in range(-1, K.dim + 1):
            assert (h.rank(k), h.torsion_of(k)) == exp_h[k]
            assert (c.rank(k), c.torsion_of(k)) == exp_c[k]
        assert euler_characteristic_from_betti(h) == K.euler_characteristic() - 1

    @given(complexes(6))
    def test_generators(self, K):
        for summary in (reduced_homology(K), reduced_cohomology(K)):
            basis = summary.basis
            for k in summary.degrees:
                g = summary.group(k)
                assert len(g.generators) == g.rank + len(g.torsion)
                for i, vec in enumerate(g.generators):
                    chain = {s: a for s, a in zip(basis.simplices[k], vec) if a}
                    if summary.cohomology:
                        assert not coboundary_of(chain, basis.simplices.get(k + 1, ()))
                    else:
                        assert not {s: a for s, a in boundary_of(chain).items() if s or k == 0}
                    tors, free = g.coordinates(vec)
                    unit = [0] * len(g.generators)
                    unit[i] = 1
                    assert list(tors) + list(free) == unit

    def test_describe(self):
        assert describe_group(0, ()) == "0"
        assert describe_group(2, (2, 4)) == "Z^2 + Z/2 + Z/4"


class TestEvaluation:
    def test_missing_face_cycle(self):
        cyc = missing_face_cycle(polygon(4), (1, 3))
        assert cyc.degree == 0 and cyc.as_dict() == {mask_of([3]): 1, mask_of([1]): -1}

    def test_missing_face_cycle_rejects_faces(self):
        with pytest.raises(ValueError):
            missing_face_cycle(polygon(4), (1, 2))

    def test_evaluate_degree_mismatch(self):
        basis = ChainBasis.of(polygon(4))
        with pytest.raises(ValueError):
            evaluate(ChainVector(basis, 0, (1, 0, 0, 0)), ChainVector(basis, 1, (1, 0, 0, 0)))

    def test_evaluate_basis_mismatch(self):
        a = ChainVector(ChainBasis.of(polygon(4)), 0, (1, 0, 0, 0))
        b = ChainVector(ChainBasis.of(polygon(5)), 0, (1, 0, 0, 0, 0))
        with pytest.raises(ValueError):
            evaluate(a, b)

    def test_from_dict_rejects_foreign_simplex(self):
        with pytest.raises(ValueError):
            ChainVector.from_dict(ChainBasis.of(polygon(4)), 1, {mask_of([1, 3]): 1})

    def test_fundamental_pairing_on_pentagon(self):
        K = polygon(5)
        c = reduced_cohomology(K)
        h = reduced_homology(K)
        basis = c.basis
        value = evaluate(ChainVector(basis, 1, c.generators(1)[0]), ChainVector(basis, 1, h.generators(1)[0]))
        assert abs(value) == 1


def test_tetrahedron_boundary_homology():
    h = reduced_homology(boundary_simplex(3))
    assert h.nonzero_degrees() == [2] and h.rank(2) == 1


def test_filled_simplex_is_acyclic():
    assert reduced_homology(build_complex(3, [(1, 2, 3)])).is_zero()
