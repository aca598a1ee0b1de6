# In file: tests/test_chain.py
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors
from sympy.polys.domains import ZZ

from skernel.chain import (ChainComplex, ChainMap, HomologyGroup, IntMatrix, check_quasi_iso, direct_sum,
                           hom_complex, homology, homotopy_class_group, invariant_factors, is_unimodular,
                           mapping_cone, shift, sigma_tower_report, smith_normal_form, tensor, tower_lim1,
                           truncate_good, truncate_stupid, truncation_inclusion)
from skernel.errors import InputError, StructuralError

Z = HomologyGroup(1)
ZERO = HomologyGroup()


def mod2():
    """Z --2--> Z in degrees 1, 0."""
    return ChainComplex(0, 1, (1, 1), {1: IntMatrix([[2]])})


@st.composite
def int_matrices(draw, max_side=4, bound=6):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    table = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
                          min_size=rows, max_size=rows))
    return IntMatrix(table, rows=rows, cols=cols)


# --- ======================================================= ---
# --- SMITH NORMAL FORM                                       ---
# --- ======================================================= ---

def test_smith_form_of_small_example():
    M = IntMatrix([[2, 4], [6, 8]])
    U, D, V = smith_normal_form(M)
    assert D == IntMatrix([[2, 0], [0, 4]])
    assert U @ M @ V == D
    assert is_unimodular(U) and is_unimodular(V)


def test_smith_form_of_identity_and_zero():
    U, D, V = smith_normal_form(IntMatrix.identity(3))
    assert D.is_identity()
    _, D, _ = smith_normal_form(IntMatrix([[0]]))
    assert D == IntMatrix([[0]])
    assert invariant_factors(IntMatrix([[0]])) == ()


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_smith_form_transforms(M):
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert is_unimodular(U) and is_unimodular(V)
    diagonal = [D[i, i] for i in range(min(D.rows, D.cols))]
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    nonzero = [x for x in diagonal if x]
    assert all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_invariant_factors_match_sympy(M):
    expected = sympy_invariant_factors(Matrix(M.tolist()), domain=ZZ)
    assert invariant_factors(M) == tuple(abs(int(x)) for x in expected if x != 0)


# --- ======================================================= ---
# --- COMPLEXES AND HOMOLOGY                                  ---
# --- ======================================================= ---

def test_homology_of_multiplication_by_two():
    C = mod2()
    assert homology(C, 0) == HomologyGroup(0, (2,))
    assert homology(C, 1).is_zero
    assert homology(C, 7).is_zero


def test_homology_with_zero_differentials():
    C = ChainComplex(0, 2, (1, 2, 1))
    assert [homology(C, n).free_rank for n in range(3)] == [1, 2, 1]


def test_complex_rejects_nonzero_square():
    with pytest.raises(StructuralError, match="degree 2"):
        ChainComplex(0, 2, (1, 1, 1), {1: IntMatrix([[1]]), 2: IntMatrix([[1]])})


def test_complex_rejects_wrong_shape():
    with pytest.raises(StructuralError, match="shape"):
        ChainComplex(0, 1, (1, 2), {1: IntMatrix([[1]])})


def test_group_formatting_and_parsing():
    G = HomologyGroup(2, (2, 6))
    assert str(G) == "Z^2 + Z/2 + Z/6"
    assert HomologyGroup.parse(str(G)) == G
    assert str(ZERO) == "0"
    with pytest.raises(StructuralError):
        HomologyGroup(0, (4, 6))
    with pytest.raises(InputError):
        HomologyGroup.parse("Q")


def test_shift_moves_homology():
    C = shift(ChainComplex.concentrated(0), 3)
    assert homology(C, 3) == Z
    assert all(homology(C, n).is_zero for n in range(3))
    assert shift(mod2(), 0) == mod2()
    assert shift(shift(mod2(), 2), -2) == mod2()
    assert homology(shift(mod2(), 1), 1) == HomologyGroup(0, (2,))


def test_good_truncations():
    C = ChainComplex(0, 2, (1, 2, 1), {1: IntMatrix([[1, 1]]), 2: IntMatrix([[1], [-1]])})
    assert truncate_good(C, 0) == C
    identity = ChainComplex(-1, 0, (1, 1), {0: IntMatrix([[1]])})
    assert truncate_good(identity, 0).support() == []
    assert all(homology(truncate_good(mod2(), 1), n).is_zero for n in range(-1, 3))


def test_truncation_inclusion_is_iso_above_the_cut():
    C = ChainComplex(0, 2, (1, 2, 1), {1: IntMatrix([[1, 1]]), 2: IntMatrix([[1], [-1]])})
    report = check_quasi_iso(truncation_inclusion(C, 1), degrees=range(1, 3))
    assert report.passed
    assert all(homology(truncate_good(C, 1), n) == homology(C, n) for n in (1, 2))


def test_stupid_truncations():
    assert truncate_stupid(mod2(), 1) == mod2()
    assert truncate_stupid(mod2(), -1).support() == []
    assert truncate_stupid(mod2(), 0) == ChainComplex.concentrated(0)


def test_tensor_square_of_mod_two():
    T = tensor(mod2(), mod2())
    assert homology(T, 0) == HomologyGroup(0, (2,))
    assert homology(T, 1) == HomologyGroup(0, (2,))
    assert homology(T, 2).is_zero


def test_tensor_unit_and_kunneth_ranks():
    C = ChainComplex(0, 2, (1, 2, 1), {1: IntMatrix([[1, 1]]), 2: IntMatrix([[1], [-1]])})
    assert tensor(C, ChainComplex.concentrated(0)) == C
    free = ChainComplex(0, 1, (1, 1))
    T = tensor(free, free)
    assert [homology(T, n).free_rank for n in range(3)] == [1, 2, 1]


def test_hom_complex_of_mod_two_into_z():
    H = hom_complex(mod2(), ChainComplex.concentrated(0))
    assert H.rank(0) == 1 and H.rank(-1) == 1
    assert [abs(x) for x in H.d(0).entries] == [2]
    assert homotopy_class_group(mod2(), ChainComplex.concentrated(0)).is_zero


def test_homotopy_classes_are_additive():
    Z0 = ChainComplex.concentrated(0)
    assert homotopy_class_group(Z0, Z0) == Z
    assert homotopy_class_group(direct_sum(Z0, Z0), Z0) == HomologyGroup(2)
    K = ChainComplex(0, 1, (1, 1), {1: IntMatrix([[3]])})
    assert homotopy_class_group(shift(shift(K, 1), -1), Z0) == homotopy_class_group(K, Z0)


def test_quasi_isomorphism_verdicts():
    C = mod2()
    assert check_quasi_iso(ChainMap.identity(C)).passed
    report = check_quasi_iso(ChainMap(C, C, {}))
    assert not report.passed
    assert any("NOT iso" in line for line in report.lines())


def test_cone_of_identity_is_acyclic():
    C = ChainComplex(0, 2, (1, 2, 1), {1: IntMatrix([[1, 1]]), 2: IntMatrix([[1], [-1]])})
    cone = mapping_cone(ChainMap.identity(C))
    assert all(homology(cone, n).is_zero for n in range(0, 4))


def test_chain_map_must_commute():
    C = mod2()
    with pytest.raises(StructuralError, match="commute"):
        ChainMap(C, C, {0: IntMatrix([[1]]), 1: IntMatrix([[0]])})


# --- ======================================================= ---
# --- TRUNCATION TOWERS                                       ---
# --- ======================================================= ---

def test_tower_of_a_concentrated_complex():
    Z0 = ChainComplex.concentrated(0)
    report = sigma_tower_report(Z0, Z0)
    assert report.stabilization_index == 0
    assert report.lim1_vanishes
    assert report.exactness_verified
    assert report.limit_group == Z


def test_tower_stabilizes_at_the_top_degree():
    report = sigma_tower_report(mod2(), ChainComplex(0, 1, (1, 1), {1: IntMatrix([[1]])}))
    assert report.stabilization_index == 1
    assert report.exactness_verified
    assert "exact=yes" in list(report.lines())


def test_lim1_is_the_cokernel_of_one_minus_shift():
    K = ChainComplex(0, 2, (1, 2, 1), {1: IntMatrix([[1, 1]]), 2: IntMatrix([[1], [-1]])})
    assert tower_lim1(K, mod2()).is_zero
    assert tower_lim1(ChainComplex.concentrated(0), ChainComplex.concentrated(0)).is_zero
    report = sigma_tower_report(K, shift(mod2(), 1))
    assert report.lim1_group == ZERO
    assert "lim1=0" in list(report.lines())
    assert len(report.lim1_tower) == 3
