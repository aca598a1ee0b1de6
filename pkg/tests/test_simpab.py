# In file: tests/test_simpab.py
import pytest

from skernel.chain import ChainComplex, HomologyGroup, IntMatrix, check_quasi_iso, homology
from skernel.errors import PreconditionError, RangeError
from skernel.simpab import (SimplicialAbGroup, bar_B, bar_iterated, dold_kan_iso, dold_kan_K,
                            eilenberg_maclane, ez_maps, free_reduced_Z, homotopy_groups, horn_filler,
                            normalize_N, shuffles, smash_comparison, unnormalized_complex)
from skernel.simpset import boundary, sphere
from skernel.tasks.utils import generator, random_horn, random_sag

Z = HomologyGroup(1)


def mod2():
    return ChainComplex(0, 1, (1, 1), {1: IntMatrix([[2]])})


# --- ======================================================= ---
# --- DOLD-KAN                                                ---
# --- ======================================================= ---

def test_constant_group_has_homotopy_in_degree_zero():
    A = SimplicialAbGroup.constant(2, 3)
    assert homotopy_groups(A, 0) == HomologyGroup(2)
    assert homotopy_groups(A, 1).is_zero and homotopy_groups(A, 2).is_zero
    assert normalize_N(A) == ChainComplex.concentrated(0, 2)


def test_K_of_a_degree_one_class():
    K = dold_kan_K(ChainComplex.concentrated(1), 3)
    assert K.ranks == (0, 1, 2, 3)


def test_K_of_degree_zero_is_constant():
    K = dold_kan_K(ChainComplex.concentrated(0), 3)
    assert K.ranks == (1, 1, 1, 1)
    assert all(m.is_identity() for m in K.faces.values())


def test_eilenberg_maclane_space():
    A = eilenberg_maclane(1, 2, 4)
    assert homotopy_groups(A, 2) == Z
    assert all(homotopy_groups(A, i).is_zero for i in (0, 1, 3))
    assert homology(unnormalized_complex(A), 2) == Z


def test_normalizing_K_gives_back_the_complex():
    assert normalize_N(dold_kan_K(mod2(), 3)) == mod2()


def test_K_of_N_is_isomorphic_to_random_groups():
    g = generator(5, "dold_kan")
    for _ in range(4):
        A, _, expected = random_sag(g, 3)
        assert dold_kan_iso(A).is_isomorphism()
        assert [homotopy_groups(A, n) for n in range(3)] == [expected[n] for n in range(3)]


def test_normalization_theorem_on_constant_group():
    full = unnormalized_complex(SimplicialAbGroup.constant(1, 3))
    assert homology(full, 0) == Z
    assert homology(full, 1).is_zero and homology(full, 2).is_zero


def test_homotopy_groups_outside_the_trusted_range():
    with pytest.raises(RangeError):
        homotopy_groups(SimplicialAbGroup.constant(1, 3), 3)


# --- ======================================================= ---
# --- FREE FUNCTORS                                           ---
# --- ======================================================= ---

def test_reduced_free_group_on_spheres():
    S0 = free_reduced_Z(sphere(0), 3)
    assert S0.ranks == (1, 1, 1, 1)
    assert homotopy_groups(S0, 0) == Z
    S1 = free_reduced_Z(sphere(1), 3)
    assert homotopy_groups(S1, 0).is_zero
    assert homotopy_groups(S1, 1) == Z


def test_reduced_free_group_needs_a_basepoint():
    with pytest.raises(PreconditionError):
        free_reduced_Z(boundary(2), 2)


def test_smash_comparison_for_circles():
    phi = smash_comparison(sphere(1), sphere(1), 3)
    assert phi.is_isomorphism()
    assert phi.commutes()


# --- ======================================================= ---
# --- BAR CONSTRUCTION                                        ---
# --- ======================================================= ---

def test_bar_of_zero_is_zero():
    assert bar_B(SimplicialAbGroup.zero(3)).ranks == (0, 0, 0, 0)


def test_bar_of_constant_z_is_a_circle():
    B = bar_B(SimplicialAbGroup.constant(1, 3))
    assert homotopy_groups(B, 0).is_zero
    assert homotopy_groups(B, 1) == Z
    assert homotopy_groups(B, 2).is_zero


def test_bar_twice_on_constant_z():
    B2 = bar_iterated(SimplicialAbGroup.constant(1, 4), 2)
    assert homotopy_groups(B2, 2) == Z
    assert all(homotopy_groups(B2, i).is_zero for i in (0, 1, 3))


# --- ======================================================= ---
# --- EILENBERG-ZILBER                                        ---
# --- ======================================================= ---

def test_one_one_shuffles():
    found = list(shuffles(1, 1))
    assert len(found) == 2
    assert sorted(sign for _, _, sign in found) == [-1, 1]


def test_ez_in_degree_zero_is_identity():
    A = SimplicialAbGroup.constant(1, 2)
    pair = ez_maps(A, A)
    assert pair.strict_retraction()
    assert pair.shuffle[0].is_identity()
    assert pair.aw[0].is_identity()


def test_ez_for_two_circles():
    A = free_reduced_Z(sphere(1), 3)
    pair = ez_maps(A, A)
    assert pair.strict_retraction()
    assert check_quasi_iso(pair.shuffle, degrees=range(3)).passed
    assert homology(pair.shuffle.target, 2) == Z


# --- ======================================================= ---
# --- HORNS                                                   ---
# --- ======================================================= ---

def test_fill_horn_in_constant_group():
    A = SimplicialAbGroup.constant(1, 3)
    x = horn_filler(A, 2, 1, [(3,), None, (3,)])
    assert x == (3,)


def test_zero_horn_has_zero_filler():
    A = dold_kan_K(ChainComplex.concentrated(1), 3)
    x = horn_filler(A, 2, 0, [None, (0,), (0,)])
    assert x == (0, 0)


def test_incompatible_horn():
    A = SimplicialAbGroup.constant(1, 3)
    with pytest.raises(PreconditionError, match="incompatible horn"):
        horn_filler(A, 2, 1, [(1,), None, (2,)])


def test_random_horns_are_filled():
    g = generator(3, "horns")
    A, _, _ = random_sag(g, 3)
    for n in range(1, 4):
        for k in range(n + 1):
            faces = random_horn(g, A, n, k)
            x = IntMatrix([[v] for v in horn_filler(A, n, k, faces)], rows=A.rank(n), cols=1)
            for i in range(n + 1):
                if i != k:
                    assert tuple((A.face(n, i) @ x).entries) == faces[i]
