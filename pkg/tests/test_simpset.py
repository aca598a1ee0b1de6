# In file: tests/test_simpset.py
import pytest

from skernel.chain import HomologyGroup
from skernel.errors import ParameterError, PreconditionError, StructuralError
from skernel.simpset import (BASE, SimplexRef, SimplicialMap, SimplicialSet, apply_operator, boundary, chains,
                             euler_characteristic, external_product_comparison, groupoid_presentation,
                             homology_space, horn, pi0, pi1_presentation, point, product, pushout_inj,
                             quotient, simplex, skeleton, smash, sphere, suspension, wedge)
from skernel.formats import parse_input

Z = HomologyGroup(1)


def projective_plane_skeleton():
    """One vertex v, one loop a and a 2-cell with faces (a, s0 v, a)."""
    faces = {
        "a": (SimplexRef("v"), SimplexRef("v")),
        "t": (SimplexRef("a", (), 1), SimplexRef("v", (0,), 1), SimplexRef("a", (), 1)),
    }
    return SimplicialSet({0: ("v",), 1: ("a",), 2: ("t",)}, faces)


# --- ======================================================= ---
# --- CONSTRUCTION AND OPERATORS                              ---
# --- ======================================================= ---

def test_standard_spaces_cell_counts():
    assert boundary(1).cell_counts() == (2,)
    assert horn(2, 1).cell_counts() == (3, 2)
    S1 = sphere(1)
    assert S1.cell_counts() == (1, 1)
    assert S1.faces["sigma1"] == (SimplexRef(BASE), SimplexRef(BASE))


def test_simplicial_identities_are_checked():
    faces = {
        "e": (SimplexRef("y"), SimplexRef("x")),
        "t": (SimplexRef("e", (), 1),) * 3,
    }
    with pytest.raises(StructuralError, match="simplicial identity"):
        SimplicialSet({0: ("x", "y"), 1: ("e",), 2: ("t",)}, faces)


def test_face_of_a_degeneracy():
    X = simplex(0)
    v = X.ref("[0]")
    s0v = apply_operator(X, v, "s0")
    assert s0v == SimplexRef("[0]", (0,), 1)
    assert apply_operator(X, s0v, "d1") == v
    assert apply_operator(X, s0v, ("s", 0)) == SimplexRef("[0]", (1, 0), 2)


def test_faces_of_nondegenerate_cells_are_stored():
    X = simplex(2)
    assert apply_operator(X, X.ref("[0,1,2]"), "d1") == SimplexRef("[0,2]", (), 1)


def test_operator_out_of_range():
    X = simplex(1)
    with pytest.raises(ParameterError):
        apply_operator(X, X.ref("[0,1]"), "d2")
    with pytest.raises(ParameterError):
        apply_operator(X, X.ref("[0]"), "d0")


def test_maps_must_commute_with_faces():
    S1 = sphere(1)
    with pytest.raises(StructuralError):
        SimplicialMap(S1, simplex(1), {BASE: SimplexRef("[0]"), "sigma1": SimplexRef("[0,1]", (), 1)})


def test_composing_with_identities(circle):
    collapse = SimplicialMap.constant(circle, point(), BASE)
    assert collapse.compose(SimplicialMap.identity(circle)).same_as(collapse)
    assert SimplicialMap.identity(point()).compose(collapse).same_as(collapse)
    assert not collapse.is_injective()


# --- ======================================================= ---
# --- PRODUCTS, WEDGES, SMASHES                               ---
# --- ======================================================= ---

def test_square_is_two_triangles():
    P = product(simplex(1), simplex(1))
    assert P.cell_counts() == (4, 5, 2)
    assert homology_space(P, 0) == Z
    assert homology_space(P, 1).is_zero and homology_space(P, 2).is_zero


def test_product_with_a_point():
    X = boundary(2)
    assert product(X, point(pointed=False)).cell_counts() == X.cell_counts()


def test_euler_characteristic_is_multiplicative():
    X, Y = boundary(3), simplex(1)
    assert euler_characteristic(product(X, Y)) == euler_characteristic(X) * euler_characteristic(Y) == 2


def test_components_of_a_product():
    S0 = sphere(0)
    assert len(pi0(product(S0, S0))) == 4
    assert len(pi0(S0)) == 2
    assert len(pi0(boundary(2))) == 1


def test_wedge_of_circles():
    W = wedge(sphere(1), sphere(1))
    assert W.cell_counts() == (1, 2)
    assert homology_space(W, 1) == HomologyGroup(2)
    assert wedge(sphere(1), point()).cell_counts() == (1, 1)


def test_wedge_of_circle_and_sphere(circle):
    W = wedge(circle, sphere(2))
    assert homology_space(W, 1) == Z
    assert homology_space(W, 2) == Z


def test_wedge_needs_basepoints():
    with pytest.raises(PreconditionError):
        wedge(boundary(2), sphere(1))


def test_smash_of_circles_is_a_two_sphere():
    S = smash(sphere(1), sphere(1))
    assert homology_space(S, 2) == Z
    assert homology_space(S, 1).is_zero
    assert all(homology_space(smash(sphere(1), point()), n).is_zero for n in range(3))


def test_suspension_shifts_reduced_homology():
    assert homology_space(suspension(sphere(0), 1), 1) == Z
    assert homology_space(suspension(sphere(1), 2), 3) == Z
    assert homology_space(suspension(sphere(1), 0), 1) == Z


def test_diagonal_of_external_product():
    assert external_product_comparison(simplex(1), boundary(2)).is_isomorphism()


# --- ======================================================= ---
# --- PUSHOUTS AND SKELETA                                    ---
# --- ======================================================= ---

def test_disk_modulo_its_boundary():
    P = quotient(simplex(2), ["[0,1]", "[0,2]", "[1,2]"])
    assert P.verify()
    assert homology_space(P.space, 2) == Z
    assert homology_space(P.space, 1).is_zero


def test_interval_with_ends_glued():
    ends = boundary(1)
    f = SimplicialMap(ends, simplex(1), {c: SimplexRef(c) for c in ends.all_cells()})
    g = SimplicialMap.constant(ends, point(), BASE)
    P = pushout_inj(f, g)
    assert homology_space(P.space, 1) == Z


def test_pushout_needs_an_injective_leg():
    S0 = sphere(0)
    collapse = SimplicialMap.constant(S0, point(), BASE)
    with pytest.raises(PreconditionError):
        pushout_inj(collapse, SimplicialMap.identity(S0))


def test_skeleta_of_a_triangle():
    assert skeleton(simplex(2), 1) == boundary(2)
    assert skeleton(simplex(2), 5) == simplex(2)
    assert skeleton(simplex(2), -1).dimension == -1
    assert skeleton(sphere(1), -1).cell_counts() == (1,)


# --- ======================================================= ---
# --- FUNDAMENTAL GROUPOIDS AND CHAINS                        ---
# --- ======================================================= ---

def test_groupoid_presentations():
    G = groupoid_presentation(simplex(1))
    assert (len(G.objects), len(G.generators), len(G.relations)) == (2, 1, 0)
    G = groupoid_presentation(boundary(2))
    assert (len(G.objects), len(G.generators), len(G.relations)) == (3, 3, 0)


def test_fundamental_group_of_triangle_and_disk():
    pres = pi1_presentation(boundary(2), "[0]")
    assert (len(pres.generators), len(pres.relators)) == (1, 0)
    assert pres.abelianization() == Z
    disk = pi1_presentation(simplex(2), "[0]").simplify()
    assert disk.generators == ()
    assert disk.abelianization().is_zero


def test_loop_squared_relator():
    X = projective_plane_skeleton()
    pres = pi1_presentation(X, "v")
    assert pres.relators == ((("a", 1), ("a", 1)),)
    assert pres.abelianization() == HomologyGroup(0, (2,))
    assert homology_space(X, 1) == HomologyGroup(0, (2,))


def test_pi1_needs_a_vertex():
    with pytest.raises(ParameterError):
        pi1_presentation(boundary(2), "[0,1]")


def test_chains_of_the_triangle_boundary():
    C = chains(boundary(2))
    assert C.ranks == (3, 3)
    assert homology_space(boundary(2), 0) == Z
    assert homology_space(boundary(2), 1) == Z


def test_unnormalized_chains_need_a_cap():
    with pytest.raises(ParameterError):
        chains(boundary(2), normalized=False)


def test_torus_sample(samples):
    T = parse_input(samples / "torus.json")
    assert homology_space(T, 1) == HomologyGroup(2)
    assert homology_space(T, 2) == Z
    assert euler_characteristic(T) == 0
    full = chains(T, normalized=False, cap=3)
    normalized = chains(T)
    for n in range(3):
        assert full.homology(n) == normalized.homology(n)
