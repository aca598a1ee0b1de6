# In file: tests/test_hconstr.py
import pytest

from skernel.chain import HomologyGroup
from skernel.errors import PreconditionError, RangeError
from skernel.hconstr import (PushoutDiagram, bisimplicial_comparison, coprojection_check, cylinder,
                             cylinder_dual, homology_triangle_check, homotopy_pushout, skeleton_pushout_check,
                             strict_pushout_comparison, weq_certificate, wrap)
from skernel.simpset import BASE, SimplicialMap, boundary, homology_space, point, sphere
from skernel.tasks.task_hconstr import inclusion

Z = HomologyGroup(1)


def suspension_diagram():
    S0, pt = sphere(0), point()
    collapse = SimplicialMap.constant(S0, pt, BASE)
    return PushoutDiagram(S0, pt, pt, collapse, collapse)


# --- ======================================================= ---
# --- WRAPPING                                                ---
# --- ======================================================= ---

def test_wrap_keeps_vertices(triangle):
    assert wrap(triangle, 3).space.cell_counts()[0] == triangle.cell_counts()[0]
    assert wrap(sphere(1), 4).space.cell_counts()[0] == 1


def test_wrap_of_a_point_has_one_cell_per_dimension():
    W = wrap(point(pointed=False), 3).space
    assert W.cell_counts() == (1, 1, 1, 1)
    assert homology_space(W, 0) == Z
    assert all(homology_space(W, n).is_zero for n in (1, 2))


def test_wrap_counit_certificate_for_the_circle():
    cert = weq_certificate(wrap(sphere(1), 4).counit, 3)
    assert cert.passed
    assert list(cert.lines())[-1] == "certificate=pass"
    assert cert.to_json()["pass"] is True


def test_homology_triangle(triangle):
    assert homology_triangle_check(triangle, 3).passed


def test_wrap_needs_a_nonnegative_truncation():
    with pytest.raises(RangeError):
        wrap(sphere(1), -1)


# --- ======================================================= ---
# --- SKELETAL SQUARES                                        ---
# --- ======================================================= ---

def test_skeleton_square_for_the_circle():
    report = skeleton_pushout_check(sphere(1), 0, 3)
    assert report.passed
    assert report.pushout_counts == report.skeleton_counts


@pytest.mark.parametrize("n", [0, 1, 2])
def test_skeleton_squares_for_a_point(n):
    assert skeleton_pushout_check(point(), n, 3).passed


def test_skeleton_square_outside_the_truncation():
    with pytest.raises(RangeError):
        skeleton_pushout_check(sphere(1), 3, 3)


# --- ======================================================= ---
# --- HOMOTOPY PUSHOUTS AND CYLINDERS                         ---
# --- ======================================================= ---

def test_pushout_of_two_points_along_s0_is_a_circle():
    hp = homotopy_pushout(suspension_diagram())
    assert homology_space(hp.space, 1) == Z
    assert homology_space(hp.space, 2).is_zero
    assert coprojection_check(hp.from_L) and coprojection_check(hp.from_M)


def test_bisimplicial_model_agrees():
    assert bisimplicial_comparison(suspension_diagram()).is_isomorphism()


def test_pushout_along_identities_is_the_space(circle):
    ident = SimplicialMap.identity(circle)
    hp = homotopy_pushout(PushoutDiagram(circle, circle, circle, ident, ident))
    assert homology_space(hp.space, 1) == Z
    _, cert = strict_pushout_comparison(PushoutDiagram(circle, circle, circle, ident, ident), 2)
    assert cert.passed


def test_strict_comparison_along_a_coprojection(circle):
    pt = point()
    base = SimplicialMap.constant(pt, circle, BASE)
    Q = PushoutDiagram(pt, circle, circle, base, base)
    m, cert = strict_pushout_comparison(Q, 2)
    assert cert.passed
    assert homology_space(m.target, 1) == HomologyGroup(2)


def test_strict_comparison_needs_an_injective_leg():
    with pytest.raises(PreconditionError):
        strict_pushout_comparison(suspension_diagram())


def test_diagram_needs_pointed_maps():
    with pytest.raises(PreconditionError):
        PushoutDiagram(boundary(2), boundary(2), boundary(2), SimplicialMap.identity(boundary(2)),
                       SimplicialMap.identity(boundary(2)))


def test_cylinder_of_identity(circle):
    cyl = cylinder(SimplicialMap.identity(circle))
    assert cyl.retraction_is_strict()
    assert weq_certificate(cyl.retraction, 2).passed


def test_cylinder_of_a_collapse():
    S0 = sphere(0)
    cyl = cylinder(SimplicialMap.constant(S0, S0, BASE))
    assert cyl.retraction_is_strict()
    assert cyl.from_L.is_injective()
    assert weq_certificate(cyl.retraction, 2).passed


def test_dual_cylinder_retracts(triangle, disk):
    dual = cylinder_dual(inclusion(triangle, disk))
    assert dual.retraction_is_strict()


# --- ======================================================= ---
# --- CERTIFICATES                                            ---
# --- ======================================================= ---

def test_identity_certificate(triangle):
    cert = weq_certificate(SimplicialMap.identity(triangle), 3)
    assert cert.passed
    assert cert.groupoid_match == "equal"


def test_collapsing_a_disk(disk):
    cert = weq_certificate(SimplicialMap.constant(disk, point(), BASE), 3)
    assert cert.passed


def test_collapsing_a_circle_fails(circle):
    cert = weq_certificate(SimplicialMap.constant(circle, point(), BASE), 2)
    assert not cert.passed
    assert "H1=NOT iso" in list(cert.lines())


def test_range_zero_skips_the_groupoid(circle):
    cert = weq_certificate(SimplicialMap.identity(circle), 0)
    assert cert.groupoid_match == "skipped"
    assert cert.passed
