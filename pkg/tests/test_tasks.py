# In file: tests/test_tasks.py
import pytest

from skernel.chain import HomologyGroup, IntMatrix, invariant_factors
from skernel.hconstr import WeqCertificate, weq_certificate, wrap
from skernel.simpab import SimplicialAbGroup, bar_iterated, ez_maps
from skernel.simpset import sphere
from skernel.tasks import task_chain, task_hconstr, task_simpab
from skernel.tasks.utils import generator, random_sag, random_space

Z = HomologyGroup(1)


def run(task, **kwargs):
    return task.apply(kwargs=kwargs).get()


# --- ======================================================= ---
# --- CHAIN CASES                                             ---
# --- ======================================================= ---

def test_snf_oracle_is_exact_on_large_entries():
    M = IntMatrix([[3 ** 40, 0], [0, 3 ** 41]])
    assert task_chain.oracle_invariant_factors(M) == (3 ** 40, 3 ** 41)
    assert task_chain.oracle_invariant_factors(M) == invariant_factors(M)
    assert task_chain.oracle_invariant_factors(IntMatrix([[0, 0]])) == ()


# --- ======================================================= ---
# --- SIMPLICIAL GROUP CASES                                  ---
# --- ======================================================= ---

def test_random_groups_reach_degree_three():
    g = generator(0, "dold_kan")
    for _ in range(6):
        A, C, expected = random_sag(g, 4)
        assert A.D == 4
        assert C.max_deg == 3
        assert sorted(expected) == [0, 1, 2, 3]


def test_double_bar_of_z_is_concentrated_in_degree_two():
    twice = bar_iterated(SimplicialAbGroup.constant(1, 4), 2)
    assert task_simpab.misplaced_homotopy(twice, 2, Z) == []
    assert task_simpab.misplaced_homotopy(SimplicialAbGroup.constant(1, 4), 2, Z) == [0, 2]


def test_ez_retraction_through_degree_four():
    g = generator(0, "ez")
    A, _, expected_a = random_sag(g, 4, pieces=2)
    B, _, expected_b = random_sag(g, 4, pieces=1)
    pair = ez_maps(A, B)
    assert pair.shuffle.source.max_deg == 4
    assert pair.shuffle.target.max_deg == 4
    assert pair.strict_retraction()
    assert task_simpab.kunneth_mismatch(A, B, expected_a, expected_b, pair.shuffle.target) == []


def test_kunneth_on_constant_groups():
    A = SimplicialAbGroup.constant(2, 3)
    pair = ez_maps(A, A)
    expected = {n: HomologyGroup(2) if n == 0 else HomologyGroup() for n in range(3)}
    assert task_simpab.kunneth_mismatch(A, A, expected, expected, pair.shuffle.target) == []
    wrong = {n: HomologyGroup(1) if n == 0 else HomologyGroup() for n in range(3)}
    assert task_simpab.kunneth_mismatch(A, A, wrong, wrong, pair.shuffle.target) == [0]


def test_smash_case_covers_every_sphere_pair(app):
    row = run(task_simpab.smash_property)
    assert row["passed"], row["detail"]
    assert row["instances"] == 9 + 6


@pytest.mark.slow
def test_bar_and_ez_cases_at_dimension_four(app):
    bar = run(task_simpab.bar_property, seed=0, count=2)
    ez = run(task_simpab.ez_property, seed=0, count=2)
    dold_kan = run(task_simpab.dold_kan_property, seed=0, count=3)
    assert bar["passed"], bar["detail"]
    assert ez["passed"], ez["detail"]
    assert dold_kan["passed"], dold_kan["detail"]


# --- ======================================================= ---
# --- WRAP CASE                                               ---
# --- ======================================================= ---

def test_wrap_keeps_groupoid_presentations_of_random_spaces():
    g = generator(0, "wrap")
    for _ in range(4):
        X = random_space(g, vertices=3, edges=3, triangles=1)
        assert weq_certificate(wrap(X, 4).counit, 3).groupoid_match == "equal"
        assert task_hconstr.wrap_failure(X, 4, 3) is None


def test_wrap_case_rejects_abelianized_matches(monkeypatch):
    def abelianized(f, range_):
        return WeqCertificate(range_, True, {n: True for n in range(range_ + 1)}, "abelianized", True, True)

    monkeypatch.setattr(task_hconstr, "weq_certificate", abelianized)
    problem = task_hconstr.wrap_failure(sphere(1), 4, 3)
    assert problem is not None
    assert "groupoid presentations" in problem
