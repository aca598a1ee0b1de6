# FILE: skernel/tasks/task_simpab.py
import itertools
import logging

from skernel.chain import HomologyGroup, IntMatrix, check_quasi_iso, homology
from skernel.extensions import celery_app
from skernel.simpab import (SimplicialAbGroup, bar_B, bar_iterated, dold_kan_iso, dold_kan_K, ez_maps,
                            free_reduced_Z, homotopy_groups, horn_filler, normalize_N, smash_comparison,
                            unnormalized_complex)
from skernel.simpset import sphere, suspension
from skernel.tasks.utils import case_result, generator, random_complex, random_horn, random_sag

log = logging.getLogger("skernel.tasks")


def misplaced_homotopy(A, degree, group):
    """Degrees i < D where π_i(A) is not ``group`` at ``degree`` and 0 elsewhere."""
    return [i for i in range(A.D)
            if homotopy_groups(A, i) != (group if i == degree else HomologyGroup())]


def kunneth_mismatch(A, B, expected_a, expected_b, target):
    """
    Degrees n < D where H_n(target) differs from ⊕ H_p(A) ⊗ H_q(B); only meaningful
    when both sides are torsion-free, otherwise no degree is reported.
    """
    D = min(A.D, B.D)
    if any(expected_a[n].torsion or expected_b[n].torsion for n in range(D)):
        return []
    bad = []
    for n in range(D):
        rank = sum(expected_a[p].free_rank * expected_b[n - p].free_rank for p in range(n + 1))
        if homology(target, n) != HomologyGroup(rank):
            bad.append(n)
    return bad


@celery_app.task(bind=True, ignore_result=False)
def dold_kan_property(self, seed=0, count=50, D=4):
    """N(K(C)) = C on complexes in degrees 0..D-1, K(N(A)) ≅ A, and normalized/unnormalized homology agree."""
    log.info(f"--- [TASK: DOLD-KAN] Starting Dold-Kan round trips on {count} instances (D={D}) ---")
    g = generator(seed, "dold_kan")
    failures = []
    for t in range(count):
        C, _ = random_complex(g, 0, D - 1, pieces=3)
        if normalize_N(dold_kan_K(C, D)) != C:
            failures.append(f"instance {t}: N(K(C)) differs from C")
            continue
        A, _, expected = random_sag(g, D)
        try:
            dold_kan_iso(A)
        except ValueError as e:
            failures.append(f"instance {t}: {e}")
            continue
        N, full = normalize_N(A), unnormalized_complex(A)
        for n in range(D):
            if homology(N, n) != homology(full, n):
                failures.append(f"instance {t}: normalized and unnormalized H{n} differ")
            elif homotopy_groups(A, n) != expected[n]:
                failures.append(f"instance {t}: pi{n} is {homotopy_groups(A, n)}, expected {expected[n]}")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count} instances checked, {len(failures)} failures.")
    log.info("--- [TASK: DOLD-KAN] Completed Dold-Kan round trips ---")
    return case_result("dold-kan", "N K = id, K N = id, normalization theorem", count, failures)


@celery_app.task(bind=True, ignore_result=False)
def bar_property(self, seed=0, count=25, D=4):
    """π_i(B A) = π_{i-1}(A) for 1 ≤ i ≤ D-1, B A is connected, and B²Z is Z in degree 2 only."""
    log.info(f"--- [TASK: BAR] Starting bar construction shift on {count} groups (D={D}) ---")
    g = generator(seed, "bar")
    failures = []
    twice = bar_iterated(SimplicialAbGroup.constant(1, D), 2)
    bad = misplaced_homotopy(twice, 2, HomologyGroup(1))
    if bad:
        failures.append(f"B^2 of the constant group Z is not Z in degree 2 only (degrees {bad})")
    for t in range(count):
        A, _, _ = random_sag(g, D, pieces=2)
        B = bar_B(A)
        if not homotopy_groups(B, 0).is_zero:
            failures.append(f"instance {t}: pi0 of the bar construction is not 0")
            continue
        for i in range(1, D):
            if homotopy_groups(B, i) != homotopy_groups(A, i - 1):
                failures.append(f"instance {t}: pi{i}(BA) differs from pi{i - 1}(A)")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count} groups checked, {len(failures)} failures.")
    log.info("--- [TASK: BAR] Completed bar construction shift ---")
    return case_result("bar construction", "NBG = NG[1]", count, failures)


@celery_app.task(bind=True, ignore_result=False)
def ez_property(self, seed=0, count=25, D=4):
    """AW ∘ shuffle = id in degrees ≤ D, the shuffle map is a quasi-isomorphism, Künneth on free instances."""
    log.info(f"--- [TASK: EZ] Starting Eilenberg-Zilber checks on {count} pairs (D={D}) ---")
    g = generator(seed, "ez")
    failures = []
    for t in range(count):
        A, _, expected_a = random_sag(g, D, pieces=2)
        B, _, expected_b = random_sag(g, D, pieces=1)
        pair = ez_maps(A, B)
        if not pair.strict_retraction():
            failures.append(f"instance {t}: AW after shuffle is not the identity")
        elif not check_quasi_iso(pair.shuffle, degrees=range(D)):
            failures.append(f"instance {t}: shuffle map is not a quasi-isomorphism")
        elif kunneth_mismatch(A, B, expected_a, expected_b, pair.shuffle.target):
            failures.append(f"instance {t}: homology of N(A(x)B) disagrees with the Kunneth formula")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count - len(failures)}/{count} pairs passed.")
    log.info("--- [TASK: EZ] Completed Eilenberg-Zilber checks ---")
    return case_result("eilenberg-zilber", "AW o shuffle = id, N(A)(x)N(B) ~ N(A(x)B)", count, failures)


@celery_app.task(bind=True, ignore_result=False)
def horn_property(self, seed=0, count=200, D=3):
    """Every horn in a simplicial abelian group has a filler."""
    log.info(f"--- [TASK: HORNS] Starting horn filling on {count} horns (D={D}) ---")
    g = generator(seed, "horns")
    failures = []
    A = None
    for t in range(count):
        if t % 20 == 0:
            A, _, _ = random_sag(g, D)
        n = int(g.integers(1, D + 1))
        k = int(g.integers(0, n + 1))
        faces = random_horn(g, A, n, k)
        try:
            z = horn_filler(A, n, k, faces)
        except ValueError as e:
            failures.append(f"instance {t}: horn ({n},{k}) not filled: {e}")
            continue
        column = IntMatrix([[v] for v in z], rows=A.rank(n), cols=1)
        if any(tuple((A.face(n, i) @ column).entries) != faces[i] for i in range(n + 1) if i != k):
            failures.append(f"instance {t}: filler of horn ({n},{k}) has the wrong faces")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count - len(failures)}/{count} horns filled.")
    log.info("--- [TASK: HORNS] Completed horn filling ---")
    return case_result("kan condition", "simplicial groups are Kan complexes", count, failures)




@celery_app.task(bind=True, ignore_result=False)
def smash_property(self, seed=0, count=0, D=3):
    """Z̃(E ∧ F) = Z̃(E) ⊗ Z̃(F) for spheres E, F, and Σⁱ shifts N Z̃ by i for i = 1, 2."""
    log.info(f"--- [TASK: SMASH] Starting smash and suspension checks (D={D}) ---")
    spheres = [("S0", sphere(0)), ("S1", sphere(1)), ("S2", sphere(2))]
    failures, instances = [], 0
    for (a, E), (b, F) in itertools.product(spheres, repeat=2):
        instances += 1
        phi = smash_comparison(E, F, D)
        if not (phi.is_isomorphism() and phi.commutes()):
            failures.append(f"{a}^{b}: smash comparison is not an isomorphism")
    for (name, F), i in itertools.product(spheres, (1, 2)):
        instances += 1
        plain = normalize_N(free_reduced_Z(F, D))
        shifted = normalize_N(free_reduced_Z(suspension(F, i), D))
        for n in range(D):
            expected = homology(plain, n - i) if n >= i else HomologyGroup()
            if homology(shifted, n) != expected:
                failures.append(f"S^{i} {name}: H{n} is {homology(shifted, n)}, expected {expected}")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {instances} cases checked, {len(failures)} failures.")
    log.info("--- [TASK: SMASH] Completed smash and suspension checks ---")
    return case_result("smash products", "Z~(E^F) = Z~(E)(x)Z~(F), NZ~(S^i F) = NZ~(F)[i]",
                       instances, failures)
