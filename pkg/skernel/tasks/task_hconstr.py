# FILE: skernel/tasks/task_hconstr.py
import logging

from skernel.chain import HomologyGroup
from skernel.extensions import celery_app
from skernel.hconstr import (PushoutDiagram, bisimplicial_comparison, coprojection_check, cylinder,
                             cylinder_dual, homology_triangle_check, homotopy_pushout,
                             skeleton_pushout_check, strict_pushout_comparison, weq_certificate, wrap)
from skernel.simpset import SimplicialMap, boundary, homology_space, point, simplex, sphere
from skernel.tasks.utils import case_result, generator, random_space

log = logging.getLogger("skernel.tasks")


def inclusion(A, X):
    """A ⊂ X with shared cell names."""
    return SimplicialMap(A, X, {c: X.ref(c) for c in A.all_cells()})


def pushout_corpus():
    """Named diagrams L ← K → M with the reduced H1, H2 expected of their homotopy pushouts."""
    S0, S1, pt = sphere(0), sphere(1), point()
    tri = boundary(2, basepoint="[0]")
    disk = simplex(2, basepoint="[0]")
    Z, zero = HomologyGroup(1), HomologyGroup()
    return [
        ("suspension of S0", PushoutDiagram(S0, pt, pt, SimplicialMap.constant(S0, pt, "*"),
                                            SimplicialMap.constant(S0, pt, "*")), (Z, zero)),
        ("S1 along identities", PushoutDiagram(S1, S1, S1, SimplicialMap.identity(S1),
                                               SimplicialMap.identity(S1)), (Z, zero)),
        ("wedge of circles", PushoutDiagram(pt, S1, S1, SimplicialMap.constant(pt, S1, "*"),
                                            SimplicialMap.constant(pt, S1, "*")), (HomologyGroup(2), zero)),
        ("two disks on a circle", PushoutDiagram(tri, disk, disk, inclusion(tri, disk),
                                                 inclusion(tri, disk)), (zero, Z)),
        ("disk on a circle", PushoutDiagram(tri, disk, tri, inclusion(tri, disk),
                                            SimplicialMap.identity(tri)), (zero, zero)),
        ("cone on S1", PushoutDiagram(S1, pt, S1, SimplicialMap.constant(S1, pt, "*"),
                                      SimplicialMap.identity(S1)), (zero, zero)),
        ("suspension of S1", PushoutDiagram(S1, pt, pt, SimplicialMap.constant(S1, pt, "*"),
                                            SimplicialMap.constant(S1, pt, "*")), (zero, Z)),
        ("circle over a point", PushoutDiagram(pt, S1, pt, SimplicialMap.constant(pt, S1, "*"),
                                               SimplicialMap.identity(pt)), (Z, zero)),
        ("circle and suspended S0", PushoutDiagram(S0, pt, S1, SimplicialMap.constant(S0, pt, "*"),
                                                   SimplicialMap.constant(S0, S1, "*")), (HomologyGroup(2), zero)),
        ("triangle along identities", PushoutDiagram(tri, tri, tri, SimplicialMap.identity(tri),
                                                     SimplicialMap.identity(tri)), (Z, zero)),
    ]


def wrap_failure(X, D, range_):
    """Why the counit Wr(X) → X fails its certificate, or None."""
    cert = weq_certificate(wrap(X, D).counit, range_)
    if not cert.passed:
        return f"certificate failed ({', '.join(cert.lines())})"
    if cert.groupoid_match != "equal":
        return f"groupoid presentations of Wr(X) and X are not equal (match: {cert.groupoid_match})"
    return None


@celery_app.task(bind=True, ignore_result=False)
def wrap_property(self, seed=0, count=25, D=4, range_=3):
    """Wr(X) → X is a weak equivalence keeping the groupoid presentation of X; chains of Wr(X) match X."""
    log.info(f"--- [TASK: WRAP] Starting wrap counit certificates on {count} spaces (D={D}) ---")
    g = generator(seed, "wrap")
    failures = []
    spaces = [sphere(1), boundary(2, basepoint="[0]")]
    spaces += [random_space(g, vertices=3, edges=3, triangles=1) for _ in range(max(count - len(spaces), 0))]
    for t, X in enumerate(spaces):
        problem = wrap_failure(X, D, range_)
        if problem:
            failures.append(f"instance {t}: {problem}")
        elif t < 3 and not homology_triangle_check(X, D).passed:
            failures.append(f"instance {t}: homology triangle does not commute up to iso")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {len(spaces) - len(failures)}/{len(spaces)} certificates passed.")
    log.info("--- [TASK: WRAP] Completed wrap counit certificates ---")
    return case_result("wrap counit", "Wr(X) -> X is a weak equivalence", len(spaces), failures)


@celery_app.task(bind=True, ignore_result=False)
def skeleton_property(self, seed=0, count=3, D=3):
    """sk_{n+1} Wr(X) is the pushout of sk_n Wr(X) along the (n+1)-simplices of X."""
    log.info(f"--- [TASK: SKELETON] Starting skeleton pushout squares (D={D}) ---")
    g = generator(seed, "wrap")
    spaces = [sphere(1), boundary(2, basepoint="[0]"), boundary(2)]
    spaces += [random_space(g, vertices=2, edges=2, triangles=1) for _ in range(count)]
    failures, instances = [], 0
    for t, X in enumerate(spaces):
        for n in range(D):
            instances += 1
            report = skeleton_pushout_check(X, n, D)
            if not report.passed:
                failures.append(f"space {t}, n={n}: {' '.join(report.lines())}")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {instances - len(failures)}/{instances} squares are pushouts.")
    log.info("--- [TASK: SKELETON] Completed skeleton pushout squares ---")
    return case_result("skeleton squares", "sk_{n+1} Wr(X) = sk_n Wr(X) u X_{n+1} ^ dDelta^{n+1}_+",
                       instances, failures)


@celery_app.task(bind=True, ignore_result=False)
def pushout_property(self, seed=0, count=0, range_=3):
    """Homotopy pushouts, their strict comparisons along coprojections, cylinders and the bisimplicial model."""
    log.info("--- [TASK: PUSHOUT] Starting homotopy pushout corpus ---")
    failures, instances = [], 0
    for name, Q, (h1, h2) in pushout_corpus():
        instances += 1
        hp = homotopy_pushout(Q)
        if (homology_space(hp.space, 1), homology_space(hp.space, 2)) != (h1, h2):
            failures.append(f"{name}: reduced homology of K_Q is wrong")
            continue
        if not (coprojection_check(hp.from_L) and coprojection_check(hp.from_M)):
            failures.append(f"{name}: L or M does not embed in K_Q")
            continue
        if not bisimplicial_comparison(Q).is_isomorphism():
            failures.append(f"{name}: diagonal of the bisimplicial model is not K_Q")
            continue
        if Q.f.is_injective():
            _, cert = strict_pushout_comparison(Q, range_)
            if not cert.passed:
                failures.append(f"{name}: comparison with the strict pushout is not a weak equivalence")
                continue
        cyl = cylinder(Q.f)
        if not (cyl.retraction_is_strict() and weq_certificate(cyl.retraction, range_).passed):
            failures.append(f"{name}: cylinder retraction is not a strict weak equivalence")
            continue
        dual = cylinder_dual(Q.g)
        if not dual.retraction_is_strict():
            failures.append(f"{name}: dual cylinder retraction is not strict")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {instances - len(failures)}/{instances} diagrams passed.")
    log.info("--- [TASK: PUSHOUT] Completed homotopy pushout corpus ---")
    return case_result("homotopy pushouts", "K_Q -> L u_K M is a weak equivalence along coprojections",
                       instances, failures)
