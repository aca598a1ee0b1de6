# FILE: skernel/tasks/task_simpset.py
import logging

from skernel.chain import homology
from skernel.extensions import celery_app
from skernel.hconstr import unpointed
from skernel.simpset import (chains, euler_characteristic, external_product_comparison, pi0,
                             pi1_presentation, product, suspension)
from skernel.tasks.utils import case_result, generator, random_space

log = logging.getLogger("skernel.tasks")


def _space_failures(X, Y, tag):
    """Every check on one random pair; returns the failure messages."""
    failures = []
    U = unpointed(X)
    normalized = chains(U)
    full = chains(U, normalized=False, cap=3)
    for n in range(3):
        if homology(normalized, n) != homology(full, n):
            failures.append(f"{tag}: normalized and unnormalized H{n} differ")
    components = pi0(X)
    if homology(normalized, 0).free_rank != len(components):
        failures.append(f"{tag}: H0 rank differs from the {len(components)} components")
    if len(components) == 1 and pi1_presentation(X, X.basepoint).abelianization() != homology(normalized, 1):
        failures.append(f"{tag}: abelianized pi1 differs from H1")
    chi = sum((-1) ** n * homology(normalized, n).free_rank for n in normalized.degrees)
    if chi != euler_characteristic(X):
        failures.append(f"{tag}: Euler characteristic {euler_characteristic(X)} differs from {chi}")
    if euler_characteristic(product(U, unpointed(Y))) != euler_characteristic(X) * euler_characteristic(Y):
        failures.append(f"{tag}: Euler characteristic is not multiplicative on products")
    if not external_product_comparison(U, unpointed(Y)).is_isomorphism():
        failures.append(f"{tag}: diagonal of the external product is not the product")
    reduced = chains(X)
    sigma = chains(suspension(X, 1))
    for n in range(3):
        if homology(sigma, n + 1) != homology(reduced, n):
            failures.append(f"{tag}: reduced H{n + 1} of the suspension is not H{n}")
    return failures


@celery_app.task(bind=True, ignore_result=False)
def spaces_property(self, seed=0, count=12):
    """Random pointed simplicial sets of dimension ≤ 2."""
    log.info(f"--- [TASK: SPACES] Starting simplicial set checks on {count} spaces ---")
    g = generator(seed, "spaces")
    failures = []
    for t in range(count):
        X = random_space(g)
        Y = random_space(g, vertices=2, edges=2, triangles=1)
        log.debug(f"    -> space {t}: cell counts {X.cell_counts()}")
        failures.extend(_space_failures(X, Y, f"instance {t}"))

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count} spaces checked, {len(failures)} failures.")
    log.info("--- [TASK: SPACES] Completed simplicial set checks ---")
    return case_result("simplicial sets", "normalized = unnormalized homology, pi1^ab = H1, H(SX) = H(X)[1]",
                       count, failures)
