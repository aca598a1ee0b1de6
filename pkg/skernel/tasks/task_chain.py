# FILE: skernel/tasks/task_chain.py
import logging

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors
from sympy.polys.domains import ZZ

from skernel.chain import (ChainMap, check_quasi_iso, homology, is_unimodular, mapping_cone,
                           sigma_tower_report, smith_normal_form, truncation_inclusion)
from skernel.extensions import celery_app
from skernel.tasks.utils import case_result, generator, random_complex, random_matrix

log = logging.getLogger("skernel.tasks")


def oracle_invariant_factors(M):
    """Nonzero invariant factors from sympy's exact Smith form over ZZ."""
    factors = sympy_invariant_factors(Matrix(M.tolist()), domain=ZZ)
    return tuple(abs(int(x)) for x in factors if x != 0)


@celery_app.task(bind=True, ignore_result=False)
def smith_form_property(self, seed=0, count=1000):
    """Random matrices up to 6×6: D = U·M·V, unimodular transforms, divisibility, oracle agreement."""
    log.info(f"--- [TASK: SNF] Starting Smith normal form check on {count} matrices ---")
    g = generator(seed, "snf")
    failures = []
    for t in range(count):
        M = random_matrix(g, int(g.integers(1, 7)), int(g.integers(1, 7)))
        U, D, V = smith_normal_form(M)
        diag = [D[i, i] for i in range(min(D.rows, D.cols))]
        off_diagonal = any(D[i, j] for i in range(D.rows) for j in range(D.cols) if i != j)
        nonzero = [x for x in diag if x]
        if U @ M @ V != D or off_diagonal:
            failures.append(f"instance {t}: D != U*M*V")
        elif not (is_unimodular(U) and is_unimodular(V)):
            failures.append(f"instance {t}: transform not unimodular")
        elif any(x < 0 for x in nonzero) or any(b % a for a, b in zip(nonzero, nonzero[1:])):
            failures.append(f"instance {t}: diagonal {diag} is not a divisibility chain")
        elif tuple(nonzero) != oracle_invariant_factors(M):
            failures.append(f"instance {t}: factors {nonzero} disagree with the sympy oracle")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count - len(failures)}/{count} matrices passed.")
    log.info("--- [TASK: SNF] Completed Smith normal form check ---")
    return case_result("smith normal form", "D = U*M*V, d1 | d2 | ...", count, failures)


@celery_app.task(bind=True, ignore_result=False)
def homology_property(self, seed=0, count=20):
    """Complexes with known homology; truncation inclusions and cones of identities."""
    log.info(f"--- [TASK: HOMOLOGY] Starting homology check on {count} complexes ---")
    g = generator(seed, "complexes")
    failures = []
    for t in range(count):
        C, expected = random_complex(g, 0, 3)
        got = {n: homology(C, n) for n in C.degrees}
        if got != expected:
            failures.append(f"instance {t}: homology {got} expected {expected}")
            continue
        if not check_quasi_iso(ChainMap.identity(C)):
            failures.append(f"instance {t}: identity is not a quasi-isomorphism")
            continue
        n = int(g.integers(0, 4))
        inclusion = truncation_inclusion(C, n)
        if not check_quasi_iso(inclusion, degrees=range(n, C.max_deg + 1)):
            failures.append(f"instance {t}: tau>={n} inclusion is not iso in degrees >= {n}")
            continue
        cone = mapping_cone(ChainMap.identity(C))
        if not all(homology(cone, m).is_zero for m in cone.degrees):
            failures.append(f"instance {t}: cone of the identity is not acyclic")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count - len(failures)}/{count} complexes passed.")
    log.info("--- [TASK: HOMOLOGY] Completed homology check ---")
    return case_result("homology", "H(C) via Smith forms, cone(id) acyclic", count, failures)


@celery_app.task(bind=True, ignore_result=False)
def tower_property(self, seed=0, count=100):
    """Hom(K, L) is the limit of the σ≤n tower and lim¹ vanishes."""
    log.info(f"--- [TASK: TOWER] Starting truncation tower check on {count} pairs ---")
    g = generator(seed, "tower")
    failures = []
    for t in range(count):
        K, _ = random_complex(g, 0, 2, pieces=2)
        L, _ = random_complex(g, 0, 1, pieces=2)
        report = sigma_tower_report(K, L)
        if not (report.exactness_verified and report.lim1_vanishes):
            failures.append(f"instance {t}: tower exactness fails at index {report.stabilization_index}")

    status = "✅" if not failures else "❌"
    log.info(f"    -> {status} {count - len(failures)}/{count} pairs passed.")
    log.info("--- [TASK: TOWER] Completed truncation tower check ---")
    return case_result("truncation tower", "Hom(K, L) = lim Hom(sigma<=n K, L), lim1 = 0", count, failures)
