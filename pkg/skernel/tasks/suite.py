# FILE: skernel/tasks/suite.py
"""Seeded verification suite: one Celery task per case, reported in a fixed order."""
import logging
from concurrent.futures import ThreadPoolExecutor

import pandas as pd

from config import Config
from skernel.errors import ParameterError
from skernel.tasks import task_chain, task_hconstr, task_simpab, task_simpset

log = logging.getLogger("skernel.tasks")

# (task, key into SKERNEL_SUITE_SIZES or None for fixed corpora)
CASES = [
    (task_chain.smith_form_property, "snf"),
    (task_chain.homology_property, "complexes"),
    (task_chain.tower_property, "tower"),
    (task_simpset.spaces_property, "spaces"),
    (task_simpab.dold_kan_property, "dold_kan"),
    (task_simpab.bar_property, "bar"),
    (task_simpab.ez_property, "ez"),
    (task_simpab.horn_property, "horns"),
    (task_simpab.smash_property, None),
    (task_hconstr.wrap_property, "wrap"),
    (task_hconstr.skeleton_property, None),
    (task_hconstr.pushout_property, None),
]

COLUMNS = ["case", "anchor", "instances", "passed", "detail"]


def _run(task, seed, count, eager=True):
    kwargs = {"seed": seed} if count is None else {"seed": seed, "count": count}
    try:
        if eager:
            return task.apply(kwargs=kwargs).get()
        # A worker behind a real broker picks the case up
        return task.apply_async(kwargs=kwargs).get()
    except ValueError as e:
        log.error(f"    -> ❌ {task.name} raised: {e}")
        name = task.name.rsplit(".", 1)[-1].replace("_property", "").replace("_", " ")
        return {"case": name, "anchor": "", "instances": 0, "passed": False, "detail": str(e)}


def verify_suite(seed=0, size="small", config=Config) -> pd.DataFrame:
    """Run every case and return the result table in CASES order."""
    sizes = config.SKERNEL_SUITE_SIZES
    if size not in sizes:
        raise ParameterError(f"unknown suite size '{size}', expected one of {sorted(sizes)}")
    counts = [sizes[size][key] if key else None for _, key in CASES]
    log.info(f"--- [TASK: SUITE] Starting verification suite (seed={seed}, size={size}) ---")

    threads = int(config.SKERNEL_THREADS or 0)
    eager = bool(getattr(config, "CELERY_TASK_ALWAYS_EAGER", True))
    if threads > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run, task, seed, n, eager) for (task, _), n in zip(CASES, counts)]
            rows = [f.result() for f in futures]
    else:
        rows = [_run(task, seed, n, eager) for (task, _), n in zip(CASES, counts)]

    table = pd.DataFrame(rows, columns=COLUMNS)
    log.info(f"    -> {int(table['passed'].sum())}/{len(table)} cases passed.")
    log.info("--- [TASK: SUITE] Completed verification suite ---")
    return table


def report_lines(table: pd.DataFrame):
    for row in table.itertuples(index=False):
        mark = "PASS" if row.passed else "FAIL"
        yield f"[{mark}] {row.case}: {row.anchor} ({row.instances} instances)"
        if not row.passed and row.detail:
            yield f"       {row.detail}"
    yield f"suite: {int(table['passed'].sum())}/{len(table)} cases passed"
