# In file: tests/test_suite.py
import pandas as pd
import pytest

from skernel.cli import Command, run_command
from skernel.errors import ParameterError
from skernel.tasks import suite
from skernel.tasks.suite import COLUMNS, report_lines, verify_suite


def test_report_lines_format():
    table = pd.DataFrame([
        {"case": "smith form", "anchor": "D = U M V", "instances": 3, "passed": True, "detail": ""},
        {"case": "bar construction", "anchor": "NBG = NG[1]", "instances": 2, "passed": False,
         "detail": "instance 1: pi1(BA) differs from pi0(A)"},
    ], columns=COLUMNS)
    assert list(report_lines(table)) == [
        "[PASS] smith form: D = U M V (3 instances)",
        "[FAIL] bar construction: NBG = NG[1] (2 instances)",
        "       instance 1: pi1(BA) differs from pi0(A)",
        "suite: 1/2 cases passed",
    ]


def test_unknown_size(app, fast_config):
    with pytest.raises(ParameterError):
        verify_suite(0, "huge", fast_config)


def test_chain_cases_are_deterministic(app, fast_config, monkeypatch):
    monkeypatch.setattr(suite, "CASES", suite.CASES[:3])
    first = verify_suite(0, "small", fast_config)
    second = verify_suite(0, "small", fast_config)
    pd.testing.assert_frame_equal(first, second)
    assert first["passed"].all()
    assert list(first["case"]) == ["smith normal form", "homology", "truncation tower"]


class ExplodingTask:
    name = "skernel.tasks.task_chain.smith_form_property"

    def apply(self, kwargs):
        raise ParameterError("no instances")


def test_task_failure_becomes_a_failed_row(app, fast_config, monkeypatch):
    monkeypatch.setattr(suite, "CASES", [(ExplodingTask(), "snf")])
    table = verify_suite(0, "small", fast_config)
    assert not table["passed"].iloc[0]
    assert table["detail"].iloc[0] == "no instances"


@pytest.mark.slow
def test_fast_suite_passes(app, fast_config):
    table = verify_suite(0, "small", fast_config)
    assert list(table.columns) == COLUMNS
    assert len(table) == len(suite.CASES)
    failed = table.loc[~table["passed"], ["case", "detail"]]
    assert failed.empty, failed.to_string()


@pytest.mark.slow
def test_small_suite_is_green_and_byte_identical(app):
    first = run_command(Command("suite", seed=0, size="small"))
    second = run_command(Command("suite", seed=0, size="small"))
    assert first == second
    assert first[1] == 0
    assert first[0].splitlines()[-1] == f"suite: {len(suite.CASES)}/{len(suite.CASES)} cases passed"
