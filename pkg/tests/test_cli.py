# In file: tests/test_cli.py
import json

from click.testing import CliRunner

from skernel.chain import ChainComplex
from skernel.cli import Command, cli, run_command
from skernel.tasks import suite, task_simpab


def run(name, *paths, **flags):
    return run_command(Command(name, tuple(str(p) for p in paths), **flags))


# --- ======================================================= ---
# --- run_command                                             ---
# --- ======================================================= ---

def test_homology_of_the_two_sphere(app, samples):
    assert run("homology", samples / "sphere2.json") == ("H0=Z H1=0 H2=Z", 0)


def test_homology_of_a_complex(app, samples):
    assert run("homology", samples / "complex_mod2.json") == ("H0=Z/2 H1=0", 0)


def test_space_homology_of_the_torus(app, samples):
    text, code = run("space-homology", samples / "torus.json")
    assert code == 0
    assert "reduced H0=0 H1=Z^2 H2=Z" in text.splitlines()
    assert "euler=0" in text.splitlines()


def test_wrap_certificate_for_the_circle(app, samples):
    text, code = run("wr-verify", samples / "circle.json", dim=4, range=3)
    assert code == 0
    assert text.splitlines()[-1] == "certificate=pass"


def test_nk_roundtrip_on_a_complex(app, samples):
    text, code = run("nk-roundtrip", samples / "complex_mod2.json", dim=3)
    assert code == 0
    assert "N(K(C)) = C: yes" in text


def test_bar_on_the_constant_group(app, samples):
    text, code = run("bar", samples / "constant_z.json")
    assert code == 0
    assert "pi1(A)=0 pi1(BA)=Z" in text.splitlines()


def test_pushout_of_the_suspension_diagram(app, samples):
    text, code = run("pushout", samples / "diagram_suspension.json", range=2)
    assert code == 0
    assert "reduced H0=0 H1=Z H2=0" in text.splitlines()


def test_cylinder_of_the_disk_inclusion(app, samples):
    text, code = run("cylinder", samples / "map_disk.json", range=2)
    assert code == 0
    assert "retraction strict: yes" in text


def test_tower_report(app, samples):
    text, code = run("tower-report", samples / "complex_mod2.json", samples / "complex_point.json")
    assert code == 0
    assert "stabilization_index=1" in text.splitlines()


def test_missing_file_exits_two(app, tmp_path):
    text, code = run("homology", tmp_path / "absent.json")
    assert code == 2
    assert text.startswith("error:")


def test_wrong_document_kind_exits_two(app, samples):
    text, code = run("wr-verify", samples / "complex_mod2.json")
    assert code == 2
    assert "simplicial set" in text


def test_wrong_number_of_inputs(app, samples):
    _, code = run("ez-verify", samples / "constant_z.json")
    assert code == 2


def test_export_writes_the_payload(app, samples, tmp_path):
    out = tmp_path / "report.json"
    _, code = run("homology", samples / "sphere2.json", out=str(out))
    assert code == 0
    assert json.loads(out.read_text())["homology"] == {"0": "Z", "1": "0", "2": "Z"}


def test_suite_with_a_corrupted_differential(app, fast_config, monkeypatch):
    original = task_simpab.normalize_N

    def doubled(A):
        C = original(A)
        return ChainComplex(C.min_deg, C.max_deg, C.ranks, {n: m * 2 for n, m in C.differentials.items()})

    monkeypatch.setattr(task_simpab, "normalize_N", doubled)
    monkeypatch.setattr(suite, "CASES", suite.CASES[:5])
    text, code = run_command(Command("suite", seed=0), fast_config)
    assert code == 1
    assert any(line.startswith("[FAIL] dold-kan") for line in text.splitlines())


# --- ======================================================= ---
# --- click surface                                           ---
# --- ======================================================= ---

def test_click_homology(app, samples):
    result = CliRunner().invoke(cli, ["homology", "--in", str(samples / "sphere2.json")])
    assert result.exit_code == 0
    assert "H0=Z H1=0 H2=Z" in result.output


def test_click_bad_input(app, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "min": 0,\n  "max": }\n')
    result = CliRunner().invoke(cli, ["homology", "--in", str(bad)])
    assert result.exit_code == 2
    assert "line 3" in result.output


def test_click_lists_commands(app):
    result = CliRunner().invoke(cli, ["--help"])
    assert result.exit_code == 0
    for name in ("homology", "wr-verify", "pushout", "suite"):
        assert name in result.output
