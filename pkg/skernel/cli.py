# FILE: skernel/cli.py
"""
Command-line surface.

Every command prints a line-oriented report on stdout and exits 0 on success,
1 when a verification fails and 2 when the input cannot be used.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import click
import pandas as pd

from config import Config
from skernel import create_app
from skernel.chain import (ChainComplex, check_quasi_iso, homology, sigma_tower_report, truncate_good,
                           truncate_stupid)
from skernel.errors import InputError, SkernelError, StructuralError
from skernel.formats import parse_input
from skernel.hconstr import (PushoutDiagram, bisimplicial_comparison, cylinder, homotopy_pushout,
                             strict_pushout_comparison, weq_certificate, wrap)
from skernel.simpab import (SimplicialAbGroup, bar_B, dold_kan_iso, dold_kan_K, ez_maps, free_reduced_Z,
                            free_Z, homotopy_groups, normalize_N)
from skernel.simpset import SimplicialSet, chains, euler_characteristic, label, pi0, pi1_presentation

log = logging.getLogger("skernel.cli")


@dataclass(frozen=True)
class Command:
    name: str
    inputs: tuple = ()
    out: str = None
    dim: int = None
    range: int = None
    seed: int = 0
    size: str = "small"


@dataclass
class Outcome:
    lines: list
    passed: bool = True
    payload: object = None


# --- ======================================================= ---
# --- INPUT HELPERS                                           ---
# --- ======================================================= ---

def _inputs(cmd, count):
    if len(cmd.inputs) != count:
        raise InputError(f"'{cmd.name}' needs {count} --in file(s), got {len(cmd.inputs)}")
    return [parse_input(Path(p)) for p in cmd.inputs]


def _expect(obj, kinds, what):
    if not isinstance(obj, kinds):
        raise InputError(f"expected {what}, got a {_kind_name(obj)} document")
    return obj


def _kind_name(obj):
    if isinstance(obj, dict):
        return obj["kind"]
    return {ChainComplex: "chain complex", SimplicialSet: "simplicial set",
            SimplicialAbGroup: "simplicial abelian group"}.get(type(obj), type(obj).__name__)


def _as_group(obj, D):
    """A simplicial abelian group from any single-object document."""
    if isinstance(obj, SimplicialAbGroup):
        return obj
    if isinstance(obj, ChainComplex):
        return dold_kan_K(obj, D)
    if isinstance(obj, SimplicialSet):
        return free_reduced_Z(obj, D) if obj.pointed else free_Z(obj, D)
    raise InputError(f"expected a complex, simplicial set or simplicial group, got a {_kind_name(obj)} document")


def _homology_line(C, degrees):
    groups = {n: homology(C, n) for n in degrees}
    return " ".join(f"H{n}={g}" for n, g in groups.items()), {str(n): str(g) for n, g in groups.items()}


def _yes(flag):
    return "yes" if flag else "no"


# --- ======================================================= ---
# --- COMMAND HANDLERS                                        ---
# --- ======================================================= ---

def _homology(cmd, config):
    obj = _inputs(cmd, 1)[0]
    if isinstance(obj, ChainComplex):
        C, degrees = obj, obj.degrees
    elif isinstance(obj, SimplicialSet):
        C = chains(obj)
        degrees = range(0, max(obj.dimension, 0) + 1)
    else:
        A = _expect(obj, SimplicialAbGroup, "a complex, simplicial set or simplicial group")
        C, degrees = normalize_N(A), range(0, A.D)
    line, groups = _homology_line(C, degrees)
    return Outcome([line], True, {"homology": groups})


def _space_homology(cmd, config):
    X = _expect(_inputs(cmd, 1)[0], SimplicialSet, "a simplicial set")
    line, groups = _homology_line(chains(X), range(0, max(X.dimension, 0) + 1))
    lines = [f"cells={X.cell_counts()}", ("reduced " if X.pointed else "") + line,
             f"components={len(pi0(X))}", f"euler={euler_characteristic(X)}"]
    fundamental = {}
    for comp in pi0(X):
        pres = pi1_presentation(X, comp[0]).simplify()
        v = label(comp[0])
        lines.append(f"pi1[{v}]: generators={len(pres.generators)} relators={len(pres.relators)} "
                     f"abelianization={pres.abelianization()}")
        fundamental[v] = str(pres.abelianization())
    payload = {"cells": list(X.cell_counts()), "homology": groups, "reduced": X.pointed,
               "components": len(pi0(X)), "euler": euler_characteristic(X), "pi1_abelianized": fundamental}
    return Outcome(lines, True, payload)


def _nk_roundtrip(cmd, config):
    obj = _inputs(cmd, 1)[0]
    D = cmd.dim if cmd.dim is not None else config.SKERNEL_DEFAULT_DIM
    if isinstance(obj, ChainComplex):
        K = dold_kan_K(obj, D)
        expected = truncate_stupid(truncate_good(obj, 0), D)
        ok = normalize_N(K) == expected
        lines = [f"K(C) ranks={K.ranks}", f"N(K(C)) = C: {_yes(ok)}"]
        return Outcome(lines, ok, {"ranks": list(K.ranks), "roundtrip": ok})
    A = _expect(obj, SimplicialAbGroup, "a chain complex or simplicial group")
    try:
        dold_kan_iso(A)
        iso = True
    except StructuralError as e:
        log.warning(f"[DOLD-KAN] {e}")
        iso = False
    N = normalize_N(A)
    back = normalize_N(dold_kan_K(N, A.D)) == N
    lines = [f"N(A) ranks={N.ranks}", f"K(N(A)) = A: {_yes(iso)}", f"N(K(N(A))) = N(A): {_yes(back)}"]
    return Outcome(lines, iso and back, {"ranks": list(N.ranks), "iso": iso, "roundtrip": back})


def _bar(cmd, config):
    D = cmd.dim if cmd.dim is not None else config.SKERNEL_DEFAULT_DIM
    A = _as_group(_inputs(cmd, 1)[0], D)
    B = bar_B(A)
    lines, ok, groups = [], True, {}
    for i in range(A.D):
        a, b = homotopy_groups(A, i), homotopy_groups(B, i)
        expected = homotopy_groups(A, i - 1) if i else None
        matches = b.is_zero if i == 0 else b == expected
        ok = ok and matches
        lines.append(f"pi{i}(A)={a} pi{i}(BA)={b}")
        groups[str(i)] = {"A": str(a), "BA": str(b)}
    lines.append(f"NBA = NA[1]: {_yes(ok)}")
    return Outcome(lines, ok, {"D": A.D, "groups": groups, "shift": ok})


def _ez_verify(cmd, config):
    D = cmd.dim if cmd.dim is not None else config.SKERNEL_DEFAULT_DIM
    A, B = (_as_group(obj, D) for obj in _inputs(cmd, 2))
    pair = ez_maps(A, B)
    strict = pair.strict_retraction()
    report = check_quasi_iso(pair.shuffle, degrees=range(min(A.D, B.D)))
    lines = [f"aw o shuffle = id: {_yes(strict)}"] + list(report.lines())
    lines.append(f"shuffle quasi-iso: {_yes(report.passed)}")
    return Outcome(lines, strict and report.passed, {"strict": strict, "quasi_iso": report.passed})


def _wr_verify(cmd, config):
    X = _expect(_inputs(cmd, 1)[0], SimplicialSet, "a simplicial set")
    D = cmd.dim if cmd.dim is not None else config.SKERNEL_DEFAULT_DIM
    R = cmd.range if cmd.range is not None else config.SKERNEL_DEFAULT_RANGE
    if R > D - 1:
        R = D - 1
        log.warning(f"[WRAP] range lowered to {R} for truncation {D}")
    wr = wrap(X, D)
    cert = weq_certificate(wr.counit, R)
    lines = [f"Wr(X) cells={wr.space.cell_counts()}"] + list(cert.lines())
    return Outcome(lines, cert.passed, cert.to_json())


def _pushout(cmd, config):
    doc = _inputs(cmd, 1)[0]
    if not (isinstance(doc, dict) and doc["kind"] == "diagram"):
        raise InputError(f"expected a diagram document, got a {_kind_name(doc)} document")
    Q = PushoutDiagram(doc["K"], doc["L"], doc["M"], doc["f"], doc["g"])
    R = cmd.range if cmd.range is not None else config.SKERNEL_DEFAULT_RANGE
    hp = homotopy_pushout(Q)
    line, groups = _homology_line(chains(hp.space), range(0, R + 1))
    diagonal_ok = bisimplicial_comparison(Q).is_isomorphism()
    lines = [f"K_Q cells={hp.space.cell_counts()}", f"reduced {line}",
             f"bisimplicial diagonal = K_Q: {_yes(diagonal_ok)}"]
    payload = {"cells": list(hp.space.cell_counts()), "homology": groups, "diagonal": diagonal_ok}
    ok = diagonal_ok
    if not Q.f.is_injective() and Q.g.is_injective():
        Q = PushoutDiagram(Q.K, Q.M, Q.L, Q.g, Q.f)
    if Q.f.is_injective():
        _, cert = strict_pushout_comparison(Q, R)
        lines.append("strict pushout comparison:")
        lines.extend(f"  {x}" for x in cert.lines())
        payload["comparison"] = cert.to_json()
        ok = ok and cert.passed
    else:
        lines.append("strict pushout comparison: skipped (no injective leg)")
    return Outcome(lines, ok, payload)


def _cylinder(cmd, config):
    doc = _inputs(cmd, 1)[0]
    if not (isinstance(doc, dict) and doc["kind"] == "map"):
        raise InputError(f"expected a map document, got a {_kind_name(doc)} document")
    R = cmd.range if cmd.range is not None else config.SKERNEL_DEFAULT_RANGE
    cyl = cylinder(doc["f"])
    strict = cyl.retraction_is_strict()
    cert = weq_certificate(cyl.retraction, R)
    embeds = cyl.from_L.is_injective()
    lines = [f"cyl(f) cells={cyl.space.cell_counts()}", f"L -> cyl(f) injective: {_yes(embeds)}",
             f"retraction strict: {_yes(strict)}", "retraction certificate:"]
    lines.extend(f"  {x}" for x in cert.lines())
    payload = {"cells": list(cyl.space.cell_counts()), "strict": strict, "embeds": embeds,
               "certificate": cert.to_json()}
    return Outcome(lines, strict and embeds and cert.passed, payload)


def _tower_report(cmd, config):
    K, L = (_expect(obj, ChainComplex, "two chain complexes") for obj in _inputs(cmd, 2))
    report = sigma_tower_report(K, L)
    payload = {"stabilization_index": report.stabilization_index, "limit": str(report.limit_group),
               "lim1": str(report.lim1_group), "hom": str(report.hom_full),
               "exact": report.exactness_verified}
    return Outcome(list(report.lines()), report.exactness_verified, payload)


def _suite(cmd, config):
    from skernel.tasks.suite import report_lines, verify_suite
    table = verify_suite(cmd.seed, cmd.size, config)
    return Outcome(list(report_lines(table)), bool(table["passed"].all()), table)


HANDLERS = {
    "homology": _homology,
    "space-homology": _space_homology,
    "nk-roundtrip": _nk_roundtrip,
    "bar": _bar,
    "ez-verify": _ez_verify,
    "wr-verify": _wr_verify,
    "pushout": _pushout,
    "cylinder": _cylinder,
    "tower-report": _tower_report,
    "suite": _suite,
}


def _export(path, payload):
    path = Path(path)
    if isinstance(payload, pd.DataFrame):
        if path.suffix == ".csv":
            payload.to_csv(path, index=False)
        else:
            path.write_text(payload.to_json(orient="records", indent=2), encoding="utf-8")
        return
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")


def run_command(cmd: Command, config=Config):
    """Execute one command; returns (report text, exit code)."""
    handler = HANDLERS.get(cmd.name)
    if handler is None:
        return f"error: unknown command '{cmd.name}'", 2
    try:
        outcome = handler(cmd, config)
    except SkernelError as e:
        log.error(f"[CLI] {cmd.name} rejected its input: {e}")
        return f"error: {e}", 2
    if cmd.out:
        _export(cmd.out, outcome.payload)
    return "\n".join(outcome.lines), 0 if outcome.passed else 1


# --- ======================================================= ---
# --- CLICK SURFACE                                           ---
# --- ======================================================= ---

def _common(f):
    f = click.option("--verbose", is_flag=True, help="Log progress to stderr.")(f)
    f = click.option("--size", type=click.Choice(["small", "medium"]), default="small", show_default=True)(f)
    f = click.option("--seed", type=int, default=0, show_default=True)(f)
    f = click.option("--range", "range_", type=int, default=None, help="Certificate range R.")(f)
    f = click.option("--dim", type=int, default=None, help="Truncation dimension D.")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Export the report.")(f)
    f = click.option("--in", "inputs", multiple=True, type=click.Path(), help="Input document.")(f)
    return f


@click.group()
@click.pass_context
def cli(ctx):
    """Exact simplicial homotopy and homological algebra at desk scale."""
    ctx.obj = create_app(Config)


def _register(name, help_text):
    @cli.command(name=name, help=help_text)
    @_common
    @click.pass_context
    def command(ctx, inputs, out, dim, range_, seed, size, verbose):
        app = ctx.obj
        if verbose:
            app.logger.setLevel(logging.INFO)
        cmd = Command(name, tuple(inputs), out, dim, range_, seed, size)
        text, code = run_command(cmd, app.config)
        click.echo(text, err=(code == 2))
        ctx.exit(code)
    return command


for _name, _help in [
    ("homology", "Homology of a complex, simplicial set or simplicial group."),
    ("space-homology", "Homology, components, Euler characteristic and pi1 of a simplicial set."),
    ("nk-roundtrip", "Check N(K(C)) = C, or K(N(A)) = A for a simplicial group."),
    ("bar", "Compare homotopy of A and its bar construction."),
    ("ez-verify", "Eilenberg-Zilber maps for two inputs."),
    ("wr-verify", "Certificate for the wrap counit Wr(X) -> X."),
    ("pushout", "Homotopy pushout of a diagram L <- K -> M."),
    ("cylinder", "Mapping cylinder of a map K -> L and its retraction."),
    ("tower-report", "Hom tower of the stupid truncations of K into L."),
    ("suite", "Seeded verification suite."),
]:
    _register(_name, _help)
