# In file: tests/test_formats.py
import json

import pytest

from skernel.chain import ChainComplex, HomologyGroup
from skernel.errors import InputError, StructuralError
from skernel.formats import document_kind, parse_input, parse_simplex, serialize
from skernel.simpab import SimplicialAbGroup
from skernel.simpset import SimplexRef, SimplicialSet


def test_triangle_boundary_sample(samples):
    X = parse_input(samples / "triangle_boundary.json")
    assert isinstance(X, SimplicialSet)
    assert X.cell_counts() == (3, 3)


def test_complex_sample(samples):
    C = parse_input(samples / "complex_mod2.json")
    assert isinstance(C, ChainComplex)
    assert C.homology(0) == HomologyGroup(0, (2,))


def test_group_sample(samples):
    A = parse_input(samples / "constant_z.json")
    assert isinstance(A, SimplicialAbGroup)
    assert A.D == 2


def test_diagram_and_map_samples(samples):
    diagram = parse_input(samples / "diagram_suspension.json")
    assert diagram["kind"] == "diagram"
    assert set(diagram) == {"kind", "K", "L", "M", "f", "g"}
    mapping = parse_input(samples / "map_disk.json")
    assert mapping["kind"] == "map"
    assert mapping["f"].is_injective()


def test_serialized_documents_parse_back(samples):
    X = parse_input(samples / "circle.json")
    assert parse_input(serialize(X)) == X
    C = parse_input(samples / "complex_mod2.json")
    assert parse_input(serialize(C)) == C


def test_malformed_json_reports_its_line():
    with pytest.raises(InputError, match="line 3") as info:
        parse_input('{\n  "min": 0,\n  "max": }\n')
    assert info.value.line == 3


def test_nonzero_square_is_rejected():
    doc = {"min": 0, "max": 2, "ranks": {"0": 1, "1": 1, "2": 1}, "d": {"1": [[1]], "2": [[1]]}}
    with pytest.raises(StructuralError, match="degree 2"):
        parse_input(json.dumps(doc))


def test_matrix_of_the_wrong_shape():
    doc = {"min": 0, "max": 1, "ranks": {"0": 1, "1": 2}, "d": {"1": [[1]]}}
    with pytest.raises(InputError, match="1x2"):
        parse_input(json.dumps(doc))


def test_unrecognised_document():
    with pytest.raises(InputError, match="unrecognised"):
        parse_input('{"hello": 1}')


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="not found"):
        parse_input(tmp_path / "absent.json")


def test_document_kinds():
    assert document_kind({"cells": {}}) == "sset"
    assert document_kind({"min": 0, "ranks": {}}) == "chain"
    assert document_kind({"D": 1, "face": {}}) == "sag"
    assert document_kind({"K": {}, "L": {}, "f": {}}) == "map"


def test_simplex_entries():
    assert parse_simplex("s1 s0 v3", 2) == SimplexRef("v3", (1, 0), 2)
    with pytest.raises(InputError, match="strictly decreasing"):
        parse_simplex("s0 s1 v3", 2)
    with pytest.raises(InputError, match="bad degeneracy"):
        parse_simplex("d0 v3", 1)
