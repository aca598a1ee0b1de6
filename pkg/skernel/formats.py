# FILE: skernel/formats.py
"""JSON documents read and written by the command line.

chain complex   {"min", "max", "ranks": {"<deg>": int}, "d": {"<deg>": [[...]]}}
simplicial set  {"pointed", "basepoint", "cells": {"<dim>": [ids]}, "faces": {"<id>": ["s1 s0 v3", ...]}}
abelian group   {"D", "ranks": {"<n>": int}, "face": {"n,i": [[...]]}, "degen": {"n,j": [[...]]}}
diagram         {"K", "L", "M": simplicial sets, "f", "g": {"<K cell>": "<word> <cell>"}}
map             {"K", "L": simplicial sets, "f": {...}}
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from skernel.chain import ChainComplex, IntMatrix
from skernel.errors import InputError, SkernelError, StructuralError
from skernel.simpab import SimplicialAbGroup
from skernel.simpset import SimplexRef, SimplicialMap, SimplicialSet, label

_DEGENERACY = re.compile(r"^s(\d+)$")


def _line_of(text, key):
    """1-based line of the first occurrence of a JSON key, if the text is at hand."""
    if not text:
        return None
    pos = text.find(f'"{key}"')
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def _require(doc, key, kind, text):
    if key not in doc:
        raise InputError(f"missing key '{key}'", field=key, line=None)
    value = doc[key]
    if not isinstance(value, kind):
        raise InputError(f"key '{key}' has the wrong type", field=key, line=_line_of(text, key))
    return value


def _int(value, field, text):
    if isinstance(value, bool) or not isinstance(value, int):
        try:
            return int(str(value))
        except ValueError:
            raise InputError(f"expected an integer, got {value!r}", field=field, line=_line_of(text, field))
    return value


def _matrix(table, rows, cols, field, text):
    if not isinstance(table, list) or any(not isinstance(r, list) for r in table):
        raise InputError("matrix must be a list of rows", field=field, line=_line_of(text, field))
    if len(table) != rows or any(len(r) != cols for r in table):
        raise InputError(f"matrix must be {rows}x{cols}", field=field, line=_line_of(text, field))
    return IntMatrix([[_int(x, field, text) for x in r] for r in table], rows=rows, cols=cols)


# --- ======================================================= ---
# --- CHAIN COMPLEXES                                         ---
# --- ======================================================= ---

def chain_from_doc(doc: dict, text: str = None) -> ChainComplex:
    lo = _int(_require(doc, "min", (int, str), text), "min", text)
    hi = _int(_require(doc, "max", (int, str), text), "max", text)
    if hi < lo:
        raise InputError(f"max {hi} is below min {lo}", field="max", line=_line_of(text, "max"))
    ranks_doc = _require(doc, "ranks", dict, text)
    ranks = {n: _int(ranks_doc.get(str(n), 0), "ranks", text) for n in range(lo, hi + 1)}
    d = {}
    for key, table in doc.get("d", {}).items():
        n = _int(key, "d", text)
        d[n] = _matrix(table, ranks.get(n - 1, 0), ranks.get(n, 0), key, text)
    return ChainComplex(lo, hi, tuple(ranks[n] for n in range(lo, hi + 1)), d)


def chain_to_doc(C: ChainComplex) -> dict:
    return {
        "min": C.min_deg,
        "max": C.max_deg,
        "ranks": {str(n): C.rank(n) for n in C.degrees},
        "d": {str(n): C.d(n).tolist() for n in range(C.min_deg + 1, C.max_deg + 1)
              if C.rank(n) and C.rank(n - 1)},
    }


# --- ======================================================= ---
# --- SIMPLICIAL SETS AND MAPS                                ---
# --- ======================================================= ---

def parse_simplex(entry: str, dim: int, field: str = None, text: str = None) -> SimplexRef:
    """'s1 s0 v3' → SimplexRef('v3', (1, 0), dim)."""
    tokens = str(entry).split()
    if not tokens:
        raise InputError("empty simplex entry", field=field, line=_line_of(text, field))
    word = []
    for tok in tokens[:-1]:
        m = _DEGENERACY.match(tok)
        if not m:
            raise InputError(f"bad degeneracy '{tok}' in '{entry}'", field=field, line=_line_of(text, field))
        word.append(int(m.group(1)))
    if any(a <= b for a, b in zip(word, word[1:])):
        raise InputError(f"degeneracy word in '{entry}' must be strictly decreasing",
                         field=field, line=_line_of(text, field))
    return SimplexRef(tokens[-1], tuple(word), dim)


def format_simplex(r: SimplexRef) -> str:
    return " ".join([f"s{i}" for i in r.word] + [label(r.base)])


def sset_from_doc(doc: dict, text: str = None) -> SimplicialSet:
    cells_doc = _require(doc, "cells", dict, text)
    faces_doc = doc.get("faces", {})
    if not isinstance(faces_doc, dict):
        raise InputError("key 'faces' has the wrong type", field="faces", line=_line_of(text, "faces"))
    cells, dims = {}, {}
    for key, ids in cells_doc.items():
        n = _int(key, "cells", text)
        if not isinstance(ids, list):
            raise InputError(f"cells of dimension {n} must be a list", field="cells", line=_line_of(text, "cells"))
        cells[n] = tuple(str(c) for c in ids)
        dims.update({str(c): n for c in ids})
    faces = {}
    for cell, entries in faces_doc.items():
        if cell not in dims:
            raise InputError(f"faces given for unknown cell '{cell}'", field=cell, line=_line_of(text, cell))
        if not isinstance(entries, list):
            raise InputError(f"faces of '{cell}' must be a list", field=cell, line=_line_of(text, cell))
        faces[cell] = tuple(parse_simplex(e, dims[cell] - 1, cell, text) for e in entries)
    pointed = bool(doc.get("pointed", False))
    basepoint = doc.get("basepoint") if pointed else None
    if pointed and basepoint is None:
        raise InputError("pointed set without a basepoint", field="basepoint", line=_line_of(text, "pointed"))
    return SimplicialSet(cells, faces, str(basepoint) if basepoint is not None else None)


def sset_to_doc(X: SimplicialSet) -> dict:
    doc = {"pointed": X.pointed}
    if X.pointed:
        doc["basepoint"] = label(X.basepoint)
    doc["cells"] = {str(n): [label(c) for c in ids] for n, ids in X.cells.items()}
    doc["faces"] = {label(c): [format_simplex(r) for r in X.faces[c]] for c in X.all_cells() if X.faces[c]}
    return doc


def map_from_doc(doc: dict, source: SimplicialSet, target: SimplicialSet, key: str, text: str = None):
    images_doc = _require(doc, key, dict, text)
    images = {}
    for c in source.all_cells():
        if c not in images_doc:
            raise InputError(f"map '{key}' has no image for '{c}'", field=key, line=_line_of(text, key))
        images[c] = parse_simplex(images_doc[c], source.dim_of(c), key, text)
    return SimplicialMap(source, target, images)


def map_to_doc(f: SimplicialMap) -> dict:
    return {label(c): format_simplex(r) for c, r in f.images.items()}


# --- ======================================================= ---
# --- SIMPLICIAL ABELIAN GROUPS                               ---
# --- ======================================================= ---

def sag_from_doc(doc: dict, text: str = None) -> SimplicialAbGroup:
    D = _int(_require(doc, "D", (int, str), text), "D", text)
    ranks_doc = _require(doc, "ranks", dict, text)
    ranks = tuple(_int(ranks_doc.get(str(n), 0), "ranks", text) for n in range(D + 1))

    def matrices(key, shape):
        out = {}
        for name, table in _require(doc, key, dict, text).items():
            try:
                n, i = (int(p) for p in name.split(","))
            except ValueError:
                raise InputError(f"bad level index '{name}'", field=key, line=_line_of(text, name))
            rows, cols = shape(n)
            out[(n, i)] = _matrix(table, rows, cols, name, text)
        return out

    faces = matrices("face", lambda n: (ranks[n - 1], ranks[n]))
    degens = matrices("degen", lambda n: (ranks[n + 1], ranks[n]))
    return SimplicialAbGroup(D, ranks, faces, degens)


def sag_to_doc(A: SimplicialAbGroup) -> dict:
    return {
        "D": A.D,
        "ranks": {str(n): r for n, r in enumerate(A.ranks)},
        "face": {f"{n},{i}": m.tolist() for (n, i), m in sorted(A.faces.items())},
        "degen": {f"{n},{j}": m.tolist() for (n, j), m in sorted(A.degens.items())},
    }


# --- ======================================================= ---
# --- DOCUMENT DISPATCH                                       ---
# --- ======================================================= ---

def load_text(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e.msg}", line=e.lineno)
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object", line=1)
    return doc


def document_kind(doc: dict) -> str:
    if {"K", "L", "M"} <= doc.keys():
        return "diagram"
    if {"K", "L", "f"} <= doc.keys():
        return "map"
    if "cells" in doc:
        return "sset"
    if "face" in doc or "degen" in doc:
        return "sag"
    if "ranks" in doc and "min" in doc:
        return "chain"
    raise InputError("unrecognised document: expected a chain complex, simplicial set or simplicial group",
                     line=1)


def parse_input(source) -> object:
    """Path or JSON text → ChainComplex, SimplicialSet, SimplicialAbGroup, or a diagram/map dict."""
    text = _read(source)
    doc = load_text(text)
    kind = document_kind(doc)
    try:
        if kind == "chain":
            return chain_from_doc(doc, text)
        if kind == "sset":
            return sset_from_doc(doc, text)
        if kind == "sag":
            return sag_from_doc(doc, text)
        K = sset_from_doc(_require(doc, "K", dict, text), text)
        L = sset_from_doc(_require(doc, "L", dict, text), text)
        parsed = {"kind": kind, "K": K, "L": L, "f": map_from_doc(doc, K, L, "f", text)}
        if kind == "diagram":
            M = sset_from_doc(_require(doc, "M", dict, text), text)
            parsed.update(M=M, g=map_from_doc(doc, K, M, "g", text))
        return parsed
    except InputError:
        raise
    except StructuralError:
        raise
    except (SkernelError, KeyError, TypeError) as e:
        raise InputError(f"invalid {kind} document: {e}")


def serialize(obj) -> str:
    if isinstance(obj, ChainComplex):
        doc = chain_to_doc(obj)
    elif isinstance(obj, SimplicialSet):
        doc = sset_to_doc(obj)
    elif isinstance(obj, SimplicialAbGroup):
        doc = sag_to_doc(obj)
    else:
        raise InputError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, indent=2)


def _read(source) -> str:
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        if not path.exists():
            raise InputError(f"input file not found: {path}")
        return path.read_text(encoding="utf-8")
    return source
