# FILE: skernel/simpset.py
"""Finite simplicial sets in degeneracy-word normal form.

Only nondegenerate simplices are stored. A ``SimplexRef`` names any simplex as
a strictly decreasing degeneracy word applied to a stored cell, so
``SimplexRef("v", (1, 0), 2)`` is ``s1 s0 v``. Monotone maps are tuples of
images: ``(0, 2)`` is the coface [1] → [2] that skips 1.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Hashable, Iterable, Mapping

import networkx as nx

from skernel.chain import ChainComplex, ChainMap, HomologyGroup, IntMatrix, homology
from skernel.errors import ParameterError, PreconditionError, StructuralError

log = logging.getLogger("skernel.simpset")

BASE = "*"
PLUS = ("+",)


# --- ======================================================= ---
# --- SIMPLEX CATEGORY HELPERS                                ---
# --- ======================================================= ---

def theta_of(word, dim):
    """The surjection [dim] ->> [dim - len(word)] whose repeats are the word's indices."""
    repeats = set(word)
    out = [0]
    for j in range(dim):
        out.append(out[-1] if j in repeats else out[-1] + 1)
    return tuple(out)


def word_of(theta):
    """Descending degeneracy word of a surjection."""
    return tuple(j for j in range(len(theta) - 2, -1, -1) if theta[j + 1] == theta[j])


def compose(outer, inner):
    """outer ∘ inner for monotone maps given as image tuples."""
    return tuple(outer[x] for x in inner)


def epi_mono(phi):
    """Factor a monotone map as (surjection, sorted image)."""
    image = tuple(sorted(set(phi)))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[v] for v in phi), image


def coface(i, n):
    """δ_i: [n-1] → [n], skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(j, n):
    """σ_j: [n+1] → [n], hitting j twice."""
    return tuple(x if x <= j else x - 1 for x in range(n + 2))


def surjections(n, k):
    """All surjections [n] ->> [k] in lexicographic order."""
    out = [theta_of(tuple(sorted(c, reverse=True)), n) for c in itertools.combinations(range(n), n - k)]
    return sorted(out)


def label(cell) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, (SimplexRef, MultiRef)):
        return str(cell)
    if isinstance(cell, tuple):
        if cell == PLUS:
            return "+"
        return "(" + ",".join(label(c) for c in cell) + ")"
    return str(cell)


# --- ======================================================= ---
# --- SIMPLICES                                               ---
# --- ======================================================= ---

@dataclass(frozen=True)
class SimplexRef:
    """word applied to a nondegenerate base; the simplex has dimension ``dim``."""
    base: Hashable
    word: tuple = ()
    dim: int = 0

    @property
    def base_dim(self):
        return self.dim - len(self.word)

    @property
    def is_degenerate(self):
        return bool(self.word)

    def __str__(self):
        return " ".join([f"s{i}" for i in self.word] + [label(self.base)])


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    """
    cells: dimension -> ordered ids of nondegenerate simplices
    faces: id -> (d_0, ..., d_n) as SimplexRefs of dimension n - 1
    basepoint: id of a 0-cell, or None for unpointed sets
    """
    cells: Mapping[int, tuple]
    faces: Mapping[Hashable, tuple] = field(default_factory=dict)
    basepoint: Hashable = None

    def __post_init__(self):
        cells = {int(n): tuple(ids) for n, ids in sorted(dict(self.cells).items()) if ids}
        dims = {}
        for n, ids in cells.items():
            if n < 0:
                raise StructuralError(f"negative dimension {n}")
            for c in ids:
                if c in dims:
                    raise StructuralError(f"cell '{label(c)}' declared twice")
                dims[c] = n
        faces = {}
        for n, ids in cells.items():
            for c in ids:
                refs = tuple(dict(self.faces).get(c, ()))
                if n == 0 and refs:
                    raise StructuralError(f"0-cell '{label(c)}' cannot have faces")
                if n > 0 and len(refs) != n + 1:
                    raise StructuralError(f"cell '{label(c)}' of dimension {n} needs {n + 1} faces, got {len(refs)}")
                for i, r in enumerate(refs):
                    self._check_ref(r, n - 1, dims, f"d{i} of '{label(c)}'")
                faces[c] = refs
        if self.basepoint is not None and dims.get(self.basepoint) != 0:
            raise StructuralError(f"basepoint '{label(self.basepoint)}' is not a 0-cell")
        object.__setattr__(self, "cells", MappingProxyType(cells))
        object.__setattr__(self, "faces", MappingProxyType(faces))
        object.__setattr__(self, "_dims", dims)
        object.__setattr__(self, "_cache", {})
        self._check_identities()

    @staticmethod
    def _check_ref(r, dim, dims, where):
        if not isinstance(r, SimplexRef):
            raise StructuralError(f"{where} is not a simplex reference")
        if r.base not in dims:
            raise StructuralError(f"{where} references unknown cell '{label(r.base)}'")
        if r.dim != dim or dims[r.base] != r.base_dim:
            raise StructuralError(f"{where} has the wrong dimension")
        if any(a <= b for a, b in zip(r.word, r.word[1:])) or any(i < 0 or i >= r.dim for i in r.word):
            raise StructuralError(f"{where} has an invalid degeneracy word {r.word}")

    def _check_identities(self):
        for n, ids in self.cells.items():
            if n < 2:
                continue
            for c in ids:
                x = self.ref(c)
                for j in range(n + 1):
                    dj = self.face(x, j)
                    for i in range(j):
                        if self.face(dj, i) != self.face(self.face(x, i), j - 1):
                            raise StructuralError(
                                f"simplicial identity d{i} d{j} = d{j - 1} d{i} fails on cell '{label(c)}'")

    # --- access ---
    @property
    def pointed(self):
        return self.basepoint is not None

    @property
    def dimension(self):
        return max(self.cells, default=-1)

    def dim_of(self, cell):
        return self._dims[cell]

    def __contains__(self, cell):
        return cell in self._dims

    def ref(self, cell) -> SimplexRef:
        return SimplexRef(cell, (), self._dims[cell])

    def base_simplex(self, n) -> SimplexRef:
        return SimplexRef(self.basepoint, tuple(range(n - 1, -1, -1)), n)

    def is_base(self, r: SimplexRef) -> bool:
        return self.pointed and r.base == self.basepoint

    def count(self, n):
        return len(self.cells.get(n, ()))

    def cell_counts(self):
        return tuple(self.count(n) for n in range(self.dimension + 1))

    def all_cells(self):
        for ids in self.cells.values():
            yield from ids

    # --- operators ---
    def apply(self, r: SimplexRef, phi) -> SimplexRef:
        """phi^* r for a monotone phi: [p] → [r.dim]."""
        comp = compose(theta_of(r.word, r.dim), phi)
        sigma, image = epi_mono(comp)
        inner = self._evaluate(r.base, image)
        return self.degenerate_by(inner, sigma)

    def _evaluate(self, cell, image):
        m = self._dims[cell]
        if len(image) == m + 1:
            return SimplexRef(cell, (), m)
        key = (cell, image)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        missing = max(set(range(m + 1)) - set(image))
        sub = tuple(v if v < missing else v - 1 for v in image)
        result = self.apply(self.faces[cell][missing], sub)
        self._cache[key] = result
        return result

    def degenerate_by(self, r: SimplexRef, sigma) -> SimplexRef:
        """sigma^* r for a surjection sigma: [p] ->> [r.dim]."""
        comp = compose(theta_of(r.word, r.dim), sigma)
        return SimplexRef(r.base, word_of(comp), len(sigma) - 1)

    def degenerate(self, r: SimplexRef, word) -> SimplexRef:
        return self.degenerate_by(r, theta_of(word, r.dim + len(word)))

    def face(self, r: SimplexRef, i) -> SimplexRef:
        return self.apply(r, coface(i, r.dim))

    def degeneracy(self, r: SimplexRef, j) -> SimplexRef:
        return self.apply(r, codegeneracy(j, r.dim))

    # --- enumeration ---
    def simplices(self, n):
        """All n-simplices, degenerate ones included: by base dimension, base order, then word."""
        key = ("simplices", n)
        hit = self._cache.get(key)
        if hit is None:
            hit = []
            for m in range(0, n + 1):
                for c in self.cells.get(m, ()):
                    for combo in itertools.combinations(range(n), n - m):
                        hit.append(SimplexRef(c, tuple(sorted(combo, reverse=True)), n))
            hit = tuple(hit)
            self._cache[key] = hit
        return hit

    def simplex_index(self, n):
        key = ("index", n)
        hit = self._cache.get(key)
        if hit is None:
            hit = {r: i for i, r in enumerate(self.simplices(n))}
            self._cache[key] = hit
        return hit

    def vertices_of(self, r: SimplexRef):
        return tuple(self.apply(r, (v,)).base for v in range(r.dim + 1))

    # --- identity ---
    def _key(self):
        return (tuple(self.cells.items()), tuple(self.faces.items()), self.basepoint)

    def __eq__(self, other):
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((self.cell_counts(), self.basepoint))

    def __repr__(self):
        return f"SimplicialSet(cells={self.cell_counts()}, pointed={self.pointed})"


def apply_operator(X: SimplicialSet, s: SimplexRef, op) -> SimplexRef:
    """Apply ("d", i) or ("s", j) (or the strings "d1", "s0") to a simplex of X."""
    if isinstance(op, str):
        op = (op[0], int(op[1:]))
    kind, index = op
    if s.base not in X or X.dim_of(s.base) != s.base_dim:
        raise ParameterError(f"'{s}' is not a simplex of this set")
    if kind == "d":
        if s.dim < 1 or not 0 <= index <= s.dim:
            raise ParameterError(f"face d{index} is out of range for a {s.dim}-simplex")
        return X.face(s, index)
    if kind == "s":
        if not 0 <= index <= s.dim:
            raise ParameterError(f"degeneracy s{index} is out of range for a {s.dim}-simplex")
        return X.degeneracy(s, index)
    raise ParameterError(f"unknown operator '{kind}'")


# --- ======================================================= ---
# --- SIMPLICIAL MAPS                                         ---
# --- ======================================================= ---

@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Images of the nondegenerate cells; checked against every face."""
    source: SimplicialSet
    target: SimplicialSet
    images: Mapping[Hashable, SimplexRef]
    pointed: bool = None

    def __post_init__(self):
        images = dict(self.images)
        X, Y = self.source, self.target
        for c in X.all_cells():
            img = images.get(c)
            if img is None:
                raise StructuralError(f"map has no image for cell '{label(c)}'")
            if img.base not in Y or Y.dim_of(img.base) != img.base_dim or img.dim != X.dim_of(c):
                raise StructuralError(f"image of '{label(c)}' is not a simplex of the target of the right dimension")
        object.__setattr__(self, "images", MappingProxyType(images))
        pointed = self.pointed
        if pointed is None:
            pointed = X.pointed and Y.pointed
            object.__setattr__(self, "pointed", pointed)
        if pointed and not (X.pointed and Y.pointed):
            raise PreconditionError("a pointed map needs pointed source and target")
        if pointed and images[X.basepoint] != Y.ref(Y.basepoint):
            raise StructuralError("map does not preserve basepoints")
        for c in X.all_cells():
            for i, r in enumerate(X.faces[c]):
                if self.apply(r) != Y.face(images[c], i):
                    raise StructuralError(f"map does not commute with d{i} on cell '{label(c)}'")

    @classmethod
    def from_function(cls, source, target, fn: Callable[[Hashable], SimplexRef], pointed=None):
        return cls(source, target, {c: fn(c) for c in source.all_cells()}, pointed)

    @classmethod
    def identity(cls, X):
        return cls(X, X, {c: X.ref(c) for c in X.all_cells()})

    @classmethod
    def constant(cls, X, Y, vertex):
        """Every simplex goes to a degeneracy of ``vertex``."""
        return cls(X, Y, {c: SimplexRef(vertex, tuple(range(X.dim_of(c) - 1, -1, -1)), X.dim_of(c))
                          for c in X.all_cells()})

    def apply(self, r: SimplexRef) -> SimplexRef:
        return self.target.degenerate_by(self.images[r.base], theta_of(r.word, r.dim))

    def __call__(self, r):
        return self.apply(r)

    def on_vertices(self):
        return {v: self.images[v].base for v in self.source.cells.get(0, ())}

    def is_injective(self):
        seen = set()
        for img in self.images.values():
            if img.is_degenerate or img.base in seen:
                return False
            seen.add(img.base)
        return True

    def is_surjective(self):
        hit = {img.base for img in self.images.values() if not img.is_degenerate}
        return all(c in hit for c in self.target.all_cells())

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        return compose_maps(self, inner)

    def same_as(self, other: "SimplicialMap"):
        return (self.source == other.source and self.target == other.target
                and all(self.images[c] == other.images[c] for c in self.source.all_cells()))


def compose_maps(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    """outer ∘ inner"""
    if inner.target != outer.source:
        raise StructuralError("cannot compose maps: target and source differ")
    return SimplicialMap(inner.source, outer.target, {c: outer.apply(r) for c, r in inner.images.items()})


# --- ======================================================= ---
# --- STANDARD SPACES                                         ---
# --- ======================================================= ---

def _subset_id(s):
    return "[" + ",".join(str(v) for v in s) + "]"


def _simplex_cells(n, keep):
    cells, faces = {}, {}
    for k in range(n + 1):
        ids = []
        for s in itertools.combinations(range(n + 1), k + 1):
            if not keep(s):
                continue
            ids.append(_subset_id(s))
            if k:
                faces[_subset_id(s)] = tuple(SimplexRef(_subset_id(s[:i] + s[i + 1:]), (), k - 1)
                                             for i in range(k + 1))
        cells[k] = tuple(ids)
    return cells, faces


def simplex(n, basepoint=None):
    """Δⁿ with cells named by vertex sets, e.g. "[0,2]"."""
    if n < 0:
        raise ParameterError(f"simplex dimension must be nonnegative, got {n}")
    cells, faces = _simplex_cells(n, lambda s: True)
    return SimplicialSet(cells, faces, basepoint)


def boundary(n, basepoint=None):
    """∂Δⁿ."""
    if n < 0:
        raise ParameterError(f"boundary dimension must be nonnegative, got {n}")
    cells, faces = _simplex_cells(n, lambda s: len(s) <= n)
    return SimplicialSet(cells, faces, basepoint)


def horn(n, k, basepoint=None):
    """Λⁿ_k: ∂Δⁿ without the face opposite vertex k."""
    if n < 1 or not 0 <= k <= n:
        raise ParameterError(f"invalid horn ({n},{k}): need n >= 1 and 0 <= k <= n")
    missing = tuple(v for v in range(n + 1) if v != k)
    cells, faces = _simplex_cells(n, lambda s: len(s) <= n and s != missing)
    return SimplicialSet(cells, faces, basepoint)


def sphere(i):
    """Sⁱ = Δⁱ/∂Δⁱ, pointed; S⁰ is two points."""
    if i < 0:
        raise ParameterError(f"sphere dimension must be nonnegative, got {i}")
    if i == 0:
        return SimplicialSet({0: (BASE, "sigma0")}, {}, BASE)
    top = f"sigma{i}"
    base_face = SimplexRef(BASE, tuple(range(i - 2, -1, -1)), i - 1)
    return SimplicialSet({0: (BASE,), i: (top,)}, {top: (base_face,) * (i + 1)}, BASE)


def point(pointed=True):
    return SimplicialSet({0: (BASE,)}, {}, BASE if pointed else None)


def interval_pointed():
    return simplex(1, basepoint="[0]")


def discrete(points: Iterable[Hashable], basepoint=None):
    return SimplicialSet({0: tuple(points)}, {}, basepoint)


def empty():
    return SimplicialSet({}, {})


def standard_space(kind: str, n: int = None, k: int = None) -> SimplicialSet:
    if kind == "simplex":
        return simplex(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "horn":
        return horn(n, k)
    if kind == "sphere":
        return sphere(n)
    if kind == "point":
        return point()
    if kind == "interval_pointed":
        return interval_pointed()
    raise ParameterError(f"unknown standard space '{kind}'")


# --- ======================================================= ---
# --- SUBOBJECTS, COPRODUCTS AND PUSHOUTS                     ---
# --- ======================================================= ---

def _tag(tag, r: SimplexRef):
    return SimplexRef((tag, r.base), r.word, r.dim)


def subcomplex(X: SimplicialSet, generators: Iterable[Hashable]):
    """The smallest sub-simplicial set containing the generators, with its inclusion."""
    keep = set()
    stack = list(generators)
    if X.pointed:
        stack.append(X.basepoint)
    while stack:
        c = stack.pop()
        if c in keep:
            continue
        keep.add(c)
        stack.extend(r.base for r in X.faces.get(c, ()))
    cells = {n: tuple(c for c in ids if c in keep) for n, ids in X.cells.items()}
    A = SimplicialSet(cells, {c: X.faces[c] for c in keep}, X.basepoint)
    return A, SimplicialMap(A, X, {c: X.ref(c) for c in A.all_cells()})


def skeleton(X: SimplicialSet, n: int) -> SimplicialSet:
    """sk_n X; for pointed X the (-1)-skeleton is the basepoint."""
    if n < 0:
        return SimplicialSet({0: (X.basepoint,)}, {}, X.basepoint) if X.pointed else empty()
    cells = {m: ids for m, ids in X.cells.items() if m <= n}
    faces = {c: X.faces[c] for ids in cells.values() for c in ids}
    return SimplicialSet(cells, faces, X.basepoint)


def coproduct(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """X ⊔ Y with cells tagged "x" / "y"; unpointed."""
    cells = {}
    faces = {}
    for tag, S in (("x", X), ("y", Y)):
        for n, ids in S.cells.items():
            cells.setdefault(n, [])
            for c in ids:
                cells[n].append((tag, c))
                faces[(tag, c)] = tuple(_tag(tag, r) for r in S.faces[c])
    return SimplicialSet(cells, faces)


def plus(X: SimplicialSet) -> SimplicialSet:
    """X₊: X with a disjoint basepoint "+"."""
    cells = {n: tuple(ids) for n, ids in X.cells.items()}
    cells[0] = tuple(cells.get(0, ())) + (PLUS,)
    return SimplicialSet(cells, dict(X.faces), PLUS)


@dataclass(frozen=True, eq=False)
class PushoutResult:
    """P = X ⊔_A Y along an injective f: A → X and any g: A → Y."""
    space: SimplicialSet
    into_x: SimplicialMap
    into_y: SimplicialMap
    f: SimplicialMap
    g: SimplicialMap

    def verify(self) -> bool:
        """into_x ∘ f = into_y ∘ g on the generators of A."""
        left = compose_maps(self.into_x, self.f)
        right = compose_maps(self.into_y, self.g)
        return left.same_as(right)

    def induced(self, hx: SimplicialMap, hy: SimplicialMap) -> SimplicialMap:
        """The unique P → Z restricting to hx on X and hy on Y."""
        if not compose_maps(hx, self.f).same_as(compose_maps(hy, self.g)):
            raise StructuralError("the maps out of X and Y disagree on A")
        images = {}
        for (tag, c) in self.space.all_cells():
            images[(tag, c)] = hy.images[c] if tag == "y" else hx.images[c]
        return SimplicialMap(self.space, hx.target, images, pointed=hx.pointed and hy.pointed)


def pushout_inj(f: SimplicialMap, g: SimplicialMap) -> PushoutResult:
    if f.source != g.source:
        raise PreconditionError("pushout legs must share their source")
    if not f.is_injective():
        raise PreconditionError("pushout leg f is not injective on nondegenerate simplices")
    X, Y = f.target, g.target
    image = {f.images[a].base: a for a in f.source.all_cells()}

    def along(r: SimplexRef) -> SimplexRef:
        if r.base in image:
            return _tag("y", Y.degenerate_by(g.images[image[r.base]], theta_of(r.word, r.dim)))
        return _tag("x", r)

    cells, faces = {}, {}
    for n in sorted(set(X.cells) | set(Y.cells)):
        ids = []
        for c in Y.cells.get(n, ()):
            ids.append(("y", c))
            faces[("y", c)] = tuple(_tag("y", r) for r in Y.faces[c])
        for c in X.cells.get(n, ()):
            if c in image:
                continue
            ids.append(("x", c))
            faces[("x", c)] = tuple(along(r) for r in X.faces[c])
        cells[n] = tuple(ids)
    if Y.pointed:
        basepoint = ("y", Y.basepoint)
    elif X.pointed:
        basepoint = along(X.ref(X.basepoint)).base
    else:
        basepoint = None
    P = SimplicialSet(cells, faces, basepoint)
    keeps_base = X.pointed and P.pointed and along(X.ref(X.basepoint)).base == basepoint
    into_x = SimplicialMap(X, P, {c: along(X.ref(c)) for c in X.all_cells()}, pointed=keeps_base)
    into_y = SimplicialMap(Y, P, {c: SimplexRef(("y", c), (), Y.dim_of(c)) for c in Y.all_cells()})
    log.debug("[PUSHOUT] glued %d cells of X onto %d cells of Y", sum(X.cell_counts()), sum(Y.cell_counts()))
    return PushoutResult(P, into_x, into_y, f, g)


def quotient(X: SimplicialSet, generators: Iterable[Hashable]) -> PushoutResult:
    """X/A for the subcomplex A generated by ``generators``; A collapses to the basepoint."""
    A, incl = subcomplex(X, generators)
    pt = point()
    return pushout_inj(incl, SimplicialMap.constant(A, pt, BASE))


def _point_into(X: SimplicialSet) -> SimplicialMap:
    if not X.pointed:
        raise PreconditionError("operation needs a pointed simplicial set")
    return SimplicialMap(point(), X, {BASE: X.ref(X.basepoint)})


def wedge_pushout(X: SimplicialSet, Y: SimplicialSet) -> PushoutResult:
    return pushout_inj(_point_into(X), _point_into(Y))


def wedge(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """X ∨ Y: disjoint union with basepoints identified."""
    return wedge_pushout(X, Y).space


# --- ======================================================= ---
# --- PRODUCTS AND SMASH PRODUCTS                             ---
# --- ======================================================= ---

def _factor_common(refs):
    """Split a tuple of same-dimension refs into (refs without common repeats, common word)."""
    common = set(refs[0].word)
    for r in refs[1:]:
        common &= set(r.word)
    if not common:
        return refs, ()
    dim = refs[0].dim - len(common)
    below = sorted(common)

    def squeeze(r):
        word = tuple(sorted((j - sum(1 for c in below if c < j) for j in r.word if j not in common), reverse=True))
        return SimplexRef(r.base, word, dim)

    return tuple(squeeze(r) for r in refs), tuple(sorted(common, reverse=True))


@dataclass(frozen=True, eq=False)
class ProductStructure:
    """X × Y whose cells are pairs (x, y) of simplices with no common degeneracy."""
    space: SimplicialSet
    left: SimplicialSet
    right: SimplicialSet

    def pair(self, r: SimplexRef):
        x, y = r.base
        theta = theta_of(r.word, r.dim)
        return self.left.degenerate_by(x, theta), self.right.degenerate_by(y, theta)

    def simplex_for(self, x: SimplexRef, y: SimplexRef) -> SimplexRef:
        (xx, yy), common = _factor_common((x, y))
        return SimplexRef((xx, yy), common, x.dim)

    def projection(self, side: int) -> SimplicialMap:
        target = self.left if side == 0 else self.right
        return SimplicialMap(self.space, target, {c: c[side] for c in self.space.all_cells()}, pointed=False)


def product_structure(X: SimplicialSet, Y: SimplicialSet) -> ProductStructure:
    cells, faces = {}, {}
    top = X.dimension + Y.dimension
    for n in range(top + 1):
        ids = []
        for x in X.simplices(n):
            wx = set(x.word)
            for y in Y.simplices(n):
                if wx.isdisjoint(y.word):
                    ids.append((x, y))
        cells[n] = tuple(ids)
        if n:
            for x, y in ids:
                out = []
                for i in range(n + 1):
                    (fx, fy), common = _factor_common((X.face(x, i), Y.face(y, i)))
                    out.append(SimplexRef((fx, fy), common, n - 1))
                faces[(x, y)] = tuple(out)
    basepoint = (X.ref(X.basepoint), Y.ref(Y.basepoint)) if X.pointed and Y.pointed else None
    return ProductStructure(SimplicialSet(cells, faces, basepoint), X, Y)


def product(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    return product_structure(X, Y).space


def product_map(P: ProductStructure, Q: ProductStructure, f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f × g: P.space → Q.space."""
    def image(cell):
        x, y = cell
        return Q.simplex_for(f.apply(x), g.apply(y))
    return SimplicialMap.from_function(P.space, Q.space, image)


@dataclass(frozen=True, eq=False)
class SmashStructure:
    """X ∧ Y = (X × Y)/(X ∨ Y), remembering the pair behind every cell."""
    space: SimplicialSet
    product: ProductStructure
    collapse: PushoutResult

    @property
    def left(self):
        return self.product.left

    @property
    def right(self):
        return self.product.right

    def pair(self, r: SimplexRef):
        """(x, y) for a non-base simplex, None for the base simplex."""
        if self.space.is_base(r):
            return None
        tag, cell = r.base
        return self.product.pair(SimplexRef(cell, r.word, r.dim))

    def simplex_for(self, x: SimplexRef, y: SimplexRef) -> SimplexRef:
        if self.left.is_base(x) or self.right.is_base(y):
            return self.space.base_simplex(x.dim)
        p = self.product.simplex_for(x, y)
        return SimplexRef(("x", p.base), p.word, p.dim)


def smash_structure(X: SimplicialSet, Y: SimplicialSet) -> SmashStructure:
    if not (X.pointed and Y.pointed):
        raise PreconditionError("smash product needs pointed simplicial sets")
    P = product_structure(X, Y)
    wedge_cells = [c for c in P.space.all_cells() if c[0].base == X.basepoint or c[1].base == Y.basepoint]
    collapse = quotient(P.space, wedge_cells)
    return SmashStructure(collapse.space, P, collapse)


def smash(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    return smash_structure(X, Y).space


def smash_map(S: SmashStructure, T: SmashStructure, f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f ∧ g: S.space → T.space."""
    def image(cell):
        r = S.space.ref(cell)
        pair = S.pair(r)
        if pair is None:
            return T.space.base_simplex(r.dim)
        return T.simplex_for(f.apply(pair[0]), g.apply(pair[1]))
    return SimplicialMap.from_function(S.space, T.space, image)


def suspension(X: SimplicialSet, i: int) -> SimplicialSet:
    """ΣⁱX = X ∧ Sⁱ."""
    if not X.pointed:
        raise PreconditionError("suspension needs a pointed simplicial set")
    if i < 0:
        raise ParameterError(f"suspension order must be nonnegative, got {i}")
    return smash(X, sphere(i))


# --- ======================================================= ---
# --- MULTISIMPLICIAL SETS AND DIAGONALS                      ---
# --- ======================================================= ---

@dataclass(frozen=True)
class MultiRef:
    """A multisimplex: one degeneracy word per direction applied to a stored cell."""
    base: Hashable
    words: tuple
    dims: tuple

    def __str__(self):
        if not any(self.words):
            return label(self.base)
        words = "|".join(" ".join(f"s{i}" for i in w) for w in self.words)
        return f"{label(self.base)}<{words}>"


@dataclass(frozen=True, eq=False)
class MultisimplicialSet:
    """
    k-fold simplicial set. faces[c][r] lists the faces of c in direction r.
    A bisimplicial set is the case arity = 2 (direction 0 horizontal, 1 vertical).
    """
    arity: int
    cells: Mapping[tuple, tuple]
    faces: Mapping[Hashable, tuple] = field(default_factory=dict)
    basepoint: Hashable = None

    def __post_init__(self):
        cells = {tuple(k): tuple(v) for k, v in dict(self.cells).items() if v}
        degree = {}
        for dims, ids in cells.items():
            if len(dims) != self.arity:
                raise StructuralError(f"multidegree {dims} does not have {self.arity} entries")
            for c in ids:
                degree[c] = dims
        faces = {}
        for c, dims in degree.items():
            per_dir = tuple(tuple(t) for t in dict(self.faces).get(c, ((),) * self.arity))
            if len(per_dir) != self.arity:
                raise StructuralError(f"cell '{label(c)}' needs faces in {self.arity} directions")
            for r, refs in enumerate(per_dir):
                want = dims[r] + 1 if dims[r] else 0
                if len(refs) != want:
                    raise StructuralError(f"cell '{label(c)}' needs {want} faces in direction {r}")
                for i, m in enumerate(refs):
                    expect = tuple(d - 1 if s == r else d for s, d in enumerate(dims))
                    if m.base not in degree or m.dims != expect:
                        raise StructuralError(f"face d{i} in direction {r} of '{label(c)}' is invalid")
                    if tuple(d - len(w) for d, w in zip(m.dims, m.words)) != degree[m.base]:
                        raise StructuralError(f"face d{i} in direction {r} of '{label(c)}' has a bad word")
            faces[c] = per_dir
        object.__setattr__(self, "cells", MappingProxyType(cells))
        object.__setattr__(self, "faces", MappingProxyType(faces))
        object.__setattr__(self, "_degree", degree)
        object.__setattr__(self, "_cache", {})
        self._check_identities()

    def _check_identities(self):
        for c, dims in self._degree.items():
            x = self.ref(c)
            for r in range(self.arity):
                for s in range(r, self.arity):
                    if dims[r] < (2 if r == s else 1) or dims[s] < 1:
                        continue
                    for j in range(dims[s] + 1):
                        for i in range(dims[r] + 1):
                            if r == s:
                                if i >= j:
                                    continue
                                lhs = self.face(self.face(x, r, j), r, i)
                                rhs = self.face(self.face(x, r, i), r, j - 1)
                            else:
                                lhs = self.face(self.face(x, s, j), r, i)
                                rhs = self.face(self.face(x, r, i), s, j)
                            if lhs != rhs:
                                raise StructuralError(
                                    f"face identity in directions ({r},{s}) fails on cell '{label(c)}'")

    def ref(self, c) -> MultiRef:
        dims = self._degree[c]
        return MultiRef(c, ((),) * self.arity, dims)

    def degree(self, c):
        return self._degree[c]

    def all_cells(self):
        for ids in self.cells.values():
            yield from ids

    def apply(self, m: MultiRef, r: int, phi) -> MultiRef:
        """phi^* in direction r."""
        comp = compose(theta_of(m.words[r], m.dims[r]), phi)
        sigma, image = epi_mono(comp)
        inner = self._evaluate(m.base, r, image)
        words, dims = [], []
        for s in range(self.arity):
            inner_theta = theta_of(inner.words[s], inner.dims[s])
            if s == r:
                words.append(word_of(compose(inner_theta, sigma)))
                dims.append(len(sigma) - 1)
            else:
                words.append(word_of(compose(inner_theta, theta_of(m.words[s], m.dims[s]))))
                dims.append(m.dims[s])
        return MultiRef(inner.base, tuple(words), tuple(dims))

    def _evaluate(self, c, r, image):
        dims = self._degree[c]
        if len(image) == dims[r] + 1:
            return MultiRef(c, ((),) * self.arity, dims)
        key = (c, r, image)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        missing = max(set(range(dims[r] + 1)) - set(image))
        sub = tuple(v if v < missing else v - 1 for v in image)
        result = self.apply(self.faces[c][r][missing], r, sub)
        self._cache[key] = result
        return result

    def face(self, m: MultiRef, r: int, i: int) -> MultiRef:
        return self.apply(m, r, coface(i, m.dims[r]))

    def degeneracy(self, m: MultiRef, r: int, j: int) -> MultiRef:
        return self.apply(m, r, codegeneracy(j, m.dims[r]))


BisimplicialSet = MultisimplicialSet


def _diagonal_words(dims, n):
    """Tuples of words, one per direction, of a diagonal n-simplex over a cell of multidegree dims."""
    choices = [itertools.combinations(range(n), n - m) for m in dims]
    for combo in itertools.product(*[list(c) for c in choices]):
        common = set(range(n))
        for w in combo:
            common &= set(w)
        if not common:
            yield tuple(tuple(sorted(w, reverse=True)) for w in combo)


def _diag_normalize(m: MultiRef) -> SimplexRef:
    n = m.dims[0]
    as_refs = tuple(SimplexRef(None, w, n) for w in m.words)
    squeezed, common = _factor_common(as_refs)
    dim = n - len(common)
    cell = MultiRef(m.base, tuple(r.word for r in squeezed), (dim,) * len(m.words))
    return SimplexRef(cell, common, n)


def diagonal(B: MultisimplicialSet) -> SimplicialSet:
    """Δ(B)_n = B_{n,...,n} with d_i and s_j applied in every direction at once."""
    cells, faces = {}, {}
    top = max((sum(d) for d in B.cells), default=-1)
    for n in range(top + 1):
        ids = []
        for c in B.all_cells():
            dims = B.degree(c)
            if max(dims) > n:
                continue
            for words in _diagonal_words(dims, n):
                ids.append(MultiRef(c, words, (n,) * B.arity))
        cells[n] = tuple(ids)
        if n:
            for m in ids:
                out = []
                for i in range(n + 1):
                    f = m
                    for r in range(B.arity):
                        f = B.face(f, r, i)
                    out.append(_diag_normalize(f))
                faces[m] = tuple(out)
    basepoint = None
    if B.basepoint is not None:
        basepoint = MultiRef(B.basepoint, ((),) * B.arity, (0,) * B.arity)
    return SimplicialSet(cells, faces, basepoint)


def external_product(*spaces: SimplicialSet) -> MultisimplicialSet:
    """X₁ ⊠ ... ⊠ X_k with cells the tuples of nondegenerate cells."""
    k = len(spaces)
    cells, faces = {}, {}
    for combo in itertools.product(*[list(S.all_cells()) for S in spaces]):
        dims = tuple(S.dim_of(c) for S, c in zip(spaces, combo))
        cells.setdefault(dims, []).append(combo)
        per_dir = []
        for r, S in enumerate(spaces):
            out = []
            for f in S.faces[combo[r]]:
                base = combo[:r] + (f.base,) + combo[r + 1:]
                words = tuple(f.word if s == r else () for s in range(k))
                fdims = tuple(d - 1 if s == r else d for s, d in enumerate(dims))
                out.append(MultiRef(base, words, fdims))
            per_dir.append(tuple(out))
        faces[combo] = tuple(per_dir)
    basepoint = tuple(S.basepoint for S in spaces) if all(S.pointed for S in spaces) else None
    return MultisimplicialSet(k, cells, faces, basepoint)


def vertically_constant(X: SimplicialSet) -> MultisimplicialSet:
    """B_{p,q} = X_p for every q."""
    cells, faces = {}, {}
    for c in X.all_cells():
        n = X.dim_of(c)
        cells.setdefault((n, 0), []).append(c)
        horizontal = tuple(MultiRef(f.base, (f.word, ()), (n - 1, 0)) for f in X.faces[c])
        faces[c] = (horizontal, ())
    return MultisimplicialSet(2, cells, faces, X.basepoint)


def partial_diagonal(T: MultisimplicialSet, directions=(0, 1)) -> MultisimplicialSet:
    """Merge two directions of T into one (kept at the position of the first)."""
    r, s = directions
    if r == s or not (0 <= r < T.arity and 0 <= s < T.arity):
        raise ParameterError(f"invalid direction pair {directions} for arity {T.arity}")
    keep = [t for t in range(T.arity) if t != s]

    def normalize(m: MultiRef) -> MultiRef:
        n = m.dims[r]
        (wr, ws), common = _factor_common((SimplexRef(None, m.words[r], n), SimplexRef(None, m.words[s], n)))
        q = n - len(common)
        cell_words = tuple(wr.word if t == r else ws.word if t == s else () for t in range(T.arity))
        cell_dims = tuple(q if t in (r, s) else m.dims[t] - len(m.words[t]) for t in range(T.arity))
        cell = MultiRef(m.base, cell_words, cell_dims)
        words = tuple(common if t == r else m.words[t] for t in keep)
        dims = tuple(m.dims[t] for t in keep)
        return MultiRef(cell, words, dims)

    cells, faces = {}, {}
    for c in T.all_cells():
        dims = T.degree(c)
        for n in range(max(dims[r], dims[s]), dims[r] + dims[s] + 1):
            for wr, ws in _diagonal_words((dims[r], dims[s]), n):
                words = tuple(wr if t == r else ws if t == s else () for t in range(T.arity))
                cdims = tuple(n if t in (r, s) else dims[t] for t in range(T.arity))
                cell = MultiRef(c, words, cdims)
                new_dims = tuple(cdims[t] for t in keep)
                cells.setdefault(new_dims, []).append(cell)
                per_dir = []
                for t in keep:
                    out = []
                    for i in range(new_dims[keep.index(t)] + 1 if new_dims[keep.index(t)] else 0):
                        f = T.face(cell, t, i)
                        if t == r:
                            f = T.face(f, s, i)
                        out.append(normalize(f))
                    per_dir.append(tuple(out))
                faces[cell] = tuple(per_dir)
    basepoint = None
    if T.basepoint is not None:
        basepoint = MultiRef(T.basepoint, ((),) * T.arity, (0,) * T.arity)
    return MultisimplicialSet(T.arity - 1, cells, faces, basepoint)


def diagonal_comparison(T: MultisimplicialSet, directions=(0, 1)) -> SimplicialMap:
    """Canonical map Δ(partial_diagonal(T)) → Δ(T); an isomorphism."""
    r, s = directions
    keep = [t for t in range(T.arity) if t != s]
    outer, inner = diagonal(partial_diagonal(T, directions)), diagonal(T)

    def image(cell: MultiRef) -> SimplexRef:
        pd_cell = cell.base
        n = cell.dims[0]
        words = []
        for t in range(T.arity):
            pos = keep.index(r) if t in (r, s) else keep.index(t)
            outer_theta = theta_of(cell.words[pos], n)
            inner_theta = theta_of(pd_cell.words[t], pd_cell.dims[t])
            words.append(word_of(compose(inner_theta, outer_theta)))
        return _diag_normalize(MultiRef(pd_cell.base, tuple(words), (n,) * T.arity))

    return SimplicialMap.from_function(outer, inner, image, pointed=False)


def external_product_comparison(X: SimplicialSet, Y: SimplicialSet) -> SimplicialMap:
    """Canonical map Δ(X ⊠ Y) → X × Y; an isomorphism."""
    D = diagonal(external_product(X, Y))
    P = product(X, Y)

    def image(cell: MultiRef) -> SimplexRef:
        x, y = cell.base
        n = cell.dims[0]
        return SimplexRef((SimplexRef(x, cell.words[0], n), SimplexRef(y, cell.words[1], n)), (), n)

    return SimplicialMap.from_function(D, P, image, pointed=False)


# --- ======================================================= ---
# --- π₀, GROUPOIDS AND π₁                                    ---
# --- ======================================================= ---

def _edge_graph(X: SimplicialSet):
    G = nx.MultiGraph()
    G.add_nodes_from(X.cells.get(0, ()))
    for e in X.cells.get(1, ()):
        d0, d1 = X.faces[e]
        G.add_edge(d1.base, d0.base, key=e)
    return G


def pi0(X: SimplicialSet):
    """Components as tuples of vertices, in declaration order."""
    order = {v: i for i, v in enumerate(X.cells.get(0, ()))}
    comps = [tuple(sorted(c, key=order.__getitem__)) for c in nx.connected_components(_edge_graph(X))]
    return tuple(sorted(comps, key=lambda c: order[c[0]]))


def component_map(X: SimplicialSet):
    return {v: i for i, comp in enumerate(pi0(X)) for v in comp}


@dataclass(frozen=True)
class Identity:
    """The identity arrow of an object."""
    obj: Hashable

    def __str__(self):
        return f"id({label(self.obj)})"


def _arrow(r: SimplexRef):
    return Identity(r.base) if r.is_degenerate else r.base


@dataclass(frozen=True)
class GroupoidPresentation:
    """
    objects: X₀. generators: (arrow, source, target).
    relations: (cell, (a, b, c)) meaning a = b ∘ c.
    """
    objects: tuple
    generators: tuple
    relations: tuple

    def __post_init__(self):
        known = {g for g, _, _ in self.generators}
        for cell, triple in self.relations:
            for a in triple:
                if not isinstance(a, Identity) and a not in known:
                    raise StructuralError(f"relation of '{label(cell)}' references unknown arrow '{label(a)}'")

    def pushforward(self, f: SimplicialMap) -> "GroupoidPresentation":
        """Images along f; arrows sent to degenerate edges become identities and are dropped."""
        vmap = f.on_vertices()
        arrows = {g: _arrow(f.images[g]) for g, _, _ in self.generators}

        def push(a):
            return Identity(vmap[a.obj]) if isinstance(a, Identity) else arrows[a]

        objects = tuple(dict.fromkeys(vmap[v] for v in self.objects))
        gens = []
        for g, s, t in self.generators:
            if not isinstance(arrows[g], Identity):
                gens.append((arrows[g], vmap[s], vmap[t]))
        gens = tuple(dict.fromkeys(gens))
        rels = tuple((cell, tuple(push(a) for a in triple)) for cell, triple in self.relations)
        return GroupoidPresentation(objects, gens, rels)

    def normalized(self) -> "GroupoidPresentation":
        """Drop relations that hold by the identity laws alone."""
        def tautology(triple):
            a, b, c = triple
            return (isinstance(b, Identity) and a == c) or (isinstance(c, Identity) and a == b)
        return GroupoidPresentation(self.objects, self.generators,
                                    tuple(r for r in self.relations if not tautology(r[1])))

    def key(self):
        return (frozenset(self.objects), frozenset(self.generators), frozenset(t for _, t in self.relations))

    def same_as(self, other: "GroupoidPresentation") -> bool:
        return self.normalized().key() == other.normalized().key()


def groupoid_presentation(X: SimplicialSet) -> GroupoidPresentation:
    gens = tuple((e, X.faces[e][1].base, X.faces[e][0].base) for e in X.cells.get(1, ()))
    rels = []
    for t in X.cells.get(2, ()):
        d0, d1, d2 = X.faces[t]
        rels.append((t, (_arrow(d1), _arrow(d0), _arrow(d2))))
    return GroupoidPresentation(tuple(X.cells.get(0, ())), gens, tuple(rels))


def _free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g:
            e += out.pop()[1]
        if e:
            out.append((g, e))
    while len(out) > 1 and out[0][0] == out[-1][0]:
        g, e = out.pop()
        e += out[0][1]
        out = ([(g, e)] if e else []) + out[1:]
    return tuple(out)


def _invert(word):
    return tuple((g, -e) for g, e in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        known = set(self.generators)
        for rel in self.relators:
            for g, _ in rel:
                if g not in known:
                    raise StructuralError(f"relator references unknown generator '{label(g)}'")

    def relation_matrix(self) -> IntMatrix:
        """Exponent sums: one column per relator."""
        index = {g: i for i, g in enumerate(self.generators)}
        table = [[0] * len(self.relators) for _ in self.generators]
        for j, rel in enumerate(self.relators):
            for g, e in rel:
                table[index[g]][j] += e
        return IntMatrix(table, rows=len(self.generators), cols=len(self.relators))

    def abelianization(self) -> HomologyGroup:
        return HomologyGroup.from_relations(len(self.generators), self.relation_matrix())

    def simplify(self) -> "GroupPresentation":
        """Tietze moves: drop trivial relators, eliminate a generator occurring once in a relator."""
        gens = list(self.generators)
        rels = [r for r in (_free_reduce(r) for r in self.relators) if r]
        changed = True
        while changed:
            changed = False
            for idx, rel in enumerate(rels):
                counts = {}
                for g, e in rel:
                    counts[g] = counts.get(g, 0) + abs(e)
                target = next((g for g, _ in rel if counts[g] == 1), None)
                if target is None:
                    continue
                pos = next(p for p, (g, _) in enumerate(rel) if g == target)
                rotated = rel[pos:] + rel[:pos]
                e, rest = rotated[0][1], rotated[1:]
                replacement = _invert(rest) if e == 1 else rest
                new_rels = []
                for k, other in enumerate(rels):
                    if k == idx:
                        continue
                    word = []
                    for g, x in other:
                        if g == target:
                            piece = replacement if x > 0 else _invert(replacement)
                            word.extend(piece * abs(x))
                        else:
                            word.append((g, x))
                    word = _free_reduce(word)
                    if word:
                        new_rels.append(word)
                rels = new_rels
                gens.remove(target)
                changed = True
                break
        return GroupPresentation(tuple(gens), tuple(rels))

    def count_homomorphisms(self, table, inverse, identity=0) -> int:
        """|Hom(G, H)| for H given by its Cayley table over element indices."""
        index = {g: i for i, g in enumerate(self.generators)}
        checks = {i: [] for i in range(len(self.generators))}
        for rel in self.relators:
            if rel:
                checks[max(index[g] for g, _ in rel)].append(rel)
        order = len(table)
        assign = [0] * len(self.generators)

        def power(x, e):
            base = x if e > 0 else inverse[x]
            acc = identity
            for _ in range(abs(e)):
                acc = table[acc][base]
            return acc

        def holds(rel):
            acc = identity
            for g, e in rel:
                acc = table[acc][power(assign[index[g]], e)]
            return acc == identity

        def walk(i):
            if i == len(self.generators):
                return 1
            total = 0
            for x in range(order):
                assign[i] = x
                if all(holds(rel) for rel in checks[i]):
                    total += walk(i + 1)
            return total

        return walk(0)


def pi1_presentation(X: SimplicialSet, base) -> GroupPresentation:
    """Vertex group at ``base``: the groupoid presentation with a spanning tree contracted."""
    if base not in X.cells.get(0, ()):
        raise ParameterError(f"'{label(base)}' is not a 0-cell")
    comp = set(next(c for c in pi0(X) if base in c))
    G = nx.MultiGraph()
    G.add_nodes_from(v for v in X.cells.get(0, ()) if v in comp)
    edges = [e for e in X.cells.get(1, ()) if X.faces[e][0].base in comp]
    for e in edges:
        G.add_edge(X.faces[e][1].base, X.faces[e][0].base, key=e)
    tree = {key for _, _, key in nx.minimum_spanning_edges(G, algorithm="kruskal", keys=True, data=False)}
    gens = tuple(e for e in edges if e not in tree)
    live = set(gens)
    relators = []
    for t in X.cells.get(2, ()):
        d0, d1, d2 = X.faces[t]
        if X.vertices_of(X.ref(t))[0] not in comp:
            continue
        word = [(r.base, e) for r, e in ((d2, 1), (d0, 1), (d1, -1)) if not r.is_degenerate and r.base in live]
        relators.append(tuple(word))
    return GroupPresentation(gens, tuple(relators))


# --- ======================================================= ---
# --- CHAINS AND HOMOLOGY                                     ---
# --- ======================================================= ---

def chain_basis(X: SimplicialSet, n: int, normalized=True, reduced=False):
    if normalized:
        return [c for c in X.cells.get(n, ()) if not (reduced and c == X.basepoint)]
    return [r for r in X.simplices(n) if not (reduced and X.is_base(r))]


def _chain_top(X, normalized, cap):
    if normalized:
        return X.dimension if cap is None else min(X.dimension, cap)
    if cap is None:
        raise ParameterError("unnormalized chains need a dimension cap")
    return cap if X.dimension >= 0 else -1


def chains(X: SimplicialSet, normalized=True, reduced=None, cap=None) -> ChainComplex:
    """
    Normalized chains: nondegenerate cells, degenerate faces dropped.
    Unnormalized chains: all simplices up to ``cap``. Reduced chains drop the basepoint.
    """
    if reduced is None:
        reduced = X.pointed
    if reduced and not X.pointed:
        raise PreconditionError("reduced chains need a pointed simplicial set")
    top = _chain_top(X, normalized, cap)
    if top < 0:
        return ChainComplex.zero()
    bases = [chain_basis(X, n, normalized, reduced) for n in range(top + 1)]
    index = [{k: i for i, k in enumerate(b)} for b in bases]
    d = {}
    for n in range(1, top + 1):
        table = [[0] * len(bases[n]) for _ in bases[n - 1]]
        for col, key in enumerate(bases[n]):
            r = X.ref(key) if normalized else key
            for i in range(n + 1):
                f = X.faces[key][i] if normalized else X.face(r, i)
                if reduced and X.is_base(f):
                    continue
                if normalized:
                    if f.is_degenerate:
                        continue
                    f = f.base
                table[index[n - 1][f]][col] += -1 if i % 2 else 1
        d[n] = IntMatrix(table, rows=len(bases[n - 1]), cols=len(bases[n]))
    return ChainComplex(0, top, tuple(len(b) for b in bases), d)


def chain_map(f: SimplicialMap, normalized=True, reduced=None, cap=None) -> ChainMap:
    X, Y = f.source, f.target
    if reduced is None:
        reduced = X.pointed and Y.pointed
    S = chains(X, normalized, reduced, cap)
    T = chains(Y, normalized, reduced, cap)
    comps = {}
    for n in S.degrees:
        src = chain_basis(X, n, normalized, reduced) if S.rank(n) else []
        tgt = {k: i for i, k in enumerate(chain_basis(Y, n, normalized, reduced))} if T.rank(n) else {}
        table = [[0] * len(src) for _ in range(T.rank(n))]
        for col, key in enumerate(src):
            img = f.images[key] if normalized else f.apply(key)
            if reduced and Y.is_base(img):
                continue
            if normalized:
                if img.is_degenerate:
                    continue
                img = img.base
            if img not in tgt:
                raise StructuralError(f"image of '{label(key)}' lies outside the target chains")
            table[tgt[img]][col] += 1
        comps[n] = IntMatrix(table, rows=T.rank(n), cols=len(src))
    return ChainMap(S, T, comps)


def homology_space(X: SimplicialSet, n: int) -> HomologyGroup:
    """Homology of the normalized chains; reduced when X is pointed."""
    return homology(chains(X), n)


def euler_characteristic(X: SimplicialSet) -> int:
    return sum((-1) ** n * len(ids) for n, ids in X.cells.items())
