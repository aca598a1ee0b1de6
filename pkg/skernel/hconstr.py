# FILE: skernel/hconstr.py
"""Homotopy constructions on finite simplicial sets.

wrap            Wr(X) = ω′ω(X): forget degeneracies, add them back freely, truncated at D
skeleton square sk_{n+1} Wr(X) as a pushout over X_{n+1} ∧ (∂Δ^{n+1})₊
homotopy pushout K_Q = (K ∧ Δ¹₊) ∪_{K ∨ K} (M ∨ L), cylinders, comparison maps
certificates    π₀, homology and π₁ evidence that a map is a weak equivalence
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from sympy.combinatorics.named_groups import AbelianGroup, CyclicGroup, SymmetricGroup

from skernel.chain import ChainMap, IntMatrix, QuasiIsoReport, check_quasi_iso, homology, mapping_cone
from skernel.errors import PreconditionError, RangeError
from skernel.simpset import (MultiRef, MultisimplicialSet, PushoutResult,
                             SimplexRef, SimplicialMap, SimplicialSet, SmashStructure, boundary,
                             chain_map, chains, component_map, compose, compose_maps, diagonal, discrete,
                             groupoid_presentation, pi0, pi1_presentation, plus, product_map, product_structure,
                             pushout_inj, simplex, skeleton, smash_map, smash_structure, theta_of,
                             wedge_pushout)

log = logging.getLogger("skernel.hconstr")


def _full_word(n):
    return tuple(range(n - 1, -1, -1))


def unpointed(X: SimplicialSet) -> SimplicialSet:
    return SimplicialSet(X.cells, X.faces) if X.pointed else X


# --- ======================================================= ---
# --- WRAPPING FUNCTOR                                        ---
# --- ======================================================= ---

@dataclass(frozen=True, eq=False)
class WrapResult:
    space: SimplicialSet
    counit: SimplicialMap
    D: int


def wrap(X: SimplicialSet, D: int) -> WrapResult:
    """
    Nondegenerate n-cells of Wr(X) are the n-simplices of X (degenerate ones included),
    with faces d_i x taken in X and kept nondegenerate. For pointed X the degeneracies
    of the basepoint stay degenerate. The counit sends x to x.
    """
    if D < 0:
        raise RangeError(f"truncation must be nonnegative, got {D}")
    cells, faces = {}, {}
    for n in range(D + 1):
        ids = [r for r in X.simplices(n) if not (n and X.is_base(r))]
        if not ids:
            break
        cells[n] = tuple(ids)
        for r in ids if n else ():
            out = []
            for i in range(n + 1):
                f = X.face(r, i)
                out.append(SimplexRef(X.ref(X.basepoint), _full_word(n - 1), n - 1)
                           if X.is_base(f) else SimplexRef(f, (), n - 1))
            faces[r] = tuple(out)
    basepoint = X.ref(X.basepoint) if X.pointed else None
    W = SimplicialSet(cells, faces, basepoint)
    counit = SimplicialMap(W, X, {r: r for r in W.all_cells()})
    log.debug("[WRAP] Wr(X) truncated at %d has cell counts %s", D, W.cell_counts())
    return WrapResult(W, counit, D)


def _into_wrap(W: SimplicialSet, r: SimplexRef) -> SimplexRef:
    """An X-simplex as a simplex of Wr(X)."""
    if W.pointed and r.base == W.basepoint.base:
        return W.base_simplex(r.dim)
    return SimplexRef(r, (), r.dim)


def wrap_map(f: SimplicialMap, D: int):
    """Wr(f): Wr(X) → Wr(Y), together with both wraps."""
    WX, WY = wrap(f.source, D), wrap(f.target, D)
    images = {r: _into_wrap(WY.space, f.apply(r)) for r in WX.space.all_cells()}
    return SimplicialMap(WX.space, WY.space, images), WX, WY


@dataclass(frozen=True)
class TriangleReport:
    first_iso: bool
    composite: QuasiIsoReport

    @property
    def passed(self):
        return self.first_iso and bool(self.composite)


def homology_triangle_check(X: SimplicialSet, D: int) -> TriangleReport:
    """
    C_*(X) → C_*(Wr X)/deg → C_*(X)/deg: the first arrow is an isomorphism of complexes
    and the composite induces isomorphisms on homology in degrees ≤ D-1.
    """
    X = unpointed(X)
    wr = wrap(X, D)
    full = chains(X, normalized=False, reduced=False, cap=D)
    wrapped = chains(wr.space, normalized=True, reduced=False)
    first_iso = full == wrapped
    counit = chain_map(wr.counit, normalized=True, reduced=False)
    composite = counit
    if first_iso:
        composite = counit.compose(ChainMap(full, wrapped, {n: IntMatrix.identity(full.rank(n)) for n in full.degrees}))
    report = check_quasi_iso(composite, degrees=range(0, D))
    return TriangleReport(first_iso, report)


# --- ======================================================= ---
# --- SKELETAL PUSHOUT SQUARES                                ---
# --- ======================================================= ---

def _vertex_tuple(cell: str):
    return tuple(int(v) for v in cell.strip("[]").split(","))


def _characteristic(W: SimplicialSet, point: SimplexRef, b: SimplexRef) -> SimplexRef:
    """The simplex b of Δ^{n+1} pushed into W along the (n+1)-cell named by ``point``."""
    phi = compose(_vertex_tuple(b.base), theta_of(b.word, b.dim))
    return W.apply(W.ref(point.base), phi)


@dataclass(frozen=True)
class SkeletonSquareReport:
    n: int
    passed: bool
    pushout_counts: tuple
    skeleton_counts: tuple

    def lines(self):
        yield f"n={self.n} pushout={self.pushout_counts} skeleton={self.skeleton_counts}"
        yield f"iso={'yes' if self.passed else 'no'}"


def skeleton_pushout_check(X: SimplicialSet, n: int, D: int) -> SkeletonSquareReport:
    """sk_{n+1} Wr(X) ≅ sk_n Wr(X) ∪ X_{n+1} × Δ^{n+1} glued along X_{n+1} × ∂Δ^{n+1} (smashes when pointed)."""
    if n + 1 > D:
        raise RangeError(f"the square at n={n} needs truncation at least {n + 1}, got {D}")
    W = wrap(X, D).space
    lower, upper = skeleton(W, n), skeleton(W, n + 1)
    top = [r for r in X.simplices(n + 1) if not X.is_base(r)]
    if X.pointed:
        S = discrete(top + [X.base_simplex(n + 1)], basepoint=X.base_simplex(n + 1))
        Bd, Sm = plus(boundary(n + 1)), plus(simplex(n + 1))
        A, B = smash_structure(S, Bd), smash_structure(S, Sm)
        incl = SimplicialMap(Bd, Sm, {c: Sm.ref(c) for c in Bd.all_cells()})
        f = smash_map(A, B, SimplicialMap.identity(S), incl)
    else:
        S = discrete(top)
        Bd, Sm = boundary(n + 1), simplex(n + 1)
        A, B = product_structure(S, Bd), product_structure(S, Sm)
        incl = SimplicialMap(Bd, Sm, {c: Sm.ref(c) for c in Bd.all_cells()})
        f = product_map(A, B, SimplicialMap.identity(S), incl)

    def leg(struct, target):
        def image(cell):
            r = struct.space.ref(cell)
            pair = struct.pair(r)
            if pair is None:
                return W.base_simplex(r.dim)
            return _characteristic(W, pair[0], pair[1])
        return SimplicialMap.from_function(struct.space, target, image)

    g = leg(A, lower)
    P = pushout_inj(f, g)
    hx = leg(B, upper)
    hy = SimplicialMap(lower, upper, {c: upper.ref(c) for c in lower.all_cells()})
    comparison = P.induced(hx, hy)
    passed = comparison.is_isomorphism()
    log.info("[WRAP] skeleton square n=%d: %s", n, "iso" if passed else "not iso")
    return SkeletonSquareReport(n, passed, P.space.cell_counts(), upper.cell_counts())


# --- ======================================================= ---
# --- HOMOTOPY PUSHOUTS AND CYLINDERS                         ---
# --- ======================================================= ---

@dataclass(frozen=True, eq=False)
class PushoutDiagram:
    """L ←f− K −g→ M, all pointed."""
    K: SimplicialSet
    L: SimplicialSet
    M: SimplicialSet
    f: SimplicialMap
    g: SimplicialMap

    def __post_init__(self):
        if not (self.K.pointed and self.L.pointed and self.M.pointed):
            raise PreconditionError("a pushout diagram needs pointed simplicial sets")
        if not (self.f.pointed and self.g.pointed):
            raise PreconditionError("pushout diagram legs must preserve basepoints")
        if self.f.source != self.K or self.g.source != self.K or self.f.target != self.L or self.g.target != self.M:
            raise PreconditionError("pushout diagram legs do not match K, L and M")


def _interval():
    """Δ¹₊ and (∂Δ¹)₊."""
    return plus(simplex(1)), plus(boundary(1))


def _collapse_interval(KI: SmashStructure, h: SimplicialMap) -> SimplicialMap:
    """K ∧ Δ¹₊ → N, (k, t) ↦ h(k)."""
    N = h.target

    def image(cell):
        r = KI.space.ref(cell)
        pair = KI.pair(r)
        return N.base_simplex(r.dim) if pair is None else h.apply(pair[0])

    return SimplicialMap.from_function(KI.space, N, image)


def _end(K: SimplicialSet, KI: SmashStructure, vertex: str) -> SimplicialMap:
    """K → K ∧ Δ¹₊ at one end of the interval."""
    def image(cell):
        m = K.dim_of(cell)
        return KI.simplex_for(K.ref(cell), SimplexRef(vertex, _full_word(m), m))
    return SimplicialMap.from_function(K, KI.space, image)


@dataclass(frozen=True, eq=False)
class HomotopyPushout:
    """K_Q with end [0] of the interval glued to L along f and end [1] to M along g."""
    diagram: PushoutDiagram
    space: SimplicialSet
    from_L: SimplicialMap
    from_M: SimplicialMap
    cylinder: SmashStructure
    wedge: PushoutResult
    gluing: PushoutResult

    def comparison(self, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
        """K_Q → N for a strictly commuting square u∘f = v∘g."""
        Q = self.diagram
        fu = compose_maps(u, Q.f)
        if not fu.same_as(compose_maps(v, Q.g)):
            raise PreconditionError("the square L → N ← M does not commute over K")
        return self.gluing.induced(_collapse_interval(self.cylinder, fu), self.wedge.induced(u, v))


def homotopy_pushout(Q: PushoutDiagram) -> HomotopyPushout:
    I, dI = _interval()
    KI, KK = smash_structure(Q.K, I), smash_structure(Q.K, dI)
    incl = SimplicialMap(dI, I, {c: I.ref(c) for c in dI.all_cells()})
    j = smash_map(KK, KI, SimplicialMap.identity(Q.K), incl)
    ML = wedge_pushout(Q.L, Q.M)

    def h(cell):
        r = KK.space.ref(cell)
        pair = KK.pair(r)
        if pair is None:
            return ML.space.base_simplex(r.dim)
        k, b = pair
        if b.base == "[0]":
            return ML.into_x.apply(Q.f.apply(k))
        return ML.into_y.apply(Q.g.apply(k))

    P = pushout_inj(j, SimplicialMap.from_function(KK.space, ML.space, h))
    from_L = compose_maps(P.into_y, ML.into_x)
    from_M = compose_maps(P.into_y, ML.into_y)
    log.debug("[PUSHOUT] K_Q has cell counts %s", P.space.cell_counts())
    return HomotopyPushout(Q, P.space, from_L, from_M, KI, ML, P)


def coprojection_check(m: SimplicialMap) -> bool:
    """Termwise coprojection: injective on simplices in every degree."""
    return m.is_injective()


def strict_pushout_comparison(Q: PushoutDiagram, range_: int = 3):
    """For injective f: K_Q → L ⊔_K M, with its weak-equivalence certificate."""
    if not Q.f.is_injective():
        raise PreconditionError("the strict pushout comparison needs an injective K → L")
    strict = pushout_inj(Q.f, Q.g)
    hp = homotopy_pushout(Q)
    m = hp.comparison(strict.into_x, strict.into_y)
    return m, weq_certificate(m, range_)


@dataclass(frozen=True, eq=False)
class Cylinder:
    space: SimplicialSet
    from_K: SimplicialMap
    from_L: SimplicialMap
    retraction: SimplicialMap

    def retraction_is_strict(self) -> bool:
        composite = compose_maps(self.retraction, self.from_L)
        return composite.same_as(SimplicialMap.identity(self.from_L.source))


def cylinder(f: SimplicialMap) -> Cylinder:
    """cyl(f) = K ∧ Δ¹₊ ∪_K L, glued along end [0]; K enters at end [1]."""
    K, L = f.source, f.target
    if not (K.pointed and L.pointed and f.pointed):
        raise PreconditionError("the cylinder needs a basepoint-preserving map of pointed sets")
    I, _ = _interval()
    KI = smash_structure(K, I)
    P = pushout_inj(_end(K, KI, "[0]"), f)
    retraction = P.induced(_collapse_interval(KI, f), SimplicialMap.identity(L))
    return Cylinder(P.space, compose_maps(P.into_x, _end(K, KI, "[1]")), P.into_y, retraction)


@dataclass(frozen=True, eq=False)
class DualCylinder:
    space: SimplicialSet
    from_K: SimplicialMap
    from_M: SimplicialMap
    retraction: SimplicialMap

    def retraction_is_strict(self) -> bool:
        composite = compose_maps(self.retraction, self.from_M)
        return composite.same_as(SimplicialMap.identity(self.from_M.source))


def cylinder_dual(g: SimplicialMap) -> DualCylinder:
    """cyl′(g): the homotopy pushout of K ←id− K −g→ M, retracting onto M."""
    K, M = g.source, g.target
    hp = homotopy_pushout(PushoutDiagram(K, K, M, SimplicialMap.identity(K), g))
    retraction = hp.comparison(g, SimplicialMap.identity(M))
    return DualCylinder(hp.space, hp.from_L, hp.from_M, retraction)


def homotopy_pushout_bisimplicial(Q: PushoutDiagram) -> MultisimplicialSet:
    """
    Columns M ∨ K^{∨n} ∨ L, n ≥ 0. Only columns 0 and 1 carry nondegenerate bisimplices;
    in column 1, d_0 sends K to M along g and d_1 sends K to L along f.
    """
    ML = wedge_pushout(Q.L, Q.M)
    W = ML.space
    base = ("Q", W.basepoint)
    cells, faces = {}, {}

    def column0(r: SimplexRef, m):
        if W.is_base(r):
            return MultiRef(base, ((), _full_word(m)), (0, m))
        return MultiRef(("Q", r.base), ((), r.word), (0, m))

    for c in W.all_cells():
        m = W.dim_of(c)
        cells.setdefault((0, m), []).append(("Q", c))
        faces[("Q", c)] = ((), tuple(column0(r, m - 1) for r in W.faces[c]))
    for k in Q.K.all_cells():
        if k == Q.K.basepoint:
            continue
        m = Q.K.dim_of(k)
        cells.setdefault((1, m), []).append(("K", k))
        r = Q.K.ref(k)
        horizontal = (column0(ML.into_y.apply(Q.g.apply(r)), m), column0(ML.into_x.apply(Q.f.apply(r)), m))
        vertical = []
        for v in Q.K.faces[k]:
            if Q.K.is_base(v):
                vertical.append(MultiRef(base, ((0,), _full_word(m - 1)), (1, m - 1)))
            else:
                vertical.append(MultiRef(("K", v.base), ((), v.word), (1, m - 1)))
        faces[("K", k)] = (horizontal, tuple(vertical))
    return MultisimplicialSet(2, cells, faces, base)


def bisimplicial_comparison(Q: PushoutDiagram) -> SimplicialMap:
    """Δ(columns M ∨ K^{∨n} ∨ L) → K_Q; an isomorphism."""
    hp = homotopy_pushout(Q)
    B = homotopy_pushout_bisimplicial(Q)
    diag = diagonal(B)
    KI, P = hp.cylinder, hp.gluing

    def image(cell: MultiRef) -> SimplexRef:
        (tag, c), (wh, wv), (m, _) = cell.base, cell.words, cell.dims
        if tag == "Q":
            return P.into_y.apply(SimplexRef(c, wv, m))
        interval = SimplexRef("[0,1]", wh, m)
        return P.into_x.apply(KI.simplex_for(SimplexRef(c, wv, m), interval))

    return SimplicialMap.from_function(diag, hp.space, image)


# --- ======================================================= ---
# --- WEAK-EQUIVALENCE CERTIFICATES                           ---
# --- ======================================================= ---

@lru_cache(maxsize=None)
def small_groups():
    """(order, name, Cayley table, inverses, identity index) for every group of order ≤ 6."""
    named = [(2, "C2", CyclicGroup(2)), (3, "C3", CyclicGroup(3)), (4, "C4", CyclicGroup(4)),
             (4, "V4", AbelianGroup(2, 2)), (5, "C5", CyclicGroup(5)), (6, "C6", CyclicGroup(6)),
             (6, "S3", SymmetricGroup(3))]
    out = [(1, "C1", ((0,),), (0,), 0)]
    for order, name, G in named:
        elements = sorted(G.generate(), key=lambda p: p.array_form)
        index = {p: i for i, p in enumerate(elements)}
        table = tuple(tuple(index[a * b] for b in elements) for a in elements)
        inverse = tuple(index[a ** -1] for a in elements)
        out.append((order, name, table, inverse, index[G.identity]))
    return tuple(out)


def _hom_counts(X: SimplicialSet) -> dict:
    counts = {}
    presentations = [pi1_presentation(X, comp[0]).simplify() for comp in pi0(X)]
    for order, _, table, inverse, ident in small_groups():
        total = 1
        for pres in presentations:
            total *= pres.count_homomorphisms(table, inverse, ident)
        counts.setdefault(order, 0)
        counts[order] += total
    return counts


@dataclass(frozen=True)
class WeqCertificate:
    range: int
    pi0_bijective: bool
    homology_iso: Mapping[int, bool]
    groupoid_match: str
    groupoid_consistent: bool
    cone_acyclic: bool
    finite_quotient_counts: Mapping[int, tuple] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.pi0_bijective and all(self.homology_iso.values()) and self.cone_acyclic
                and self.groupoid_consistent)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "pi0": self.pi0_bijective,
            "homology": {str(n): ok for n, ok in sorted(self.homology_iso.items())},
            "groupoid": self.groupoid_match,
            "quotients": {str(k): list(v) for k, v in sorted(self.finite_quotient_counts.items())},
        }

    def lines(self):
        yield f"pi0={'bijective' if self.pi0_bijective else 'NOT bijective'}"
        for n, ok in sorted(self.homology_iso.items()):
            yield f"H{n}={'iso' if ok else 'NOT iso'}"
        yield f"cone={'acyclic' if self.cone_acyclic else 'NOT acyclic'}"
        yield f"groupoid={self.groupoid_match}"
        for k, (a, b) in sorted(self.finite_quotient_counts.items()):
            yield f"hom(pi1, order {k})={a}/{b}"
        yield f"certificate={'pass' if self.passed else 'FAIL'}"


def _pi0_bijective(f: SimplicialMap) -> bool:
    source, target = component_map(f.source), component_map(f.target)
    images = {comp: target[f.images[v].base] for v, comp in source.items()}
    hit = set(images.values())
    return len(hit) == len(images) and hit == set(target.values())


def weq_certificate(f: SimplicialMap, range_: int) -> WeqCertificate:
    """Evidence that f is a weak equivalence, in degrees ≤ range_."""
    if range_ < 0:
        raise RangeError(f"certificate range must be nonnegative, got {range_}")
    pi0_ok = _pi0_bijective(f)
    cm = chain_map(f, normalized=True, reduced=False)
    verdicts = check_quasi_iso(cm, degrees=range(0, range_ + 1))
    homology_iso = {v.degree: v.iso for v in verdicts.verdicts}
    cone = mapping_cone(cm)
    cone_ok = all(homology(cone, n).is_zero for n in range(0, range_ + 1))

    counts = {}
    if range_ < 1:
        match, consistent = "skipped", True
    else:
        X, Y = f.source, f.target
        if groupoid_presentation(X).pushforward(f).same_as(groupoid_presentation(Y)):
            match, consistent = "equal", True
        else:
            match = "abelianized"
            ycomp = component_map(Y)
            ab_y = {i: pi1_presentation(Y, comp[0]).abelianization() for i, comp in enumerate(pi0(Y))}
            consistent = all(pi1_presentation(X, comp[0]).abelianization() == ab_y[ycomp[f.images[comp[0]].base]]
                             for comp in pi0(X))
        cx, cy = _hom_counts(X), _hom_counts(Y)
        counts = {k: (cx[k], cy[k]) for k in sorted(cx)}
        consistent = consistent and all(a == b for a, b in counts.values())
    cert = WeqCertificate(range_, pi0_ok, homology_iso, match, consistent, cone_ok, counts)
    log.info("[CERT] range=%d pass=%s groupoid=%s", range_, cert.passed, match)
    return cert
