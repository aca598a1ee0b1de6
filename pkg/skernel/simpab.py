# FILE: skernel/simpab.py
"""Dimension-truncated, levelwise free simplicial abelian groups.

Elements of A_n are integer column vectors in the standard basis of Z^rank(n).
Every group carries its truncation D: levels 0..D exist, faces reach level D and
degeneracies start below it.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from skernel.chain import (ChainComplex, ChainMap, HomologyGroup, IntMatrix, assemble, homology,
                           inverse_unimodular, is_unimodular, kernel_basis, lattice_coordinates,
                           tensor, truncate_good, truncate_stupid)
from skernel.errors import ParameterError, PreconditionError, RangeError, StructuralError
from skernel.simpset import (SimplicialSet, codegeneracy, coface, epi_mono, smash_structure, surjections,
                             theta_of, word_of)

log = logging.getLogger("skernel.simpab")


@dataclass(frozen=True, eq=False)
class SimplicialAbGroup:
    """
    D: truncation dimension
    ranks: rank of A_n for n = 0..D
    faces: (n, i) -> matrix A_n → A_{n-1}
    degens: (n, j) -> matrix A_n → A_{n+1}, n < D
    """
    D: int
    ranks: tuple
    faces: Mapping[tuple, IntMatrix] = field(default_factory=dict)
    degens: Mapping[tuple, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.D < 0:
            raise ParameterError(f"truncation must be nonnegative, got {self.D}")
        ranks = tuple(int(r) for r in self.ranks)
        if len(ranks) != self.D + 1 or any(r < 0 for r in ranks):
            raise StructuralError(f"ranks {ranks} do not cover levels 0..{self.D}")
        object.__setattr__(self, "ranks", ranks)
        faces, degens = {}, {}
        for n in range(1, self.D + 1):
            for i in range(n + 1):
                faces[(n, i)] = self._matrix(self.faces, (n, i), (ranks[n - 1], ranks[n]), "d")
        for n in range(self.D):
            for j in range(n + 1):
                degens[(n, j)] = self._matrix(self.degens, (n, j), (ranks[n + 1], ranks[n]), "s")
        object.__setattr__(self, "faces", MappingProxyType(faces))
        object.__setattr__(self, "degens", MappingProxyType(degens))
        self._check_identities()

    @staticmethod
    def _matrix(source, key, shape, kind):
        m = dict(source).get(key)
        if m is None:
            raise StructuralError(f"missing {kind}{key[1]} at level {key[0]}")
        m = m if isinstance(m, IntMatrix) else IntMatrix(m, rows=shape[0], cols=shape[1])
        if m.shape != shape:
            raise StructuralError(f"{kind}{key[1]} at level {key[0]} has shape {m.shape}, expected {shape}")
        return m

    def _check_identities(self):
        d, s = self.faces, self.degens
        for n in range(2, self.D + 1):
            for j in range(n + 1):
                for i in range(j):
                    if d[(n - 1, i)] @ d[(n, j)] != d[(n - 1, j - 1)] @ d[(n, i)]:
                        raise StructuralError(f"simplicial identity d{i} d{j} = d{j - 1} d{i} fails at level {n}")
        for n in range(self.D - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s[(n + 1, i)] @ s[(n, j)] != s[(n + 1, j + 1)] @ s[(n, i)]:
                        raise StructuralError(f"simplicial identity s{i} s{j} = s{j + 1} s{i} fails at level {n}")
        for n in range(self.D):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = d[(n + 1, i)] @ s[(n, j)]
                    if i < j:
                        rhs = s[(n - 1, j - 1)] @ d[(n, i)]
                    elif i in (j, j + 1):
                        rhs = IntMatrix.identity(self.ranks[n])
                    else:
                        rhs = s[(n - 1, j)] @ d[(n, i - 1)]
                    if lhs != rhs:
                        raise StructuralError(f"simplicial identity for d{i} s{j} fails at level {n}")

    # --- constructors ---
    @classmethod
    def constant(cls, rank, D):
        ident = IntMatrix.identity(rank)
        faces = {(n, i): ident for n in range(1, D + 1) for i in range(n + 1)}
        degens = {(n, j): ident for n in range(D) for j in range(n + 1)}
        return cls(D, (rank,) * (D + 1), faces, degens)

    @classmethod
    def zero(cls, D):
        return cls.constant(0, D)

    # --- access ---
    def rank(self, n):
        return self.ranks[n]

    def face(self, n, i) -> IntMatrix:
        return self.faces[(n, i)]

    def degen(self, n, j) -> IntMatrix:
        return self.degens[(n, j)]

    def _structure(self, theta, n):
        p = len(theta) - 1
        if p > self.D or n > self.D:
            raise RangeError(f"structure map between levels {n} and {p} exceeds truncation {self.D}")
        sigma, image = epi_mono(theta)
        m = IntMatrix.identity(self.ranks[n])
        level = n
        for missing in sorted(set(range(n + 1)) - set(image), reverse=True):
            m = self.faces[(level, missing)] @ m
            level -= 1
        for j in reversed(word_of(sigma)):
            m = self.degens[(level, j)] @ m
            level += 1
        return m

    def __repr__(self):
        return f"SimplicialAbGroup(D={self.D}, ranks={self.ranks})"


def structure_map(A: SimplicialAbGroup, theta, n: int) -> IntMatrix:
    """θ*: A_n → A_p for θ: [p] → [n] given as its tuple of images."""
    if any(not 0 <= t <= n for t in theta) or any(a > b for a, b in zip(theta, theta[1:])):
        raise ParameterError(f"{tuple(theta)} is not a monotone map into [{n}]")
    return A._structure(tuple(theta), n)


@dataclass(frozen=True, eq=False)
class SimplicialAbMap:
    """Levelwise matrices target.rank(n) x source.rank(n)."""
    source: SimplicialAbGroup
    target: SimplicialAbGroup
    components: Mapping[int, IntMatrix]

    def commutes(self) -> bool:
        S, T, f = self.source, self.target, self.components
        D = min(S.D, T.D)
        for (n, i), m in S.faces.items():
            if n <= D and T.faces[(n, i)] @ f[n] != f[n - 1] @ m:
                return False
        for (n, j), m in S.degens.items():
            if n < D and T.degens[(n, j)] @ f[n] != f[n + 1] @ m:
                return False
        return True

    def is_isomorphism(self) -> bool:
        return all(is_unimodular(m) for m in self.components.values())


# --- ======================================================= ---
# --- NORMALIZATION AND DOLD-KAN                              ---
# --- ======================================================= ---

def moore_basis(A: SimplicialAbGroup, n: int) -> IntMatrix:
    """Columns spanning N_n = ∩_{i≥1} ker d_i, in canonical Hermite form."""
    if n == 0:
        return IntMatrix.identity(A.rank(0))
    stacked = IntMatrix.vstack([A.face(n, i) for i in range(1, n + 1)], cols=A.rank(n))
    return kernel_basis(stacked)


def normalize_N(A: SimplicialAbGroup) -> ChainComplex:
    """Moore complex: N_n with differential induced by d_0."""
    bases = [moore_basis(A, n) for n in range(A.D + 1)]
    d = {n: lattice_coordinates(bases[n - 1], A.face(n, 0) @ bases[n]) for n in range(1, A.D + 1)}
    return ChainComplex(0, A.D, tuple(b.cols for b in bases), d)


def unnormalized_complex(A: SimplicialAbGroup) -> ChainComplex:
    d = {}
    for n in range(1, A.D + 1):
        total = IntMatrix.zeros(A.rank(n - 1), A.rank(n))
        for i in range(n + 1):
            total = total + A.face(n, i) * (-1 if i % 2 else 1)
        d[n] = total
    return ChainComplex(0, A.D, A.ranks, d)


def _summands(C: ChainComplex, n: int):
    """(k, σ, offset) for the summands C_k indexed by surjections σ: [n] ->> [k]."""
    out, off = [], 0
    for k in range(n + 1):
        for sigma in surjections(n, k):
            out.append((k, sigma, off))
            off += C.rank(k)
    return out, off


def _K_matrix(C, theta, n):
    """θ* on K(C): K(C)_n → K(C)_p."""
    p = len(theta) - 1
    src, src_total = _summands(C, n)
    tgt, tgt_total = _summands(C, p)
    where = {(k, sigma): off for k, sigma, off in tgt}
    blocks = []
    for k, sigma, off in src:
        if not C.rank(k):
            continue
        tau, image = epi_mono(tuple(sigma[t] for t in theta))
        if len(image) == k + 1:
            blocks.append((where[(k, tau)], off, IntMatrix.identity(C.rank(k))))
        elif image == tuple(range(1, k + 1)) and C.rank(k - 1):
            blocks.append((where[(k - 1, tau)], off, C.d(k)))
    return assemble(tgt_total, src_total, blocks)


def dold_kan_K(C: ChainComplex, D: int) -> SimplicialAbGroup:
    """K(C)_n = ⊕_{[n]->>[k]} C_k, after truncating C to degrees ≥ 0."""
    if D < 0:
        raise ParameterError(f"truncation must be nonnegative, got {D}")
    if C.min_deg < 0:
        C = truncate_good(C, 0)
    if C.min_deg > 0:
        C = ChainComplex(0, max(C.max_deg, 0), tuple(C.rank(n) for n in range(0, C.max_deg + 1)),
                         dict(C.differentials))
    ranks = tuple(_summands(C, n)[1] for n in range(D + 1))
    faces = {(n, i): _K_matrix(C, coface(i, n), n) for n in range(1, D + 1) for i in range(n + 1)}
    degens = {(n, j): _K_matrix(C, codegeneracy(j, n), n) for n in range(D) for j in range(n + 1)}
    return SimplicialAbGroup(D, ranks, faces, degens)


def dold_kan_iso(A: SimplicialAbGroup) -> SimplicialAbMap:
    """K(N(A)) → A, (σ, x) ↦ σ*(x); verified unimodular and simplicial."""
    N = normalize_N(A)
    K = dold_kan_K(N, A.D)
    bases = [moore_basis(A, n) for n in range(A.D + 1)]
    comps = {}
    for n in range(A.D + 1):
        blocks = []
        for k, sigma, off in _summands(N, n)[0]:
            if N.rank(k):
                blocks.append((0, off, A._structure(sigma, k) @ bases[k]))
        comps[n] = assemble(A.rank(n), K.rank(n), blocks)
    phi = SimplicialAbMap(K, A, comps)
    if not phi.is_isomorphism():
        raise StructuralError("Dold-Kan comparison K(N(A)) → A is not levelwise invertible")
    if not phi.commutes():
        raise StructuralError("Dold-Kan comparison K(N(A)) → A does not commute with the structure maps")
    return phi


def moore_projection(A: SimplicialAbGroup, n: int) -> IntMatrix:
    """Projection A_n → N_n (Moore coordinates) along the degenerate subgroup."""
    if not 0 <= n <= A.D:
        raise RangeError(f"level {n} outside 0..{A.D}")
    return _projections(A)[n]


def _projections(A):
    """Moore projections for every level, sharing one Dold-Kan comparison."""
    phi = dold_kan_iso(A)
    out = []
    for n in range(A.D + 1):
        inverse = inverse_unimodular(phi.components[n])
        keep = moore_basis(A, n).cols
        out.append(inverse.row_slice(inverse.rows - keep, inverse.rows))
    return out


def eilenberg_maclane(rank: int, n: int, D: int) -> SimplicialAbGroup:
    """K(Z^rank, n) truncated at D."""
    return dold_kan_K(ChainComplex.concentrated(n, rank), D)


def homotopy_groups(A: SimplicialAbGroup, i: int) -> HomologyGroup:
    if not 0 <= i <= A.D - 1:
        raise RangeError(f"π_{i} is outside the trusted range 0..{A.D - 1}")
    return homology(normalize_N(A), i)


# --- ======================================================= ---
# --- FREE FUNCTORS AND LEVELWISE OPERATIONS                  ---
# --- ======================================================= ---

def _free(X: SimplicialSet, D: int, reduced: bool) -> SimplicialAbGroup:
    bases = [[r for r in X.simplices(n) if not (reduced and X.is_base(r))] for n in range(D + 1)]
    index = [{r: i for i, r in enumerate(b)} for b in bases]

    def matrix(n_from, n_to, op):
        table = [[0] * len(bases[n_from]) for _ in bases[n_to]]
        for col, r in enumerate(bases[n_from]):
            img = op(r)
            if reduced and X.is_base(img):
                continue
            table[index[n_to][img]][col] += 1
        return IntMatrix(table, rows=len(bases[n_to]), cols=len(bases[n_from]))

    faces = {(n, i): matrix(n, n - 1, lambda r, i=i: X.face(r, i)) for n in range(1, D + 1) for i in range(n + 1)}
    degens = {(n, j): matrix(n, n + 1, lambda r, j=j: X.degeneracy(r, j)) for n in range(D) for j in range(n + 1)}
    return SimplicialAbGroup(D, tuple(len(b) for b in bases), faces, degens)


def free_reduced_Z(X: SimplicialSet, D: int) -> SimplicialAbGroup:
    """Z̃(X) = Z(X)/Z(*), truncated at D."""
    if not X.pointed:
        raise PreconditionError("the reduced free functor needs a pointed simplicial set")
    return _free(X, D, reduced=True)


def free_Z(X: SimplicialSet, D: int) -> SimplicialAbGroup:
    return _free(X, D, reduced=False)


def tensor_levelwise(A: SimplicialAbGroup, B: SimplicialAbGroup) -> SimplicialAbGroup:
    """(A⊗B)_n = A_n⊗B_n with basis a_i⊗b_j at position i·rank B_n + j."""
    D = min(A.D, B.D)
    ranks = tuple(A.rank(n) * B.rank(n) for n in range(D + 1))
    faces = {(n, i): A.face(n, i).kron(B.face(n, i)) for n in range(1, D + 1) for i in range(n + 1)}
    degens = {(n, j): A.degen(n, j).kron(B.degen(n, j)) for n in range(D) for j in range(n + 1)}
    return SimplicialAbGroup(D, ranks, faces, degens)


def direct_sum(A: SimplicialAbGroup, B: SimplicialAbGroup) -> SimplicialAbGroup:
    D = min(A.D, B.D)
    ranks = tuple(A.rank(n) + B.rank(n) for n in range(D + 1))
    faces = {(n, i): IntMatrix.block_diag([A.face(n, i), B.face(n, i)]) for n in range(1, D + 1) for i in range(n + 1)}
    degens = {(n, j): IntMatrix.block_diag([A.degen(n, j), B.degen(n, j)]) for n in range(D) for j in range(n + 1)}
    return SimplicialAbGroup(D, ranks, faces, degens)


def smash_comparison(E: SimplicialSet, F: SimplicialSet, D: int) -> SimplicialAbMap:
    """The canonical map Z̃(E)⊗Z̃(F) → Z̃(E∧F): x⊗y ↦ (x, y)."""
    S = smash_structure(E, F)
    source = tensor_levelwise(free_reduced_Z(E, D), free_reduced_Z(F, D))
    target = free_reduced_Z(S.space, D)
    comps = {}
    for n in range(D + 1):
        left = [r for r in E.simplices(n) if not E.is_base(r)]
        right = [r for r in F.simplices(n) if not F.is_base(r)]
        index = {r: i for i, r in enumerate(r for r in S.space.simplices(n) if not S.space.is_base(r))}
        table = [[0] * (len(left) * len(right)) for _ in range(target.rank(n))]
        for a, x in enumerate(left):
            for b, y in enumerate(right):
                table[index[S.simplex_for(x, y)]][a * len(right) + b] = 1
        comps[n] = IntMatrix(table, rows=target.rank(n), cols=source.rank(n))
    return SimplicialAbMap(source, target, comps)


# --- ======================================================= ---
# --- BAR CONSTRUCTION                                        ---
# --- ======================================================= ---

def _bar_face(n, i):
    """d_i: G^n → G^{n-1}: drop first, multiply neighbours, drop last."""
    table = [[0] * n for _ in range(n - 1)]
    for r in range(n - 1):
        if i == 0:
            table[r][r + 1] = 1
        elif i == n:
            table[r][r] = 1
        else:
            src = r if r < i - 1 else r + 1
            table[r][src] = 1
            if r == i - 1:
                table[r][r] = 1
                table[r][r + 1] = 1
    return IntMatrix(table, rows=n - 1, cols=n)


def _bar_degen(n, j):
    """s_j: G^n → G^{n+1}: insert the unit in position j."""
    table = [[0] * n for _ in range(n + 1)]
    for r in range(n + 1):
        if r < j:
            table[r][r] = 1
        elif r > j:
            table[r][r - 1] = 1
    return IntMatrix(table, rows=n + 1, cols=n)


def bar_B(A: SimplicialAbGroup) -> SimplicialAbGroup:
    """Diagonal of the bisimplicial group (p, q) ↦ A_q^p."""
    D = A.D
    ranks = tuple(n * A.rank(n) for n in range(D + 1))
    faces = {(n, i): _bar_face(n, i).kron(A.face(n, i)) for n in range(1, D + 1) for i in range(n + 1)}
    degens = {(n, j): _bar_degen(n, j).kron(A.degen(n, j)) for n in range(D) for j in range(n + 1)}
    return SimplicialAbGroup(D, ranks, faces, degens)


def bar_iterated(A: SimplicialAbGroup, p: int) -> SimplicialAbGroup:
    if p < 0:
        raise ParameterError(f"bar iteration count must be nonnegative, got {p}")
    for _ in range(p):
        A = bar_B(A)
    return A


# --- ======================================================= ---
# --- EILENBERG-ZILBER                                        ---
# --- ======================================================= ---

@dataclass(frozen=True, eq=False)
class EZPair:
    shuffle: ChainMap
    aw: ChainMap

    def strict_retraction(self) -> bool:
        """aw ∘ shuffle = id in every degree."""
        composite = self.aw.compose(self.shuffle)
        return all(composite[n].is_identity() for n in composite.source.degrees)


def shuffles(p, q):
    """(p, q)-shuffles as (μ, ν, sign) with μ ⊔ ν = {0..p+q-1}, |μ| = p."""
    n = p + q
    for mu in itertools.combinations(range(n), p):
        nu = tuple(j for j in range(n) if j not in mu)
        inversions = sum(m - i for i, m in enumerate(mu))
        yield mu, nu, -1 if inversions % 2 else 1


def ez_maps(A: SimplicialAbGroup, B: SimplicialAbGroup) -> EZPair:
    """Shuffle and Alexander-Whitney maps between N(A)⊗N(B) and N(A⊗B), up to degree min(D_A, D_B)."""
    D = min(A.D, B.D)
    AB = tensor_levelwise(A, B)
    NA, NB, NAB = normalize_N(A), normalize_N(B), normalize_N(AB)
    left = truncate_stupid(tensor(NA, NB), D)
    bases_a = [moore_basis(A, n) for n in range(D + 1)]
    bases_b = [moore_basis(B, n) for n in range(D + 1)]
    bases_ab = [moore_basis(AB, n) for n in range(D + 1)]
    pi_a, pi_b, pi_ab = _projections(A), _projections(B), _projections(AB)

    shuffle, aw = {}, {}
    for n in range(D + 1):
        layout = [(p, n - p) for p in range(n + 1) if NA.rank(p) * NB.rank(n - p)]
        sh_blocks, aw_blocks, off = [], [], 0
        for p, q in layout:
            total = IntMatrix.zeros(AB.rank(n), NA.rank(p) * NB.rank(q))
            for mu, nu, sign in shuffles(p, q):
                ta = A._structure(theta_of(nu, n), p) @ bases_a[p]
                tb = B._structure(theta_of(mu, n), q) @ bases_b[q]
                total = total + ta.kron(tb) * sign
            sh_blocks.append((0, off, pi_ab[n] @ total))
            front = A._structure(tuple(range(p + 1)), n)
            back = B._structure(tuple(range(p, n + 1)), n)
            aw_blocks.append((off, 0, (pi_a[p] @ front).kron(pi_b[q] @ back) @ bases_ab[n]))
            off += NA.rank(p) * NB.rank(q)
        shuffle[n] = assemble(NAB.rank(n), off, sh_blocks)
        aw[n] = assemble(off, NAB.rank(n), aw_blocks)
    log.debug("[EZ] built shuffle and Alexander-Whitney maps through degree %d", D)
    return EZPair(ChainMap(left, NAB, shuffle), ChainMap(NAB, left, aw))


# --- ======================================================= ---
# --- KAN PROPERTY                                            ---
# --- ======================================================= ---

def _column(values, rank):
    values = [int(v) for v in values]
    if len(values) != rank:
        raise ParameterError(f"element has {len(values)} coordinates, expected {rank}")
    return IntMatrix([[v] for v in values], rows=rank, cols=1)


def horn_filler(A: SimplicialAbGroup, n: int, k: int, faces: Sequence) -> tuple:
    """
    Fill the horn Λⁿ_k: given y_i ∈ A_{n-1} for i ≠ k, return x ∈ A_n with d_i x = y_i.
    ``faces`` has n + 1 entries with None at position k, or n entries with position k omitted.
    """
    if n < 1 or not 0 <= k <= n:
        raise ParameterError(f"invalid horn ({n},{k})")
    if n > A.D:
        raise RangeError(f"horn dimension {n} exceeds truncation {A.D}")
    faces = list(faces)
    if len(faces) == n:
        faces.insert(k, None)
    if len(faces) != n + 1:
        raise ParameterError(f"a ({n},{k}) horn needs {n} faces")
    y = {i: _column(f, A.rank(n - 1)) for i, f in enumerate(faces) if i != k}
    if n >= 2:
        for j in range(n + 1):
            for i in range(j):
                if k in (i, j):
                    continue
                if A.face(n - 1, i) @ y[j] != A.face(n - 1, j - 1) @ y[i]:
                    raise PreconditionError(f"incompatible horn: d{i} y{j} ≠ d{j - 1} y{i}")
    w = IntMatrix.zeros(A.rank(n), 1)
    for r in range(k):
        w = w + A.degen(n - 1, r) @ (y[r] - A.face(n, r) @ w)
    for r in range(n, k, -1):
        w = w + A.degen(n - 1, r - 1) @ (y[r] - A.face(n, r) @ w)
    for i, target in y.items():
        if A.face(n, i) @ w != target:
            raise StructuralError(f"horn filler fails d{i}")
    return tuple(int(v) for v in w.entries)
