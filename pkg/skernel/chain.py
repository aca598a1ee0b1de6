# FILE: skernel/chain.py
"""Exact integer linear algebra and bounded chain complexes.

All matrices are ``IntMatrix`` values backed by numpy object arrays, so entries
are Python integers of unbounded size. Complexes are homologically graded:
``d(n)`` maps degree ``n`` to degree ``n - 1`` and has shape
``rank(n - 1) x rank(n)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from skernel.errors import InputError, StructuralError

_INT64_SAFE = 2 ** 62


# --- ======================================================= ---
# --- INTEGER MATRICES                                        ---
# --- ======================================================= ---

def _object_array(flat, rows, cols):
    arr = np.empty(rows * cols, dtype=object)
    if rows * cols:
        arr[:] = [int(x) for x in flat]
    return arr.reshape(rows, cols)


def _max_abs(arr):
    return max((abs(x) for x in arr.flat), default=0)


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("_a",)

    def __init__(self, data=(), rows=None, cols=None):
        if isinstance(data, IntMatrix):
            arr = data._a
        elif isinstance(data, np.ndarray):
            if data.ndim != 2:
                raise StructuralError(f"expected a 2-dimensional array, got shape {data.shape}")
            arr = _object_array(data.ravel().tolist(), data.shape[0], data.shape[1])
        else:
            table = [list(row) for row in data]
            if rows is None:
                rows = len(table)
            if cols is None:
                cols = len(table[0]) if table else 0
            if len(table) != rows or any(len(row) != cols for row in table):
                raise StructuralError(f"ragged or mis-sized matrix data for shape ({rows}, {cols})")
            arr = _object_array([x for row in table for x in row], rows, cols)
        arr.flags.writeable = False
        self._a = arr

    @classmethod
    def _wrap(cls, arr):
        obj = object.__new__(cls)
        arr.flags.writeable = False
        obj._a = arr
        return obj

    # --- constructors ---
    @classmethod
    def zeros(cls, rows, cols):
        return cls._wrap(_object_array([0] * (rows * cols), rows, cols))

    @classmethod
    def identity(cls, n):
        arr = _object_array([0] * (n * n), n, n)
        for i in range(n):
            arr[i, i] = 1
        return cls._wrap(arr)

    @classmethod
    def from_flat(cls, rows, cols, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise StructuralError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        return cls._wrap(_object_array(entries, rows, cols))

    @staticmethod
    def hstack(mats: Sequence["IntMatrix"], rows=None):
        mats = list(mats)
        if not mats:
            return IntMatrix.zeros(rows or 0, 0)
        if any(m.rows != mats[0].rows for m in mats):
            raise StructuralError("hstack needs equal row counts")
        return IntMatrix._wrap(np.hstack([m._a for m in mats]).astype(object))

    @staticmethod
    def vstack(mats: Sequence["IntMatrix"], cols=None):
        mats = list(mats)
        if not mats:
            return IntMatrix.zeros(0, cols or 0)
        if any(m.cols != mats[0].cols for m in mats):
            raise StructuralError("vstack needs equal column counts")
        return IntMatrix._wrap(np.vstack([m._a for m in mats]).astype(object))

    @staticmethod
    def block_diag(mats: Sequence["IntMatrix"]):
        mats = list(mats)
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        placed, r, c = [], 0, 0
        for m in mats:
            placed.append((r, c, m))
            r += m.rows
            c += m.cols
        return assemble(rows, cols, placed)

    # --- shape ---
    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def entries(self):
        return tuple(self._a.flat)

    def tolist(self):
        return self._a.tolist()

    def column(self, j):
        return IntMatrix._wrap(self._a[:, j:j + 1].copy())

    def columns(self, idx):
        return IntMatrix._wrap(self._a[:, list(idx)].reshape(self.rows, len(idx)).copy())

    def row_slice(self, start, stop):
        return IntMatrix._wrap(self._a[start:stop, :].copy())

    def __getitem__(self, key):
        return self._a[key]

    def is_zero(self):
        return all(x == 0 for x in self._a.flat)

    def is_identity(self):
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    # --- arithmetic ---
    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise StructuralError(f"cannot multiply {self.shape} by {other.shape}")
        r, k, c = self.rows, self.cols, other.cols
        if r == 0 or c == 0 or k == 0:
            return IntMatrix.zeros(r, c)
        if _max_abs(self._a) * _max_abs(other._a) * k < _INT64_SAFE:
            prod = self._a.astype(np.int64) @ other._a.astype(np.int64)
            return IntMatrix._wrap(_object_array(prod.ravel().tolist(), r, c))
        return IntMatrix._wrap(self._a.dot(other._a))

    def __add__(self, other):
        if self.shape != other.shape:
            raise StructuralError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix._wrap(self._a + other._a)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise StructuralError(f"cannot subtract {other.shape} from {self.shape}")
        return IntMatrix._wrap(self._a - other._a)

    def __neg__(self):
        return IntMatrix._wrap(-self._a)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return IntMatrix._wrap(self._a * int(scalar))

    __rmul__ = __mul__

    @property
    def T(self):
        return IntMatrix._wrap(self._a.T.copy())

    def kron(self, other):
        a, b = self._a, other._a
        out = np.multiply.outer(a, b).transpose(0, 2, 1, 3)
        return IntMatrix._wrap(out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))

    # --- identity ---
    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and all(x == y for x, y in zip(self._a.flat, other._a.flat))

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()}, rows={self.rows}, cols={self.cols})"


def assemble(rows, cols, blocks: Iterable[tuple]):
    """Sum the blocks ``(row_offset, col_offset, IntMatrix)`` into a zero ``rows x cols`` matrix."""
    table = [[0] * cols for _ in range(rows)]
    for r0, c0, block in blocks:
        for i, row in enumerate(block.tolist()):
            target = table[r0 + i]
            for j, x in enumerate(row):
                if x:
                    target[c0 + j] += x
    return IntMatrix(table, rows=rows, cols=cols)


# --- ======================================================= ---
# --- SMITH FORM AND ECHELON ENGINES                          ---
# --- ======================================================= ---

def _egcd(a, b):
    """Return (g, x, y) with g = x*a + y*b = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _comb(x, u, y, v):
    return [x * a + y * b for a, b in zip(u, v)]


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class SmithForm:
    """
    Smith normal form by min-abs pivoting.

    Rows and columns are cleared with the current pivot; whenever a remainder
    survives, the smallest remaining entry becomes the new pivot. Divisibility
    is enforced by folding an offending row into the pivot row.

    Parameters
    ----------
    matrix: IntMatrix
    track: bool
        keep the unimodular transforms (U, V) with D = U @ M @ V
    """

    def __init__(self, matrix: IntMatrix, track=True):
        self.num_rows, self.num_cols = matrix.shape
        self.A = matrix.tolist()
        self.track = track
        self.left = _eye(self.num_rows) if track else None
        self.right = _eye(self.num_cols) if track else None

    def compute(self):
        A = self.A
        s = 0
        while s < min(self.num_rows, self.num_cols):
            pivot = self._min_abs(s)
            if pivot is None:
                break
            self._move_to(s, pivot)
            while True:
                if not self._clear(s):
                    self._move_to(s, self._min_abs(s))
                    continue
                bad = self._non_divisible(s)
                if bad is None:
                    break
                self._add_row(s, bad, 1)
            if A[s][s] < 0:
                self._negate_row(s)
            s += 1
        return self

    def factors(self):
        n = min(self.num_rows, self.num_cols)
        return tuple(self.A[i][i] for i in range(n) if self.A[i][i] != 0)

    def result(self):
        return (IntMatrix(self.left, self.num_rows, self.num_rows),
                IntMatrix(self.A, self.num_rows, self.num_cols),
                IntMatrix(self.right, self.num_cols, self.num_cols))

    def _min_abs(self, s):
        best, where = None, None
        for i in range(s, self.num_rows):
            row = self.A[i]
            for j in range(s, self.num_cols):
                x = row[j]
                if x and (best is None or abs(x) < best):
                    best, where = abs(x), (i, j)
                    if best == 1:
                        return where
        return where

    def _move_to(self, s, where):
        i, j = where
        if i != s:
            self._swap_rows(s, i)
        if j != s:
            self._swap_cols(s, j)

    def _clear(self, s):
        A = self.A
        p = A[s][s]
        clean = True
        for i in range(s + 1, self.num_rows):
            if A[i][s]:
                self._add_row(i, s, -(A[i][s] // p))
                clean = clean and A[i][s] == 0
        for j in range(s + 1, self.num_cols):
            if A[s][j]:
                self._add_col(j, s, -(A[s][j] // p))
                clean = clean and A[s][j] == 0
        return clean

    def _non_divisible(self, s):
        p = self.A[s][s]
        for i in range(s + 1, self.num_rows):
            row = self.A[i]
            for j in range(s + 1, self.num_cols):
                if row[j] % p:
                    return i
        return None

    def _swap_rows(self, a, b):
        self.A[a], self.A[b] = self.A[b], self.A[a]
        if self.track:
            self.left[a], self.left[b] = self.left[b], self.left[a]

    def _swap_cols(self, a, b):
        for row in self.A:
            row[a], row[b] = row[b], row[a]
        if self.track:
            for row in self.right:
                row[a], row[b] = row[b], row[a]

    def _add_row(self, target, source, k):
        """add k times row source to row target"""
        self.A[target] = [x + k * y for x, y in zip(self.A[target], self.A[source])]
        if self.track:
            self.left[target] = [x + k * y for x, y in zip(self.left[target], self.left[source])]

    def _add_col(self, target, source, k):
        """add k times column source to column target"""
        for row in self.A:
            row[target] += k * row[source]
        if self.track:
            for row in self.right:
                row[target] += k * row[source]

    def _negate_row(self, s):
        self.A[s] = [-x for x in self.A[s]]
        if self.track:
            self.left[s] = [-x for x in self.left[s]]


def smith_normal_form(M: IntMatrix):
    """Return (U, D, V) with D = U @ M @ V, U and V unimodular, D diagonal with d1 | d2 | ..."""
    return SmithForm(M, track=True).compute().result()


def invariant_factors(M: IntMatrix):
    """Nonzero diagonal of the Smith form of M (all positive, divisibility ordered)."""
    if M.rows == 0 or M.cols == 0:
        return ()
    return SmithForm(M, track=False).compute().factors()


def rank(M: IntMatrix):
    return len(invariant_factors(M))


def is_unimodular(M: IntMatrix):
    return M.rows == M.cols and all(f == 1 for f in invariant_factors(M)) and rank(M) == M.rows


def _row_echelon(table, ncols, track):
    """Integer row echelon form by extended-gcd row combinations (in place)."""
    m = len(table)
    T = _eye(m) if track else None
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = table[i][c]
            if b == 0:
                continue
            a = table[r][c]
            g, x, y = _egcd(a, b)
            ag, bg = a // g, b // g
            table[r], table[i] = _comb(x, table[r], y, table[i]), _comb(-bg, table[r], ag, table[i])
            if track:
                T[r], T[i] = _comb(x, T[r], y, T[i]), _comb(-bg, T[r], ag, T[i])
        if table[r][c] == 0:
            continue
        if table[r][c] < 0:
            table[r] = [-v for v in table[r]]
            if track:
                T[r] = [-v for v in T[r]]
        pivots.append(c)
        r += 1
    return table, T, pivots


def _reduce_above(table, pivots):
    for r, c in enumerate(pivots):
        p = table[r][c]
        for t in range(r):
            q = table[t][c] // p
            if q:
                table[t] = [x - q * y for x, y in zip(table[t], table[r])]
    return table


def hermite_normal_form(M: IntMatrix) -> IntMatrix:
    """Canonical basis of the row lattice of M: echelon rows, positive pivots, reduced above pivots."""
    table, _, pivots = _row_echelon(M.tolist(), M.cols, track=False)
    table = _reduce_above(table[:len(pivots)], pivots)
    return IntMatrix(table, rows=len(pivots), cols=M.cols)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Saturated basis (as columns, in Hermite form) of {x : M x = 0}."""
    n = M.cols
    table, T, pivots = _row_echelon(M.T.tolist(), M.rows, track=True)
    kernel_rows = T[len(pivots):]
    if not kernel_rows:
        return IntMatrix.zeros(n, 0)
    return hermite_normal_form(IntMatrix(kernel_rows, rows=len(kernel_rows), cols=n)).T


def lattice_coordinates(B: IntMatrix, X: IntMatrix) -> IntMatrix:
    """Solve B @ Y = X exactly for a basis B (independent columns)."""
    if B.rows != X.rows:
        raise StructuralError(f"basis has {B.rows} rows but targets have {X.rows}")
    k = B.cols
    table, T, pivots = _row_echelon(B.tolist(), k, track=True)
    if len(pivots) != k:
        raise StructuralError("basis columns are not linearly independent")
    TX = (IntMatrix(T, rows=B.rows, cols=B.rows) @ X).tolist() if B.rows else []
    for r in range(k, B.rows):
        if any(TX[r]):
            raise StructuralError("vector is not in the span of the basis")
    Y = [[0] * X.cols for _ in range(k)]
    for col in range(X.cols):
        for j in range(k - 1, -1, -1):
            acc = TX[j][col] - sum(table[j][l] * Y[l][col] for l in range(j + 1, k))
            q, rem = divmod(acc, table[j][j])
            if rem:
                raise StructuralError("vector is not in the lattice spanned by the basis")
            Y[j][col] = q
    return IntMatrix(Y, rows=k, cols=X.cols)


def span_contains(B: IntMatrix, X: IntMatrix) -> bool:
    """True iff every column of X is an integer combination of the columns of B."""
    basis = hermite_normal_form(B.T).T if B.cols else IntMatrix.zeros(B.rows, 0)
    try:
        lattice_coordinates(basis, X)
    except StructuralError:
        return False
    return True


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    if not is_unimodular(M):
        raise StructuralError("matrix is not unimodular")
    return lattice_coordinates(M, IntMatrix.identity(M.rows))


# --- ======================================================= ---
# --- HOMOLOGY GROUPS                                         ---
# --- ======================================================= ---

_GROUP_TERM = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


@dataclass(frozen=True)
class HomologyGroup:
    """Z^free_rank + Z/t1 + Z/t2 + ... with t1 | t2 | ..."""
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        torsion = tuple(int(t) for t in self.torsion)
        if self.free_rank < 0:
            raise StructuralError("free rank must be nonnegative")
        if any(t < 2 for t in torsion):
            raise StructuralError(f"torsion coefficients must be >= 2, got {torsion}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise StructuralError(f"torsion coefficients must form a divisibility chain, got {torsion}")
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def from_relations(cls, generators: int, relations: IntMatrix):
        """Cokernel of the relation columns inside Z^generators."""
        factors = invariant_factors(relations)
        return cls(generators - len(factors), tuple(f for f in factors if f > 1))

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        if text == "0":
            return cls()
        free, torsion = 0, []
        for term in text.split("+"):
            m = _GROUP_TERM.match(term.strip())
            if not m:
                raise InputError(f"cannot read group term '{term.strip()}'")
            if m.group(2):
                torsion.append(int(m.group(2)))
            else:
                free += int(m.group(1) or 1)
        return cls(free, tuple(torsion))

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


# --- ======================================================= ---
# --- CHAIN COMPLEXES AND MAPS                                ---
# --- ======================================================= ---

@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Bounded complex of free abelian groups in degrees min_deg..max_deg."""
    min_deg: int
    max_deg: int
    ranks: tuple
    differentials: Mapping[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        if self.max_deg < self.min_deg:
            raise StructuralError(f"max degree {self.max_deg} below min degree {self.min_deg}")
        ranks = tuple(int(r) for r in self.ranks)
        if len(ranks) != self.max_deg - self.min_deg + 1 or any(r < 0 for r in ranks):
            raise StructuralError(f"ranks {ranks} do not cover degrees {self.min_deg}..{self.max_deg}")
        object.__setattr__(self, "ranks", ranks)

        diffs = {}
        for n, m in dict(self.differentials).items():
            m = IntMatrix(m) if not isinstance(m, IntMatrix) else m
            expected = (self.rank(n - 1), self.rank(n))
            if m.shape != expected:
                raise StructuralError(f"d({n}) has shape {m.shape}, expected {expected}")
            if self.min_deg < n <= self.max_deg:
                diffs[n] = m
            elif not m.is_zero():
                raise StructuralError(f"d({n}) lies outside degrees {self.min_deg}..{self.max_deg}")
        for n in range(self.min_deg + 1, self.max_deg + 1):
            diffs.setdefault(n, IntMatrix.zeros(self.rank(n - 1), self.rank(n)))
        object.__setattr__(self, "differentials", MappingProxyType(diffs))

        for n in range(self.min_deg + 2, self.max_deg + 1):
            if not (diffs[n - 1] @ diffs[n]).is_zero():
                raise StructuralError(f"d∘d ≠ 0 at degree {n}: d({n - 1})·d({n}) is nonzero")

    # --- constructors ---
    @classmethod
    def zero(cls, degree=0):
        return cls(degree, degree, (0,), {})

    @classmethod
    def concentrated(cls, degree, rank=1):
        return cls(degree, degree, (rank,), {})

    @classmethod
    def from_dict(cls, ranks: Mapping[int, int], d: Mapping[int, object] = None):
        ranks = {int(k): int(v) for k, v in ranks.items()}
        if not ranks:
            return cls.zero()
        lo, hi = min(ranks), max(ranks)
        d = {int(k): v for k, v in (d or {}).items()}
        return cls(lo, hi, tuple(ranks.get(n, 0) for n in range(lo, hi + 1)), d)

    # --- access ---
    @property
    def degrees(self):
        return range(self.min_deg, self.max_deg + 1)

    def rank(self, n):
        if self.min_deg <= n <= self.max_deg:
            return self.ranks[n - self.min_deg]
        return 0

    def d(self, n):
        m = self.differentials.get(n)
        if m is None:
            return IntMatrix.zeros(self.rank(n - 1), self.rank(n))
        return m

    def support(self):
        return [n for n in self.degrees if self.rank(n)]

    def homology(self, n):
        return homology(self, n)

    def _signature(self):
        ranks = tuple((n, self.rank(n)) for n in self.support())
        diffs = tuple((n, self.d(n)) for n in self.degrees if self.rank(n) and self.rank(n - 1))
        return ranks, diffs

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        ranks = ", ".join(f"{n}:{self.rank(n)}" for n in self.degrees)
        return f"ChainComplex({{{ranks}}})"


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise matrices target.rank(n) x source.rank(n), commuting with d."""
    source: ChainComplex
    target: ChainComplex
    components: Mapping[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        lo = min(self.source.min_deg, self.target.min_deg)
        hi = max(self.source.max_deg, self.target.max_deg)
        comps = {}
        for n, m in dict(self.components).items():
            m = IntMatrix(m) if not isinstance(m, IntMatrix) else m
            expected = (self.target.rank(n), self.source.rank(n))
            if m.shape != expected:
                raise StructuralError(f"chain map component {n} has shape {m.shape}, expected {expected}")
            if lo <= n <= hi:
                comps[n] = m
        for n in range(lo, hi + 1):
            comps.setdefault(n, IntMatrix.zeros(self.target.rank(n), self.source.rank(n)))
        object.__setattr__(self, "components", MappingProxyType(comps))
        for n in range(lo, hi + 2):
            if self.target.d(n) @ self[n] != self[n - 1] @ self.source.d(n):
                raise StructuralError(f"chain map does not commute with d at degree {n}")

    def __getitem__(self, n):
        m = self.components.get(n)
        if m is None:
            return IntMatrix.zeros(self.target.rank(n), self.source.rank(n))
        return m

    @classmethod
    def identity(cls, C: ChainComplex):
        return cls(C, C, {n: IntMatrix.identity(C.rank(n)) for n in C.degrees})

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """self ∘ inner"""
        if inner.target != self.source:
            raise StructuralError("cannot compose chain maps: target and source differ")
        degrees = set(inner.components) | set(self.components)
        return ChainMap(inner.source, self.target, {n: self[n] @ inner[n] for n in degrees})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        degrees = set(self.components) | set(other.components)
        return (self.source == other.source and self.target == other.target
                and all(self[n] == other[n] for n in degrees))

    __hash__ = None


# --- ======================================================= ---
# --- HOMOLOGY                                                ---
# --- ======================================================= ---

def homology(C: ChainComplex, n: int) -> HomologyGroup:
    """ker d(n) / im d(n+1) via Smith normal form."""
    rank_n = C.rank(n)
    if rank_n == 0:
        return HomologyGroup()
    outgoing = len(invariant_factors(C.d(n)))
    incoming = invariant_factors(C.d(n + 1))
    return HomologyGroup(rank_n - outgoing - len(incoming), tuple(f for f in incoming if f > 1))


def cycle_data(C: ChainComplex, n: int):
    """(Z, R): a cycle basis Z (columns) and the boundaries in Z-coordinates."""
    Z = kernel_basis(C.d(n))
    R = lattice_coordinates(Z, C.d(n + 1))
    return Z, R


@dataclass(frozen=True)
class DegreeVerdict:
    degree: int
    source: HomologyGroup
    target: HomologyGroup
    induced: IntMatrix
    iso: bool


def induced_map(f: ChainMap, n: int) -> DegreeVerdict:
    """f_* on H_n, as a matrix between cycle-basis coordinates."""
    Zs, Rs = cycle_data(f.source, n)
    Zt, Rt = cycle_data(f.target, n)
    A = lattice_coordinates(Zt, f[n] @ Zs)
    h_source = HomologyGroup.from_relations(Zs.cols, Rs)
    h_target = HomologyGroup.from_relations(Zt.cols, Rt)
    joined = IntMatrix.hstack([Rt, A], rows=Zt.cols)
    factors = invariant_factors(joined)
    surjective = len(factors) == Zt.cols and all(x == 1 for x in factors)
    # a surjection between isomorphic finitely generated groups is an isomorphism
    return DegreeVerdict(n, h_source, h_target, A, surjective and h_source == h_target)


@dataclass(frozen=True)
class QuasiIsoReport:
    passed: bool
    verdicts: tuple

    def __bool__(self):
        return self.passed

    def lines(self):
        for v in self.verdicts:
            mark = "iso" if v.iso else "NOT iso"
            yield f"H{v.degree}: {v.source} -> {v.target} ({mark})"


def check_quasi_iso(f: ChainMap, degrees: Iterable[int] = None) -> QuasiIsoReport:
    if not isinstance(f, ChainMap):
        raise StructuralError("check_quasi_iso needs a ChainMap")
    for n, m in f.components.items():
        if m.shape != (f.target.rank(n), f.source.rank(n)):
            raise StructuralError(f"chain map component {n} does not match its source/target")
    if degrees is None:
        lo = min(f.source.min_deg, f.target.min_deg)
        hi = max(f.source.max_deg, f.target.max_deg)
        degrees = range(lo, hi + 1)
    verdicts = tuple(induced_map(f, n) for n in degrees)
    return QuasiIsoReport(all(v.iso for v in verdicts), verdicts)


# --- ======================================================= ---
# --- CONSTRUCTIONS ON COMPLEXES                              ---
# --- ======================================================= ---

def shift(C: ChainComplex, p: int) -> ChainComplex:
    """C[p]: degree n of C sits in degree n + p, with d multiplied by (-1)^p."""
    sign = -1 if p % 2 else 1
    return ChainComplex(C.min_deg + p, C.max_deg + p, C.ranks,
                        {n + p: m * sign for n, m in C.differentials.items()})


def truncate_good(C: ChainComplex, n: int) -> ChainComplex:
    """τ≥n C: C above n, ker d(n) in degree n, zero below."""
    if n > C.max_deg:
        return ChainComplex.zero(n)
    if n < C.min_deg:
        return C
    Z = kernel_basis(C.d(n))
    ranks = (Z.cols,) + tuple(C.rank(k) for k in range(n + 1, C.max_deg + 1))
    d = {k: C.d(k) for k in range(n + 2, C.max_deg + 1)}
    if n + 1 <= C.max_deg:
        d[n + 1] = lattice_coordinates(Z, C.d(n + 1))
    return ChainComplex(n, C.max_deg, ranks, d)


def truncation_inclusion(C: ChainComplex, n: int) -> ChainMap:
    """The inclusion τ≥n C → C."""
    T = truncate_good(C, n)
    if n > C.max_deg:
        return ChainMap(T, C, {})
    if n < C.min_deg:
        return ChainMap.identity(C)
    comps = {n: kernel_basis(C.d(n))}
    comps.update({k: IntMatrix.identity(C.rank(k)) for k in range(n + 1, C.max_deg + 1)})
    return ChainMap(T, C, comps)


def truncate_stupid(C: ChainComplex, n: int) -> ChainComplex:
    """σ≤n C: C in degrees ≤ n, zero above."""
    if n >= C.max_deg:
        return C
    if n < C.min_deg:
        return ChainComplex.zero(C.min_deg)
    return ChainComplex(C.min_deg, n, C.ranks[: n - C.min_deg + 1],
                        {k: m for k, m in C.differentials.items() if k <= n})


def direct_sum(C: ChainComplex, C2: ChainComplex) -> ChainComplex:
    lo, hi = min(C.min_deg, C2.min_deg), max(C.max_deg, C2.max_deg)
    ranks = tuple(C.rank(n) + C2.rank(n) for n in range(lo, hi + 1))
    d = {n: IntMatrix.block_diag([C.d(n), C2.d(n)]) for n in range(lo + 1, hi + 1)}
    return ChainComplex(lo, hi, ranks, d)


def _tensor_layout(C, C2, n):
    blocks, off = [], 0
    for i in C.degrees:
        size = C.rank(i) * C2.rank(n - i)
        if size:
            blocks.append((i, n - i, off))
            off += size
    return blocks, off


def tensor(C: ChainComplex, C2: ChainComplex) -> ChainComplex:
    """Graded tensor product, d(a⊗b) = da⊗b + (-1)^|a| a⊗db; blocks ordered by the degree of a."""
    lo, hi = C.min_deg + C2.min_deg, C.max_deg + C2.max_deg
    layout = {n: _tensor_layout(C, C2, n) for n in range(lo, hi + 1)}
    ranks = tuple(layout[n][1] for n in range(lo, hi + 1))
    d = {}
    for n in range(lo + 1, hi + 1):
        below = {(i, j): off for i, j, off in layout[n - 1][0]}
        parts = []
        for i, j, off in layout[n][0]:
            if (i - 1, j) in below:
                parts.append((below[(i - 1, j)], off, C.d(i).kron(IntMatrix.identity(C2.rank(j)))))
            if (i, j - 1) in below:
                sign = -1 if i % 2 else 1
                parts.append((below[(i, j - 1)], off, IntMatrix.identity(C.rank(i)).kron(C2.d(j)) * sign))
        d[n] = assemble(layout[n - 1][1], layout[n][1], parts)
    return ChainComplex(lo, hi, ranks, d)


def _hom_layout(K, L, n):
    blocks, off = [], 0
    for i in K.degrees:
        size = L.rank(i + n) * K.rank(i)
        if size:
            blocks.append((i, off))
            off += size
    return blocks, off


def _hom_range(K, L):
    return L.min_deg - K.max_deg, L.max_deg - K.min_deg


def hom_complex(K: ChainComplex, L: ChainComplex) -> ChainComplex:
    """
    Hom(K, L)_n = prod_i Hom(K_i, L_{i+n}), each f_i vectorized row-major,
    with (df)_i = d_L f_i - (-1)^n f_{i-1} d_K.
    """
    lo, hi = _hom_range(K, L)
    layout = {n: _hom_layout(K, L, n) for n in range(lo, hi + 1)}
    ranks = tuple(layout[n][1] for n in range(lo, hi + 1))
    d = {}
    for n in range(lo + 1, hi + 1):
        below = dict(layout[n - 1][0])
        sign = -1 if n % 2 else 1
        parts = []
        for i, off in layout[n][0]:
            if i in below:
                parts.append((below[i], off, L.d(i + n).kron(IntMatrix.identity(K.rank(i)))))
            if i + 1 in below:
                post = IntMatrix.identity(L.rank(i + n)).kron(K.d(i + 1).T)
                parts.append((below[i + 1], off, post * (-sign)))
        d[n] = assemble(layout[n - 1][1], layout[n][1], parts)
    return ChainComplex(lo, hi, ranks, d)


def homotopy_class_group(K: ChainComplex, L: ChainComplex) -> HomologyGroup:
    """Chain maps K → L modulo chain homotopy: H_0 of Hom(K, L)."""
    return homology(hom_complex(K, L), 0)


def restriction_map(K: ChainComplex, n: int, L: ChainComplex) -> ChainMap:
    """Precomposition with σ≤n K → K, as a map Hom(K, L) → Hom(σ≤n K, L)."""
    Ks = truncate_stupid(K, n)
    source, target = hom_complex(K, L), hom_complex(Ks, L)
    comps = {}
    for m in source.degrees:
        src_blocks, src_total = _hom_layout(K, L, m)
        if not (target.min_deg <= m <= target.max_deg):
            continue
        tgt_blocks, tgt_total = _hom_layout(Ks, L, m)
        tgt = dict(tgt_blocks)
        parts = []
        for i, off in src_blocks:
            if i <= n and i in tgt:
                size = L.rank(i + m) * K.rank(i)
                parts.append((tgt[i], off, IntMatrix.identity(size)))
        comps[m] = assemble(tgt_total, src_total, parts)
    return ChainMap(source, target, comps)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """cone(f)_n = S_{n-1} ⊕ T_n with d = [[-d_S, 0], [f, d_T]]."""
    S, T = f.source, f.target
    lo, hi = min(S.min_deg + 1, T.min_deg), max(S.max_deg + 1, T.max_deg)
    ranks = tuple(S.rank(n - 1) + T.rank(n) for n in range(lo, hi + 1))
    d = {}
    for n in range(lo + 1, hi + 1):
        rows = S.rank(n - 2) + T.rank(n - 1)
        cols = S.rank(n - 1) + T.rank(n)
        d[n] = assemble(rows, cols, [
            (0, 0, -S.d(n - 1)),
            (S.rank(n - 2), 0, f[n - 1]),
            (S.rank(n - 2), S.rank(n - 1), T.d(n)),
        ])
    return ChainComplex(lo, hi, ranks, d)


# --- ======================================================= ---
# --- TRUNCATION TOWERS                                       ---
# --- ======================================================= ---

@dataclass(frozen=True)
class TowerReport:
    stabilization_index: int
    limit_group: HomologyGroup
    lim1_group: HomologyGroup
    hom_full: HomologyGroup
    exactness_verified: bool
    tower: tuple = ()
    lim1_tower: tuple = ()

    @property
    def lim1_vanishes(self) -> bool:
        return self.lim1_group.is_zero

    def lines(self):
        yield f"stabilization_index={self.stabilization_index}"
        for n, g in self.tower:
            yield f"Hom(sigma<={n} K, L)={g}"
        for n, g in self.lim1_tower:
            yield f"Hom(sigma<={n} K, L[-1])={g}"
        yield f"lim={self.limit_group}"
        yield f"lim1={self.lim1_group}"
        yield f"Hom(K, L)={self.hom_full}"
        yield f"exact={'yes' if self.exactness_verified else 'no'}"


def tower_lim1(K: ChainComplex, L: ChainComplex) -> HomologyGroup:
    """
    lim¹ of n ↦ Hom(σ≤n K, L) along the restriction maps, as the cokernel of
    1 - shift on ⊕ Hom(σ≤n K, L) in cycle coordinates. Above K.max_deg the tower
    is constant, so the top stage only enters through its image.
    """
    degrees = list(K.degrees)
    stages = [cycle_data(hom_complex(truncate_stupid(K, n), L), 0) for n in degrees]
    sizes = [Z.cols for Z, _ in stages]
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    rows = sum(sizes[:-1])
    blocks, col = [], 0
    for i, n in enumerate(degrees):
        if i < len(degrees) - 1:
            blocks.append((offsets[i], col, IntMatrix.identity(sizes[i])))
        if i > 0:
            restrict = induced_map(restriction_map(truncate_stupid(K, n), degrees[i - 1], L), 0)
            blocks.append((offsets[i - 1], col, -restrict.induced))
        col += sizes[i]
    for i, (_, R) in enumerate(stages[:-1]):
        blocks.append((offsets[i], col, R))
        col += R.cols
    return HomologyGroup.from_relations(rows, assemble(rows, col, blocks))


def sigma_tower_report(K: ChainComplex, L: ChainComplex) -> TowerReport:
    """The σ≤n tower of Hom groups, its limit and lim¹, and the comparison with Hom(K, L)."""
    support = K.support()
    stab = max(support) if support else K.min_deg
    L_down = shift(L, -1)
    tower, lim1 = [], []
    for n in K.degrees:
        Kn = truncate_stupid(K, n)
        tower.append((n, homotopy_class_group(Kn, L)))
        lim1.append((n, homotopy_class_group(Kn, L_down)))
    eventually_constant = all(truncate_stupid(K, n) == K for n in range(stab, K.max_deg + 1))
    limit_group = dict(tower)[stab]
    lim1_group = tower_lim1(K, L_down)
    hom_full = homotopy_class_group(K, L)
    restriction = induced_map(restriction_map(K, stab, L), 0)
    exact = eventually_constant and restriction.iso and hom_full == limit_group and lim1_group.is_zero
    return TowerReport(stab, limit_group, lim1_group, hom_full, exact, tuple(tower), tuple(lim1))
