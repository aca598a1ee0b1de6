# In file: skernel/tasks/utils.py

import numpy as np

from skernel.chain import ChainComplex, HomologyGroup, IntMatrix, inverse_unimodular
from skernel.simpab import SimplicialAbGroup, dold_kan_K
from skernel.simpset import SimplexRef, SimplicialSet

# --- Salts keep the generator streams of different suite cases independent ---
STREAMS = {
    "snf": 11,
    "tower": 12,
    "complexes": 13,
    "dold_kan": 21,
    "bar": 22,
    "ez": 23,
    "horns": 24,
    "spaces": 31,
    "wrap": 41,
}


def case_result(case, anchor, instances, failures):
    """Uniform payload returned by every suite task."""
    return {
        "case": case,
        "anchor": anchor,
        "instances": int(instances),
        "passed": not failures,
        "detail": "; ".join(failures[:3]),
    }


# --- ======================================================= ---
# --- SEEDED GENERATORS                                       ---
# --- ======================================================= ---

def generator(seed, stream):
    """A PCG64 generator for one suite case."""
    return np.random.Generator(np.random.PCG64([int(seed), STREAMS[stream]]))


def random_matrix(g, rows, cols, bound=9):
    values = g.integers(-bound, bound + 1, size=(rows, cols)).tolist()
    return IntMatrix(values, rows=rows, cols=cols)


def random_unimodular(g, n, steps=None):
    """Product of elementary row operations with small multipliers."""
    table = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        a, b = (int(x) for x in g.choice(n, size=2, replace=False))
        k = int(g.integers(-2, 3))
        table[a] = [x + k * y for x, y in zip(table[a], table[b])]
        if g.random() < 0.3:
            table[a], table[b] = table[b], table[a]
    return IntMatrix(table, rows=n, cols=n)


def random_complex(g, lo=0, hi=3, pieces=4, conjugate=True):
    """
    A bounded complex assembled from pieces Z (free) and Z --k--> Z (arrow), then
    conjugated degreewise by unimodular matrices. Returns the complex and its known homology.
    """
    basis = {n: 0 for n in range(lo, hi + 1)}
    entries = []
    free = {n: 0 for n in basis}
    torsion = {n: [] for n in basis}
    for _ in range(int(g.integers(1, pieces + 1))):
        if hi > lo and g.random() < 0.6:
            n = int(g.integers(lo, hi))
            k = int(g.choice([1, 1, 2, 3, 4, 6]))
            entries.append((n + 1, basis[n], basis[n + 1], k))
            basis[n] += 1
            basis[n + 1] += 1
            if k > 1:
                torsion[n].append(k)
        else:
            n = int(g.integers(lo, hi + 1))
            basis[n] += 1
            free[n] += 1
    d = {}
    for n in range(lo + 1, hi + 1):
        table = [[0] * basis[n] for _ in range(basis[n - 1])]
        for deg, row, col, k in entries:
            if deg == n:
                table[row][col] = k
        d[n] = IntMatrix(table, rows=basis[n - 1], cols=basis[n])
    if conjugate:
        P = {n: random_unimodular(g, basis[n]) for n in basis}
        d = {n: P[n - 1] @ m @ inverse_unimodular(P[n]) for n, m in d.items()}
    C = ChainComplex(lo, hi, tuple(basis[n] for n in range(lo, hi + 1)), d)
    expected = {n: _group(free[n], torsion[n]) for n in basis}
    return C, expected


def _group(free, torsion):
    """Z^free + ⊕ Z/t, put into divisibility-chain form."""
    gens = free + len(torsion)
    table = [[t if r == free + i else 0 for i, t in enumerate(torsion)] for r in range(gens)]
    return HomologyGroup.from_relations(gens, IntMatrix(table, rows=gens, cols=len(torsion)))


def random_sag(g, D, pieces=3):
    """K(C) for a random nonnegative complex, conjugated levelwise by unimodular matrices."""
    C, expected = random_complex(g, 0, max(D - 1, 0), pieces=pieces)
    K = dold_kan_K(C, D)
    P = [random_unimodular(g, r) for r in K.ranks]
    Pinv = [inverse_unimodular(p) for p in P]
    faces = {(n, i): P[n - 1] @ m @ Pinv[n] for (n, i), m in K.faces.items()}
    degens = {(n, j): P[n + 1] @ m @ Pinv[n] for (n, j), m in K.degens.items()}
    return SimplicialAbGroup(D, K.ranks, faces, degens), C, expected


def random_element(g, rank, bound=5):
    return tuple(int(x) for x in g.integers(-bound, bound + 1, size=rank))


def random_horn(g, A, n, k):
    """Faces d_i y (i ≠ k) of a random y ∈ A_n, with None at position k."""
    y = IntMatrix([[v] for v in random_element(g, A.rank(n))], rows=A.rank(n), cols=1)
    return [None if i == k else tuple(int(v) for v in (A.face(n, i) @ y).entries) for i in range(n + 1)]


def random_space(g, vertices=4, edges=5, triangles=3, pointed=True):
    """
    A random simplicial set of dimension ≤ 2 on vertices v0.. (v0 is the basepoint).
    An edge has d0 = target and d1 = source; degenerate faces are allowed.
    """
    nv = int(g.integers(1, vertices + 1))
    verts = [f"v{i}" for i in range(nv)]
    edge_list, faces = [], {}

    def new_edge(a, b):
        name = f"e{len(edge_list)}"
        edge_list.append((name, a, b))
        faces[name] = (SimplexRef(b, (), 0), SimplexRef(a, (), 0))
        return SimplexRef(name, (), 1)

    for _ in range(int(g.integers(0, edges + 1))):
        a, b = (verts[int(i)] for i in g.integers(0, nv, size=2))
        new_edge(a, b)

    def edge_between(a, b):
        found = [name for name, x, y in edge_list if (x, y) == (a, b)]
        if found:
            return SimplexRef(found[int(g.integers(0, len(found)))], (), 1)
        if a == b and g.random() < 0.7:
            return SimplexRef(a, (0,), 1)
        return new_edge(a, b)

    tri = []
    for t in range(int(g.integers(0, triangles + 1))):
        a, b, c = (verts[int(i)] for i in g.integers(0, nv, size=3))
        name = f"t{t}"
        faces[name] = (edge_between(b, c), edge_between(a, c), edge_between(a, b))
        tri.append(name)
    cells = {0: tuple(verts), 1: tuple(name for name, _, _ in edge_list), 2: tuple(tri)}
    cells = {n: ids for n, ids in cells.items() if ids}
    return SimplicialSet(cells, faces, "v0" if pointed else None)
