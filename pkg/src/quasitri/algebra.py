"""
Exact integer linear algebra and simplicial (co)homology bookkeeping.

Matrices are lists of rows of Python ints.  Nothing here uses floats.

>>> smith_normal_form([[2, 0], [0, 3]]).D
[[1, 0], [0, 6]]
>>> str(homology(simplex_boundary("0123")))
'H0=Z H1=0 H2=Z'
"""
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .simplicial import (SimplicialComplex, is_closed_pseudomanifold,
                         simplex_boundary, sort_vertices, vertex_key)

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if Bt else [0] * cols for row in A]


def determinant(A: Matrix) -> int:
    """Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SNFDecomposition:
    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def invariant_factors(self) -> List[int]:
        out = []
        for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)):
            if self.D[i][i] == 0:
                break
            out.append(self.D[i][i])
        return out

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A: Matrix) -> SNFDecomposition:
    """
    Unimodular ``U``, ``V`` and diagonal ``D`` with ``U A V = D``.

    Pivots are always an entry of least absolute value, and rows/columns
    are reduced by Euclidean steps, so entries stay small.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        for M in (D, U):
            rd, rs = M[dst], M[src]
            for c, x in enumerate(rs):
                if x:
                    rd[c] -= q * x

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (D, V):
            for row in M:
                if row[src]:
                    row[dst] -= q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // p)
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // p)
            rest_r = [(abs(D[i][t]), i) for i in range(t + 1, m) if D[i][t]]
            rest_c = [(abs(D[t][j]), j) for j in range(t + 1, n) if D[t][j]]
            if rest_r or rest_c:
                if rest_r and (not rest_c or min(rest_r)[0] <= min(rest_c)[0]):
                    swap_rows(t, min(rest_r)[1])
                else:
                    swap_cols(t, min(rest_c)[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SNFDecomposition(D, U, V)


def _dense_factors(rows: List[Dict[int, int]]) -> List[int]:
    if not rows:
        return []
    cols = sorted({c for r in rows for c in r})
    if not cols:
        return []
    ci = {c: k for k, c in enumerate(cols)}
    M = [[0] * len(cols) for _ in rows]
    for r, row in enumerate(rows):
        for c, x in row.items():
            M[r][ci[c]] = x
    return smith_normal_form(M).invariant_factors


def invariant_factors(rows: Sequence[Dict[int, int]]) -> List[int]:
    """
    Nonzero invariant factors of a sparse matrix given as ``{col: entry}`` rows.

    Unit pivots are eliminated sparsely first (each contributes a factor 1);
    the small remainder goes through :func:`smith_normal_form`.
    """
    work = {r: dict(row) for r, row in enumerate(rows) if row}
    colrows: Dict[int, set] = {}
    for r, row in work.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(colrows, key=lambda c: len(colrows[c])):
            rs = colrows.get(c)
            if not rs:
                colrows.pop(c, None)
                continue
            cands = [r for r in rs if abs(work[r][c]) == 1]
            if not cands:
                continue
            p = min(cands, key=lambda r: (len(work[r]), r))
            prow = work.pop(p)
            s = prow[c]
            for x in prow:
                colrows[x].discard(p)
            for r in list(colrows[c]):
                row = work[r]
                q = row[c] * s
                for x, y in prow.items():
                    v = row.get(x, 0) - q * y
                    if v:
                        if x not in row:
                            colrows[x].add(r)
                        row[x] = v
                    elif x in row:
                        del row[x]
                        colrows[x].discard(r)
                if not row:
                    del work[r]
            colrows.pop(c, None)
            units += 1
            progress = True
    return [1] * units + _dense_factors(list(work.values()))


def _sorted_unique(xs):
    return sorted(set(xs))


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: Tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z_{t}" for t in self.torsion]
        return "+".join(parts) if parts else "0"

    @property
    def order(self) -> int:
        """Order of the group, 0 when infinite."""
        if self.rank:
            return 0
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def abelian_group_from_relations(ngens: int, relations: Sequence[Dict[int, int]]) -> AbelianGroup:
    facs = invariant_factors(relations)
    return AbelianGroup(ngens - len(facs), tuple(d for d in facs if d > 1))


@dataclass(frozen=True)
class HomologyProfile:
    """Unreduced integral homology, degrees 0..dim."""
    groups: Tuple[AbelianGroup, ...]

    @property
    def betti(self) -> Tuple[int, ...]:
        return tuple(g.rank for g in self.groups)

    @property
    def torsion(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(g.torsion for g in self.groups)

    def __getitem__(self, k: int) -> AbelianGroup:
        if 0 <= k < len(self.groups):
            return self.groups[k]
        return AbelianGroup(0)

    def __str__(self):
        return " ".join(f"H{k}={g}" for k, g in enumerate(self.groups))

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    def matches(self, ranks: Sequence[int], torsion: Optional[Sequence[Sequence[int]]] = None) -> bool:
        torsion = torsion or [()] * len(ranks)
        return self.betti == tuple(ranks) and self.torsion == tuple(tuple(t) for t in torsion)


def chain_basis(X: SimplicialComplex) -> List[List[Tuple[str, ...]]]:
    by_dim: List[List[Tuple[str, ...]]] = [[] for _ in range(X.dim + 1)]
    for f in X.all_faces():
        if f:
            by_dim[len(f) - 1].append(tuple(sort_vertices(f)))
    for lst in by_dim:
        lst.sort(key=lambda t: tuple(map(vertex_key, t)))
    return by_dim


def boundary_rows(higher: List[Tuple[str, ...]], lower: List[Tuple[str, ...]]) -> List[Dict[int, int]]:
    """Rows of the boundary map, one per face in ``higher``."""
    index = {f: i for i, f in enumerate(lower)}
    rows = []
    for f in higher:
        row = {}
        for i in range(len(f)):
            row[index[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
        rows.append(row)
    return rows


def homology(X: SimplicialComplex) -> HomologyProfile:
    if not X.facets:
        raise ValueError("homology of the empty complex")
    basis = chain_basis(X)
    facs = [[]]  # invariant factors of d_k : C_k -> C_{k-1}; d_0 = 0
    for k in range(1, len(basis)):
        facs.append(invariant_factors(boundary_rows(basis[k], basis[k - 1])))
    facs.append([])
    groups = []
    for k in range(len(basis)):
        rank = len(basis[k]) - len(facs[k]) - len(facs[k + 1])
        groups.append(AbelianGroup(rank, tuple(d for d in facs[k + 1] if d > 1)))
    return HomologyProfile(tuple(groups))


def connected_components(X: SimplicialComplex) -> List[frozenset]:
    adj: Dict[str, set] = {v: set() for v in X.vertices}
    for f in X.facets:
        for v in f:
            adj[v] |= f
    seen, comps = set(), []
    for v in sort_vertices(X.vertices):
        if v in seen:
            continue
        comp, todo = set(), [v]
        while todo:
            w = todo.pop()
            if w in comp:
                continue
            comp.add(w)
            todo.extend(adj[w] - comp)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def orientable(X: SimplicialComplex) -> Tuple[bool, Optional[Dict[Tuple[str, ...], int]]]:
    """
    Try to orient a closed, strongly connected pseudomanifold coherently.

    Returns ``(True, signs)`` with a sign for each facet (as a sorted vertex
    tuple) or ``(False, None)``.  The least facet gets sign +1 and the rest
    follow by breadth-first propagation across ridges.
    """
    if not is_closed_pseudomanifold(X):
        raise ValueError("input is not a closed weak pseudomanifold")
    facets = [tuple(sort_vertices(f)) for f in X.facets]
    facets.sort(key=lambda t: tuple(map(vertex_key, t)))
    around: Dict[frozenset, List[Tuple[int, int]]] = {}
    for n, f in enumerate(facets):
        for i in range(len(f)):
            around.setdefault(frozenset(f[:i] + f[i + 1:]), []).append((n, i))
    sign = {0: 1}
    todo = deque([0])
    while todo:
        n = todo.popleft()
        f = facets[n]
        for i in range(len(f)):
            (a, ia), (b, ib) = around[frozenset(f[:i] + f[i + 1:])]
            other, io, mine = (b, ib, ia) if a == n else (a, ia, ib)
            # induced orientations (-1)^i * sign must cancel
            want = -sign[n] * (-1) ** mine * (-1) ** io
            if other in sign:
                if sign[other] != want:
                    return False, None
            else:
                sign[other] = want
                todo.append(other)
    if len(sign) != len(facets):
        raise ValueError("input is not strongly connected")
    return True, {facets[n]: s for n, s in sign.items()}


# ------------------------------------------------------------ edge-path group


@dataclass
class GroupPresentation:
    generators: List[str]
    relators: List[List[Tuple[str, int]]]
    base: str = ""
    tree: List[Tuple[str, str]] = field(default_factory=list)
    edge_generator: Dict[Tuple[str, str], str] = field(default_factory=dict)

    def path_word(self, path: Sequence) -> List[Tuple[str, int]]:
        """Word of a closed edge path given as a vertex sequence."""
        path = [str(v) for v in path]
        if len(path) < 2 or path[0] != path[-1]:
            raise ValueError("edge path is not closed")
        word = []
        for a, b in zip(path, path[1:]):
            if a == b:
                continue
            key, e = ((a, b), 1) if vertex_key(a) < vertex_key(b) else ((b, a), -1)
            if key not in self.edge_generator:
                raise ValueError(f"{a}{b} is not an edge")
            g = self.edge_generator[key]
            if g is not None:
                word.append((g, e))
        return word

    def word_vector(self, word: Sequence[Tuple[str, int]]) -> List[int]:
        idx = {g: i for i, g in enumerate(self.generators)}
        vec = [0] * len(self.generators)
        for g, e in word:
            vec[idx[g]] += e
        return vec

    def relation_rows(self) -> List[Dict[int, int]]:
        rows = []
        for r in self.relators:
            v = self.word_vector(r)
            row = {i: x for i, x in enumerate(v) if x}
            if row:
                rows.append(row)
        return rows


def edge_path_presentation(X: SimplicialComplex, base=None) -> GroupPresentation:
    """
    Edge-path group: generators are the edges outside a breadth-first
    spanning tree, one relator per triangle.
    """
    verts = sort_vertices(X.vertices)
    if not verts:
        raise ValueError("empty complex")
    base = str(base) if base is not None else verts[0]
    if base not in X.vertices:
        raise ValueError(f"base {base} is not a vertex")
    edges = sorted((tuple(sort_vertices(e)) for e in X.faces(1)), key=lambda t: tuple(map(vertex_key, t)))
    adj: Dict[str, List[str]] = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort(key=vertex_key)
    seen = {base}
    tree = []
    todo = deque([base])
    while todo:
        v = todo.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.append((v, w) if vertex_key(v) < vertex_key(w) else (w, v))
                todo.append(w)
    if len(seen) != len(verts):
        raise ValueError("complex is not connected")
    tree_set = set(tree)
    edge_gen: Dict[Tuple[str, str], Optional[str]] = {}
    gens = []
    for a, b in edges:
        if (a, b) in tree_set:
            edge_gen[(a, b)] = None
        else:
            g = f"{a}-{b}"
            edge_gen[(a, b)] = g
            gens.append(g)
    relators = []
    for t in sorted((tuple(sort_vertices(f)) for f in X.faces(2)), key=lambda t: tuple(map(vertex_key, t))):
        a, b, c = t
        word = []
        for key, e in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            g = edge_gen[key]
            if g is not None:
                word.append((g, e))
        relators.append(word)
    return GroupPresentation(gens, relators, base, tree, edge_gen)


def abelianization(P: GroupPresentation) -> AbelianGroup:
    return abelian_group_from_relations(len(P.generators), P.relation_rows())


def solve_left(M: Matrix, t: Sequence[int]) -> Optional[List[int]]:
    """An integer row vector ``x`` with ``x M = t``, or None."""
    if not M:
        return [] if not any(t) else None
    snf = smith_normal_form(M)
    n = len(M[0])
    tv = [sum(t[i] * snf.V[i][j] for i in range(n)) for j in range(n)]
    facs = snf.invariant_factors
    y = [0] * len(M)
    for j, x in enumerate(tv):
        if j < len(facs):
            if x % facs[j]:
                return None
            y[j] = x // facs[j]
        elif x:
            return None
    return [sum(y[k] * snf.U[k][i] for k in range(len(M))) for i in range(len(M))]


def left_kernel(M: Matrix) -> Matrix:
    """Basis of the integer row vectors ``x`` with ``x M = 0``."""
    if not M:
        return []
    snf = smith_normal_form(M)
    return [row[:] for row in snf.U[snf.rank:]]


def loop_class(X: SimplicialComplex, loop: Sequence, basis: Sequence[Sequence]) -> Tuple[int, ...]:
    """
    Coordinates of the H1 class of a closed edge path with respect to
    reference loops that must form a free basis of H1(X).
    """
    P = edge_path_presentation(X, str(loop[0]))
    g = len(P.generators)
    bvecs = [P.word_vector(P.path_word(b)) for b in basis]
    rel = [P.word_vector(r) for r in P.relators]
    rel = [r for r in rel if any(r)]
    H1 = abelianization(P)
    if H1.torsion or H1.rank != len(basis):
        raise ValueError(f"basis loops cannot freely generate H1 = {H1}")
    M = bvecs + rel
    if g and (smith_normal_form(M).invariant_factors != [1] * g):
        raise ValueError("basis loops do not generate H1")
    target = P.word_vector(P.path_word(loop))
    if g == 0:
        return tuple(0 for _ in basis)
    x = solve_left(M, target)
    assert x is not None
    return tuple(x[: len(basis)])


TORUS_BASIS = (("0", "1", "6", "0"), ("0", "2", "5", "0"))


def normalize_sign(v: Sequence[int]) -> Tuple[int, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def killed_class(torus: SimplicialComplex, basis: Sequence[Sequence] = TORUS_BASIS) -> Tuple[int, int]:
    """
    Primitive generator of the kernel of H1(boundary) -> H1(torus), in the
    coordinates of the two boundary loops ``basis``, first nonzero
    coordinate positive.
    """
    P = edge_path_presentation(torus, str(basis[0][0]))
    bvecs = [P.word_vector(P.path_word(b)) for b in basis]
    rel = [v for v in (P.word_vector(r) for r in P.relators) if any(v)]
    if not P.generators:
        raise ValueError("not a solid torus over the boundary torus")
    ker = left_kernel(bvecs + rel)
    proj = [row[: len(basis)] for row in ker if any(row[: len(basis)])]
    if not proj:
        raise ValueError("not a solid torus over the boundary torus")
    snf = smith_normal_form(proj)
    if snf.rank != 1:
        raise ValueError("not a solid torus over the boundary torus")
    # the lattice spanned by proj is rank one: take gcd of its multiples
    w = next(r for r in proj if any(r))
    c = gcd(*w)
    prim = [x // c for x in w]
    mult = 0
    for r in proj:
        k = next(r[i] // prim[i] for i in range(len(prim)) if prim[i])
        mult = gcd(mult, k)
    if mult != 1:
        raise ValueError("not a solid torus over the boundary torus")
    return normalize_sign(prim)


def sphere_profile(d: int) -> HomologyProfile:
    return homology(simplex_boundary([str(i) for i in range(d + 2)]))
