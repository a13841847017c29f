"""
Finite abstract simplicial complexes stored by their facets.

Vertices are labels (strings; integers are converted with ``str``).  All
enumeration is done in the order given by :func:`vertex_key`, which puts
the plain integer labels first and sorts the rest naturally, so that
``u1_2 < u1_10``.

>>> X = from_facets(["012", "01"])
>>> sorted_facets(X)
[('0', '1', '2')]
>>> C = from_facets([(i, (i + 1) % 7) for i in range(7)])
>>> f_vector(C), euler_characteristic(C)
((7, 7), 0)
"""
import itertools
import json
import re
import warnings
from collections import defaultdict
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

Vertex = str
Face = frozenset

_DIGITS = re.compile(r"(\d+)")


def vertex_key(v) -> tuple:
    s = str(v)
    if s.isdigit():
        return (0, int(s), (), s)
    parts = _DIGITS.split(s)
    return (1, 0, tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), s)


def sort_vertices(vs: Iterable) -> List[Vertex]:
    return sorted((str(v) for v in vs), key=vertex_key)


def face_key(face: Iterable) -> tuple:
    return tuple(vertex_key(v) for v in sort_vertices(face))


def _as_face(f) -> Face:
    # "012" is read as three single-character labels; anything else is iterated
    if isinstance(f, str):
        return frozenset(f)
    return frozenset(str(v) for v in f)


class SimplicialComplex:
    """
    An immutable simplicial complex, identified with its set of facets.

    The empty complex has no facets; the complex ``{∅}`` has the single
    facet ``frozenset()``.  Both have dimension -1.
    """

    __slots__ = ("_facets", "__dict__")

    def __init__(self, facets: Iterable = ()):
        fs = {_as_face(f) for f in facets}
        self._facets = frozenset(_maximal(fs))

    @property
    def facets(self) -> frozenset:
        return self._facets

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset().union(*self._facets) if self._facets else frozenset()

    @cached_property
    def dim(self) -> int:
        return max((len(f) for f in self._facets), default=0) - 1

    @cached_property
    def _all_faces(self) -> frozenset:
        out = set()
        for f in self._facets:
            items = tuple(f)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in itertools.combinations(items, k))
        return frozenset(out)

    def __contains__(self, face) -> bool:
        return _as_face(face) in self._all_faces

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._facets == other._facets

    def __hash__(self):
        return hash(self._facets)

    def __len__(self):
        return len(self._facets)

    def __iter__(self):
        return iter(sorted_facets(self))

    def __repr__(self):
        body = " ".join("".join(f) if all(len(v) == 1 for v in f) else "(" + ",".join(f) + ")"
                        for f in sorted_facets(self)[:8])
        more = " ..." if len(self._facets) > 8 else ""
        return f"SimplicialComplex(dim={self.dim}, f0={len(self.vertices)}: {body}{more})"

    def faces(self, k: int) -> frozenset:
        return frozenset(f for f in self._all_faces if len(f) == k + 1)

    def all_faces(self) -> frozenset:
        return self._all_faces


def _maximal(fs: set) -> List[Face]:
    if not fs:
        return []
    sizes = {len(f) for f in fs}
    if len(sizes) == 1:
        return list(fs)
    smallest = min(sizes)
    kept: List[Face] = []
    covered = set()
    for f in sorted(fs, key=len, reverse=True):
        if f in covered:
            continue
        kept.append(f)
        items = tuple(f)
        for k in range(smallest, len(items)):
            covered.update(frozenset(c) for c in itertools.combinations(items, k))
    return kept


def from_facets(facets: Iterable) -> SimplicialComplex:
    return SimplicialComplex(facets)


def simplex(vertices: Iterable) -> SimplicialComplex:
    """The full simplex on ``vertices`` (with all its faces)."""
    return SimplicialComplex([_as_face(vertices)])


def simplex_boundary(vertices: Iterable) -> SimplicialComplex:
    vs = _as_face(vertices)
    if not vs:
        return SimplicialComplex()
    return SimplicialComplex([vs - {v} for v in vs])


def sorted_facets(X: SimplicialComplex) -> List[Tuple[Vertex, ...]]:
    return sorted((tuple(sort_vertices(f)) for f in X.facets), key=lambda t: tuple(map(vertex_key, t)))


def faces(X: SimplicialComplex, k: int) -> frozenset:
    return X.faces(k)


def f_vector(X: SimplicialComplex) -> Tuple[int, ...]:
    counts = [0] * (X.dim + 1)
    for f in X.all_faces():
        if f:
            counts[len(f) - 1] += 1
    return tuple(counts)


def euler_characteristic(X: SimplicialComplex) -> int:
    return sum((-1) ** k * c for k, c in enumerate(f_vector(X)))


def is_pure(X: SimplicialComplex) -> bool:
    return len({len(f) for f in X.facets}) <= 1


def ridge_degrees(X: SimplicialComplex) -> Dict[Face, int]:
    deg: Dict[Face, int] = defaultdict(int)
    for f in X.facets:
        for v in f:
            deg[f - {v}] += 1
    return deg


def is_weak_pseudomanifold(X: SimplicialComplex) -> bool:
    return is_pure(X) and all(c <= 2 for c in ridge_degrees(X).values())


def is_closed_pseudomanifold(X: SimplicialComplex) -> bool:
    return is_pure(X) and bool(X.facets) and all(c == 2 for c in ridge_degrees(X).values())


def boundary_complex(X: SimplicialComplex) -> SimplicialComplex:
    if not is_weak_pseudomanifold(X):
        raise ValueError("boundary requested on a complex that is not a weak pseudomanifold")
    return SimplicialComplex(r for r, c in ridge_degrees(X).items() if c == 1)


def link(X: SimplicialComplex, sigma) -> SimplicialComplex:
    s = _as_face(sigma)
    if s not in X:
        raise ValueError(f"not a face: {sort_vertices(s)}")
    return SimplicialComplex(f - s for f in X.facets if s <= f)


def star(X: SimplicialComplex, sigma) -> SimplicialComplex:
    """Closed star: the facets containing ``sigma``."""
    s = _as_face(sigma)
    if s not in X:
        raise ValueError(f"not a face: {sort_vertices(s)}")
    return SimplicialComplex(f for f in X.facets if s <= f)


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    common = X.vertices & Y.vertices
    if common:
        raise ValueError(f"join of complexes sharing vertices {sort_vertices(common)}")
    return SimplicialComplex(f | g for f in X.facets for g in Y.facets)


def cone(apex, X: SimplicialComplex) -> SimplicialComplex:
    apex = str(apex)
    if apex in X.vertices:
        raise ValueError(f"apex {apex} already a vertex")
    return join(simplex([apex]), X)


def union(*complexes: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(f for X in complexes for f in X.facets)


def intersection(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Complex of faces common to ``X`` and ``Y``."""
    return SimplicialComplex(X.all_faces() & Y.all_faces())


def induced_subcomplex(X: SimplicialComplex, W: Iterable) -> SimplicialComplex:
    w = _as_face(W)
    if not X.facets:
        return SimplicialComplex()
    return SimplicialComplex(f & w for f in X.facets)


def is_induced(X: SimplicialComplex, Z: SimplicialComplex) -> bool:
    return induced_subcomplex(X, Z.vertices) == Z


def stellar_subdivide(X: SimplicialComplex, alpha, u) -> SimplicialComplex:
    """Star a new vertex ``u`` in the face ``alpha``."""
    a = _as_face(alpha)
    u = str(u)
    if u in X.vertices:
        raise ValueError(f"vertex {u} already present")
    if not a or a not in X:
        raise ValueError(f"not a face: {sort_vertices(a)}")
    keep = [f for f in X.facets if not a <= f]
    new = [(f - {x}) | {u} for f in X.facets if a <= f for x in a]
    return SimplicialComplex(keep + new)


def bistellar_move(X: SimplicialComplex, alpha, beta) -> SimplicialComplex:
    """
    Replace the ball ``alpha * boundary(beta)`` by ``boundary(alpha) * beta``.

    The index of the move is ``len(beta) - 1``.  For a 0-move ``beta`` is a
    single vertex not yet in ``X``.
    """
    a, b = _as_face(alpha), _as_face(beta)
    if not a or not b:
        raise ValueError("alpha and beta must be nonempty")
    if a & b:
        raise ValueError("alpha and beta must be disjoint")
    if len(a) + len(b) != X.dim + 2:
        raise ValueError(f"dim alpha + dim beta = {len(a) + len(b) - 2} differs from dim X = {X.dim}")
    if a not in X:
        raise ValueError(f"alpha {sort_vertices(a)} is not a face")
    if len(b) == 1:
        if b <= X.vertices:
            raise ValueError("a 0-move needs a new vertex")
        if a not in X.facets:
            raise ValueError("a 0-move needs alpha to be a facet")
    else:
        if not b <= X.vertices:
            raise ValueError("beta has vertices outside X")
        if induced_subcomplex(X, a | b) != join(simplex(a), simplex_boundary(b)):
            raise ValueError("induced subcomplex on alpha+beta is not alpha * boundary(beta)")
        if link(X, a) != simplex_boundary(b):
            raise ValueError("link of alpha is not the boundary of beta")
    keep = [f for f in X.facets if not a <= f]
    new = [(a - {x}) | b for x in a]
    return SimplicialComplex(keep + new)


def move_is_legal(X: SimplicialComplex, alpha, beta) -> bool:
    try:
        bistellar_move(X, alpha, beta)
    except ValueError:
        return False
    return True


ClassSpec = Union[Mapping, Iterable[Iterable]]


def _class_map(X: SimplicialComplex, classes: ClassSpec) -> Dict[Vertex, Vertex]:
    if isinstance(classes, Mapping):
        m = {str(k): str(v) for k, v in classes.items()}
    else:
        m = {}
        for c in classes:
            members = sort_vertices(c)
            for v in members:
                m[v] = members[0]
    return {v: m.get(v, v) for v in X.vertices}


def quotient_with_report(X: SimplicialComplex, classes: ClassSpec) -> Tuple[SimplicialComplex, List[Face]]:
    """
    Quotient by a vertex partition, returning the collapsed edges too.

    ``classes`` is either a mapping vertex -> class label, or a list of
    vertex sets (each class is then named by its least member).  Vertices
    not mentioned form singleton classes.  The result is the set of images
    of faces; an edge whose two ends are identified is reported.
    """
    m = _class_map(X, classes)
    collapsed = sorted({frozenset(e) for f in X.facets for e in itertools.combinations(f, 2)
                        if m[e[0]] == m[e[1]]}, key=face_key)
    return SimplicialComplex(frozenset(m[v] for v in f) for f in X.facets), collapsed


def quotient(X: SimplicialComplex, classes: ClassSpec) -> SimplicialComplex:
    Q, collapsed = quotient_with_report(X, classes)
    if collapsed:
        warnings.warn(f"quotient collapses {len(collapsed)} edges, e.g. {sort_vertices(collapsed[0])}")
    return Q


def relabel(X: SimplicialComplex, phi: Union[Mapping, Callable]) -> SimplicialComplex:
    get = phi if callable(phi) else (lambda v: phi[v])
    m = {v: str(get(v)) for v in X.vertices}
    if len(set(m.values())) != len(m):
        raise ValueError("vertex map is not injective")
    return SimplicialComplex(frozenset(m[v] for v in f) for f in X.facets)


def connected_sum(X: SimplicialComplex, Y: SimplicialComplex, sigma1, sigma2, psi: Mapping) -> SimplicialComplex:
    """
    Remove ``sigma1`` from X and ``sigma2`` from Y and glue along their
    boundaries, vertex ``x`` of sigma1 being identified with ``psi[x]``.
    The glued vertices keep their X labels.
    """
    s1, s2 = _as_face(sigma1), _as_face(sigma2)
    if X.vertices & Y.vertices:
        raise ValueError("connected sum of complexes sharing vertices")
    if X.dim != Y.dim or not is_pure(X) or not is_pure(Y):
        raise ValueError("connected sum needs pure complexes of equal dimension")
    if s1 not in X.facets or s2 not in Y.facets:
        raise ValueError("sigma1, sigma2 must be facets")
    psi = {str(k): str(v) for k, v in psi.items()}
    if set(psi) != s1 or set(psi.values()) != s2:
        raise ValueError("psi must be a bijection sigma1 -> sigma2")
    back = {v: k for k, v in psi.items()}
    Y2 = relabel(Y, lambda v: back.get(v, v))
    A = SimplicialComplex(X.facets - {s1})
    B = SimplicialComplex(Y2.facets - {s1})
    if intersection(A, B) != simplex_boundary(s1):
        raise ValueError("connected sum is not a simplicial complex")
    return union(A, B)


def _signature(X: SimplicialComplex, v: Vertex) -> tuple:
    return f_vector(link(X, [v]))


def is_isomorphic(X: SimplicialComplex, Y: SimplicialComplex) -> Optional[Dict[Vertex, Vertex]]:
    """
    Search for a simplicial isomorphism X -> Y by backtracking.

    Returns the vertex bijection, or None.  Candidates are pruned by the
    f-vector of vertex links and by checking facets as soon as all of their
    vertices are assigned.
    """
    if len(X.vertices) != len(Y.vertices) or f_vector(X) != f_vector(Y):
        return None
    sx = {v: _signature(X, v) for v in X.vertices}
    sy = {v: _signature(Y, v) for v in Y.vertices}
    if sorted(sx.values()) != sorted(sy.values()):
        return None
    by_sig: Dict[tuple, List[Vertex]] = defaultdict(list)
    for v in sort_vertices(Y.vertices):
        by_sig[sy[v]].append(v)

    # order X's vertices: rare signatures first, then grow along edges
    edges_x = defaultdict(set)
    for e in X.faces(1):
        a, b = tuple(e)
        edges_x[a].add(b)
        edges_x[b].add(a)
    edges_y = defaultdict(set)
    for e in Y.faces(1):
        a, b = tuple(e)
        edges_y[a].add(b)
        edges_y[b].add(a)
    rarity = {v: len(by_sig[sx[v]]) for v in X.vertices}
    order: List[Vertex] = []
    placed = set()
    remaining = set(X.vertices)
    while remaining:
        frontier = [v for v in remaining if edges_x[v] & placed] or list(remaining)
        v = min(frontier, key=lambda w: (rarity[w], -len(edges_x[w] & placed), vertex_key(w)))
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    completes: Dict[int, List[Face]] = defaultdict(list)
    for f in X.facets:
        completes[max(pos[v] for v in f)].append(f)
    yfacets = Y.facets
    assign: Dict[Vertex, Vertex] = {}
    used = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_sig[sx[v]]:
            if w in used:
                continue
            if any(assign[u] not in edges_y[w] for u in edges_x[v] if u in assign):
                continue
            if len(edges_x[v] & assign.keys()) != len(edges_y[w] & used):
                continue
            assign[v] = w
            used.add(w)
            if all(frozenset(assign[x] for x in f) in yfacets for f in completes[i]) and extend(i + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    return dict(assign) if extend(0) else None


# ---------------------------------------------------------------- text / json


def to_facet_text(X: SimplicialComplex) -> str:
    lines = []
    for f in sorted_facets(X):
        lines.append(" ".join(f) if f else "{}")
    return "".join(line + "\n" for line in lines)


def from_facet_text(text: str) -> SimplicialComplex:
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        facets.append(frozenset() if line == "{}" else frozenset(line.split()))
    return SimplicialComplex(facets)


def to_json_obj(X: SimplicialComplex) -> dict:
    return {"vertices": sort_vertices(X.vertices), "facets": [list(f) for f in sorted_facets(X)]}


def to_json(X: SimplicialComplex) -> str:
    return json.dumps(to_json_obj(X)) + "\n"


def from_json(text: Union[str, dict]) -> SimplicialComplex:
    obj = json.loads(text) if isinstance(text, str) else text
    X = SimplicialComplex(frozenset(str(v) for v in f) for f in obj["facets"])
    listed = {str(v) for v in obj.get("vertices", X.vertices)}
    if listed != set(X.vertices):
        raise ValueError("vertex list does not match the facets")
    return X


def parse_compact(spec: str) -> SimplicialComplex:
    """Facets written as runs of one-character labels: ``"013 124 235"``."""
    return SimplicialComplex(spec.split())


def read_complex(path) -> SimplicialComplex:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{") and not text.lstrip().startswith("{}"):
        return from_json(text)
    return from_facet_text(text)


def write_complex(X: SimplicialComplex, path, fmt: str = "facets") -> None:
    data = to_json(X) if fmt == "json" else to_facet_text(X)
    with open(path, "w") as fh:
        fh.write(data)
