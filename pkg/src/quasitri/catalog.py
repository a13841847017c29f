"""
The seven-vertex torus, the solid tori bounded by it, and the vertex maps
``f`` and ``g`` that generate the indexed families.

Vertex labels:

* ``"0"`` .. ``"6"``: the torus vertices (integers mod 7)
* ``"u1_0"``: ``u`` of family 1, index 0 (likewise ``v``, ``w``; families 1..9)
* ``"q0_3"``: ``q`` of index 0 at position 3 (likewise ``r``, ``s``; positions 0..6)
* ``"a0_1"``: ``a`` of index 0 at position 1 (likewise ``b``, ``c``; positions 1..3)
* ``"p3"``, ``"p'3"``, ``"e2"``, ``"e'2"``, ``"u4_0'"``: ball vertices before
  the identifications that produce families 4 and 7

>>> entry = solid_torus(TorusCatalogId(7, 0))
>>> entry.f0, entry.killed
(13, (2, 1))
"""
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple, Union

from .algebra import killed_class
from .simplicial import (SimplicialComplex, bistellar_move, boundary_complex, parse_compact, quotient_with_report,
                         relabel, stellar_subdivide)

TORUS_FACETS = "013 124 235 346 045 156 026 023 134 245 356 046 015 126"
BASE_FACETS = {
    1: "0123 1234 2345 3456 0456 0156 0126",
    2: "0246 1246 1346 1356 0135 0235 0245",
    3: "0145 1245 1256 2356 0236 0346 0134",
}
KILLED = {1: (1, 0), 2: (0, 1), 3: (1, 1), 4: (3, 1), 5: (1, -2), 6: (2, 3), 7: (2, 1), 8: (1, -1), 9: (1, 2)}

_UVW = re.compile(r"^([uvw])([1-9])_(\d+)$")
_QRS = re.compile(r"^([qrs])(\d+)_([0-6])$")
_ABC = re.compile(r"^([abc])(\d+)_([1-3])$")


def uvw(x: str, j: int, n: int) -> str:
    return f"{x}{j}_{n}"


def indexed(x: str, n: int, i: int) -> str:
    return f"{x}{n}_{i}"


def seven_vertex_torus() -> SimplicialComplex:
    return parse_compact(TORUS_FACETS)


def base_torus(j: int) -> SimplicialComplex:
    return parse_compact(BASE_FACETS[j])


# ------------------------------------------------------------- vertex maps

_NEXT_FAMILY = {1: 2, 2: 3, 3: 1, 4: 5, 5: 6, 6: 4, 7: 8, 8: 9, 9: 7}
_NEXT_LETTER = {"q": "r", "r": "s", "s": "q", "a": "b", "b": "c", "c": "a"}


def f(label: str) -> str:
    label = str(label)
    if label.isdigit() and int(label) < 7:
        return str((int(label) + 1) % 7)
    m = _UVW.match(label)
    if m:
        return uvw(m[1], int(m[2]), int(m[3]) + 1)
    m = _QRS.match(label) or _ABC.match(label)
    if m:
        return indexed(m[1], int(m[2]) + 1, int(m[3]))
    raise ValueError(f"f is not defined on {label}")


def g(label: str) -> str:
    label = str(label)
    if label.isdigit() and int(label) < 7:
        return str(2 * int(label) % 7)
    m = _UVW.match(label)
    if m:
        return uvw(m[1], _NEXT_FAMILY[int(m[2])], 2 * int(m[3]))
    m = _QRS.match(label) or _ABC.match(label)
    if m:
        return indexed(_NEXT_LETTER[m[1]], 2 * int(m[2]), int(m[3]))
    raise ValueError(f"g is not defined on {label}")


def universe(N: int):
    """Catalog labels with index at most ``N``."""
    out = [str(i) for i in range(7)]
    for n in range(N + 1):
        out += [uvw(x, j, n) for j in range(1, 10) for x in "uvw"]
        out += [indexed(x, n, i) for x in "qrs" for i in range(7)]
        out += [indexed(x, n, i) for x in "abc" for i in range(1, 4)]
    return out


def vertex_map_f(N: int) -> Dict[str, str]:
    return {v: f(v) for v in universe(N)}


def vertex_map_g(N: int) -> Dict[str, str]:
    return {v: g(v) for v in universe(N)}


def power(phi: Callable[[str], str], k: int) -> Callable[[str], str]:
    def composed(v):
        for _ in range(k):
            v = phi(v)
        return v
    return composed


# ------------------------------------------------------------ constructions


def subdivided_first_torus(primed: bool = False) -> SimplicialComplex:
    """
    Family 1 at index 0, built from the first base torus by four stellar or
    bistellar steps around a new vertex ``u`` and four around ``v``.
    With ``primed`` a further vertex ``w`` is starred in 012.
    """
    u, v, w = (uvw(x, 1, 0) for x in "uvw")
    X = base_torus(1)
    X = stellar_subdivide(X, "123", u)
    X = bistellar_move(X, "234", ["5", u])
    X = stellar_subdivide(X, "056", v)
    X = bistellar_move(X, "456", ["3", v])
    X = bistellar_move(X, "016", ["2", v])
    X = bistellar_move(X, "345", [u, v])
    if primed:
        X = stellar_subdivide(X, "012", w)
    return X


def ball_4(n: int) -> SimplicialComplex:
    u, v, w = (uvw(x, 4, n) for x in "uvw")
    u1 = u + "'"

    def p(i):
        return f"p{i % 7}"

    def pp(i):
        return f"p'{i % 7}"

    def q(i):
        return indexed("q", n, i % 7)

    facets = []
    for i in range(7):
        facets += [
            [w, u1, pp(i), pp(i + 1)],
            [w, pp(i), pp(i + 1), q(i + 2)],
            [w, pp(i - 1), q(i), q(i + 1)],
            [v, w, q(i), q(i + 1)],
            [v, q(i), p(i + 1), p(i + 2)],
            [v, q(i), q(i + 1), p(i + 2)],
            [u, v, p(i), p(i + 1)],
            [pp(i - 1), q(i), q(i + 1), p(i + 2)],
            [pp(i - 2), pp(i - 1), q(i), p(i + 1)],
            [pp(i - 1), q(i), p(i + 1), p(i + 2)],
        ]
    return SimplicialComplex(facets)


_BALL_7 = """
w u' e'0 e'1 | w u' e'1 e'2 | w u' e'2 e'3 | w u' e'3 e'4 | w u' e'0 e'4
w e'0 e'1 a2 | w e'1 e'2 a3 | w e'2 e'3 e5 | w e'3 e'4 e6 | w e'0 e'4 e6
w e'0 a1 a2 | w e'1 a2 a3 | w e'2 a3 e5 | w e'3 e5 e6 | w e'0 e6 a1
v w a1 a2 | v w a2 a3 | v w a3 e5 | v w e5 e6 | v w e6 a1
v a1 e2 e3 | v a2 e3 e4 | v e0 e4 e5 | v e0 e1 e5 | v e1 e2 e6
v a1 a2 e3 | v a2 a3 e4 | v a3 e4 e5 | v e1 e5 e6 | v a1 e2 e6
u v e0 e1 | u v e1 e2 | u v e2 e3 | u v e3 e4 | u v e0 e4
e'0 a1 a2 e3 | e'1 a2 a3 e4 | e'0 a1 e2 e3 | e'0 a1 e2 e6
e'0 e'1 a2 e3 | e'1 a2 e3 e4 | e'1 e'2 a3 e4 | e'2 a3 e4 e5
"""

# the same complex after identification, a/b/c standing for a1/a2/a3
_TORUS_7 = """
uw01 uw12 uw23 uw34 uw04 wb01 wc12 w235 w346 w046 wab0 wbc1 wc25 w356 wa06
vwab vwbc vwc5 vw56 vwa6 va23 vb34 v045 v015 v126 vab3 vbc4 vc45 v156 va26
uv01 uv12 uv23 uv34 uv04 ab03 bc14 a023 a026 b013 b134 c124 c245
"""


def ball_7(n: int) -> SimplicialComplex:
    names = {x: uvw(x, 7, n) for x in "uvw"}
    names["u'"] = names["u"] + "'"
    for i in range(1, 4):
        names[f"a{i}"] = indexed("a", n, i)

    def rename(tok):
        return names.get(tok, tok)

    facets = [[rename(t) for t in block.split()] for block in _BALL_7.replace("\n", "|").split("|") if block.strip()]
    return SimplicialComplex(facets)


def ball(family: int, n: int) -> SimplicialComplex:
    if family == 4:
        return ball_4(n)
    if family == 7:
        return ball_7(n)
    raise ValueError("balls exist for families 4 and 7 only")


def ball_identification(family: int, n: int) -> Dict[str, str]:
    u = uvw("u", family, n)
    if family == 4:
        m = {f"p{i}": str(i) for i in range(7)}
        m.update({f"p'{i}": str(i) for i in range(7)})
    elif family == 7:
        m = {f"e{i}": str(i) for i in range(7)}
        m.update({f"e'{i}": str(i) for i in range(5)})
    else:
        raise ValueError("balls exist for families 4 and 7 only")
    m[u + "'"] = u
    return m


def torus_from_ball(family: int, n: int) -> SimplicialComplex:
    Q, collapsed = quotient_with_report(ball(family, n), ball_identification(family, n))
    if collapsed:
        raise ValueError(f"identification collapses edges {collapsed}")
    return Q


def printed_torus_7(n: int) -> SimplicialComplex:
    """The family-7 torus written out facet by facet (independent transcription)."""
    names = {x: uvw(x, 7, n) for x in "uvw"}
    names.update({x: indexed("a", n, i) for i, x in enumerate("abc", start=1)})
    return SimplicialComplex([[names.get(ch, ch) for ch in word] for word in _TORUS_7.split()])


# ------------------------------------------------------------------ catalog


@dataclass(frozen=True)
class TorusCatalogId:
    """Family 1..9 with an index, or (for families 1..3) the base torus (index None)."""
    family: int
    index: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.family <= 9:
            raise ValueError(f"unknown torus family {self.family}")
        if self.index is None and self.family > 3:
            raise ValueError(f"family {self.family} has no base torus")
        if self.index is not None and self.index < 0:
            raise ValueError("torus index must be nonnegative")

    def __str__(self):
        return f"T{self.family}" if self.index is None else f"T{self.family},{self.index}"

    @classmethod
    def parse(cls, text: Union[str, int, tuple, "TorusCatalogId"]) -> "TorusCatalogId":
        if isinstance(text, TorusCatalogId):
            return text
        if isinstance(text, int):
            return cls(text)
        if isinstance(text, (tuple, list)):
            return cls(int(text[0]), None if len(text) < 2 or text[1] is None else int(text[1]))
        s = text.strip().lstrip("Tt").strip("_{}() ")
        parts = [p for p in re.split(r"[,\s_]+", s) if p]
        if len(parts) == 1:
            return cls(int(parts[0]))
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise ValueError(f"cannot parse torus id {text!r}")

    def to_json(self):
        return [self.family, self.index]


@dataclass(frozen=True)
class CatalogEntry:
    id: TorusCatalogId
    complex: SimplicialComplex
    killed: Tuple[int, int]
    f0: int


def expected_f0(tid: TorusCatalogId) -> int:
    if tid.index is None:
        return 7
    if tid.family <= 3:
        return 9 if tid.index <= 6 else 10
    return 17 if tid.family <= 6 else 13


@lru_cache(maxsize=None)
def _family_root(family: int, primed: bool) -> SimplicialComplex:
    """Index-0 complex of a family (primed only matters for families 1..3)."""
    if family <= 3:
        return relabel(subdivided_first_torus(primed), power(g, family - 1))
    if family <= 6:
        return relabel(torus_from_ball(4, 0), power(g, family - 4))
    return relabel(torus_from_ball(7, 0), power(g, family - 7))


@lru_cache(maxsize=None)
def torus_complex(tid: TorusCatalogId) -> SimplicialComplex:
    j, n = tid.family, tid.index
    if n is None:
        return base_torus(j)
    if j in (4, 7):
        return torus_from_ball(j, n)
    return relabel(_family_root(j, j <= 3 and n >= 7), power(f, n))


@lru_cache(maxsize=None)
def solid_torus(tid: Union[TorusCatalogId, str, tuple]) -> CatalogEntry:
    tid = TorusCatalogId.parse(tid)
    X = torus_complex(tid)
    if boundary_complex(X) != seven_vertex_torus():
        raise ValueError(f"{tid} does not bound the seven-vertex torus")
    return CatalogEntry(tid, X, killed_class(X), len(X.vertices))
