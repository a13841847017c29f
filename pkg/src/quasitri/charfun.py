"""
Characteristic functions on polygons: validity, completeness of the fan,
lens-space parameters of the sectors, and the small Diophantine censuses
over the rectangle, pentagon and hexagon.

Vectors are listed in edge order E_1..E_m, where E_i is the edge carrying
the solid torus over the segment C_iO.

>>> is_complete(CharacteristicPair(((1, 0), (0, 1), (-1, -1))))
True
>>> lens_parameters((-1, 0), (1, 3))
LensParams(p=3, q=2)
"""
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .catalog import KILLED, TorusCatalogId, seven_vertex_torus, solid_torus
from .simplicial import intersection

Vec = Tuple[int, int]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def primitive(v: Sequence[int]) -> bool:
    return gcd(v[0], v[1]) == 1


@dataclass(frozen=True)
class CharacteristicPair:
    vectors: Tuple[Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple((int(x), int(y)) for x, y in self.vectors))

    @property
    def m(self) -> int:
        return len(self.vectors)

    def determinants(self) -> List[int]:
        vs = self.vectors
        return [det2(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def validate(pair: CharacteristicPair) -> bool:
    if pair.m < 3:
        raise ValueError("a polygon has at least 3 edges")
    if any(v == (0, 0) for v in pair.vectors):
        return False
    return all(abs(d) == 1 for d in pair.determinants())


def _crosses(u: Vec, v: Vec, ray: Vec = (1, 0)) -> bool:
    # counterclockwise step u -> v (less than a half turn) passes the ray, landing on it included
    return det2(u, ray) > 0 and det2(ray, v) >= 0


def winding(pair: CharacteristicPair) -> int:
    """
    Signed number of turns of the cyclic vector sequence, assuming every step
    turns strictly less than half a revolution in the same direction.
    """
    dets = pair.determinants()
    if any(d == 0 for d in dets) or len({d > 0 for d in dets}) != 1:
        raise ValueError("steps do not all turn the same way")
    sign = 1 if dets[0] > 0 else -1
    vs = [(x, sign * y) for x, y in pair.vectors]  # mirror clockwise sequences
    turns = sum(_crosses(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    return sign * turns


def is_complete(pair: CharacteristicPair) -> bool:
    """
    The cones on consecutive vectors are unimodular, turn consistently and
    sweep the plane exactly once.
    """
    if not validate(pair):
        return False
    dets = pair.determinants()
    if len(set(dets)) != 1:
        return False
    return abs(winding(pair)) == 1


# ------------------------------------------------------------ lens spaces


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


@dataclass(frozen=True)
class LensParams:
    p: int
    q: int

    def name(self) -> str:
        p = abs(self.p)
        if p == 0:
            return "S2xS1"
        if p == 1:
            return "S3"
        if p == 2:
            return "RP3"
        return f"L({p},{self.q % p})"

    def equivalent(self, other: "LensParams") -> bool:
        """Homeomorphic (orientation ignored): |p| agree and q' = +-q^(+-1) mod p."""
        p = abs(self.p)
        if p != abs(other.p):
            return False
        if p == 0:
            return abs(self.q) == 1 and abs(other.q) == 1
        if p == 1:
            return True
        q, r = self.q % p, other.q % p
        if gcd(q, p) != 1 or gcd(r, p) != 1:
            return False
        inv = pow(q, -1, p)
        return r in {q, (-q) % p, inv, (-inv) % p}


def section_vector(xi: Sequence[int]) -> Vec:
    """Some (r, s) with det((r, s), xi) = 1."""
    if not primitive(xi):
        raise ValueError(f"{tuple(xi)} is not primitive")
    # r * xi2 - s * xi1 = 1
    g, x, y = ext_gcd(xi[1], -xi[0])
    assert g == 1
    return (x, y)


def lens_parameters(xi_i: Sequence[int], xi_j: Sequence[int]) -> LensParams:
    """p = det(xi_j, xi_i) and q = det((r, s), xi_j) for a section (r, s) of xi_i."""
    p = det2(xi_j, xi_i)
    r, s = section_vector(xi_i)
    q = det2((r, s), xi_j)
    # a second section differs by a multiple of xi_i, which shifts q by a multiple of p
    q2 = det2((r + xi_i[0], s + xi_i[1]), xi_j)
    if p != 0 and (q - q2) % p:
        raise AssertionError("q depends on the choice of section")
    if p == 0 and q != q2:
        raise AssertionError("q depends on the choice of section")
    return LensParams(p, q % abs(p) if p else q)


def sector_lens_spaces(pair: CharacteristicPair) -> Dict[Tuple[int, int], LensParams]:
    """Lens parameters of every non-adjacent sector (i, j), 1-based."""
    m = pair.m
    out = {}
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            out[(i + 1, j + 1)] = lens_parameters(pair.vectors[i], pair.vectors[j])
    return out


# Lens spaces the text attaches to each sector, as functions of the polygon parameters.
CLAIMED_SECTORS = {
    "rectangle": lambda k, l, **_: {(1, 3): (-k, 1), (2, 4): (0, 1)},
    "pentagon": lambda k, l, a, b, **_: {(1, 3): (k, 1), (1, 4): (b, -a), (2, 4): (a, b), (2, 5): (l, 1),
                                          (3, 5): (l * k - 1, -l)},
    "hexagon": lambda k, l, a, b, c, d: {(1, 3): (k, 1), (1, 4): (b, a), (1, 5): (d, c), (2, 4): (a, b),
                                         (2, 5): (c, d), (2, 6): (l, 1), (3, 5): (c * k - d, 1),
                                         (3, 6): (k * l - 1, l), (4, 6): (a - b * l, 1)},
}


def polygon_vectors(polygon: str, k: int, l: int, a: int = 0, b: int = 0, c: int = 0, d: int = 0) -> Tuple[Vec, ...]:
    if polygon == "rectangle":
        return ((-1, 0), (l, 1), (1, k), (0, -1))
    if polygon == "pentagon":
        return ((-1, 0), (0, -1), (1, k), (a, b), (l, 1))
    if polygon == "hexagon":
        return ((-1, 0), (0, -1), (1, k), (a, b), (c, d), (l, 1))
    raise ValueError(f"unknown polygon {polygon!r}")


# ------------------------------------------------------------ enumerations


@dataclass(frozen=True)
class Solution:
    polygon: str
    params: Tuple[Tuple[str, int], ...]
    complete: bool

    @property
    def values(self) -> Dict[str, int]:
        return dict(self.params)

    def vectors(self) -> Tuple[Vec, ...]:
        return polygon_vectors(self.polygon, **self.values)

    def to_json(self) -> dict:
        return {"polygon": self.polygon, **self.values, "complete": self.complete}


def _solution(polygon: str, **kw) -> Solution:
    pair = CharacteristicPair(polygon_vectors(polygon, **kw))
    if not validate(pair):
        raise AssertionError(f"{polygon} {kw} is not characteristic")
    return Solution(polygon, tuple(kw.items()), is_complete(pair))


def _span(bounds: Tuple[int, int]) -> range:
    return range(bounds[0], bounds[1] + 1)


@dataclass(frozen=True)
class RectangleBounds:
    k: Tuple[int, int] = (-4, 4)
    l: Tuple[int, int] = (-4, 4)


@dataclass(frozen=True)
class PentagonBounds:
    k: Tuple[int, int] = (-3, 3)
    l: Tuple[int, int] = (-3, 3)
    a: Tuple[int, int] = (-4, 4)


@dataclass(frozen=True)
class HexagonBounds:
    k: Tuple[int, int] = (-3, 3)
    l: Tuple[int, int] = (-1, 1)
    a: Tuple[int, int] = (-3, 3)
    c: Tuple[int, int] = (-3, 3)


def enumerate_rectangle(bounds: RectangleBounds = RectangleBounds()) -> List[Solution]:
    """(-1,0), (l,1), (1,k), (0,-1): the middle determinant kl - 1 must be +-1."""
    return [_solution("rectangle", k=k, l=l)
            for k in _span(bounds.k) for l in _span(bounds.l) if abs(k * l - 1) == 1]


def pentagon_solutions(k: int, l: int, a_bounds: Tuple[int, int]) -> List[Tuple[int, int]]:
    """(a, b) with a - b*l = 1 and b - a*k = 1; a is only bounded when the solution set is infinite."""
    # eliminating b: a (1 - k l) = 1 + l
    den, num = 1 - k * l, 1 + l
    if den == 0:
        return [(a, 1 + a * k) for a in _span(a_bounds)] if num == 0 else []
    if num % den:
        return []
    a = num // den
    return [(a, 1 + a * k)]


def enumerate_pentagon(bounds: PentagonBounds = PentagonBounds()) -> List[Solution]:
    out = []
    for k in _span(bounds.k):
        for l in _span(bounds.l):
            for a, b in pentagon_solutions(k, l, bounds.a):
                out.append(_solution("pentagon", k=k, l=l, a=a, b=b))
    return out


def pentagon_solvable(k: int, l: int) -> bool:
    return bool(pentagon_solutions(k, l, (0, 0)))


def pentagon_lemma(k: int, l: int) -> bool:
    return k in (-1, 0) or l in (-1, 0) or (k, l) in {(3, 1), (2, 1), (2, 2), (1, 2), (1, 3)}


def hexagon_solutions(k: int, l: int, bounds: HexagonBounds) -> List[Tuple[int, int, int, int]]:
    """(a, b, c, d) with b - a k = 1, a d - b c = 1, c - d l = 1, and a, c inside the bounds."""
    out = []
    for a in _span(bounds.a):
        b = 1 + a * k
        for c in _span(bounds.c):
            if l == 0:
                if c != 1 or a == 0 or (1 + b) % a:
                    continue
                d = (1 + b) // a
            else:
                if (c - 1) % l:
                    continue
                d = (c - 1) // l
            if a * d - b * c == 1:
                out.append((a, b, c, d))
    return out


def enumerate_hexagon(bounds: HexagonBounds = HexagonBounds()) -> List[Solution]:
    out = []
    for k in _span(bounds.k):
        for l in _span(bounds.l):
            for a, b, c, d in hexagon_solutions(k, l, bounds):
                out.append(_solution("hexagon", k=k, l=l, a=a, b=b, c=c, d=d))
    return out


# Bullet-by-bullet hexagon claims: all solutions listed (None when only a
# parametric family is given) and the complete ones.
def _family(pred, bounds=HexagonBounds()):
    return {(a, b, c, d) for a in _span(bounds.a) for c in _span(bounds.c)
            for b in range(-30, 31) for d in range(-30, 31) if pred(a, b, c, d)}


HEXAGON_BULLETS: Dict[Tuple[int, int], dict] = {
    (-3, 0): {"all": [(1, -2, 1, -1), (-1, 4, 1, -5), (2, -5, 1, -2), (-2, 7, 1, -4)],
              "complete": [(1, -2, 1, -1), (2, -5, 1, -2)]},
    (-2, 0): {"all": [(1, -1, 1, 0), (-1, 3, 1, -4), (2, -3, 1, -1), (-2, 5, 1, -3)],
              "complete": [(1, -1, 1, 0), (2, -3, 1, -1)]},
    (-1, 0): {"all": [(1, 0, 1, 1), (-1, 2, 1, -3), (2, -1, 1, 0), (-2, 3, 1, -2)],
              "complete": [(1, 0, 1, 1), (2, -1, 1, 0)]},
    # b = c = 1 and the printed (a, d) pairs
    (0, 0): {"all": [(1, 1, 1, 2), (-1, 1, 1, 2), (2, 1, 1, 1), (-2, 1, 1, -1)],
             "complete": [(1, 1, 1, 2), (2, 1, 1, 1)],
             "text": "ad = 2 printed with the pair (a, d) = (-1, 2)"},
    (1, 0): {"all": [(1, 2, 1, 3), (-1, 0, 1, -1), (2, 3, 1, 2), (-2, 1, 1, 0)],
             "complete": [(1, 2, 1, 3), (2, 3, 1, 2)]},
    (2, 0): {"all": [(1, 3, 1, 4), (-1, -1, 1, 0), (2, 5, 1, 3), (-2, -3, 1, 1)],
             "complete": [(1, 3, 1, 4), (2, 5, 1, 3)],
             "text": "relation printed as b = -2a + 1 while b - ak = 1 gives b = 2a + 1"},
    (3, 0): {"all": [(1, 4, 1, 5), (-1, -2, 1, 1), (2, 7, 1, 4), (-2, -5, 1, 2)],
             "complete": [(1, 4, 1, 5), (2, 7, 1, 4)]},
    (-3, -1): {"all": [(0, 1, -1, 2), (1, -2, 0, 1)], "complete": [(0, 1, -1, 2), (1, -2, 0, 1)]},
    (-2, -1): {"all": None,
               "complete": [(1, -1, -3, 4), (1, -1, -2, 3), (1, -1, -1, 2), (1, -1, 0, 1), (1, -1, 1, 0),
                            (1, -1, 2, -1), (1, -1, 3, -2), (-3, 7, -1, 2), (-2, 5, -1, 2), (-1, 3, -1, 2),
                            (0, 1, -1, 2), (2, -3, -1, 2), (3, -5, -1, 2)]},
    (-1, -1): {"all": None,
               "complete": [(-3, 4, -4, 5), (-2, 3, -3, 4), (-1, 2, -2, 3), (0, 1, -1, 2), (1, 0, 0, 1),
                            (2, -1, 1, 0), (3, -2, 2, -1)]},
    (1, -1): {"all": [(-2, -1, 1, 0), (-1, 0, 2, -1), (0, 1, -1, 2), (1, 2, 0, 1)],
              "complete": [(0, 1, -1, 2), (1, 2, 0, 1)]},
    (2, -1): {"all": [(-1, -1, 1, 0), (0, 1, -1, 2), (1, 3, 0, 1)], "complete": [(0, 1, -1, 2), (1, 3, 0, 1)]},
    (3, -1): {"all": [(0, 1, -1, 2), (1, 4, 0, 1)], "complete": [(0, 1, -1, 2), (1, 4, 0, 1)]},
    (-3, 1): {"all": [(0, 1, -1, -2)], "complete": []},
    (-2, 1): {"all": [(1, -1, 1, 0), (0, 1, -1, -2)], "complete": []},
    (1, 1): {"all": "family", "complete": []},
    (2, 1): {"all": "family", "complete": []},
    (3, 1): {"all": [(0, 1, -1, -2), (-1, -2, 0, -1)], "complete": []},
}

# Parametric families (restricted to the a, c window).
_BULLET_FAMILIES = {
    (-2, -1): lambda a, b, c, d: b == 1 - 2 * a and c == 1 - d and (a == 1 or d == 2),
    (-1, -1): lambda a, b, c, d: b == 1 - a and d == 2 - a and c == a - 1,
    (1, 1): lambda a, b, c, d: b == a + 1 and c == -a - 1 and d == -a - 2,
    (2, 1): lambda a, b, c, d: (a == -1 and b == -1 and d == c - 1) or (d == -2 and c == -1 and b == 2 * a + 1),
}

# (k, l) -> the bulleted case it is carried to by swapping the torus coordinates
HEXAGON_SYMMETRIC = {(0, -1): (-1, 0), (0, 1): (1, 0), (-1, 1): (1, -1)}


def bullet_claims(k: int, l: int, bounds: HexagonBounds = HexagonBounds()) -> Tuple[set, set]:
    """The solution set and complete set a bullet claims, as sets of tuples."""
    entry = HEXAGON_BULLETS[(k, l)]
    if isinstance(entry["all"], list):
        claimed = set(entry["all"])
    else:
        claimed = _family(_BULLET_FAMILIES[(k, l)], bounds)
    if entry["all"] is None:
        # only the complete ones were printed, together with the defining family
        claimed |= set(entry["complete"])
    return claimed, set(entry["complete"])


@dataclass
class BulletCheck:
    k: int
    l: int
    status: str  # "reproduced", "discrepancy" or "symmetric"
    problems: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "status": self.status, "problems": self.problems}


def _in_window(t, bounds: HexagonBounds) -> bool:
    a, _, c, _ = t
    return bounds.a[0] <= a <= bounds.a[1] and bounds.c[0] <= c <= bounds.c[1]


def check_hexagon_bullets(bounds: HexagonBounds = HexagonBounds()) -> List[BulletCheck]:
    """
    Compare each printed case with the enumeration.  Problems are listed
    for tuples that fail the defining equations, fall outside the window,
    are missing, or carry the wrong completeness flag.
    """
    out = []
    for k in _span(bounds.k):
        for l in _span(bounds.l):
            computed = {tuple(s.values[x] for x in "abcd"): s.complete
                        for s in enumerate_hexagon(HexagonBounds((k, k), (l, l), bounds.a, bounds.c))}
            if (k, l) in HEXAGON_SYMMETRIC:
                out.append(BulletCheck(k, l, "symmetric", [f"covered by coordinate swap with {HEXAGON_SYMMETRIC[(k, l)]}"]))
                continue
            if (k, l) not in HEXAGON_BULLETS:
                if computed:
                    out.append(BulletCheck(k, l, "discrepancy", [f"no printed case but {len(computed)} solutions"]))
                continue
            claimed, claimed_complete = bullet_claims(k, l, bounds)
            problems = []
            note = HEXAGON_BULLETS[(k, l)].get("text")
            if note:
                problems.append(f"text: {note}")
            for t in sorted(claimed):
                a, b, c, d = t
                if not (b - a * k == 1 and a * d - b * c == 1 and c - d * l == 1):
                    problems.append(f"{t} does not satisfy the equations")
                elif not _in_window(t, bounds):
                    problems.append(f"{t} lies outside the a, c window")
            for t in sorted(set(computed) - claimed):
                problems.append(f"{t} missing")
            for t in sorted(t for t, comp in computed.items() if comp and t not in claimed_complete):
                problems.append(f"{t} is complete but not listed as complete")
            for t in sorted(claimed_complete):
                if t in computed and not computed[t]:
                    problems.append(f"{t} listed as complete but is not")
            out.append(BulletCheck(k, l, "discrepancy" if problems else "reproduced", problems))
    return out


def mirror(sol: Solution) -> Solution:
    """
    Reflect the polygon through the diagonal fixing V_2 (and V_5 for the
    hexagon) and swap the torus coordinates.
    """
    v = sol.values
    if sol.polygon == "pentagon":
        return _solution("pentagon", k=v["l"], l=v["k"], a=v["b"], b=v["a"])
    if sol.polygon == "hexagon":
        return _solution("hexagon", k=v["l"], l=v["k"], a=v["d"], b=v["c"], c=v["b"], d=v["a"])
    raise ValueError("mirror is defined for pentagons and hexagons")


# ------------------------------------------------------------ catalog lookup


def normalize(v: Sequence[int]) -> Vec:
    """Sign representative: first nonzero coordinate positive."""
    x, y = v
    return (x, y) if (x > 0 or (x == 0 and y > 0)) else (-x, -y)


_FAMILY_OF = {normalize(v): j for j, v in KILLED.items()}


def family_for_vector(v: Sequence[int]) -> int:
    try:
        return _FAMILY_OF[normalize(v)]
    except KeyError:
        raise ValueError(f"no catalog torus kills this class: {tuple(v)}") from None


def candidate_ids(family: int, max_index: int = 13) -> List[TorusCatalogId]:
    ids = [TorusCatalogId(family)] if family <= 3 else []
    return ids + [TorusCatalogId(family, n) for n in range(max_index + 1)]


def compatible(tid: TorusCatalogId, used: Iterable[TorusCatalogId]) -> bool:
    X = solid_torus(tid).complex
    T = seven_vertex_torus()
    return all(intersection(X, solid_torus(u).complex) == T for u in used)


def torus_for_vector(v: Sequence[int], used: Iterable[TorusCatalogId] = ()) -> TorusCatalogId:
    """
    The catalog torus killing +-v (in the boundary basis of the catalog),
    with the lowest index whose interior avoids every torus in ``used``.
    """
    family = family_for_vector(v)
    used = list(used)
    for tid in candidate_ids(family):
        if compatible(tid, used):
            return tid
    raise ValueError(f"no free instance of family {family} next to {[str(u) for u in used]}")


def gl2_images(vectors: Sequence[Vec]) -> List[Tuple[Tuple[Tuple[int, int], Tuple[int, int]], Tuple[int, ...]]]:
    """
    Every integer change of basis A (det +-1) sending each vector to +- a
    catalog killed class, with the families it hits.  A is fixed by the images
    of the first two vectors, which must form a basis.
    """
    x, y = vectors[0], vectors[1]
    dxy = det2(x, y)
    if abs(dxy) != 1:
        raise ValueError("the first two vectors must form a basis")
    classes = [KILLED[j] for j in sorted(KILLED)]
    out = []
    seen = set()
    for kx, ky in itertools.product(classes, repeat=2):
        for sx, sy in itertools.product((1, -1), repeat=2):
            ax, ay = (sx * kx[0], sx * kx[1]), (sy * ky[0], sy * ky[1])
            if abs(det2(ax, ay)) != 1:
                continue
            # A = [ax ay] [x y]^-1 ; [x y]^-1 = (1/dxy) [[y1, -y0], [-x1, x0]]
            A = ((dxy * (ax[0] * y[1] - ay[0] * x[1]), dxy * (-ax[0] * y[0] + ay[0] * x[0])),
                 (dxy * (ax[1] * y[1] - ay[1] * x[1]), dxy * (-ax[1] * y[0] + ay[1] * x[0])))
            images = [(A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1]) for v in vectors]
            try:
                fams = tuple(family_for_vector(w) for w in images)
            except ValueError:
                continue
            if (A, fams) not in seen:
                seen.add((A, fams))
                out.append((A, fams))
    return out


def assign_tori(families: Sequence[int]) -> Tuple[TorusCatalogId, ...]:
    used: List[TorusCatalogId] = []
    for j in families:
        used.append(torus_for_vector(KILLED[j], used))
    return tuple(used)


def auto_assign(vectors: Sequence[Vec]) -> Optional[Tuple[TorusCatalogId, ...]]:
    """
    A pairwise-compatible torus for every edge, or None if no change of
    basis maps all vectors into the catalog.  Families with the fewest
    vertices are preferred.
    """
    from .catalog import expected_f0
    best = None
    for _, fams in gl2_images(vectors):
        try:
            ids = assign_tori(fams)
        except ValueError:
            continue
        cost = sum(expected_f0(t) - 7 for t in ids)
        if best is None or (cost, [str(t) for t in ids]) < best[0]:
            best = ((cost, [str(t) for t in ids]), ids)
    return None if best is None else best[1]
