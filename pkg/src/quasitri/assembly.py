"""
Closed 3-manifolds glued from two catalog solid tori, and the 4-dimensional
equilibrium triangulations assembled from cones over unions of consecutive
tori.

>>> r = glue_tori("T1", "T2")
>>> r.identified, str(r.homology)
('S3', 'H0=Z H1=0 H2=0 H3=Z')
"""
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import HomologyProfile, homology, orientable
from .catalog import TorusCatalogId, seven_vertex_torus, solid_torus
from .recognition import is_sphere_2d, link_status
from .simplicial import (SimplicialComplex, cone, euler_characteristic, f_vector, intersection, is_pure, link,
                         ridge_degrees, sort_vertices, union)

TorusLike = Union[TorusCatalogId, str, int, tuple]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def identify(h: HomologyProfile, is_orientable: bool) -> str:
    """Name a closed 3-manifold as far as H1 and orientability allow."""
    if not is_orientable or len(h.groups) != 4:
        return "unidentified"
    h1 = h[1]
    if h1.rank == 0 and not h1.torsion:
        return "S3"
    if h1.rank == 1 and not h1.torsion and h[2].rank == 1:
        return "S2xS1"
    if h1.rank == 0 and len(h1.torsion) == 1:
        p = h1.torsion[0]
        return "RP3" if p == 2 else f"L({p},.)"
    return "unidentified"


@dataclass
class ClosedThreeManifoldReport:
    complex: SimplicialComplex
    homology: HomologyProfile
    orientable: bool
    identified: str
    tori: Tuple[TorusCatalogId, TorusCatalogId]
    predicted_order: int

    @property
    def h1_order(self) -> int:
        return self.homology[1].order

    def to_json(self) -> dict:
        return {"tori": [str(t) for t in self.tori], "f_vector": list(f_vector(self.complex)),
                "homology": self.homology.to_json(), "orientable": self.orientable,
                "identified": self.identified, "predicted_h1_order": self.predicted_order}


def check_disjoint(a: SimplicialComplex, b: SimplicialComplex) -> None:
    if intersection(a, b) != seven_vertex_torus():
        raise ValueError("tori overlap beyond boundary")


def glue_tori(a: TorusLike, b: TorusLike) -> ClosedThreeManifoldReport:
    ea, eb = solid_torus(a), solid_torus(b)
    check_disjoint(ea.complex, eb.complex)
    X = union(ea.complex, eb.complex)
    if any(c != 2 for c in ridge_degrees(X).values()):
        raise ValueError("union is not closed")
    for v in X.vertices:
        if not is_sphere_2d(link(X, [v])):
            raise ValueError(f"link of {v} in the union is not a 2-sphere")
    h = homology(X)
    ok, _ = orientable(X)
    predicted = abs(det2(ea.killed, eb.killed))
    if h[1].order != predicted:
        raise AssertionError(f"|H1| = {h[1].order} but the killed classes predict {predicted}")
    return ClosedThreeManifoldReport(X, h, ok, identify(h, ok), (ea.id, eb.id), predicted)


# ------------------------------------------------------------ equilibrium assembly


@dataclass(frozen=True)
class AssemblySpec:
    """Torus ids for the sectors C_iO (i = 1..m) and the apex labels V_1..V_m."""
    tori: Tuple[TorusCatalogId, ...]
    apexes: Tuple[str, ...] = ()

    def __post_init__(self):
        tori = tuple(TorusCatalogId.parse(t) for t in self.tori)
        object.__setattr__(self, "tori", tori)
        if len(tori) < 3:
            raise ValueError("a polygon needs at least 3 edges")
        if not self.apexes:
            object.__setattr__(self, "apexes", tuple(f"V{i + 1}" for i in range(len(tori))))
        if len(self.apexes) != len(tori) or len(set(self.apexes)) != len(tori):
            raise ValueError("need one distinct apex per torus")

    @property
    def m(self) -> int:
        return len(self.tori)

    def rotated(self, k: int = 1) -> "AssemblySpec":
        return AssemblySpec(self.tori[k:] + self.tori[:k], self.apexes[k:] + self.apexes[:k])

    def to_json(self) -> dict:
        return {"tori": [str(t) for t in self.tori], "apexes": list(self.apexes)}


def check_spec(spec: AssemblySpec) -> None:
    entries = [solid_torus(t) for t in spec.tori]
    used = set().union(*(e.complex.vertices for e in entries))
    clash = used & set(spec.apexes)
    if clash:
        raise ValueError(f"apex labels collide with torus vertices: {sorted(clash)}")
    for i in range(spec.m):
        for j in range(i + 1, spec.m):
            check_disjoint(entries[i].complex, entries[j].complex)
    for i in range(spec.m):
        a, b = entries[i - 1], entries[i]
        if abs(det2(a.killed, b.killed)) != 1:
            raise ValueError(f"apex link not a sphere: {a.id} and {b.id} kill {a.killed}, {b.killed}")


def build_equilibrium(spec: AssemblySpec) -> SimplicialComplex:
    """Union over i of V_i * (T_{i-1} u T_i), indices mod m."""
    check_spec(spec)
    blocks = []
    for i in range(spec.m):
        prev, cur = solid_torus(spec.tori[i - 1]).complex, solid_torus(spec.tori[i]).complex
        blocks.append(cone(spec.apexes[i], union(prev, cur)))
    return union(*blocks)


def expected_f0(spec: AssemblySpec) -> int:
    used = set()
    for t in spec.tori:
        used |= solid_torus(t).complex.vertices
    return len(used) + spec.m


@dataclass
class FourManifoldReport:
    f_vector: Tuple[int, ...]
    euler: int
    homology: HomologyProfile
    closed: bool
    orientable: bool
    statuses: Dict[str, str]

    @property
    def uncertified(self) -> List[str]:
        return [v for v, s in self.statuses.items() if s == "uncertified"]

    @property
    def failed(self) -> List[str]:
        return [v for v, s in self.statuses.items() if s not in ("certified-sphere", "uncertified")]

    def ok(self, strict: bool = False) -> bool:
        return self.closed and not self.failed and not (strict and self.uncertified)

    def to_json(self) -> dict:
        return {"f_vector": list(self.f_vector), "euler": self.euler, "homology": self.homology.to_json(),
                "closed": self.closed, "orientable": self.orientable,
                "links": [{"vertex": v, "status": s} for v, s in self.statuses.items()]}


def verify_closed_4manifold(X: SimplicialComplex, budget: int = 100000, seed: int = 0) -> FourManifoldReport:
    """
    Check a pure 4-complex vertex by vertex: each link must have the homology
    of the 3-sphere and is then reduced to the boundary of the 4-simplex.
    A link that passes the homology test but defeats the reduction is
    reported "uncertified".
    """
    if X.dim != 4 or not is_pure(X):
        raise ValueError("expected a pure 4-dimensional complex")
    closed = all(c == 2 for c in ridge_degrees(X).values())
    if not closed:
        raise ValueError("not a closed pseudomanifold: some tetrahedron is not in exactly two facets")
    statuses = {v: link_status(link(X, [v]), 4, budget, seed) for v in sort_vertices(X.vertices)}
    h = homology(X)
    try:
        ok, _ = orientable(X)
    except ValueError:
        ok = False
    return FourManifoldReport(f_vector(X), euler_characteristic(X), h, closed, ok, statuses)


# ------------------------------------------------------------ census tables


@dataclass(frozen=True)
class CensusEntry:
    key: str
    label: str
    polygon: str
    params: Dict[str, int]
    vectors: Tuple[Tuple[int, int], ...]
    tori: Tuple[TorusCatalogId, ...]
    f0: int
    f0_sum: str
    manifold: str
    notes: Tuple[str, ...] = ()

    @property
    def m(self) -> int:
        return len(self.tori)

    @property
    def spec(self) -> AssemblySpec:
        return AssemblySpec(self.tori)

    @property
    def section(self) -> int:
        return int(self.key.split(".")[0])


def _sort_key(key: str) -> Tuple[int, int]:
    a, b = key.split(".")
    return int(a), int(b)


_CENSUS: Optional[Dict[str, CensusEntry]] = None


def load_census() -> Dict[str, CensusEntry]:
    """All census rows keyed "5.1" .. "7.24", in numeric order."""
    global _CENSUS
    if _CENSUS is None:
        rows = {}
        folder = resources.files("quasitri") / "data" / "census"
        for name in ("section5.json", "section6.json", "section7.json"):
            doc = json.loads((folder / name).read_text())
            for e in doc["entries"]:
                rows[e["key"]] = CensusEntry(
                    e["key"], e["label"], doc["polygon"], dict(e["params"]),
                    tuple(tuple(v) for v in e["vectors"]), tuple(TorusCatalogId.parse(t) for t in e["tori"]),
                    e["f0"], e["f0_sum"], e["manifold"], tuple(e.get("notes", ())))
        _CENSUS = {k: rows[k] for k in sorted(rows, key=_sort_key)}
    return _CENSUS


def census_entry(key: str) -> CensusEntry:
    census = load_census()
    for e in census.values():
        if key in (e.key, e.label):
            return e
    raise KeyError(f"unknown census key {key!r}; available: {', '.join(census)}")


def census_spec(key: str) -> AssemblySpec:
    return census_entry(key).spec


paper_example = census_spec  # name required by the public interface


def select_census(pattern: str = "*") -> List[CensusEntry]:
    """Keys matching a shell-style pattern such as "6.*" or "7.1?"; comma separated alternatives allowed."""
    census = load_census()
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    out = []
    for e in census.values():
        for p in pats:
            rx = "^" + re.escape(p).replace(r"\*", ".*").replace(r"\?", ".") + "$"
            if re.match(rx, e.key) or p == e.label:
                out.append(e)
                break
    if not out:
        raise KeyError(f"no census entry matches {pattern!r}; available: {', '.join(census)}")
    return out


@dataclass
class CensusResult:
    key: str
    label: str
    m: int
    f0: int
    expected_f0: int
    report: FourManifoldReport
    sectors: List[dict] = field(default_factory=list)
    notes: Tuple[str, ...] = ()

    @property
    def checks(self) -> Dict[str, bool]:
        h = self.report.homology
        return {
            "f0": self.f0 == self.expected_f0,
            "euler": self.report.euler == self.m,
            "homology": h.matches([1, 0, self.m - 2, 0, 1], [[], [], [], [], []]),
            "orientable": self.report.orientable,
            "links": not self.report.failed,
            "sectors": all(s["match"] for s in self.sectors),
        }

    def ok(self, strict: bool = False) -> bool:
        return all(self.checks.values()) and self.report.ok(strict)

    def to_json(self) -> dict:
        return {"key": self.key, "label": self.label, "m": self.m, "f0": self.f0, "expected_f0": self.expected_f0,
                "checks": self.checks, "notes": list(self.notes), "sectors": self.sectors,
                "report": self.report.to_json()}


def sector_checks(entry: CensusEntry) -> List[dict]:
    """For non-adjacent i, j: |H1(T_i u T_j)| against |det(xi_i, xi_j)| from the characteristic data."""
    from .charfun import lens_parameters
    out = []
    m = entry.m
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            r = glue_tori(entry.tori[i], entry.tori[j])
            lp = lens_parameters(entry.vectors[i], entry.vectors[j])
            out.append({"sector": [i + 1, j + 1], "tori": [str(entry.tori[i]), str(entry.tori[j])],
                        "h1": str(r.homology[1]), "p": lp.p, "q": lp.q,
                        "match": r.homology[1].order == abs(lp.p) and (lp.p != 0 or r.homology[1].rank == 1)})
    return out


def verify_census_entry(key: str, budget: int = 100000, seed: int = 0) -> CensusResult:
    e = census_entry(key)
    X = build_equilibrium(e.spec)
    rep = verify_closed_4manifold(X, budget, seed)
    return CensusResult(e.key, e.label, e.m, len(X.vertices), e.f0, rep, sector_checks(e), e.notes)


# ------------------------------------------------------------ gluing table

# (families of the first torus, families of the second, |H1|, name).  A
# family in 1..3 stands for both its base torus and its indexed tori.
_FAMILY_PAIRS = [
    ([(1, 4), (2, 5), (3, 6)], 1, "S3"),
    ([(2, 4), (3, 5), (1, 6)], 3, "L(3,1)"),
    ([(3, 4), (1, 5), (2, 6)], 2, "RP3"),
    ([(4, 5), (4, 6), (5, 6)], 7, "L(7,2)"),
    ([(1, 7), (1, 8), (2, 8), (2, 9), (3, 7), (3, 9), (4, 7), (5, 8), (6, 9)], 1, "S3"),
    ([(1, 9), (2, 7), (3, 8)], 2, "RP3"),
    ([(4, 8), (5, 9), (6, 7)], 4, "L(4,1)"),
    ([(4, 9), (5, 7), (6, 8)], 5, "L(5,2)"),
    ([(7, 8), (8, 9), (9, 7)], 3, "L(3,1)"),
]


def gluing_table(indices: Sequence[int] = (0, 1)) -> List[Tuple[TorusCatalogId, TorusCatalogId, int, str]]:
    """
    Every torus pair with a known lens space union, instantiated at the given
    indices: cross-family pairs, same-family pairs with distinct indices
    (families 4..9, giving S2xS1), and T_j with T_{j,7} for j = 1..3.
    """
    out = []
    for pairs, order, name in _FAMILY_PAIRS:
        for i, j in pairs:
            firsts = ([TorusCatalogId(i)] if i <= 3 else []) + [TorusCatalogId(i, m) for m in indices]
            for a in firsts:
                for n in indices:
                    out.append((a, TorusCatalogId(j, n), order, name))
    for j in range(4, 10):
        for m in indices:
            for n in indices:
                if m < n:
                    out.append((TorusCatalogId(j, m), TorusCatalogId(j, n), 0, "S2xS1"))
    for j in (1, 2, 3):
        out.append((TorusCatalogId(j), TorusCatalogId(j, 7), 0, "S2xS1"))
        for i in (1, 2, 3):
            if i < j:
                out.append((TorusCatalogId(i), TorusCatalogId(j), 1, "S3"))
    return out
