import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from helpers import random_connected_complex, random_sphere, random_surface
from quasitri.algebra import (AbelianGroup, HomologyProfile, abelianization, connected_components, determinant,
                              edge_path_presentation, homology, killed_class, loop_class, matmul, orientable,
                              smith_normal_form, sphere_profile)
from quasitri.catalog import TorusCatalogId, base_torus, seven_vertex_torus, solid_torus
from quasitri.simplicial import from_facets, simplex_boundary, union

PROPERTY = settings(max_examples=100, derandomize=True, deadline=None)
T = seven_vertex_torus()
RP2 = from_facets("124 126 135 136 145 234 235 256 346 456".split())


def test_snf_small_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).D == [[1, 0], [0, 6]]
    z = smith_normal_form([[0, 0], [0, 0]])
    assert z.D == [[0, 0], [0, 0]] and z.U == [[1, 0], [0, 1]] and z.V == [[1, 0], [0, 1]]


def test_snf_of_triangle_incidence():
    # vertices x edges of the 3-cycle 01, 12, 02
    A = [[-1, 0, -1], [1, -1, 0], [0, 1, 1]]
    d = smith_normal_form(A)
    assert d.rank == 2 and d.invariant_factors == [1, 1]


def test_group_strings():
    assert str(AbelianGroup(0, ())) == "0"
    assert str(AbelianGroup(2, (3,))) == "Z^2+Z_3"
    assert AbelianGroup(0, (2, 6)).order == 12
    assert AbelianGroup(1, ()).order == 0


def test_torus_homology():
    assert str(homology(T)) == "H0=Z H1=Z^2 H2=Z"
    assert homology(T).to_json() == {"betti": [1, 2, 1], "torsion": [[], [], []]}


def test_lens_homology_examples():
    h = homology(union(base_torus(2), solid_torus("T4,0").complex))
    assert str(h) == "H0=Z H1=Z_3 H2=0 H3=Z"
    h = homology(union(solid_torus("T4,0").complex, solid_torus("T5,0").complex))
    assert str(h[1]) == "Z_7"


def test_rp2_homology_has_torsion():
    assert str(homology(RP2)) == "H0=Z H1=Z_2 H2=0"


def test_orientability_examples():
    ok, signs = orientable(simplex_boundary("01234"))
    assert ok and len(signs) == 5
    assert orientable(RP2) == (False, None)
    assert orientable(union(base_torus(1), solid_torus("T4,0").complex))[0]
    with pytest.raises(ValueError, match="closed"):
        orientable(base_torus(1))


def test_presentations_abelianize():
    assert str(abelianization(edge_path_presentation(simplex_boundary("0123")))) == "0"
    assert str(abelianization(edge_path_presentation(T))) == "Z^2"
    assert str(abelianization(edge_path_presentation(base_torus(1)))) == "Z"
    with pytest.raises(ValueError, match="not connected"):
        edge_path_presentation(from_facets(["01", "23"]))


def test_presentation_is_deterministic():
    a, b = edge_path_presentation(T), edge_path_presentation(T)
    assert a.generators == b.generators and a.relators == b.relators
    assert len(a.generators) == 21 - 6 and len(a.relators) == 14


BASIS = (("0", "1", "6", "0"), ("0", "2", "5", "0"))


@pytest.mark.parametrize("loop,cls", [
    ("0340", (1, 1)),
    ("01234560", (3, 1)),
    ("012340", (2, 1)),
])
def test_loop_classes(loop, cls):
    assert loop_class(T, list(loop), BASIS) == cls


def test_loop_class_errors():
    with pytest.raises(ValueError, match="not closed"):
        loop_class(T, list("0123"), BASIS)
    with pytest.raises(ValueError, match="generate"):
        loop_class(T, list("0340"), (("0", "1", "6", "0"), ("0", "1", "6", "0")))


@pytest.mark.parametrize("tid,cls", [("T1", (1, 0)), ("T4,0", (3, 1)), ("T8,0", (1, -1)), ("T2", (0, 1))])
def test_killed_classes(tid, cls):
    assert killed_class(solid_torus(tid).complex) == cls


def test_killed_class_rejects_non_tori():
    with pytest.raises(ValueError, match="not a solid torus"):
        killed_class(union(base_torus(1), base_torus(2)))


@pytest.mark.parametrize("family", range(1, 10))
def test_killed_class_independent_of_index(family):
    classes = {killed_class(solid_torus(TorusCatalogId(family, n)).complex) for n in (0, 1, 5, 8)}
    assert len(classes) == 1


def test_poincare_duality_on_glued_manifolds():
    for a, b in [("T1", "T2"), ("T3,0", "T4,0"), ("T4,0", "T9,0"), ("T7,0", "T7,1")]:
        h = homology(union(solid_torus(a).complex, solid_torus(b).complex))
        assert h.betti[0] == h.betti[3] == 1
        assert h.betti[1] == h.betti[2]
        assert h[2].torsion == ()


def test_sphere_profiles():
    assert sphere_profile(3) == HomologyProfile((AbelianGroup(1, ()), AbelianGroup(0, ()), AbelianGroup(0, ()),
                                                 AbelianGroup(1, ())))


# ------------------------------------------------------------ properties


def _random_matrix(rng):
    rows, cols = rng.randint(1, 40), rng.randint(1, 40)
    density = rng.choice((0.2, 0.5, 1.0))
    return [[rng.randint(-9, 9) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


@PROPERTY
@given(st.integers(0, 10 ** 9))
def test_snf_identity(seed):
    A = _random_matrix(random.Random(seed))
    d = smith_normal_form(A)
    assert matmul(matmul(d.U, A), d.V) == d.D
    assert abs(determinant(d.U)) == 1 and abs(determinant(d.V)) == 1
    f = d.invariant_factors
    assert all(x > 0 for x in f)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    for i, row in enumerate(d.D):
        for j, x in enumerate(row):
            assert x == (f[i] if i == j and i < len(f) else 0)
    ours = [x for x in f if x != 1]
    theirs = [abs(int(x)) for x in sympy_factors(sympy.Matrix(A), domain=sympy.ZZ) if x != 0 and abs(int(x)) != 1]
    assert ours == theirs


@PROPERTY
@given(st.integers(0, 10 ** 9))
def test_abelianized_edge_path_group_is_h1(seed):
    rng = random.Random(seed)
    kind = rng.randrange(3)
    if kind == 0:
        X = random_connected_complex(rng, 3 + rng.randrange(6), rng.randrange(12))
    elif kind == 1:
        X = random_surface(rng, rng.randrange(5))
    else:
        X = random_sphere(rng, 3, rng.randrange(5))
    base = sorted(X.vertices)[rng.randrange(len(X.vertices))]
    assert abelianization(edge_path_presentation(X, base)) == homology(X)[1]


@PROPERTY
@given(st.integers(0, 10 ** 9))
def test_h0_counts_components(seed):
    rng = random.Random(seed)
    facets = [tuple(str(v) for v in rng.sample(range(10), rng.randint(1, 3))) for _ in range(rng.randint(1, 8))]
    X = from_facets(facets)
    assert homology(X).betti[0] == len(connected_components(X))
