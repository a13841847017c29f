import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from helpers import legal_moves, random_connected_complex, random_sphere
from quasitri.catalog import TORUS_FACETS, TorusCatalogId, base_torus, seven_vertex_torus, solid_torus, subdivided_first_torus
from quasitri.simplicial import (SimplicialComplex, bistellar_move, boundary_complex, cone, connected_sum,
                                 euler_characteristic, f_vector, from_facet_text, from_facets, from_json,
                                 induced_subcomplex, is_induced, is_isomorphic, is_pure, is_weak_pseudomanifold,
                                 join, link, parse_compact, quotient, quotient_with_report, relabel, simplex,
                                 simplex_boundary, sorted_facets, stellar_subdivide, to_facet_text, to_json, union,
                                 vertex_key)

PROPERTY = settings(max_examples=100, derandomize=True, deadline=None)
T = seven_vertex_torus()


def test_subsumed_facets_dropped():
    assert sorted_facets(from_facets(["012", "01"])) == [("0", "1", "2")]


def test_empty_complex():
    X = from_facets([])
    assert X.dim == -1 and f_vector(X) == ()


def test_torus_f_vector():
    assert from_facets(TORUS_FACETS.split()) == T
    assert f_vector(T) == (7, 21, 14)
    assert euler_characteristic(T) == 0


def test_sphere_euler():
    assert euler_characteristic(simplex_boundary("0123")) == 2
    assert euler_characteristic(simplex_boundary("01234")) == 0


def test_faces_out_of_range_empty():
    assert T.faces(5) == frozenset()


def test_vertex_link_in_torus_is_hexagon():
    L = link(T, ["0"])
    assert f_vector(L) == (6, 6)
    assert all(len([e for e in L.facets if v in e]) == 2 for v in L.vertices)
    assert L.vertices == frozenset("123456")


def test_link_of_empty_face_and_tetrahedron():
    assert link(T, []) == T
    assert link(simplex_boundary("0123"), ["0"]) == simplex_boundary("123")


def test_link_of_non_face():
    with pytest.raises(ValueError, match="not a face"):
        link(T, ["0", "1", "2"])


def test_cone_block():
    B = cone("V2", union(base_torus(1), base_torus(2)))
    assert len(B.vertices) == 8 and B.dim == 4


def test_join_examples():
    assert join(simplex("01"), simplex("23")) == simplex("0123")
    assert join(T, from_facets([()])) == T
    with pytest.raises(ValueError):
        join(simplex("01"), simplex("12"))
    with pytest.raises(ValueError):
        cone("0", T)


def test_boundaries():
    assert boundary_complex(base_torus(1)) == T
    assert boundary_complex(union(base_torus(1), base_torus(2))).facets == frozenset()
    fan = from_facets(["012", "013", "014"])
    assert not is_weak_pseudomanifold(fan)
    with pytest.raises(ValueError):
        boundary_complex(fan)


def test_induced_subcomplex():
    assert induced_subcomplex(T, "016") == from_facets(["01", "16", "06"])
    assert induced_subcomplex(T, T.vertices) == T
    assert induced_subcomplex(T, []) == from_facets([()])
    assert is_induced(T, from_facets(["01", "16", "06"]))
    assert not is_induced(T, from_facets(["01", "16"]))


def test_stellar_examples():
    S = stellar_subdivide(simplex_boundary("0123"), "012", "u")
    assert f_vector(S) == (5, 9, 6)
    E = stellar_subdivide(T, "01", "u")
    assert f_vector(E)[0] == 8 and euler_characteristic(E) == 0
    with pytest.raises(ValueError):
        stellar_subdivide(T, "01", "2")
    with pytest.raises(ValueError):
        stellar_subdivide(T, "012", "u")


def test_first_torus_construction():
    X = subdivided_first_torus()
    assert len(X.vertices) == 9
    assert X == solid_torus(TorusCatalogId(1, 0)).complex


def test_last_construction_step():
    # undo the last move and redo it
    X = subdivided_first_torus()
    before = bistellar_move(X, ["u1_0", "v1_0"], "345")
    assert bistellar_move(before, "345", ["u1_0", "v1_0"]) == X


def test_zero_move_on_sphere():
    S = bistellar_move(simplex_boundary("01234"), "0123", ["u"])
    assert len(S.vertices) == 6 and len(S.facets) == 8


@pytest.mark.parametrize("alpha,beta,msg", [
    ("01", "23", "dim alpha"),
    ("0123", "0", "disjoint"),
    ("0123", "4", "new vertex"),
    ("012", "34", "induced subcomplex"),
])
def test_move_precondition_errors(alpha, beta, msg):
    with pytest.raises(ValueError, match=msg):
        bistellar_move(simplex_boundary("01234"), alpha, beta)


def test_quotient_identity_partition():
    assert quotient(T, [[v] for v in T.vertices]) == T


def test_quotient_collapse_is_reported():
    X = from_facets(["012", "123"])
    Y, collapsed = quotient_with_report(X, [["0", "3"], ["1"], ["2"]])
    assert collapsed == []
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        quotient(X, [["0", "1"], ["2"], ["3"]])
    assert w and "collapses" in str(w[0].message)


def _sum_of_spheres():
    X = simplex_boundary("01234")
    Y = relabel(simplex_boundary("01234"), lambda v: "y" + v)
    return X, Y


def test_connected_sum_two_spheres():
    from quasitri.algebra import homology, sphere_profile
    X, Y = _sum_of_spheres()
    Z = connected_sum(X, Y, "0123", ["y0", "y1", "y2", "y3"], {"0": "y0", "1": "y1", "2": "y2", "3": "y3"})
    assert len(Z.vertices) == 5 + 5 - 3 - 1
    assert homology(Z) == sphere_profile(3)


def test_connected_sum_dimension_mismatch():
    with pytest.raises(ValueError):
        connected_sum(simplex_boundary("0123"), simplex_boundary(["a", "b", "c", "d", "e"]), "012",
                      ["a", "b", "c", "d"], {"0": "a", "1": "b", "2": "c"})


def _four_sphere(n_vertices: int, tag: str) -> SimplicialComplex:
    # boundary of the 5-simplex with extra vertices starred into facets
    X = simplex_boundary([f"{tag}{i}" for i in range(6)])
    for i in range(n_vertices - 6):
        X = stellar_subdivide(X, sorted_facets(X)[0], f"{tag}n{i}")
    return X


@pytest.mark.parametrize("j,k,l", [(1, 0, 0), (1, 1, 0), (0, 0, 2), (2, 1, 1)])
def test_connected_sum_count_formula(j, k, l):
    # placeholder 4-spheres with 9, 9 and 11 vertices give 4j + 4k + 6l + 5 vertices
    sizes = [9] * j + [9] * k + [11] * l
    X = _four_sphere(sizes[0], "a")
    for i, n in enumerate(sizes[1:]):
        Y = _four_sphere(n, f"b{i}_")
        s1, s2 = sorted_facets(X)[-1], sorted_facets(Y)[0]
        X = connected_sum(X, Y, s1, s2, dict(zip(s1, s2)))
    assert len(X.vertices) == 4 * j + 4 * k + 6 * l + 5


def test_relabel_and_isomorphism():
    T1 = base_torus(1)
    assert relabel(T1, lambda v: str((int(v) + 1) % 7)) == T1
    assert relabel(T1, lambda v: str((2 * int(v)) % 7)) == base_torus(2)
    with pytest.raises(ValueError):
        relabel(T1, lambda v: "0")
    phi = is_isomorphic(solid_torus("T4,0").complex, solid_torus("T5,0").complex)
    assert phi is not None
    assert relabel(solid_torus("T4,0").complex, phi) == solid_torus("T5,0").complex
    assert is_isomorphic(base_torus(1), T) is None


def test_pairwise_base_tori_meet_in_torus():
    from quasitri.simplicial import intersection
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert intersection(base_torus(i), base_torus(j)) == T


def test_vertex_order():
    assert vertex_key("2") < vertex_key("10") < vertex_key("u1_2") < vertex_key("u1_10")


def test_text_format():
    text = to_facet_text(T)
    assert len(text.splitlines()) == 14
    assert text.splitlines()[0] == "0 1 3"
    assert from_facet_text(text) == T
    assert to_facet_text(from_facets([()])) == "{}\n"
    assert from_facet_text("{}\n") == from_facets([()])
    assert from_facet_text("# comment\n0 1 2\n") == simplex("012")
    assert from_json(to_json(T)) == T
    assert parse_compact("013 124") == from_facets(["013", "124"])


# ------------------------------------------------------------ properties


@PROPERTY
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_stellar_facet_then_reverse_move(seed, d):
    rng = random.Random(seed)
    X = random_sphere(rng, d, rng.randrange(6))
    facet = sorted_facets(X)[rng.randrange(len(X.facets))]
    Y = stellar_subdivide(X, facet, "new")
    assert Y == bistellar_move(X, facet, ["new"])
    assert bistellar_move(Y, ["new"], facet) == X


@PROPERTY
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_move_then_reverse_move(seed, d):
    rng = random.Random(seed)
    X = random_sphere(rng, d, 2 + rng.randrange(6))
    moves = legal_moves(X)
    if not moves:
        facet = sorted_facets(X)[0]
        moves = [(frozenset(facet), frozenset(["new"]))]
    a, b = moves[rng.randrange(len(moves))]
    Y = bistellar_move(X, a, b)
    assert bistellar_move(Y, b, a) == X


@PROPERTY
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_euler_invariant_under_moves(seed, d):
    rng = random.Random(seed)
    X = random_sphere(rng, d, rng.randrange(8))
    chi = euler_characteristic(X)
    faces = sorted(X.all_faces() - {frozenset()}, key=lambda f: sorted(f))
    alpha = faces[rng.randrange(len(faces))]
    assert euler_characteristic(stellar_subdivide(X, alpha, "star")) == chi
    for a, b in legal_moves(X)[:5]:
        assert euler_characteristic(bistellar_move(X, a, b)) == chi


@PROPERTY
@given(st.integers(0, 10 ** 6))
def test_facets_round_trip(seed):
    rng = random.Random(seed)
    X = random_connected_complex(rng, 3 + rng.randrange(6), rng.randrange(8))
    assert from_facets(X.facets) == X
    assert from_facet_text(to_facet_text(X)) == X


@PROPERTY
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_connected_sum_vertex_count(seed, d):
    rng = random.Random(seed)
    X = random_sphere(rng, d, rng.randrange(5))
    Y = relabel(random_sphere(rng, d, rng.randrange(5)), lambda v: "y" + v)
    s1 = sorted_facets(X)[rng.randrange(len(X.facets))]
    s2 = sorted_facets(Y)[rng.randrange(len(Y.facets))]
    perm = list(s2)
    rng.shuffle(perm)
    try:
        Z = connected_sum(X, Y, s1, s2, dict(zip(s1, perm)))
    except ValueError as exc:
        # identification can create a double edge on tiny complexes
        assert "not a simplicial complex" in str(exc)
        return
    assert len(Z.vertices) == len(X.vertices) + len(Y.vertices) - d - 1


@PROPERTY
@given(st.integers(0, 10 ** 6))
def test_link_dimension_bound(seed):
    rng = random.Random(seed)
    X = random_connected_complex(rng, 4 + rng.randrange(5), rng.randrange(10))
    for s in X.all_faces():
        assert link(X, s).dim <= X.dim - len(s)
    assert is_pure(random_sphere(rng, 2, 3))
