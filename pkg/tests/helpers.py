"""Random complexes for the property suites."""
import random

from quasitri.simplicial import (SimplicialComplex, bistellar_move, from_facets, link, simplex_boundary,
                                 sort_vertices)


def legal_moves(X: SimplicialComplex):
    """Bistellar moves of index >= 1: faces whose link is the boundary of a missing simplex."""
    d = X.dim
    out = []
    for k in range(2, d + 1):  # |alpha| = k, |beta| = d + 2 - k
        for a in sorted(X.faces(k - 1), key=sort_vertices):
            L = link(X, a)
            b = L.vertices
            if len(b) == d + 2 - k and b not in X and L == simplex_boundary(b):
                out.append((a, b))
    return out


def random_sphere(rng: random.Random, d: int, steps: int) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex scrambled by random bistellar moves."""
    X = simplex_boundary(range(d + 2))
    fresh = d + 2
    for _ in range(steps):
        moves = legal_moves(X)
        if moves and rng.random() < 0.6:
            a, b = moves[rng.randrange(len(moves))]
        else:
            facets = sorted(X.facets, key=sort_vertices)
            a, b = facets[rng.randrange(len(facets))], [str(fresh)]
            fresh += 1
        X = bistellar_move(X, a, b)
    return X


def random_connected_complex(rng: random.Random, n: int, extra: int) -> SimplicialComplex:
    facets = [(str(i), str(i + 1)) for i in range(n - 1)]
    for _ in range(extra):
        size = rng.choice((2, 3, 3, 4))
        facets.append(tuple(str(v) for v in rng.sample(range(n), min(size, n))))
    return from_facets(facets)


def random_surface(rng: random.Random, genus_like_steps: int) -> SimplicialComplex:
    """A 2-sphere, torus or RP2 scrambled by moves; used for presentations with nontrivial H1."""
    base = rng.choice(("sphere", "torus", "rp2"))
    if base == "sphere":
        return random_sphere(rng, 2, genus_like_steps)
    if base == "torus":
        X = from_facets("013 124 235 346 045 156 026 023 134 245 356 046 015 126".split())
    else:
        X = from_facets("124 126 135 136 145 234 235 256 346 456".split())
    fresh = 10
    for _ in range(genus_like_steps):
        moves = legal_moves(X)
        if moves and rng.random() < 0.6:
            a, b = moves[rng.randrange(len(moves))]
        else:
            facets = sorted(X.facets, key=sort_vertices)
            a, b = facets[rng.randrange(len(facets))], [f"x{fresh}"]
            fresh += 1
        X = bistellar_move(X, a, b)
    return X
