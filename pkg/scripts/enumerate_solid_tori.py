"""Exhaustive search: seven-vertex solid tori bounded by the torus, and all labelled seven-vertex tori."""
import time

from quasitri.catalog import base_torus, seven_vertex_torus
from quasitri.recognition import enumerate_solid_tori_7, enumerate_tori_7, isomorphism_classes
from quasitri.simplicial import sorted_facets


def main():
    t0 = time.perf_counter()
    found = enumerate_solid_tori_7(seven_vertex_torus())
    names = {tuple(sorted_facets(base_torus(j))): f"T{j}" for j in (1, 2, 3)}
    print(f"solid tori: {len(found)} ({time.perf_counter() - t0:.2f}s)")
    for X in found:
        print("  ", names.get(tuple(sorted_facets(X)), "unexpected"), " ".join("".join(f) for f in sorted_facets(X)))
    t0 = time.perf_counter()
    tori = enumerate_tori_7()
    classes = isomorphism_classes(tori)
    print(f"labelled tori: {len(tori)}, isomorphism classes: {len(classes)} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
