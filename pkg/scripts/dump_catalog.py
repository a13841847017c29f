"""Regenerate the facet files shipped under src/quasitri/data/tori."""
import argparse
from pathlib import Path

from quasitri.catalog import TorusCatalogId, ball, seven_vertex_torus, solid_torus
from quasitri.simplicial import to_facet_text

DEFAULT = Path(__file__).resolve().parents[1] / "src" / "quasitri" / "data" / "tori"


def shipped():
    yield "torus7", seven_vertex_torus()
    for j in (1, 2, 3):
        yield f"T{j}", solid_torus(TorusCatalogId(j)).complex
    for j in range(1, 10):
        yield f"T{j}_0", solid_torus(TorusCatalogId(j, 0)).complex
    for j in (1, 2, 3):
        yield f"T{j}_7", solid_torus(TorusCatalogId(j, 7)).complex
    yield "B4_0", ball(4, 0)
    yield "B7_0", ball(7, 0)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, X in shipped():
        (args.out / f"{name}.facets").write_text(to_facet_text(X))
        print(f"{name}: {len(X.vertices)} vertices, {len(X.facets)} facets")


if __name__ == "__main__":
    main()
