"""
For every complete hexagon solution in a window, look for an integral change
of basis sending all six vectors to catalog killed classes, and for a
pairwise compatible choice of catalog tori.
"""
import argparse
import json
from dataclasses import dataclass

from quasitri.charfun import HexagonBounds, auto_assign, enumerate_hexagon, gl2_images


@dataclass
class FitRun:
    bounds: str = "-3..3"
    l_bounds: str = "-1..1"


def _range(text):
    lo, hi = text.split("..")
    return int(lo), int(hi)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bounds", default=FitRun.bounds)
    ap.add_argument("--l-bounds", default=FitRun.l_bounds)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    b, lb = _range(args.bounds), _range(args.l_bounds)
    rows = []
    for s in enumerate_hexagon(HexagonBounds(b, lb, b, b)):
        if not s.complete:
            continue
        fits = gl2_images(s.vectors())
        ids = auto_assign(s.vectors()) if fits else None
        v = s.values
        rows.append({**v, "fits": len(fits), "tori": [str(t) for t in ids] if ids else None})
    if args.json:
        print(json.dumps(rows, sort_keys=True))
        return
    for r in rows:
        tori = " ".join(r["tori"]) if r["tori"] else "-"
        print(f"(a,c,k,l)=({r['a']},{r['c']},{r['k']},{r['l']})  fits={r['fits']:3}  {tori}")
    none = [(r["a"], r["c"], r["k"], r["l"]) for r in rows if not r["fits"]]
    print(f"{len(rows)} complete solutions, {len(none)} without a catalog fit: {none}")


if __name__ == "__main__":
    main()
