"""
Command line front end.

    quasitri catalog T1,7 --format json
    quasitri catalog --glue T3,0 T4,0
    quasitri assemble --census 6.8 --out x.facets
    quasitri verify x.facets --dim 4 --report json
    quasitri homology x.facets
    quasitri recognize S.facets
    quasitri charfun enumerate --polygon hexagon --bounds -3..3 --complete-only --json
    quasitri census --filter '5.*'

Every run writes a header line (version, seed, input hash) to stderr.  The
exit status is 0 exactly when every requested check passed.
"""
import argparse
import hashlib
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from . import __version__
from .algebra import homology
from .assembly import (AssemblySpec, build_equilibrium, census_entry, glue_tori, select_census,
                       verify_census_entry, verify_closed_4manifold)
from .catalog import TorusCatalogId, expected_f0, solid_torus
from .charfun import (HexagonBounds, PentagonBounds, RectangleBounds, check_hexagon_bullets, enumerate_hexagon,
                      enumerate_pentagon, enumerate_rectangle, lens_parameters)
from .recognition import bistellar_reduce, is_closed_manifold, is_closed_surface, is_sphere_2d
from .simplicial import (SimplicialComplex, euler_characteristic, f_vector, from_facet_text, from_json,
                         to_facet_text, to_json)


def default_seed() -> int:
    raw = os.environ.get("QUASITRI_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"QUASITRI_SEED must be an integer, got {raw!r}")


def parse_range(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_pair(text: str):
    parts = text.strip("()[] ").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    return int(parts[0]), int(parts[1])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasitri", allow_abbrev=False,
                                description="Solid tori, lens spaces and equilibrium triangulations.")
    p.add_argument("--version", action="version", version=f"quasitri {__version__}")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: $QUASITRI_SEED or 0)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", allow_abbrev=False, help="dump or check catalog solid tori")
    c.add_argument("ids", nargs="*", help="torus ids such as T1, T1,7 or 4,0")
    c.add_argument("--format", choices=("facets", "json"), default="facets")
    c.add_argument("--out")
    c.add_argument("--check", action="store_true", help="print f0, killed class and boundary check")
    c.add_argument("--all", action="store_true", help="check every T_{j,n} with n <= --max-index")
    c.add_argument("--max-index", type=int, default=8)
    c.add_argument("--glue", action="store_true", help="glue the two given tori and identify the 3-manifold")
    c.add_argument("--json", action="store_true")

    a = sub.add_parser("assemble", allow_abbrev=False, help="build an equilibrium triangulation")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--census", help="census key, e.g. 6.8")
    g.add_argument("--tori", nargs="+", help="one torus id per polygon edge")
    a.add_argument("--out")
    a.add_argument("--format", choices=("facets", "json"), default="facets")

    v = sub.add_parser("verify", allow_abbrev=False, help="verify a closed manifold triangulation")
    _input(v)
    v.add_argument("--dim", type=int, default=None)
    v.add_argument("--report", choices=("text", "json"), default="text")
    v.add_argument("--budget", type=int, default=100000)
    v.add_argument("--strict", action="store_true", help="fail on uncertified links")

    h = sub.add_parser("homology", allow_abbrev=False, help="integral homology of a complex")
    _input(h)
    h.add_argument("--json", action="store_true")

    r = sub.add_parser("recognize", allow_abbrev=False, help="recognize 2-spheres, surfaces and 3-spheres")
    _input(r)
    r.add_argument("--dim", type=int, default=None, help="expected dimension (checked)")
    r.add_argument("--budget", type=int, default=100000)
    r.add_argument("--certificate", help="write the move sequence as JSON")
    r.add_argument("--json", action="store_true")

    ch = sub.add_parser("charfun", allow_abbrev=False, help="characteristic function enumerations")
    chs = ch.add_subparsers(dest="action", required=True)
    e = chs.add_parser("enumerate", allow_abbrev=False)
    e.add_argument("--polygon", choices=("rectangle", "pentagon", "hexagon"), required=True)
    e.add_argument("--bounds", type=parse_range, help="range for k and the free parameters, e.g. -3..3")
    e.add_argument("--l-bounds", type=parse_range, help="range for l (hexagon default -1..1)")
    e.add_argument("--complete-only", action="store_true")
    e.add_argument("--json", action="store_true")
    ln = chs.add_parser("lens", allow_abbrev=False)
    ln.add_argument("xi_i", type=parse_pair)
    ln.add_argument("xi_j", type=parse_pair)
    bl = chs.add_parser("bullets", allow_abbrev=False, help="compare printed hexagon cases with the enumeration")
    bl.add_argument("--json", action="store_true")

    cs = sub.add_parser("census", allow_abbrev=False, help="rebuild and verify the census examples")
    cs.add_argument("--filter", default="*", help="key pattern such as '6.*' or '5.1,7.15'")
    cs.add_argument("--budget", type=int, default=100000)
    cs.add_argument("--strict", action="store_true")
    cs.add_argument("--jobs", type=int, default=1)
    cs.add_argument("--json", action="store_true")
    for sp in (c, a, v, h, r, e, ln, bl, cs):
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


def _input(sp):
    sp.add_argument("path", nargs="?", help="facet or JSON file, '-' for stdin")
    sp.add_argument("--in", dest="input", help="same as the positional path")


_NEGATIVE_PAIR = re.compile(r"^-\d+,-?\d+$")


def _fix_negative_ranges(argv: Sequence[str]) -> List[str]:
    # "--bounds -3..3" and a lens vector "-1,0" would be read as unknown options
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--bounds", "--l-bounds"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        elif _NEGATIVE_PAIR.match(tok):
            out.append(f"({tok})")
        else:
            out.append(tok)
    return out


def read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def parse_complex(data: bytes) -> SimplicialComplex:
    text = data.decode()
    stripped = text.lstrip()
    if stripped.startswith("{") and not stripped.startswith("{}"):
        return from_json(text)
    return from_facet_text(text)


def header(args, payload: bytes) -> str:
    digest = hashlib.sha256(payload).hexdigest()[:16]
    return f"# quasitri {__version__} command={args.command} seed={args.seed} input=sha256:{digest}"


def emit(text: str, out: Optional[str] = None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def export(X: SimplicialComplex, fmt: str) -> str:
    return to_json(X) if fmt == "json" else to_facet_text(X)


# ------------------------------------------------------------ subcommands


def cmd_catalog(args) -> int:
    if args.glue:
        if len(args.ids) != 2:
            raise SystemExit("--glue needs exactly two torus ids")
        rep = glue_tori(args.ids[0], args.ids[1])
        if args.json:
            print(json.dumps(rep.to_json(), sort_keys=True))
        else:
            print(f"{rep.tori[0]} u {rep.tori[1]}: f={f_vector(rep.complex)} {rep.homology} "
                  f"orientable={rep.orientable} -> {rep.identified}")
        return 0 if rep.orientable else 1
    ids = [TorusCatalogId.parse(t) for t in args.ids]
    if args.all:
        ids = [TorusCatalogId(j) for j in (1, 2, 3)]
        ids += [TorusCatalogId(j, n) for j in range(1, 10) for n in range(args.max_index + 1)]
    if not ids:
        raise SystemExit("give torus ids or --all")
    if args.check or args.all:
        rows, ok = [], True
        for t in ids:
            e = solid_torus(t)
            h = homology(e.complex)
            good = e.f0 == expected_f0(t) and h.matches([1, 1, 0, 0], [[], [], [], []])
            ok &= good
            rows.append({"id": str(t), "f0": e.f0, "killed": list(e.killed), "homology": str(h), "ok": good})
        if args.json:
            print(json.dumps(rows, sort_keys=True))
        else:
            for r in rows:
                print(f"{r['id']:8} f0={r['f0']:3} killed={tuple(r['killed'])!s:9} {r['homology']} "
                      f"{'ok' if r['ok'] else 'FAIL'}")
        return 0 if ok else 1
    if len(ids) != 1:
        raise SystemExit("dump one torus at a time (or use --check)")
    emit(export(solid_torus(ids[0]).complex, args.format), args.out)
    return 0


def cmd_assemble(args) -> int:
    spec = census_entry(args.census).spec if args.census else AssemblySpec(tuple(args.tori))
    X = build_equilibrium(spec)
    emit(export(X, args.format), args.out)
    print(f"f_vector={f_vector(X)} tori={' '.join(str(t) for t in spec.tori)}", file=sys.stderr)
    return 0


def cmd_verify(args, X: SimplicialComplex) -> int:
    d = X.dim if args.dim is None else args.dim
    if d == 4:
        rep = verify_closed_4manifold(X, args.budget, args.seed)
        doc = rep.to_json()
        ok = rep.ok(args.strict)
    else:
        mrep = is_closed_manifold(X, d, args.budget, args.seed)
        h = homology(X)
        doc = {"f_vector": list(f_vector(X)), "euler": euler_characteristic(X), "homology": h.to_json(),
               "closed": mrep.closed, "links": mrep.to_json()["links"]}
        ok = mrep.closed and not mrep.failed and not (args.strict and mrep.uncertified)
    if args.report == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"f_vector: {tuple(doc['f_vector'])}")
        print(f"euler: {doc['euler']}")
        print(f"closed: {doc['closed']}")
        counts = {}
        for link in doc["links"]:
            counts[link["status"]] = counts.get(link["status"], 0) + 1
        print("links: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
        bad = [link["vertex"] for link in doc["links"] if link["status"] not in ("sphere", "certified-sphere")]
        if bad:
            print("problem vertices: " + " ".join(bad))
    if not ok:
        print("verification failed", file=sys.stderr)
    return 0 if ok else 1


def cmd_homology(args, X: SimplicialComplex) -> int:
    h = homology(X)
    print(json.dumps(h.to_json(), sort_keys=True) if args.json else str(h))
    return 0


def cmd_recognize(args, X: SimplicialComplex) -> int:
    if args.dim is not None and args.dim != X.dim:
        raise SystemExit(f"input has dimension {X.dim}, expected {args.dim}")
    doc = {"dim": X.dim}
    if X.dim == 2:
        doc["sphere"] = is_sphere_2d(X)
        doc["closed_surface"] = is_closed_surface(X)
        ok = doc["sphere"]
    elif X.dim == 3:
        cert = bistellar_reduce(X, budget=args.budget, seed=args.seed)
        doc["verdict"] = cert.verdict
        doc["moves"] = len(cert.moves)
        if args.certificate:
            with open(args.certificate, "w") as fh:
                json.dump(cert.to_json(), fh)
        ok = cert.certified
    else:
        raise SystemExit("recognize handles 2- and 3-dimensional complexes")
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(" ".join(f"{k}={v}" for k, v in doc.items()))
    return 0 if ok else 1


def cmd_charfun(args) -> int:
    if args.action == "lens":
        lp = lens_parameters(args.xi_i, args.xi_j)
        print(f"p={lp.p} q={lp.q} {lp.name()}")
        return 0
    if args.action == "bullets":
        checks = check_hexagon_bullets()
        if args.json:
            print(json.dumps([c.to_json() for c in checks], sort_keys=True))
        else:
            for c in checks:
                print(f"(k,l)=({c.k},{c.l}) {c.status}" + "".join(f"\n    {p}" for p in c.problems))
        return 0
    b = args.bounds
    if args.polygon == "rectangle":
        sols = enumerate_rectangle(RectangleBounds(b, b) if b else RectangleBounds())
    elif args.polygon == "pentagon":
        sols = enumerate_pentagon(PentagonBounds(b, b, b) if b else PentagonBounds())
    else:
        d = HexagonBounds()
        sols = enumerate_hexagon(HexagonBounds(b or d.k, args.l_bounds or d.l, b or d.a, b or d.c))
    if args.complete_only:
        sols = [s for s in sols if s.complete]
    if args.json:
        print(json.dumps([s.to_json() for s in sols], sort_keys=True))
    else:
        for s in sols:
            print(" ".join(f"{k}={v}" for k, v in s.params) + (" complete" if s.complete else ""))
    return 0


def _census_one(job):
    key, budget, seed = job
    return verify_census_entry(key, budget, seed).to_json()


def cmd_census(args) -> int:
    entries = select_census(args.filter)
    jobs = [(e.key, args.budget, args.seed) for e in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_census_one, jobs))
    else:
        results = [_census_one(j) for j in jobs]
    all_ok = True
    for r in results:
        uncertified = [x["vertex"] for x in r["report"]["links"] if x["status"] == "uncertified"]
        ok = all(r["checks"].values()) and not (args.strict and uncertified)
        r["ok"] = ok
        all_ok &= ok
    if args.json:
        print(json.dumps(results, sort_keys=True))
    else:
        print(f"{'key':6} {'label':7} {'m':>2} {'f0':>4} {'listed':>6} {'chi':>4} {'b2':>3}  checks")
        for r in results:
            h = r["report"]["homology"]
            failed = [k for k, v in r["checks"].items() if not v]
            notes = ("  [" + "; ".join(r["notes"]) + "]") if r["notes"] else ""
            status = "ok" if r["ok"] else "FAIL " + ",".join(failed or ["uncertified"])
            print(f"{r['key']:6} {r['label']:7} {r['m']:>2} {r['f0']:>4} {r['expected_f0']:>6} "
                  f"{r['report']['euler']:>4} {h['betti'][2]:>3}  {status}{notes}")
            for s in r["sectors"]:
                if not s["match"]:
                    print(f"       sector C{s['sector'][0]}OC{s['sector'][1]}: {s['tori'][0]} u {s['tori'][1]} "
                          f"has H1={s['h1']} but the characteristic data give p={s['p']}")
    return 0 if all_ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_fix_negative_ranges(argv))
    if args.seed is None:
        args.seed = default_seed()
    payload = " ".join(argv).encode()
    X = None
    if args.command in ("verify", "homology", "recognize"):
        path = args.input or args.path
        if not path or (args.input and args.path):
            raise SystemExit("give exactly one input path")
        payload = read_input(path)
        X = parse_complex(payload)
    print(header(args, payload), file=sys.stderr)
    try:
        if args.command == "catalog":
            return cmd_catalog(args)
        if args.command == "assemble":
            return cmd_assemble(args)
        if args.command == "verify":
            return cmd_verify(args, X)
        if args.command == "homology":
            return cmd_homology(args, X)
        if args.command == "recognize":
            return cmd_recognize(args, X)
        if args.command == "charfun":
            return cmd_charfun(args)
        if args.command == "census":
            return cmd_census(args)
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
