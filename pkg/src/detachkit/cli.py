"""Command-line front end.

Exit codes: 0 success, 1 finding (counterexample or discrepancy), 2 usage,
parse or precondition error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import constructions as C
from . import reports
from .errors import DetachkitError, ParseError, PreconditionError
from .fileformat import format_matroid, parse_graph_text, parse_matroid
from .matroid import Matroid

log = logging.getLogger("detachkit")

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _csv(text: str) -> list[str]:
    return [x for x in text.split(",") if x]


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in _csv(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="detachkit", description="N-detachable pairs and 3-separators in small matroids")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="case analysis for a pair (M, N)")
    a.add_argument("M")
    a.add_argument("N")
    a.add_argument("--all", action="store_true", help="collect every witness, not just the first")

    d = sub.add_parser("detect", help="list 3-separators")
    d.add_argument("M")
    d.add_argument("--kind", action="append", help="restrict to a kind (repeatable)")
    d.add_argument("--maximal", action="store_true", help="only inclusion-maximal spike-like sets")
    d.add_argument("--augment", action="store_true", help="also list augmentations")

    q = sub.add_parser("pairs", help="detachable pairs")
    q.add_argument("M")
    q.add_argument("--minor", metavar="N")

    x = sub.add_parser("exchange", help="Delta-Y on a triangle or Y-Delta on a triad")
    x.add_argument("M")
    g = x.add_mutually_exclusive_group(required=True)
    g.add_argument("--triangle", type=_csv)
    g.add_argument("--triad", type=_csv)
    x.add_argument("--minor", metavar="N")
    x.add_argument("--out", metavar="PATH")

    gen = sub.add_parser("generate", help="write a family member in matroid file format")
    gen.add_argument("family", choices=sorted(GENERATORS))
    gen.add_argument("--r", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--t", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--j", type=int)
    gen.add_argument("--tip", action="store_true")
    gen.add_argument("--cotip", action="store_true")
    gen.add_argument("--legs", type=int)
    gen.add_argument("--ranks", type=_ints, default=[])
    gen.add_argument("--line", type=int)
    gen.add_argument("--delete-s", action="store_true")
    gen.add_argument("--lengths", type=_ints)
    gen.add_argument("--reading", choices=("A", "B"), default="B")
    gen.add_argument("--out", metavar="PATH")

    v = sub.add_parser("verify-theorem", help="run the case analysis over a catalog")
    v.add_argument("--catalog", default="builtin", help="directory of matroid files, a catalog .json.gz, or 'builtin'")
    v.add_argument("--minor", metavar="N", help="fix N instead of using every catalog pair")
    v.add_argument("--max-m", type=int, default=12)

    c = sub.add_parser("chain-scan", help="classify catalog matroids without detachable pairs")
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--catalog", default="builtin")

    gv = sub.add_parser("graph-verify", help="graphic case analysis for graphs G, H (GRAPH files)")
    gv.add_argument("G")
    gv.add_argument("H")

    bc = sub.add_parser("build-catalog", help="regenerate the catalog file")
    bc.add_argument("--out", required=True)
    bc.add_argument("--exhaustive-max", type=int, default=8)
    bc.add_argument("--family-max", type=int, default=12)
    return p


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise _UsageError(f"{args.family} needs --{' --'.join(m.replace('_', '-') for m in missing)}")


def _gen_spike(a):
    _need(a, "t")
    return C.spike(a.t, a.tip, a.cotip), None


def _gen_wheel(a):
    _need(a, "r")
    return C.wheel(a.r), C.wheel_graph(a.r)


def _gen_whirl(a):
    _need(a, "r")
    return C.whirl(a.r), None


def _gen_uniform(a):
    _need(a, "r", "n")
    return C.uniform(a.r, a.n), None


def _gen_k3k(a):
    _need(a, "k")
    G = C.complete_bipartite_graph(3, a.k)
    return C.graphic(G, name=f"M(K3,{a.k})"), G


def _gen_complete(a):
    _need(a, "n")
    G = C.complete_graph(a.n)
    return C.graphic(G, name=f"M(K{a.n})"), G


def _gen_wheels_on_spike(a):
    _need(a, "legs")
    return C.attach_wheels_to_spike(C.WheelAttachmentSpec(legs=a.legs, wheel_ranks=tuple(a.ranks))), None


def _gen_common_spoke(a):
    _need(a, "line")
    spec = C.WheelAttachmentSpec(legs=len(a.ranks), wheel_ranks=tuple(a.ranks), line_size=a.line)
    return C.common_spoke_wheels(spec, delete_s=a.delete_s), None


def _gen_twisted_wheel(a):
    _need(a, "j", "k")
    G = C.twisted_wheel(a.j, a.k)
    return C.graphic(G, name=f"TW({a.j},{a.k})"), G


def _gen_unhinged(a):
    _need(a, "lengths")
    G = C.unhinged_multidim_wheel(a.lengths)
    return C.graphic(G, name="UMW"), G


def _gen_example(a):
    from .example import build_example

    return build_example(a.reading)[0], None


GENERATORS = {
    "spike": _gen_spike,
    "wheel": _gen_wheel,
    "whirl": _gen_whirl,
    "uniform": _gen_uniform,
    "k3k": _gen_k3k,
    "complete": _gen_complete,
    "fano": lambda a: (C.fano(), None),
    "non-fano": lambda a: (C.non_fano(), None),
    "wheels-on-spike": _gen_wheels_on_spike,
    "common-spoke": _gen_common_spoke,
    "twisted-wheel": _gen_twisted_wheel,
    "unhinged-wheel": _gen_unhinged,
    "example": _gen_example,
}


def _load_catalog(spec: str):
    from .catalog import Catalog, CatalogEntry, default_catalog

    if spec == "builtin":
        return default_catalog()
    path = Path(spec)
    if path.is_dir():
        files = sorted(path.glob("*.mat"))
        if not files:
            raise PreconditionError(f"no .mat files in {path}")
        return Catalog([CatalogEntry(f.stem, parse_matroid(f), "file") for f in files], 0)
    if path.is_file():
        return Catalog.load(path)
    raise PreconditionError(f"catalog {spec} not found")


def _label_list(M: Matroid, names: list[str]) -> list[int]:
    try:
        return [M.index(x) for x in names]
    except (KeyError, ValueError):
        raise PreconditionError(f"unknown element in {','.join(names)}") from None


def run(args) -> tuple[int, dict | None, str]:
    """Execute a parsed command; returns (exit code, report, text)."""
    from . import verify
    from .minors import detachable_pairs
    from .separators import augmentations, detect_all

    t0 = time.perf_counter()
    code = EXIT_OK
    if args.cmd == "analyze":
        M, N = parse_matroid(args.M), parse_matroid(args.N)
        out = verify.verify_main_theorem(M, N, all_witnesses=args.all)
        if out.case == "COUNTEREXAMPLE":
            code = EXIT_FINDING
        rep = reports.make_report("analyze", {"M": args.M, "N": args.N}, out)
    elif args.cmd == "detect":
        M = parse_matroid(args.M)
        certs = detect_all(M, args.kind, maximal_spikes=args.maximal)
        res = [c.to_dict(M) for c in certs]
        if args.augment:
            for c in certs:
                try:
                    augs = augmentations(M, c)
                except PreconditionError:
                    continue
                res += [c.augmented(z, side).to_dict(M) for z, side in augs]
        rep = reports.make_report("detect", {"M": args.M, "kind": args.kind}, res)
    elif args.cmd == "pairs":
        M = parse_matroid(args.M)
        N = parse_matroid(args.minor) if args.minor else None
        res = [p.to_dict(M) for p in detachable_pairs(M, N)]
        rep = reports.make_report("pairs", {"M": args.M, "minor": args.minor}, res)
    elif args.cmd == "exchange":
        M = parse_matroid(args.M)
        N = parse_matroid(args.minor) if args.minor else None
        if args.triangle:
            site = _label_list(M, args.triangle)
            M2 = C.delta_y(M, site)
        else:
            site = _label_list(M, args.triad)
            M2 = C.y_delta(M, site)
        if args.out:
            Path(args.out).write_text(format_matroid(M2), encoding="ascii", newline="\n")
        res = [p.to_dict(M2) for p in detachable_pairs(M2, N, require_3c=False)]
        rep = reports.make_report("exchange", {"M": args.M, "site": args.triangle or args.triad}, res)
    elif args.cmd == "generate":
        M, G = GENERATORS[args.family](args)
        text = format_matroid(M, G)
        if args.out:
            Path(args.out).write_text(text, encoding="ascii", newline="\n")
            return EXIT_OK, None, f"wrote {args.out}\n"
        return EXIT_OK, None, text
    elif args.cmd == "verify-theorem":
        cat = _load_catalog(args.catalog)
        N = parse_matroid(args.minor) if args.minor else None
        res = verify.verify_catalog(cat, N, args.max_m)
        if any(r["outcome"]["case"] == "COUNTEREXAMPLE" for r in res):
            code = EXIT_FINDING
        rep = reports.make_report("verify-theorem", {"catalog": args.catalog, "minor": args.minor}, res)
    elif args.cmd == "chain-scan":
        res = verify.chain_scan(args.max_n, _load_catalog(args.catalog))
        rep = reports.make_report("chain-scan", {"max_n": args.max_n}, res)
    elif args.cmd == "graph-verify":
        G = parse_graph_text(Path(args.G).read_text(encoding="ascii"))
        H = parse_graph_text(Path(args.H).read_text(encoding="ascii"))
        out = verify.verify_graphic_theorem(G, H)
        if out.case == "NONE" or out.separator_bug:
            code = EXIT_FINDING
        rep = reports.make_report("graph-verify", {"G": args.G, "H": args.H}, out)
    elif args.cmd == "build-catalog":
        from .catalog import build_catalog

        cat = build_catalog(args.exhaustive_max, args.family_max, progress=args.verbose)
        cat.save(args.out)
        return EXIT_OK, None, f"wrote {len(cat)} entries to {args.out}\n"
    else:  # pragma: no cover - argparse rejects unknown commands
        raise _UsageError(args.cmd)
    rep["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return code, rep, reports.summary(rep)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"detachkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        code, rep, text = run(args)
    except _UsageError as exc:
        print(f"detachkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"detachkit: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, DetachkitError, OSError) as exc:
        print(f"detachkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    if rep is not None and args.json:
        reports.save(rep, args.json)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
