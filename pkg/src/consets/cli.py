"""Command-line interface binding the counting, family, transfer and search
modules into reproducible batch runs.  Exit codes: 0 success, 1 computation
error, 2 usage error."""

import argparse
import sys

from . import counting, families, graphs, search, transfer


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok != ""]


def _load_gadget(path: str, cycle: str) -> families.Gadget:
    with open(path) as fh:
        line = fh.readline()
    base = graphs.parse_graph6(line)
    return families.Gadget(base, tuple(_parse_int_list(cycle)))


def _mode_label(dominating: bool, independent: bool = False) -> str:
    if independent:
        return "independent"
    return "dominating_connected" if dominating else "connected"


def _cmd_count(args, out) -> int:
    mode = _mode_label(args.dominating, args.independent)
    for g in graphs.read_graph6_file(args.infile):
        if args.engine == "both":
            a = counting.count_sets(g, mode, engine="brute")
            b = counting.count_sets(g, mode, engine="recursive")
            if a != b:
                print(
                    f"engine disagreement on {graphs.to_graph6(g)}: brute={a} recursive={b}",
                    file=sys.stderr,
                )
                return 1
            cnt = a
        else:
            cnt = counting.count_sets(g, mode, engine=args.engine)
        c = _fmt(counting.c_value(cnt, g.n)) if cnt >= 1 and g.n >= 1 else "-"
        print(f"{graphs.to_graph6(g)}\t{g.n}\t{mode}\t{cnt}\t{c}", file=out)
    return 0


def _cmd_family(args, out) -> int:
    if args.name == "glue":
        if not (args.gadget and args.cycle and args.k):
            raise ValueError("glue needs --gadget, --cycle and --k")
        g = families.glue(_load_gadget(args.gadget, args.cycle), args.k)
    elif args.name == "near_extremal":
        params = _parse_int_list(args.params or "")
        if len(params) != 2:
            raise ValueError("near_extremal needs --params n,d")
        g = families.near_extremal(*params)
    elif args.name == "generalized_petersen":
        params = _parse_int_list(args.params or "")
        if len(params) != 2:
            raise ValueError("generalized_petersen needs --params n,k")
        g = families.generalized_petersen(*params)
    else:
        g = families.standard_family(args.name, _parse_int_list(args.params or ""))
    line = graphs.to_graph6(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(line + "\n")
    else:
        print(line, file=out)
    return 0


def _cmd_transfer(args, out) -> int:
    gadget = _load_gadget(args.gadget, args.cycle)
    tm = transfer.build_matrix(gadget, args.mode, merge=args.merge, trim=not args.no_trim)
    if args.dump_matrix:
        with open(args.dump_matrix, "w") as fh:
            fh.write(tm.to_dump())
    spectral = transfer.dominant_eigenvalue(tm, tol=args.tol, max_iter=args.max_iter)
    print(f"dim {tm.dim}", file=out)
    print(f"lambda {_fmt(spectral.lam)}", file=out)
    if args.second:
        print(f"second {_fmt(transfer.second_modulus(tm, spectral))}", file=out)
    print(f"bound {_fmt(spectral.bound)}", file=out)
    return 0


def _cmd_search(args, out) -> int:
    mode = _mode_label(args.dominating)
    if args.infile:
        stream = graphs.read_graph6_file(args.infile)
        girth_min = 3
    else:
        spec = dict(tok.split("=") for tok in args.gen.split(","))
        girth_min = int(spec.get("girth", 3))
        stream = search.generate_regular(int(spec["n"]), int(spec["d"]), girth_min)
    report = search.search_extremal(stream, mode, girth_min=girth_min, jobs=args.jobs)
    for g in report.extremal:
        print(
            f"{report.n}\t{report.d if report.d is not None else '-'}\t{report.girth_min}"
            f"\t{mode}\t{report.max_count}\t{_fmt(report.c)}"
            f"\t{graphs.to_graph6(g)}\t{report.extremal_girth}",
            file=out,
        )
    return 0


def _cmd_table(args, out) -> int:
    mode = _mode_label(args.dominating)
    orders = _parse_int_list(args.n_list)
    for n in orders:
        report = search.search_extremal(
            search.graphs_for_order(n, args.d, args.g, args.corpus),
            mode, girth_min=args.g, jobs=args.jobs,
        )
        c4 = counting.round_up_4dec(report.max_count, n)
        print(
            f"{n}\t{args.g}\t{report.max_count}\t{_fmt(report.c)}\t{c4:.4f}"
            f"\t{report.extremal_girth}",
            file=out,
        )
    return 0


def _cmd_ratio(args, out) -> int:
    gadget = _load_gadget(args.gadget, args.cycle)
    mode = "dominating" if args.dominating else "connected"
    ratios = transfer.ratio_estimate(gadget, mode, args.k_max)
    for k, r in enumerate(ratios, start=2):
        print(f"{k}\t{_fmt(r)}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="consets",
        description="count connected and dominating-connected vertex sets, "
                    "build gadget transfer matrices, search extremal regular graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count sets for each graph6 line of a file")
    c.add_argument("--in", dest="infile", required=True)
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--dominating", action="store_true")
    grp.add_argument("--independent", action="store_true")
    c.add_argument("--engine", choices=["brute", "recursive", "both", "auto"], default="auto")

    f = sub.add_parser("family", help="emit a named or glued graph as graph6")
    f.add_argument("--name", required=True)
    f.add_argument("--params")
    f.add_argument("--gadget")
    f.add_argument("--cycle")
    f.add_argument("--k", type=int)
    f.add_argument("--out")

    t = sub.add_parser("transfer", help="build the column-state matrix and report lambda")
    t.add_argument("--gadget", required=True)
    t.add_argument("--cycle", required=True)
    t.add_argument("--mode", choices=["connected", "dominating"], required=True)
    t.add_argument("--merge", action="store_true")
    t.add_argument("--no-trim", action="store_true")
    t.add_argument("--second", action="store_true")
    t.add_argument("--dump-matrix")
    t.add_argument("--tol", type=float, default=1e-10)
    t.add_argument("--max-iter", type=int, default=100_000)

    s = sub.add_parser("search", help="extremal search over a corpus or generated stream")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="infile")
    src.add_argument("--gen", help="n=N,d=D,girth=G")
    s.add_argument("--dominating", action="store_true")
    s.add_argument("--jobs", type=int, default=1)

    tb = sub.add_parser("table", help="reproduce extremal-value table rows")
    tb.add_argument("--d", type=int, required=True)
    tb.add_argument("--g", type=int, required=True)
    tb.add_argument("--n-list", required=True)
    tb.add_argument("--dominating", action="store_true")
    tb.add_argument("--corpus")
    tb.add_argument("--jobs", type=int, default=1)

    r = sub.add_parser("ratio", help="exact-count growth ratios of a glued family")
    r.add_argument("--gadget", required=True)
    r.add_argument("--cycle", required=True)
    r.add_argument("--k-max", type=int, required=True)
    r.add_argument("--dominating", action="store_true")
    return p


_HANDLERS = {
    "count": _cmd_count,
    "family": _cmd_family,
    "transfer": _cmd_transfer,
    "search": _cmd_search,
    "table": _cmd_table,
    "ratio": _cmd_ratio,
}


def run(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return _HANDLERS[args.command](args, out)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> int:
    return run()
