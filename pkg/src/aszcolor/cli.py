"""Command line interface.

Subcommands: validate, color, bounds, chi, bp, gen, sweep.

Exit codes: 0 success, 1 invalid instance, 2 I/O or parse error,
3 internal invariant breach, 4 oracle or capacity limit exceeded.

Instance files are JSON objects {"n": int, "bicliques": [{"a": [...],
"b": [...]}, ...]} with an optional "expect_edges" count used as a cheap
integrity check.  All JSON output is emitted with sorted keys and fixed
indentation, so identical inputs produce identical bytes.

The env var ASZ_ORACLE_LIMIT overrides the vertex caps of both exact
oracles (chi and bp).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from .bicliques import (
    Biclique,
    BicliquePartition,
    DEFAULT_BP_VERTEX_LIMIT,
    bitvector_coloring,
    bp_exact,
    validate,
)
from .bounds import (
    build_table,
    closed_form_exponent,
    compare_mubayi_vishwanathan,
    mv_exponent,
    verify_bound_chain,
)
from .errors import CapacityError, OracleLimitError
from .generators import (
    conjecture_sweep,
    gen_matching,
    gen_random_partition,
    gen_star_partition,
)
from .graphs import DEFAULT_CHI_LIMIT, chromatic_number_exact, is_proper
from .recursion import asz_color

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_INTERNAL = 3
EXIT_LIMIT = 4

_ELIDE_ABOVE = 24
_HEAD_ROWS = 16
_TAIL_ROWS = 8


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _oracle_limit(default: int) -> int:
    raw = os.environ.get("ASZ_ORACLE_LIMIT")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"ASZ_ORACLE_LIMIT must be an integer, got {raw!r}") from None


def _check_int_list(vals, what: str) -> list[int]:
    if not isinstance(vals, list) or any(
        not isinstance(v, int) or isinstance(v, bool) for v in vals
    ):
        raise ValueError(f"{what} must be a list of integers")
    return vals


def load_instance(path: str) -> tuple[BicliquePartition, int | None]:
    """Parse an instance file; OSError and JSONDecodeError pass through."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("instance file must be a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError('instance file needs an integer "n"')
    raw = data.get("bicliques")
    if not isinstance(raw, list):
        raise ValueError('instance file needs a "bicliques" list')
    bicliques = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or "a" not in item or "b" not in item:
            raise ValueError(f'biclique {i} must be an object with "a" and "b" lists')
        a = _check_int_list(item["a"], f'biclique {i} field "a"')
        b = _check_int_list(item["b"], f'biclique {i} field "b"')
        bicliques.append(Biclique(tuple(a), tuple(b)))
    expect = data.get("expect_edges")
    if expect is not None and (not isinstance(expect, int) or isinstance(expect, bool)):
        raise ValueError('"expect_edges" must be an integer when present')
    return BicliquePartition(n, tuple(bicliques)), expect


def instance_to_obj(p: BicliquePartition) -> dict:
    return {
        "n": p.n,
        "bicliques": [
            {"a": list(b.part_a), "b": list(b.part_b)} for b in p.bicliques
        ],
        "expect_edges": len(p.graph.edges),
    }


def _violations_obj(rep) -> list[dict]:
    return [{"kind": v.kind, "details": v.details} for v in rep.violations]


def _load_valid(path: str) -> tuple[BicliquePartition, list[dict]]:
    """Load an instance and collect validity problems (empty list means OK)."""
    p, expect = load_instance(path)
    rep = validate(p)
    problems = _violations_obj(rep)
    if rep.ok and expect is not None:
        actual = len(p.graph.edges)
        if actual != expect:
            problems.append(
                {
                    "kind": "expect-edges-mismatch",
                    "details": {"expected": expect, "actual": actual},
                }
            )
    return p, problems


def _print_problems(problems: list[dict]) -> None:
    for item in problems:
        print(f"violation: {item['kind']} {json.dumps(item['details'], sort_keys=True)}")


def cmd_validate(args) -> int:
    p, problems = _load_valid(args.path)
    if args.json:
        obj = {"ok": not problems, "n": p.n, "m": p.m, "violations": problems}
        if not problems:
            obj["edges"] = len(p.graph.edges)
        _emit_json(obj)
    else:
        if problems:
            _print_problems(problems)
            print(f"INVALID: {len(problems)} violation(s)")
        else:
            print(f"OK: {p.m} bicliques partition {len(p.graph.edges)} edges on {p.n} vertices")
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_color(args) -> int:
    p, problems = _load_valid(args.path)
    if problems:
        _print_problems(problems)
        return EXIT_INVALID
    g = p.graph
    if args.strategy == "bitvector":
        coloring = bitvector_coloring(p)
        trace = []
        bound = 1 << p.m
        bound_name = "2^m"
    else:
        coloring, trace = asz_color(p, args.strategy)
        kind = "rec2" if args.strategy == "prop2" else "rec4"
        bound = build_table(kind, p.m)[p.m]
        bound_name = f"{kind}[m]"
    if not is_proper(g, coloring) or coloring.num_colors > bound:
        print(
            "internal error: coloring failed its own guarantee "
            f"(proper={is_proper(g, coloring)}, colors={coloring.num_colors}, bound={bound})",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    trace_rows = [
        {
            "m": r.m,
            "pivot": r.pivot,
            "side": r.side,
            "indegree": r.indegree,
            "contributing": r.contributing,
            "inside_size": r.inside_size,
            "outside_size": r.outside_size,
            "colors": r.colors,
        }
        for r in trace
    ]
    if args.json:
        obj = {
            "strategy": args.strategy,
            "n": p.n,
            "m": p.m,
            "colors": list(coloring.colors),
            "num_colors": coloring.num_colors,
            "bound": bound,
            "proper": True,
        }
        if args.trace:
            obj["trace"] = trace_rows
        _emit_json(obj)
    else:
        print(f"strategy: {args.strategy}")
        print(f"n={p.n} m={p.m}")
        print(f"colors used: {coloring.num_colors} (bound {bound_name} = {bound})")
        print("assignment: " + " ".join(str(c) for c in coloring.colors))
        if args.trace:
            print("trace (level, pivot, side, indegree, contributing, |inside|, |outside|, colors):")
            for r in trace_rows:
                print(
                    f"  m={r['m']:>4} pivot={r['pivot']:>4} side={r['side']} "
                    f"indeg={r['indegree']:>3} contrib={r['contributing']:>3} "
                    f"in={r['inside_size']:>4} out={r['outside_size']:>4} colors={r['colors']}"
                )
    return EXIT_OK


def cmd_chi(args) -> int:
    p, problems = _load_valid(args.path)
    if problems:
        _print_problems(problems)
        return EXIT_INVALID
    chi, witness = chromatic_number_exact(p.graph, limit=_oracle_limit(DEFAULT_CHI_LIMIT))
    if args.json:
        _emit_json({"chi": chi, "n": p.n, "witness": list(witness.colors)})
    else:
        print(f"chi = {chi}")
        print("witness: " + " ".join(str(c) for c in witness.colors))
    return EXIT_OK


def cmd_bp(args) -> int:
    p, problems = _load_valid(args.path)
    if problems:
        _print_problems(problems)
        return EXIT_INVALID
    m, witness = bp_exact(p.graph, max_n=_oracle_limit(DEFAULT_BP_VERTEX_LIMIT))
    wit_obj = [{"a": list(b.part_a), "b": list(b.part_b)} for b in witness.bicliques]
    if args.json:
        _emit_json({"bp": m, "n": p.n, "witness": wit_obj})
    else:
        print(f"bp = {m}")
        for item in wit_obj:
            print(f"  A={item['a']} B={item['b']}")
    return EXIT_OK


def _bounds_rows(rec4, rec2, k_max: int) -> list[list[str]]:
    rows = []
    for k in range(k_max + 1):
        cf = f"{closed_form_exponent(k):.6f}" if k >= 1 else "-"
        mv = f"{mv_exponent(k):.6f}" if k >= 1 else "-"
        rows.append([str(k), str(rec4[k]), str(rec2[k]), str(1 << k), cf, mv])
    return rows


def _print_table(header: list[str], rows: list[list[str]], full: bool) -> None:
    if not full and len(rows) > _ELIDE_ABOVE:
        shown = rows[:_HEAD_ROWS] + [None] + rows[-_TAIL_ROWS:]
        elided = len(rows) - _HEAD_ROWS - _TAIL_ROWS
    else:
        shown = list(rows)
        elided = 0
    widths = [len(h) for h in header]
    for row in shown:
        if row is None:
            continue
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    print(fmt.format(*header))
    for row in shown:
        if row is None:
            print(f"  ... ({elided} rows elided; pass --full for all) ...")
        else:
            print(fmt.format(*row))


def cmd_bounds(args) -> int:
    k_max = args.max
    if k_max < 0:
        raise ValueError("--max must be nonnegative")
    rec4 = build_table("rec4", k_max)
    rec2 = build_table("rec2", k_max)
    header = ["k", "rec4", "rec2", "2^k", "closed_form", "mv"]
    _print_table(header, _bounds_rows(rec4, rec2, k_max), args.full)
    status = EXIT_OK
    if args.mv:
        if k_max < 1:
            print("mv comparison needs --max >= 1")
        else:
            rep = compare_mubayi_vishwanathan(1, k_max)
            improved = sum(1 for r in rep.rows if r.passed)
            first = next((r.k for r in rep.rows if r.passed), None)
            print()
            print(
                f"closed form vs Mubayi-Vishwanathan on 1..{k_max}: "
                f"{improved}/{len(rep.rows)} sampled rows improved"
                + (f", first improvement at k={first}" if first is not None else "")
            )
            if rep.failures:
                status = EXIT_INTERNAL
                for f in rep.failures[:10]:
                    print(f"  FAIL {f}")
            else:
                print("  every k >= 10 improved")
    if args.check:
        if k_max < 4:
            raise ValueError("--check needs --max >= 4")
        rep = verify_bound_chain(k_max)
        print()
        if rep.ok:
            print(f"bound chain verified for 0 <= k <= {k_max}: OK ({rep.checked} values)")
        else:
            status = EXIT_INTERNAL
            print(f"bound chain FAILED ({len(rep.failures)} failures):")
            for f in rep.failures[:20]:
                print(f"  {f}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        csv_path = os.path.join(args.out, "bounds.csv")
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "rec4", "rec2", "log2_rec4", "log2_rec2", "closed_form", "mv"])
            for k in range(k_max + 1):
                w.writerow(
                    [
                        k,
                        rec4[k],
                        rec2[k],
                        f"{math.log2(rec4[k]):.9f}",
                        f"{math.log2(rec2[k]):.9f}",
                        f"{closed_form_exponent(k):.9f}" if k >= 1 else "",
                        f"{mv_exponent(k):.9f}" if k >= 1 else "",
                    ]
                )
        from .figures import render_bounds_figures

        figures = render_bounds_figures(rec4, rec2, args.out)
        print()
        print(f"wrote {csv_path}")
        for path in figures:
            print(f"wrote {path}")
    return status


def cmd_gen(args) -> int:
    if args.kind == "star":
        p = gen_star_partition(args.n)
    elif args.kind == "matching":
        p = gen_matching(args.m)
    else:
        p = gen_random_partition(args.n, args.m, args.seed)
    rep = validate(p)
    if not rep.ok:
        print("internal error: generator produced an invalid partition", file=sys.stderr)
        return EXIT_INTERNAL
    text = json.dumps(instance_to_obj(p), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def sweep_report_to_obj(report) -> dict:
    return {
        "n_max": report.n_max,
        "dedup": report.dedup,
        "graphs_checked": report.graphs_checked,
        "per_n": {str(k): v for k, v in report.per_n.items()},
        "max_gap": report.max_gap,
        "gap_counts": {str(k): v for k, v in report.gap_counts.items()},
        "ok": report.ok,
        "violations": list(report.violations),
        "extremal_count": len(report.extremal_witnesses),
        "extremal_witnesses": list(report.extremal_witnesses),
    }


def cmd_sweep(args) -> int:
    report = conjecture_sweep(
        args.n_max,
        dedup=args.dedup,
        jobs=args.jobs,
        progress_path=args.progress,
        checkpoint_every=args.checkpoint_every,
    )
    obj = sweep_report_to_obj(report)
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    print(
        f"checked {report.graphs_checked} graphs up to n={report.n_max}: "
        f"max gap {report.max_gap}, {len(report.violations)} violation(s), "
        f"{len(report.extremal_witnesses)} extremal witness(es)"
    )
    if report.violations:
        print("CONJECTURE VIOLATED; see the report", file=sys.stderr)
    if args.plot:
        from .figures import render_sweep_figure

        path = render_sweep_figure(report, args.plot)
        print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asz",
        description="Color graphs through their edge-disjoint biclique partitions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check an instance file")
    sp.add_argument("path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("color", help="color the union graph of an instance")
    sp.add_argument("path")
    sp.add_argument(
        "--strategy",
        choices=["thm1", "prop2", "greedy", "bitvector"],
        default="thm1",
    )
    sp.add_argument("--trace", action="store_true", help="include the recursion trace")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("bounds", help="print and verify the recurrence tables")
    sp.add_argument("--max", type=int, required=True, metavar="K")
    sp.add_argument("--check", action="store_true", help="verify the bound chain")
    sp.add_argument("--mv", action="store_true", help="compare against Mubayi-Vishwanathan")
    sp.add_argument("--full", action="store_true", help="print every row, however large")
    sp.add_argument("--out", metavar="DIR", help="write bounds.csv plus figures here")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("chi", help="exact chromatic number of the union graph")
    sp.add_argument("path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_chi)

    sp = sub.add_parser("bp", help="exact minimum biclique partition of the union graph")
    sp.add_argument("path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bp)

    sp = sub.add_parser("gen", help="generate instance files")
    kinds = sp.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("star", help="star partition of K_n")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--out")
    k.set_defaults(func=cmd_gen)
    k = kinds.add_parser("matching", help="m disjoint edges")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--out")
    k.set_defaults(func=cmd_gen)
    k = kinds.add_parser("random", help="random valid partition")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--out")
    k.set_defaults(func=cmd_gen)

    sp = sub.add_parser("sweep", help="exhaustive chi <= bp + 1 check on small graphs")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.add_argument("--progress", help="checkpoint/resume file")
    sp.add_argument("--checkpoint-every", type=int, default=5000)
    sp.add_argument("--dedup", action="store_true", help="only isomorphism class representatives")
    sp.add_argument("--plot", metavar="DIR", help="write the gap histogram here")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OracleLimitError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except json.JSONDecodeError as exc:
        print(f"error: cannot parse JSON: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
