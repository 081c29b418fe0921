"""Command-line interface.

Subcommands: views, stats, certify-min, certify-max, lp, oracle, cycle.
Exact rationals are printed as "p/q" strings; output is byte-deterministic
for fixed inputs.  Exit codes: 0 for PASS or DATA, 1 for FAIL, 2 for usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, certificate, graphs, localstats, lp
from .graphs import Graph, GraphParseError
from .localview import enumerate_views

SCHEMA = "pottslp-report/1"


class CliError(Exception):
    """Usage-level problem; maps to exit code 2."""


def _frac(text: str) -> Fraction:
    """Parse 'p/q' or an integer literal."""
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise CliError(f"malformed rational {text!r} (expected 'p/q' or integer)") from None


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def _load_config(path: str | None) -> dict[str, str]:
    """Key-value config: one 'key = value' per line, '#' comments."""
    if path is None:
        return {}
    cfg: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise CliError(f"config {path}:{lineno}: expected 'key = value'")
        key, value = body.split("=", 1)
        cfg[key.strip()] = value.strip()
    return cfg


def _graph_from_args(args) -> Graph:
    name = args.graph
    if name is not None:
        lowered = name.lower()
        if lowered == "k33":
            return graphs.complete_bipartite(3)
        if lowered == "k4":
            return graphs.complete(4)
        if lowered == "petersen":
            return graphs.petersen()
        if lowered.startswith("cycle:"):
            return graphs.cycle(int(lowered.split(":", 1)[1]))
        if lowered.startswith("prism:"):
            return graphs.prism(int(lowered.split(":", 1)[1]))
        raise CliError(f"unknown graph name {name!r} "
                       "(try k33, k4, petersen, cycle:n, prism:n)")
    if args.edge_list is not None:
        try:
            return graphs.from_edge_list(Path(args.edge_list).read_text())
        except OSError as exc:
            raise CliError(f"cannot read {args.edge_list!r}: {exc}") from None
    if args.graph6 is not None:
        return graphs.from_graph6(args.graph6)
    raise CliError("no graph given (use --graph, --edge-list, or --graph6)")


def _report(command: str, parameters: dict, verdict: str, payload: dict) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "verdict": verdict,
        "payload": payload,
    }


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_views(args) -> int:
    table = enumerate_views(args.degree, max_colors=args.max_colors)
    rows = []
    for i, v in enumerate(table):
        rows.append({
            "ordinal": i,
            "inner_edges": [f"{a}-{b}" for a, b in v.inner_edges],
            "boundary": [list(m) for m in v.boundary],
            "boundary_colors": v.q_c,
        })
    if args.format == "json":
        _emit(_report(
            "views",
            {"degree": args.degree, "max_colors": args.max_colors},
            "DATA",
            {"count": len(table), "views": rows},
        ))
    else:
        print(f"# {len(table)} local views for degree {args.degree} "
              "(ordered by inner edge count, inner edges, boundary)")
        for row in rows:
            inner = ",".join(row["inner_edges"]) or "none"
            bnd = " ".join("{" + ",".join(map(str, m)) + "}" for m in row["boundary"])
            print(f"{row['ordinal']:3d}  inner[{inner}]  boundary[{bnd}]  "
                  f"colors={row['boundary_colors']}")
    return 0


def _cmd_stats(args) -> int:
    table = enumerate_views(args.degree)
    if not 0 <= args.view < len(table):
        raise CliError(f"view ordinal {args.view} out of range 0..{len(table) - 1}")
    lq = localstats.local_quantities(table[args.view])
    if args.format == "json":
        _emit(_report(
            "stats",
            {"degree": args.degree, "view": args.view},
            "DATA",
            {
                "view": table[args.view].describe(),
                "partition_polynomial": lq.z.to_text().splitlines(),
                "center_energy_numerator": lq.uv_num.to_text().splitlines(),
                "neighborhood_energy_numerator": lq.un_num.to_text().splitlines(),
            },
        ))
    else:
        print(f"# view {args.view}: {table[args.view].describe()}")
        print("# local partition function Z")
        print(lq.z.to_text())
        print(f"# center energy numerator (divide by 2 Z)")
        print(lq.uv_num.to_text())
        print(f"# neighborhood energy numerator (divide by {2 * args.degree} Z)")
        print(lq.un_num.to_text())
    return 0


def _entry_payload(e: certificate.CertEntry) -> dict:
    return {
        "ordinal": e.ordinal,
        "is_zero": e.is_zero,
        "all_nonneg": e.all_nonneg,
        "negative_witness": e.negative_witness,
        "positive_probe": _frac_str(e.positive_probe),
        "terms": len(e.polynomial.terms),
    }


def _dump_polys(report: certificate.CertificateReport, directory: str) -> None:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    prefix = "slack" if report.kind == "min" else "diff"
    for e in report.entries:
        (out / f"{prefix}_{e.ordinal:02d}.txt").write_text(e.polynomial.to_text() + "\n")
    for e in report.q2_entries:
        (out / f"{prefix}_{e.ordinal:02d}_q2.txt").write_text(e.polynomial.to_text() + "\n")


def _cmd_certify(args, kind: str) -> int:
    if kind == "min":
        report = certificate.verify_min_certificate()
    else:
        report = certificate.verify_max_certificate()
    if args.dump_polys:
        _dump_polys(report, args.dump_polys)
    verdict = "PASS" if report.passed else "FAIL"
    if args.json:
        _emit(_report(
            f"certify-{kind}",
            {"degree": 3},
            verdict,
            {
                "zero_ordinals": list(report.zero_ordinals),
                "expected_zeros": list(report.expected_zeros),
                "multiplier_identity_verified": report.multiplier_identity_verified,
                "entries": [_entry_payload(e) for e in report.entries],
                "q2_entries": [_entry_payload(e) for e in report.q2_entries],
                "failures": report.failures(),
            },
        ))
    else:
        print(f"certify-{kind}: {verdict}")
        print(f"  views checked: {len(report.entries)} "
              f"(zero at {list(report.zero_ordinals)}, expected {list(report.expected_zeros)})")
        print(f"  q=2 specialization: {len(report.q2_entries)} views")
        for failure in report.failures():
            print(f"  FAILURE: {failure}")
    return 0 if report.passed else 1


def _cmd_lp(args, config: dict[str, str]) -> int:
    if args.mode == "scan":
        if args.lams:
            lams = [_frac(x) for x in args.lams.split(",")]
        else:
            lams = [Fraction(k, 16) for k in range(1, 16)]
        max_views = args.max_views
        if max_views is None:
            max_views = int(config.get("view_cap", os.environ.get(
                "POTTSLP_VIEW_CAP", lp.DEFAULT_VIEW_BUDGET)))
        scan = lp.tightness_scan(
            args.degree,
            args.colors,
            lams,
            constraint_set="q_partitions" if args.q_partitions else "energy_only",
            max_views=max_views,
            time_budget=args.time_budget,
        )
        payload = {
            "constraint_set": scan.constraint_set,
            "entries": [
                {
                    "lam": _frac_str(e.lam),
                    "lp_min": _frac_str(e.lp_min),
                    "u_bipartite": _frac_str(e.u_bipartite),
                    "gap": _frac_str(e.gap),
                    "loose": e.gap < 0,
                }
                for e in scan.entries
            ],
            "witnesses": [_frac_str(w) for w in scan.witnesses],
            "truncated": scan.truncated,
            "truncation_reason": scan.truncation_reason,
        }
        if args.csv:
            print("lam,lp_min,u_bipartite,gap,loose")
            for e in scan.entries:
                print(f"{e.lam},{e.lp_min},{e.u_bipartite},{e.gap},{int(e.gap < 0)}")
        else:
            _emit(_report(
                "lp scan",
                {"degree": args.degree, "colors": args.colors,
                 "lams": [_frac_str(x) for x in lams]},
                "DATA",
                payload,
            ))
        return 0

    lam = _frac(args.lam)
    instance = lp.build_lp(
        args.degree,
        args.colors,
        lam,
        constraint_set="q_partitions" if args.q_partitions else "energy_only",
        sense=args.sense,
    )
    solution = lp.solve_exact(instance)
    payload = {
        "status": solution.status,
        "variables": len(instance.views),
        "constraint_set": instance.constraint_set,
        "energy_row_redundant": instance.energy_row_redundant,
        "optimum": _frac_str(solution.optimum) if solution.optimum is not None else None,
        "distribution": {
            str(i): _frac_str(p) for i, p in sorted(solution.distribution.items())
        },
        "support_views": {
            str(i): instance.views[i].describe() for i in sorted(solution.distribution)
        },
        "dual_values": {k: _frac_str(v) for k, v in solution.dual_values.items()},
    }
    _emit(_report(
        "lp",
        {
            "degree": args.degree,
            "colors": args.colors,
            "lam": _frac_str(lam),
            "sense": args.sense,
            "q_partitions": bool(args.q_partitions),
        },
        "DATA",
        payload,
    ))
    return 0


def _cmd_oracle(args) -> int:
    g = _graph_from_args(args)
    lam = _frac(args.lam)
    evaluation = graphs.potts_evaluation(g, args.colors, lam,
                                         with_distribution=args.with_distribution)
    colorings = graphs.count_proper_colorings(g, args.colors)
    payload = {
        "vertices": g.n,
        "edges": g.edge_count,
        "partition": _frac_str(evaluation.partition),
        "energy": _frac_str(evaluation.energy),
        "proper_colorings": colorings,
    }
    if evaluation.monochromatic_edge_distribution is not None:
        payload["monochromatic_edge_weights"] = {
            str(m): _frac_str(w)
            for m, w in evaluation.monochromatic_edge_distribution.items()
        }
    _emit(_report(
        "oracle",
        {"colors": args.colors, "lam": _frac_str(lam),
         "graph": args.graph or args.edge_list or args.graph6},
        "DATA",
        payload,
    ))
    return 0


def _cmd_cycle(args) -> int:
    lam = _frac(args.lam)
    z, u = graphs.cycle_closed_forms(args.n, args.colors, lam)
    payload = {"partition": _frac_str(z), "energy": _frac_str(u)}
    verdict = "DATA"
    if args.verify:
        g = graphs.cycle(args.n)
        z_oracle = graphs.potts_partition(g, args.colors, lam)
        u_oracle = graphs.internal_energy(g, args.colors, lam)
        payload["verified"] = z_oracle == z and u_oracle == u
        verdict = "PASS" if payload["verified"] else "FAIL"
    _emit(_report(
        "cycle",
        {"n": args.n, "colors": args.colors, "lam": _frac_str(lam)},
        verdict,
        payload,
    ))
    return 0 if verdict != "FAIL" else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pottslp",
        description="Exact Potts internal-energy extremes: local views, "
                    "certificates, LPs, and a brute-force oracle.",
    )
    parser.add_argument("--config", help="key = value config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("views", help="enumerate canonical local views")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--max-colors", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("stats", help="exact local quantities of one view")
    p.add_argument("--view", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")

    for kind in ("min", "max"):
        p = sub.add_parser(f"certify-{kind}",
                           help=f"verify the {kind}imization certificate")
        p.add_argument("--json", action="store_true")
        p.add_argument("--dump-polys", metavar="DIR", default=None)

    p = sub.add_parser("lp", help="build and solve the exact LP")
    p.add_argument("mode", nargs="?", choices=("scan",), default=None,
                   help="optional 'scan' for a tightness scan over lam values")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--lam", default=None, help="rational like 1/2 (solve mode)")
    p.add_argument("--sense", choices=("min", "max"), default="min")
    p.add_argument("--q-partitions", action="store_true")
    p.add_argument("--lams", default=None,
                   help="comma-separated rationals for scan (default k/16)")
    p.add_argument("--csv", action="store_true", help="CSV output for scan")
    p.add_argument("--max-views", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None)

    p = sub.add_parser("oracle", help="brute-force Z, U, and coloring count")
    p.add_argument("--graph", default=None,
                   help="k33, k4, petersen, cycle:n, prism:n")
    p.add_argument("--edge-list", default=None, help="edge list file")
    p.add_argument("--graph6", default=None, help="graph6 string")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--with-distribution", action="store_true")

    p = sub.add_parser("cycle", help="cycle closed forms (optionally verified)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--verify", action="store_true")

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.command == "views":
            return _cmd_views(args)
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "certify-min":
            return _cmd_certify(args, "min")
        if args.command == "certify-max":
            return _cmd_certify(args, "max")
        if args.command == "lp":
            if args.mode != "scan" and args.lam is None:
                raise CliError("--lam is required unless running 'lp scan'")
            return _cmd_lp(args, config)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "cycle":
            return _cmd_cycle(args)
        raise CliError(f"unknown command {args.command!r}")
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
