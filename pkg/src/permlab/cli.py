"""Command-line interface.

Exit codes: 0 everything checked holds, 1 usage or input error,
2 a mathematical violation or identity mismatch (witness written to stderr).
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from . import closed_forms as cf
from . import graphs as gr
from . import lab
from .errors import PermlabError
from .graphs import Graph
from .matrix import ExactMatrix, from_text, hadamard_square, laplacian, n_identity_minus_ones
from .permanent import permanent
from .reports import dumps, identity_to_dict, render, report_to_dict
from .search import (
    CampaignConfig,
    erdos_renyi,
    integer_gram,
    load_config,
    parse_range,
    random_unicyclic,
    run_campaign,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class UsageError(PermlabError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for violations here
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


_SHORTHAND = [
    (re.compile(r"^k(\d+),(\d+)$"), lambda a, b: gr.complete_bipartite(int(a), int(b))),
    (re.compile(r"^k(\d+)$"), lambda n: gr.complete(int(n))),
    (re.compile(r"^c(\d+)$"), lambda n: gr.cycle(int(n))),
    (re.compile(r"^p(\d+)$"), lambda n: gr.path(int(n))),
    (re.compile(r"^s(\d+)$"), lambda n: gr.star(int(n))),
    (re.compile(r"^f(\d+)$"), lambda n: gr.friendship(int(n))),
]


def parse_graph_spec(text: str) -> Graph:
    """``k3``, ``c5``, ``p4``, ``s3`` (star), ``f2`` (friendship), ``k2,3``,
    ``family:params`` such as ``windmill:4,3``, or ``g6:<graph6>``."""
    t = text.strip()
    if t.startswith("g6:"):
        return gr.from_graph6(t[3:])
    low = t.lower()
    for pat, build in _SHORTHAND:
        m = pat.match(low)
        if m:
            return build(*m.groups())
    if ":" in low:
        name, params = low.split(":", 1)
        return gr.make_family(name, [int(p) for p in params.split(",") if p])
    raise UsageError(f"cannot understand graph {text!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _witness(payload: dict[str, Any]) -> None:
    sys.stderr.write("VIOLATION\n" + dumps(payload))


def _jobs(value: int | None) -> int:
    return max(1, value or 1)


# ---------------------------------------------------------------------------
# verify

def _instances_for_verify(args: argparse.Namespace) -> list[tuple[str, Graph | None, ExactMatrix | None]]:
    out: list[tuple[str, Graph | None, ExactMatrix | None]] = []
    if args.family:
        fixed = [int(p) for p in args.params.split(",") if p] if args.params else []
        if args.n:
            lo, hi = parse_range(args.n)
            for k in range(lo, hi + 1):
                g = gr.make_family(args.family, fixed + [k])
                out.append((f"{args.family}({','.join(map(str, fixed + [k]))})", g, None))
        else:
            g = gr.make_family(args.family, fixed)
            out.append((f"{args.family}({','.join(map(str, fixed))})", g, None))
    elif args.graph6:
        for lineno, line in enumerate(_read(args.graph6).splitlines(), start=1):
            if not line.strip():
                continue
            try:
                out.append((f"{args.graph6}:{lineno}", gr.from_graph6(line.strip()), None))
            except PermlabError as exc:
                raise UsageError(f"{args.graph6} line {lineno}: {exc}") from None
    elif args.edgelist:
        out.append((args.edgelist, gr.from_edgelist(_read(args.edgelist)), None))
    elif args.matrix:
        out.append((args.matrix, None, from_text(_read(args.matrix))))
    else:
        raise UsageError("verify needs one of --family, --graph6, --edgelist, --matrix")
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    jobs = _jobs(args.jobs)
    rows, bad = [], []
    for name, g, a in _instances_for_verify(args):
        if g is not None:
            rep = lab.verify_graph(g, name, f"Laplacian of {name} (graph6 {gr.to_graph6(g)})", jobs=jobs)
        else:
            rep = lab.chollet_check(a, name, f"matrix from {name}", jobs=jobs)
        rows.append(report_to_dict(rep, args.timing))
        if not rep.holds:
            bad.append({"report": report_to_dict(rep),
                        "instance": {"graph6": gr.to_graph6(g), "edges": [list(e) for e in g.edges]} if g is not None
                        else {"rows": [[str(x) for x in r] for r in a.rows]}})
    _emit(render(rows, args.format, {"command": "verify", "all_hold": not bad}), args.out)
    for w in bad:
        _witness(w)
    return EXIT_VIOLATION if bad else EXIT_OK


# ---------------------------------------------------------------------------
# identity

def _matrix_source(args: argparse.Namespace) -> ExactMatrix:
    if args.matrix:
        return from_text(_read(args.matrix))
    if args.family:
        return laplacian(parse_graph_spec(args.family))
    raise UsageError("need --matrix FILE or --family GRAPH")


def cmd_identity(args: argparse.Namespace) -> int:
    name = args.identity
    if name in ("coalesce", "coalesce-hadamard"):
        if not (args.g1 and args.g2):
            raise UsageError(f"identity {name} needs --g1 and --g2")
        g1, g2 = parse_graph_spec(args.g1), parse_graph_spec(args.g2)
        fn = lab.verify_coalescence_identity if name == "coalesce" else lab.verify_hadamard_coalescence_identity
        check = fn(g1, args.v1, g2, args.v2)
    elif name == "diag":
        check = lab.verify_diag_multilinearity(_matrix_source(args), args.i, args.alpha)
    elif name == "sign":
        check = lab.verify_sign_property(_matrix_source(args))
    elif name == "lieb":
        check = lab.verify_lieb_bound(_matrix_source(args), args.i)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown identity {name}")
    d = identity_to_dict(check)
    if args.format == "json":
        _emit(render([d], "json", {"command": "identity"}), args.out)
    else:
        row = {"identity": check.name, "lhs": str(check.lhs), "relation": check.relation,
               "rhs": str(check.rhs), "holds": check.holds}
        _emit(render([row], args.format), args.out)
    if not check.holds:
        _witness(d)
        return EXIT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# table

def _cycle_rows(max_n: int, cross: int) -> list[dict[str, Any]]:
    rows = []
    for n in range(3, max_n + 1):
        s = cf.cycle_series(n)
        per, perh = cf.cycle_laplacian_permanents(n)
        row: dict[str, Any] = {
            "n": n, "U": str(s.U), "V": str(s.V), "F": str(s.F),
            "per": str(per), "per_hadamard": str(perh), "gap": str(per * per - perh),
            "formula": "odd" if n % 2 else "even-derived",
        }
        if n <= cross:
            lap = laplacian(gr.cycle(n))
            row["ryser_match"] = (permanent(lap), permanent(hadamard_square(lap))) == (per, perh)
        else:
            row["ryser_match"] = None
        row["holds"] = per * per >= perh
        rows.append(row)
    return rows


def _clique_rows(max_n: int, cross: int) -> list[dict[str, Any]]:
    rows = []
    for n in range(2, max_n + 1):
        for s in (n - 1, n):
            v = cf.clique_form(n, s)
            row: dict[str, Any] = {
                "n": n, "s": s, "per": str(v.per_M), "per_hadamard": str(v.per_MM),
                "gap": str(v.per_M ** 2 - v.per_MM),
            }
            if n <= cross:
                m = n_identity_minus_ones(n, s)
                row["ryser_match"] = (permanent(m), permanent(hadamard_square(m))) == (v.per_M, v.per_MM)
            else:
                row["ryser_match"] = None
            row["holds"] = v.per_M ** 2 >= v.per_MM
            rows.append(row)
    return rows


def _scalar_rows(max_n: int) -> list[dict[str, Any]]:
    rows = []
    for n in range(2, max_n + 1):
        for m in (n - 1, n):
            c = cf.clique_scalar_holds(n, m)
            rows.append({"n": n, "m": m, "P": str(c.P), "Q": str(c.Q), "holds": c.holds})
    return rows


def cmd_table(args: argparse.Namespace) -> int:
    if args.table == "cycles":
        if args.max_n < 3:
            raise UsageError("table cycles needs --max-n >= 3")
        rows = _cycle_rows(args.max_n, args.crosscheck_max_n)
    elif args.table == "cliques":
        if args.max_n < 2:
            raise UsageError("table cliques needs --max-n >= 2")
        rows = _clique_rows(args.max_n, args.crosscheck_max_n)
    else:
        if args.max_n < 2:
            raise UsageError("table scalar needs --max-n >= 2")
        rows = _scalar_rows(args.max_n)
    bad = [r for r in rows if not r["holds"] or r.get("ryser_match") is False]
    _emit(render(rows, args.format, {"command": f"table {args.table}", "all_hold": not bad}), args.out)
    for r in bad:
        _witness(r)
    return EXIT_VIOLATION if bad else EXIT_OK


# ---------------------------------------------------------------------------
# search

def _config_from_args(args: argparse.Namespace) -> CampaignConfig:
    if args.config:
        cfg = load_config(_read(args.config))
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.trials is not None:
            overrides["trials"] = args.trials
        if overrides:
            cfg = replace(cfg, **overrides)
        return cfg
    if not (args.gen and args.n and args.trials):
        raise UsageError("search needs --config FILE or --gen, --n and --trials")
    lo, hi = parse_range(args.n)
    extra = {k: getattr(args, k) for k in ("edge_percent", "diag_max", "offdiag_min", "gram_cols",
                                            "gram_entry_max", "max_clique") if getattr(args, k) is not None}
    return CampaignConfig(args.gen, lo, hi, args.trials, args.seed or 0, **extra)


def cmd_search(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    report = run_campaign(cfg, jobs=_jobs(args.jobs))
    body = report.to_dict(details=args.details, timing=args.timing)
    _emit(dumps(body), args.out)
    for v in body["violations"]:
        _witness(v)
    return EXIT_VIOLATION if report.violations else EXIT_OK


# ---------------------------------------------------------------------------
# explore (evidence only)

def cmd_explore(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    rows = []
    if args.probe == "coalesce":
        for t in range(args.trials):
            n1, n2 = rng.randint(2, args.max_n), rng.randint(2, args.max_n)
            g1 = erdos_renyi(n1, 60, rng) if rng.randrange(2) else random_unicyclic(max(n1, 3), rng)
            g2 = erdos_renyi(n2, 60, rng)
            v1, v2 = rng.randrange(g1.n), rng.randrange(g2.n)
            p = lab.probe_coalescence(g1, v1, g2, v2)
            rows.append({
                "trial": t, "g1": gr.to_graph6(g1), "v1": v1, "g2": gr.to_graph6(g2), "v2": v2,
                "whole_1": p.whole_1, "minor_1": p.minor_1, "whole_2": p.whole_2, "minor_2": p.minor_2,
                "minor_hypothesis_failed": p.minor_hypothesis_failed,
                "conclusion_holds": p.conclusion.holds, "conclusion_gap": str(p.conclusion.gap),
            })
    else:
        for t in range(args.trials):
            n = rng.randint(2, args.max_n)
            a = integer_gram(n, n, 2, rng)
            d = [rng.randint(0, 3) for _ in range(n)]
            p = lab.probe_diagonal_addition(a, d)
            rows.append({
                "trial": t, "n": n, "diagonal": d,
                "base_holds": p.base.holds, "shifted_holds": p.shifted.holds,
                "shifted_gap": str(p.shifted.gap),
            })
    body = {"command": f"explore {args.probe}", "exploratory": True,
            "note": "evidence only; neither outcome is backed by a theorem", "rows": rows}
    _emit(dumps(body) if args.format == "json" else render(rows, args.format), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="permlab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser, formats: Sequence[str] = ("json", "csv", "table")) -> None:
        sp.add_argument("--format", choices=formats, default="json")
        sp.add_argument("--out", help="write the report here instead of stdout")

    v = sub.add_parser("verify", help="measure per(L o L) <= per(L)^2 on graphs or matrices")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help=f"one of: {', '.join(gr.FAMILY_NAMES)}")
    src.add_argument("--graph6", metavar="FILE", help="one graph6 string per line")
    src.add_argument("--edgelist", metavar="FILE")
    src.add_argument("--matrix", metavar="FILE")
    v.add_argument("--n", metavar="RANGE", help="N or A..B; appended as the last family parameter")
    v.add_argument("--params", help="fixed leading family parameters, comma separated")
    v.add_argument("--jobs", type=int)
    v.add_argument("--timing", action="store_true", help="include wall-clock timings")
    common(v)
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identity", help="check one of the exact identities / bounds")
    i.add_argument("identity", choices=("coalesce", "coalesce-hadamard", "diag", "sign", "lieb"))
    i.add_argument("--g1")
    i.add_argument("--v1", type=int, default=0)
    i.add_argument("--g2")
    i.add_argument("--v2", type=int, default=0)
    i.add_argument("--family", help="graph whose Laplacian is used, e.g. k3, c5, windmill:3,2")
    i.add_argument("--matrix", metavar="FILE")
    i.add_argument("--i", type=int, default=0)
    i.add_argument("--alpha", type=int, default=1)
    common(i)
    i.set_defaults(func=cmd_identity)

    t = sub.add_parser("table", help="closed-form tables with engine cross-checks")
    t.add_argument("table", choices=("cycles", "cliques", "scalar"))
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--crosscheck-max-n", type=int, default=12,
                   help="compare against the engine up to this n (default 12)")
    common(t)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("search", help="seeded random campaign")
    s.add_argument("--config", metavar="FILE", help="key = value campaign file")
    s.add_argument("--gen", help="er, tree, unicyclic, block, z-bipartite, gram")
    s.add_argument("--n", metavar="RANGE")
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int)
    for opt in ("edge-percent", "diag-max", "offdiag-min", "gram-cols", "gram-entry-max", "max-clique"):
        s.add_argument(f"--{opt}", type=int)
    s.add_argument("--jobs", type=int)
    s.add_argument("--details", action="store_true", help="include every instance's report")
    s.add_argument("--timing", action="store_true", help="include timings (breaks byte-identical output)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("explore", help="exploratory probes for open questions (evidence only)")
    e.add_argument("probe", choices=("coalesce", "diag"))
    e.add_argument("--trials", type=int, default=50)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--max-n", type=int, default=6)
    common(e)
    e.set_defaults(func=cmd_explore)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PermlabError as exc:
        print(f"permlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
