"""Command-line interface: tables, covers, verification, conversion, bounds.

Exit codes: 0 success, 2 parse/format failure, 3 precondition violation,
4 verification failure, 5 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import bounds_report, known_theta_bounds, simple_lower_bound
from .constructions import (
    BlockRole,
    cliques_from_code,
    code_from_cover_simple,
    code_from_cover_two_element,
    cover_from_blocks,
    cover_k1,
    cover_k2,
    cover_k3,
    cover_recursive,
    find_conversion_element,
)
from .errors import (
    BudgetExceededError,
    FormatError,
    JCoverError,
    PreconditionError,
    VerificationError,
)
from .files import (
    load_blocks,
    load_cover,
    load_words,
    save_cover,
    save_words,
    write_solver_log,
)
from .graph import (
    Code,
    Cover,
    GraphParams,
    complement_cover,
    cover_stats,
    verify_cover,
)
from .codes import theta_cover_from_lexicode
from .solver import (
    TIER_BUDGETS,
    anneal_cover,
    exact_theta,
    greedy_cover,
    outcome_cover,
)
from .subsets import ORDER_COLEX, ORDER_LEX

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4
EXIT_BUDGET = 5

METHODS = ("closed_form", "recursive", "lexicode", "blocks", "exact", "anneal", "greedy")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except JCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcover",
        description="Clique covers of Johnson graphs: build, verify, convert, tabulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="grid of best known bounds on the covering number")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--tier", choices=("bounds", "fast", "extended"), default="fast")
    _common_flags(p)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("cover", help="construct a cover and write it with a report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--tier", choices=tuple(TIER_BUDGETS), default="fast")
    p.add_argument("--blocks", help="block design file for --method blocks")
    _common_flags(p)
    p.set_defaults(handler=cmd_cover)

    p = sub.add_parser("lexicode", help="shorthand for cover --method lexicode on J(2k,k)")
    p.add_argument("--k", type=int, required=True)
    _common_flags(p)
    p.set_defaults(handler=cmd_lexicode)

    p = sub.add_parser("verify", help="check a cover file and report its statistics")
    p.add_argument("file")
    _common_flags(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("convert", help="turn a cover into a code or a code into cliques")
    p.add_argument("file")
    p.add_argument(
        "--direction",
        choices=("cover_to_code", "code_to_cover"),
        default="cover_to_code",
    )
    p.add_argument("--j", type=int, help="conversion element (found automatically if omitted)")
    p.add_argument("--j1", type=int, help="first element of a two-element conversion")
    p.add_argument("--j2", type=int, help="second element of a two-element conversion")
    _common_flags(p)
    p.set_defaults(handler=cmd_convert)

    p = sub.add_parser("bounds", help="every applicable bound for one parameter pair")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--blocks", help="block design file; its size enters as an upper bound")
    _common_flags(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("stats", help="clique-kind counts and generator membership counts")
    p.add_argument("file")
    _common_flags(p)
    p.set_defaults(handler=cmd_stats)

    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument(
        "--order-convention", choices=(ORDER_COLEX, ORDER_LEX), default=ORDER_COLEX
    )
    p.add_argument("--out", help="output file (artifact for cover/convert, report otherwise)")
    p.add_argument("--format", choices=("text", "structured"), default="text")


# ---------------------------------------------------------------------------
# table


def cmd_table(args: argparse.Namespace) -> int:
    if args.max_n > 15:
        raise PreconditionError(f"table is limited to max-n <= 15, got {args.max_n}")
    if args.max_n < 2:
        raise PreconditionError(f"need max-n >= 2, got {args.max_n}")
    cells = [
        _table_cell(GraphParams(n, k), args.tier, args.seed, args.threads)
        for n in range(2, args.max_n + 1)
        for k in range(1, n)
    ]
    report = {"max_n": args.max_n, "tier": args.tier, "cells": cells}
    text = _render_table(report)
    _emit(args, report, text)
    return EXIT_OK


def _table_cell(params: GraphParams, tier: str, seed: int, threads: int) -> dict:
    rep = bounds_report(params)
    lower, upper = rep.lower_simple, rep.upper_recursive
    lower_src, upper_src = "counting", "recursive"
    if rep.closed_form is not None:
        lower = upper = rep.closed_form
        lower_src = upper_src = "closed_form"
    elif tier in ("fast", "extended") and params.n <= 8:
        outcome = exact_theta(params, tier="fast", seed=seed, threads=threads)
        lower = max(lower, outcome.lower_bound)
        if outcome.best_value < upper:
            upper, upper_src = outcome.best_value, "solver"
        lower_src = "solver"
    elif tier == "extended" and params.n <= 10:
        annealed = anneal_cover(params, seed=seed, threads=threads)
        if annealed.size < upper:
            upper, upper_src = annealed.size, "anneal"

    known = known_theta_bounds(params)
    consistent = True
    best_lower, best_upper = lower, upper
    if known is not None:
        consistent = lower <= known[1] and known[0] <= upper
        if known[0] > best_lower:
            best_lower, lower_src = known[0], "table"
        if known[1] < best_upper:
            best_upper, upper_src = known[1], "table"
    return {
        "n": params.n,
        "k": params.k,
        "lower": best_lower,
        "upper": best_upper,
        "exact": best_lower == best_upper,
        "consistent": consistent,
        "lower_source": lower_src,
        "upper_source": upper_src,
    }


def _render_table(report: dict) -> str:
    cells = {(c["n"], c["k"]): c for c in report["cells"]}
    max_n = report["max_n"]
    width = max(
        5, max(len(_cell_text(c)) for c in report["cells"]) + 1
    )
    header = "  N |" + "".join(f"{f'k={k}':>{width}}" for k in range(1, max_n))
    lines = [header, "-" * len(header)]
    for n in range(2, max_n + 1):
        row = f"{n:>3} |"
        for k in range(1, max_n):
            cell = cells.get((n, k))
            row += f"{_cell_text(cell) if cell else '':>{width}}"
        lines.append(row.rstrip())
    lines.append("(a-b marks an interval; ! marks disagreement with the stored table)")
    return "\n".join(lines)


def _cell_text(cell: dict) -> str:
    text = (
        str(cell["lower"])
        if cell["exact"]
        else f"{cell['lower']}-{cell['upper']}"
    )
    return text + ("" if cell["consistent"] else "!")


# ---------------------------------------------------------------------------
# cover construction


def cmd_cover(args: argparse.Namespace) -> int:
    params = GraphParams(args.n, args.k)
    report: dict = {"n": args.n, "k": args.k, "method": args.method}
    outcome = None

    if args.method == "closed_form":
        cover = _closed_form_cover(params)
    elif args.method == "recursive":
        cover = cover_recursive(params)
    elif args.method == "lexicode":
        if params.n != 2 * params.k:
            raise PreconditionError(
                f"lexicode covers need n = 2k, got ({params.n},{params.k})"
            )
        cover = theta_cover_from_lexicode(params.k, args.order_convention)
        report["order_convention"] = args.order_convention
    elif args.method == "blocks":
        if not args.blocks:
            raise PreconditionError("--method blocks needs --blocks <file>")
        cover = _cover_from_block_file(params, args.blocks)
    elif args.method == "exact":
        outcome = exact_theta(params, tier=args.tier, seed=args.seed, threads=args.threads)
        cover = outcome_cover(params, outcome)
        report["solver"] = {
            "status": outcome.status.name,
            "best_value": outcome.best_value,
            "lower_bound": outcome.lower_bound,
            "nodes_explored": outcome.nodes_explored,
            "seed": outcome.seed,
            "tier": args.tier,
        }
    elif args.method == "anneal":
        annealed = anneal_cover(params, seed=args.seed, threads=args.threads)
        cover = annealed.cover
        report["anneal"] = {"size": annealed.size, "seed": annealed.seed}
    else:
        cover = greedy_cover(params)

    check = verify_cover(cover)
    if not check.covered:
        raise VerificationError(
            f"constructed cover misses {len(check.uncovered_vertices)} vertices"
        )
    stats = cover_stats(cover)
    report.update(
        size=len(cover),
        verified=True,
        n_a=stats.n_a,
        n_b=stats.n_b,
        bounds=_bounds_comparison(params, len(cover)),
    )
    if args.out:
        save_cover(cover, args.out)
        report["out"] = args.out
        if outcome is not None:
            log_path = args.out + ".log"
            with open(log_path, "w") as stream:
                write_solver_log(stream, outcome.events)
            report["solver"]["log"] = log_path
    elif outcome is not None:
        report["solver"]["events"] = [list(e) for e in outcome.events]

    _emit(args, report, _render_pairs(report))
    return EXIT_OK


def _closed_form_cover(params: GraphParams) -> Cover:
    n, k = params.n, params.k
    if k <= 3:
        builder = {1: cover_k1, 2: cover_k2, 3: cover_k3}[k]
        return builder(n)
    if n - k <= 3:
        builder = {1: cover_k1, 2: cover_k2, 3: cover_k3}[n - k]
        return complement_cover(builder(n))
    raise PreconditionError(
        f"closed_form needs k <= 3 or k >= n-3, got ({n},{k})"
    )


def _cover_from_block_file(params: GraphParams, path: str) -> Cover:
    v, s, blocks = load_blocks(path)
    if v != params.n:
        raise PreconditionError(f"block file is over [{v}], the graph needs [{params.n}]")
    if s == params.k + 1:
        role = BlockRole.COVERING_DESIGN
    elif s == params.k - 1:
        role = BlockRole.TURAN_SYSTEM
    else:
        raise PreconditionError(
            f"blocks of size {s} fit neither k+1={params.k + 1} nor k-1={params.k - 1}"
        )
    return cover_from_blocks(params, blocks, role)


def _bounds_comparison(params: GraphParams, size: int) -> dict:
    known = known_theta_bounds(params)
    comparison = {
        "size": size,
        "lower_simple": simple_lower_bound(params),
        "known": list(known) if known is not None else None,
    }
    if known is not None:
        comparison["within_known"] = known[0] <= size
        comparison["matches_known_upper"] = size <= known[1]
    return comparison


def cmd_lexicode(args: argparse.Namespace) -> int:
    args.n, args.k = 2 * args.k, args.k
    args.method = "lexicode"
    args.tier = "fast"
    args.blocks = None
    return cmd_cover(args)


# ---------------------------------------------------------------------------
# verification and statistics


def cmd_verify(args: argparse.Namespace) -> int:
    cover = load_cover(args.file)
    check = verify_cover(cover)
    stats = cover_stats(cover)
    report = {
        "file": args.file,
        "n": cover.params.n,
        "k": cover.params.k,
        "size": len(cover),
        "covered": check.covered,
        "uncovered_count": len(check.uncovered_vertices),
        "uncovered_sample": [
            sorted(v.elements) for v in check.uncovered_vertices[:5]
        ],
        "n_a": stats.n_a,
        "n_b": stats.n_b,
        "a": {str(j): c for j, c in stats.a.items()},
        "b": {str(j): c for j, c in stats.b.items()},
        "bounds": _bounds_comparison(cover.params, len(cover)),
    }
    _emit(args, report, _render_verify(report))
    return EXIT_OK if check.covered else EXIT_VERIFICATION


def _render_verify(report: dict) -> str:
    lines = [
        f"file: {report['file']}",
        f"graph: J({report['n']},{report['k']})",
        f"size: {report['size']} (type A: {report['n_a']}, type B: {report['n_b']})",
        f"covered: {'yes' if report['covered'] else 'no'}",
    ]
    if not report["covered"]:
        lines.append(
            f"uncovered: {report['uncovered_count']} vertices, "
            f"first {report['uncovered_sample']}"
        )
    known = report["bounds"]["known"]
    if known is not None:
        lines.append(f"known bounds: [{known[0]}, {known[1]}]")
    lines.append(f"counting lower bound: {report['bounds']['lower_simple']}")
    return "\n".join(lines)


def cmd_stats(args: argparse.Namespace) -> int:
    cover = load_cover(args.file)
    stats = cover_stats(cover)
    report = {
        "file": args.file,
        "n": cover.params.n,
        "k": cover.params.k,
        "size": len(cover),
        "n_a": stats.n_a,
        "n_b": stats.n_b,
        "a": {str(j): c for j, c in stats.a.items()},
        "b": {str(j): c for j, c in stats.b.items()},
    }
    lines = [
        f"file: {report['file']}",
        f"graph: J({report['n']},{report['k']})",
        f"size: {report['size']} (type A: {report['n_a']}, type B: {report['n_b']})",
        "element: " + " ".join(f"{j:>4}" for j in sorted(stats.a)),
        "a_j:     " + " ".join(f"{stats.a[j]:>4}" for j in sorted(stats.a)),
        "b_j:     " + " ".join(f"{stats.b[j]:>4}" for j in sorted(stats.b)),
    ]
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# conversion


def cmd_convert(args: argparse.Namespace) -> int:
    if args.direction == "cover_to_code":
        return _convert_cover_to_code(args)
    return _convert_code_to_cover(args)


def _convert_cover_to_code(args: argparse.Namespace) -> int:
    cover = load_cover(args.file)
    report: dict = {"file": args.file, "direction": args.direction}
    if args.j1 is not None or args.j2 is not None:
        if args.j1 is None or args.j2 is None:
            raise PreconditionError("two-element conversion needs both --j1 and --j2")
        code = code_from_cover_two_element(cover, args.j1, args.j2)
        report["j1"], report["j2"] = args.j1, args.j2
    else:
        j = args.j if args.j is not None else find_conversion_element(cover)
        if j is None:
            raise VerificationError(
                "no single element converts this cover; try --j1/--j2"
            )
        code = code_from_cover_simple(cover, j)
        report["j"] = j
    report.update(words=len(code), n=code.params.n, weight=code.params.k, is_code=True)
    if args.out:
        save_words(
            code.params.n,
            code.params.k,
            [w.elements for w in code.words],
            args.out,
            args.order_convention,
        )
        report["out"] = args.out
    _emit(args, report, _render_pairs(report))
    return EXIT_OK


def _convert_code_to_cover(args: argparse.Namespace) -> int:
    params, _, words = load_words(args.file)
    if args.j is None:
        raise PreconditionError("code_to_cover needs --j")
    code = Code(params, tuple(words))
    cliques = cliques_from_code(code, args.j)
    cover = Cover(params, tuple(cliques))
    check = verify_cover(cover)
    report = {
        "file": args.file,
        "direction": args.direction,
        "j": args.j,
        "n": params.n,
        "k": params.k,
        "cliques": len(cliques),
        "covers_graph": check.covered,
        "uncovered_count": len(check.uncovered_vertices),
    }
    if args.out:
        save_cover(cover, args.out)
        report["out"] = args.out
    _emit(args, report, _render_pairs(report))
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds


def cmd_bounds(args: argparse.Namespace) -> int:
    params = GraphParams(args.n, args.k)
    design_upper = None
    if args.blocks:
        cover = _cover_from_block_file(params, args.blocks)
        design_upper = len(cover)
    rep = bounds_report(params, design_upper)
    known = rep.known_theta
    report = {
        "n": params.n,
        "k": params.k,
        "omega": rep.omega,
        "lower_simple": rep.lower_simple,
        "upper_recursive": rep.upper_recursive,
        "alpha_upper_johnson": rep.alpha_upper_johnson,
        "catalan": rep.catalan,
        "catalan_tight": rep.catalan_tight,
        "closed_form": rep.closed_form,
        "known_theta": list(known) if isinstance(known, tuple) else known,
        "design_upper": rep.design_upper,
        "best_lower": rep.best_lower,
        "best_upper": rep.best_upper,
    }
    _emit(args, report, _render_pairs(report))
    return EXIT_OK


# ---------------------------------------------------------------------------
# output plumbing


def _render_pairs(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in value.items())
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(args: argparse.Namespace, report: dict, text: str) -> None:
    is_artifact_out = args.command in ("cover", "lexicode", "convert")
    payload = (
        json.dumps(report, indent=2, sort_keys=True)
        if args.format == "structured"
        else text
    )
    print(payload)
    if args.out and not is_artifact_out:
        Path(args.out).write_text(payload + "\n")


if __name__ == "__main__":
    sys.exit(main())
