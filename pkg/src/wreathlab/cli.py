"""``wreathlab`` command line.

Exit status: 0 success, 1 a check failed, 2 usage or parse error,
3 a cap, budget or timeout stopped the computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .abelian import abelianization_invariants, dg, dg_p
from .catalog import catalog, parse_group
from .checks import SUITES, run_suite
from .config import deadline, limits, use_limits
from .errors import BudgetExceeded, Cancelled, CapExceeded, GroupExpressionError, PerfectGroupError
from .group import derived_length, is_nilpotent, prime_factors
from .invariants import SurveyRow, cyclic_conductor, is_semiabelian, survey, wl_bounds
from .errors import NotSolvable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
MAX_CONDUCTOR_N = 10**6


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    common.add_argument("--element-cap", type=_positive, default=None, help="largest group order to enumerate")
    common.add_argument("--degree-cap", type=_positive, default=None, help="largest permutation degree (<= 255)")
    common.add_argument("--tuple-budget", type=_positive, default=None, help="step budget for searches")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--timeout-secs", type=float, default=None, help="cancel after this many seconds")

    parser = argparse.ArgumentParser(prog="wreathlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("info", parents=[common], help="invariants of one group")
    p.add_argument("expression")
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p = sub.add_parser("wl", parents=[common], help="wreath length certificate")
    p.add_argument("expression")
    p = sub.add_parser("survey", parents=[common], help="invariants of every catalog group")
    p.add_argument("--max-order", type=_nonnegative, default=24)
    p = sub.add_parser("realize-cyclic", parents=[common], help="smallest prime 1 mod N")
    p.add_argument("N", type=int)
    return parser


def _emit(data, fmt: str, text_lines: list[str], tsv_lines: list[str] | None = None) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    elif fmt == "tsv" and tsv_lines is not None:
        print("\n".join(tsv_lines))
    else:
        print("\n".join(text_lines))


def cmd_info(args) -> int:
    G = parse_group(args.expression)
    inv = abelianization_invariants(G)
    try:
        d = dg(G) if not G.is_trivial else 0
    except PerfectGroupError:
        d = None
    primes = prime_factors(G.order)
    try:
        dl = derived_length(G)
    except NotSolvable:
        dl = None
    if G.order <= limits().brute_cap:
        sa = "yes" if is_semiabelian(G).verdict else "no"
    else:
        sa = "unknown (above brute-force cap)"
    data = {"schema": "wreathlab-cert/1", "kind": "info", "expression": args.expression, "label": G.label,
            "order": G.order, "degree": G.degree, "abelianization_invariants": list(inv.factors), "dg": d,
            "dg_p": {str(p): dg_p(G, p) for p in primes}, "dl": dl, "nilpotent": is_nilpotent(G),
            "semiabelian": sa, "seed": args.seed}
    lines = [f"group        {G.label}", f"order        {G.order}", f"degree       {G.degree}",
             f"invariants   {inv}", f"dg           {d if d is not None else 'undefined (perfect)'}",
             "dg_p         " + (", ".join(f"p={p}: {dg_p(G, p)}" for p in primes) or "-"),
             f"dl           {dl if dl is not None else 'not solvable'}",
             f"nilpotent    {'yes' if data['nilpotent'] else 'no'}", f"semiabelian  {sa}",
             f"seed         {args.seed}"]
    _emit(data, args.format, lines, ["\t".join(map(str, (G.label, G.order, G.degree, inv, d, dl, sa)))])
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, seed=args.seed)
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skip")}
    data = {"schema": "wreathlab-cert/1", "kind": "verify", "suite": args.suite, "seed": args.seed,
            "counts": counts, "checks": [r.to_json() for r in results]}
    lines = [f"{r.status.upper():4}  [{r.suite}] {r.name}" for r in results]
    lines.append(f"suite {args.suite}: {counts['pass']} passed, {counts['fail']} failed, "
                 f"{counts['skip']} skipped (seed {args.seed})")
    tsv = [f"{r.suite}\t{r.name}\t{r.status}" for r in results]
    _emit(data, args.format, lines, tsv)
    return EXIT_FAIL if counts["fail"] else EXIT_OK


def cmd_wl(args) -> int:
    G = parse_group(args.expression)
    cert = wl_bounds(G)
    data = cert.to_json()
    data["seed"] = args.seed
    if cert.exact is not None:
        value = f"exact {cert.exact}"
    else:
        value = f"between {cert.lower} and {cert.upper if cert.upper is not None else '?'}"
    lines = [f"group   {G.label} (order {G.order})", f"wl      {value}",
             f"dg      {cert.dg_value}", f"dl      {cert.dl_value}",
             f"lower   {cert.lower} ({', '.join(cert.lower_reasons)})",
             f"upper   {cert.upper} ({cert.upper_reason or 'none found'})"]
    if cert.witness is not None:
        lines.append(f"witness {cert.witness.spec.expr()} via {', '.join(cert.witness.methods)}")
    if cert.exact is not None and cert.dg_value is not None:
        lines.append(f"wl = dg {'yes' if cert.exact == cert.dg_value else 'no'}")
    lines.append(f"search  refuted up to length {cert.refuted_up_to}, work {cert.search_work}"
                 f"{' (budget exhausted)' if cert.budget_exhausted else ''}")
    lines.extend(f"note    {n}" for n in cert.notes)
    lines.append(f"seed    {args.seed}")
    _emit(data, args.format, lines, ["\t".join(map(str, (G.label, cert.lower, cert.upper, cert.exact)))])
    return EXIT_OK


def cmd_survey(args) -> int:
    rows = survey(catalog(args.max_order)) if args.max_order > 0 else []
    data = {"schema": "wreathlab-cert/1", "kind": "survey", "max_order": args.max_order, "seed": args.seed,
            "rows": [r.to_json() for r in rows]}
    header = "\t".join(SurveyRow.TSV_FIELDS)
    tsv = [header] + [r.tsv() for r in rows]
    lines = [f"# survey up to order {args.max_order}, seed {args.seed}"] + tsv
    _emit(data, args.format, lines, tsv)
    return EXIT_OK


def cmd_realize_cyclic(args) -> int:
    if not 2 <= args.N <= MAX_CONDUCTOR_N:
        print(f"wreathlab: N must be between 2 and {MAX_CONDUCTOR_N} "
              f"(the trivial group needs no ramified prime)", file=sys.stderr)
        return EXIT_USAGE
    rec = cyclic_conductor(args.N)
    rec["seed"] = args.seed
    lines = [f"p = {rec['p']} (prime, {rec['congruence']})",
             f"C{args.N} realized tamely with 1 ramified prime inside Q(zeta_{rec['p']})", f"seed {args.seed}"]
    _emit(rec, args.format, lines, [f"{args.N}\t{rec['p']}"])
    return EXIT_OK


COMMANDS = {"info": cmd_info, "verify": cmd_verify, "wl": cmd_wl, "survey": cmd_survey,
            "realize-cyclic": cmd_realize_cyclic}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    overrides = {k: v for k, v in (("element_cap", args.element_cap), ("degree_cap", args.degree_cap),
                                   ("tuple_budget", args.tuple_budget)) if v is not None}
    try:
        with use_limits(**overrides), deadline(args.timeout_secs):
            return COMMANDS[args.command](args)
    except GroupExpressionError as exc:
        print(f"wreathlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, BudgetExceeded, Cancelled) as exc:
        print(f"wreathlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(f"wreathlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
