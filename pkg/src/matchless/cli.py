"""Command line: ``matchless <command> ...``.

Exit codes: 0 success, 1 a check failed or an error occurred, 2 a solver
budget ran out, 3 a scan found a discrepancy, 64 malformed arguments.
Every number in a JSON report is an exact decimal or ``p/q`` string.
"""

import argparse
import json
import os
import sys
import time
import warnings
from fractions import Fraction

from . import circle, formulas, gallery, partition, solver
from .family import read_family, write_family
from .report import Check, Report, compare, dumps, exact_str, skipped

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_FINDING, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _count(text):
    # accepts 1e8 and 100000000 alike, but only whole numbers
    value = Fraction(text)
    if value.denominator != 1 or value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return int(value)


def _ints(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _keyvals(words):
    out = {}
    for w in words:
        key, sep, val = w.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {w!r}")
        try:
            out[key] = int(val)
        except ValueError:
            out[key] = val
    return out


class _Run:
    """Collects the payload and picks the exit code for one command."""

    def __init__(self, args, command):
        self.args = args
        self.payload = {"command": command, "seed": args.seed}
        self.code = EXIT_OK
        self.lines = []

    def say(self, text=""):
        self.lines.append(text)

    def report(self, rep, key=None):
        key = key or rep.name
        self.payload.setdefault("reports", []).append(rep.to_dict())
        for c in rep:
            extra = ""
            if c.lhs is not None:
                extra = f"  {exact_str(c.lhs)} {c.relation} {exact_str(c.rhs)}"
                if c.tight and c.relation in (">=", "<="):
                    extra += "  (equality)"
            self.say(f"  [{c.status:7}] {c.name}{extra}" + (f"  -- {c.note}" if c.note else ""))
        if not rep.ok:
            self.code = max(self.code, EXIT_FAIL)
        return rep


def _budgets(args):
    return dict(budget_nodes=args.budget_nodes, budget_seconds=args.budget_seconds,
                threads=args.threads)


# -- solve ------------------------------------------------------------------

def cmd_solve(args, run):
    try:
        problem = solver.parse_problem(args.problem)
        space = solver.SearchSpace.parse(args.space) if args.space else None
    except ValueError as exc:
        raise UsageError(str(exc))
    res = solver.solve_exact(problem, space, **_budgets(args))
    run.payload["result"] = res.to_dict()
    status = "pass" if res.proved else "budget-exhausted"
    run.payload["status"] = status
    run.say(f"{problem}: optimum {exact_str(res.optimum) if res.optimum is not None else 'none'}"
            f" [{res.certificate}] space={res.mode.value} nodes={res.nodes}"
            + ("" if res.proved else f" upper_bound={res.upper_bound}"))
    if res.witness is not None:
        run.report(solver.verify_witness(res.witness, problem))
        if args.witness_out:
            write_family(res.witness, args.witness_out)
    if not res.proved:
        run.code = max(run.code, EXIT_BUDGET)


# -- verify -----------------------------------------------------------------

def _kleitman_rows(s_max, m_max):
    rows = []
    for s in range(2, s_max + 1):
        for m in range(1, m_max + 1):
            rows.append((f"e(sm-1,s) s={s} m={m}", s * m - 1, s, formulas.kleitman_e(s, m)))
            rows.append((f"e(sm,s) s={s} m={m}", s * m, s, formulas.kleitman_e(s, m, "sm")))
            for l in range(1, s + 1):
                proven = m == 1 or (l == 2 and (s >= 5 or (s == 4 and m % 2 == 0)))
                if proven:
                    rows.append((f"|P(s,m,l)| s={s} m={m} l={l}", s * m + s - l, s,
                                 formulas.p_size(s, m, l)))
    for m in range(1, m_max + 1):
        rows.append((f"e(3m+1,3) m={m}", 3 * m + 1, 3, formulas.quinn_e(m)))
    return rows


def verify_kleitman(args, run):
    rep = Report("closed forms against exact search")
    for label, n, s, value in _kleitman_rows(args.s_max, args.m_max):
        if not 1 <= n <= args.n_max:
            rep.append(skipped(label, f"n={n} outside 1..{args.n_max}"))
            continue
        res = solver.solve_exact(solver.Problem.E(n, s), **_budgets(args))
        c = compare(f"{label}: solver = formula", res.optimum, value, "==", data={"nodes": res.nodes})
        if not res.proved:
            c.holds, c.note = False, "budget exhausted"
        rep.append(c)
    run.report(rep)


def verify_circle(args, run):
    s, m = args.s, args.m
    n = s * m + s - 2
    F = read_family(args.family) if args.family else gallery.build(gallery.ConstructionSpec.P(s, m, 2))
    run.say(f"family on n={n} with {len(F)} members")
    run.report(circle.check_window_bound(F, circle.identity_sigma(n), s, m))
    run.report(circle.window_bound_sweep(F, s, m, trials=args.trials, seed=args.seed))
    if partition.exact_work(partition.Partition.equal(s, m, n)) <= partition.WORK_LIMIT:
        run.report(circle.check_averaged_window_bound(F, s, m))
    if n <= 8:
        run.report(circle.averaging_consistency(F, s, m))
        run.report(circle.incidence_check(s, m))
    run.report(circle.claim_suite(args.nbar_max, args.s_max))


def verify_constructions(args, run):
    grid = gallery.construction_grid(args.s_max, args.m_max, args.k_max, args.n_max)
    rep = Report(f"construction grid ({len(grid)} constructions)")
    bad = []
    for spec, n in grid:
        r = gallery.verify_construction(spec, n)
        if not r.ok:
            bad.append({"spec": str(spec), "n": n, "failures": [c.to_dict() for c in r.failures()]})
    rep.append(Check("every construction matches its advertised size and properties", not bad,
                     data={"mismatches": bad[:10]} if bad else {}))
    run.report(rep)
    run.report(gallery.b_recursion_check(min(args.n_max, 30)))


def verify_properties(args, run):
    run.report(partition.random_sweep(args.samples, args.seed, args.n_max))
    if args.exhaustive_n:
        run.report(partition.upset_sweep(args.exhaustive_n))
        run.report(partition.shadow_sweep(min(args.exhaustive_n, 4), args.exhaustive_n))


# -- scan -------------------------------------------------------------------

def scan_p_families(args, run):
    table = []
    for s, m, l, n in partition.sweep_points(1, args.n_max):
        res = solver.solve_exact(solver.Problem.E(n, s), **_budgets(args))
        p = formulas.p_size(s, m, l)
        in_range = l <= -(-s // 2)
        if not res.proved:
            status = "budget-exhausted"
        elif res.optimum == p:
            status = "match"
        else:
            # beyond l = ceil(s/2) no equality is claimed, so a gap is only reported
            status = "finding" if in_range else "differs (l > ceil(s/2))"
        table.append({"s": s, "m": m, "l": l, "n": n, "solver": res.optimum, "P": p,
                      "in_range": in_range, "status": status, "nodes": res.nodes})
        run.say(f"  s={s} m={m} l={l} n={n}: solver={res.optimum} |P|={p} {status}")
        if status == "finding":
            run.code = max(run.code, EXIT_FINDING)
    run.payload["table"] = table


def scan_threshold(args, run):
    n, s = args.n, args.s
    res = solver.threshold_search(n, s, args.iters, args.seed)
    ref, source = None, None
    if n <= args.solve_max:
        sol = solver.solve_exact(solver.Problem.E(n, s), **_budgets(args))
        if sol.proved:
            ref, source = sol.optimum, "solver"
    if ref is None:
        pts = [(m, l) for m in range(1, n + 1) for l in range(1, s + 1) if s * m + s - l == n]
        if pts:
            ref, source = formulas.p_size(s, *pts[0]), "|P(s,m,l)|"
    run.payload["search"] = res.to_dict()
    run.payload["reference"] = {"value": ref, "source": source}
    verdict = "no reference" if ref is None else ("match" if res.size >= ref else "finding")
    run.payload["status"] = verdict
    run.say(f"n={n} s={s}: best threshold family {res.size} from {res.start}; reference {ref} ({source}): {verdict}")
    run.say("  alpha = (" + ", ".join(exact_str(a) for a in res.alpha) + ")")
    if verdict == "finding":
        run.code = max(run.code, EXIT_FINDING)


# -- formula ----------------------------------------------------------------

_FORMULAS = {
    "kleitman": lambda p: formulas.kleitman_e(p["s"], p["m"], p.get("at", "sm-1")),
    "quinn": lambda p: formulas.quinn_e(p["m"]),
    "p": lambda p: formulas.p_size(p["s"], p["m"], p["l"]),
    "conjectured": lambda p: formulas.conjectured_e(p["s"], p["m"], p["l"]),
    "hm": lambda p: formulas.hm_size(p["k"], p["n"], p["s"]),
    "stability": lambda p: formulas.stability_bound(p["n"], p["k"], p["s"], p["u"]),
    "emc": lambda p: formulas.emc_value(p["n"], p["k"], p["s"]),
    "f": lambda p: formulas.f_value(p["n"], p["q"], p["s"]),
    "level-sum": lambda p: formulas.level_sum_inequality(p["s"], p["m"]),
    "two-up": lambda p: formulas.two_up_inequality(p["s"], p["m"], p["l"]),
    "one-up": lambda p: formulas.one_up_inequality(p["s"], p["m"], p["l"]),
}
_AUX = ("level_bound", "level_sum_bound", "min_missing", "corollary_i", "corollary_ii",
        "large_n_threshold", "deficiency_target")


def cmd_formula(args, run):
    params = _keyvals(args.params)
    kind = args.kind
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", formulas.FormulaWarning)
        try:
            if kind in _FORMULAS:
                value = _FORMULAS[kind](params)
            elif kind in _AUX:
                value = formulas.aux_values(kind, **params)
            elif kind == "size":
                value = gallery.size_of(gallery.parse_spec(params.pop("spec")), params.get("n"))
            else:
                raise UsageError(f"unknown formula {kind!r}; choose from "
                                 f"{sorted(_FORMULAS) + list(_AUX) + ['size']}")
        except KeyError as exc:
            raise UsageError(f"formula {kind} needs parameter {exc.args[0]}")
    notes = [str(w.message) for w in caught]
    run.payload.update(kind=kind, params=params, value=value, guaranteed=not notes, warnings=notes)
    if isinstance(value, tuple):
        run.say(f"{exact_str(value[0])} <= {exact_str(value[1])}: {value[0] <= value[1]}")
    else:
        run.say(exact_str(value) if value is not None else "no closed form for these parameters")
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)


# -- stats, circle, construct -----------------------------------------------

def cmd_stats(args, run):
    F = read_family(args.family)
    pi = partition.Partition(args.partition, F.n)
    st = partition.tuple_stats(F, pi, mode=args.mode, trials=args.trials, seed=args.seed)
    run.payload["stats"] = st.to_dict()
    run.say(f"pi={pi.parts} n={F.n} tuples={st.n_pi}" + (" (sampled)" if st.sampled else ""))
    for i, x in enumerate(st.X):
        run.say(f"  X_{i} = {exact_str(x)}")
    if not st.sampled:
        run.report(partition.check_partition_identities(F, pi))


def cmd_circle(args, run):
    what = args.what
    if what == "window-bound":
        F = read_family(args.family)
        if args.trials:
            run.report(circle.window_bound_sweep(F, args.s, args.m, trials=args.trials,
                                                 seed=args.sigma_seed))
        else:
            sigma = args.sigma or circle.identity_sigma(F.n)
            rep = run.report(circle.check_window_bound(F, sigma, args.s, args.m))
            run.payload["x"] = rep.trace.x
    elif what == "averaged":
        F = read_family(args.family)
        run.report(circle.check_averaged_window_bound(F, args.s, args.m, mode=args.mode,
                                                      trials=args.sample_trials, seed=args.seed))
    elif what == "chains":
        n = args.s * args.m + args.s - 2
        dec = circle.chain_decompose(args.sigma or circle.identity_sigma(n), args.s, args.m)
        run.payload["decomposition"] = {"d": dec.d, "nbar": dec.nbar, "chains": dec.chains}
        run.say(f"n={n} d={dec.d} nbar={dec.nbar}")
        for j, ch in enumerate(dec.chains):
            run.say(f"  chain {j}: arcs {list(ch)}")
    elif what == "cases":
        run.report(circle.claim_suite(args.nbar_max, args.s_max))
    elif what == "incidence":
        run.report(circle.incidence_check(args.s, args.m))


def cmd_construct(args, run):
    try:
        spec = gallery.parse_spec(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc))
    n = gallery.validate(spec, args.n)
    size = gallery.size_of(spec, n)
    run.payload.update(spec=str(spec), n=n, size=size)
    run.say(f"{spec} on n={n}: {size} members")
    if args.out:
        write_family(gallery.build(spec, n), args.out, fmt=args.format)
        run.say(f"  written to {args.out}")
    if args.verify:
        run.report(gallery.verify_construction(spec, n))


# -- campaign ---------------------------------------------------------------

def cmd_campaign(args, run):
    """Run a JSON list of command lines in order: {"name", "seed", "tasks": [[...], ...]}."""
    with open(args.file) as fh:
        spec = json.load(fh)
    tasks = spec.get("tasks", [])
    seed = spec.get("seed", args.seed)
    results = []
    for i, argv in enumerate(tasks):
        argv = [str(a) for a in argv]
        if "--seed" not in argv:
            argv += ["--seed", str(seed)]
        code, payload, _, _ = execute(argv)
        results.append({"index": i, "argv": argv, "exit": code, "report": payload})
        run.say(f"[{i}] {' '.join(argv)} -> exit {code}")
        run.code = max(run.code, code) if code != EXIT_USAGE else max(run.code, EXIT_FAIL)
    run.payload.update(name=spec.get("name", os.path.basename(args.file)), tasks=results)


# -- parser -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the report as JSON ('-' for stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=_count, default=10 ** 8)
    common.add_argument("--budget-seconds", type=float, default=900.0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for the solver (default: $MATCHLESS_THREADS or 1)")

    p = _Parser(prog="matchless", description="Exact computations on families without s pairwise disjoint sets.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", parents=[common], help="exact optimum by branch and bound")
    sp.add_argument("problem", nargs="+", help="e.g. E n=7 s=3, F n=5 q=3 s=2, EK n=8 k=2 s=3")
    sp.add_argument("--space", help="all | monotone | monotone-shifted | uniform-shifted")
    sp.add_argument("--witness-out", metavar="PATH")
    sp.set_defaults(func=cmd_solve)

    vp = sub.add_parser("verify", help="run a check suite")
    vsub = vp.add_subparsers(dest="suite", required=True)
    v = vsub.add_parser("kleitman", parents=[common], help="closed forms against the solver")
    v.add_argument("--s-max", type=int, default=4)
    v.add_argument("--m-max", type=int, default=3)
    v.add_argument("--n-max", type=int, default=8)
    v.set_defaults(func=verify_kleitman)
    v = vsub.add_parser("circle", parents=[common], help="circle checks on P(s,m,2) or a given family")
    v.add_argument("--s", type=int, default=5)
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--family")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--nbar-max", type=int, default=14)
    v.add_argument("--s-max", type=int, default=6)
    v.set_defaults(func=verify_circle)
    v = vsub.add_parser("constructions", parents=[common], help="size, shiftedness, nu and tau of every construction")
    v.add_argument("--n-max", type=int, default=14)
    v.add_argument("--s-max", type=int, default=8)
    v.add_argument("--m-max", type=int, default=3)
    v.add_argument("--k-max", type=int, default=4)
    v.set_defaults(func=verify_constructions)
    v = vsub.add_parser("properties", parents=[common], help="partition statistics and inequalities on many families")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--exhaustive-n", type=int, default=5)
    v.set_defaults(func=verify_properties)

    cp = sub.add_parser("scan", help="compare solver optima with conjectured values")
    csub = cp.add_subparsers(dest="scan", required=True)
    c = csub.add_parser("p-families", parents=[common], help="e(sm+s-l, s) against |P(s,m,l)|")
    c.add_argument("--n-max", type=int, default=7)
    c.set_defaults(func=scan_p_families)
    c = csub.add_parser("threshold", parents=[common], help="best threshold family against the optimum")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--iters", type=int, default=10000)
    c.add_argument("--solve-max", type=int, default=8, help="largest n solved exactly for the reference")
    c.set_defaults(func=scan_threshold)

    fp = sub.add_parser("formula", parents=[common], help="evaluate a closed form exactly")
    fp.add_argument("kind")
    fp.add_argument("params", nargs="*", help="key=value pairs, e.g. s=3 m=2 l=2")
    fp.set_defaults(func=cmd_formula)

    st = sub.add_parser("stats", parents=[common], help="X_i densities of a family for a partition type")
    st.add_argument("--family", required=True)
    st.add_argument("--partition", type=_ints, required=True)
    st.add_argument("--mode", choices=("exact", "sample"), default="exact")
    st.add_argument("--trials", type=int, default=10000)
    st.set_defaults(func=cmd_stats)

    ci = sub.add_parser("circle", parents=[common], help="cyclic-arrangement tools")
    ci.add_argument("what", choices=("window-bound", "averaged", "chains", "cases", "incidence"))
    ci.add_argument("--family")
    ci.add_argument("--s", type=int, default=5)
    ci.add_argument("--m", type=int, default=1)
    ci.add_argument("--sigma", type=_ints, help="1-based arrangement, e.g. 3,1,2,...")
    ci.add_argument("--sigma-seed", type=int, default=0)
    ci.add_argument("--trials", type=int, default=0, help="random arrangements to sweep (window-bound)")
    ci.add_argument("--mode", choices=("exact", "sample"), default="exact")
    ci.add_argument("--sample-trials", type=int, default=10000)
    ci.add_argument("--nbar-max", type=int, default=14)
    ci.add_argument("--s-max", type=int, default=6)
    ci.set_defaults(func=cmd_circle)

    co = sub.add_parser("construct", parents=[common], help="materialize a named construction")
    co.add_argument("spec", help="e.g. P:s=3,m=1,l=2 or thresh:1,1/2,1/2,1/2")
    co.add_argument("--n", type=int)
    co.add_argument("--out")
    co.add_argument("--format", choices=("sets", "hex"), default="sets")
    co.add_argument("--verify", action="store_true")
    co.set_defaults(func=cmd_construct)

    ca = sub.add_parser("campaign", parents=[common], help="run a JSON list of commands")
    ca.add_argument("file")
    ca.set_defaults(func=cmd_campaign)
    return p


_NEEDS_FAMILY = {"window-bound", "averaged"}


def execute(argv):
    """Parse and run one command; returns (exit code, payload, output lines, json path)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "what", None) in _NEEDS_FAMILY and not args.family:
        parser.error(f"circle {args.what} needs --family")
    if args.threads is None:
        args.threads = int(os.environ.get("MATCHLESS_THREADS", "1") or 1)
    name = " ".join(filter(None, [args.command, getattr(args, "suite", None), getattr(args, "scan", None)]))
    run = _Run(args, name)
    t0 = time.monotonic()
    try:
        args.func(args, run)
    except UsageError as exc:
        print(f"matchless: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None, [], None
    except (ValueError, OSError) as exc:
        run.payload["error"] = str(exc)
        run.say(f"error: {exc}")
        run.code = EXIT_FAIL
    run.payload["exit"] = run.code
    run.payload["wall_seconds"] = f"{time.monotonic() - t0:.3f}"
    return run.code, run.payload, run.lines, args.json


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, payload, lines, json_path = execute(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if payload is None:
        return code
    if json_path == "-":
        sys.stdout.write(dumps(payload))
    else:
        print("\n".join(lines))
        if json_path:
            with open(json_path, "w") as fh:
                fh.write(dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
