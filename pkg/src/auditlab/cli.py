"""Command-line front end.

Subcommands: index, worst-case, detect, characterize, sample-audit, report,
enumerate-stable. Machine-readable output (JSON or CSV) goes to stdout;
diagnostics go to stderr. Exit codes: 0 success, 2 invalid input, 3
infeasible configuration, 4 budget refusal, 1 failing report row.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import auction as auction_mod
from . import characterize as ch
from . import priority as priority_mod
from . import voting as voting_mod
from .audit import AuditSession, ProblemScope, scope_problems
from .core import (
    BudgetError,
    ConfigurationError,
    Problem,
    Setting,
    UsageError,
    load_problem,
    outcome_from_json,
    outcome_to_json,
    problem_hash,
)
from .mechanisms import parse_mechanism

_PREFIX_KIND = {
    "da": "priority",
    "da-obj": "priority",
    "ia": "priority",
    "ar": "priority",
    "da-rep": "priority",
    "serial": "house",
    "fixture": "house",
    "const": "house",
    "fpa": "auction",
    "apa": "auction",
    "spa": "auction",
    "majority": "vote",
    "dictator": "vote",
    "veto": "vote",
    "rsf": "reserves",
    "osf": "reserves",
}


def _descriptor_kind(descriptor: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    head = descriptor.split(":", 1)[0]
    if head == "table":
        raise UsageError("table mechanisms are ambiguous; pass --setting")
    if head not in _PREFIX_KIND:
        raise UsageError(f"cannot infer setting from mechanism {descriptor!r}; pass --setting")
    return _PREFIX_KIND[head]


def _setting_from_args(args, kind: str) -> Setting:
    if args.n is None:
        raise UsageError("--n is required when no problem file supplies it")
    if kind == "auction":
        k = args.k if args.k is not None else getattr(args, "grid", None)
        if k is None:
            raise UsageError("auction setting needs --k")
        return Setting(kind, args.n, k=k)
    if kind == "reserves":
        if args.q is None or args.r is None or not args.low_income:
            raise UsageError("reserves setting needs --q, --r and --low-income")
        low = tuple(int(v) for v in args.low_income.split(","))
        return Setting(kind, args.n, q=args.q, r=args.r, low_income=low)
    return Setting(kind, args.n)


def _resolve(args) -> tuple[Setting, Problem | None]:
    problem = load_problem(args.problem) if getattr(args, "problem", None) else None
    if problem is not None:
        return problem.setting, problem
    kind = _descriptor_kind(args.mechanism, getattr(args, "setting", None))
    return _setting_from_args(args, kind), None


def _session(args, setting: Setting) -> AuditSession:
    return AuditSession(parse_mechanism(args.mechanism, setting))


def _scope(args) -> ProblemScope:
    spec = getattr(args, "scope", None) or "exhaustive"
    if spec == "exhaustive":
        return ProblemScope.exhaustive()
    if spec.startswith("sample:"):
        if args.seed is None:
            raise UsageError("sampled scopes need --seed")
        return ProblemScope.sample(int(spec.split(":", 1)[1]), seed=args.seed)
    if spec.startswith("family:"):
        return ProblemScope.family(spec.split(":", 1)[1])
    raise UsageError(f"unknown scope {spec!r} (exhaustive | sample:COUNT | family:NAME)")


def _emit(data) -> None:
    json.dump(data, sys.stdout, indent=2, default=_jsonable)
    sys.stdout.write("\n")


def _jsonable(value):
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    return str(value)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_index(args) -> int:
    setting, problem = _resolve(args)
    if problem is None:
        raise UsageError("index needs --problem")
    session = _session(args, setting)
    report = session.audit_index(problem, cap=args.cap)
    out = report.to_json(include_stats=args.stats)
    out["mechanism"] = args.mechanism
    _emit(out)
    return 0


def cmd_worst_case(args) -> int:
    setting, problem = _resolve(args)
    if problem is not None:
        raise UsageError("worst-case sweeps a scope; use `index` for one problem")
    session = _session(args, setting)
    scope = _scope(args)
    start = time.perf_counter()
    worst = session.max_index_over(scope, cap=args.cap)
    wall_ms = int(1000 * (time.perf_counter() - start))
    params = {
        k: v
        for k, v in (("k", setting.k), ("q", setting.q), ("r", setting.r),
                     ("low_income", setting.low_income))
        if v is not None
    }
    fieldnames = [
        "mechanism", "n", "params", "scope", "worst_index",
        "witness_problem_hash", "problems_evaluated", "wall_ms",
    ]
    row = {
        "mechanism": args.mechanism,
        "n": setting.n,
        "params": json.dumps(params, default=_jsonable) if params else "",
        "scope": scope.kind if scope.kind != "sample" else f"sample:{scope.count}",
        "worst_index": worst.index,
        "witness_problem_hash": worst.report.problem_hash,
        "problems_evaluated": worst.examined,
        "wall_ms": wall_ms,
    }
    if worst.lower_bound:
        fieldnames.append("lower_bound")
        row["lower_bound"] = "true"
    writer = csv.DictWriter(sys.stdout, fieldnames=fieldnames)
    writer.writeheader()
    writer.writerow(row)
    return 0


def cmd_detect(args) -> int:
    setting, problem = _resolve(args)
    if problem is None:
        raise UsageError("detect needs --problem")
    session = _session(args, setting)
    deviation = _load_outcome(args.deviation, setting)
    group = tuple(int(v) for v in args.group.split(","))
    detected = session.detects(problem, deviation, group)
    _emit({
        "mechanism": args.mechanism,
        "problem_hash": problem_hash(problem),
        "group": list(group),
        "deviation": outcome_to_json(setting, deviation),
        "detects": detected,
    })
    return 0


def _load_outcome(spec: str, setting: Setting):
    try:
        data = json.loads(spec)
    except json.JSONDecodeError:
        try:
            with open(spec, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"deviation is neither inline JSON nor a readable file: {exc}") from exc
    return outcome_from_json(setting, data)


def cmd_sample_audit(args) -> int:
    setting, problem = _resolve(args)
    if problem is None:
        raise UsageError("sample-audit needs --problem")
    if args.seed is None:
        raise UsageError("sample-audit needs --seed")
    session = _session(args, setting)
    deviation = _load_outcome(args.deviation, setting)
    result = ch.sample_audit_probability(
        session, problem, deviation, args.m, args.trials, seed=args.seed
    )
    _emit(result.to_json())
    return 0


def cmd_enumerate_stable(args) -> int:
    setting, problem = _resolve(args)
    if problem is None or setting.kind != "priority":
        raise UsageError("enumerate-stable needs a priority --problem")
    kind = priority_mod.parse_tau_kind(args.kind)
    modified = (tuple(p for p, _ in problem.reports), priority_mod.apply_tau(kind, problem))
    stable = priority_mod.enumerate_stable(modified, cap=setting.n)
    _emit({
        "problem_hash": problem_hash(problem),
        "score_modification": args.kind,
        "stable": [list(o) for o in stable],
    })
    return 0


def cmd_characterize(args) -> int:
    verdict = _characterize(args)
    _emit(verdict.to_json())
    return 0


def _characterize(args) -> ch.CharacterizationVerdict:
    name = args.predicate
    if name == "thm2":
        setting = Setting("priority", args.n or 3)
        descriptor = args.mechanism or "da-rep:identity"
        if not descriptor.startswith("da-rep:"):
            raise UsageError("thm2 needs --mechanism da-rep:KIND")
        kind = priority_mod.parse_tau_kind(descriptor.split(":", 1)[1])
        oracle = AuditSession(parse_mechanism(descriptor, setting)) if args.oracle else False
        rows = []
        all_true = True
        for problem in scope_problems(_scope(args), setting):
            verdict = ch.check_index_two_da_representable(
                problem, kind, path=args.path, oracle=oracle
            )
            if oracle and not verdict.oracle_agrees:
                all_true = False
                rows.append({"problem_hash": problem_hash(problem), "oracle_disagrees": True})
        return ch.CharacterizationVerdict(
            "index-two-characterization",
            all_true,
            {"mechanism": descriptor, "disagreements": rows, "oracle_checked": bool(args.oracle)},
            oracle_checked=bool(args.oracle),
            oracle_agrees=all_true,
        )
    if name == "vice":
        if not args.structure:
            raise UsageError("vice needs --structure")
        mech = parse_mechanism(args.structure, Setting("house", args.n or _structure_n(args.structure)))
        return ch.check_vice_equals_index_two(mech.structure, _scope(args), cap=2)
    if name == "dual-dict":
        setting = Setting("auction", args.n or 3, k=args.grid or args.k or 5)
        mech = parse_mechanism(args.mechanism, setting)
        dual = auction_mod.is_dual_dictatorship(mech, setting)
        return ch.CharacterizationVerdict(
            "dual-dictatorship",
            dual is not None,
            {"mechanism": args.mechanism, "structure": None if dual is None else str(dual)},
        )
    if name == "dictatorial":
        setting = Setting("vote", args.n or 2)
        mech = parse_mechanism(args.mechanism or "dictator:i=0", setting)
        table = voting_mod.VoteTable.from_rule(
            setting.n,
            lambda votes: mech(Problem(setting, votes)),
            name=args.mechanism or "rule",
        )
        return ch.check_dictatorial_iff_index_one(table)
    if name == "majority-min":
        n = args.n or 3
        return ch.check_majority_minimal(voting_mod.anonymous_tables(n), n)
    if name == "tau-axioms":
        kind = priority_mod.parse_tau_kind(args.kind)
        return ch.check_tau_axioms(kind, args.n or 3, samples=args.samples, seed=args.seed or 0)
    if name == "compat-reserves":
        return ch.check_reserves_compatibility(_setting_from_args(args, "reserves"))
    if name in ("clinching", "full-range"):
        kind = _descriptor_kind(args.mechanism, args.setting)
        session = AuditSession(parse_mechanism(args.mechanism, _setting_from_args(args, kind)))
        if name == "full-range":
            return ch.CharacterizationVerdict(
                "full-range", session.full_range(), {"mechanism": args.mechanism}
            )
        mismatches = []
        for problem in scope_problems(_scope(args), session.setting):
            index_one = session.audit_index(problem, cap=1).index == 1
            order = session.sequential_clinching(problem)
            if index_one != (order is not None):
                mismatches.append(problem_hash(problem))
        uniform = session.clinching_order_uniformity()
        return ch.CharacterizationVerdict(
            "clinching-equivalence",
            not mismatches,
            {
                "mechanism": args.mechanism,
                "mismatched_problem_hashes": mismatches[:10],
                "clinching_order_uniform": uniform,
            },
        )
    raise UsageError(f"unknown predicate {name!r}")


def _structure_n(descriptor: str) -> int:
    for part in descriptor.split(":"):
        if part.startswith("n="):
            return int(part[2:])
    raise UsageError("pass --n or encode n= in the structure descriptor")


def cmd_report(args) -> int:
    from . import suite as suite_mod

    if args.suite not in ("full", "paper"):
        raise UsageError(f"unknown suite {args.suite!r}")
    names = args.rows.split(",") if args.rows else None
    rows = suite_mod.run_suite(names)
    if args.out:
        import os

        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "suite.json"), "w", encoding="utf-8") as fh:
            json.dump([row.to_json() for row in rows], fh, indent=2)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["name", "passed", "seconds", "title"])
        for row in rows:
            writer.writerow([row.name, row.passed, f"{row.seconds:.2f}", row.title])
        with open(os.path.join(args.out, "suite.csv"), "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    for row in rows:
        print(row.line())
    return 0 if all(row.passed for row in rows) else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sub, problem=True):
    sub.add_argument("--mechanism", help="mechanism descriptor, e.g. da, ia, serial:order=0,1,2")
    sub.add_argument("--setting", choices=["priority", "house", "auction", "vote", "reserves"])
    sub.add_argument("--n", type=int)
    sub.add_argument("--k", type=int, help="bid grid maximum (auction)")
    sub.add_argument("--q", type=int, help="quota (reserves)")
    sub.add_argument("--r", type=int, help="reserved seats (reserves)")
    sub.add_argument("--low-income", dest="low_income", help="comma-separated protected set")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--cap", type=int, help="stop refining group sizes above this bound")
    if problem:
        sub.add_argument("--problem", help="problem JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="auditlab",
        description="Exact auditability indices for allocation, auction, voting and reserves mechanisms.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("index", help="per-problem auditability index")
    _add_common(p)
    p.add_argument("--stats", action="store_true", help="include search statistics")
    p.set_defaults(fn=cmd_index)

    p = subs.add_parser("worst-case", help="worst-case index over a problem scope")
    _add_common(p, problem=False)
    p.add_argument("--scope", default="exhaustive", help="exhaustive | sample:COUNT | family:NAME")
    p.set_defaults(fn=cmd_worst_case)

    p = subs.add_parser("detect", help="does a group detect a deviation")
    _add_common(p)
    p.add_argument("--deviation", required=True, help="outcome JSON (inline or file)")
    p.add_argument("--group", required=True, help="comma-separated individuals")
    p.set_defaults(fn=cmd_detect)

    p = subs.add_parser("characterize", help="structural characterizations with oracles")
    p.add_argument(
        "predicate",
        choices=[
            "clinching", "thm2", "vice", "dual-dict", "dictatorial",
            "majority-min", "tau-axioms", "full-range", "compat-reserves",
        ],
    )
    _add_common(p, problem=False)
    p.add_argument("--structure", help="dictatorial structure descriptor (vice)")
    p.add_argument("--kind", default="identity", help="score modification (thm2/tau-axioms)")
    p.add_argument("--grid", type=int, help="bid grid maximum (dual-dict)")
    p.add_argument("--scope", default="exhaustive")
    p.add_argument("--path", default="both", choices=["full", "fast", "both"])
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--samples", type=int, default=10_000)
    p.set_defaults(fn=cmd_characterize)

    p = subs.add_parser("sample-audit", help="detection probability of random m-subsets")
    _add_common(p)
    p.add_argument("--deviation", required=True)
    p.add_argument("-m", "--m", dest="m", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.set_defaults(fn=cmd_sample_audit)

    p = subs.add_parser("report", help="run the reproduction suite")
    p.add_argument("--suite", default="full")
    p.add_argument("--rows", help="comma-separated row names (default: all)")
    p.add_argument("--out", help="directory for suite.json / suite.csv")
    p.set_defaults(fn=cmd_report)

    p = subs.add_parser("enumerate-stable", help="stable outcomes under a score modification")
    _add_common(p)
    p.add_argument("--kind", default="identity")
    p.set_defaults(fn=cmd_enumerate_stable)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 3
    except BudgetError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
