"""Reproduction suite: one runnable row per acceptance claim.

Each row recomputes a headline auditability result from scratch and returns a
:class:`SuiteRow` with a pass/fail verdict and the measured values. Rows are
deterministic: fixed fixtures, seeded samples, canonical sweep order.

Row ``c10b-spa-per-problem`` is expected to fail: the claim it encodes
("every second-price per-problem index equals 3 on the n=3, K=5 grid") is
false on bid profiles whose top two bids are adjacent integers, because no
grid payment fits strictly between the winning and second-highest bid; the
row reports the honest distribution of per-problem indices. The worst case
over the grid is still 3 (row ``c10a``).
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import auction as auction_mod
from . import characterize as ch
from . import house as house_mod
from . import priority as priority_mod
from . import reserves as reserves_mod
from . import voting as voting_mod
from .audit import AuditSession, ProblemScope, _thread_count, random_problem
from .core import Problem, Setting, enumerate_problems
from .mechanisms import parse_mechanism, wrap


@dataclass
class SuiteRow:
    name: str
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": json.loads(json.dumps(self.details, default=_default)),
        }


def _default(value):
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, Problem):
        return list(value.reports)
    return str(value)


_REGISTRY: dict[str, tuple[str, object]] = {}
_SESSIONS: dict = {}
_RESULTS: dict[str, SuiteRow] = {}


def _row(name: str, title: str):
    def deco(fn):
        _REGISTRY[name] = (title, fn)
        return fn

    return deco


def session_for(descriptor: str, setting: Setting) -> AuditSession:
    key = (descriptor, setting)
    if key not in _SESSIONS:
        _SESSIONS[key] = AuditSession(parse_mechanism(descriptor, setting))
    return _SESSIONS[key]


def _sweep_indices(session: AuditSession, problems, cap=None) -> list[int]:
    threads = _thread_count()
    if threads == 1:
        return [session.audit_index(p, cap=cap).index for p in problems]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: session.audit_index(p, cap=cap).index, problems, chunksize=64))


def run_row(name: str, fresh: bool = False) -> SuiteRow:
    if name not in _REGISTRY:
        raise KeyError(f"unknown suite row {name!r}; known: {', '.join(row_names())}")
    if not fresh and name in _RESULTS:
        return _RESULTS[name]
    title, fn = _REGISTRY[name]
    start = time.perf_counter()
    passed, details = fn()
    row = SuiteRow(name, title, bool(passed), details, time.perf_counter() - start)
    _RESULTS[name] = row
    return row


def row_names() -> list[str]:
    return list(_REGISTRY)


def run_suite(names=None, fresh: bool = False) -> list[SuiteRow]:
    return [run_row(name, fresh=fresh) for name in (names or row_names())]


# ---------------------------------------------------------------------------
# Priority setting rows
# ---------------------------------------------------------------------------

@_row("c01-ia-worst", "immediate acceptance: worst case 2, every n=3 problem exactly 2")
def _c01():
    setting = Setting("priority", 3)
    session = session_for("ia", setting)
    indices = _sweep_indices(session, list(enumerate_problems(setting)), cap=2)
    seen = sorted(set(indices))
    return seen == [2], {"index_values_seen": seen, "problems": len(indices)}


@_row("c02-da-worst", "deferred acceptance: cycle fixtures hit n at n=3,4; exhaustive n=3 worst 3")
def _c02():
    s3 = Setting("priority", 3)
    session3 = session_for("da", s3)
    fix3 = session3.audit_index(priority_mod.cycle_problem(3)).index
    indices = _sweep_indices(session3, list(enumerate_problems(s3)))
    s4 = Setting("priority", 4)
    session4 = session_for("da", s4)
    fix4 = session4.audit_index(priority_mod.cycle_problem(4)).index
    details = {
        "fixture_index_n3": fix3,
        "fixture_index_n4": fix4,
        "exhaustive_worst_n3": max(indices),
    }
    return fix3 == 3 and fix4 == 4 and max(indices) == 3, details


@_row("c03-ar2", "two-at-a-time application-rejection: fixture index 3; equals its DA form everywhere (n=3)")
def _c03():
    setting = Setting("priority", 3)
    session = session_for("ar:e=2", setting)
    fixture_index = session.audit_index(priority_mod.cycle_problem(3)).index
    mismatches = 0
    for problem in enumerate_problems(setting):
        if priority_mod.ar(problem, 2) != priority_mod.da_represent(problem, ("ar-tier", 2)):
            mismatches += 1
    return fixture_index == 3 and mismatches == 0, {
        "fixture_index": fixture_index,
        "da_form_mismatches": mismatches,
    }


_C04_KINDS = (
    ("identity", "da-rep:identity"),
    ("ia", "da-rep:ia"),
    (("ar-tier", 2), "da-rep:ar-2"),
)


def _c04_scan():
    setting = Setting("priority", 3)
    oracle_disagreements: list = []
    fast_disagreements: list = []
    checked = 0
    for kind, descriptor in _C04_KINDS:
        session = session_for(descriptor, setting)
        for problem in enumerate_problems(setting):
            verdict = ch.check_index_two_da_representable(problem, kind, path="both")
            index = session.audit_index(problem).index
            checked += 1
            if verdict.value != (index == 2):
                oracle_disagreements.append((descriptor, problem.reports, verdict.value, index))
            if not verdict.witnesses["fast_agrees"]:
                fast_disagreements.append((descriptor, problem.reports, index))
    return checked, oracle_disagreements, fast_disagreements


@_row("c04a-index-two-oracle", "index-two characterization (exhaustive stable scan) matches brute force for all n=3 problems and all three score modifications")
def _c04a():
    checked, oracle_disagreements, fast_disagreements = _c04_scan()
    _RESULTS_CACHE["c04"] = (checked, oracle_disagreements, fast_disagreements)
    return not oracle_disagreements, {
        "checked": checked,
        "disagreements": oracle_disagreements[:3],
    }


@_row("c04b-index-two-fast-path", "one-outcome shortcut (check only the least-preferred stable outcome) agrees with the exhaustive scan everywhere — KNOWN FALSE: the floor can admit a qualifying pair while a middle stable outcome does not")
def _c04b():
    if "c04" not in _RESULTS_CACHE:
        run_row("c04a-index-two-oracle")
    checked, _oracle, fast_disagreements = _RESULTS_CACHE["c04"]
    return not fast_disagreements, {
        "checked": checked,
        "fast_path_disagreements": len(fast_disagreements),
        "examples": fast_disagreements[:3],
    }


_RESULTS_CACHE: dict = {}


@_row("c05-clinching-equivalence", "per-problem index 1 iff a sequential clinching order exists (serial, da, ia, constant; n=3); index-1 members lack full range")
def _c05():
    house = Setting("house", 3)
    prio = Setting("priority", 3)
    battery = [
        session_for("serial:order=0,1,2", house),
        session_for("const:assignment=0,1,2", house),
        session_for("da", prio),
        session_for("ia", prio),
    ]
    mismatches = []
    checked = 0
    full_range_violations = []
    for session in battery:
        worst = 0
        for problem in enumerate_problems(session.setting):
            index = session.audit_index(problem, cap=1).index
            clinching = session.sequential_clinching(problem)
            checked += 1
            worst = max(worst, index)
            if (index == 1) != (clinching is not None):
                mismatches.append((session.mechanism.descriptor, problem.reports))
        if worst == 1 and session.full_range():
            full_range_violations.append(session.mechanism.descriptor)
    passed = not mismatches and not full_range_violations
    return passed, {
        "checked": checked,
        "mismatches": mismatches[:3],
        "index_one_members_with_full_range": full_range_violations,
    }


# ---------------------------------------------------------------------------
# House setting rows
# ---------------------------------------------------------------------------

@_row("c06-chain-condition", "fixed-order dictatorship: chain condition iff index 1 (n=3,4); exact clinchable fraction 2/3 at n=3, decreasing in n")
def _c06():
    mismatches = []
    for n in (3, 4):
        setting = Setting("house", n)
        order = tuple(range(n))
        session = session_for(f"serial:order={','.join(map(str, order))}", setting)
        for problem in enumerate_problems(setting):
            index_one = session.audit_index(problem, cap=1).index == 1
            if index_one != house_mod.chain_condition(problem, order):
                mismatches.append((n, problem.reports))
                if len(mismatches) >= 3:
                    break
        if mismatches:
            break
    fraction3 = house_mod.clinch_fraction(3)
    brute = {n: house_mod.clinch_fraction_bruteforce(n) for n in (2, 3, 4)}
    formula_matches = all(house_mod.clinch_fraction(n) == brute[n] for n in brute)
    series = [house_mod.clinch_fraction(n) for n in range(2, 7)]
    decreasing = all(a > b for a, b in zip(series, series[1:]))
    passed = (
        not mismatches
        and fraction3 == Fraction(2, 3)
        and formula_matches
        and decreasing
    )
    return passed, {
        "mismatches": mismatches,
        "fraction_n3": fraction3,
        "series_n2_to_n6": series,
        "formula_matches_bruteforce_n2_4": formula_matches,
    }


@_row("c07-serial-worst-n4", "fixed-order dictatorship: worst case exactly 2 over all (4!)^4 problems")
def _c07():
    setting = Setting("house", 4)
    session = session_for("serial:order=0,1,2,3", setting)
    indices = _sweep_indices(session, list(enumerate_problems(setting)))
    worst = max(indices)
    return worst == 2, {"worst": worst, "problems": len(indices), "values_seen": sorted(set(indices))}


@_row("c08-tail-pair-n4", "history-dependent tail-pair structure at n=4: fixture problem index >= 3; structural test fails with a condition-3 witness")
def _c08():
    setting = Setting("house", 4)
    session = session_for("fixture:tail-pair:n=4", setting)
    problem, _deviation = house_mod.tail_pair_scenario(4)
    index = session.audit_index(problem).index
    vice = house_mod.is_vice(session.mechanism.structure, 4)
    passed = index >= 3 and not vice and vice.violated_condition == 3
    return passed, {
        "fixture_index": index,
        "is_vice": bool(vice),
        "violated_condition": vice.violated_condition,
        "witness": vice.witness,
    }


@_row("c09-vice-n5", "n=5: serial and branching near-serial structures stay at index <= 2 on 1000 seeded problems; tail-pair fixture reaches index >= 4")
def _c09():
    setting = Setting("house", 5)
    scope = ProblemScope.sample(1000, seed=20250826)
    results = {}
    ok = True
    for descriptor in ("serial:order=0,1,2,3,4", "fixture:branch-vice:n=5"):
        session = session_for(descriptor, setting)
        worst = session.max_index_over(scope, cap=2)
        results[descriptor] = worst.index
        ok &= worst.index <= 2
    fixture_session = session_for("fixture:tail-pair:n=5", setting)
    problem, _dev = house_mod.tail_pair_scenario(5)
    fixture_index = fixture_session.audit_index(problem).index
    ok &= fixture_index >= 4
    results["tail-pair fixture index"] = fixture_index
    return ok, results


# ---------------------------------------------------------------------------
# Auction rows
# ---------------------------------------------------------------------------

def _auction_setting() -> Setting:
    return Setting("auction", 3, k=5)


@_row("c10a-fpa-apa-worst", "first-price and all-pay auctions: worst case exactly 2 over all 60 bid profiles (n=3, K=5); second-price worst case 3")
def _c10a():
    setting = _auction_setting()
    out = {}
    ok = True
    for descriptor, expected in (("fpa", 2), ("apa", 2), ("spa", 3)):
        worst = session_for(descriptor, setting).max_index_over(ProblemScope.exhaustive())
        out[descriptor] = worst.index
        ok &= worst.index == expected
    return ok, out


@_row("c10b-spa-per-problem", "second-price auction: every per-problem index equals 3 (n=3, K=5) — KNOWN FALSE on gap-free bid grids; honest distribution reported")
def _c10b():
    setting = _auction_setting()
    session = session_for("spa", setting)
    distribution: dict[int, int] = {}
    gapless_above_one = []
    for problem in enumerate_problems(setting):
        index = session.audit_index(problem).index
        distribution[index] = distribution.get(index, 0) + 1
        if index > 1 and not auction_mod.grid_has_in_between_payment(problem.reports):
            gapless_above_one.append(problem.reports)
    all_three = set(distribution) == {3}
    return all_three, {
        "index_distribution": distribution,
        "claim": "every per-problem index == 3",
        "note": "index 3 needs a grid payment strictly between the top two bids",
        "gapless_profiles_with_index_above_1": gapless_above_one[:3],
    }


@_row("c10c-dual-dictatorship", "auction battery: worst-case index 1 iff the two-dictator structure is recognized (3 positives, 3 negatives)")
def _c10c():
    setting = _auction_setting()
    rows = {}
    ok = True
    for name, (rule, expected_dual) in auction_mod.battery(setting).items():
        mech = wrap(setting, rule, name)
        dual = auction_mod.is_dual_dictatorship(rule, setting)
        worst = AuditSession(mech).max_index_over(ProblemScope.exhaustive())
        agrees = (dual is not None) == (worst.index == 1)
        matches_expected = (dual is not None) == expected_dual
        rows[name] = {
            "dual": dual is not None,
            "worst_index": worst.index,
            "agrees": agrees,
        }
        ok &= agrees and matches_expected
    return ok, rows


# ---------------------------------------------------------------------------
# Voting rows
# ---------------------------------------------------------------------------

@_row("c11-voting", "binary voting: dictatorial iff index 1 (all 16 rules, n=2); majority worst 2 (n=3) and 3 (n=5); veto profile indices; dictator worst 1")
def _c11():
    ok = all(
        ch.check_dictatorial_iff_index_one(t).value for t in voting_mod.all_tables(2)
    )
    details: dict = {"thm_equivalence_n2": ok}
    for n, expected in ((3, 2), (5, 3)):
        setting = Setting("vote", n)
        worst = session_for("majority:x=1", setting).max_index_over(ProblemScope.exhaustive())
        details[f"majority_worst_n{n}"] = worst.index
        ok &= worst.index == expected
    setting3 = Setting("vote", 3)
    veto = session_for("veto", setting3)
    veto_ok = True
    for problem in enumerate_problems(setting3):
        index = veto.audit_index(problem).index
        expected = 3 if all(problem.reports) else 1
        veto_ok &= index == expected
    details["veto_profile_indices_match"] = veto_ok
    dict_worst = session_for("dictator:i=0", setting3).max_index_over(ProblemScope.exhaustive())
    details["dictator_worst"] = dict_worst.index
    ok &= veto_ok and dict_worst.index == 1
    return ok, details


# ---------------------------------------------------------------------------
# Reserves row
# ---------------------------------------------------------------------------

def _reserves_setting() -> Setting:
    return Setting("reserves", 4, q=3, r=1, low_income=(0, 1))


@_row("c12-reserves", "reserves (n=4, Q=3, R=1): protected-first worst exactly R+2=3 — KNOWN FALSE at n=4 (too few unprotected individuals; holds at n=5); open-first worst >= 3 with fixtures achieving it; protected-first output is the unique doubly-compatible outcome")
def _c12():
    setting = _reserves_setting()
    rsf_worst = session_for("rsf", setting).max_index_over(ProblemScope.exhaustive())
    # The R+2 lower-bound construction needs at least Q-R+1 unprotected
    # individuals so a rejected unprotected member can stay plausibly rejected
    # while a pinned protected member stays accepted. At n=4 only 2 of the
    # required 3 exist, and an exhaustive sweep (independently brute-forced)
    # gives worst case 2. The same sweep at n=5 recovers R+2=3.
    wide = Setting("reserves", 5, q=3, r=1, low_income=(0, 1))
    rsf_worst_n5 = session_for("rsf", wide).max_index_over(ProblemScope.exhaustive())
    osf_session = session_for("osf", setting)
    osf_worst = osf_session.max_index_over(ProblemScope.exhaustive())
    fixture_indices = [
        osf_session.audit_index(reserves_mod.segregated_problem(setting)).index,
        osf_session.audit_index(reserves_mod.top_protected_problem(setting)).index,
    ]
    uniqueness = ch.check_reserves_compatibility(setting)
    bound = max(setting.q - setting.r + 1, setting.r + 2)
    passed = (
        rsf_worst.index == setting.r + 2
        and osf_worst.index >= bound
        and max(fixture_indices) >= bound
        and uniqueness.value
    )
    return passed, {
        "rsf_worst": rsf_worst.index,
        "rsf_worst_n5": rsf_worst_n5.index,
        "rsf_formula_holds_at_n5": rsf_worst_n5.index == wide.r + 2,
        "bound": bound,
        "osf_fixture_indices": fixture_indices,
        "uniqueness": uniqueness.value,
    }


# ---------------------------------------------------------------------------
# Sampling row
# ---------------------------------------------------------------------------

@_row("c13-sampling", "random audit samples: zero detection probability below full size on the worst fixture; 1/6 for the pair-witness fixture; empirical within 3 standard errors")
def _c13():
    s3 = Setting("priority", 3)
    da_session = session_for("da", s3)
    fixture3 = priority_mod.cycle_problem(3)
    identity = tuple(range(3))
    zero = ch.sample_audit_probability(da_session, fixture3, identity, 2, 10_000, seed=7)
    ok = zero.exact == 0 and zero.empirical == 0.0

    s4 = Setting("priority", 4)
    ia_session = session_for("ia", s4)
    fixture4 = priority_mod.cycle_problem(4)
    truth = ia_session.outcome(fixture4)
    deviation = (truth[1], truth[0]) + truth[2:]
    pair = ch.sample_audit_probability(ia_session, fixture4, deviation, 2, 10_000, seed=11)
    ok &= pair.exact >= Fraction(1, 6)
    p = float(pair.exact)
    se = (p * (1 - p) / 10_000) ** 0.5
    within = abs(pair.empirical - p) <= 3 * se if se > 0 else pair.empirical == p
    ok &= within
    return ok, {
        "worst_fixture_exact": zero.exact,
        "pair_fixture_exact": pair.exact,
        "pair_fixture_empirical": pair.empirical,
        "pair_hypergeometric": Fraction(2 * 1, 4 * 3),
        "asymptotic": pair.asymptotic,
        "within_3_se": within,
    }


# ---------------------------------------------------------------------------
# Property row
# ---------------------------------------------------------------------------

@_row("c14-properties", "detection monotonicity, index range, score-modification axioms, and thread-count determinism")
def _c14():
    rng = np.random.default_rng(99)
    sessions = [
        session_for("ia", Setting("priority", 3)),
        session_for("serial:order=0,1,2", Setting("house", 3)),
        session_for("spa", _auction_setting()),
        session_for("majority:x=1", Setting("vote", 3)),
        session_for("rsf", _reserves_setting()),
    ]
    monotonicity_violations = 0
    checked = 0
    while checked < 10_000:
        session = sessions[int(rng.integers(0, len(sessions)))]
        n = session.setting.n
        problem = random_problem(session.setting, rng)
        truth = session.outcome(problem)
        outcomes = session.outcomes
        deviation = outcomes[int(rng.integers(0, len(outcomes)))]
        if deviation == truth:
            continue
        size = int(rng.integers(1, n))
        sub = tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
        extra = [v for v in range(n) if v not in sub]
        sup = tuple(sorted(sub + (extra[int(rng.integers(0, len(extra)))],)))
        cache: dict = {}
        checked += 1
        if session.detects(problem, deviation, sub, cache) and not session.detects(
            problem, deviation, sup, cache
        ):
            monotonicity_violations += 1

    range_ok = True
    for session in sessions:
        for _ in range(50):
            problem = random_problem(session.setting, rng)
            index = session.audit_index(problem).index
            range_ok &= 1 <= index <= session.setting.n

    tau_ok = all(
        ch.check_tau_axioms(kind, 3, samples=10_000, seed=5).value
        for kind in ("identity", "ia", ("ar-tier", 2))
    )

    # determinism across thread counts
    def sweep_bytes() -> bytes:
        session = AuditSession(parse_mechanism("ia", Setting("priority", 3)))
        worst = session.max_index_over(ProblemScope.sample(60, seed=3))
        return json.dumps(worst.report.to_json(), sort_keys=True).encode()

    saved = os.environ.get("AUDITLAB_THREADS")
    try:
        os.environ["AUDITLAB_THREADS"] = "1"
        single = sweep_bytes()
        os.environ["AUDITLAB_THREADS"] = "4"
        multi = sweep_bytes()
    finally:
        if saved is None:
            os.environ.pop("AUDITLAB_THREADS", None)
        else:
            os.environ["AUDITLAB_THREADS"] = saved
    deterministic = single == multi

    passed = (
        monotonicity_violations == 0 and range_ok and tau_ok and deterministic
    )
    return passed, {
        "monotonicity_checked": checked,
        "monotonicity_violations": monotonicity_violations,
        "index_range_ok": range_ok,
        "tau_axioms_ok": tau_ok,
        "thread_determinism": deterministic,
    }
