"""Deviation detection, smallest detecting groups, and auditability indices.

An :class:`AuditSession` binds a mechanism to reusable search machinery:

- small counterpart spaces are materialized once as an outcome table and
  sliced with ``numpy`` fancy indexing;
- large priority spaces are swept in vectorized chunks (a seeded random
  sampling pass first, which usually saturates the reachable-value bound,
  then an exhaustive lexicographic pass bounded by an evaluation budget);
- sequential dictatorships bypass the search entirely through an exact
  combinatorial shortcut on the mechanism handle.

All paths compute the same thing: the set of group-restricted outcomes the
mechanism can produce while the group's reports stay fixed. A group detects
a deviating outcome exactly when the deviation's restriction to the group
lies outside that set.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod

import numpy as np

from . import _space
from .core import (
    ALLOCATION_KINDS,
    BudgetError,
    ConfigurationError,
    Problem,
    Setting,
    UsageError,
    all_perms,
    canonical_problem_bytes,
    count_problems,
    enumerate_outcomes,
    enumerate_problems,
    fnv1a64,
    outcome_to_json,
    problem_hash,
    reports_from_priority_axes,
    restrict_outcome,
)
from .mechanisms import Mechanism

_BATCH_CHUNK = 1 << 16
_SAMPLE_CELLS = 1 << 17


def _thread_count() -> int:
    raw = os.environ.get("AUDITLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"AUDITLAB_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigurationError("AUDITLAB_THREADS must be >= 1")
    return value


# ---------------------------------------------------------------------------
# Report types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeviationAudit:
    deviation: object
    min_group_size: int
    witness_group: tuple[int, ...]


@dataclass
class AuditReport:
    setting: Setting
    problem_hash: str
    index: int
    witness_deviation: object
    deviations: tuple[DeviationAudit, ...]
    stats: dict = field(default_factory=dict)

    def to_json(self, include_stats: bool = False) -> dict:
        out = {
            "problem_hash": self.problem_hash,
            "index": self.index,
            "witness_deviation": outcome_to_json(self.setting, self.witness_deviation),
            "deviations": [
                {
                    "deviation": outcome_to_json(self.setting, d.deviation),
                    "min_group_size": d.min_group_size,
                    "witness_group": list(d.witness_group),
                }
                for d in self.deviations
            ],
        }
        if include_stats:
            out["stats"] = dict(self.stats)
        return out


@dataclass
class WorstCase:
    index: int
    witness_problem: Problem
    report: AuditReport
    examined: int
    lower_bound: bool = False


@dataclass(frozen=True)
class ProblemScope:
    """What to sweep: every canonical problem, a seeded sample, a named
    fixture family, or an explicit problem list."""

    kind: str  # "exhaustive" | "sample" | "family" | "list"
    count: int | None = None
    seed: int | None = None
    name: str | None = None
    problems: tuple = ()

    @classmethod
    def exhaustive(cls) -> "ProblemScope":
        return cls("exhaustive")

    @classmethod
    def sample(cls, count: int, seed: int) -> "ProblemScope":
        return cls("sample", count=count, seed=seed)

    @classmethod
    def family(cls, name: str) -> "ProblemScope":
        return cls("family", name=name)

    @classmethod
    def of(cls, problems) -> "ProblemScope":
        return cls("list", problems=tuple(problems))


def random_problem(setting: Setting, rng: np.random.Generator) -> Problem:
    n = setting.n
    if setting.kind == "house":
        return Problem(
            setting, tuple(tuple(int(v) for v in rng.permutation(n)) for _ in range(n))
        )
    if setting.kind == "priority":
        prefs = tuple(tuple(int(v) for v in rng.permutation(n)) for _ in range(n))
        orders = tuple(tuple(int(v) for v in rng.permutation(n)) for _ in range(n))
        return Problem(setting, reports_from_priority_axes(n, prefs, orders))
    if setting.kind == "auction":
        bids = rng.choice(np.arange(1, setting.k + 1), size=n, replace=False)
        return Problem(setting, tuple(int(b) for b in bids))
    if setting.kind == "vote":
        return Problem(setting, tuple(int(v) for v in rng.integers(0, 2, size=n)))
    if setting.kind == "reserves":
        order = [int(v) for v in rng.permutation(n)]
        scores = [0] * n
        for pos, i in enumerate(order):
            scores[i] = n - pos
        return Problem(setting, tuple(scores))
    raise ConfigurationError(setting.kind)


_FAMILIES = ("cycle", "tail-pair", "segregated", "top-protected", "gap")


def family_problems(name: str, setting: Setting) -> list[Problem]:
    """Named fixture generators usable as a sweep scope."""
    from . import auction as auction_mod, house as house_mod
    from . import priority as priority_mod, reserves as reserves_mod

    if name == "cycle":
        if setting.kind != "priority":
            raise UsageError("cycle family needs the priority setting")
        return [priority_mod.cycle_problem(setting.n)]
    if name == "tail-pair":
        if setting.kind != "house":
            raise UsageError("tail-pair family needs the house setting")
        return [house_mod.tail_pair_scenario(setting.n)[0]]
    if name == "segregated":
        return [reserves_mod.segregated_problem(setting)]
    if name == "top-protected":
        return [reserves_mod.top_protected_problem(setting)]
    if name == "gap":
        return [auction_mod.gap_problem(setting)]
    raise UsageError(f"unknown problem family {name!r}; known: {', '.join(_FAMILIES)}")


def scope_problems(scope: ProblemScope, setting: Setting, problem_budget: int = 500_000):
    if scope.kind == "exhaustive":
        total = count_problems(setting)
        if total > problem_budget:
            raise BudgetError(
                f"exhaustive scope has {total} problems (budget {problem_budget})",
                estimate=total,
            )
        return list(enumerate_problems(setting))
    if scope.kind == "sample":
        if scope.count is None or scope.seed is None:
            raise UsageError("sample scope needs count and seed")
        rng = np.random.default_rng(scope.seed)
        return [random_problem(setting, rng) for _ in range(scope.count)]
    if scope.kind == "family":
        return family_problems(scope.name, setting)
    if scope.kind == "list":
        return list(scope.problems)
    raise UsageError(f"unknown scope kind {scope.kind!r}")


# ---------------------------------------------------------------------------
# The session
# ---------------------------------------------------------------------------

class AuditSession:
    def __init__(
        self,
        mechanism: Mechanism,
        *,
        table_cell_limit: int = 700_000,
        batch_budget: int = 60_000_000,
        python_budget: int = 2_000_000,
        grid_priority: bool = False,
    ):
        if not isinstance(mechanism, Mechanism):
            raise UsageError("wrap the outcome function with mechanisms.wrap first")
        self.mechanism = mechanism
        self.setting = mechanism.setting
        if grid_priority:
            if self.setting.kind != "priority":
                raise UsageError("grid_priority applies to the priority setting only")
            self.space: _space.Space = _space.GridPrioritySpace(self.setting)
        else:
            self.space = _space.space_for(self.setting)
        self.grid_priority = grid_priority
        self.table_cell_limit = table_cell_limit
        self.batch_budget = batch_budget
        self.python_budget = python_budget
        self.outcomes = enumerate_outcomes(self.setting)
        self._outcome_index = {self._key(o): i for i, o in enumerate(self.outcomes)}
        self._table: np.ndarray | None = None
        self._group_view: dict = {}
        self._possible_cache: dict = {}
        self.stats = {"evaluations": 0, "cache_hits": 0}

    # -- plumbing ----------------------------------------------------------
    @staticmethod
    def _key(outcome):
        return outcome

    def outcome(self, problem: Problem):
        return self.mechanism.outcome(problem)

    def _prefer_table(self) -> bool:
        return (
            self.space.total_cells <= self.table_cell_limit and not self.grid_priority
        )

    def _ensure_table(self) -> np.ndarray:
        if self._table is not None:
            return self._table
        total = self.space.total_cells
        if total > self.table_cell_limit:
            raise BudgetError(
                f"search space has {total} cells (table limit {self.table_cell_limit})",
                estimate=total,
            )
        flat = np.full(total, -1, dtype=np.int32)
        pos = 0
        for cell in itertools.product(*(range(s) for s in self.space.axes)):
            try:
                problem = self.space.problem_of(cell)
            except UsageError:
                pos += 1
                continue
            flat[pos] = self._outcome_index[self._key(self.mechanism.outcome(problem))]
            pos += 1
        self.stats["evaluations"] += total
        self._table = flat.reshape(self.space.axes)
        return self._table

    def _group_summary(self, group: tuple[int, ...]):
        """(rid per outcome index, value by rid, universe size) for a group."""
        hit = self._group_view.get(group)
        if hit is not None:
            return hit
        interner: dict = {}
        rids = np.empty(len(self.outcomes), dtype=np.int64)
        for idx, outcome in enumerate(self.outcomes):
            value = restrict_outcome(self.setting, outcome, group)
            rids[idx] = interner.setdefault(value, len(interner))
        by_rid = [None] * len(interner)
        for value, rid in interner.items():
            by_rid[rid] = value
        summary = (rids, tuple(by_rid), len(interner))
        self._group_view[group] = summary
        return summary

    # -- reachable restricted outcomes --------------------------------------
    def achievable(self, problem: Problem, group, cache: dict | None = None) -> frozenset:
        """Every group-restricted outcome reachable over counterpart reports."""
        group = tuple(sorted(group))
        if not group:
            raise UsageError("group must be nonempty")
        if any(i not in self.setting.individuals for i in group):
            raise UsageError("group member out of range")
        key = (problem, group)
        if cache is not None and key in cache:
            self.stats["cache_hits"] += 1
            return cache[key]
        result = self._achievable_uncached(problem, group)
        if cache is not None:
            cache[key] = result
        return result

    def _achievable_uncached(self, problem, group) -> frozenset:
        override = self.mechanism.achievable_restricted(problem, group)
        if override is not None:
            return frozenset(override)
        if self._prefer_table():
            return self._achievable_from_table(problem, group)
        values, exhausted = self._scan(problem, group)
        bound = self._group_summary(group)[2]
        if not exhausted and len(values) < bound:
            raise BudgetError(
                "counterpart scan exceeded the evaluation budget before the "
                "reachable-value bound was met",
                estimate=self.space.slice_size(problem, group),
            )
        return frozenset(values)

    def _achievable_from_table(self, problem, group) -> frozenset:
        table = self._ensure_table()
        opts = self.space.axis_options(problem, group)
        sub = table[np.ix_(*[np.asarray(o, dtype=np.intp) for o in opts])]
        vals = sub.ravel()
        vals = vals[vals >= 0]
        rids, by_rid, _ = self._group_summary(group)
        present = np.unique(rids[vals])
        return frozenset(by_rid[r] for r in present)

    # -- chunked scans for spaces too large to materialize -------------------
    def _scan(self, problem, group, stop_value=None):
        """Sweep the counterpart slice. Returns (values, exhausted).

        Stops early when ``stop_value`` is seen, or when every restricted
        value that exists at all has been seen. A seeded random pass runs
        first because saturation usually happens within it; correctness
        never depends on the sampling (values found are real, and the
        exhaustive pass provides completeness).
        """
        opts = self.space.axis_options(problem, group)
        sizes = [len(o) for o in opts]
        total = prod(sizes)
        bound = self._group_summary(group)[2]
        use_batch = (
            isinstance(self.space, _space.PrioritySpace)
            and self.mechanism.supports_batch
        )
        budget = self.batch_budget if use_batch else self.python_budget
        values: set = set()

        def saturated() -> bool:
            return (stop_value is not None and stop_value in values) or len(values) >= bound

        handle = self._batch_cells if use_batch else self._python_cells
        strides = [prod(sizes[a + 1:]) for a in range(len(sizes))]

        # phase A: seeded random sampling (only worthwhile on big slices)
        if total > 4 * _BATCH_CHUNK:
            seed = fnv1a64(
                canonical_problem_bytes(problem) + bytes(group) + b"scan"
            )
            rng = np.random.default_rng(seed)
            sampled = 0
            while sampled < min(_SAMPLE_CELLS, budget):
                idx = rng.integers(0, total, size=_BATCH_CHUNK, dtype=np.int64)
                if sampled == 0:
                    idx[0] = 0  # make sure the original problem is covered
                values |= handle(idx, opts, strides, sizes, group)
                sampled += len(idx)
                if saturated():
                    return values, False

        # phase B: exhaustive lexicographic sweep
        processed = 0
        while processed < total:
            hi = min(processed + _BATCH_CHUNK, total)
            idx = np.arange(processed, hi, dtype=np.int64)
            values |= handle(idx, opts, strides, sizes, group)
            processed = hi
            if saturated():
                return values, False
            if processed >= budget and processed < total:
                return values, False
        return values, True

    def _decode_cols(self, idx, opts, strides, sizes):
        return [
            np.asarray(opts[a], dtype=np.int64)[(idx // strides[a]) % sizes[a]]
            for a in range(len(opts))
        ]

    def _batch_cells(self, idx, opts, strides, sizes, group) -> set:
        cols = self._decode_cols(idx, opts, strides, sizes)
        mask = self.space.feasible_mask(cols)
        if mask is not None:
            cols = [c[mask] for c in cols]
            if len(cols[0]) == 0:
                return set()
        pref, score = self.space.decode_batch(cols)
        assignment = self.mechanism.outcome_batch(pref, score)
        self.stats["evaluations"] += len(assignment)
        sub = assignment[:, list(group)]
        n = self.setting.n
        powers = n ** np.arange(len(group) - 1, -1, -1, dtype=np.int64)
        codes = np.unique(sub @ powers)
        out = set()
        for code in codes:
            vals = []
            c = int(code)
            for _ in group:
                c, v = divmod(c, n)
                vals.append(v)
            out.add(tuple(reversed(vals)))
        return out

    def _python_cells(self, idx, opts, strides, sizes, group) -> set:
        out = set()
        for linear in idx:
            cell = tuple(
                opts[a][(int(linear) // strides[a]) % sizes[a]] for a in range(len(opts))
            )
            try:
                problem = self.space.problem_of(cell)
            except UsageError:
                continue
            self.stats["evaluations"] += 1
            out.add(
                restrict_outcome(self.setting, self.mechanism.outcome(problem), group)
            )
        return out

    # -- detection ----------------------------------------------------------
    def detects(self, problem: Problem, deviation, group, cache: dict | None = None) -> bool:
        """True iff no counterpart profile makes the mechanism agree with the
        deviation on every group member."""
        group = tuple(sorted(group))
        if not group:
            raise UsageError("group must be nonempty")
        truth = self.outcome(problem)
        if self._key(deviation) == self._key(truth):
            raise UsageError("the deviation equals the true outcome")
        if self._key(deviation) not in self._outcome_index:
            raise UsageError("the deviation is not a feasible outcome")
        restricted = restrict_outcome(self.setting, deviation, group)
        if (cache is not None and (problem, group) in cache) or self._prefer_table() \
                or self.mechanism.achievable_restricted(problem, group) is not None:
            return restricted not in self.achievable(problem, group, cache)
        # large space, one-off query: targeted scan with early exit
        values, exhausted = self._scan(problem, group, stop_value=restricted)
        if restricted in values:
            return False
        if not exhausted:
            raise BudgetError(
                "counterpart scan exceeded the evaluation budget before the "
                "deviation query was resolved",
                estimate=self.space.slice_size(problem, group),
            )
        return True

    def min_detecting_size(self, problem: Problem, deviation, cache: dict | None = None):
        """Smallest detecting group size plus the lexicographically first
        witness of that size. Ascends k = 1, 2, ... (supersets of detecting
        groups detect, so the first hit is minimal)."""
        own_cache = cache if cache is not None else {}
        n = self.setting.n
        for k in range(1, n + 1):
            for group in itertools.combinations(range(n), k):
                if self._detects_for_index(problem, deviation, group, own_cache):
                    return k, group
        raise ConfigurationError("the full group failed to detect a deviation")

    def _detects_for_index(self, problem, deviation, group, cache) -> bool:
        restricted = restrict_outcome(self.setting, deviation, group)
        return restricted not in self.achievable(problem, group, cache)

    def audit_index(self, problem: Problem, cap: int | None = None) -> AuditReport:
        """Per-problem auditability: the max over deviating outcomes of the
        smallest detecting group size.

        With ``cap`` set, the search stops ascending at group size ``cap``;
        a returned index of ``cap + 1`` means "greater than cap".
        """
        start = time.perf_counter()
        truth_key = self._key(self.outcome(problem))
        deviations = [o for o in self.outcomes if self._key(o) != truth_key]
        n = self.setting.n
        limit = n if cap is None else min(cap, n)
        cache: dict = {}
        pending = list(range(len(deviations)))
        sizes: dict[int, tuple[int, tuple[int, ...]]] = {}
        for k in range(1, limit + 1):
            if not pending:
                break
            groups = list(itertools.combinations(range(n), k))
            still = []
            for d in pending:
                hit = None
                for group in groups:
                    if self._detects_for_index(problem, deviations[d], group, cache):
                        hit = group
                        break
                if hit is None:
                    still.append(d)
                else:
                    sizes[d] = (k, hit)
            pending = still
        for d in pending:  # unresolved under a cap: report the honest bound
            sizes[d] = (limit + 1, ())
        records = tuple(
            DeviationAudit(deviations[d], sizes[d][0], sizes[d][1])
            for d in range(len(deviations))
        )
        index = max((r.min_group_size for r in records), default=1)
        witness = next(r.deviation for r in records if r.min_group_size == index) \
            if records else truth_key
        stats = {
            "evaluations": self.stats["evaluations"],
            "cache_hits": self.stats["cache_hits"],
            "wall_time_s": time.perf_counter() - start,
        }
        return AuditReport(
            setting=self.setting,
            problem_hash=problem_hash(problem),
            index=index,
            witness_deviation=witness,
            deviations=records,
            stats=stats,
        )

    # -- sweeps ---------------------------------------------------------------
    def max_index_over(self, scope: ProblemScope, cap: int | None = None) -> WorstCase:
        """Worst case over a scope; deterministic for fixed inputs and seeds
        regardless of AUDITLAB_THREADS."""
        problems = scope_problems(scope, self.setting)
        threads = _thread_count()
        best_idx = 0
        best_problem = None
        examined = 0
        lower_bound = False

        def job(problem: Problem) -> int:
            return self.audit_index(problem, cap=cap).index

        try:
            if threads == 1:
                for problem in problems:
                    value = job(problem)
                    examined += 1
                    if value > best_idx:
                        best_idx, best_problem = value, problem
            else:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    for problem, value in zip(problems, pool.map(job, problems, chunksize=16)):
                        examined += 1
                        if value > best_idx:
                            best_idx, best_problem = value, problem
        except BudgetError:
            if best_problem is None:
                raise
            lower_bound = True
        report = self.audit_index(best_problem, cap=cap)
        return WorstCase(
            index=best_idx,
            witness_problem=best_problem,
            report=report,
            examined=examined,
            lower_bound=lower_bound,
        )

    # -- clinching apparatus ---------------------------------------------------
    def _embed(self, individual: int, report) -> Problem:
        """A feasible problem whose ``individual`` files ``report``; the other
        coordinates are irrelevant because the counterpart slice frees them."""
        n = self.setting.n
        identity = tuple(range(n))
        if self.setting.kind == "house":
            reports = tuple(report if i == individual else identity for i in range(n))
            return Problem(self.setting, reports)
        if self.setting.kind == "priority":
            pref = report[0]
            prefs = tuple(pref if i == individual else identity for i in range(n))
            order = (individual,) + tuple(j for j in range(n) if j != individual)
            orders = tuple(order for _ in range(n))
            return Problem(self.setting, reports_from_priority_axes(n, prefs, orders))
        raise UsageError("clinching operations apply to allocation settings only")

    def possible_objects(self, individual: int, report) -> frozenset[int]:
        """Objects the individual can end up with across all counterparts.

        For the priority setting this depends only on the preference part of
        the report: the counterpart slice realizes every priority order, so
        the numeric scores never constrain the reachable set.
        """
        if self.setting.kind not in ALLOCATION_KINDS:
            raise UsageError("possible_objects applies to allocation settings only")
        key = (individual, report[0] if self.setting.kind == "priority" else report)
        hit = self._possible_cache.get(key)
        if hit is not None:
            self.stats["cache_hits"] += 1
            return hit
        problem = self._embed(individual, report)
        reachable = self.achievable(problem, (individual,))
        result = frozenset(v[0] for v in reachable)
        self._possible_cache[key] = result
        return result

    def clinches(self, individual: int, report, available: frozenset[int]) -> int | None:
        """The unique object the individual is sure to get from the available
        set, when her possible set meets it in a singleton."""
        if not available:
            raise UsageError("available set must be nonempty")
        meet = self.possible_objects(individual, report) & frozenset(available)
        if len(meet) == 1:
            (obj,) = meet
            return obj
        return None

    def sequential_clinching(self, problem: Problem) -> tuple[int, ...] | None:
        """Greedy clinching order: at each step the lowest-index remaining
        individual who clinches some available object takes it. Greedy is
        safe — shrinking the available set keeps a clincher's singleton a
        singleton — so failure at any step means no order exists."""
        if self.setting.kind not in ALLOCATION_KINDS:
            raise UsageError("sequential clinching applies to allocation settings only")
        n = self.setting.n
        available = set(range(n))
        remaining = list(range(n))
        order: list[int] = []
        while remaining:
            step = None
            for i in remaining:
                obj = self.clinches(i, problem.reports[i], frozenset(available))
                if obj is not None:
                    step = (i, obj)
                    break
            if step is None:
                return None
            i, obj = step
            order.append(i)
            remaining.remove(i)
            available.discard(obj)
        return tuple(order)

    def clinching_order_uniformity(self) -> bool:
        """Whether a clincher can be named at every reachable available-object
        set such that her possible set meets it in a singleton for every own
        report. Searched with backtracking over candidate clinchers; states
        are memoized on (available objects, remaining individuals)."""
        if self.setting.kind not in ALLOCATION_KINDS:
            raise UsageError("clinching uniformity applies to allocation settings only")
        n = self.setting.n
        reports = {
            i: self._report_universe(i) for i in range(n)
        }
        memo: dict = {}

        def feasible(avail: frozenset[int], inds: frozenset[int]) -> bool:
            if not inds:
                return True
            key = (avail, inds)
            hit = memo.get(key)
            if hit is not None:
                return hit
            result = False
            for i in sorted(inds):
                taken = set()
                ok = True
                for rep in reports[i]:
                    meet = self.possible_objects(i, rep) & avail
                    if len(meet) != 1:
                        ok = False
                        break
                    taken.add(next(iter(meet)))
                if not ok:
                    continue
                if all(feasible(avail - {o}, inds - {i}) for o in taken):
                    result = True
                    break
            memo[key] = result
            return result

        return feasible(frozenset(range(n)), frozenset(range(n)))

    def _report_universe(self, individual: int):
        """Own reports, deduplicated to what possible_objects depends on."""
        if self.setting.kind == "house":
            return list(all_perms(self.setting.n))
        # priority: scores never matter, so one report per preference suffices
        n = self.setting.n
        base = tuple(range(n - 1, -1, -1))
        return [(pref, base) for pref in all_perms(n)]

    def full_range(self, problem_budget: int = 500_000) -> bool:
        """Whether every feasible outcome arises at some canonical problem."""
        total = count_problems(self.setting)
        if total > problem_budget:
            raise BudgetError(
                f"full-range sweep needs {total} evaluations (budget {problem_budget})",
                estimate=total,
            )
        missing = {self._key(o) for o in self.outcomes}
        for problem in enumerate_problems(self.setting):
            missing.discard(self._key(self.outcome(problem)))
            if not missing:
                return True
        return False


# ---------------------------------------------------------------------------
# Module-level conveniences mirroring the session methods
# ---------------------------------------------------------------------------

def detects(mechanism: Mechanism, problem: Problem, deviation, group) -> bool:
    return AuditSession(mechanism).detects(problem, deviation, group)


def min_detecting_size(mechanism: Mechanism, problem: Problem, deviation):
    return AuditSession(mechanism).min_detecting_size(problem, deviation)


def audit_index(mechanism: Mechanism, problem: Problem) -> AuditReport:
    return AuditSession(mechanism).audit_index(problem)


def max_index_over(mechanism: Mechanism, scope: ProblemScope) -> WorstCase:
    return AuditSession(mechanism).max_index_over(scope)


def possible_objects(mechanism: Mechanism, individual: int, report) -> frozenset[int]:
    return AuditSession(mechanism).possible_objects(individual, report)


def clinches(mechanism: Mechanism, individual: int, report, available) -> int | None:
    return AuditSession(mechanism).clinches(individual, report, frozenset(available))


def sequential_clinching(mechanism: Mechanism, problem: Problem):
    return AuditSession(mechanism).sequential_clinching(problem)


def clinching_order_uniformity(mechanism: Mechanism) -> bool:
    return AuditSession(mechanism).clinching_order_uniformity()


def full_range(mechanism: Mechanism) -> bool:
    return AuditSession(mechanism).full_range()
