"""Shared domain model: settings, type reports, problems, outcomes, feasibility.

Conventions used throughout the package
---------------------------------------

Individuals and objects are indexed ``0..n-1``.

Type reports (one per individual, per setting):

* ``house``    — a preference: tuple of object indices, most preferred first.
* ``priority`` — ``(pref, scores)`` where ``pref`` is as above and ``scores[o]``
  is the individual's integer priority score at object ``o`` (higher = higher
  priority; canonical problems store per-object ranks ``0..n-1``).
* ``auction``  — an integer bid on the grid ``{1..k}``.
* ``vote``     — a bit.
* ``reserves`` — an integer priority score (higher = higher priority).

Outcomes:

* allocation settings (``house``/``priority``) — a tuple ``assignment`` with
  ``assignment[i]`` the object given to individual ``i`` (a permutation);
* ``auction`` — ``(winner, payments)`` with ``payments`` a tuple of
  non-negative integers;
* ``vote``    — the common bit;
* ``reserves``— a ``frozenset`` of chosen individuals.

The per-individual component of an outcome (what individual ``i`` observes) is
given by :func:`outcome_component`; a group's view is :func:`restrict_outcome`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence


class UsageError(ValueError):
    """Caller violated an operation precondition (CLI exit code 2)."""


class ConfigurationError(ValueError):
    """Setting parameters are invalid or infeasible (CLI exit code 3)."""


class BudgetError(RuntimeError):
    """A search exceeded its configured budget (CLI exit code 4)."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


ALLOCATION_KINDS = ("house", "priority")
KINDS = ("house", "priority", "auction", "vote", "reserves")


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[tuple[int, ...], ...]:
    """All permutations of ``range(n)`` in lexicographic order."""
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def perm_index_map(n: int) -> dict[tuple[int, ...], int]:
    return {p: i for i, p in enumerate(all_perms(n))}


@dataclass(frozen=True)
class Setting:
    """A problem environment: the setting kind plus its configuration."""

    kind: str
    n: int
    k: int | None = None  # auction bid-grid maximum
    q: int | None = None  # reserves quota
    r: int | None = None  # reserves reserved-seat count
    low_income: tuple[int, ...] | None = None  # reserves protected set

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown setting kind {self.kind!r}")
        if self.n < 2:
            raise ConfigurationError("need at least two individuals")
        if self.kind == "auction":
            if self.k is None or self.k < self.n + 1:
                raise ConfigurationError(
                    f"auction grid maximum k must be >= n+1 = {self.n + 1}"
                )
        elif self.kind == "reserves":
            if self.q is None or self.r is None or self.low_income is None:
                raise ConfigurationError("reserves needs q, r and low_income")
            low = tuple(sorted(set(self.low_income)))
            object.__setattr__(self, "low_income", low)
            if any(i < 0 or i >= self.n for i in low):
                raise ConfigurationError("low_income indices out of range")
            if not (0 <= self.r <= len(low)):
                raise ConfigurationError("need 0 <= r <= |low_income|")
            if not (self.r <= self.q < self.n):
                raise ConfigurationError("need r <= q < n")
        else:
            if self.k is not None or self.q is not None or self.r is not None:
                raise ConfigurationError(
                    f"setting {self.kind!r} takes no k/q/r parameters"
                )

    @property
    def individuals(self) -> range:
        return range(self.n)

    @property
    def high_income(self) -> tuple[int, ...]:
        assert self.kind == "reserves" and self.low_income is not None
        low = set(self.low_income)
        return tuple(i for i in range(self.n) if i not in low)


def reports_feasible(setting: Setting, reports: tuple) -> bool:
    """Feasibility of a full report profile (cross-individual constraints)."""
    n = setting.n
    if len(reports) != n:
        return False
    if setting.kind == "house":
        return all(sorted(p) == list(range(n)) for p in reports)
    if setting.kind == "priority":
        for pref, scores in reports:
            if sorted(pref) != list(range(n)) or len(scores) != n:
                return False
        for o in range(n):
            column = [scores[o] for _, scores in reports]
            if len(set(column)) != n:  # strict priorities per object
                return False
        return True
    if setting.kind == "auction":
        if any(not (1 <= b <= setting.k) for b in reports):
            return False
        return len(set(reports)) == n  # distinct bids
    if setting.kind == "vote":
        return all(v in (0, 1) for v in reports)
    if setting.kind == "reserves":
        if any(s < 1 for s in reports):
            return False
        return len(set(reports)) == n  # distinct scores
    raise ConfigurationError(setting.kind)


@dataclass(frozen=True)
class Problem:
    """A full report profile in a given setting."""

    setting: Setting
    reports: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "reports", tuple(self.reports))
        if not reports_feasible(self.setting, self.reports):
            raise UsageError("infeasible report profile")

    @property
    def n(self) -> int:
        return self.setting.n


def recombine(problem: Problem, group: Sequence[int], counterpart_reports: dict):
    """Combine the group's actual reports with counterpart reports.

    ``counterpart_reports`` must cover exactly the complement of ``group``.
    Returns the combined :class:`Problem`, or ``None`` when the combination
    violates profile feasibility (a legitimate signal, never repaired).
    """
    group_set = set(group)
    complement = set(range(problem.n)) - group_set
    if set(counterpart_reports) != complement:
        raise UsageError("counterpart reports must cover exactly the complement")
    reports = tuple(
        problem.reports[i] if i in group_set else counterpart_reports[i]
        for i in range(problem.n)
    )
    if not reports_feasible(problem.setting, reports):
        return None
    return Problem(problem.setting, reports)


# ---------------------------------------------------------------------------
# Canonical enumeration
# ---------------------------------------------------------------------------

def enumerate_type_space(setting: Setting, individual: int) -> list:
    """The canonical finite type space of one individual (deterministic order)."""
    if individual not in setting.individuals:
        raise UsageError("individual index out of range")
    n = setting.n
    if setting.kind == "house":
        return list(all_perms(n))
    if setting.kind == "priority":
        return [
            (pref, scores)
            for pref in all_perms(n)
            for scores in itertools.product(range(n), repeat=n)
        ]
    if setting.kind == "auction":
        return list(range(1, setting.k + 1))
    if setting.kind == "vote":
        return [0, 1]
    if setting.kind == "reserves":
        return list(range(1, n + 1))
    raise ConfigurationError(setting.kind)


def enumerate_problems(setting: Setting) -> Iterator[Problem]:
    """One representative per ordinal equivalence class, deterministic order.

    ``priority``/``reserves`` realize per-object (resp. global) priority orders
    as rank scores; ``auction`` yields distinct-bid tuples; ``house``/``vote``
    are full product spaces.
    """
    n = setting.n
    if setting.kind == "house":
        for prefs in itertools.product(all_perms(n), repeat=n):
            yield Problem(setting, prefs)
    elif setting.kind == "vote":
        for votes in itertools.product((0, 1), repeat=n):
            yield Problem(setting, votes)
    elif setting.kind == "auction":
        for bids in itertools.permutations(range(1, setting.k + 1), n):
            yield Problem(setting, bids)
    elif setting.kind == "reserves":
        # order[pos] = individual holding the pos-th highest score
        for order in all_perms(n):
            scores = [0] * n
            for pos, i in enumerate(order):
                scores[i] = n - pos
            yield Problem(setting, tuple(scores))
    elif setting.kind == "priority":
        perms = all_perms(n)
        for prefs in itertools.product(perms, repeat=n):
            for orders in itertools.product(perms, repeat=n):
                yield Problem(setting, reports_from_priority_axes(n, prefs, orders))
    else:
        raise ConfigurationError(setting.kind)


def reports_from_priority_axes(
    n: int,
    prefs: tuple[tuple[int, ...], ...],
    orders: tuple[tuple[int, ...], ...],
) -> tuple:
    """Build priority reports from preferences plus per-object priority orders.

    ``orders[o][pos]`` is the individual with the pos-th highest score at
    object ``o``; realized scores are the ranks ``n-1 .. 0``.
    """
    scores = [[0] * n for _ in range(n)]  # scores[i][o]
    for o in range(n):
        for pos, i in enumerate(orders[o]):
            scores[i][o] = n - 1 - pos
    return tuple((prefs[i], tuple(scores[i])) for i in range(n))


def count_problems(setting: Setting) -> int:
    n = setting.n
    if setting.kind == "house":
        return factorial(n) ** n
    if setting.kind == "vote":
        return 2 ** n
    if setting.kind == "auction":
        total = 1
        for j in range(n):
            total *= setting.k - j
        return total
    if setting.kind == "reserves":
        return factorial(n)
    if setting.kind == "priority":
        return factorial(n) ** (2 * n)
    raise ConfigurationError(setting.kind)


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def enumerate_outcomes(setting: Setting) -> list:
    """The full feasible outcome universe, deterministic order."""
    n = setting.n
    if setting.kind in ALLOCATION_KINDS:
        return list(all_perms(n))
    if setting.kind == "vote":
        return [0, 1]
    if setting.kind == "auction":
        payments = list(itertools.product(range(setting.k + 1), repeat=n))
        return [(w, p) for w in range(n) for p in payments]
    if setting.kind == "reserves":
        low = set(setting.low_income)
        out = []
        for chosen in itertools.combinations(range(n), setting.q):
            if len(low.intersection(chosen)) >= setting.r:
                out.append(frozenset(chosen))
        return out
    raise ConfigurationError(setting.kind)


def outcome_component(setting: Setting, outcome, individual: int):
    """What ``individual`` observes of ``outcome``."""
    if setting.kind in ALLOCATION_KINDS:
        return outcome[individual]
    if setting.kind == "auction":
        winner, payments = outcome
        return (1 if winner == individual else 0, payments[individual])
    if setting.kind == "vote":
        return outcome
    if setting.kind == "reserves":
        return 1 if individual in outcome else 0
    raise ConfigurationError(setting.kind)


def restrict_outcome(setting: Setting, outcome, group: Sequence[int]) -> tuple:
    """A group's joint view of an outcome (components in group order)."""
    return tuple(outcome_component(setting, outcome, i) for i in group)


# ---------------------------------------------------------------------------
# Canonical hashing and JSON serialization
# ---------------------------------------------------------------------------

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def canonical_problem_bytes(problem: Problem) -> bytes:
    s = problem.setting
    parts = [s.kind, str(s.n)]
    if s.kind == "auction":
        parts.append(f"k={s.k}")
    if s.kind == "reserves":
        parts.append(f"q={s.q};r={s.r};low={','.join(map(str, s.low_income))}")
    if s.kind == "priority":
        for pref, scores in problem.reports:
            parts.append(",".join(map(str, pref)) + "/" + ",".join(map(str, scores)))
    elif s.kind == "house":
        for pref in problem.reports:
            parts.append(",".join(map(str, pref)))
    else:
        parts.append(",".join(map(str, problem.reports)))
    return "|".join(parts).encode("ascii")


def problem_hash(problem: Problem) -> str:
    """64-bit FNV-1a over the canonical byte encoding, as fixed-width hex."""
    return format(fnv1a64(canonical_problem_bytes(problem)), "016x")


def setting_to_json(setting: Setting) -> dict:
    out: dict = {"setting": setting.kind, "n": setting.n}
    if setting.kind == "auction":
        out["k"] = setting.k
    if setting.kind == "reserves":
        out["q"] = setting.q
        out["r"] = setting.r
        out["low_income"] = list(setting.low_income)
    return out


def problem_to_json(problem: Problem) -> dict:
    out = setting_to_json(problem.setting)
    kind = problem.setting.kind
    if kind == "house":
        out["preferences"] = [list(p) for p in problem.reports]
    elif kind == "priority":
        out["preferences"] = [list(p) for p, _ in problem.reports]
        out["scores"] = [list(s) for _, s in problem.reports]
    elif kind == "auction":
        out["bids"] = list(problem.reports)
    elif kind == "vote":
        out["votes"] = list(problem.reports)
    elif kind == "reserves":
        out["scores"] = list(problem.reports)
    return out


def setting_from_json(data: dict) -> Setting:
    try:
        kind = data["setting"]
        n = int(data["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed setting JSON: {exc}") from exc
    if kind == "auction":
        if "k" not in data:
            raise UsageError("auction setting JSON needs 'k'")
        return Setting(kind, n, k=int(data["k"]))
    if kind == "reserves":
        for key in ("q", "r", "low_income"):
            if key not in data:
                raise UsageError(f"reserves setting JSON needs {key!r}")
        return Setting(
            kind, n, q=int(data["q"]), r=int(data["r"]),
            low_income=tuple(int(i) for i in data["low_income"]),
        )
    return Setting(kind, n)


def problem_from_json(data: dict) -> Problem:
    setting = setting_from_json(data)
    kind = setting.kind
    try:
        if kind == "house":
            reports: tuple = tuple(tuple(p) for p in data["preferences"])
        elif kind == "priority":
            prefs = [tuple(p) for p in data["preferences"]]
            scores = [tuple(s) for s in data["scores"]]
            if len(prefs) != len(scores):
                raise UsageError("preferences/scores length mismatch")
            reports = tuple(zip(prefs, scores))
        elif kind == "auction":
            reports = tuple(int(b) for b in data["bids"])
        elif kind == "vote":
            reports = tuple(int(v) for v in data["votes"])
        else:
            reports = tuple(int(s) for s in data["scores"])
    except KeyError as exc:
        raise UsageError(f"problem JSON missing field {exc}") from exc
    return Problem(setting, reports)


def load_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read problem file {path}: {exc}") from exc
    return problem_from_json(data)


def outcome_to_json(setting: Setting, outcome) -> dict:
    if setting.kind in ALLOCATION_KINDS:
        return {"assignment": list(outcome)}
    if setting.kind == "auction":
        winner, payments = outcome
        return {"winner": winner, "payments": list(payments)}
    if setting.kind == "vote":
        return {"outcome": outcome}
    if setting.kind == "reserves":
        return {"chosen": sorted(outcome)}
    raise ConfigurationError(setting.kind)


def outcome_from_json(setting: Setting, data: dict):
    try:
        if setting.kind in ALLOCATION_KINDS:
            return tuple(int(o) for o in data["assignment"])
        if setting.kind == "auction":
            return (int(data["winner"]), tuple(int(y) for y in data["payments"]))
        if setting.kind == "vote":
            return int(data["outcome"])
        if setting.kind == "reserves":
            return frozenset(int(i) for i in data["chosen"])
    except KeyError as exc:
        raise UsageError(f"outcome JSON missing field {exc}") from exc
    raise ConfigurationError(setting.kind)
