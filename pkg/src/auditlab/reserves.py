"""Choice with reserved seats: reserved-seats-first (RSF) and open-seats-first
(OSF) processing, and the priority-compatibility predicates that pin RSF down.

Outcomes are frozensets of chosen individuals; ``|chosen| = q`` and at least
``r`` members come from the protected (low-income) set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Problem, Setting, UsageError


def _scores(problem: Problem) -> tuple[int, ...]:
    if problem.setting.kind != "reserves":
        raise UsageError("expected a reserves problem")
    return problem.reports


def _take_top(pool, scores, count) -> list[int]:
    ranked = sorted(pool, key=lambda i: -scores[i])
    return ranked[: max(0, count)]


def rsf(problem: Problem) -> frozenset[int]:
    """Reserved seats first: up to r highest-score protected individuals, then
    fill the remaining seats from everyone left by score."""
    s = problem.setting
    scores = _scores(problem)
    chosen = _take_top(s.low_income, scores, s.r)
    rest = [i for i in range(s.n) if i not in chosen]
    chosen += _take_top(rest, scores, s.q - len(chosen))
    return frozenset(chosen)


def osf(problem: Problem) -> frozenset[int]:
    """Open seats first: up to q-r seats from everyone by score, then up to r
    protected individuals, then fill any remaining seats from the rest."""
    s = problem.setting
    scores = _scores(problem)
    chosen = _take_top(range(s.n), scores, s.q - s.r)
    protected_left = [i for i in s.low_income if i not in chosen]
    chosen += _take_top(protected_left, scores, s.r)
    rest = [i for i in range(s.n) if i not in chosen]
    chosen += _take_top(rest, scores, s.q - len(chosen))
    return frozenset(chosen)


@dataclass(frozen=True)
class CompatibilityVerdict:
    value: bool
    violating_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.value


def _priority_violations(problem: Problem, outcome: frozenset[int]):
    scores = _scores(problem)
    rejected = [i for i in range(problem.n) if i not in outcome]
    for i in rejected:
        for j in outcome:
            if scores[i] > scores[j]:
                yield (i, j)


def within_type_compatible(problem: Problem, outcome: frozenset[int]) -> CompatibilityVerdict:
    """Every priority violation must favor a protected individual over an
    unprotected one (i rejected, j chosen, i scores higher => i unprotected,
    j protected)."""
    low = set(problem.setting.low_income)
    for i, j in _priority_violations(problem, outcome):
        if not (i not in low and j in low):
            return CompatibilityVerdict(False, (i, j))
    return CompatibilityVerdict(True)


def saturated_compatible(problem: Problem, outcome: frozenset[int]) -> CompatibilityVerdict:
    """Any cross-type priority violation is only allowed when the protected
    seats are exactly saturated (|chosen ∩ protected| = r)."""
    s = problem.setting
    low = set(s.low_income)
    low_chosen = len(low & outcome)
    for i, j in _priority_violations(problem, outcome):
        if i not in low and j in low and low_chosen != s.r:
            return CompatibilityVerdict(False, (i, j))
    return CompatibilityVerdict(True)


# ---------------------------------------------------------------------------
# Adversarial fixtures
# ---------------------------------------------------------------------------

def segregated_problem(setting: Setting) -> Problem:
    """All protected individuals score strictly below all unprotected ones."""
    low = set(setting.low_income)
    order = [i for i in range(setting.n) if i not in low] + sorted(low)
    scores = [0] * setting.n
    for pos, i in enumerate(order):
        scores[i] = setting.n - pos
    return Problem(setting, tuple(scores))


def segregated_deviation(problem: Problem) -> frozenset[int]:
    """The hard-to-detect deviation at :func:`segregated_problem` for RSF:
    fill r+1 seats with the top protected individuals and only q-r-1 seats
    from the unprotected side."""
    s = problem.setting
    scores = _scores(problem)
    low = list(s.low_income)
    high = [i for i in range(s.n) if i not in set(low)]
    chosen = _take_top(low, scores, s.r + 1) + _take_top(high, scores, s.q - s.r - 1)
    return frozenset(chosen)


def top_protected_problem(setting: Setting) -> Problem:
    """min(q-r, |protected|-r) protected individuals at the very top of the
    score order, the remaining protected ones at the very bottom."""
    low = sorted(setting.low_income)
    promoted = low[: max(0, min(setting.q - setting.r, len(low) - setting.r))]
    middle = [i for i in range(setting.n) if i not in set(low)]
    tail = [i for i in low if i not in set(promoted)]
    order = promoted + middle + tail
    scores = [0] * setting.n
    for pos, i in enumerate(order):
        scores[i] = setting.n - pos
    return Problem(setting, tuple(scores))
