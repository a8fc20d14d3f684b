"""Single-object auctions on a discrete bid grid, plus structural predicates.

Outcomes are ``(winner, payments)`` pairs. Bids are distinct integers on
``{1..k}``; deviation payments live on ``{0} ∪ {1..k}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    BudgetError,
    Problem,
    Setting,
    UsageError,
    enumerate_problems,
)

AuctionOutcome = tuple[int, tuple[int, ...]]


def _bids(problem: Problem) -> tuple[int, ...]:
    if problem.setting.kind != "auction":
        raise UsageError("expected an auction problem")
    return problem.reports


def fpa(problem: Problem) -> AuctionOutcome:
    """First-price: top bidder wins and pays her own bid; losers pay 0."""
    bids = _bids(problem)
    winner = max(range(len(bids)), key=bids.__getitem__)
    payments = tuple(bids[i] if i == winner else 0 for i in range(len(bids)))
    return (winner, payments)


def apa(problem: Problem) -> AuctionOutcome:
    """All-pay: top bidder wins; everyone pays her own bid."""
    bids = _bids(problem)
    winner = max(range(len(bids)), key=bids.__getitem__)
    return (winner, tuple(bids))


def spa(problem: Problem) -> AuctionOutcome:
    """Second-price: top bidder wins and pays the second-highest bid."""
    bids = _bids(problem)
    winner = max(range(len(bids)), key=bids.__getitem__)
    second = max(b for i, b in enumerate(bids) if i != winner)
    payments = tuple(second if i == winner else 0 for i in range(len(bids)))
    return (winner, payments)


@dataclass(frozen=True)
class FixedPayVerdict:
    value: bool
    witness: tuple | None = None  # (individual, bid, win-bit, two problems, payments)

    def __bool__(self) -> bool:
        return self.value


def _sweep_guard(setting: Setting) -> None:
    if setting.n > 4 or setting.k > 8:
        raise BudgetError(
            f"auction grid sweep refused at n={setting.n}, k={setting.k}",
            estimate=setting.k ** setting.n,
        )


def is_fixed_pay(mechanism, setting: Setting) -> FixedPayVerdict:
    """True iff each individual's payment depends only on her own bid and her
    win/lose status. ``mechanism`` is any callable Problem -> AuctionOutcome."""
    _sweep_guard(setting)
    seen: dict[tuple[int, int, int], tuple[int, Problem]] = {}
    for problem in enumerate_problems(setting):
        winner, payments = mechanism(problem)
        for i in range(setting.n):
            key = (i, problem.reports[i], 1 if i == winner else 0)
            if key in seen and seen[key][0] != payments[i]:
                return FixedPayVerdict(
                    False, (key, seen[key][1], problem, seen[key][0], payments[i])
                )
            seen.setdefault(key, (payments[i], problem))
    return FixedPayVerdict(True)


@dataclass(frozen=True)
class DualDictatorship:
    first: int
    second: int
    winning_bids: frozenset[int]  # first wins exactly when her bid is in here


def is_dual_dictatorship(mechanism, setting: Setting) -> DualDictatorship | None:
    """Recognize the two-dictator structure: a fixed-pay auction where some
    individual i1 wins exactly when her own bid lies in a fixed set, and a
    fixed i2 wins otherwise. Degenerate single-winner tables qualify with the
    full grid and the lowest-index other individual as i2."""
    _sweep_guard(setting)
    if not is_fixed_pay(mechanism, setting):
        return None
    problems = list(enumerate_problems(setting))
    winners = sorted({mechanism(p)[0] for p in problems})
    if len(winners) > 2:
        return None
    if len(winners) == 1:
        i1 = winners[0]
        i2 = min(i for i in range(setting.n) if i != i1)
        return DualDictatorship(i1, i2, frozenset(range(1, setting.k + 1)))
    for i1, i2 in (winners, winners[::-1]):
        win_bids: dict[int, set[int]] = {}
        ok = True
        for problem in problems:
            winner = mechanism(problem)[0]
            if winner not in (i1, i2):
                ok = False
                break
            win_bids.setdefault(problem.reports[i1], set()).add(
                1 if winner == i1 else 0
            )
        if ok and all(len(v) == 1 for v in win_bids.values()):
            chosen = frozenset(b for b, v in win_bids.items() if 1 in v)
            return DualDictatorship(i1, i2, chosen)
    return None


# ---------------------------------------------------------------------------
# Table mechanisms and battery fixtures
# ---------------------------------------------------------------------------

class AuctionTable:
    """A materialized auction mechanism: bids tuple -> (winner, payments)."""

    def __init__(self, setting: Setting, table: dict, name: str = "table"):
        self.setting = setting
        self.table = dict(table)
        self.name = name
        for problem in enumerate_problems(setting):
            if problem.reports not in self.table:
                raise UsageError(f"auction table missing row for {problem.reports}")

    def __call__(self, problem: Problem) -> AuctionOutcome:
        return self.table[problem.reports]


def build_table(setting: Setting, rule) -> AuctionTable:
    return AuctionTable(
        setting,
        {p.reports: rule(p) for p in enumerate_problems(setting)},
    )


def battery(setting: Setting) -> dict[str, tuple]:
    """Hand-built recognizer battery: three two-dictator tables and the three
    classic auctions. Values are ``(mechanism callable, expected_dual)``."""
    n, k = setting.n, setting.k

    def constant_winner(problem: Problem) -> AuctionOutcome:
        return (0, (0,) * n)

    def even_bid_switch(problem: Problem) -> AuctionOutcome:
        winner = 0 if problem.reports[0] % 2 == 0 else 1
        return (winner, tuple(0 for _ in range(n)))

    def threshold_pay_own(problem: Problem) -> AuctionOutcome:
        winner = 0 if problem.reports[0] >= 3 else 1
        payments = tuple(
            problem.reports[i] if i == winner else 0 for i in range(n)
        )
        return (winner, payments)

    return {
        "const-winner": (build_table(setting, constant_winner), True),
        "even-bid-switch": (build_table(setting, even_bid_switch), True),
        "threshold-pay-own": (build_table(setting, threshold_pay_own), True),
        "fpa": (fpa, False),
        "apa": (apa, False),
        "spa": (spa, False),
    }


def gap_problem(setting: Setting) -> Problem:
    """A bid profile whose top two bids differ by at least 2, so the grid
    contains a payment strictly between them (the adversarial deviation)."""
    if setting.k < 5 or setting.n < 3:
        raise UsageError("need k >= 5 and n >= 3")
    bids = [5, 2, 3] + list(range(6, 6 + setting.n - 3))
    if any(b > setting.k for b in bids):
        raise UsageError("grid too small for the gap fixture")
    return Problem(setting, tuple(bids))


def grid_has_in_between_payment(bids: tuple[int, ...]) -> bool:
    """Whether some integer lies strictly between the second-highest and the
    highest bid (the coarse-grid warning condition)."""
    top, second = sorted(bids)[-1], sorted(bids)[-2]
    return top - second >= 2
