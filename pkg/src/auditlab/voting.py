"""Binary social choice: majority, dictatorial, veto, and table recognizers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    BudgetError,
    ConfigurationError,
    Problem,
    Setting,
    UsageError,
)


def _votes(problem: Problem) -> tuple[int, ...]:
    if problem.setting.kind != "vote":
        raise UsageError("expected a vote problem")
    return problem.reports


def majority(votes: tuple[int, ...], x: int) -> int:
    """Outcome ``x`` iff at least (n+1)/2 reports are 1, else the other bit."""
    n = len(votes)
    if n % 2 == 0:
        raise ConfigurationError("majority voting needs an odd number of voters")
    if x not in (0, 1):
        raise UsageError("x must be a bit")
    return x if sum(votes) >= (n + 1) // 2 else 1 - x


def dictatorial(votes: tuple[int, ...], i: int) -> int:
    if not 0 <= i < len(votes):
        raise UsageError("dictator index out of range")
    return votes[i]


def veto(votes: tuple[int, ...]) -> int:
    """1 unless some individual reports 0."""
    return min(votes)


class VoteTable:
    """A materialized voting mechanism: profile tuple -> bit."""

    def __init__(self, n: int, table: dict, name: str = "table"):
        self.n = n
        self.name = name
        self.table = {}
        for votes in itertools.product((0, 1), repeat=n):
            if votes not in table:
                raise UsageError(f"vote table missing row for {votes}")
            bit = table[votes]
            if bit not in (0, 1):
                raise UsageError("vote table values must be bits")
            self.table[votes] = bit

    @classmethod
    def from_rule(cls, n: int, rule, name: str = "table") -> "VoteTable":
        return cls(
            n,
            {v: rule(v) for v in itertools.product((0, 1), repeat=n)},
            name=name,
        )

    def __call__(self, problem: Problem) -> int:
        return self.table[_votes(problem)]

    def _guard(self) -> None:
        if self.n > 20:
            raise BudgetError(f"vote table too large: n={self.n}")


def is_anonymous(table: VoteTable):
    """True iff the outcome is invariant to permuting the profile; returns a
    witness pair of profiles on failure."""
    table._guard()
    by_count: dict[int, int] = {}
    rep: dict[int, tuple[int, ...]] = {}
    for votes, bit in table.table.items():
        c = sum(votes)
        if c in by_count and by_count[c] != bit:
            return (False, (rep[c], votes))
        by_count.setdefault(c, bit)
        rep.setdefault(c, votes)
    return (True, None)


def is_dictatorial(table: VoteTable) -> int | None:
    """The lowest individual whose report alone determines the outcome, if any
    (constant tables qualify for every individual)."""
    table._guard()
    for i in range(table.n):
        values: dict[int, set[int]] = {0: set(), 1: set()}
        for votes, bit in table.table.items():
            values[votes[i]].add(bit)
        if all(len(v) == 1 for v in values.values()):
            return i
    return None


def is_majority(table: VoteTable) -> int | None:
    """The bit x such that the table is the majority rule for x, if any."""
    table._guard()
    if table.n % 2 == 0:
        return None
    for x in (0, 1):
        if all(
            bit == majority(votes, x) for votes, bit in table.table.items()
        ):
            return x
    return None


def all_tables(n: int) -> list[VoteTable]:
    """Every voting mechanism on n voters (2^(2^n) tables) — desk scale only."""
    if n > 3:
        raise BudgetError(f"exhaustive table sweep refused at n={n}")
    profiles = list(itertools.product((0, 1), repeat=n))
    out = []
    for bits in itertools.product((0, 1), repeat=len(profiles)):
        out.append(
            VoteTable(n, dict(zip(profiles, bits)), name=f"table:{''.join(map(str, bits))}")
        )
    return out


def anonymous_tables(n: int) -> list[VoteTable]:
    """Every anonymous voting mechanism on n voters (one bit per ones-count)."""
    out = []
    for bits in itertools.product((0, 1), repeat=n + 1):
        out.append(
            VoteTable.from_rule(
                n, lambda v, b=bits: b[sum(v)],
                name="anon:" + "".join(map(str, bits)),
            )
        )
    return out


def majority_table(n: int, x: int) -> VoteTable:
    return VoteTable.from_rule(n, lambda v: majority(v, x), name=f"majority:x={x}")


def dictator_table(n: int, i: int) -> VoteTable:
    return VoteTable.from_rule(n, lambda v: dictatorial(v, i), name=f"dictator:i={i}")


def veto_table(n: int) -> VoteTable:
    return VoteTable.from_rule(n, veto, name="veto")
