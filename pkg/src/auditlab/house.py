"""House allocation by sequential dictatorship.

A *suboutcome* is a partial one-to-one assignment, represented canonically as
a sorted tuple of ``(individual, object)`` pairs. A *dictatorial structure* is
a function from suboutcomes to the next dictator, who then takes her favorite
still-unassigned object. Serial structures use a fixed order; table structures
may branch on the suboutcome reached so far.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (
    BudgetError,
    ConfigurationError,
    Problem,
    Setting,
    UsageError,
    all_perms,
    factorial,
)

Suboutcome = tuple[tuple[int, int], ...]  # sorted ((individual, object), ...)


def canon(suboutcome: Iterable[tuple[int, int]]) -> Suboutcome:
    return tuple(sorted(suboutcome))


def assigned_individuals(suboutcome: Suboutcome) -> frozenset[int]:
    return frozenset(i for i, _ in suboutcome)


def assigned_objects(suboutcome: Suboutcome) -> frozenset[int]:
    return frozenset(o for _, o in suboutcome)


class DictatorialStructure:
    """Base class: a total function from reachable suboutcomes to individuals."""

    n: int

    def dictator(self, suboutcome: Suboutcome) -> int:
        raise NotImplementedError

    def checked_dictator(self, suboutcome: Suboutcome) -> int:
        d = self.dictator(suboutcome)
        if d in assigned_individuals(suboutcome):
            raise ConfigurationError(
                f"structure names an already-assigned dictator {d} at {suboutcome}"
            )
        return d

    @property
    def descriptor(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class SerialStructure(DictatorialStructure):
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.order))):
            raise ConfigurationError("serial order must be a permutation")

    @property
    def n(self) -> int:  # type: ignore[override]
        return len(self.order)

    def dictator(self, suboutcome: Suboutcome) -> int:
        return self.order[len(suboutcome)]

    @property
    def descriptor(self) -> str:
        return "serial:order=" + ",".join(map(str, self.order))


@dataclass(frozen=True)
class TableStructure(DictatorialStructure):
    """Explicit decision table keyed by full suboutcome, and/or by the pair of
    unassigned-individual and unassigned-object sets."""

    size: int
    by_suboutcome: tuple = ()
    by_unassigned: tuple = ()
    name: str = "table"

    def __post_init__(self) -> None:
        object.__setattr__(self, "_sub_map", dict(self.by_suboutcome))
        object.__setattr__(self, "_set_map", dict(self.by_unassigned))

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.size

    def dictator(self, suboutcome: Suboutcome) -> int:
        sub = canon(suboutcome)
        if sub in self._sub_map:
            return self._sub_map[sub]
        unassigned_i = frozenset(range(self.size)) - assigned_individuals(sub)
        unassigned_o = frozenset(range(self.size)) - assigned_objects(sub)
        key = (unassigned_i, unassigned_o)
        if key in self._set_map:
            return self._set_map[key]
        raise ConfigurationError(f"structure undefined at suboutcome {sub}")

    @property
    def descriptor(self) -> str:
        return self.name


class TailPairStructure(DictatorialStructure):
    """Serial through step n-2, then the identity of the second-to-last
    dictator depends on the *exact* suboutcome reached: individuals
    ``0..n-3`` choose in index order; if each individual ``t`` took object
    ``t``, individual ``n-2`` moves next, otherwise individual ``n-1`` does.

    This breaks the requirement that the dictator depend only on the
    unassigned sets, which is what drives its poor auditability.
    """

    def __init__(self, n: int):
        if n < 4:
            raise ConfigurationError("tail-pair structure needs n >= 4")
        self.n = n

    def dictator(self, suboutcome: Suboutcome) -> int:
        sub = canon(suboutcome)
        step = len(sub)
        if step < self.n - 2:
            return step  # serial: individual `step` moves at step+1
        if step == self.n - 2:
            special = canon((t, t) for t in range(self.n - 2))
            return self.n - 2 if sub == special else self.n - 1
        (last,) = frozenset(range(self.n)) - assigned_individuals(sub)
        return last

    @property
    def descriptor(self) -> str:
        return f"fixture:tail-pair:n={self.n}"


class BranchingViceStructure(DictatorialStructure):
    """A non-serial structure whose dictator depends only on unassigned sets:
    individual 0 first; then individual 1 if object 0 was taken else 2; then
    the other of {1,2}; then 3, 4, ... in order."""

    def __init__(self, n: int):
        if n < 3:
            raise ConfigurationError("branching structure needs n >= 3")
        self.n = n

    def dictator(self, suboutcome: Suboutcome) -> int:
        sub = canon(suboutcome)
        step = len(sub)
        if step == 0:
            return 0
        if step == 1:
            return 1 if 0 in assigned_objects(sub) else 2
        if step == 2:
            taken = assigned_individuals(sub)
            return 1 if 1 not in taken else 2
        return step  # individuals 3, 4, ... in index order

    @property
    def descriptor(self) -> str:
        return f"fixture:branch-vice:n={self.n}"


# ---------------------------------------------------------------------------
# Evaluation and reachability
# ---------------------------------------------------------------------------

def sequential_dictatorship(
    structure: DictatorialStructure, problem: Problem
) -> tuple[int, ...]:
    """Run the dictatorial algorithm: at each step the structure names a
    dictator, who takes her most preferred unassigned object."""
    if problem.setting.kind != "house":
        raise UsageError("expected a house problem")
    n = problem.n
    if structure.n != n:
        raise ConfigurationError("structure size does not match problem size")
    sub: list[tuple[int, int]] = []
    available = [True] * n
    assignment = [-1] * n
    for _ in range(n):
        d = structure.checked_dictator(canon(sub))
        if assignment[d] >= 0:
            raise ConfigurationError("structure re-selected an assigned dictator")
        o = next(o for o in problem.reports[d] if available[o])
        assignment[d] = o
        available[o] = False
        sub.append((d, o))
    return tuple(assignment)


def reachable_analysis(
    structure: DictatorialStructure, n: int | None = None, cap: int = 7
) -> tuple[set[Suboutcome], list[set[int]]]:
    """Breadth-first closure of reachable suboutcomes.

    From each reachable suboutcome the dictator may take any unassigned object
    (preferences range over all rankings). Returns the reachable set and, per
    step ``t`` (1-based), the set of individuals who can be the ``t``-th
    dictator.
    """
    n = structure.n if n is None else n
    if n > cap:
        raise BudgetError(f"reachability refused: n={n} exceeds cap {cap}")
    reachable: set[Suboutcome] = {()}
    dictators_per_step: list[set[int]] = [set() for _ in range(n)]
    frontier: list[Suboutcome] = [()]
    while frontier:
        new_frontier: list[Suboutcome] = []
        for sub in frontier:
            step = len(sub)
            if step == n:
                continue
            d = structure.checked_dictator(sub)
            dictators_per_step[step].add(d)
            taken = assigned_objects(sub)
            for o in range(n):
                if o in taken:
                    continue
                child = canon(sub + ((d, o),))
                if child not in reachable:
                    reachable.add(child)
                    new_frontier.append(child)
        frontier = new_frontier
    return reachable, dictators_per_step


@dataclass(frozen=True)
class ViceVerdict:
    is_vice: bool
    violated_condition: int | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.is_vice


def is_vice(structure: DictatorialStructure, n: int | None = None) -> ViceVerdict:
    """Check the three near-serial conditions over the reachable suboutcomes:

    1. a single possible dictator at each step ``t`` in ``{4, .., n-2}``;
    2. at most two individuals across steps 2 and 3;
    3. the dictator depends only on the unassigned-individual and
       unassigned-object sets.

    Empty step ranges are vacuously satisfied; for n < 5 the verdict is
    advisory (the index-two characterization is stated for n >= 5).
    """
    n = structure.n if n is None else n
    reachable, per_step = reachable_analysis(structure, n)
    for t in range(4, n - 1):  # steps 4 .. n-2 (1-based)
        if len(per_step[t - 1]) > 1:
            return ViceVerdict(False, 1, (t, tuple(sorted(per_step[t - 1]))))
    # Condition 3 is evaluated before condition 2: when both fail, the
    # history-dependence witness (two suboutcomes with identical unassigned
    # sets but different dictators) is the more informative diagnosis.
    seen: dict[tuple[frozenset[int], frozenset[int]], tuple[int, Suboutcome]] = {}
    for sub in sorted(reachable, key=lambda s: (len(s), s)):
        if len(sub) == n:
            continue
        key = (assigned_individuals(sub), assigned_objects(sub))
        d = structure.checked_dictator(sub)
        if key in seen and seen[key][0] != d:
            return ViceVerdict(False, 3, (seen[key][1], sub))
        seen.setdefault(key, (d, sub))
    if n >= 3 and len(per_step[1] | per_step[2]) > 2:
        return ViceVerdict(False, 2, (tuple(sorted(per_step[1] | per_step[2])),))
    return ViceVerdict(True)


# ---------------------------------------------------------------------------
# Chain condition and its density
# ---------------------------------------------------------------------------

def chain_condition(problem: Problem, ordering: Sequence[int] | None = None) -> bool:
    """True iff each dictator's top-t set is strictly inside the next
    dictator's top-(t+1) set."""
    if problem.setting.kind != "house":
        raise UsageError("expected a house problem")
    n = problem.n
    order = tuple(ordering) if ordering is not None else tuple(range(n))
    for t in range(1, n):
        top_t = set(problem.reports[order[t - 1]][:t])
        top_next = set(problem.reports[order[t]][: t + 1])
        if not top_t < top_next:
            return False
    return True


def clinch_fraction(n: int) -> Fraction:
    """Exact fraction of preference profiles satisfying the chain condition
    under a fixed serial order.

    Step ``t``'s event is that dictator ``t+1``'s top-(t+1) positions contain
    dictator ``t``'s (arbitrary) top-t set; by exchangeability the conditional
    probability of each event is the unconditional one, so the total is the
    product of per-step counts over n!.
    """
    if n < 2:
        raise UsageError("need n >= 2")
    total = Fraction(1)
    for t in range(1, n):
        favorable = (n - t) * factorial(t + 1) * factorial(n - t - 1)
        total *= Fraction(favorable, factorial(n))
    return total


def clinch_fraction_bruteforce(n: int) -> Fraction:
    """Oracle: exhaustive count of chain-satisfying profiles over (n!)^n."""
    setting = Setting("house", n)
    perms = all_perms(n)
    hits = 0
    for prefs in itertools.product(perms, repeat=n):
        if chain_condition(Problem(setting, prefs)):
            hits += 1
    return Fraction(hits, factorial(n) ** n)


# ---------------------------------------------------------------------------
# Adversarial scenario for the tail-pair structure
# ---------------------------------------------------------------------------

def tail_pair_scenario(n: int) -> tuple[Problem, tuple[int, ...]]:
    """A problem and a deviation at :class:`TailPairStructure` that no small
    group can detect.

    Individuals ``0..n-3`` rank their own-index object first (so the branch
    suboutcome is reached) and rank objects ``n-2``/``n-1`` in the last two
    positions. The final pair rank ``n-2`` next-to-last and ``n-1`` last as
    well. The deviation swaps the final pair's assignments.
    """
    setting = Setting("house", n)
    o_first, o_second = n - 2, n - 1
    prefs = []
    for i in range(n - 2):
        rest = [o for o in range(n - 2) if o != i]
        prefs.append(tuple([i] + rest + [o_first, o_second]))
    for _ in (n - 2, n - 1):
        middle = list(range(n - 2))
        prefs.append(tuple(middle + [o_first, o_second]))
    problem = Problem(setting, tuple(prefs))
    structure = TailPairStructure(n)
    actual = sequential_dictatorship(structure, problem)
    deviation = list(actual)
    deviation[n - 2], deviation[n - 1] = actual[n - 1], actual[n - 2]
    return problem, tuple(deviation)
