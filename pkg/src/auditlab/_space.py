"""Counterpart search spaces.

A space describes one setting's report universe as a product of integer axes
so the audit engine can slice out, for a problem and a group, exactly the
joint reports of the form (group keeps its reports, everyone else varies).

Axis layouts:

- house: one preference-permutation axis per individual (size n!).
- priority: n preference axes followed by one priority-order axis per object
  (size n! each). An order axis fixes the ranking of *all* individuals at
  that object; a group slice therefore keeps every order that extends the
  group's internal ranking there, which realizes exactly the joint score
  profiles the non-members can produce.
- auction: one bid axis per individual (values 1..K); a feasibility mask
  drops cells with repeated bids.
- vote: one binary axis per individual.
- reserves: a single axis ranging over the n! global score orders; group
  slices keep the orders extending the group's internal ranking.

``axis_options`` always lists the problem's own coordinate first on each
axis so scans meet the original problem early.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod

import numpy as np

from . import _batch
from .core import ConfigurationError, Problem, Setting, all_perms, perm_index_map


@lru_cache(maxsize=None)
def _orders_extending(n: int, chain: tuple[int, ...]) -> tuple[int, ...]:
    """Indices of the permutations of range(n) in which the members of
    ``chain`` appear in the given relative order."""
    out = []
    for q, order in enumerate(all_perms(n)):
        pos = {v: p for p, v in enumerate(order)}
        if all(pos[chain[t]] < pos[chain[t + 1]] for t in range(len(chain) - 1)):
            out.append(q)
    return tuple(out)


def _front(options: list[int], first: int) -> list[int]:
    out = [first]
    out.extend(v for v in options if v != first)
    return out


class Space:
    def __init__(self, setting: Setting):
        self.setting = setting
        self.axes: list[int] = []

    @property
    def total_cells(self) -> int:
        return prod(self.axes)

    def indices_of(self, problem: Problem) -> tuple[int, ...]:
        raise NotImplementedError

    def problem_of(self, indices: tuple[int, ...]) -> Problem:
        raise NotImplementedError

    def axis_options(self, problem: Problem, group: tuple[int, ...]) -> list[list[int]]:
        raise NotImplementedError

    def feasible_mask(self, cols: list[np.ndarray]) -> np.ndarray | None:
        """Boolean mask over a decoded batch, or None if every cell is feasible."""
        return None

    def slice_size(self, problem: Problem, group: tuple[int, ...]) -> int:
        return prod(len(o) for o in self.axis_options(problem, group))


class HouseSpace(Space):
    def __init__(self, setting: Setting):
        super().__init__(setting)
        n = setting.n
        self._perms = all_perms(n)
        self._pidx = perm_index_map(n)
        self.axes = [len(self._perms)] * n

    def indices_of(self, problem):
        return tuple(self._pidx[r] for r in problem.reports)

    def problem_of(self, indices):
        return Problem(self.setting, tuple(self._perms[q] for q in indices))

    def axis_options(self, problem, group):
        own = self.indices_of(problem)
        full = list(range(len(self._perms)))
        return [
            [own[i]] if i in group else _front(full, own[i])
            for i in range(self.setting.n)
        ]


class PrioritySpace(Space):
    def __init__(self, setting: Setting):
        super().__init__(setting)
        n = setting.n
        self._perms = all_perms(n)
        self._pidx = perm_index_map(n)
        self.axes = [len(self._perms)] * (2 * n)

    def _order_at(self, problem, o: int) -> tuple[int, ...]:
        scores = [r[1][o] for r in problem.reports]
        return tuple(sorted(range(self.setting.n), key=lambda i: -scores[i]))

    def indices_of(self, problem):
        prefs = tuple(self._pidx[r[0]] for r in problem.reports)
        orders = tuple(
            self._pidx[self._order_at(problem, o)] for o in range(self.setting.n)
        )
        return prefs + orders

    def problem_of(self, indices):
        n = self.setting.n
        prefs = [self._perms[q] for q in indices[:n]]
        orders = [self._perms[q] for q in indices[n:]]
        reports = []
        for i in range(n):
            scores = tuple(n - 1 - orders[o].index(i) for o in range(n))
            reports.append((prefs[i], scores))
        return Problem(self.setting, tuple(reports))

    def axis_options(self, problem, group):
        n = self.setting.n
        own = self.indices_of(problem)
        full = list(range(len(self._perms)))
        opts = [
            [own[i]] if i in group else _front(full, own[i]) for i in range(n)
        ]
        for o in range(n):
            order = self._order_at(problem, o)
            chain = tuple(i for i in order if i in group)
            allowed = list(_orders_extending(n, chain))
            opts.append(_front(allowed, own[n + o]))
        return opts

    def decode_batch(self, cols: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        """Decode axis-index columns into (pref, score) batch arrays."""
        n = self.setting.n
        pt = _batch.pref_table(n)
        st = _batch.score_from_order_table(n)
        pref = np.stack([pt[c] for c in cols[:n]], axis=1)
        score = np.stack([st[c] for c in cols[n:]], axis=2)
        return pref, score


class AuctionSpace(Space):
    def __init__(self, setting: Setting):
        super().__init__(setting)
        self.axes = [setting.k] * setting.n  # axis value v means bid v + 1

    def indices_of(self, problem):
        return tuple(b - 1 for b in problem.reports)

    def problem_of(self, indices):
        return Problem(self.setting, tuple(v + 1 for v in indices))

    def axis_options(self, problem, group):
        own = self.indices_of(problem)
        member_vals = {own[i] for i in group}
        free = [v for v in range(self.setting.k) if v not in member_vals]
        return [
            [own[i]] if i in group else _front(free, own[i])
            for i in range(self.setting.n)
        ]

    def feasible_mask(self, cols):
        mask = np.ones(len(cols[0]), dtype=bool)
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                mask &= cols[a] != cols[b]
        return mask


class VoteSpace(Space):
    def __init__(self, setting: Setting):
        super().__init__(setting)
        self.axes = [2] * setting.n

    def indices_of(self, problem):
        return tuple(problem.reports)

    def problem_of(self, indices):
        return Problem(self.setting, tuple(int(v) for v in indices))

    def axis_options(self, problem, group):
        own = self.indices_of(problem)
        return [
            [own[i]] if i in group else _front([0, 1], own[i])
            for i in range(self.setting.n)
        ]


class ReservesSpace(Space):
    def __init__(self, setting: Setting):
        super().__init__(setting)
        n = setting.n
        self._perms = all_perms(n)
        self._pidx = perm_index_map(n)
        self.axes = [len(self._perms)]

    def _order_of(self, problem) -> tuple[int, ...]:
        return tuple(sorted(range(self.setting.n), key=lambda i: -problem.reports[i]))

    def indices_of(self, problem):
        return (self._pidx[self._order_of(problem)],)

    def problem_of(self, indices):
        n = self.setting.n
        order = self._perms[indices[0]]
        scores = [0] * n
        for pos, i in enumerate(order):
            scores[i] = n - pos
        return Problem(self.setting, tuple(scores))

    def axis_options(self, problem, group):
        order = self._order_of(problem)
        chain = tuple(i for i in order if i in group)
        allowed = list(_orders_extending(self.setting.n, chain))
        return [_front(allowed, self.indices_of(problem)[0])]


class GridPrioritySpace(Space):
    """Slow cross-validation space for the priority setting: counterpart score
    reports range over the raw integer grid {0..n-1}^n instead of rank
    profiles realized from per-object orders. Infeasible cells (ties at an
    object) are skipped during scans. Exponentially larger than
    :class:`PrioritySpace`; use only to cross-check small instances."""

    def __init__(self, setting: Setting):
        super().__init__(setting)
        n = setting.n
        self._perms = all_perms(n)
        self._pidx = perm_index_map(n)
        self.axes = [len(self._perms)] * n + [n ** n] * n

    def _score_index(self, scores: tuple[int, ...]) -> int:
        n = self.setting.n
        idx = 0
        for s in scores:
            if not 0 <= s < n:
                raise ConfigurationError(
                    "grid space requires scores in range(n); use the default space"
                )
            idx = idx * n + s
        return idx

    def _score_vector(self, idx: int) -> tuple[int, ...]:
        n = self.setting.n
        out = []
        for _ in range(n):
            idx, s = divmod(idx, n)
            out.append(s)
        return tuple(reversed(out))

    def indices_of(self, problem):
        prefs = tuple(self._pidx[r[0]] for r in problem.reports)
        scores = tuple(self._score_index(r[1]) for r in problem.reports)
        return prefs + scores

    def problem_of(self, indices):
        n = self.setting.n
        reports = tuple(
            (self._perms[indices[i]], self._score_vector(indices[n + i]))
            for i in range(n)
        )
        return Problem(self.setting, reports)

    def axis_options(self, problem, group):
        n = self.setting.n
        own = self.indices_of(problem)
        full_pref = list(range(len(self._perms)))
        full_score = list(range(n ** n))
        opts = [
            [own[i]] if i in group else _front(full_pref, own[i]) for i in range(n)
        ]
        opts.extend(
            [own[n + i]] if i in group else _front(full_score, own[n + i])
            for i in range(n)
        )
        return opts


def space_for(setting: Setting) -> Space:
    return {
        "house": HouseSpace,
        "priority": PrioritySpace,
        "auction": AuctionSpace,
        "vote": VoteSpace,
        "reserves": ReservesSpace,
    }[setting.kind](setting)
