"""Priority-based allocation: deferred acceptance (both proposing sides),
immediate acceptance, the application-rejection family, score-modification
representations, and stability tooling.

All functions take a ``priority`` :class:`~auditlab.core.Problem` (reports are
``(pref, scores)`` pairs) unless stated otherwise. "Modified" inputs are
``(prefs, scores)`` pairs where ``scores[i][o]`` is an integer priority score,
distinct per object.
"""

from __future__ import annotations

from typing import Sequence

from .core import (
    BudgetError,
    Problem,
    Setting,
    UsageError,
    all_perms,
    factorial,
)

TAU_KINDS = ("identity", "ia-rank", "ar-tier")


def _split(problem: Problem):
    if problem.setting.kind != "priority":
        raise UsageError("expected a priority problem")
    prefs = tuple(pref for pref, _ in problem.reports)
    scores = tuple(scores for _, scores in problem.reports)
    return prefs, scores


def da_on(prefs: Sequence[Sequence[int]], scores) -> tuple[int, ...]:
    """Individual-proposing deferred acceptance on explicit preference/score data."""
    n = len(prefs)
    ptr = [0] * n  # next rank each individual will claim
    holder = [-1] * n  # tentative holder per object
    free = list(range(n))
    while free:
        i = free.pop()
        o = prefs[i][ptr[i]]
        j = holder[o]
        if j < 0:
            holder[o] = i
        elif scores[i][o] > scores[j][o]:
            holder[o] = i
            ptr[j] += 1
            free.append(j)
        else:
            ptr[i] += 1
            free.append(i)
    assignment = [-1] * n
    for o, i in enumerate(holder):
        assignment[i] = o
    return tuple(assignment)


def da(problem: Problem) -> tuple[int, ...]:
    """Individual-proposing deferred acceptance outcome."""
    prefs, scores = _split(problem)
    return da_on(prefs, scores)


def da_object_proposing_on(prefs, scores) -> tuple[int, ...]:
    """Object-proposing deferred acceptance: the individual-pessimal stable outcome."""
    n = len(prefs)
    rank = [{o: r for r, o in enumerate(p)} for p in prefs]
    # Each object proposes down its priority order (individuals by score desc).
    order = [sorted(range(n), key=lambda i, o=o: -scores[i][o]) for o in range(n)]
    ptr = [0] * n  # next position object o will propose to
    held = [-1] * n  # object tentatively held per individual
    free = list(range(n))  # objects without a holder
    while free:
        o = free.pop()
        i = order[o][ptr[o]]
        cur = held[i]
        if cur < 0:
            held[i] = o
        elif rank[i][o] < rank[i][cur]:
            held[i] = o
            ptr[cur] += 1
            free.append(cur)
        else:
            ptr[o] += 1
            free.append(o)
    return tuple(held)


def da_object_proposing(problem: Problem) -> tuple[int, ...]:
    prefs, scores = _split(problem)
    return da_object_proposing_on(prefs, scores)


def ia(problem: Problem) -> tuple[int, ...]:
    """Immediate acceptance: each round, available individuals claim their most
    preferred still-available object; per object the highest-score claimant is
    assigned permanently."""
    prefs, scores = _split(problem)
    n = len(prefs)
    assignment = [-1] * n
    available = [True] * n
    unassigned = set(range(n))
    while unassigned:
        claims: dict[int, list[int]] = {}
        for i in unassigned:
            o = next(o for o in prefs[i] if available[o])
            claims.setdefault(o, []).append(i)
        for o, claimants in claims.items():
            winner = max(claimants, key=lambda i: scores[i][o])
            assignment[winner] = o
            available[o] = False
            unassigned.remove(winner)
    return tuple(assignment)


def ar(problem: Problem, e: int) -> tuple[int, ...]:
    """Application-rejection outcome with permanency-execution period ``e``.

    Round ``t`` (t = 0, 1, ...): still-unassigned individuals claim, in order,
    their choices at positions ``te .. te+e-1`` of their original ranking.
    Claims on already-removed objects are immediate rejections and consume the
    round budget. Within the round objects tentatively hold their best-score
    claimant; at the end of the round tentative holdings become permanent.
    """
    if e < 1:
        raise UsageError("period e must be >= 1")
    prefs, scores = _split(problem)
    n = len(prefs)
    assignment = [-1] * n
    removed = [False] * n
    unassigned = set(range(n))
    for t in range(n):
        if not unassigned:
            break
        lo, hi = t * e, min(t * e + e, n)
        ptr = {i: lo for i in unassigned}
        holder: dict[int, int] = {}  # object -> tentative claimant
        active = sorted(unassigned)
        while active:
            i = active.pop()
            if ptr[i] >= hi:
                continue  # budget exhausted; passive until next round
            o = prefs[i][ptr[i]]
            if removed[o]:
                ptr[i] += 1
                active.append(i)
                continue
            j = holder.get(o)
            if j is None:
                holder[o] = i
            elif scores[i][o] > scores[j][o]:
                holder[o] = i
                ptr[j] += 1
                active.append(j)
            else:
                ptr[i] += 1
                active.append(i)
        for o, i in holder.items():
            assignment[i] = o
            removed[o] = True
            unassigned.remove(i)
    if unassigned:
        raise AssertionError("rounds algorithm failed to assign everyone")
    return tuple(assignment)


# ---------------------------------------------------------------------------
# Score-modification representations
# ---------------------------------------------------------------------------

def parse_tau_kind(kind) -> tuple[str, int | None]:
    """Normalize a tau-kind spec to ``(name, e)``.

    Accepts ``"identity"``, ``"ia-rank"`` (alias ``"ia"``), ``("ar-tier", e)``
    or the string forms ``"ar-2"`` / ``"ar-tier:2"``.
    """
    if isinstance(kind, tuple):
        name, e = kind
    else:
        name, e = str(kind), None
        if name.startswith("ar-tier:"):
            name, e = "ar-tier", int(name.split(":", 1)[1])
        elif name.startswith("ar-") and name[3:].isdigit():
            name, e = "ar-tier", int(name[3:])
        elif name == "ia":
            name = "ia-rank"
    if name not in TAU_KINDS:
        raise UsageError(f"unknown tau kind {kind!r}")
    if name == "ar-tier":
        if e is None or e < 1:
            raise UsageError("ar-tier kind needs a period e >= 1")
    else:
        e = None
    return name, e


def apply_tau(kind, problem: Problem) -> tuple[tuple[int, ...], ...]:
    """Modified priority scores ``scores[i][o]`` for the given kind.

    * identity — scores unchanged;
    * ia-rank  — better preference position for ``o`` wins; ties by score;
    * ar-tier(e) — better tier ``rank(o) // e`` wins; ties by score.

    Encoded as ``n * primary + secondary`` so per-object distinctness is exact.
    """
    name, e = parse_tau_kind(kind)
    prefs, scores = _split(problem)
    n = len(prefs)
    if name == "identity":
        return scores
    rank = [{o: r for r, o in enumerate(p)} for p in prefs]
    # secondary key: the individual's rank-from-below in the object's score column
    secondary = [[sum(scores[j][o] < scores[i][o] for j in range(n)) for o in range(n)]
                 for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for o in range(n):
            position = rank[i][o]
            primary = position if name == "ia-rank" else position // e
            # smaller primary = better; flip so larger modified score wins
            row.append((n - primary) * n + secondary[i][o])
        out.append(tuple(row))
    return tuple(out)


def da_represent(problem: Problem, kind) -> tuple[int, ...]:
    """Deferred acceptance run on tau-modified scores."""
    prefs, _ = _split(problem)
    return da_on(prefs, apply_tau(kind, problem))


# ---------------------------------------------------------------------------
# Stability
# ---------------------------------------------------------------------------

def _coerce_prefs_scores(problem_or_modified):
    if isinstance(problem_or_modified, Problem):
        return _split(problem_or_modified)
    prefs, scores = problem_or_modified
    return tuple(tuple(p) for p in prefs), tuple(tuple(s) for s in scores)


def blocking_triple(problem_or_modified, outcome):
    """A witness ``(i, j, o)`` with ``o`` preferred by ``i`` to her assignment,
    held by ``j``, and ``i`` above ``j`` at ``o`` — or ``None`` if stable."""
    prefs, scores = _coerce_prefs_scores(problem_or_modified)
    n = len(prefs)
    holder = {outcome[j]: j for j in range(n)}
    for i in range(n):
        own_rank = prefs[i].index(outcome[i])
        for o in prefs[i][:own_rank]:
            j = holder[o]
            if scores[i][o] > scores[j][o]:
                return (i, j, o)
    return None


def is_stable(problem_or_modified, outcome) -> bool:
    return blocking_triple(problem_or_modified, outcome) is None


def enumerate_stable(problem_or_modified, cap: int = 6) -> list[tuple[int, ...]]:
    """All stable allocations, by filtering the full outcome universe."""
    prefs, _ = _coerce_prefs_scores(problem_or_modified)
    n = len(prefs)
    if n > cap:
        raise BudgetError(
            f"stable enumeration refused: n={n} exceeds cap {cap}",
            estimate=factorial(n),
        )
    return [
        outcome
        for outcome in all_perms(n)
        if is_stable(problem_or_modified, outcome)
    ]


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def cycle_problem(n: int) -> Problem:
    """The adversarial cyclic problem: individual ``i`` ranks object ``i+1``
    (mod n) first and object ``i`` second, and has the highest priority at
    object ``i``; remaining choices/priorities filled in index order."""
    if n < 3:
        raise UsageError("cycle fixture needs n >= 3")
    setting = Setting("priority", n)
    # At object o, individual o has the top score; the others follow in index order.
    columns = []
    for o in range(n):
        order = [o] + [i for i in range(n) if i != o]
        columns.append({i: n - 1 - pos for pos, i in enumerate(order)})
    reports = []
    for i in range(n):
        first, second = (i + 1) % n, i
        rest = [o for o in range(n) if o not in (first, second)]
        pref = tuple([first, second] + rest)
        scores = tuple(columns[o][i] for o in range(n))
        reports.append((pref, scores))
    return Problem(setting, tuple(reports))


def cycle_deviation(n: int) -> tuple[int, ...]:
    """The undetectable-by-proper-subsets deviation at :func:`cycle_problem`:
    everyone receives the object of her own index (her second choice)."""
    return tuple(range(n))
