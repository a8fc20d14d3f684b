"""Uniform mechanism handles for the audit engine.

A :class:`Mechanism` pairs a setting with an outcome function and exposes two
optional accelerators the engine can use when a counterpart search space is
too large to sweep cell by cell:

- ``outcome_batch`` — a vectorized evaluator over stacked report batches
  (priority setting only);
- ``achievable_restricted`` — an exact combinatorial shortcut returning every
  group-restricted outcome reachable while the group's reports stay fixed
  (sequential dictatorships only).

``parse_mechanism`` turns a descriptor string like ``"da"``, ``"ar:e=2"``,
``"serial:order=0,1,2"`` or ``"majority:x=1"`` into a handle.
"""

from __future__ import annotations

import json

from . import _batch, auction as auction_mod, house as house_mod
from . import priority as priority_mod, reserves as reserves_mod, voting as voting_mod
from .core import ConfigurationError, Problem, Setting, UsageError


class Mechanism:
    def __init__(self, setting: Setting, descriptor: str, fn):
        self.setting = setting
        self.descriptor = descriptor
        self._fn = fn

    def __call__(self, problem: Problem):
        return self.outcome(problem)

    def outcome(self, problem: Problem):
        if problem.setting != self.setting:
            raise UsageError(
                f"problem setting does not match mechanism setting ({self.descriptor})"
            )
        return self._fn(problem)

    # engine accelerators -------------------------------------------------
    @property
    def supports_batch(self) -> bool:
        return False

    def outcome_batch(self, pref, score):
        raise NotImplementedError

    def achievable_restricted(self, problem: Problem, group: tuple[int, ...]):
        """Exact set of group-restricted outcomes over all counterpart
        reports, or None when the generic engine must search."""
        return None

    def __repr__(self) -> str:
        return f"Mechanism({self.setting.kind!r}, {self.descriptor!r})"


class PriorityMechanism(Mechanism):
    def __init__(self, setting, descriptor, fn, batch_fn=None):
        super().__init__(setting, descriptor, fn)
        self._batch_fn = batch_fn

    @property
    def supports_batch(self) -> bool:
        return self._batch_fn is not None

    def outcome_batch(self, pref, score):
        return self._batch_fn(pref, score)


class SequentialMechanism(Mechanism):
    """A dictatorial-structure allocation mechanism for the house setting.

    ``achievable_restricted`` enumerates reachable suboutcomes directly:
    every non-member moves exactly once, and by ranking an object first she
    can take any object still available at her turn, so branching over all
    available objects at non-member steps (while members follow their fixed
    preferences) visits exactly the outcomes some counterpart profile
    produces. Choices on one path never constrain another individual's
    report, so the union over paths is exact.
    """

    def __init__(self, setting: Setting, structure: house_mod.DictatorialStructure):
        if structure.n != setting.n:
            raise ConfigurationError("structure size does not match setting size")
        super().__init__(
            setting,
            structure.descriptor,
            lambda p: house_mod.sequential_dictatorship(structure, p),
        )
        self.structure = structure
        self._cache: dict = {}

    def achievable_restricted(self, problem, group):
        prefs = tuple(problem.reports[i] for i in group)
        key = (group, prefs)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = self._achievable(group, dict(zip(group, prefs)))
        self._cache[key] = result
        return result

    def _achievable(self, group, prefs):
        n = self.setting.n
        members = set(group)
        memo: dict = {}

        def rec(sub):
            if len(sub) == n:
                a = dict(sub)
                return frozenset({tuple(a[i] for i in group)})
            hit = memo.get(sub)
            if hit is not None:
                return hit
            d = self.structure.checked_dictator(sub)
            taken = {o for _, o in sub}
            if d in members:
                o = next(o for o in prefs[d] if o not in taken)
                result = rec(house_mod.canon(sub + ((d, o),)))
            else:
                acc = set()
                for o in range(n):
                    if o not in taken:
                        acc |= rec(house_mod.canon(sub + ((d, o),)))
                result = frozenset(acc)
            memo[sub] = result
            return result

        return rec(())


# ---------------------------------------------------------------------------
# Descriptor parsing
# ---------------------------------------------------------------------------

def _int_field(text: str, key: str, descriptor: str) -> int:
    prefix = key + "="
    if not text.startswith(prefix):
        raise UsageError(f"bad mechanism descriptor {descriptor!r}")
    try:
        return int(text[len(prefix):])
    except ValueError as exc:
        raise UsageError(f"bad mechanism descriptor {descriptor!r}") from exc


def _parse_priority(descriptor: str, setting: Setting) -> Mechanism:
    if descriptor == "da":
        return PriorityMechanism(setting, "da", priority_mod.da, _batch.da_batch)
    if descriptor == "da-obj":
        return PriorityMechanism(setting, "da-obj", priority_mod.da_object_proposing)
    if descriptor == "ia":
        return PriorityMechanism(setting, "ia", priority_mod.ia, _batch.ia_batch)
    if descriptor.startswith("ar:"):
        e = _int_field(descriptor[3:], "e", descriptor)
        if e < 1:
            raise UsageError("ar batch size must be >= 1")
        return PriorityMechanism(setting, f"ar:e={e}", lambda p: priority_mod.ar(p, e))
    if descriptor.startswith("da-rep:"):
        kind_name, e = priority_mod.parse_tau_kind(descriptor[len("da-rep:"):])
        canonical = {
            "identity": "da-rep:identity",
            "ia-rank": "da-rep:ia",
        }.get(kind_name, f"da-rep:ar-{e}")
        kind = kind_name if e is None else (kind_name, e)

        def batch_fn(pref, score):
            return _batch.da_batch(pref, _batch.tau_batch(kind_name, e, pref, score))

        return PriorityMechanism(
            setting, canonical, lambda p: priority_mod.da_represent(p, kind), batch_fn
        )
    raise UsageError(f"unknown priority mechanism {descriptor!r}")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read table file {path!r}: {exc}") from exc


def _house_structure_from_file(path: str, setting: Setting) -> house_mod.TableStructure:
    data = _load_json(path)
    rows = data["rows"] if isinstance(data, dict) else data
    by_sub, by_sets = [], []
    for row in rows:
        d = int(row["dictator"])
        if "suboutcome" in row:
            sub = house_mod.canon((int(i), int(o)) for i, o in row["suboutcome"])
            by_sub.append((sub, d))
        elif "unassigned_individuals" in row:
            key = (
                frozenset(int(i) for i in row["unassigned_individuals"]),
                frozenset(int(o) for o in row["unassigned_objects"]),
            )
            by_sets.append((key, d))
        else:
            raise ConfigurationError(f"table row missing a key: {row!r}")
    return house_mod.TableStructure(
        size=setting.n,
        by_suboutcome=tuple(by_sub),
        by_unassigned=tuple(by_sets),
        name=f"table:file={path}",
    )


def _parse_house(descriptor: str, setting: Setting) -> Mechanism:
    n = setting.n
    if descriptor.startswith("serial:order="):
        order = tuple(int(v) for v in descriptor[len("serial:order="):].split(","))
        return SequentialMechanism(setting, house_mod.SerialStructure(order))
    for prefix in ("fixture:tail-pair:n=", "fixture:prop5:n="):
        if descriptor.startswith(prefix):
            size = int(descriptor[len(prefix):])
            if size != n:
                raise ConfigurationError("fixture size does not match setting size")
            return SequentialMechanism(setting, house_mod.TailPairStructure(size))
    if descriptor.startswith("fixture:branch-vice:n="):
        size = int(descriptor[len("fixture:branch-vice:n="):])
        if size != n:
            raise ConfigurationError("fixture size does not match setting size")
        return SequentialMechanism(setting, house_mod.BranchingViceStructure(size))
    if descriptor.startswith("const:assignment="):
        assignment = tuple(
            int(v) for v in descriptor[len("const:assignment="):].split(",")
        )
        if sorted(assignment) != list(range(n)):
            raise UsageError("constant assignment must be a permutation")
        return Mechanism(setting, descriptor, lambda p: assignment)
    if descriptor.startswith("table:file="):
        structure = _house_structure_from_file(descriptor[len("table:file="):], setting)
        return SequentialMechanism(setting, structure)
    raise UsageError(f"unknown house mechanism {descriptor!r}")


def _parse_auction(descriptor: str, setting: Setting) -> Mechanism:
    simple = {"fpa": auction_mod.fpa, "apa": auction_mod.apa, "spa": auction_mod.spa}
    if descriptor in simple:
        return Mechanism(setting, descriptor, simple[descriptor])
    if descriptor.startswith("table:file="):
        path = descriptor[len("table:file="):]
        data = _load_json(path)
        table = {}
        for row in data["rows"] if isinstance(data, dict) else data:
            bids = tuple(int(b) for b in row["bids"])
            table[bids] = (int(row["winner"]), tuple(int(p) for p in row["payments"]))
        handle = auction_mod.AuctionTable(setting, table, name=descriptor)
        return Mechanism(setting, descriptor, handle)
    raise UsageError(f"unknown auction mechanism {descriptor!r}")


def _parse_vote(descriptor: str, setting: Setting) -> Mechanism:
    n = setting.n
    if descriptor.startswith("majority:x="):
        x = _int_field(descriptor[len("majority:"):], "x", descriptor)
        if x not in (0, 1):
            raise UsageError("majority default must be 0 or 1")
        return Mechanism(setting, f"majority:x={x}", lambda p: voting_mod.majority(p.reports, x))
    if descriptor.startswith("dictator:i="):
        i = _int_field(descriptor[len("dictator:"):], "i", descriptor)
        if not 0 <= i < n:
            raise UsageError("dictator index out of range")
        return Mechanism(setting, f"dictator:i={i}", lambda p: voting_mod.dictatorial(p.reports, i))
    if descriptor == "veto":
        return Mechanism(setting, "veto", lambda p: voting_mod.veto(p.reports))
    if descriptor.startswith("table:file="):
        path = descriptor[len("table:file="):]
        data = _load_json(path)
        table = {}
        for row in data["rows"] if isinstance(data, dict) else data:
            table[tuple(int(v) for v in row["votes"])] = int(row["outcome"])
        handle = voting_mod.VoteTable(n, table, name=descriptor)
        return Mechanism(setting, descriptor, handle)
    raise UsageError(f"unknown vote mechanism {descriptor!r}")


def _parse_reserves(descriptor: str, setting: Setting) -> Mechanism:
    if descriptor == "rsf":
        return Mechanism(setting, "rsf", reserves_mod.rsf)
    if descriptor == "osf":
        return Mechanism(setting, "osf", reserves_mod.osf)
    raise UsageError(f"unknown reserves mechanism {descriptor!r}")


def parse_mechanism(descriptor: str, setting: Setting) -> Mechanism:
    descriptor = descriptor.strip()
    parser = {
        "priority": _parse_priority,
        "house": _parse_house,
        "auction": _parse_auction,
        "vote": _parse_vote,
        "reserves": _parse_reserves,
    }[setting.kind]
    return parser(descriptor, setting)


def wrap(setting: Setting, fn, descriptor: str = "<callable>") -> Mechanism:
    """Wrap an arbitrary outcome function as a Mechanism handle."""
    if isinstance(fn, Mechanism):
        return fn
    return Mechanism(setting, descriptor, fn)


def from_table_structure(setting: Setting, structure) -> Mechanism:
    return SequentialMechanism(setting, structure)


def from_vote_table(setting: Setting, table: voting_mod.VoteTable) -> Mechanism:
    return Mechanism(setting, table.name, table)
