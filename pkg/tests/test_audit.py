import json
from itertools import combinations, product

import numpy as np
import pytest

from auditlab import house, priority
from auditlab.audit import AuditSession, ProblemScope, random_problem
from auditlab.core import (
    BudgetError,
    Problem,
    Setting,
    UsageError,
    enumerate_outcomes,
    enumerate_problems,
    restrict_outcome,
)
from auditlab.mechanisms import SequentialMechanism, parse_mechanism


def _session(descriptor, setting, **kw):
    return AuditSession(parse_mechanism(descriptor, setting), **kw)


# ---------------------------------------------------------------------------
# Detection semantics
# ---------------------------------------------------------------------------

def test_full_group_always_detects():
    setting = Setting("vote", 3)
    session = _session("majority:x=1", setting)
    problem = Problem(setting, (1, 0, 1))
    truth = session.outcome(problem)
    for deviation in enumerate_outcomes(setting):
        if deviation != truth:
            assert session.detects(problem, deviation, (0, 1, 2))


def test_detect_rejects_degenerate_queries():
    setting = Setting("vote", 3)
    session = _session("majority:x=1", setting)
    problem = Problem(setting, (1, 0, 1))
    with pytest.raises(UsageError):
        session.detects(problem, session.outcome(problem), (0,))  # not a deviation
    with pytest.raises(UsageError):
        session.detects(problem, 0, ())  # empty group


def test_detection_is_monotone_in_group_size():
    setting = Setting("priority", 3)
    session = _session("ia", setting)
    rng = np.random.default_rng(4)
    outcomes = enumerate_outcomes(setting)
    for _ in range(200):
        problem = random_problem(setting, rng)
        truth = session.outcome(problem)
        deviation = outcomes[int(rng.integers(0, len(outcomes)))]
        if deviation == truth:
            continue
        cache = {}
        for group in combinations(range(3), 2):
            if session.detects(problem, deviation, group, cache):
                assert session.detects(problem, deviation, (0, 1, 2), cache)


def test_detects_brute_force_cross_check_vote():
    """Independent reимplementation of detection for the vote setting."""
    setting = Setting("vote", 3)
    session = _session("veto", setting)
    rule = lambda votes: min(votes)
    for votes in product((0, 1), repeat=3):
        problem = Problem(setting, votes)
        truth = rule(votes)
        deviation = 1 - truth
        for size in (1, 2, 3):
            for group in combinations(range(3), size):
                # brute force: some counterpart profile reproduces the deviation
                reproduced = any(
                    rule(cand) == deviation
                    for cand in product((0, 1), repeat=3)
                    if all(cand[i] == votes[i] for i in group)
                )
                assert session.detects(problem, deviation, group) == (not reproduced)


def test_min_detecting_size_matches_definition():
    setting = Setting("priority", 3)
    session = _session("da", setting)
    problem = priority.cycle_problem(3)
    truth = session.outcome(problem)
    for deviation in enumerate_outcomes(setting):
        if deviation == truth:
            continue
        size, witness = session.min_detecting_size(problem, deviation)
        assert session.detects(problem, deviation, witness)
        assert len(witness) == size
        for smaller in range(1, size):
            assert not any(
                session.detects(problem, deviation, g)
                for g in combinations(range(3), smaller)
            )


# ---------------------------------------------------------------------------
# audit_index and worst case
# ---------------------------------------------------------------------------

def test_audit_index_da_cycle_fixture():
    session = _session("da", Setting("priority", 3))
    report = session.audit_index(priority.cycle_problem(3))
    assert report.index == 3
    worst = max(d.min_group_size for d in report.deviations)
    assert worst == 3
    assert any(d.deviation == report.witness_deviation for d in report.deviations)


def test_audit_index_cap_short_circuits():
    session = _session("da", Setting("priority", 3))
    report = session.audit_index(priority.cycle_problem(3), cap=1)
    assert report.index == 2  # cap+1 signals "above the cap"


def test_max_index_over_exhaustive_vote():
    session = _session("dictator:i=0", Setting("vote", 3))
    worst = session.max_index_over(ProblemScope.exhaustive())
    assert worst.index == 1
    assert worst.examined == 8


def test_report_json_shape():
    session = _session("ia", Setting("priority", 3))
    report = session.audit_index(priority.cycle_problem(3))
    data = report.to_json()
    assert set(data) >= {"problem_hash", "index", "witness_deviation", "deviations"}
    assert "stats" not in data
    assert "stats" in report.to_json(include_stats=True)
    json.dumps(data)  # serializable


# ---------------------------------------------------------------------------
# Sequential mechanisms: DFS shortcut vs generic scan
# ---------------------------------------------------------------------------

def test_sequential_dfs_matches_generic_scan_n4():
    setting = Setting("house", 4)
    structure = house.TailPairStructure(4)
    fast = AuditSession(SequentialMechanism(setting, structure))
    outcome_fn = lambda p: house.sequential_dictatorship(structure, p)
    from auditlab.mechanisms import wrap

    slow = AuditSession(wrap(setting, outcome_fn, "tail-pair-generic"))
    rng = np.random.default_rng(7)
    for _ in range(20):
        problem = random_problem(setting, rng)
        assert fast.audit_index(problem).index == slow.audit_index(problem).index


def test_achievable_restricted_override_agrees_with_table():
    setting = Setting("house", 3)
    structure = house.SerialStructure((0, 1, 2))
    fast = AuditSession(SequentialMechanism(setting, structure))
    from auditlab.mechanisms import wrap

    slow = AuditSession(
        wrap(setting, lambda p: house.sequential_dictatorship(structure, p), "serial-generic")
    )
    rng = np.random.default_rng(8)
    for _ in range(30):
        problem = random_problem(setting, rng)
        for size in (1, 2):
            for group in combinations(range(3), size):
                assert fast.achievable(problem, group) == slow.achievable(problem, group)


# ---------------------------------------------------------------------------
# Clinching analysis
# ---------------------------------------------------------------------------

def test_possible_objects_second_dictator():
    setting = Setting("house", 3)
    session = _session("serial:order=0,1,2", setting)
    # before anything is assigned, the second dictator can end up with
    # anything except... nothing: any object is possible depending on others
    report = (0, 1, 2)
    possible = session.possible_objects(1, report)
    assert possible == frozenset({0, 1})  # top two of their stated ranking


def test_sequential_clinching_serial_unanimous():
    setting = Setting("house", 3)
    session = _session("serial:order=0,1,2", setting)
    problem = Problem(setting, ((0, 1, 2),) * 3)
    assert session.sequential_clinching(problem) == (0, 1, 2)


def test_sequential_clinching_fails_without_chain():
    setting = Setting("house", 3)
    session = _session("serial:order=0,1,2", setting)
    problem = Problem(setting, ((0, 1, 2), (1, 2, 0), (0, 1, 2)))
    assert session.sequential_clinching(problem) is None
    assert session.audit_index(problem).index > 1


def test_clinching_order_uniformity():
    setting = Setting("house", 3)
    assert not _session("serial:order=0,1,2", setting).clinching_order_uniformity()
    assert _session("const:assignment=0,1,2", setting).clinching_order_uniformity()


def test_full_range():
    setting = Setting("house", 3)
    assert _session("serial:order=0,1,2", setting).full_range()
    assert not _session("const:assignment=0,1,2", setting).full_range()


# ---------------------------------------------------------------------------
# Scopes, budget and threading
# ---------------------------------------------------------------------------

def test_sample_scope_requires_seed_determinism():
    setting = Setting("priority", 3)
    session = _session("ia", setting)
    a = session.max_index_over(ProblemScope.sample(20, seed=5))
    b = session.max_index_over(ProblemScope.sample(20, seed=5))
    assert a.index == b.index
    assert a.report.problem_hash == b.report.problem_hash


def test_family_scope_cycle():
    setting = Setting("priority", 3)
    session = _session("da", setting)
    worst = session.max_index_over(ProblemScope.family("cycle"))
    assert worst.index == 3


def test_thread_env_var_validation(monkeypatch):
    monkeypatch.setenv("AUDITLAB_THREADS", "zero")
    from auditlab.audit import _thread_count
    from auditlab.core import ConfigurationError

    with pytest.raises(ConfigurationError):
        _thread_count()


def test_thread_count_does_not_change_results(monkeypatch):
    setting = Setting("priority", 3)

    def run():
        session = _session("ia", setting)
        worst = session.max_index_over(ProblemScope.sample(30, seed=11))
        return json.dumps(worst.report.to_json(), sort_keys=True)

    monkeypatch.setenv("AUDITLAB_THREADS", "1")
    single = run()
    monkeypatch.setenv("AUDITLAB_THREADS", "3")
    assert run() == single


def test_grid_priority_space_never_exceeds_order_space():
    # Grid mode pins members' exact score vectors and confines counterparts
    # to the integer grid, so its counterfactual space is a subset of the
    # ordinal one: detection can only get easier, never harder.
    setting = Setting("priority", 2)
    grid = _session("da", setting, grid_priority=True)
    order = _session("da", setting)
    for problem in enumerate_problems(setting):
        g = grid.audit_index(problem).index
        o = order.audit_index(problem).index
        assert 1 <= g <= o <= 2
