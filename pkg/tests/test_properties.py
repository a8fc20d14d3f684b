from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from auditlab import house, priority, voting
from auditlab.audit import AuditSession, random_problem
from auditlab.core import Problem, Setting, enumerate_outcomes, restrict_outcome
from auditlab.mechanisms import parse_mechanism

perm3 = st.permutations(range(3)).map(tuple)


@st.composite
def house_problems(draw):
    prefs = tuple(draw(perm3) for _ in range(3))
    return Problem(Setting("house", 3), prefs)


@st.composite
def priority_problems(draw):
    prefs = [draw(perm3) for _ in range(3)]
    orders = [draw(perm3) for _ in range(3)]  # per-object priority orders
    scores = [
        tuple(2 - orders[o].index(i) for o in range(3)) for i in range(3)
    ]
    return Problem(
        Setting("priority", 3), tuple(zip(prefs, map(tuple, scores)))
    )


@given(priority_problems())
@settings(max_examples=100, deadline=None)
def test_da_output_is_permutation_and_stable(problem):
    outcome = priority.da(problem)
    assert sorted(outcome) == [0, 1, 2]
    assert priority.is_stable(problem, outcome)


@given(priority_problems())
@settings(max_examples=100, deadline=None)
def test_ia_output_is_permutation(problem):
    assert sorted(priority.ia(problem)) == [0, 1, 2]


@given(priority_problems(), st.integers(min_value=1, max_value=3))
@settings(max_examples=100, deadline=None)
def test_ar_interpolates_between_ia_and_da(problem, e):
    outcome = priority.ar(problem, e)
    assert sorted(outcome) == [0, 1, 2]
    if e == 1:
        assert outcome == priority.ia(problem)
    if e >= 3:
        assert outcome == priority.da(problem)


@given(house_problems())
@settings(max_examples=100, deadline=None)
def test_serial_dictatorship_first_dictator_gets_top(problem):
    structure = house.SerialStructure((1, 2, 0))
    outcome = house.sequential_dictatorship(structure, problem)
    assert outcome[1] == problem.reports[1][0]


@given(st.lists(st.integers(min_value=0, max_value=1), min_size=3, max_size=3))
@settings(max_examples=50, deadline=None)
def test_majority_flips_with_unanimous_vote(bits):
    votes = tuple(bits)
    if all(votes):
        assert voting.majority(votes, 1) == 1
    if not any(votes):
        assert voting.majority(votes, 1) == 0


_SESSION = AuditSession(parse_mechanism("ia", Setting("priority", 3)))


@given(priority_problems(), st.data())
@settings(max_examples=60, deadline=None)
def test_detection_monotone_under_group_growth(problem, data):
    truth = _SESSION.outcome(problem)
    outcomes = enumerate_outcomes(problem.setting)
    deviation = data.draw(st.sampled_from(outcomes))
    if deviation == truth:
        return
    sub = tuple(sorted(data.draw(st.sets(st.integers(0, 2), min_size=1, max_size=2))))
    extra = data.draw(st.sampled_from([i for i in range(3) if i not in sub]))
    sup = tuple(sorted(sub + (extra,)))
    cache = {}
    if _SESSION.detects(problem, deviation, sub, cache):
        assert _SESSION.detects(problem, deviation, sup, cache)


@given(priority_problems())
@settings(max_examples=40, deadline=None)
def test_index_within_range(problem):
    index = _SESSION.audit_index(problem).index
    assert 1 <= index <= 3


@given(priority_problems())
@settings(max_examples=40, deadline=None)
def test_witness_group_actually_detects(problem):
    report = _SESSION.audit_index(problem)
    for audit in report.deviations:
        assert _SESSION.detects(problem, audit.deviation, audit.witness_group)
        assert len(audit.witness_group) == audit.min_group_size


def test_restrict_outcome_consistency_random():
    rng = np.random.default_rng(12)
    for setting in (
        Setting("house", 3),
        Setting("auction", 3, k=5),
        Setting("vote", 3),
        Setting("reserves", 4, q=3, r=1, low_income=(0, 1)),
    ):
        outcomes = enumerate_outcomes(setting)
        for _ in range(50):
            outcome = outcomes[int(rng.integers(0, len(outcomes)))]
            group = tuple(
                sorted(rng.choice(setting.n, size=int(rng.integers(1, setting.n)), replace=False))
            )
            restricted = restrict_outcome(setting, outcome, tuple(int(g) for g in group))
            assert len(restricted) == len(group)
