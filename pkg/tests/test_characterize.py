from fractions import Fraction

import pytest

from auditlab import characterize as ch
from auditlab import house, priority, voting
from auditlab.audit import AuditSession, ProblemScope
from auditlab.core import Problem, Setting, UsageError
from auditlab.mechanisms import parse_mechanism


def test_index_two_full_path_on_fixture():
    problem = priority.cycle_problem(3)
    verdict = ch.check_index_two_da_representable(problem, "identity", path="full")
    # the cycle fixture has index 3, so the predicate must be false
    assert not verdict.value
    assert "failing_stable_outcome" in verdict.witnesses


def test_index_two_oracle_agreement_on_fixture():
    problem = priority.cycle_problem(3)
    verdict = ch.check_index_two_da_representable(
        problem, "identity", path="full", oracle=True
    )
    assert verdict.oracle_checked
    assert verdict.oracle_agrees
    assert verdict.witnesses["oracle_index"] == 3


def test_index_two_fast_path_disagreement_is_recorded():
    reports = (((0, 1, 2), (1, 1, 2)), ((0, 2, 1), (0, 2, 1)), ((1, 0, 2), (2, 0, 0)))
    problem = Problem(Setting("priority", 3), reports)
    verdict = ch.check_index_two_da_representable(problem, "identity", path="both")
    assert not verdict.value  # exhaustive path is authoritative
    assert verdict.witnesses["fast_agrees"] is False
    assert verdict.witnesses["fast_value"] is True


def test_vice_equals_index_two_serial():
    structure = house.SerialStructure((0, 1, 2, 3))
    verdict = ch.check_vice_equals_index_two(
        structure, ProblemScope.sample(100, seed=1), cap=2
    )
    assert verdict.value
    assert verdict.witnesses["is_vice"]


def test_vice_equals_index_two_tail_pair():
    structure = house.TailPairStructure(4)
    verdict = ch.check_vice_equals_index_two(
        structure, ProblemScope.sample(200, seed=2), cap=2
    )
    assert verdict.value  # not vice, and the worst observed index exceeds 2
    assert not verdict.witnesses["is_vice"]
    assert verdict.witnesses["worst_index"] > 2


def test_dictatorial_iff_index_one_all_n2_tables():
    for table in voting.all_tables(2):
        assert ch.check_dictatorial_iff_index_one(table).value


def test_majority_minimal_n3():
    verdict = ch.check_majority_minimal(voting.anonymous_tables(3), 3)
    assert verdict.value
    rows = verdict.witnesses["rows"]
    assert any(r.get("skipped") for r in rows)  # non-onto tables are skipped


def test_majority_minimal_requires_odd_n():
    with pytest.raises(UsageError):
        ch.check_majority_minimal(voting.anonymous_tables(2), 2)


@pytest.mark.parametrize("kind", ["identity", "ia", ("ar-tier", 2)])
def test_tau_axioms_hold(kind):
    verdict = ch.check_tau_axioms(kind, 3, samples=2000, seed=3)
    assert verdict.value


def test_tau_axioms_reject_unknown_kind():
    with pytest.raises(Exception):
        ch.check_tau_axioms("reverse", 3, samples=10, seed=0)


def test_sample_audit_exact_zero_on_worst_fixture():
    setting = Setting("priority", 3)
    session = AuditSession(parse_mechanism("da", setting))
    problem = priority.cycle_problem(3)
    result = ch.sample_audit_probability(
        session, problem, tuple(range(3)), 2, 2000, seed=5
    )
    assert result.exact == 0
    assert result.empirical == 0.0
    assert result.asymptotic == pytest.approx((2 / 3) ** 2)


def test_sample_audit_full_size_always_detects():
    setting = Setting("priority", 3)
    session = AuditSession(parse_mechanism("da", setting))
    problem = priority.cycle_problem(3)
    result = ch.sample_audit_probability(
        session, problem, tuple(range(3)), 3, 500, seed=6
    )
    assert result.exact == 1
    assert result.empirical == 1.0


def test_reserves_compatibility_check():
    setting = Setting("reserves", 4, q=3, r=1, low_income=(0, 1))
    assert ch.check_reserves_compatibility(setting).value
