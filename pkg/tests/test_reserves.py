import pytest

from auditlab import reserves
from auditlab.core import Problem, Setting, enumerate_outcomes, enumerate_problems


def _setting(**kw):
    base = dict(q=3, r=1, low_income=(0, 1))
    base.update(kw)
    return Setting("reserves", 4, **base)


def test_rsf_reserved_seat_first():
    # protected individuals score lowest; one still gets the reserved seat
    problem = Problem(_setting(), (1, 2, 3, 4))
    chosen = reserves.rsf(problem)
    assert chosen == frozenset({1, 2, 3})


def test_osf_admits_weakly_more_protected():
    setting = _setting()
    for problem in enumerate_problems(setting):
        low = set(setting.low_income)
        rsf_low = len(reserves.rsf(problem) & low)
        osf_low = len(reserves.osf(problem) & low)
        assert osf_low >= rsf_low


def test_rsf_osf_agree_when_reserve_is_slack():
    setting = Setting("reserves", 4, q=3, r=0, low_income=(0, 1))
    for problem in enumerate_problems(setting):
        top_q = frozenset(
            sorted(range(4), key=lambda i: -problem.reports[i])[:3]
        )
        assert reserves.rsf(problem) == top_q
        assert reserves.osf(problem) == top_q


def test_compatibility_predicates_on_rsf_output():
    setting = _setting()
    for problem in enumerate_problems(setting):
        chosen = reserves.rsf(problem)
        assert bool(reserves.within_type_compatible(problem, chosen))
        assert bool(reserves.saturated_compatible(problem, chosen))


def test_rsf_unique_doubly_compatible():
    setting = _setting()
    outcomes = enumerate_outcomes(setting)
    for problem in enumerate_problems(setting):
        compatible = [
            o
            for o in outcomes
            if reserves.within_type_compatible(problem, o)
            and reserves.saturated_compatible(problem, o)
        ]
        assert compatible == [reserves.rsf(problem)]


def test_osf_output_can_break_saturation():
    setting = _setting()
    problem = reserves.top_protected_problem(setting)
    chosen = reserves.osf(problem)
    both = bool(reserves.within_type_compatible(problem, chosen)) and bool(
        reserves.saturated_compatible(problem, chosen)
    )
    # when the outputs differ, the mechanisms cannot both be doubly compatible
    assert both == (chosen == reserves.rsf(problem))


def test_fixture_problems_are_feasible():
    setting = _setting()
    for problem in (
        reserves.segregated_problem(setting),
        reserves.top_protected_problem(setting),
    ):
        assert problem.setting == setting
        assert len(set(problem.reports)) == 4
