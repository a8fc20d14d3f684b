from fractions import Fraction
from itertools import permutations

import pytest

from auditlab import house
from auditlab.core import Problem, Setting, UsageError, enumerate_problems


def test_serial_dictatorship_picks_in_order():
    setting = Setting("house", 3)
    problem = Problem(setting, ((1, 0, 2), (1, 2, 0), (0, 1, 2)))
    structure = house.SerialStructure((0, 1, 2))
    outcome = house.sequential_dictatorship(structure, problem)
    assert outcome == (1, 2, 0)


def test_sequential_dictatorship_is_onto_and_injective():
    setting = Setting("house", 3)
    structure = house.SerialStructure((2, 0, 1))
    seen = set()
    for problem in enumerate_problems(setting):
        outcome = house.sequential_dictatorship(structure, problem)
        assert sorted(outcome) == [0, 1, 2]
        seen.add(outcome)
    assert seen == set(permutations(range(3)))  # serial dictatorships are onto


def test_tail_pair_structure_dictators_depend_on_history():
    structure = house.TailPairStructure(4)
    # the late dictator depends on what was assigned earlier
    problem, deviation = house.tail_pair_scenario(4)
    outcome = house.sequential_dictatorship(structure, problem)
    assert sorted(outcome) == [0, 1, 2, 3]
    assert deviation != outcome
    assert sorted(deviation) == [0, 1, 2, 3]


def test_is_vice_serial_true():
    verdict = house.is_vice(house.SerialStructure((0, 1, 2, 3, 4)), 5)
    assert bool(verdict)


def test_is_vice_tail_pair_false_condition_three():
    verdict = house.is_vice(house.TailPairStructure(4), 4)
    assert not verdict
    assert verdict.violated_condition == 3
    assert verdict.witness is not None


def test_branching_vice_structure_is_vice():
    assert bool(house.is_vice(house.BranchingViceStructure(5), 5))


def test_chain_condition_unanimous():
    setting = Setting("house", 3)
    assert house.chain_condition(Problem(setting, ((0, 1, 2),) * 3), (0, 1, 2))
    # individual 1 ranks object 1 second but dictator 0 takes object 0 first,
    # leaving a broken chain
    assert not house.chain_condition(
        Problem(setting, ((0, 1, 2), (1, 2, 0), (0, 1, 2))), (0, 1, 2)
    )


def test_clinch_fraction_exact_values():
    assert house.clinch_fraction(2) == 1
    assert house.clinch_fraction(3) == Fraction(2, 3)
    assert house.clinch_fraction(4) == Fraction(1, 4)
    assert house.clinch_fraction(5) == Fraction(6, 125)


def test_clinch_fraction_matches_bruteforce():
    for n in (2, 3, 4):
        assert house.clinch_fraction(n) == house.clinch_fraction_bruteforce(n)


def test_clinch_fraction_strictly_decreasing():
    values = [house.clinch_fraction(n) for n in range(2, 7)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_reachable_analysis_counts():
    structure = house.SerialStructure((0, 1, 2))
    analysis = house.reachable_analysis(structure, 3)
    # every partial history is reachable for a serial dictatorship
    assert analysis  # non-empty


def test_table_structure_rejects_undefined_suboutcomes():
    structure = house.TableStructure(size=3)
    with pytest.raises(Exception):
        structure.checked_dictator(())
