import pytest

from auditlab import voting
from auditlab.core import Problem, Setting, UsageError


def test_majority_semantics():
    # outcome x iff the 1-votes form a majority, otherwise the other bit
    assert voting.majority((1, 1, 0), x=1) == 1
    assert voting.majority((1, 0, 0), x=1) == 0
    assert voting.majority((1, 1, 0), x=0) == 0
    with pytest.raises(Exception):
        voting.majority((1, 0), x=0)  # needs an odd electorate


def test_dictatorial_rule():
    assert voting.dictatorial((0, 1, 1), i=0) == 0
    assert voting.dictatorial((0, 1, 1), i=2) == 1


def test_veto_rule():
    assert voting.veto((1, 1, 1)) == 1
    assert voting.veto((1, 0, 1)) == 0


def test_vote_table_round_trip():
    table = voting.VoteTable.from_rule(3, lambda v: voting.majority(v, 1), "maj")
    setting = Setting("vote", 3)
    for votes in ((0, 0, 0), (1, 1, 0), (1, 0, 0)):
        assert table(Problem(setting, votes)) == voting.majority(votes, 1)


def test_all_tables_count():
    assert len(voting.all_tables(2)) == 16  # 2^(2^2)


def test_anonymous_tables_and_predicates():
    tables = voting.anonymous_tables(3)
    assert len(tables) == 16  # 2^(n+1) vote-count profiles
    for table in tables:
        anonymous, _ = voting.is_anonymous(table)
        assert anonymous


def test_is_dictatorial():
    assert voting.is_dictatorial(voting.dictator_table(3, 1)) == 1
    assert voting.is_dictatorial(voting.majority_table(3, 1)) is None


def test_is_majority():
    assert voting.is_majority(voting.majority_table(3, 0)) == 0
    assert voting.is_majority(voting.majority_table(3, 1)) == 1
    assert voting.is_majority(voting.dictator_table(3, 0)) is None
    assert voting.is_majority(voting.veto_table(3)) is None
