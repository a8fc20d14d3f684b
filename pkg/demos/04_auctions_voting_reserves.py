"""Auditability across auctions, voting and affirmative-action choice.

Three quick sweeps:

- Auctions (3 bidders, bids on a 1..5 grid): first-price and all-pay stop
  at index 2, but the second-price auction reaches 3 — a loser's bid sets
  the winner's price, so price lies need everyone to refute.
- Voting: the majority rule is the most auditable anonymous rule, needing
  a bare majority to expose a flipped result; a veto rule is trivial to
  audit on any profile with a veto but needs everyone when all vote yes.
- Reserves: the protected-seats-first rule is easier to audit than the
  open-seats-first rule on the same instances.
"""

from auditlab import AuditSession, ProblemScope, parse_mechanism
from auditlab.core import Problem, Setting, enumerate_problems

auction = Setting("auction", 3, k=5)
print("auctions (n=3, bid grid 1..5):")
for descriptor in ("fpa", "apa", "spa"):
    session = AuditSession(parse_mechanism(descriptor, auction))
    worst = session.max_index_over(ProblemScope.exhaustive())
    print(f"  {descriptor}: worst-case index {worst.index}")

vote = Setting("vote", 5)
print("\nvoting (n=5):")
session = AuditSession(parse_mechanism("majority:x=1", vote))
print(f"  majority: worst-case index {session.max_index_over(ProblemScope.exhaustive()).index}")
veto3 = AuditSession(parse_mechanism("veto", Setting("vote", 3)))
for votes in ((1, 0, 1), (1, 1, 1)):
    problem = Problem(Setting("vote", 3), votes)
    print(f"  veto on {votes}: index {veto3.audit_index(problem).index}")

reserves = Setting("reserves", 5, q=3, r=1, low_income=(0, 1))
print("\nreserves (n=5, 3 seats, 1 reserved for {0,1}):")
for descriptor in ("rsf", "osf"):
    session = AuditSession(parse_mechanism(descriptor, reserves))
    worst = session.max_index_over(ProblemScope.exhaustive())
    print(f"  {descriptor}: worst-case index {worst.index}")
