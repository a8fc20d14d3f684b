"""How many participants does it take to catch a rigged assignment?

We run deferred acceptance on a three-student, three-school problem whose
preferences and priorities form a cycle. The operator announces a different
(but individually plausible) assignment. No single student can prove the
announcement wrong, and neither can any pair: for every pair there is some
report the third student *could* have made that produces exactly what the
pair observed. Only all three reports together expose the lie.
"""

from auditlab import AuditSession, parse_mechanism
from auditlab.core import Setting
from auditlab.priority import cycle_deviation, cycle_problem

setting = Setting("priority", 3)
session = AuditSession(parse_mechanism("da", setting))

problem = cycle_problem(3)
truth = session.outcome(problem)
announced = cycle_deviation(3)

print("true assignment:     ", truth)
print("announced assignment:", announced)

for group in [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]:
    caught = session.detects(problem, announced, group)
    print(f"  group {group}: {'catches the lie' if caught else 'cannot tell'}")

report = session.audit_index(problem)
print(f"\nper-problem auditability index: {report.index}")
print("every deviation from the truth, with the smallest group that catches it:")
for audit in report.deviations:
    print(f"  {audit.deviation} -> group {audit.witness_group} (size {audit.min_group_size})")
