"""Immediate acceptance is easier to audit than deferred acceptance.

Sweeping every three-student priority problem shows a sharp contrast:
immediate acceptance ("Boston") has auditability index exactly 2 on every
single problem, while deferred acceptance climbs to 3 in the worst case —
and in general to the number of participants. Whatever its strategic
virtues, DA asks more of the people verifying it.
"""

from collections import Counter

from auditlab import AuditSession, ProblemScope, parse_mechanism
from auditlab.core import Setting, enumerate_problems

setting = Setting("priority", 3)

for descriptor in ("ia", "da"):
    session = AuditSession(parse_mechanism(descriptor, setting))
    counts = Counter(
        session.audit_index(problem).index for problem in enumerate_problems(setting)
    )
    total = sum(counts.values())
    print(f"{descriptor}: index distribution over all {total} problems")
    for index in sorted(counts):
        print(f"  index {index}: {counts[index]} problems")
    print(f"  worst case: {max(counts)}\n")
