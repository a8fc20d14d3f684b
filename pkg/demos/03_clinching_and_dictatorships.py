"""When can one person verify their own assignment alone?

A problem has auditability index 1 exactly when there is an order in which
participants can "clinch": each, in turn, can deduce from their own report
alone that only one object is still possible for them. For a fixed-order
dictatorship this happens precisely when the stated preferences form a
chain; the fraction of profiles with that property collapses as the market
grows.
"""

from auditlab import AuditSession, parse_mechanism
from auditlab.core import Problem, Setting
from auditlab.house import clinch_fraction

setting = Setting("house", 3)
session = AuditSession(parse_mechanism("serial:order=0,1,2", setting))

unanimous = Problem(setting, ((0, 1, 2),) * 3)
broken = Problem(setting, ((0, 1, 2), (1, 2, 0), (0, 1, 2)))

for name, problem in (("unanimous preferences", unanimous), ("broken chain", broken)):
    order = session.sequential_clinching(problem)
    index = session.audit_index(problem).index
    print(f"{name}: clinching order = {order}, index = {index}")

print("\nfraction of profiles a fixed-order dictatorship can clinch:")
for n in range(2, 7):
    fraction = clinch_fraction(n)
    print(f"  n={n}: {fraction} ≈ {float(fraction):.4f}")
