"""What if the auditor can only sample a few participants?

Suppose the auditor draws a uniformly random subset of m participants and
checks the announcement against their reports. For a deviation caught only
by one specific pair, the detection probability is the chance of drawing
both members — hypergeometric, m(m-1)/(n(n-1)), about (m/n)^2 in a large
market. For the worst deferred-acceptance fixture, any sample short of
everyone detects nothing at all.
"""

from auditlab import AuditSession, parse_mechanism
from auditlab.characterize import sample_audit_probability
from auditlab.core import Setting
from auditlab.priority import cycle_problem

# worst fixture: nothing short of the full population works
da = AuditSession(parse_mechanism("da", Setting("priority", 3)))
fixture = cycle_problem(3)
result = sample_audit_probability(da, fixture, tuple(range(3)), m=2, trials=10_000, seed=7)
print("deferred acceptance, worst fixture, m=2 of n=3:")
print(f"  exact: {result.exact}  empirical: {result.empirical}")

# a deviation with a single witness pair: hypergeometric success probability
ia = AuditSession(parse_mechanism("ia", Setting("priority", 4)))
problem = cycle_problem(4)
truth = ia.outcome(problem)
deviation = (truth[1], truth[0]) + truth[2:]
result = sample_audit_probability(ia, problem, deviation, m=2, trials=10_000, seed=11)
print("\nimmediate acceptance, pair-witness deviation, m=2 of n=4:")
print(f"  exact: {result.exact} (= 2*1/(4*3))")
print(f"  empirical over 10^4 draws: {result.empirical}")
print(f"  large-market approximation (m/n)^2: {result.asymptotic}")
