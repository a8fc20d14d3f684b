"""Auditability analysis for allocation and social-choice mechanisms.

Given a mechanism on a finite type space, the library answers: if the
operator announced a wrong outcome, how many participants would need to pool
their private reports to prove it? `audit_index` computes that number for
one problem, `max_index_over` takes the worst case over a scope, and the
`characterize` module cross-checks the structural characterizations of
low-index mechanisms against brute force.
"""

from .audit import (
    AuditReport,
    AuditSession,
    DeviationAudit,
    ProblemScope,
    WorstCase,
    audit_index,
    clinches,
    clinching_order_uniformity,
    detects,
    full_range,
    max_index_over,
    min_detecting_size,
    possible_objects,
    random_problem,
    sequential_clinching,
)
from .core import (
    BudgetError,
    ConfigurationError,
    Problem,
    Setting,
    UsageError,
    enumerate_outcomes,
    enumerate_problems,
    load_problem,
    problem_from_json,
    problem_hash,
    problem_to_json,
)
from .mechanisms import Mechanism, SequentialMechanism, parse_mechanism, wrap

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "AuditSession",
    "BudgetError",
    "ConfigurationError",
    "DeviationAudit",
    "Mechanism",
    "Problem",
    "ProblemScope",
    "SequentialMechanism",
    "Setting",
    "UsageError",
    "WorstCase",
    "audit_index",
    "clinches",
    "clinching_order_uniformity",
    "detects",
    "enumerate_outcomes",
    "enumerate_problems",
    "full_range",
    "load_problem",
    "max_index_over",
    "min_detecting_size",
    "parse_mechanism",
    "possible_objects",
    "problem_from_json",
    "problem_hash",
    "problem_to_json",
    "random_problem",
    "sequential_clinching",
    "wrap",
]
