"""Envy-free perfect matching with budget x quality valuations."""
from .instance_gen import GenSpec, generate, spec_suite
from .market_core import (
    Assignment,
    AuditReport,
    Instance,
    Outcome,
    SortedView,
    audit_envy_free,
    default_tol,
    is_inverse_monge,
    materialize_matrix,
    social_welfare,
    sorted_view,
    validate_instance,
    valuation,
)
from .monge_solver import (
    SortedPrices,
    assortative_allocate,
    compute_prices_adjacent,
    compute_prices_paper,
    solve_monge,
)
from .reference_oracles import (
    Infeasible,
    InstanceTooLarge,
    brute_force_solve,
    max_weight_perfect_matching,
    price_by_difference_constraints,
    solve_hungarian,
)

__version__ = "0.1.0"
