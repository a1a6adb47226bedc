"""Solver and oracle for the totient equation phi(n) = (2/3)(n+1)."""

from .arith import (
    FactoringError,
    Factorization,
    PrimeTable,
    build_prime_table,
    factorize,
    gcd,
    integer_root,
    is_prime,
)
from .equation import (
    EquationState,
    FactorPair,
    Pruned,
    absorb_prime,
    finiteness_bound,
    limit_bound,
    one_prime_solve,
    root_state,
    two_prime_solve,
)
from .oracle import CheckResult, TotientTable, check_single, scan_solutions, totient_sieve
from .search import (
    SearchConfig,
    SearchCounters,
    Solution,
    corollary_filter,
    max_k_for_limit,
    search_exact_k,
    search_up_to_limit,
    steinerberger_relevance,
)

__version__ = "0.1.0"

__all__ = [
    "FactoringError",
    "Factorization",
    "PrimeTable",
    "build_prime_table",
    "factorize",
    "gcd",
    "integer_root",
    "is_prime",
    "EquationState",
    "FactorPair",
    "Pruned",
    "absorb_prime",
    "finiteness_bound",
    "limit_bound",
    "one_prime_solve",
    "root_state",
    "two_prime_solve",
    "CheckResult",
    "TotientTable",
    "check_single",
    "scan_solutions",
    "totient_sieve",
    "SearchConfig",
    "SearchCounters",
    "Solution",
    "corollary_filter",
    "max_k_for_limit",
    "search_exact_k",
    "search_up_to_limit",
    "steinerberger_relevance",
    "__version__",
]
