"""Exponential sums: complete sums modulo q, weighted lattice sums, and checks of their structure."""

from .archimedean import (
    S_alpha,
    S_at,
    S_qz,
    S_qz_direct,
    oscillatory_I,
    oscillatory_I_grid,
    poisson_check,
    vdc_inequality_check,
    vdc_sum,
    vdc_trivial_bound,
)
from .checks import (
    divisor_count_check,
    multiplicativity_suite,
    parseval_check,
    prime_bound_check,
    prime_bound_check_univariate,
    prime_bound_suite,
    weil_cubic_check,
    z_table_check,
)
from .complete import (
    CompleteSumSpec,
    ModulusFactorization,
    M_d,
    P_sum,
    S_complete,
    T_complete,
    T_complete_direct,
    T_star,
    Z_eval,
    crt_split,
    factorize_modulus,
)
from .geometry import sp_prime_bruteforce

__all__ = [
    "CompleteSumSpec",
    "M_d",
    "ModulusFactorization",
    "P_sum",
    "S_alpha",
    "S_at",
    "S_complete",
    "S_qz",
    "S_qz_direct",
    "T_complete",
    "T_complete_direct",
    "T_star",
    "Z_eval",
    "crt_split",
    "divisor_count_check",
    "factorize_modulus",
    "multiplicativity_suite",
    "oscillatory_I",
    "oscillatory_I_grid",
    "parseval_check",
    "poisson_check",
    "prime_bound_check",
    "prime_bound_check_univariate",
    "prime_bound_suite",
    "sp_prime_bruteforce",
    "vdc_inequality_check",
    "vdc_sum",
    "vdc_trivial_bound",
    "weil_cubic_check",
    "z_table_check",
]
