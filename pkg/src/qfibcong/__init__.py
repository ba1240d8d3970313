"""q-Fibonacci congruence toolkit.

Evaluates the q-Fibonacci sequence along several independent routes,
verifies the index-shift congruence F_p(alpha) = F_{I_p(alpha) +- 1} mod p
over prime ranges, certifies positivity of the associated index densities
with exact rational arithmetic, and tabulates occurrence statistics.
"""

__version__ = "0.1.0"

from .congruence import (
    CongruenceRecord,
    Inapplicable,
    Reason,
    ResidualData,
    predicted_index,
    qfib_mod_proposition,
    residual_data,
    s_sets,
    scan_range,
    verify_theorem,
)
from .density import (
    DeltaEstimate,
    VCount,
    c_g,
    degree_ratio_bounds,
    delta_truncated,
    epsilon_g,
    field_degree,
    v_count,
)
from .errors import (
    BadValuation,
    DomainError,
    InternalInvariantViolation,
    NotInvertible,
    QFibError,
    TheoremViolation,
)
from .modarith import (
    Rational,
    Residue,
    euler_phi,
    factorize,
    is_prime,
    kronecker,
    legendre,
    lsym5,
    moebius,
    multiplicative_order,
    prime_sieve,
    reduce_rational,
    residual_index,
)
from .qanalogue import IntPoly, q_binomial_mod, q_binomial_poly, q_ratio
from .qfib import (
    fib,
    fib_mod,
    g_value,
    qfib_mod_andrews,
    qfib_mod_recurrence,
    qfib_poly,
)
from .report import ScanReport, check_report, write_csv, write_json
from .stats import OccurrenceReport, occurrence_histogram, target_index_census

__all__ = [
    "BadValuation",
    "CongruenceRecord",
    "DeltaEstimate",
    "DomainError",
    "Inapplicable",
    "IntPoly",
    "InternalInvariantViolation",
    "NotInvertible",
    "OccurrenceReport",
    "QFibError",
    "Rational",
    "Reason",
    "Residue",
    "ResidualData",
    "ScanReport",
    "TheoremViolation",
    "VCount",
    "c_g",
    "check_report",
    "degree_ratio_bounds",
    "delta_truncated",
    "epsilon_g",
    "euler_phi",
    "factorize",
    "fib",
    "fib_mod",
    "field_degree",
    "g_value",
    "is_prime",
    "kronecker",
    "legendre",
    "lsym5",
    "moebius",
    "multiplicative_order",
    "occurrence_histogram",
    "predicted_index",
    "prime_sieve",
    "q_binomial_mod",
    "q_binomial_poly",
    "q_ratio",
    "qfib_mod_andrews",
    "qfib_mod_proposition",
    "qfib_mod_recurrence",
    "qfib_poly",
    "reduce_rational",
    "residual_data",
    "residual_index",
    "s_sets",
    "scan_range",
    "target_index_census",
    "v_count",
    "verify_theorem",
    "write_csv",
    "write_json",
]
