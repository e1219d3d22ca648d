"""Executable predicates, enumerators, and nonexistence certificates for
odd multiperfect numbers, validated against brute-force oracles."""

from .arith import (
    Factorization,
    big_omega,
    factor,
    is_prime,
    nu,
    ord_mod,
    sigma,
    sigma_by_divisors,
    sigma_of,
)
from .euler_part import (
    CandidateFamily,
    Certificate,
    CertificateKind,
    EulerFactorQuery,
    Mod8Class,
    SquarePartSpec,
    build_certificate,
    check_certificate,
    euler_divisibility,
    fermat_criterion,
    half_sigma_mod8,
    mod8_classify,
    mod16_solutions,
    omega_obstruction,
    remark_parity,
    sigma_coprime_to_q,
)
from .search import SearchConfig, SearchReport, abundancy, oracle_suite, search_kperfect
from .structure import (
    CongruenceClass,
    EulerPartSplit,
    ShapeDescriptor,
    compositions,
    enumerate_shapes,
    matches_shape,
    split_euler_part,
    valuation_identity_check,
)
from .valuation import (
    ValuationQuery,
    ValuationReport,
    broughan_zhou_equiv,
    nu2_sigma,
    nu2_sigma_minus_one,
)

__version__ = "0.1.0"
