"""Closed-form 2-adic valuations of sigma(p^e) and sigma(p^e)-1, plus the
Broughan-Zhou equivalence 2^j || sigma(p^e) <=> 2^(j+1) || (p+1)(e+1).

Each closed form is cross-checked against the direct valuation of the
explicitly computed quantity; reports always carry the oracle value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arith import is_prime, nu, sigma_of


class Branch(Enum):
    ODD_P_ODD_E = "odd_p_odd_e"
    OTHERWISE_ZERO = "otherwise_zero"
    EVEN_E_CASE = "even_e_case"
    P_EQUALS_2 = "p_equals_2"


@dataclass(frozen=True)
class ValuationQuery:
    p: int
    e: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise ValueError("exponent must be positive")


@dataclass(frozen=True)
class ValuationReport:
    value: int
    branch: Branch
    r: int | None
    oracle_value: int | None

    def __post_init__(self):
        if self.oracle_value is not None and self.value != self.oracle_value:
            raise AssertionError(
                f"closed form {self.value} disagrees with oracle {self.oracle_value}"
            )


def nu2_sigma(q: ValuationQuery, check: bool = True) -> ValuationReport:
    """nu_2(sigma(p^e)): nu_2(p+1) + nu_2((e+1)/2) when p odd and e odd,
    else 0."""
    p, e = q.p, q.e
    if p > 2 and e % 2 == 1:
        r = nu(2, (e + 1) // 2)
        value = nu(2, p + 1) + r
        branch = Branch.ODD_P_ODD_E
    else:
        r, value, branch = None, 0, Branch.OTHERWISE_ZERO
    oracle = nu(2, sigma_of(p**e)) if check else None
    return ValuationReport(value, branch, r, oracle)


def nu2_sigma_minus_one(q: ValuationQuery, check: bool = True) -> ValuationReport:
    """nu_2(sigma(p^e) - 1): 0 for p odd e odd; nu_2(p+1) + nu_2(e/2) for
    p odd e even; 1 for p = 2."""
    p, e = q.p, q.e
    if p == 2:
        r, value, branch = None, 1, Branch.P_EQUALS_2
    elif e % 2 == 1:
        r, value, branch = None, 0, Branch.ODD_P_ODD_E
    else:
        r = nu(2, e // 2)
        value = nu(2, p + 1) + r
        branch = Branch.EVEN_E_CASE
    if p**e == 1:
        raise ValueError("p^e must exceed 1")
    oracle = nu(2, sigma_of(p**e) - 1) if check else None
    return ValuationReport(value, branch, r, oracle)


def broughan_zhou_equiv(p: int, e: int) -> tuple[int, bool]:
    """For odd prime p and odd e, j = nu_2(sigma(p^e)); returns (j, holds)
    where holds checks nu_2((p+1)(e+1)) == j + 1."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if e < 1 or e % 2 == 0:
        raise ValueError("e must be a positive odd integer")
    j = nu(2, sigma_of(p**e))
    holds = nu(2, (p + 1) * (e + 1)) == j + 1
    return j, holds
