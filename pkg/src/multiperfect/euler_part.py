"""Obstructions on the Euler part of odd multiperfect numbers, and a
certificate generator packaging them into self-contained nonexistence
records.

The obstructions implemented:
  - divisibility of sigma(Euler part) by a square-part prime power,
    decided per complementary prime via multiplicative orders;
  - the Fermat-prime shortcut (every order mod a Fermat prime is a
    power of 2, so only the p = 1 (mod q) branch can trip);
  - the mod-8 / mod-16 characterization of 2-perfect Euler factors
    pi^alpha with pi = alpha = 1 (mod 4);
  - the parity obstruction: when every prime of M is 3 (mod 4),
    Omega(sigma(Euler part) / 2^k) must be even.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .arith import Factorization, factor, is_prime, nu, ord_mod, sigma
from .structure import enumerate_shapes, matches_any_shape, split_euler_part

CERTIFICATE_SCHEMA_VERSION = 1


class CertificateKind(Enum):
    FERMAT_DIVISIBILITY_CONTRADICTION = "fermat_divisibility_contradiction"
    OMEGA_PARITY = "omega_parity"
    MOD8_MISMATCH = "mod8_mismatch"
    SHAPE_VIOLATION = "shape_violation"


class Mod8Class(Enum):
    SAME_MOD8 = "same_mod8"
    SHIFTED_BY_4 = "shifted_by_4"


@dataclass(frozen=True)
class SquarePartSpec:
    """Square part q^(2*beta) * prod p_i^(2*beta_i) of an odd 2^k-perfect
    candidate; q is the prime whose divisibility into sigma(Euler part)
    is being decided."""

    q: int
    beta: int
    others: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [self.q] + [p for p, _ in self.others]
        for p in primes:
            if p == 2 or not is_prime(p):
                raise ValueError(f"{p} must be an odd prime")
        if len(set(primes)) != len(primes):
            raise ValueError("square-part primes must be distinct")
        if self.beta < 1 or any(b < 1 for _, b in self.others):
            raise ValueError("beta exponents must be positive")


def sigma_coprime_to_q(p: int, beta: int, q: int) -> bool:
    """Is gcd(q, sigma(p^(2*beta))) = 1?  Decided by congruence:
    2*beta+1 modulo q when p = 1 (mod q), modulo ord_q(p) otherwise."""
    if p == q:
        raise ValueError("p and q must be distinct")
    for x in (p, q):
        if x == 2 or not is_prime(x):
            raise ValueError(f"{x} must be an odd prime")
    if p % q == 1:
        return (2 * beta + 1) % q != 0
    return (2 * beta + 1) % ord_mod(q, p) != 0


def euler_divisibility(spec: SquarePartSpec) -> tuple[bool, list[dict]]:
    """q^(2*beta) divides sigma(Euler part) iff every complementary prime
    power sigma(p_i^(2*beta_i)) is coprime to q. Returns the verdict and a
    per-prime record of which branch decided it."""
    reasons = []
    divides = True
    for p, b in spec.others:
        if p % spec.q == 1:
            branch = "p_equiv_1_mod_q"
            modulus = spec.q
        else:
            branch = "order_branch"
            modulus = ord_mod(spec.q, p)
        ok = (2 * b + 1) % modulus != 0
        reasons.append(
            {
                "p": p,
                "beta": b,
                "branch": branch,
                "modulus": modulus,
                "two_beta_plus_one_mod": (2 * b + 1) % modulus,
                "coprime": ok,
            }
        )
        divides = divides and ok
    return divides, reasons


FERMAT_PRIMES = (3, 5, 17, 257, 65537)


def is_fermat_prime(q: int) -> bool:
    if q < 3 or not is_prime(q):
        return False
    m = q - 1
    t = nu(2, m)
    if m != 2**t:
        return False
    return t == 1 or t == 2 ** nu(2, t)


def fermat_criterion(q: int, betas: list[int]) -> bool:
    """For Fermat prime q: if prod(2*beta_i + 1) is not 0 mod q then
    q^(2*beta) divides sigma(Euler part). Every multiplicative order mod q
    divides q - 1 = 2^(2^t), so no odd order can divide 2*beta_i + 1;
    only the p = 1 (mod q) branch can obstruct, and that is exactly the
    product condition."""
    if not is_fermat_prime(q):
        raise ValueError(f"{q} is not a Fermat prime")
    prod = 1
    for b in betas:
        if b < 1:
            raise ValueError("beta exponents must be positive")
        prod = prod * (2 * b + 1) % q
    return prod != 0


@dataclass(frozen=True)
class EulerFactorQuery:
    """Euler factor pi^alpha with pi = alpha = 1 (mod 4), optionally with
    the factored square part M^2 it is paired with."""

    pi: int
    alpha: int
    m_square: Factorization | None = None

    def __post_init__(self):
        if not is_prime(self.pi) or self.pi % 4 != 1:
            raise ValueError(f"pi = {self.pi} must be a prime = 1 (mod 4)")
        if self.alpha % 4 != 1:
            raise ValueError(f"alpha = {self.alpha} must be = 1 (mod 4)")
        if self.m_square is not None:
            m = self.m_square.n
            if m % 2 == 0:
                raise ValueError("M^2 must be odd")
            if any(e % 2 for _, e in self.m_square):
                raise ValueError("M^2 must be a perfect square")
            if m % self.pi == 0:
                raise ValueError("M^2 must be coprime to pi")


def half_sigma_mod8(pi: int, alpha: int) -> int:
    """(sigma(pi^alpha) / 2) mod 8 via the closed form
    ((1 + pi)/2) * ((1 + alpha)/2) for pi = alpha = 1 (mod 4)."""
    EulerFactorQuery(pi, alpha)  # validates preconditions
    return ((1 + pi) // 2) * ((1 + alpha) // 2) % 8


def mod16_solutions(sigma_m2_mod8: int) -> frozenset[tuple[int, int]]:
    """Residue pairs (pi, alpha) mod 16 with pi = alpha = 1 (mod 4)
    solving pi*(pi+1) = c*(alpha+1) (mod 16) for c = sigma(M^2) mod 8."""
    c = sigma_m2_mod8
    if c % 2 == 0:
        raise ValueError("sigma(M^2) mod 8 must be odd")
    if not 0 < c < 8:
        raise ValueError("residue must lie in {1,3,5,7}")
    return frozenset(
        (p, a)
        for p in range(1, 16, 4)
        for a in range(1, 16, 4)
        if (p * (p + 1) - c * (a + 1)) % 16 == 0
    )


def mod8_classify(query: EulerFactorQuery, assert_consistency: bool = False) -> Mod8Class:
    """sigma(M^2) = 1 (mod 4) puts pi = alpha (mod 8); = 3 (mod 4) puts
    pi = alpha + 4 (mod 8). The consistency assertion is only valid under
    the 2-perfect hypothesis, so it is opt-in."""
    if query.m_square is None:
        raise ValueError("mod8 classification needs the factored square part")
    r = sigma(query.m_square) % 4
    cls = Mod8Class.SAME_MOD8 if r == 1 else Mod8Class.SHIFTED_BY_4
    if assert_consistency:
        shift = (query.pi - query.alpha) % 8
        expected = 0 if cls is Mod8Class.SAME_MOD8 else 4
        if shift != expected:
            raise AssertionError(
                f"pi - alpha = {shift} (mod 8) but sigma(M^2) = {r} (mod 4) "
                f"demands {expected}"
            )
    return cls


def remark_parity(m_square: Factorization) -> tuple[int, bool]:
    """Count exact prime powers p^e || M^2 with p = 1 (mod 4) and
    e = 2 (mod 4); an odd count predicts the shifted-by-4 class."""
    if m_square.n % 2 == 0 or any(e % 2 for _, e in m_square):
        raise ValueError("input must be an odd perfect square")
    count = sum(1 for p, e in m_square if p % 4 == 1 and e % 4 == 2)
    return count, count % 2 == 1


def omega_obstruction(euler_part: Factorization, k_exponent: int) -> tuple[int, bool]:
    """For a candidate odd 2^k-perfect n = (Euler part) * M^2 with every
    prime of M = 3 (mod 4): Omega(sigma(Euler part) / 2^k) must be even.
    An odd value rules out the whole family.

    Hypotheses checked (each failure raises with the violated one named):
    all Euler-part exponents odd; an even count of primes = 3 (mod 4);
    sigma(Euler part) coprime to the primes = 1 (mod 4); and
    nu_2(sigma(Euler part)) = k_exponent.
    """
    n = euler_part.n
    if n % 2 == 0:
        raise ValueError("hypothesis violated: Euler part must be odd")
    if any(e % 2 == 0 for _, e in euler_part):
        raise ValueError("hypothesis violated: Euler-part exponents must all be odd")
    q_count = sum(1 for p, _ in euler_part if p % 4 == 3)
    if q_count % 2 != 0:
        raise ValueError(
            "hypothesis violated: count of Euler-part primes = 3 (mod 4) must be even"
        )
    s = sigma(euler_part)
    ones = 1
    for p, _ in euler_part:
        if p % 4 == 1:
            ones *= p
    if gcd(s, ones) != 1:
        raise ValueError(
            "hypothesis violated: sigma(Euler part) shares a factor with the primes = 1 (mod 4)"
        )
    if nu(2, s) != k_exponent:
        raise ValueError(
            f"hypothesis violated: nu_2(sigma(Euler part)) = {nu(2, s)} != k = {k_exponent}"
        )
    omega = factor(s >> k_exponent).big_omega()
    return omega, omega % 2 == 0


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    hypothesis: dict
    witnesses: dict
    theorem: str
    conclusion: str
    schema_version: int = CERTIFICATE_SCHEMA_VERSION

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "hypothesis": self.hypothesis,
            "witnesses": self.witnesses,
            "theorem": self.theorem,
            "conclusion": self.conclusion,
            "schema_version": self.schema_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class CandidateFamily:
    """A family of odd 2^k-perfect candidates n = pi^alpha * M^2 (or a
    general Euler part) with constraints on the square part.

    pi/alpha may be concrete or residue classes (residue, modulus);
    q names a square-part prime q^(2*beta) whose beta range excludes
    2*beta + 1 = 0 (mod q); m_constraint currently supports
    "all-3-mod-4" (every prime of M is 3 mod 4).
    """

    pi: int | None = None
    alpha: int | None = None
    pi_mod: tuple[int, int] | None = None
    alpha_mod: tuple[int, int] | None = None
    q: int | None = None
    m_constraint: str | None = None
    m_square: Factorization | None = None
    k_exponent: int = 1

    def __post_init__(self):
        if self.pi is None and self.pi_mod is None:
            raise ValueError("candidate needs pi, concretely or as a residue class")
        if self.pi is not None and not is_prime(self.pi):
            raise ValueError(
                f"pi = {self.pi} is composite ({_factor_str(self.pi)}); "
                "the Euler-factor prime precondition fails"
            )
        if self.m_constraint not in (None, "all-3-mod-4"):
            raise ValueError(f"unknown M constraint {self.m_constraint!r}")

    def describe(self) -> dict:
        d: dict = {"k_exponent": self.k_exponent}
        if self.pi is not None:
            d["pi"] = self.pi
        if self.alpha is not None:
            d["alpha"] = self.alpha
        if self.pi_mod is not None:
            d["pi_mod"] = list(self.pi_mod)
        if self.alpha_mod is not None:
            d["alpha_mod"] = list(self.alpha_mod)
        if self.q is not None:
            d["q"] = self.q
            d["beta_constraint"] = f"2*beta+1 not divisible by {self.q}"
        if self.m_constraint is not None:
            d["m_constraint"] = self.m_constraint
        if self.m_square is not None:
            d["m_square"] = self.m_square.n
        return d


def _factor_str(n: int) -> str:
    return "*".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in factor(n)
    )


def _residue(value: int | None, cls: tuple[int, int] | None, mod: int) -> int | None:
    """Residue of a (possibly symbolic) quantity mod `mod`, if determined."""
    if value is not None:
        return value % mod
    if cls is not None and cls[1] % mod == 0:
        return cls[0] % mod
    return None


def _try_fermat(c: CandidateFamily) -> Certificate | None:
    if c.q is None:
        return None
    if not is_fermat_prime(c.q):
        raise ValueError(f"q = {c.q} is not a Fermat prime; the divisibility shortcut needs one")
    q = c.q
    pi_mod_q = _residue(c.pi, c.pi_mod, q)
    alpha_mod_q = _residue(c.alpha, c.alpha_mod, q)
    if pi_mod_q != 1 or alpha_mod_q is None:
        return None
    # pi = 1 (mod q) makes sigma(pi^alpha) = alpha + 1 (mod q)
    sigma_mod_q = (alpha_mod_q + 1) % q
    if sigma_mod_q == 0:
        return None
    witnesses = {
        "q": q,
        "pi_mod_q": pi_mod_q,
        "alpha_mod_q": alpha_mod_q,
        "sigma_euler_factor_mod_q": sigma_mod_q,
    }
    if c.pi is not None and c.alpha is not None:
        witnesses["sigma_exact_mod_q"] = sigma(factor(c.pi**c.alpha)) % q
    return Certificate(
        kind=CertificateKind.FERMAT_DIVISIBILITY_CONTRADICTION,
        hypothesis=c.describe(),
        witnesses=witnesses,
        theorem="fermat-prime-divisibility",
        conclusion=(
            f"{q} must divide sigma(pi^alpha) since (2*beta+1, {q}) = 1, "
            f"but sigma(pi^alpha) = {sigma_mod_q} (mod {q}); no such odd "
            f"{2**c.k_exponent}-perfect number exists"
        ),
    )


def _candidate_euler_part(c: CandidateFamily) -> Factorization | None:
    if c.pi is None:
        return None
    alpha = c.alpha if c.alpha is not None else 1
    return Factorization(((c.pi, alpha),))


def _try_omega(c: CandidateFamily) -> Certificate | None:
    if c.m_constraint != "all-3-mod-4":
        return None
    ep = _candidate_euler_part(c)
    if ep is None:
        return None
    try:
        omega, parity_ok = omega_obstruction(ep, c.k_exponent)
    except ValueError:  # hypotheses fail: obstruction not applicable
        return None
    if parity_ok:
        return None
    s = sigma(ep)
    return Certificate(
        kind=CertificateKind.OMEGA_PARITY,
        hypothesis=c.describe(),
        witnesses={
            "sigma_euler_part": s,
            "k_exponent": c.k_exponent,
            "odd_part": s >> c.k_exponent,
            "odd_part_factorization": [[p, e] for p, e in factor(s >> c.k_exponent)],
            "omega": omega,
        },
        theorem="euler-part-omega-parity",
        conclusion=(
            f"Omega(sigma(Euler part)/2^{c.k_exponent}) = {omega} is odd; no odd "
            f"{2**c.k_exponent}-perfect number with this Euler part and all "
            f"square-part primes = 3 (mod 4) exists"
        ),
    )


def _try_mod16(c: CandidateFamily) -> Certificate | None:
    if c.m_square is None or c.pi is None or c.alpha is None or c.k_exponent != 1:
        return None
    smod8 = sigma(c.m_square) % 8
    solutions = mod16_solutions(smod8)
    pair = (c.pi % 16, c.alpha % 16)
    if pair in solutions:
        return None
    return Certificate(
        kind=CertificateKind.MOD8_MISMATCH,
        hypothesis=c.describe(),
        witnesses={
            "sigma_m_square_mod8": smod8,
            "admissible_pairs_mod16": sorted(map(list, solutions)),
            "pi_mod16": pair[0],
            "alpha_mod16": pair[1],
        },
        theorem="euler-factor-mod16-table",
        conclusion=(
            f"(pi, alpha) = {pair} (mod 16) is not an admissible pair for "
            f"sigma(M^2) = {smod8} (mod 8); no such odd 2-perfect number exists"
        ),
    )


def _try_shape(c: CandidateFamily) -> Certificate | None:
    ep = _candidate_euler_part(c)
    if ep is None or ep.n % 2 == 0:
        return None
    k = 2**c.k_exponent
    split = split_euler_part(ep)
    shapes = enumerate_shapes(k)
    if matches_any_shape(split, shapes):
        return None
    return Certificate(
        kind=CertificateKind.SHAPE_VIOLATION,
        hypothesis=c.describe(),
        witnesses={
            "k": k,
            "euler_part": [[p, e] for p, e in ep],
            "shape_count": len(shapes),
        },
        theorem="odd-multiperfect-shape",
        conclusion=(
            f"the Euler part {_factor_str(ep.n)} matches no admissible congruence "
            f"shape for k = {k}; no such odd {k}-perfect number exists"
        ),
    )


# Fixed obstruction order keeps build_certificate deterministic.
_OBSTRUCTIONS = (_try_fermat, _try_omega, _try_mod16, _try_shape)


def build_certificate(candidate: CandidateFamily) -> Certificate | None:
    """Run every applicable obstruction in fixed order; return the first
    firing certificate, or None when nothing obstructs."""
    for obstruction in _OBSTRUCTIONS:
        cert = obstruction(candidate)
        if cert is not None:
            return cert
    return None


def check_certificate(cert: dict | Certificate) -> bool:
    """Independent checker: re-derive the contradiction from the stored
    hypothesis and witnesses, trusting nothing from the generator."""
    d = cert.as_dict() if isinstance(cert, Certificate) else cert
    if d.get("schema_version") != CERTIFICATE_SCHEMA_VERSION:
        raise ValueError(f"unsupported certificate schema {d.get('schema_version')!r}")
    kind = CertificateKind(d["kind"])
    hyp, wit = d["hypothesis"], d["witnesses"]
    if kind is CertificateKind.FERMAT_DIVISIBILITY_CONTRADICTION:
        q = wit["q"]
        if not is_fermat_prime(q):
            return False
        if wit["pi_mod_q"] != 1:
            return False
        if (wit["alpha_mod_q"] + 1) % q != wit["sigma_euler_factor_mod_q"]:
            return False
        if wit["sigma_euler_factor_mod_q"] % q == 0:
            return False
        if "pi" in hyp and hyp["pi"] % q != 1:
            return False
        if "alpha" in hyp and hyp["alpha"] % q != wit["alpha_mod_q"]:
            return False
        if "pi" in hyp and "alpha" in hyp:
            if sigma(factor(hyp["pi"] ** hyp["alpha"])) % q != wit["sigma_euler_factor_mod_q"]:
                return False
        return True
    if kind is CertificateKind.OMEGA_PARITY:
        pi, alpha, k = hyp["pi"], hyp.get("alpha", 1), hyp["k_exponent"]
        ep = Factorization(((pi, alpha),))
        omega, parity_ok = omega_obstruction(ep, k)
        s = sigma(ep)
        return (
            omega == wit["omega"]
            and not parity_ok
            and s == wit["sigma_euler_part"]
            and s >> k == wit["odd_part"]
            and factor(wit["odd_part"]).big_omega() == omega
        )
    if kind is CertificateKind.MOD8_MISMATCH:
        smod8 = wit["sigma_m_square_mod8"]
        if sigma(factor(hyp["m_square"])) % 8 != smod8:
            return False
        sols = mod16_solutions(smod8)
        if sols != frozenset(tuple(p) for p in wit["admissible_pairs_mod16"]):
            return False
        pair = (hyp["pi"] % 16, hyp["alpha"] % 16)
        return pair == (wit["pi_mod16"], wit["alpha_mod16"]) and pair not in sols
    if kind is CertificateKind.SHAPE_VIOLATION:
        ep = Factorization(tuple((p, e) for p, e in wit["euler_part"]))
        shapes = enumerate_shapes(wit["k"])
        if len(shapes) != wit["shape_count"]:
            return False
        return not matches_any_shape(split_euler_part(ep), shapes)
    raise ValueError(f"unknown certificate kind {kind!r}")
