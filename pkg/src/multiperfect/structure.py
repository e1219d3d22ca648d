"""Shape machinery for odd k-perfect numbers.

An odd k-perfect n splits as n = p_1^e_1 ... p_s^e_s * M^2 with the e_i
odd and 1 <= s <= nu_2(k). Each composition of nu_2(k) - s into 2s
nonnegative parts (a_1..a_s, b_1..b_s) forces the congruences
p_i = 2^(a_i+1) - 1 (mod 2^(a_i+2)) and e_j = 2^(b_j+1) - 1 (mod 2^(b_j+2)).
This module enumerates those shapes and classifies factored odd integers
against them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arith import Factorization, nu, sigma


@dataclass(frozen=True)
class CongruenceClass:
    residue: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue out of range")

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def as_dict(self) -> dict:
        return {"residue": self.residue, "modulus": self.modulus}


def _induced_class(d: int) -> CongruenceClass:
    # nu_2((c+1)/2) = d  <=>  c = 2^(d+1) - 1 (mod 2^(d+2))
    return CongruenceClass(2 ** (d + 1) - 1, 2 ** (d + 2))


@dataclass(frozen=True)
class PartitionAssignment:
    a: tuple[int, ...]
    b: tuple[int, ...]


@dataclass(frozen=True)
class ShapeDescriptor:
    k: int
    s: int
    assignment: PartitionAssignment
    prime_classes: tuple[CongruenceClass, ...]
    exponent_classes: tuple[CongruenceClass, ...]

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "a": list(self.assignment.a),
            "b": list(self.assignment.b),
            "prime_classes": [c.as_dict() for c in self.prime_classes],
            "exponent_classes": [c.as_dict() for c in self.exponent_classes],
        }


@dataclass(frozen=True)
class EulerPartSplit:
    euler_part: Factorization
    square_part: Factorization

    @property
    def s(self) -> int:
        return len(self.euler_part)


def compositions(total: int, parts: int) -> list[list[int]]:
    """All ordered lists of `parts` nonnegative integers summing to `total`,
    in lexicographic order (stars and bars)."""
    if total < 0 or parts < 1:
        raise ValueError("need total >= 0 and parts >= 1")
    out = []
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        ext = (-1,) + bars + (total + parts - 1,)
        out.append([ext[i + 1] - ext[i] - 1 for i in range(parts)])
    out.sort()
    return out


def enumerate_shapes(k: int) -> list[ShapeDescriptor]:
    """All admissible shapes of an odd k-perfect number, grouped by s."""
    if k < 2:
        raise ValueError("k must be >= 2")
    v = nu(2, k)
    if v < 1:
        raise ValueError(f"k = {k} is odd; shape enumeration needs nu_2(k) >= 1")
    shapes = []
    for s in range(1, v + 1):
        for comp in compositions(v - s, 2 * s):
            a, b = tuple(comp[:s]), tuple(comp[s:])
            shapes.append(
                ShapeDescriptor(
                    k=k,
                    s=s,
                    assignment=PartitionAssignment(a, b),
                    prime_classes=tuple(_induced_class(d) for d in a),
                    exponent_classes=tuple(_induced_class(d) for d in b),
                )
            )
    return shapes


def split_euler_part(f: Factorization) -> EulerPartSplit:
    """Sort prime powers by exponent parity: odd exponents form the Euler
    part, even exponents the square part."""
    if f.n % 2 == 0:
        raise ValueError("euler-part split is defined for odd integers")
    odd = tuple((p, e) for p, e in f if e % 2 == 1)
    even = tuple((p, e) for p, e in f if e % 2 == 0)
    return EulerPartSplit(Factorization(odd), Factorization(even))


def valuation_identity_check(f: Factorization) -> tuple[int, int, bool]:
    """nu_2(sigma(n)) = s + sum over Euler-part prime powers of
    nu_2((p+1)/2) + nu_2((e+1)/2), for any odd n."""
    if f.n % 2 == 0:
        raise ValueError("identity is stated for odd integers")
    split = split_euler_part(f)
    lhs = nu(2, sigma(f))
    rhs = split.s + sum(
        nu(2, (p + 1) // 2) + nu(2, (e + 1) // 2) for p, e in split.euler_part
    )
    return lhs, rhs, lhs == rhs


def matches_shape(split: EulerPartSplit, shape: ShapeDescriptor) -> bool:
    """True iff some assignment of Euler-part prime powers to shape slots
    satisfies every prime and exponent congruence."""
    if split.s != shape.s:
        raise ValueError(f"split has s={split.s} but shape expects s={shape.s}")
    factors = list(split.euler_part)
    for perm in itertools.permutations(factors):
        if all(
            shape.prime_classes[i].contains(p) and shape.exponent_classes[i].contains(e)
            for i, (p, e) in enumerate(perm)
        ):
            return True
    return False


def matches_any_shape(split: EulerPartSplit, shapes: list[ShapeDescriptor]) -> bool:
    return any(matches_shape(split, sh) for sh in shapes if sh.s == split.s)
