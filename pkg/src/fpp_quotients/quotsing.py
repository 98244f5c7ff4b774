"""Cyclic quotient singularities 1/m(1,a) and their minimal resolutions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from . import linalg


@dataclass(frozen=True, order=True)
class SingularityType:
    """The quotient of C^2 by zeta -> diag(zeta, zeta^a), zeta of order m."""

    m: int
    a: int

    def __post_init__(self):
        if self.m < 2 or not 1 <= self.a < self.m:
            raise ValueError(f"invalid type 1/{self.m}(1,{self.a})")
        if gcd(self.m, self.a) != 1:
            raise ValueError(f"1/{self.m}(1,{self.a}): gcd(m, a) must be 1")

    @property
    def inverse_residue(self) -> int:
        return pow(self.a, -1, self.m)

    def __str__(self):
        return f"1/{self.m}(1,{self.a})"

    @classmethod
    def parse(cls, text: str) -> "SingularityType":
        """Parse '1/7(1,3)'."""
        head, _, rest = text.strip().partition("(")
        m = int(head.split("/")[1])
        a = int(rest.rstrip(")").split(",")[1])
        return cls(m, a)


def normalize(t: SingularityType) -> SingularityType:
    """1/m(1,a) and 1/m(1,a^-1) are the same germ; keep the smaller residue."""
    return SingularityType(t.m, min(t.a, t.inverse_residue))


@dataclass(frozen=True)
class HJChain:
    self_intersections: tuple[int, ...]  # the b_i; curve E_i has E_i^2 = -b_i

    @property
    def gram(self) -> list[list[int]]:
        return chain_gram(self.self_intersections)

    def reversed(self) -> "HJChain":
        return HJChain(self.self_intersections[::-1])

    def __len__(self):
        return len(self.self_intersections)


def chain_gram(bs: Iterable[int]) -> list[list[int]]:
    bs = list(bs)
    k = len(bs)
    g = [[0] * k for _ in range(k)]
    for i, b in enumerate(bs):
        g[i][i] = -b
        if i + 1 < k:
            g[i][i + 1] = g[i + 1][i] = 1
    return g


def chain_determinant(bs: Iterable[int]) -> int:
    """det of the negated chain Gram matrix via the continuant
    q_k = b_k q_{k-1} - q_{k-2}; equals m for the chain of 1/m(1,a)."""
    prev, cur = 0, 1
    for b in bs:
        prev, cur = cur, b * cur - prev
    return cur


def hj_expansion(t: SingularityType) -> HJChain:
    """Continued fraction m/a = b_1 - 1/(b_2 - 1/(...)), all b_i >= 2.

    No normalization is applied: 1/7(1,5) gives [2, 2, 3] and 1/7(1,3)
    gives the reversed chain [3, 2, 2].
    """
    num, den = t.m, t.a
    bs = []
    while den:
        b = -(-num // den)
        bs.append(b)
        num, den = den, b * den - num
    return HJChain(tuple(bs))


@dataclass(frozen=True)
class DiscrepancyData:
    coefficients: tuple[Fraction, ...]
    d_squared: Fraction


def discrepancies(t: SingularityType) -> DiscrepancyData:
    """Coefficients d_i of K_Y = pullback(K_Z) - sum d_i E_i.

    Adjunction on each E_i gives K_Y.E_i = -2 - E_i^2, and pullback classes
    are orthogonal to exceptional curves, so -D.E_i = b_i - 2.  The
    coefficients are listed along hj_expansion(t).
    """
    chain = hj_expansion(t)
    g = chain.gram
    rhs = [2 - b for b in chain.self_intersections]
    d = linalg.solve(g, rhs)
    if not all(0 <= x < 1 for x in d):
        raise ArithmeticError(f"discrepancies {d} of {t} outside [0, 1)")
    return DiscrepancyData(tuple(d), linalg.bilinear(g, d, d))


def sort_types(sings: Iterable[SingularityType]) -> list[SingularityType]:
    return sorted(sings, key=lambda s: (s.m, s.a))


def resolved_K2(kz2, sings: Iterable[SingularityType]) -> Fraction:
    """K_Y^2 = K_Z^2 + sum of D^2 over the singular points."""
    total = Fraction(kz2)
    for t, count in sorted(Counter(sort_types(sings)).items()):
        total += count * discrepancies(t).d_squared
    return total
