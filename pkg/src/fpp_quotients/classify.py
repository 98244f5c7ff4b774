"""Fixed-point bookkeeping for prime-order automorphisms and their quotients."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .exactmath import is_prime, lefschetz_coefficient
from .quotsing import SingularityType, normalize, resolved_K2, sort_types

# Orbifold Bogomolov-Miyaoka-Yau: a Q-homology plane with quotient
# singularities only has at most 5 singular points.  Imported, not derived.
ORBIFOLD_MAX_SINGULAR_POINTS = 5

# e(X) = 3 and chi = 1 for a fake projective plane and all its quotients.
EULER_NUMBER = 3
CHI = 1
K2_FAKE_PLANE = 9


@dataclass(frozen=True)
class SingularityProfile:
    """Counts of isolated fixed points by normalized singularity type."""

    counts: tuple[tuple[SingularityType, int], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[SingularityType, int]) -> "SingularityProfile":
        merged: Counter = Counter()
        for t, r in mapping.items():
            if r < 0:
                raise ValueError("negative count")
            if r:
                merged[normalize(t)] += r
        return cls(tuple(sorted(merged.items(), key=lambda kv: (kv[0].m, kv[0].a))))

    def as_dict(self) -> dict[SingularityType, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(r for _, r in self.counts)

    def __contains__(self, t: SingularityType) -> bool:
        return any(s == normalize(t) for s, _ in self.counts)

    def __str__(self):
        return "{" + ", ".join(f"{t}: {r}" for t, r in self.counts) + "}"


@dataclass(frozen=True)
class CurveComponent:
    genus: int
    self_intersection: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")


def lefschetz_lhs(p: int, curves: Iterable[CurveComponent], profile) -> Fraction:
    """Right-hand side of the holomorphic Lefschetz formula.

    For an automorphism of prime order p of a surface with p_g = q = 0 the
    result must equal 1.  ``profile`` is a SingularityProfile or a mapping
    from types 1/p(1,i) to counts.
    """
    total = Fraction(0)
    for c in curves:
        total += Fraction(1 - c.genus, 2) + Fraction((p + 1) * c.self_intersection, 12)
    items = profile.counts if isinstance(profile, SingularityProfile) else profile.items()
    for t, r in items:
        if t.m != p:
            raise ValueError(f"{t} is not a type of order {p}")
        total += lefschetz_coefficient(p, t.a) * r
    return total


def enumerate_profiles(p: int, num_fixed_points: int) -> set[SingularityProfile]:
    """All fixed-point profiles with sum a_i r_i = 1 and sum r_i = N.

    Walks multisets of residues of size N, so each (r_1, ..., r_{p-1}) is
    visited once.
    """
    a = {i: lefschetz_coefficient(p, i) for i in range(1, p)}
    found = set()
    for pts in combinations_with_replacement(range(1, p), num_fixed_points):
        if sum(a[i] for i in pts) == 1:
            found.add(SingularityProfile.from_mapping(
                Counter(SingularityType(p, i) for i in pts)))
    return found


def apply_type_exclusion(profiles: Iterable[SingularityProfile],
                         excluded: SingularityType) -> set[SingularityProfile]:
    return {prof for prof in profiles if excluded not in prof}


def hurwitz_fixed_points(p: int, e_x: int, e_z: int, e_c: int) -> int:
    """Number r of isolated fixed points from e(X) = p e(Z) - (p-1)(r + e(C))."""
    num = p * e_z - e_x
    if num % (p - 1):
        raise ValueError(f"p e(Z) - e(X) = {num} not divisible by p - 1 = {p - 1}")
    return num // (p - 1) - e_c


def curve_euler_bound(m: int) -> int:
    """e(C) = -C^2 - C.K_X for a smooth curve C numerically m times the generator."""
    if m < 1:
        raise ValueError("m must be positive")
    return -(m * m + 3 * m)


def fixed_curve_obstruction(p: int, max_degree: int = 10) -> list[dict]:
    """For each degree m, the number of isolated points a fixed curve would force.

    Every entry exceeds the orbifold bound, so the fixed locus has no curve.
    """
    rows = []
    for m in range(1, max_degree + 1):
        e_c = curve_euler_bound(m)
        r = hurwitz_fixed_points(p, EULER_NUMBER, EULER_NUMBER, e_c)
        rows.append({"m": m, "e_C": e_c, "r": r,
                     "feasible": r <= ORBIFOLD_MAX_SINGULAR_POINTS})
    return rows


@dataclass(frozen=True)
class QuotientInvariants:
    group_order: int
    kz_squared: Fraction
    euler_number: int
    chi: int
    singularities: tuple[SingularityType, ...]

    @property
    def resolved_K2(self) -> Fraction:
        return resolved_K2(self.kz_squared, self.singularities)


# Cyclic subgroups of each automorphism group: (order, how many).  Every
# element of order 3 fixes 3 points of type 1/3(1,2), every element of order
# 7 fixes 3 points of type 1/7(1,3), and no point has the whole group as
# stabilizer, so each fixed point lies in an orbit of size |G| / |H|.
_SUBGROUPS = {
    3: [(3, 1)],
    7: [(7, 1)],
    9: [(3, 4)],
    21: [(3, 7), (7, 1)],
}

_PRIME_TYPE = {
    3: SingularityType(3, 2),
    7: SingularityType(7, 3),
}

FIXED_POINTS_PER_SUBGROUP = 3


def quotient_invariants(group_order: int) -> QuotientInvariants:
    if group_order == 2:
        raise ValueError(
            "order 2: only rational double points, so K_Y^2 = K_Z^2 = 9/2, not an integer")
    if group_order not in _SUBGROUPS:
        raise ValueError(f"unsupported group order {group_order}")
    sings = []
    for h, count in _SUBGROUPS[group_order]:
        points, rem = divmod(count * FIXED_POINTS_PER_SUBGROUP, group_order // h)
        assert rem == 0, "fixed points must fall into full orbits"
        sings.extend([_PRIME_TYPE[h]] * points)
    return QuotientInvariants(
        group_order=group_order,
        kz_squared=Fraction(K2_FAKE_PLANE, group_order),
        euler_number=EULER_NUMBER,
        chi=CHI,
        singularities=tuple(sort_types(sings)),
    )


def noether_euler(k2) -> Fraction:
    """e = 12 chi - K^2."""
    return 12 * CHI - Fraction(k2)


def second_betti(k2, b1: int = 0) -> Fraction:
    """b_2 = e - 2 + 2 b_1."""
    return noether_euler(k2) - 2 + 2 * b1


def classified_profiles(p: int) -> set[SingularityProfile]:
    """Surviving profiles for an automorphism of order p of a fake plane."""
    if not is_prime(p) or p not in (3, 7):
        raise ValueError("only p = 3 and p = 7 occur")
    profiles = enumerate_profiles(p, hurwitz_fixed_points(p, EULER_NUMBER, EULER_NUMBER, 0))
    if p == 7:
        profiles = apply_type_exclusion(profiles, normalize(SingularityType(7, 4)))
    return profiles
