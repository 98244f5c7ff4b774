"""Search for (-1)-curves E ~ mM - dL + a2 A2 + ... + c3 C3 on the order-7 quotient.

A (-1)-curve that is not one of the exceptional curves meets every
exceptional curve non-negatively and satisfies E.K_Y = -1, E^2 = -1.  The
search runs in two stages: enumerate (d, a3, b3, c3) satisfying the linear
constraints and their projected bounds, then test each tuple against the
quadratic inequality obtained by completing squares in E^2 = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import ceil, floor
from typing import Mapping, NamedTuple

from . import lattice

VARIABLES = ("d", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3")
CURVES = ("A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3")

# E.nu*K_Z must lie strictly between 0 and K_Y.nu*K_Z = 9/7.
PULLBACK_THRESHOLD = Fraction(9, 7)


def _exact(x):
    """Integers stay ints (fast); anything else becomes a Fraction."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class AffineForm:
    const: Fraction
    coeffs: tuple[tuple[str, Fraction], ...]

    @classmethod
    def make(cls, const=0, **coeffs) -> "AffineForm":
        items = tuple((v, _exact(coeffs[v])) for v in VARIABLES if coeffs.get(v, 0))
        return cls(_exact(const), items)

    def coeff(self, var: str):
        return dict(self.coeffs).get(var, 0)

    def __call__(self, point: Mapping[str, int]) -> Fraction:
        return self.const + sum(c * point.get(v, 0) for v, c in self.coeffs)

    def __str__(self):
        parts = [str(self.const)] if self.const else []
        parts += [f"{c}*{v}" for v, c in self.coeffs]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class CurveCandidate:
    m: int
    d: int
    a2: int = 0
    a3: int = 0
    b1: int = 0
    b2: int = 0
    b3: int = 0
    c1: int = 0
    c2: int = 0
    c3: int = 0

    def point(self) -> dict[str, int]:
        return {v: getattr(self, v) for v in VARIABLES}

    def picard_coords(self) -> tuple[int, ...]:
        """Coordinates in the basis (M, L, A2, A3, B1, B2, B3, C1, C2, C3)."""
        return (self.m, -self.d, self.a2, self.a3, self.b1, self.b2, self.b3,
                self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class ConstraintSystem:
    m: int
    inequalities: tuple[tuple[str, AffineForm], ...]  # E.X >= 0 for each curve X
    equality: AffineForm  # E.K_Y + 1 == 0

    def form(self, curve: str) -> AffineForm:
        return dict(self.inequalities)[curve]

    def satisfied_by(self, point: Mapping[str, int]) -> bool:
        return self.equality(point) == 0 and all(f(point) >= 0 for _, f in self.inequalities)


class Stage1Tuple(NamedTuple):
    d: int
    a3: int
    b3: int
    c3: int


def check_m(m: int) -> None:
    """Only m = 1, 2 give 0 < E.nu*K_Z = 3m/7 < 9/7."""
    value = Fraction(3 * m, 7)
    if not 0 < value < PULLBACK_THRESHOLD:
        raise ValueError(
            f"m={m}: E.nu*K_Z = 3m/7 = {value} is outside (0, 9/7); only m = 1, 2 qualify")


def _handwritten_system(m: int) -> ConstraintSystem:
    F = AffineForm.make
    ineqs = (
        ("A1", F(a2=1)),
        ("A2", F(a2=-2, a3=1)),
        ("A3", F(d=1, a2=1, a3=-3)),
        ("B1", F(b1=-2, b2=1)),
        ("B2", F(b1=1, b2=-2, b3=1)),
        ("B3", F(2 * m, d=2, b2=1, b3=-3)),
        ("C1", F(c1=-2, c2=1)),
        ("C2", F(c1=1, c2=-2, c3=1)),
        ("C3", F(-m, d=4, c2=1, c3=-3)),
    )
    return ConstraintSystem(m, ineqs, F(1, d=-3, a3=1, b3=1, c3=1))


def _variable_vectors(space, m: int):
    vecs = lattice.picard_vectors(space)
    var_vec = {"d": tuple(-x for x in vecs["L"])}
    for v in VARIABLES[1:]:
        var_vec[v] = vecs[v.upper()]
    return vecs["M"], var_vec


def gram_derived_system(m: int) -> ConstraintSystem:
    """The same system read off from intersection numbers in the ambient space."""
    space = lattice.ambient_space()
    M, var_vec = _variable_vectors(space, m)

    def pairing_form(target) -> AffineForm:
        const = m * space.pair(M, target)
        coeffs = {v: space.pair(vec, target) for v, vec in var_vec.items()}
        return AffineForm.make(const, **coeffs)

    ineqs = tuple((c, pairing_form(space.basis(c))) for c in CURVES)
    eq = pairing_form(lattice.canonical_class(space))
    eq = AffineForm(_exact(eq.const + 1), eq.coeffs)
    return ConstraintSystem(m, ineqs, eq)


@lru_cache(maxsize=None)
def build_system(m: int) -> ConstraintSystem:
    check_m(m)
    system = _handwritten_system(m)
    derived = gram_derived_system(m)
    if system != derived:
        diffs = [c for (c, f), (_, g) in zip(system.inequalities, derived.inequalities) if f != g]
        if system.equality != derived.equality:
            diffs.append("K_Y")
        raise AssertionError(f"hand-coded and Gram-derived forms disagree on {diffs}")
    return system


@dataclass(frozen=True)
class Bounds:
    """Upper bounds x3 <= const + slope*d for each chain, and the range of d."""

    chain_bounds: tuple[tuple[str, Fraction, Fraction], ...]  # (var, const, slope)
    d_min: int
    d_max: int

    def bound(self, var: str, d: int) -> Fraction:
        for v, const, slope in self.chain_bounds:
            if v == var:
                return const + slope * d
        raise KeyError(var)

    def floor_bound(self, var: str, d: int) -> int:
        return floor(self.bound(var, d))


def _chain_bound(system: ConstraintSystem, chain: str) -> tuple[str, Fraction, Fraction]:
    """Eliminate the inner variables of one chain, walking toward the (-3)-curve.

    Each inequality x_{j-1} - b_j x_j + x_{j+1} >= 0 together with
    x_{j-1} <= rho x_j gives x_j <= x_{j+1} / (b_j - rho); the last curve's
    inequality then bounds x3 by its constant and d terms.
    """
    prefix = chain.lower()
    rho = Fraction(0)
    for j in (1, 2):
        form = system.form(f"{chain}{j}")
        own = form.coeff(f"{prefix}{j}")
        if own == 0:
            # curve whose own class is not a basis variable: no ratio yet
            continue
        rho = 1 / (-own - rho)
    last = system.form(f"{chain}3")
    b = -last.coeff(f"{prefix}3")
    scale = 1 / (b - rho)
    return f"{prefix}3", last.const * scale, last.coeff("d") * scale


def derive_bounds(system: ConstraintSystem) -> Bounds:
    chain_bounds = tuple(_chain_bound(system, c) for c in ("A", "B", "C"))
    # equality: k + e_d d + a3 + b3 + c3 = 0, so a3 + b3 + c3 = -k - e_d d
    eq = system.equality
    s_const, s_slope = -eq.const, -eq.coeff("d")
    u_const = sum(c for _, c, _ in chain_bounds)
    u_slope = sum(s for _, _, s in chain_bounds)
    # s_const + s_slope d <= u_const + u_slope d
    if s_slope <= u_slope:
        raise ArithmeticError("bounds do not confine d")
    d_max = floor((u_const - s_const) / (s_slope - u_slope))
    # d >= -a2 + 3 a3 = 3 (E.A2) + 5 (E.A1) >= 0
    return Bounds(chain_bounds, 0, d_max)


def enumerate_stage1(m: int) -> list[Stage1Tuple]:
    """All (d, a3, b3, c3) with a3 + b3 + c3 = 3d - 1 inside the derived bounds.

    Ordered by descending d, then descending a3, then descending b3.  a3 >= 0
    because a3 >= 2 a2 >= 0; b3 and c3 have no separate lower limit, c3 is
    fixed by the equality and b3 runs down to where c3 hits its bound.
    """
    bounds = derive_bounds(build_system(m))
    out = []
    for d in range(bounds.d_max, bounds.d_min - 1, -1):
        s = 3 * d - 1
        a_max = bounds.floor_bound("a3", d)
        b_max = bounds.floor_bound("b3", d)
        c_max = bounds.floor_bound("c3", d)
        for a3 in range(a_max, -1, -1):
            for b3 in range(b_max, s - a3 - c_max - 1, -1):
                out.append(Stage1Tuple(d, a3, b3, s - a3 - b3))
    return out


def quadratic_sides(m: int, t: Stage1Tuple) -> tuple[Fraction, Fraction]:
    """Both sides of the quadratic inequality a (-1)-curve must satisfy.

    From E^2 = -1 and E.K_Y = -1:
        3d^2 + 2d + 2m^2 - 1 = (4m + 2d) b3 + (6d - 2m) c3 + (chain squares)
    and each chain square is at most its last-variable term.
    """
    d, a3, b3, c3 = t
    lhs = Fraction(3 * d * d + 2 * d + 2 * m * m - 1)
    rhs = (Fraction(-5, 2) * a3 * a3 - Fraction(7, 3) * b3 * b3 - Fraction(7, 3) * c3 * c3
           + (4 * m + 2 * d) * b3 + (6 * d - 2 * m) * c3)
    return lhs, rhs


def quadratic_test(m: int, t: Stage1Tuple) -> bool:
    lhs, rhs = quadratic_sides(m, t)
    return lhs <= rhs


def picard_gram() -> list[list[int]]:
    return [list(r) for r in _picard_gram()]


@lru_cache(maxsize=None)
def _picard_gram():
    return lattice.build_picard_basis().gram


def self_intersection(c: CurveCandidate, gram=None) -> int:
    x = c.picard_coords()
    return _form(gram or picard_gram(), x, x)


def _chain_contributions(system: ConstraintSystem, gram, base: tuple, chain: str,
                         t: Stage1Tuple) -> dict[int, dict[str, int]]:
    """E^2 contributions of the free inner variables of one chain.

    For every integer choice allowed by the chain's inequalities, maps
    2 base.x + x.x (x the inner part of E, computed with the Gram matrix)
    to one choice realizing it.
    """
    d = t.d
    if chain == "A":
        choices = [{"a2": a2} for a2 in range(0, t.a3 // 2 + 1)]
    else:
        p = chain.lower()
        x3 = getattr(t, f"{p}3")
        last = system.form(f"{chain}3")
        # x2 >= 3 x3 - const - slope d from the last curve; x1 then ranges
        # over [2 x2 - x3, x2 / 2], which is empty once x2 > 2 x3 / 3
        lo2 = ceil(3 * x3 - last.const - last.coeff("d") * d)
        hi2 = floor(Fraction(2 * x3, 3))
        choices = [{f"{p}1": x1, f"{p}2": x2}
                   for x2 in range(lo2, hi2 + 1)
                   for x1 in range(2 * x2 - x3, x2 // 2 + 1)]
    out = {}
    for ch in choices:
        point = {"d": d, "a3": t.a3, "b3": t.b3, "c3": t.c3, **ch}
        if not all(system.form(c)(point) >= 0 for c in CURVES if c[0] == chain):
            continue
        x = list(CurveCandidate(0, 0, **ch).picard_coords())
        bx = _form(gram, base, x)
        out.setdefault(2 * bx + _form(gram, x, x), ch)
    return out


def _form(g, x, y) -> int:
    return sum(x[i] * g[i][j] * y[j] for i in range(10) for j in range(10) if x[i] and y[j])


def exhaustive_oracle(m: int, t: Stage1Tuple, gram=None, target: int = -1) -> list[CurveCandidate]:
    """Every full integer solution class with E^2 = target above a stage-1 tuple.

    Scans a2, (b1, b2), (c1, c2) over their whole feasible ranges and uses
    the integer Gram matrix for E^2, not the completed-square inequality.
    Returns one witness per matching combination of chain contributions.
    """
    system = build_system(m)
    g = gram or picard_gram()
    base = CurveCandidate(m, t.d, a3=t.a3, b3=t.b3, c3=t.c3).picard_coords()
    need = target - _form(g, base, base)
    ca = _chain_contributions(system, g, base, "A", t)
    cb = _chain_contributions(system, g, base, "B", t)
    cc = _chain_contributions(system, g, base, "C", t)
    hits = []
    for va, cha in ca.items():
        for vb, chb in cb.items():
            chc = cc.get(need - va - vb)
            if chc is not None:
                hits.append(CurveCandidate(m, t.d, a3=t.a3, b3=t.b3, c3=t.c3,
                                           **cha, **chb, **chc))
    return hits


@dataclass
class Verdict:
    m: int
    pullback_degree: Fraction
    stage1: list[Stage1Tuple]
    survivors: list[Stage1Tuple]
    d_range: tuple[int, int]

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "E.nu*K_Z": str(self.pullback_degree),
            "threshold": str(PULLBACK_THRESHOLD),
            "d_range": list(self.d_range),
            "stage1": len(self.stage1),
            "survivors": len(self.survivors),
        }


def full_verdict(m: int) -> Verdict:
    check_m(m)
    bounds = derive_bounds(build_system(m))
    stage1 = enumerate_stage1(m)
    survivors = [t for t in stage1 if quadratic_test(m, t)]
    space = lattice.ambient_space()
    M = lattice.picard_vectors(space)["M"]
    degree = m * space.pair(M, space.basis("K"))
    return Verdict(m, degree, stage1, survivors, (bounds.d_min, bounds.d_max))
