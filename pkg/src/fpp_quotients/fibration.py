"""Multiple fibres and singular-fibre bookkeeping for the elliptic quotients.

The canonical bundle formula with F ~ n K_Y gives

    1/n = r - 1 - sum(1/m_i)

for the multiplicities m_1 <= ... <= m_r of the multiple fibres; each m_i
divides n because n = A3.F = m_i A3.F_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

ADMISSIBLE_MULTIPLICITIES = frozenset({(2, 3), (2, 4), (3, 3)})

# e = 12 chi - K^2 with chi = 1, K^2 = 0; rank Pic = e - 2.
EULER_TOTAL = 12
PICARD_RANK = 10


@dataclass(frozen=True, order=True)
class FibreSolution:
    n: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        ms = self.multiplicities
        if list(ms) != sorted(ms) or len(ms) < 2 or min(ms) < 2:
            raise ValueError(f"bad multiplicities {ms}")


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def satisfies_canonical_formula(n: int, ms: Iterable[int]) -> bool:
    ms = list(ms)
    return Fraction(1, n) == len(ms) - 1 - sum(Fraction(1, m) for m in ms)


def max_multiple_fibres(n: int) -> int:
    """Since each 1/m_i <= 1/2, 1/n >= r/2 - 1, i.e. r <= 2 + 2/n."""
    return 2 + 2 // n


def solve_multiplicities(n: int) -> set[FibreSolution]:
    """All multiplicity tuples (r >= 2, m_i >= 2, m_i | n) solving the formula."""
    if n < 1:
        raise ValueError("n must be positive")
    ds = [k for k in divisors(n) if k >= 2]
    out = set()
    for r in range(2, max_multiple_fibres(n) + 1):
        for ms in combinations_with_replacement(ds, r):
            if satisfies_canonical_formula(n, ms):
                out.add(FibreSolution(n, ms))
    return out


def geometric_filter(sols: Iterable[FibreSolution]) -> set[FibreSolution]:
    """Drop (2, 2, 2): a degree-2 map from the (-3)-curve to P^1 ramified at 3 points."""
    return {s for s in sols if s.multiplicities != (2, 2, 2)}


def admissible_multiplicities(n_max: int = 12) -> set[tuple[int, ...]]:
    sols = set()
    for n in range(1, n_max + 1):
        sols |= solve_multiplicities(n)
    return {s.multiplicities for s in geometric_filter(sols)}


def kodaira_euler(k: int) -> int:
    """e(I_k) = k for k >= 1; a smooth fibre (I_0) contributes 0."""
    if k < 0:
        raise ValueError("I_k needs k >= 0")
    return k


def kodaira_components(k: int) -> int:
    return max(k, 1)


def parse_fibre(label: str) -> int:
    """'I3' -> 3.  Only multiplicative fibres are handled."""
    label = label.strip()
    if not label.startswith("I") or not label[1:].isdigit():
        raise ValueError(f"unsupported Kodaira type {label!r}; only I_k fibres are handled")
    return int(label[1:])


@dataclass
class FibreConfiguration:
    fibres: tuple[int, ...]  # k for each singular fibre of type I_k
    multiplicities: tuple[int, ...] = ()

    @property
    def euler_total(self) -> int:
        return sum(kodaira_euler(k) for k in self.fibres)

    @property
    def picard_total(self) -> int:
        # fibre class and a (multi)section, plus the extra components
        return 2 + sum(kodaira_components(k) - 1 for k in self.fibres)

    @classmethod
    def from_labels(cls, labels: Iterable[str], multiplicities=()) -> "FibreConfiguration":
        return cls(tuple(parse_fibre(x) for x in labels), tuple(sorted(multiplicities)))

    def describe(self) -> str:
        counts: dict[int, int] = {}
        for k in self.fibres:
            counts[k] = counts.get(k, 0) + 1
        return ", ".join(f"I{k} x{c}" for k, c in sorted(counts.items()))


@dataclass
class ConfigurationReport:
    configuration: FibreConfiguration
    checks: dict[str, bool] = field(default_factory=dict)
    values: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def validate_configuration(cfg: FibreConfiguration) -> ConfigurationReport:
    rep = ConfigurationReport(cfg)
    rep.values["euler_total"] = cfg.euler_total
    rep.values["picard_total"] = cfg.picard_total
    rep.checks["euler"] = cfg.euler_total == EULER_TOTAL
    rep.checks["picard"] = cfg.picard_total == PICARD_RANK
    if cfg.multiplicities:
        rep.values["multiplicities"] = list(cfg.multiplicities)
        rep.checks["multiplicities"] = tuple(cfg.multiplicities) in ADMISSIBLE_MULTIPLICITIES
    return rep


# Singular fibres of the 7:3 quotient and of its order-7 cover.
QUOTIENT_7_3_FIBRES = ("I3",) * 4
ORDER_7_FIBRES = ("I1", "I1", "I1", "I9")
