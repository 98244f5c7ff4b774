"""Exact arithmetic in Q and in the cyclotomic field Q(zeta_p).

Rationals are :class:`fractions.Fraction`.  Elements of Q(zeta_p) are kept
in the power basis 1, zeta, ..., zeta^(p-2), reduced modulo the cyclotomic
polynomial Phi_p, so an element is rational exactly when every coordinate
except the first vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class CyclotomicError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _check_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def _reduce(p: int, raw: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Fold a coefficient list of arbitrary length into the power basis."""
    # zeta^p = 1 first, then zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    folded = [Fraction(0)] * p
    for k, c in enumerate(raw):
        if c:
            folded[k % p] += c
    top = folded[p - 1]
    return tuple(folded[k] - top for k in range(p - 1))


@dataclass(frozen=True)
class CyclotomicNumber:
    """An element of Q(zeta_p) in the reduced power basis."""

    prime: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.prime - 1:
            raise ValueError(
                f"expected {self.prime - 1} coordinates, got {len(self.coords)}"
            )
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def from_powers(cls, p: int, coeffs: Iterable) -> "CyclotomicNumber":
        """Build sum(coeffs[k] * zeta^k) for any number of coefficients."""
        _check_prime(p)
        return cls(p, _reduce(p, [Fraction(c) for c in coeffs]))

    @classmethod
    def rational(cls, p: int, value) -> "CyclotomicNumber":
        return cls.from_powers(p, [value])

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CyclotomicNumber":
        """zeta^k; negative exponents are taken mod p."""
        coeffs = [0] * p
        coeffs[k % p] = 1
        return cls.from_powers(p, coeffs)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self} is not rational")
        return self.coords[0]

    def __add__(self, other):
        return cyc_add(self, _coerce(self.prime, other))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.prime, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return cyc_add(self, -_coerce(self.prime, other))

    def __rsub__(self, other):
        return cyc_add(_coerce(self.prime, other), -self)

    def __mul__(self, other):
        return cyc_mul(self, _coerce(self.prime, other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return cyc_mul(self, cyc_inv(_coerce(self.prime, other)))

    def __rtruediv__(self, other):
        return cyc_mul(_coerce(self.prime, other), cyc_inv(self))

    def __pow__(self, k: int):
        if k < 0:
            return cyc_inv(self) ** (-k)
        result = CyclotomicNumber.rational(self.prime, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*z^{k}")
        return " + ".join(terms) or "0"


def _coerce(p: int, x) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CyclotomicNumber.rational(p, x)
    return NotImplemented


def _same_prime(x: CyclotomicNumber, y: CyclotomicNumber) -> int:
    if x.prime != y.prime:
        raise CyclotomicError(f"mismatched primes {x.prime} and {y.prime}")
    return x.prime


def cyc_add(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    _same_prime(x, y)
    return CyclotomicNumber(x.prime, tuple(a + b for a, b in zip(x.coords, y.coords)))


def cyc_mul(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    p = _same_prime(x, y)
    raw = [Fraction(0)] * (2 * p - 3)
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in enumerate(y.coords):
            if b:
                raw[i + j] += a * b
    return CyclotomicNumber(p, _reduce(p, raw))


def galois(x: CyclotomicNumber, k: int) -> CyclotomicNumber:
    """Apply the automorphism zeta -> zeta^k (k prime to p)."""
    p = x.prime
    if k % p == 0:
        raise CyclotomicError(f"k={k} is not a unit mod {p}")
    raw = [Fraction(0)] * p
    for j, c in enumerate(x.coords):
        raw[(j * k) % p] += c
    return CyclotomicNumber(p, _reduce(p, raw))


def norm(x: CyclotomicNumber) -> Fraction:
    """Field norm down to Q: the product of all Galois conjugates."""
    result = CyclotomicNumber.rational(x.prime, 1)
    for k in range(1, x.prime):
        result = cyc_mul(result, galois(x, k))
    return result.to_rational()


def cyc_inv(x: CyclotomicNumber) -> CyclotomicNumber:
    """Inverse as (product of the non-trivial conjugates) / norm."""
    if x.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(zeta)")
    p = x.prime
    cofactor = CyclotomicNumber.rational(p, 1)
    for k in range(2, p):
        cofactor = cyc_mul(cofactor, galois(x, k))
    n = cyc_mul(cofactor, x).to_rational()
    return CyclotomicNumber(p, tuple(c / n for c in cofactor.coords))


@lru_cache(maxsize=None)
def inv_one_minus_zeta(p: int, k: int) -> CyclotomicNumber:
    """1/(1 - zeta^k) = -(1/p) sum_l l zeta^(kl), from sum_l l x^l = p/(x - 1)."""
    if k % p == 0:
        raise ZeroDivisionError("1 - zeta^k vanishes for k = 0 mod p")
    coeffs = [Fraction(0)] * p
    for l in range(1, p):
        coeffs[(k * l) % p] = Fraction(-l, p)
    return CyclotomicNumber.from_powers(p, coeffs)


@lru_cache(maxsize=None)
def lefschetz_coefficient(p: int, i: int) -> Fraction:
    """Contribution a_i of an isolated fixed point of type 1/p(1, i).

    Evaluated from the sum over j of 1/((1 - zeta^j)(1 - zeta^(ij))) in
    Q(zeta_p), divided by p - 1.  Raises CyclotomicError if the sum fails
    to be rational, which can only mean an arithmetic bug.
    """
    _check_prime(p)
    if gcd(i, p) != 1:
        raise ValueError(f"i={i} must be prime to p={p}")
    total = CyclotomicNumber.rational(p, 0)
    for j in range(1, p):
        total = total + inv_one_minus_zeta(p, j) * inv_one_minus_zeta(p, i * j)
    return total.to_rational() / (p - 1)


def lefschetz_coefficients(p: int) -> dict[int, Fraction]:
    return {i: lefschetz_coefficient(p, i) for i in range(1, p)}


def trace_cubed_over_det(p: int = 7, exponents=(0, 1, 4), alpha=None) -> CyclotomicNumber:
    """tr(M)^3 / det(M) for M = alpha * diag(zeta^e for e in exponents).

    ``alpha`` may be any nonzero element of Q(zeta_p); it cancels.
    """
    if alpha is None:
        alpha = CyclotomicNumber.rational(p, 1)
    entries = [alpha * CyclotomicNumber.zeta(p, e) for e in exponents]
    tr = entries[0] + entries[1] + entries[2]
    det = entries[0] * entries[1] * entries[2]
    return tr ** 3 / det


def verify_trace_identity(p: int = 7) -> bool:
    """Check (1+z+z^4)^3 / z^5 == 6w^3 + w^2 - 15w + 5 with w = z + 1/z.

    Also require the left side to be fixed by complex conjugation, i.e.
    to lie in the real subfield Q(z + 1/z).
    """
    if p != 7:
        raise ValueError("the identity is stated for p = 7 only")
    z = CyclotomicNumber.zeta(p)
    lhs = (1 + z + z ** 4) ** 3 / z ** 5
    w = z + z ** -1
    rhs = 6 * w ** 3 + w ** 2 - 15 * w + 5
    return (lhs - rhs).is_zero() and galois(lhs, -1) == lhs
