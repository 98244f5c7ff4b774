"""Integral lattices, discriminant groups and the order-7 Picard lattice.

The ambient model is the orthogonal sum of the line spanned by the pullback
K of K_Z (with K^2 = 9/7) and three Hirzebruch-Jung chains of type
1/7(1,3), written in the order (-2)-(-2)-(-3):

    A1 - A2 - A3,   B1 - B2 - B3,   C1 - C2 - C3.

Every divisor class used below is a rational vector over this basis, so a
single bilinear form computes all intersection numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Mapping, Sequence

from . import linalg
from .quotsing import chain_gram

Vector = tuple[Fraction, ...]

CHAINS = ("A", "B", "C")
AMBIENT_LABELS = ("K",) + tuple(f"{c}{i}" for c in CHAINS for i in (1, 2, 3))
PICARD_LABELS = ("M", "L", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3")
CHAIN_BS = (2, 2, 3)
KZ_SQUARED = Fraction(9, 7)


@dataclass(frozen=True)
class IntegralLattice:
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != len(gram):
            raise ValueError("one label per basis vector")
        if not linalg.is_symmetric(gram):
            raise ValueError("Gram matrix must be symmetric")
        for row in gram:
            for x in row:
                if isinstance(x, Fraction) and x.denominator != 1:
                    raise ValueError(f"non-integral Gram entry {x}")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def as_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.gram]


def orthogonal_sum(*lats: IntegralLattice) -> IntegralLattice:
    labels = [lab for lat in lats for lab in lat.labels]
    n = len(labels)
    g = [[0] * n for _ in range(n)]
    off = 0
    for lat in lats:
        for i in range(lat.rank):
            for j in range(lat.rank):
                g[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    return IntegralLattice(tuple(labels), tuple(map(tuple, g)))


def chain_lattice(name: str, bs: Sequence[int] = CHAIN_BS) -> IntegralLattice:
    labels = tuple(f"{name}{i + 1}" for i in range(len(bs)))
    return IntegralLattice(labels, tuple(map(tuple, chain_gram(bs))))


def determinant(lat: IntegralLattice) -> int:
    return linalg.determinant([list(r) for r in lat.gram])


def smith_normal_form(m):
    return linalg.smith_normal_form(m)


def _mod(x: Fraction, n) -> Fraction:
    return x - n * (x / n).__floor__()


@dataclass(frozen=True)
class DiscriminantGroup:
    """Hom(N, Z)/N with its discriminant quadratic form.

    Generators are dual vectors written in the lattice basis; ``q_values``
    are their squares mod 2 in [0, 2), ``b_values`` the pairing matrix of
    the generators mod 1 in [0, 1).
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[Vector, ...]
    q_values: tuple[Fraction, ...]
    b_values: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def length(self) -> int:
        return len(self.invariant_factors)


def _canonical_cyclic_generator(g: Vector, d: int) -> Vector:
    """Among the unit multiples of g mod Z^n, pick the lexicographically least."""
    best = None
    for j in range(1, d):
        if gcd(j, d) != 1:
            continue
        cand = tuple(_mod(j * x, 1) for x in g)
        if best is None or cand < best:
            best = cand
    return best if best is not None else tuple(_mod(x, 1) for x in g)


def discriminant_group(lat: IntegralLattice) -> DiscriminantGroup:
    """Structure of the dual quotient from the Smith form U G V = D.

    For each diagonal entry d_i > 1 the vector V e_i / d_i lies in the dual
    lattice (G V e_i / d_i = U^-1 e_i is integral) and has order d_i.
    """
    g = [list(r) for r in lat.gram]
    if determinant(lat) == 0:
        raise ValueError("degenerate lattice has no finite discriminant group")
    _, d, v = linalg.smith_normal_form(g)
    factors, gens = [], []
    for i in range(lat.rank):
        di = d[i][i]
        if di > 1:
            col = tuple(Fraction(v[r][i], di) for r in range(lat.rank))
            factors.append(di)
            gens.append(_canonical_cyclic_generator(col, di))
    qs = tuple(_mod(linalg.bilinear(g, x, x), 2) for x in gens)
    bs = tuple(tuple(_mod(linalg.bilinear(g, x, y), 1) for y in gens) for x in gens)
    return DiscriminantGroup(tuple(factors), tuple(gens), qs, bs)


def is_dual_vector(lat: IntegralLattice, x: Sequence) -> bool:
    return all(Fraction(y).denominator == 1 for y in linalg.matvec(lat.gram, x))


# --- the rational ambient space ---------------------------------------------


@dataclass(frozen=True)
class RationalQuadraticSpace:
    labels: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    def vec(self, coeffs: Mapping[str, object]) -> Vector:
        unknown = set(coeffs) - set(self.labels)
        if unknown:
            raise KeyError(f"unknown basis labels {sorted(unknown)}")
        return tuple(Fraction(coeffs.get(lab, 0)) for lab in self.labels)

    def basis(self, label: str) -> Vector:
        return self.vec({label: 1})

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return linalg.bilinear(self.gram, u, v)

    def square(self, u: Sequence) -> Fraction:
        return self.pair(u, u)


def add(*terms) -> Vector:
    """Linear combination of (coefficient, vector) pairs."""
    n = len(terms[0][1])
    out = [Fraction(0)] * n
    for c, v in terms:
        for i, x in enumerate(v):
            out[i] += c * x
    return tuple(out)


@lru_cache(maxsize=None)
def ambient_space() -> RationalQuadraticSpace:
    n = len(AMBIENT_LABELS)
    g = [[Fraction(0)] * n for _ in range(n)]
    g[0][0] = KZ_SQUARED
    chain = chain_gram(CHAIN_BS)
    for c in range(3):
        off = 1 + 3 * c
        for i in range(3):
            for j in range(3):
                g[off + i][off + j] = Fraction(chain[i][j])
    return RationalQuadraticSpace(AMBIENT_LABELS, tuple(map(tuple, g)))


def chain_dual(space: RationalQuadraticSpace, chain: str) -> Vector:
    """(X1 + 2 X2 + 3 X3) / 7, the discrepancy-shaped dual vector of a chain."""
    return space.vec({f"{chain}1": Fraction(1, 7), f"{chain}2": Fraction(2, 7),
                      f"{chain}3": Fraction(3, 7)})


def canonical_class(space: RationalQuadraticSpace) -> Vector:
    """K_Y = K - sum over the three chains of (X1 + 2 X2 + 3 X3) / 7."""
    return add((1, space.basis("K")), *((-1, chain_dual(space, c)) for c in CHAINS))


def curve_classes(space: RationalQuadraticSpace) -> dict[str, Vector]:
    return {lab: space.basis(lab) for lab in AMBIENT_LABELS[1:]}


def is_integral(x) -> bool:
    return Fraction(x).denominator == 1


def glue_L(space: RationalQuadraticSpace, a: int, b: int) -> Vector:
    return add((1, chain_dual(space, "A")), (a, chain_dual(space, "B")),
               (b, chain_dual(space, "C")))


def search_glue_L(space: RationalQuadraticSpace) -> list[tuple[int, int]]:
    """Residues (a, b) mod 7 with L.K_Y and L^2 both integral."""
    ky = canonical_class(space)
    hits = []
    for a, b in product(range(7), repeat=2):
        L = glue_L(space, a, b)
        if is_integral(space.pair(L, ky)) and is_integral(space.square(L)):
            hits.append((a, b))
    return hits


# Fixing (a, b) = (2, 4) breaks the B <-> C symmetry.
CANONICAL_L = (2, 4)


def complement_generator(space: RationalQuadraticSpace) -> Vector:
    """Generator of <L>^perp / <L> in disc(R): (3 gB + 2 gC)."""
    return add((3, chain_dual(space, "B")), (2, chain_dual(space, "C")))


def glue_M(space: RationalQuadraticSpace, a: int) -> Vector:
    """K/3 + a (3 gB + 2 gC) with chain-dual coefficients reduced to [-3, 3]."""
    cb = _symmetric_residue(3 * a, 7)
    cc = _symmetric_residue(2 * a, 7)
    return add((Fraction(1, 3), space.basis("K")), (cb, chain_dual(space, "B")),
               (cc, chain_dual(space, "C")))


def _symmetric_residue(x: int, n: int) -> int:
    r = x % n
    return r - n if r > n // 2 else r


def search_glue_M(space: RationalQuadraticSpace, L: Vector | None = None) -> list[int]:
    """Residues a mod 7 for which the index-7 glue M has M.K_Y integral.

    Also checked: M^2, M.L and M against every exceptional curve are
    integral, so the survivors really extend R + <L> + R^perp.
    """
    if L is None:
        L = glue_L(space, *CANONICAL_L)
    ky = canonical_class(space)
    hits = []
    for a in range(7):
        M = glue_M(space, a)
        if not is_integral(space.pair(M, ky)):
            continue
        others = [space.square(M), space.pair(M, L)]
        others += [space.pair(M, c) for c in curve_classes(space).values()]
        if all(is_integral(x) for x in others):
            hits.append(a)
    return hits


def r_perp_generator(space: RationalQuadraticSpace) -> Vector:
    """(7/3) K: the primitive generator of the complement of the chains."""
    return space.vec({"K": Fraction(7, 3)})


def picard_vectors(space: RationalQuadraticSpace, L: Vector | None = None,
                   M: Vector | None = None) -> dict[str, Vector]:
    if L is None:
        L = glue_L(space, *CANONICAL_L)
    if M is None:
        (a,) = search_glue_M(space, L)
        M = glue_M(space, a)
    vecs = {"M": M, "L": L}
    for lab in PICARD_LABELS[2:]:
        vecs[lab] = space.basis(lab)
    return vecs


def rational_gram(space: RationalQuadraticSpace, vecs: Mapping[str, Vector]) -> list[list[Fraction]]:
    vs = list(vecs.values())
    return [[space.pair(u, v) for v in vs] for u in vs]


def build_picard_basis(space: RationalQuadraticSpace | None = None, L=None, M=None) -> IntegralLattice:
    """Gram matrix of (M, L, A2, A3, B1, B2, B3, C1, C2, C3).

    Raises ValueError if any intersection number is not an integer.
    """
    space = space or ambient_space()
    vecs = picard_vectors(space, L, M)
    g = rational_gram(space, vecs)
    bad = [(PICARD_LABELS[i], PICARD_LABELS[j], x)
           for i, row in enumerate(g) for j, x in enumerate(row) if not is_integral(x)]
    if bad:
        raise ValueError(f"non-integral intersection numbers: {bad[:3]}")
    return IntegralLattice(PICARD_LABELS, tuple(tuple(int(x) for x in row) for row in g))


def signature(lat: IntegralLattice) -> tuple[int, int]:
    return linalg.signature([list(r) for r in lat.gram])


def express_in_basis(space: RationalQuadraticSpace, basis: Sequence[Vector], x: Vector) -> list[Fraction]:
    """Coordinates of x in a basis of the ambient space."""
    return linalg.solve(linalg.transpose(basis), x)


def index_over_chains(space: RationalQuadraticSpace, vecs: Mapping[str, Vector]) -> Fraction:
    """Index of R + (R^perp) inside the lattice spanned by ``vecs``.

    A value of 7 * 7 = 49 is expected: L glues R to its primitive closure and
    M glues that to the complement (7/3)K.
    """
    sub = [space.basis(lab) for lab in AMBIENT_LABELS[1:]] + [r_perp_generator(space)]
    big = list(vecs.values())
    # |det(sub)| / |det(big)| in any common coordinates
    d_sub = linalg.determinant([list(v) for v in sub])
    d_big = linalg.determinant([list(v) for v in big])
    return abs(Fraction(d_sub) / Fraction(d_big))
