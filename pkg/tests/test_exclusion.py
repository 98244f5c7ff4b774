import json
import random
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from fpp_quotients import exclusion, lattice
from fpp_quotients.exclusion import (
    AffineForm,
    CurveCandidate,
    Stage1Tuple,
    build_system,
    derive_bounds,
    enumerate_stage1,
    exhaustive_oracle,
    full_verdict,
    quadratic_test,
    self_intersection,
)

FIXTURES = Path(lattice.__file__).parent / "fixtures"
# the acceptance suite repeats the identity checks on 10^4 candidates
N_RANDOM = 2_000


@pytest.fixture(scope="module")
def gram():
    return exclusion.picard_gram()


@pytest.fixture(scope="module")
def golden_list():
    data = json.loads((FIXTURES / "stage1_m1.json").read_text())
    return [Stage1Tuple(*t) for t in data["tuples"]]


def test_system_forms():
    s1, s2 = build_system(1), build_system(2)
    assert s1.form("C3") == AffineForm.make(-1, d=4, c2=1, c3=-3)
    assert s2.form("C3") == AffineForm.make(-2, d=4, c2=1, c3=-3)
    assert s1.form("B3") == AffineForm.make(2, d=2, b2=1, b3=-3)
    assert s2.form("B3") == AffineForm.make(4, d=2, b2=1, b3=-3)
    for s in (s1, s2):
        assert s.equality == AffineForm.make(1, d=-3, a3=1, b3=1, c3=1)
        assert s.form("A1") == AffineForm.make(a2=1)


@pytest.mark.parametrize("m", [1, 2])
def test_handwritten_matches_gram(m):
    assert exclusion._handwritten_system(m) == exclusion.gram_derived_system(m)


def test_invalid_m():
    for m in (0, 3, -1):
        with pytest.raises(ValueError, match="9/7"):
            build_system(m)
        with pytest.raises(ValueError):
            full_verdict(m)


def test_bounds():
    b1 = derive_bounds(build_system(1))
    b2 = derive_bounds(build_system(2))
    assert (b1.d_min, b1.d_max) == (0, 50)
    assert (b2.d_min, b2.d_max) == (0, 65)
    for b, m in ((b1, 1), (b2, 2)):
        for d in range(0, 70):
            assert b.bound("a3", d) == Fraction(2 * d, 5)
            assert b.bound("b3", d) == Fraction(3, 7) * (2 * m + 2 * d)
            assert b.bound("c3", d) == Fraction(3, 7) * (-m + 4 * d)
    assert [b1.floor_bound(v, 5) for v in ("a3", "b3", "c3")] == [2, 5, 8]


def test_stage1_matches_golden(golden_list):
    got = enumerate_stage1(1)
    assert got == golden_list
    assert len(got) == 26
    assert got[0] == (40, 16, 35, 68) and got[-1] == (0, 0, 0, -1)
    assert [t for t in got if t.d == 5] == [(5, 2, 5, 7), (5, 2, 4, 8), (5, 1, 5, 8)]


def brute_stage1(m):
    """Scan a box for (d, a3, b3, c3) meeting the equality and the bounds."""
    b = derive_bounds(build_system(m))
    out = []
    for d in range(0, b.d_max + 5):
        # x <= q with x an integer is the same as x <= floor(q)
        ka, kb, kc = (b.floor_bound(v, d) for v in ("a3", "b3", "c3"))
        for a3, b3 in product(range(0, 32), range(-10, 66)):
            c3 = 3 * d - 1 - a3 - b3
            if a3 <= ka and b3 <= kb and c3 <= kc:
                out.append(Stage1Tuple(d, a3, b3, c3))
    return sorted(out, reverse=True)


@pytest.mark.parametrize("m", [1, 2])
def test_stage1_against_box_scan(m):
    assert enumerate_stage1(m) == brute_stage1(m)


def test_stage1_order_descending():
    for m in (1, 2):
        got = enumerate_stage1(m)
        assert got == sorted(got, reverse=True)


def test_quadratic_examples():
    assert exclusion.quadratic_sides(1, Stage1Tuple(0, 0, 0, -1)) == (1, Fraction(-1, 3))
    assert exclusion.quadratic_sides(1, Stage1Tuple(1, 0, 1, 1)) == (6, Fraction(16, 3))
    assert not quadratic_test(1, Stage1Tuple(0, 0, 0, -1))
    assert not quadratic_test(1, Stage1Tuple(1, 0, 1, 1))


def printed_quadratic(m, t):
    """The two displayed inequalities, typed in as printed."""
    d, a3, b3, c3 = t
    rhs = (Fraction(-5, 2) * a3 ** 2 - Fraction(7, 3) * b3 ** 2 - Fraction(7, 3) * c3 ** 2)
    if m == 1:
        return 1 + 3 * d * d + 2 * d <= rhs + (4 + 2 * d) * b3 + (6 * d - 2) * c3
    return 7 + 3 * d * d + 2 * d <= rhs + (8 + 2 * d) * b3 + (6 * d - 4) * c3


@pytest.mark.parametrize("m", [1, 2])
def test_quadratic_matches_printed(m):
    rng = random.Random(m)
    for _ in range(2000):
        t = Stage1Tuple(*(rng.randint(-30, 70) for _ in range(4)))
        assert quadratic_test(m, t) == printed_quadratic(m, t)


@pytest.mark.parametrize("m", [1, 2])
def test_all_stage1_fail_quadratic(m):
    assert not any(quadratic_test(m, t) for t in enumerate_stage1(m))


@pytest.mark.parametrize("m", [1, 2])
def test_exhaustive_oracle_finds_nothing(m, gram):
    for t in enumerate_stage1(m):
        assert exhaustive_oracle(m, t, gram) == []


def test_oracle_agrees_with_brute_force(gram):
    # Brute-force every completion of a few small tuples inside a box, then
    # ask the oracle for each self-intersection value that occurs.  This
    # checks the witness path with targets that do have solutions.
    checked = 0
    box = range(-4, 5)
    for m in (1, 2):
        system = build_system(m)
        for t in enumerate_stage1(m)[-3:]:
            fixed = {"d": t.d, "a3": t.a3, "b3": t.b3, "c3": t.c3}
            assert system.equality(fixed) == 0
            # each inequality involves d and one chain only, so filter per chain
            ok_a = [a2 for a2 in range(0, 3)
                    if all(system.form(c)({**fixed, "a2": a2}) >= 0 for c in ("A1", "A2", "A3"))]
            ok_b = [(x1, x2) for x1, x2 in product(box, box)
                    if all(system.form(c)({**fixed, "b1": x1, "b2": x2}) >= 0
                           for c in ("B1", "B2", "B3"))]
            ok_c = [(x1, x2) for x1, x2 in product(box, box)
                    if all(system.form(c)({**fixed, "c1": x1, "c2": x2}) >= 0
                           for c in ("C1", "C2", "C3"))]
            seen = {}
            for a2, (b1, b2), (c1, c2) in product(ok_a, ok_b, ok_c):
                cand = CurveCandidate(m, t.d, a2, t.a3, b1, b2, t.b3, c1, c2, t.c3)
                seen.setdefault(self_intersection(cand, gram), cand)
            for value, cand in seen.items():
                assert system.satisfied_by(cand.point())
                hits = exhaustive_oracle(m, t, gram, target=value)
                assert hits and all(self_intersection(h, gram) == value for h in hits)
                checked += 1
            if seen:
                assert exhaustive_oracle(m, t, gram, target=min(seen) - 1000) == []
    assert checked > 0


@pytest.mark.parametrize("m", [1, 2])
def test_verdict(m):
    v = full_verdict(m)
    assert v.survivors == []
    assert v.pullback_degree == Fraction(3 * m, 7)
    assert 0 < v.pullback_degree < Fraction(9, 7)
    if m == 1:
        assert len(v.stage1) == 26
    d = v.as_dict()
    assert d["survivors"] == 0 and d["stage1"] == len(v.stage1)


def chain_square(gram, idx, coeffs):
    return sum(coeffs[i] * gram[idx[i]][idx[j]] * coeffs[j]
               for i in range(len(idx)) for j in range(len(idx)))


def test_completing_square_identities(gram):
    rng = random.Random(2024)
    for _ in range(N_RANDOM):
        a2, a3, b1, b2, b3 = (rng.randint(-200, 200) for _ in range(5))
        qa = chain_square(gram, [2, 3], [a2, a3])
        assert qa == -2 * Fraction(a2 - Fraction(a3, 2)) ** 2 - Fraction(5, 2) * a3 ** 2
        assert qa == -2 * a2 ** 2 + 2 * a2 * a3 - 3 * a3 ** 2
        qb = chain_square(gram, [4, 5, 6], [b1, b2, b3])
        assert qb == (-2 * (b1 - Fraction(b2, 2)) ** 2
                      - Fraction(3, 2) * (b2 - Fraction(2, 3) * b3) ** 2
                      - Fraction(7, 3) * b3 ** 2)
        assert qa <= -Fraction(5, 2) * a3 ** 2
        assert qb <= -Fraction(7, 3) * b3 ** 2


@pytest.mark.parametrize("m", [1, 2])
def test_self_intersection_identity(m, gram):
    rng = random.Random(100 + m)
    for _ in range(N_RANDOM):
        d = rng.randint(-60, 60)
        a2, a3, b1, b2, b3, c1, c2 = (rng.randint(-80, 80) for _ in range(7))
        c3 = 3 * d - 1 - a3 - b3  # E.K_Y = -1
        e = CurveCandidate(m, d, a2, a3, b1, b2, b3, c1, c2, c3)
        qa = -2 * a2 ** 2 + 2 * a2 * a3 - 3 * a3 ** 2
        qb = -2 * b1 ** 2 - 2 * b2 ** 2 - 3 * b3 ** 2 + 2 * b1 * b2 + 2 * b2 * b3
        qc = -2 * c1 ** 2 - 2 * c2 ** 2 - 3 * c3 ** 2 + 2 * c1 * c2 + 2 * c2 * c3
        lhs = 3 * d * d + 2 * d + 2 * m * m - 1
        rhs = (4 * m + 2 * d) * b3 + (6 * d - 2 * m) * c3 + qa + qb + qc
        # E^2 = -1 exactly when the rearranged identity balances
        assert self_intersection(e, gram) + 1 == rhs - lhs


def linear(form, names):
    """The form as (const, coefficient tuple) in the given variable order."""
    return form.const, tuple(form.coeff(v) for v in names)


def feasible(forms, values):
    return all(c + sum(k * x for k, x in zip(ks, values)) >= 0 for c, ks in forms)


def test_bound_soundness_exhaustive():
    """Each chain's derived bound holds at every feasible point of a box."""
    for m in (1, 2):
        s = build_system(m)
        b = derive_bounds(s)
        box = range(-8, 9)
        fa = [linear(s.form(c), ("d", "a2", "a3")) for c in ("A1", "A2", "A3")]
        for d in range(-2, 11):
            for a2, a3 in product(box, box):
                if feasible(fa, (d, a2, a3)):
                    assert a3 <= b.bound("a3", d)
                    assert d >= 0
            for chain in ("B", "C"):
                x = chain.lower()
                names = ("d", f"{x}1", f"{x}2", f"{x}3")
                forms = [linear(s.form(f"{chain}{j}"), names) for j in (1, 2, 3)]
                top = b.floor_bound(f"{x}3", d)
                for x1, x2, x3 in product(box, box, box):
                    if feasible(forms, (d, x1, x2, x3)):
                        assert x3 <= top


def test_bound_soundness_random():
    rng = random.Random(7)
    names = {x: ("d", f"{x}1", f"{x}2", f"{x}3") for x in "bc"}
    prepared = {}
    for m in (1, 2):
        s = build_system(m)
        prepared[m] = (derive_bounds(s), {
            x: [linear(s.form(f"{x.upper()}{j}"), names[x]) for j in (1, 2, 3)] for x in "bc"})
    hits = 0
    for _ in range(N_RANDOM):
        m = rng.choice((1, 2))
        b, forms = prepared[m]
        d = rng.randint(0, 70)
        b3 = rng.randint(-20, 70)
        b2 = rng.randint(-20, 50)
        b1 = rng.randint(-20, 30)
        c3 = rng.randint(-20, 130)
        c2 = rng.randint(-20, 90)
        c1 = rng.randint(-20, 50)
        if feasible(forms["b"], (d, b1, b2, b3)):
            hits += 1
            assert b3 <= b.bound("b3", d)
        if feasible(forms["c"], (d, c1, c2, c3)):
            hits += 1
            assert c3 <= b.bound("c3", d)
    assert hits > 0
