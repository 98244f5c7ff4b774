"""Named verifications with structured pass/fail reports."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from math import gcd
from typing import Any, Callable

from . import classify, exactmath, exclusion, fibration, lattice, quotsing
from .quotsing import SingularityType

SCHEMA_VERSION = 1
FIXTURE_ENV = "FPP_FIXTURE_DIR"


class CheckError(ValueError):
    pass


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files(__package__) / "fixtures"))


def load_fixture(name: str) -> dict:
    with open(fixture_dir() / name) as fh:
        return json.load(fh)


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (SingularityType, exactmath.CyclotomicNumber)):
        return str(x)
    if isinstance(x, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    return x


@dataclass
class Assertion:
    name: str
    passed: bool
    computed: Any
    expected: Any

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed),
                "computed": jsonable(self.computed), "expected": jsonable(self.expected)}


@dataclass
class VerificationReport:
    check: str
    anchor: str
    assertions: list[Assertion] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0
    error: str | None = None

    @property
    def status(self) -> str:
        ok = self.error is None and all(a.passed for a in self.assertions)
        return "pass" if ok else "fail"

    def first_failure(self) -> str | None:
        if self.error:
            return f"error: {self.error}"
        return next((a.name for a in self.assertions if not a.passed), None)

    def expect(self, name: str, computed, expected) -> bool:
        self.assertions.append(Assertion(name, computed == expected, computed, expected))
        return computed == expected

    def expect_true(self, name: str, value: bool, detail=None) -> bool:
        self.assertions.append(Assertion(name, bool(value), detail if detail is not None else value, True))
        return bool(value)

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "status": self.status,
            "assertions": [a.as_dict() for a in self.assertions],
            "details": jsonable(self.details),
            "error": self.error,
            "elapsed": round(self.elapsed, 6),
        }


# --- individual checks --------------------------------------------------------


def check_coeffs(rep: VerificationReport, opts: dict) -> None:
    for p in (3, 5, 7, 11, 13):
        rep.expect(f"a_1 for p={p}", exactmath.lefschetz_coefficient(p, 1), Fraction(5 - p, 12))
        rep.expect(f"a_2 for p={p}", exactmath.lefschetz_coefficient(p, 2), Fraction(11 - p, 24))
    sevens = [exactmath.lefschetz_coefficient(7, i) for i in range(1, 7)]
    rep.expect("a_1..a_6 for p=7", sevens,
               [Fraction(x, 6) for x in (-1, 1, 2, 1, 2, 4)])
    rep.details["p=7"] = sevens


def _profiles_json(profiles) -> list[dict]:
    out = [{str(t): r for t, r in prof.counts} for prof in profiles]
    return sorted(out, key=lambda d: sorted(d.items()))


def check_classify(rep: VerificationReport, opts: dict) -> None:
    fx = load_fixture("profiles.json")
    for p in (3, 7):
        got = _profiles_json(classify.enumerate_profiles(p, 3))
        rep.expect(f"profiles p={p}", got, _profiles_json_sorted(fx["profiles"][str(p)]))
        for prof in classify.enumerate_profiles(p, 3):
            rep.expect(f"Lefschetz sum of {prof}", classify.lefschetz_lhs(p, [], prof), 1)
    excluded = SingularityType.parse(fx["after_exclusion"]["excluded"])
    kept = classify.apply_type_exclusion(classify.enumerate_profiles(7, 3),
                                         quotsing.normalize(excluded))
    rep.expect("p=7 after excluding 1/7(1,4)", _profiles_json(kept),
               _profiles_json_sorted(fx["after_exclusion"]["7"]))
    rep.expect("fixed points r + e(C) = 3", classify.hurwitz_fixed_points(7, 3, 3, 0), 3)
    rows = classify.fixed_curve_obstruction(7) + classify.fixed_curve_obstruction(3)
    rep.expect_true("no fixed curve (r <= 5 violated)", not any(r["feasible"] for r in rows))


def _profiles_json_sorted(items: list[dict]) -> list[dict]:
    return sorted(items, key=lambda d: sorted(d.items()))


def check_resolve(rep: VerificationReport, opts: dict) -> None:
    t = SingularityType(7, 3)
    chain = quotsing.hj_expansion(t)
    disc = quotsing.discrepancies(t)
    # (-2)-(-2)-(-3) order is the reversal of the expansion of 7/3
    rep.expect("chain of 1/7(1,3) as (-2)-(-2)-(-3)", list(chain.reversed().self_intersections), [2, 2, 3])
    rep.expect("discrepancies (A1, A2, A3)", list(disc.coefficients[::-1]),
               [Fraction(1, 7), Fraction(2, 7), Fraction(3, 7)])
    rep.expect("D^2", disc.d_squared, Fraction(-3, 7))
    bad = [m for m in range(2, 51) for a in range(1, m)
           if gcd(m, a) == 1
           and quotsing.chain_determinant(quotsing.hj_expansion(SingularityType(m, a)).self_intersections) != m]
    rep.expect("|det chain| = m for m <= 50", bad, [])
    for order, expected in ((3, 3), (7, 0), (9, 1), (21, 0)):
        rep.expect(f"K_Y^2 for |G|={order}",
                   classify.quotient_invariants(order).resolved_K2, Fraction(expected))


def check_trace_identity(rep: VerificationReport, opts: dict) -> None:
    rep.expect("(1+z+z^4)^3/z^5 identity", exactmath.verify_trace_identity(7), True)
    z = exactmath.CyclotomicNumber.zeta(7)
    alpha = 2 + 3 * z
    rep.expect("scalar cancels", exactmath.trace_cubed_over_det(7, alpha=alpha),
               exactmath.trace_cubed_over_det(7))


def check_glue(rep: VerificationReport, opts: dict) -> None:
    space = lattice.ambient_space()
    R = lattice.orthogonal_sum(*(lattice.chain_lattice(c) for c in lattice.CHAINS))
    rep.expect("disc(R)", list(lattice.discriminant_group(R).invariant_factors), [7, 7, 7])
    rep.expect("L residues (a, b)", [list(x) for x in lattice.search_glue_L(space)], [[2, 4], [4, 2]])
    rep.expect("M residue a", lattice.search_glue_M(space), [4])
    L = lattice.glue_L(space, *lattice.CANONICAL_L)
    rep.expect("L^2", space.square(L), -9)
    rep.expect("(a, b) = (1, 1) gives L^2", space.square(lattice.glue_L(space, 1, 1)), Fraction(-9, 7))


def check_picard_matrix(rep: VerificationReport, opts: dict) -> None:
    fx = load_fixture("picard_matrix.json")
    lat = lattice.build_picard_basis()
    rep.expect("labels", list(lat.labels), fx["labels"])
    rep.expect("matrix equals fixture", lat.as_lists(), fx["matrix"])
    rep.expect("determinant", lattice.determinant(lat), fx["determinant"])
    rep.expect("signature", list(lattice.signature(lat)), fx["signature"])
    rep.details["matrix"] = lat.as_lists()


def check_exclude(rep: VerificationReport, opts: dict) -> None:
    ms = [opts["m"]] if opts.get("m") is not None else [1, 2]
    gram = exclusion.picard_gram()
    for m in ms:
        verdict = exclusion.full_verdict(m)
        rep.details[f"m={m}"] = verdict.as_dict()
        if m == 1:
            fx = load_fixture("stage1_m1.json")
            rep.expect("m=1 stage-1 list equals fixture",
                       [list(t) for t in verdict.stage1], fx["tuples"])
        rep.expect(f"m={m} bounds d range", list(verdict.d_range), [0, {1: 50, 2: 65}[m]])
        rep.expect(f"m={m} survivors of quadratic test", [list(t) for t in verdict.survivors], [])
        witnesses = [w for t in verdict.stage1 for w in exclusion.exhaustive_oracle(m, t, gram)]
        rep.expect(f"m={m} exhaustive oracle finds no (-1)-curve", witnesses, [])
        path = opts.get("emit_list")
        if path:
            target = Path(path.format(m=m) if "{m}" in path else path)
            if len(ms) > 1 and "{m}" not in path:
                target = target.with_name(f"{target.stem}_m{m}{target.suffix}")
            target.write_text(json.dumps({"version": 1, "m": m,
                                          "fields": ["d", "a3", "b3", "c3"],
                                          "tuples": [list(t) for t in verdict.stage1]}) + "\n")
            rep.details[f"m={m}"]["emitted"] = str(target)


def check_fibres(rep: VerificationReport, opts: dict) -> None:
    fx = load_fixture("fibre_solutions.json")
    ns = [opts["n"]] if opts.get("n") is not None else range(1, 13)
    for n in ns:
        got = sorted(list(s.multiplicities) for s in fibration.solve_multiplicities(n))
        rep.details[f"n={n}"] = got
        if str(n) in fx["solutions"]:
            rep.expect(f"solutions n={n}", got, sorted(fx["solutions"][str(n)]))
    if opts.get("n") is None:
        rep.expect("admissible after geometric filter",
                   sorted(list(x) for x in fibration.admissible_multiplicities(12)),
                   fx["admissible"])
        for labels in (fibration.QUOTIENT_7_3_FIBRES, fibration.ORDER_7_FIBRES):
            cfg = fibration.FibreConfiguration.from_labels(labels, (2, 3))
            res = fibration.validate_configuration(cfg)
            rep.expect(f"{cfg.describe()}: Euler sum", res.values["euler_total"], 12)
            rep.expect(f"{cfg.describe()}: Picard total", res.values["picard_total"], 10)


def check_quotient_invariants(rep: VerificationReport, opts: dict) -> None:
    orders = [opts["order"]] if opts.get("order") is not None else [3, 7, 9, 21]
    expected = {
        3: (Fraction(3), ["1/3(1,2)"] * 3, 3),
        7: (Fraction(9, 7), ["1/7(1,3)"] * 3, 0),
        9: (Fraction(1), ["1/3(1,2)"] * 4, 1),
        21: (Fraction(3, 7), ["1/3(1,2)"] * 3 + ["1/7(1,3)"], 0),
    }
    for order in orders:
        inv = classify.quotient_invariants(order)
        rep.details[f"|G|={order}"] = {
            "K_Z^2": inv.kz_squared, "singularities": [str(s) for s in inv.singularities],
            "K_Y^2": inv.resolved_K2,
        }
        if order in expected:
            kz2, sings, ky2 = expected[order]
            rep.expect(f"K_Z^2 for |G|={order}", inv.kz_squared, kz2)
            rep.expect(f"singularities for |G|={order}", [str(s) for s in inv.singularities], sings)
            rep.expect(f"K_Y^2 for |G|={order}", inv.resolved_K2, Fraction(ky2))


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[VerificationReport, dict], None]


CHECKS = {c.name: c for c in (
    Check("coeffs", "holomorphic Lefschetz coefficients a_i = 1/(p-1) sum_j 1/((1-z^j)(1-z^ij))",
          check_coeffs),
    Check("classify", "fixed-point profiles of automorphisms of order 3 and 7; no 1/7(1,4) points",
          check_classify),
    Check("resolve", "K_Y = nu*K_Z - (1/7)(A1+2A2+3A3) - ..., K_Y^2 = 0; K^2 of the quotient resolutions",
          check_resolve),
    Check("trace-identity", "(1+z+z^4)^3/z^5 = 6w^3 + w^2 - 15w + 5 with w = z + 1/z, z^7 = 1",
          check_trace_identity),
    Check("glue", "glue vectors L with (a,b) = (2,4) or (4,2) mod 7 and M with a = 4 mod 7",
          check_glue),
    Check("picard-matrix", "intersection matrix of M, L, A2, A3, B1, B2, B3, C1, C2, C3 (det -1)",
          check_picard_matrix),
    Check("exclude", "no (-1)-curve E with 0 < E.nu*K_Z < 9/7 on the order-7 resolution",
          check_exclude),
    Check("fibres", "1/n = r - 1 - sum 1/m_i: multiple fibres (2,3), (2,4) or (3,3); I3 x4 and I1 x3 + I9",
          check_fibres),
    Check("quotient-invariants", "K_Z^2 = 9/|G| and singularities of X/G for |G| = 3, 7, 9, 21",
          check_quotient_invariants),
)}


def run(check: str, options: dict | None = None) -> list[VerificationReport]:
    """Run one named check, or every check (sorted by name) for 'all'."""
    options = options or {}
    if check == "all":
        names = sorted(CHECKS)
    elif check in CHECKS:
        names = [check]
    else:
        raise CheckError(f"unknown check {check!r}; choose from {sorted(CHECKS) + ['all']}")
    reports = []
    for name in names:
        c = CHECKS[name]
        rep = VerificationReport(c.name, c.anchor)
        start = time.perf_counter()
        try:
            c.run(rep, options if check != "all" else {})
        except (OSError, ValueError, KeyError, ArithmeticError, AssertionError) as exc:
            rep.error = f"{type(exc).__name__}: {exc}"
        rep.elapsed = time.perf_counter() - start
        reports.append(rep)
    return reports


def to_json(reports: list[VerificationReport]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "status": "pass" if all(r.status == "pass" for r in reports) else "fail",
        "reports": [r.as_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def to_text(reports: list[VerificationReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"== {r.check} [{r.status.upper()}] ({r.elapsed:.3f}s)")
        lines.append(f"   anchor: {r.anchor}")
        for a in r.assertions:
            mark = "ok  " if a.passed else "FAIL"
            line = f"   {mark} {a.name}"
            if not a.passed:
                line += f": computed {jsonable(a.computed)!r}, expected {jsonable(a.expected)!r}"
            lines.append(line)
        if r.error:
            lines.append(f"   FAIL {r.error}")
    failed = [r for r in reports if r.status == "fail"]
    if failed:
        lines.append(f"FAILED: {failed[0].check}: {failed[0].first_failure()}")
    else:
        lines.append(f"all {len(reports)} check(s) passed")
    return "\n".join(lines)
