"""The acceptance grid: every identity and property check, seeded and reproducible.

Each criterion is a function ``(seed, limit) -> CriterionResult``; its random
draws come from ``default_rng([seed, number])`` so criteria are independent
of each other and of execution order.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .convolutions import PuncturedCube, convolution_fourier_check, degenerate_cubic_probe
from .cube_spaces import CubeSpaceSpec, exact_degree
from .cubes import CubePoint
from .fourier import dft, parseval_check
from .functions import FunctionCube, GroupFunction
from .gowers import (
    character_cube_product,
    dual_uniformity_norm,
    inner_product,
    inner_product_primal,
    inner_product_recursive,
    uniformity_norm,
)
from .groups import as_group
from .io import phase_polynomial
from .lattice import (
    IntLattice,
    cube_subgroup,
    lattice_cube_space,
    parity_signature,
    poisson_check,
    signed_dual_subgroup,
    signed_orthogonal_lattice,
)
from .oracle import brute_cube_space_indices, brute_signed_dual
from .reports import IdentityReport, residual, to_jsonable
from .subgroups import DEFAULT_LIMIT, ExplicitSubgroup

TOLERANCE = 1e-9
MAX_REPORTED_FAILURES = 5

FIXTURE_LATTICES = {
    "roth": (IntLattice.from_rows([[1, -2, 1]]), (0, 0, 0)),
    "gowers": (IntLattice.from_rows([[1, -1, -1, 1]]), (0, 1, 1, 0)),
}


@dataclass
class CriterionResult:
    number: int
    name: str
    reports: list[IdentityReport]
    informational: bool = False
    details: dict = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def failures(self) -> list[IdentityReport]:
        return [r for r in self.reports if not r.passed]

    @property
    def passed(self) -> bool:
        return self.informational or not self.failures

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.reports if not r.informational), default=0.0)

    def summary(self) -> str:
        status = "INFO" if self.informational else ("PASS" if self.passed else "FAIL")
        text = f"[{status}] criterion {self.number} {self.name}: {len(self.reports)} checks"
        if not self.informational:
            text += f", {len(self.failures)} failed, max residual {self.max_residual:.3e}"
        for key, value in self.details.items():
            text += f", {key}={value}"
        return text

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "informational": self.informational,
            "checks": len(self.reports),
            "failures": len(self.failures),
            "max_residual": self.max_residual,
            "details": self.details,
            "failed_reports": [r.to_dict() for r in self.failures[:MAX_REPORTED_FAILURES]],
        }
        if timing and self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return to_jsonable(out)


def _rng(seed: int, number: int) -> np.random.Generator:
    return np.random.default_rng([seed, number])


def _bound_report(check: str, value: float, bound: float, tolerance: float, **params) -> IdentityReport:
    """An inequality ``value <= bound``; the residual is the excess over the bound."""
    return IdentityReport(
        check=check,
        lhs=value,
        rhs=bound,
        residual=max(0.0, value - bound),
        params=params,
        tolerance=tolerance,
    )


# -- 1, 2: Parseval ----------------------------------------------------------------


def parseval_sweep(seed: int = 0, limit: int = DEFAULT_LIMIT, trials: int = 10) -> CriterionResult:
    rng = _rng(seed, 1)
    reports = []
    for g in ("4", "5", "6", "2x2"):
        for d in range(4):
            for l in range(-1, d + 1):
                for _ in range(trials):
                    reports.append(parseval_check(FunctionCube.random(g, d, rng), l, limit, TOLERANCE))
    return CriterionResult(1, "parseval-sweep", reports)


def u3_isometry(seed: int = 0, limit: int = DEFAULT_LIMIT, trials: int = 10) -> CriterionResult:
    rng = _rng(seed, 2)
    reports = []
    for g in ("5", "2x2"):
        for _ in range(trials):
            f = GroupFunction.random(g, rng)
            lhs = uniformity_norm(f, 3, 1, limit, method="primal")
            rhs = dual_uniformity_norm(dft(f), 3, 1, limit)
            reports.append(
                IdentityReport("u3-isometry", lhs, rhs, residual(lhs, rhs), {"group": g, "d": 3, "l": 1}, tolerance=TOLERANCE)
            )
    return CriterionResult(2, "u3-isometry", reports)


# -- 3: orthogonality ------------------------------------------------------------


def orthogonality_report(P: CubePoint, limit: int = DEFAULT_LIMIT, tolerance: float = 1e-10) -> IdentityReport:
    """Values of a character cube for every l against ``[deg P + l < d]``."""
    d = P.d
    levels = list(range(-1, d + 1))
    k = exact_degree(P)
    values = np.array([character_cube_product(P, l, limit) for l in levels])
    expected = np.array([1.0 if k + l < d else 0.0 for l in levels])
    return IdentityReport(
        "orthogonality",
        values,
        expected,
        float(np.max(np.abs(values - expected))),
        {"group": str(P.spec), "d": d, "cube": P.to_list(), "degree": k, "l": levels},
        tolerance=tolerance,
    )


def orthogonality_reports(group, d: int, limit: int = DEFAULT_LIMIT, tolerance: float = 1e-10):
    """One report per character cube of Ĝ^{2^d}."""
    spec = as_group(group)
    for idx in itertools.product(range(spec.cardinality), repeat=1 << d):
        yield orthogonality_report(CubePoint.from_indices(spec, idx), limit, tolerance)


def orthogonality_exhaustive(seed: int = 0, limit: int = DEFAULT_LIMIT) -> CriterionResult:
    reports = list(orthogonality_reports("3", 2, limit)) + list(orthogonality_reports("2", 3, limit))
    return CriterionResult(3, "orthogonality-exhaustive", reports, details={"character_cubes": len(reports)})


# -- 4: oracle equivalence ---------------------------------------------------------


def oracle_equivalence(seed: int = 0, limit: int = DEFAULT_LIMIT) -> CriterionResult:
    reports = []
    for g in ("2", "3", "4", "2x2"):
        group = as_group(g)
        for d in range(4):
            for l in range(-1, d + 1):
                space = CubeSpaceSpec(group, d, l)
                brute = ExplicitSubgroup(group, brute_cube_space_indices(group, d, l), check=False)
                formula = group.cardinality ** sum(math.comb(d, i) for i in range(0, min(l, d) + 1))
                same = space.subgroup().same_elements(brute, limit)
                ok = same and brute.cardinality == formula == space.cardinality
                reports.append(
                    IdentityReport(
                        "cube-space-oracle",
                        space.cardinality,
                        brute.cardinality,
                        0.0 if ok else 1.0,
                        {"group": g, "d": d, "l": l, "formula": formula, "same_elements": same},
                        tolerance=0.5,
                    )
                )
    return CriterionResult(4, "oracle-equivalence", reports)


# -- 5: inequalities ---------------------------------------------------------------


def inequality_battery(seed: int = 0, limit: int = DEFAULT_LIMIT, group="3") -> CriterionResult:
    rng = _rng(seed, 5)
    reports = []
    spec = as_group(group)
    norm_pairs = [(d, l) for d in range(1, 4) for l in range(0, d + 1)]
    for d, l in norm_pairs:
        for _ in range(200):
            F = FunctionCube.random(spec, d, rng)
            value = abs(inner_product(F, l, limit, method="auto"))
            bound = float(np.prod([uniformity_norm(f, d, l, limit) for f in F.entries]))
            reports.append(_bound_report("cauchy-schwarz-gowers", value, bound, TOLERANCE, d=d, l=l))
    for d, l in norm_pairs:
        for _ in range(200):
            f, g = GroupFunction.random(spec, rng), GroupFunction.random(spec, rng)
            value = uniformity_norm(f + g, d, l, limit)
            bound = uniformity_norm(f, d, l, limit) + uniformity_norm(g, d, l, limit)
            reports.append(_bound_report("minkowski", value, bound, TOLERANCE, d=d, l=l))
    for d in (2, 3):
        for l in range(0, d):
            for _ in range(100):
                f = GroupFunction.random(spec, rng)
                value = uniformity_norm(f, d - 1, l, limit)
                bound = uniformity_norm(f, d, l, limit)
                reports.append(_bound_report("monotone-in-d", value, bound, TOLERANCE, d=d, l=l))
    return CriterionResult(5, "inequality-battery", reports, details={"group": str(spec)})


# -- 6: recursive formulas --------------------------------------------------------


def recursive_cross_validation(seed: int = 0, limit: int = DEFAULT_LIMIT, trials: int = 50, group="3") -> CriterionResult:
    rng = _rng(seed, 6)
    reports = []
    for d in range(1, 4):
        for l in range(0, d + 1):
            for t in range(trials):
                F = FunctionCube.random(group, d, rng)
                i = 1 + t % d
                direct = inner_product_primal(F, l, limit)
                for mode in ("face-product", "corner-split"):
                    value = inner_product_recursive(F, l, i, mode, limit)
                    reports.append(
                        IdentityReport(
                            "recursive-" + mode,
                            direct,
                            value,
                            residual(direct, value),
                            {"group": str(group), "d": d, "l": l, "i": i},
                            tolerance=TOLERANCE,
                        )
                    )
    return CriterionResult(6, "recursive-formulas", reports)


# -- 7, 8: Poisson and lattice duality --------------------------------------------


def poisson_fixtures(seed: int = 0, limit: int = DEFAULT_LIMIT, trials: int = 50) -> CriterionResult:
    rng = _rng(seed, 7)
    reports = []
    for name, (L, signs) in FIXTURE_LATTICES.items():
        for g in ("5", "7"):
            group = as_group(g)
            H = lattice_cube_space(L, group)
            dual = signed_dual_subgroup(H, signs, limit=limit)
            for affine in (False, True):
                for _ in range(trials):
                    fs = [GroupFunction.random(group, rng) for _ in range(L.k)]
                    t = rng.integers(0, group.cardinality, size=L.k).tolist() if affine else None
                    rep = poisson_check(fs, H, signs, t=t, dual=dual, limit=limit, tolerance=TOLERANCE)
                    rep.params["fixture"] = name
                    reports.append(rep)
    # the cube-space instance reproduces the Parseval identity
    H = cube_subgroup("4", 3, 1)
    dual = signed_dual_subgroup(H, parity_signature(3), limit=limit)
    for _ in range(10):
        F = FunctionCube.random("4", 3, rng)
        pois = poisson_check(F.entries, H, parity_signature(3), dual=dual, limit=limit)
        pars = parseval_check(F, 1, limit)
        gap = max(residual(pars.lhs, pois.lhs), residual(pars.rhs, pois.rhs), pois.residual)
        reports.append(
            IdentityReport(
                "poisson-vs-parseval",
                [pois.lhs, pois.rhs],
                [pars.lhs, pars.rhs],
                gap,
                {"group": "4", "d": 3, "l": 1},
                tolerance=TOLERANCE,
            )
        )
    return CriterionResult(7, "poisson-formula", reports)


def lattice_duality(seed: int = 0, limit: int = DEFAULT_LIMIT) -> CriterionResult:
    reports = []
    for name, (L, signs) in FIXTURE_LATTICES.items():
        perp = signed_orthogonal_lattice(L, signs)
        for g in ("3", "4", "5"):
            group = as_group(g)
            H = lattice_cube_space(L, group)
            structured = lattice_cube_space(perp, group)
            brute = brute_signed_dual(H, signs)
            same = structured.same_elements(brute, limit)
            sizes_ok = H.cardinality * structured.cardinality == group.cardinality**L.k
            reports.append(
                IdentityReport(
                    "lattice-duality",
                    structured.cardinality,
                    brute.cardinality,
                    0.0 if same and sizes_ok else 1.0,
                    {"fixture": name, "group": g, "orthogonal_generators": [list(v) for v in perp.generators]},
                    sizes={"H": H.cardinality, "dual": structured.cardinality},
                    tolerance=0.5,
                )
            )
    return CriterionResult(8, "lattice-duality", reports)


# -- 9: corner convolutions ------------------------------------------------------


def corner_convolution_identity(seed: int = 0, limit: int = DEFAULT_LIMIT, trials: int = 20) -> CriterionResult:
    rng = _rng(seed, 9)
    reports = []
    for d, l in ((2, 1), (3, 1), (3, 2)):
        for _ in range(trials):
            reports.append(convolution_fourier_check(PuncturedCube.random("4", d, rng), l, limit, TOLERANCE))
    return CriterionResult(9, "corner-convolution", reports)


# -- 10: phase polynomials --------------------------------------------------------

PHASE_POLYNOMIAL_CASES = (("x^2", 3, 1), ("x^3", 4, 1), ("x^2", 4, 2))


def phase_polynomial_detection(seed: int = 0, limit: int = DEFAULT_LIMIT) -> CriterionResult:
    reports = []
    for poly, d, l in PHASE_POLYNOMIAL_CASES:
        value = uniformity_norm(phase_polynomial("7", poly), d, l, limit, method="auto")
        reports.append(
            IdentityReport(
                "phase-polynomial-norm",
                value,
                1.0,
                residual(value, 1.0),
                {"group": "7", "polynomial": poly, "d": d, "l": l},
                tolerance=TOLERANCE,
            )
        )
    return CriterionResult(10, "phase-polynomial-detection", reports)


# -- 11: degenerate cubic --------------------------------------------------------


def degenerate_cubic(seed: int = 0, limit: int = DEFAULT_LIMIT, trials: int = 2000) -> CriterionResult:
    rep = degenerate_cubic_probe("5", trials=trials, seed=int(_rng(seed, 11).integers(2**32)))
    details = {"min_real": rep.params["min_real"], "negative_found": rep.params["negative_found"]}
    return CriterionResult(11, "degenerate-cubic-probe", [rep], informational=True, details=details)


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: parseval_sweep,
    2: u3_isometry,
    3: orthogonality_exhaustive,
    4: oracle_equivalence,
    5: inequality_battery,
    6: recursive_cross_validation,
    7: poisson_fixtures,
    8: lattice_duality,
    9: corner_convolution_identity,
    10: phase_polynomial_detection,
    11: degenerate_cubic,
}


def run_criterion(number: int, seed: int = 0, limit: int = DEFAULT_LIMIT) -> CriterionResult:
    start = time.perf_counter()
    result = CRITERIA[number](seed=seed, limit=limit)
    result.wall_time = time.perf_counter() - start
    return result


def serialise(results, timing: bool = False) -> str:
    return "".join(json.dumps(r.to_dict(timing=timing), sort_keys=True) + "\n" for r in results)


def determinism(seed: int = 0, limit: int = DEFAULT_LIMIT, numbers=None, first=None) -> CriterionResult:
    """Run the criteria twice (or once more after ``first``) and compare the JSON bytes."""
    numbers = sorted(CRITERIA) if numbers is None else list(numbers)
    if first is None:
        first = [run_criterion(n, seed, limit) for n in numbers]
    second = [run_criterion(n, seed, limit) for n in numbers]
    a, b = serialise(first), serialise(second)
    report = IdentityReport(
        "determinism",
        len(a.encode()),
        len(b.encode()),
        0.0 if a == b else 1.0,
        {"seed": seed, "criteria": numbers},
        tolerance=0.5,
    )
    return CriterionResult(12, "determinism", [report], details={"bytes": len(a.encode())})


def run_suite(seed: int = 0, limit: int = DEFAULT_LIMIT, numbers=None):
    """Yield results in declaration order; criterion 12 reuses the first pass."""
    numbers = sorted(set(CRITERIA) | {12}) if numbers is None else sorted(numbers)
    done = []
    for n in numbers:
        if n == 12:
            start = time.perf_counter()
            base = [r for r in done if r.number in CRITERIA]
            result = determinism(seed, limit, [r.number for r in base] or None, first=base or None)
            result.wall_time = time.perf_counter() - start
        else:
            result = run_criterion(n, seed, limit)
            done.append(result)
        yield result
