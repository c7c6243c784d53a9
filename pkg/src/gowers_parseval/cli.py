"""Command-line front end.

Every subcommand prints one report per check, as text or (``--json``) as
JSON lines. Exit status: 0 when every asserted residual is below the
tolerance, 1 on a violated identity, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .convolutions import PuncturedCube, convolution_fourier_check
from .cubes import CubePoint
from .cube_spaces import CubeSpaceSpec, corner_complete, enumerate_cubes, exact_degree, is_member
from .errors import EnumerationLimitError, InputFormatError, PositivityError, SpecMismatchError
from .fourier import parseval_check
from .functions import FunctionCube, GroupFunction
from .gowers import inner_product, inner_product_primal, uniformity_norm
from .io import (
    cube_from_json,
    function_from_json,
    functions_from_json,
    lattice_from_json,
    parse_group,
    phase_polynomial,
    point_from_json,
    read_json,
)
from .lattice import lattice_cube_space, poisson_check, signed_dual_subgroup, signed_orthogonal_lattice
from .oracle import brute_cube_space_indices, brute_inner_product, brute_signed_dual
from .reports import IdentityReport, residual, to_jsonable
from .subgroups import DEFAULT_LIMIT, ExplicitSubgroup
from .suite import CRITERIA, FIXTURE_LATTICES, orthogonality_report, orthogonality_reports, run_suite

RANDOM_KINDS = ("complex-gaussian", "unit-phase", "real-gaussian")


class Output:
    """Writes reports and tracks whether any asserted check failed."""

    def __init__(self, args, stream=None):
        self.args = args
        self.stream = stream or sys.stdout
        self.failed = False

    def emit(self, record: dict, passed: bool = True, text: str | None = None):
        if not passed:
            self.failed = True
        if not self.args.timing:
            record.pop("wall_time", None)
        if self.args.json:
            self.stream.write(json.dumps(to_jsonable(record), sort_keys=True) + "\n")
        else:
            self.stream.write((text or _text_line(record)) + "\n")

    def report(self, rep: IdentityReport, wall_time: float | None = None, **extra):
        record = {"command": self.args.command, "seed": self.args.seed, **rep.to_dict(), **extra}
        if wall_time is not None:
            record["wall_time"] = wall_time
        self.emit(record, rep.passed)


def _is_pair(value) -> bool:
    return isinstance(value, list) and len(value) == 2 and all(isinstance(v, float) for v in value)


def _fmt(value) -> str:
    if _is_pair(value):
        re_, im = (0.0 if abs(v) < 1e-14 else v for v in value)
        return f"{re_:.12g}" if im == 0 else f"{re_:.12g}{im:+.12g}j"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, list) and len(value) > 8:
        return f"[{len(value)} values]"
    if isinstance(value, list) and any(_is_pair(v) or isinstance(v, float) for v in value):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


EXTRA_TEXT_KEYS = ("cube", "member", "exact_degree")


def _text_line(record: dict) -> str:
    params = " ".join(f"{k}={_fmt(v)}" for k, v in record.get("params", {}).items() if k != "witness")
    head = record.get("check", record.get("command", ""))
    parts = [f"{head} {params}".strip() + ":"]
    for key in ("value", "lhs", "rhs") + EXTRA_TEXT_KEYS:
        if key in record:
            parts.append(f"{key}={_fmt(record[key])}")
    if "residual" in record and not record.get("informational"):
        parts.append(f"residual={record['residual']:.3e}")
        parts.append("PASS" if record.get("passed", True) else "FAIL")
    if "wall_time" in record:
        parts.append(f"({record['wall_time']:.3f}s)")
    return " ".join(parts)


def _rng(args) -> np.random.Generator:
    return np.random.default_rng(args.seed)


def _function(args, rng) -> GroupFunction:
    group = parse_group(args.group)
    if args.phase_poly:
        return phase_polynomial(group, args.phase_poly)
    if args.function:
        f = function_from_json(read_json(args.function))
        if f.spec != group:
            raise InputFormatError(f"function file is on {f.spec}, not {group}")
        return f
    return GroupFunction.random(group, rng, args.random)


def _cube(args, rng) -> FunctionCube:
    if args.cube:
        F = cube_from_json(read_json(args.cube))
        if F.spec != parse_group(args.group) or F.d != args.d:
            raise InputFormatError(f"cube file holds a {F.d}-cube on {F.spec}, expected d={args.d} on {args.group}")
        return F
    return FunctionCube.random(parse_group(args.group), args.d, rng, args.random)


# -- subcommands -------------------------------------------------------------------


def cmd_norm(args, out: Output):
    start = time.perf_counter()
    f = _function(args, _rng(args))
    value = uniformity_norm(f, args.d, args.l, args.limit, method=args.method)
    space = CubeSpaceSpec(f.spec, args.d, args.l)
    record = {
        "command": "norm",
        "seed": args.seed,
        "params": {"group": str(f.spec), "d": args.d, "l": args.l, "method": args.method},
        "value": value,
        "sizes": {"primal": space.cardinality, "dual": space.dual().cardinality},
        "wall_time": time.perf_counter() - start,
    }
    passed = True
    if args.expect is not None:
        record["residual"] = residual(value, args.expect)
        record["tolerance"] = args.tolerance
        passed = record["residual"] < args.tolerance
        record["passed"] = passed
    out.emit(record, passed)


def cmd_inner(args, out: Output):
    start = time.perf_counter()
    F = _cube(args, _rng(args))
    value = inner_product(F, args.l, args.limit, method=args.method)
    space = CubeSpaceSpec(F.spec, F.d, args.l)
    out.emit(
        {
            "command": "inner",
            "seed": args.seed,
            "params": {"group": str(F.spec), "d": F.d, "l": args.l, "method": args.method},
            "value": value,
            "sizes": {"primal": space.cardinality, "dual": space.dual().cardinality},
            "wall_time": time.perf_counter() - start,
        }
    )


def cmd_parseval(args, out: Output):
    rng = _rng(args)
    for _ in range(1 if args.cube else args.trials):
        start = time.perf_counter()
        rep = parseval_check(_cube(args, rng), args.l, args.limit, args.tolerance)
        out.report(rep, time.perf_counter() - start)


def cmd_orthogonality(args, out: Output):
    group = parse_group(args.group)
    if args.exhaustive:
        reports = orthogonality_reports(group, args.d, args.limit, args.tolerance)
    else:
        draws = _rng(args).integers(0, group.cardinality, size=(args.trials, 1 << args.d))
        reports = (orthogonality_report(CubePoint.from_indices(group, idx), args.limit, args.tolerance) for idx in draws)
    count = 0
    for rep in reports:
        out.report(rep)
        count += 1
    if not args.json:
        out.stream.write(f"{count} character cubes checked\n")


def _lattice(args):
    if args.lattice:
        return lattice_from_json(read_json(args.lattice))
    return FIXTURE_LATTICES[args.fixture]


def cmd_poisson(args, out: Output):
    L, signs = _lattice(args)
    if args.signature:
        signs = tuple(int(s) for s in args.signature.split(","))
    group = parse_group(args.group)
    rng = _rng(args)
    H = lattice_cube_space(L, group, limit=args.limit)
    dual = signed_dual_subgroup(H, signs, mode=args.dual_mode, limit=args.limit)
    fixed = functions_from_json(read_json(args.functions)) if args.functions else None
    for _ in range(1 if fixed else args.trials):
        start = time.perf_counter()
        fs = fixed or [GroupFunction.random(group, rng, args.random) for _ in range(L.k)]
        t = None
        if args.translate == "random":
            t = rng.integers(0, group.cardinality, size=L.k).tolist()
        elif args.translate:
            t = [int(x) for x in args.translate.split(",")]
        rep = poisson_check(fs, H, signs, t=t, dual=dual, limit=args.limit, tolerance=args.tolerance)
        out.report(rep, time.perf_counter() - start)


def cmd_convolution(args, out: Output):
    rng = _rng(args)
    group = parse_group(args.group)
    for _ in range(args.trials):
        start = time.perf_counter()
        rep = convolution_fourier_check(PuncturedCube.random(group, args.d, rng, args.random), args.l, args.limit, args.tolerance)
        out.report(rep, time.perf_counter() - start)


def cmd_cubes(args, out: Output):
    group = parse_group(args.group)
    spec = CubeSpaceSpec(group, args.d, args.l)
    if args.complete:
        corner_values = json.loads(args.complete)
        if len(corner_values) != spec.k:
            raise InputFormatError(f"corner needs {spec.k} values, got {len(corner_values)}")
        corner = {v: group.element(r if isinstance(r, list) else [r]) for v, r in zip(spec.corner_vertices, corner_values)}
        p = corner_complete(corner, spec)
        out.emit({"command": "cubes", "params": {"group": str(group), "d": args.d, "l": args.l}, "corner": corner_values, "cube": p.to_list()})
        return
    if args.check:
        p = point_from_json(json.loads(args.check), group)
        member = is_member(p, spec)
        out.emit(
            {
                "command": "cubes",
                "params": {"group": str(group), "d": p.d, "l": args.l},
                "cube": p.to_list(),
                "member": member,
                "exact_degree": exact_degree(p),
            }
        )
        return
    out.emit(
        {
            "command": "cubes",
            "params": {"group": str(group), "d": args.d, "l": args.l},
            "k": spec.k,
            "cardinality": spec.cardinality,
            "corner_vertices": list(spec.corner_vertices),
            "completion_matrix": spec.completion_matrix().tolist(),
        },
        text=f"P^{{{args.d},{args.l}}}({group}): |P| = {spec.cardinality} = {group.cardinality}^{spec.k}, corner {list(spec.corner_vertices)}",
    )
    if args.enumerate:
        for p in enumerate_cubes(spec, args.limit):
            out.emit({"cube": p.to_list()}, text=json.dumps(p.to_list()))


def cmd_oracle(args, out: Output):
    group = parse_group(args.group)
    start = time.perf_counter()
    if args.what == "cube-space":
        space = CubeSpaceSpec(group, args.d, args.l)
        brute = ExplicitSubgroup(group, brute_cube_space_indices(group, args.d, args.l), check=False)
        same = space.subgroup().same_elements(brute, args.limit)
        rep = IdentityReport(
            "oracle-cube-space",
            space.cardinality,
            brute.cardinality,
            0.0 if same else 1.0,
            {"group": str(group), "d": args.d, "l": args.l},
            tolerance=0.5,
        )
    elif args.what == "inner":
        F = _cube(args, _rng(args))
        lhs = inner_product_primal(F, args.l, args.limit)
        rhs = brute_inner_product(F, args.l)
        rep = IdentityReport(
            "oracle-inner", lhs, rhs, residual(lhs, rhs), {"group": str(group), "d": F.d, "l": args.l}, tolerance=args.tolerance
        )
    else:
        L, signs = _lattice(args)
        if args.signature:
            signs = tuple(int(s) for s in args.signature.split(","))
        H = lattice_cube_space(L, group, limit=args.limit)
        structured = signed_dual_subgroup(H, signs, limit=args.limit)
        brute = brute_signed_dual(H, signs)
        same = structured.same_elements(brute, args.limit)
        rep = IdentityReport(
            "oracle-signed-dual",
            structured.cardinality,
            brute.cardinality,
            0.0 if same else 1.0,
            {
                "group": str(group),
                "lattice": [list(g) for g in L.generators],
                "signature": list(signs),
                "orthogonal": [list(g) for g in signed_orthogonal_lattice(L, signs).generators],
            },
            tolerance=0.5,
        )
    out.report(rep, time.perf_counter() - start)


def _criteria_list(text: str | None) -> list[int] | None:
    if not text:
        return None
    numbers = set()
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        try:
            numbers.update(range(int(lo), int(hi or lo) + 1))
        except ValueError as exc:
            raise InputFormatError(f"bad criterion list {text!r}") from exc
    unknown = numbers - set(CRITERIA) - {12}
    if unknown:
        raise InputFormatError(f"unknown criteria {sorted(unknown)}")
    return sorted(numbers)


def cmd_suite(args, out: Output):
    for result in run_suite(args.seed, args.limit, _criteria_list(args.only)):
        record = result.to_dict(timing=args.timing)
        record["command"] = "suite"
        record["seed"] = args.seed
        out.emit(record, result.passed, text=result.summary() + (f" ({result.wall_time:.2f}s)" if args.timing else ""))


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON lines")
    common.add_argument("--seed", type=int, default=0, help="seed for all random draws")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="enumeration size guard")
    common.add_argument("--no-timing", dest="timing", action="store_false", help="omit wall-time fields")

    def group_args(p, d=True, l=True):
        p.add_argument("--group", required=True, help='cyclic orders joined by "x", e.g. 2x3')
        if d:
            p.add_argument("--d", type=int, required=True)
        if l:
            p.add_argument("--l", type=int, required=True)

    def random_arg(p):
        p.add_argument("--random", choices=RANDOM_KINDS, default="complex-gaussian", help="distribution of generated values")

    parser = argparse.ArgumentParser(prog="gowers-parseval", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="U^{d,l} norm of one function")
    group_args(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--phase-poly", help='integer polynomial, e.g. "3x^2 + x" (cyclic groups only)')
    src.add_argument("--function", help="function JSON file")
    random_arg(p)
    p.add_argument("--method", choices=("auto", "primal", "dual"), default="auto")
    p.add_argument("--expect", type=float, help="exit 1 unless the norm matches this value")
    p.set_defaults(handler=cmd_norm)

    p = sub.add_parser("inner", parents=[common], help="<F>_{d,l} of a cube of functions")
    group_args(p)
    p.add_argument("--cube", help="cube JSON file")
    random_arg(p)
    p.add_argument("--method", choices=("auto", "primal", "dual"), default="primal")
    p.set_defaults(handler=cmd_inner)

    p = sub.add_parser("parseval-check", parents=[common], help="<F>_{d,l} against <F^>_{d,d-l-1}")
    group_args(p)
    p.add_argument("--cube", help="cube JSON file")
    random_arg(p)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(handler=cmd_parseval)

    p = sub.add_parser("orthogonality-check", parents=[common], help="character cubes against the 0/1 table")
    group_args(p, l=False)
    p.add_argument("--exhaustive", action="store_true", help="every character cube")
    p.add_argument("--trials", type=int, default=20, help="random cubes when not exhaustive")
    p.set_defaults(handler=cmd_orthogonality)

    def lattice_args(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--lattice", help="lattice JSON file {k, generators, signature}")
        src.add_argument("--fixture", choices=sorted(FIXTURE_LATTICES))
        p.add_argument("--signature", help="comma-separated bits overriding the lattice's signature")

    p = sub.add_parser("poisson-check", parents=[common], help="signed Poisson summation on P^L(G)")
    group_args(p, d=False, l=False)
    lattice_args(p)
    p.add_argument("--functions", help="JSON file with one function per coordinate")
    random_arg(p)
    p.add_argument("--translate", help='"random" or comma-separated element indices')
    p.add_argument("--dual-mode", choices=("auto", "lattice", "filter"), default="auto")
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(handler=cmd_poisson)

    p = sub.add_parser("convolution-check", parents=[common], help="Fourier identity of corner convolutions")
    group_args(p)
    random_arg(p)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(handler=cmd_convolution)

    p = sub.add_parser("cubes", parents=[common], help="inspect, enumerate, complete or test degree-l cubes")
    group_args(p)
    action = p.add_mutually_exclusive_group()
    action.add_argument("--enumerate", action="store_true")
    action.add_argument("--complete", help="JSON list of corner values (residue lists or ints)")
    action.add_argument("--check", help="JSON cube point: one residue list per vertex")
    p.set_defaults(handler=cmd_cubes)

    p = sub.add_parser("oracle", parents=[common], help="structured result against brute force")
    p.add_argument("what", choices=("cube-space", "inner", "signed-dual"))
    p.add_argument("--group", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--cube", help="cube JSON file (inner)")
    random_arg(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--lattice", help="lattice JSON file (signed-dual)")
    src.add_argument("--fixture", choices=sorted(FIXTURE_LATTICES), default="roth")
    p.add_argument("--signature")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    p.add_argument("--only", help='criteria to run, e.g. "1,3-5"')
    p.set_defaults(handler=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        args.handler(args, out)
    except (InputFormatError, EnumerationLimitError, SpecMismatchError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except PositivityError as exc:
        sys.stderr.write(f"identity violated: {exc}\n")
        return 1
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
