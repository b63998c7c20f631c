"""Command-line surface: trace curves, evaluate pipelines, run certificates.

Commands
--------
trace    --depth K --out PATH [--depth-cap N]
eval     --spec PATH --point "v1,v2,..." [--depth K]
certify  --spec PATH --report PATH [--budget N] [--seed S]

Exit codes: 0 success; 1 certificate not certified or rank deficient;
2 validation failure; 3 resource cap; 4 degenerate family member.

The spec file is JSON with sections `base`, `family`, `certify`, `output`;
reals are decimal strings; unknown keys are rejected. It describes exactly
one pipeline: a factory constructor chain, optionally followed by a span
member built from diagonal basis coefficients or explicit terms.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certify import (
    BoxSpec,
    CoverageCertificate,
    DEFAULT_TARGET_BUDGET,
    IndependenceReport,
    certify_surjective_on_box,
    default_sample_points,
    independence_report,
)
from .curve import DEFAULT_DEPTH_CAP, curve_trace
from .errors import (
    DegenerateMemberError,
    DomainError,
    NoSolutionError,
    RefinementError,
    ResourceError,
    StructuralError,
)
from .spans import VectorSpanMember, combine_members, make_diagonal_family
from .surjections import (
    FunctionExpr,
    compose_with_base,
    evaluate,
    EvalRequest,
    extend_to_line,
    lift_dimension,
    project_lift,
)

EXIT_OK = 0
EXIT_UNCERTIFIED = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_DEGENERATE = 4


class SpecError(ValueError):
    """Spec file is malformed; message carries location context."""


def format_real(x: float) -> str:
    """Decimal string with 17 significant digits."""
    return f"{float(x):.17g}"


def dyadic_decimal(value: Fraction) -> str:
    """Exact decimal string of a dyadic rational (denominator a power of two)."""
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    e = den.bit_length() - 1
    if den != 1 << e:
        raise DomainError(f"{value} is not dyadic")
    digits = str(num * 5**e).rjust(e + 1, "0")
    if e == 0:
        return sign + digits
    out = (digits[:-e] + "." + digits[-e:]).rstrip("0").rstrip(".")
    return sign + (out or "0")


def exact_string(x) -> str:
    """Lossless textual form: p/q for rationals, repr for floats."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


# ---------------------------------------------------------------------------
# spec file


@dataclass(frozen=True)
class SpecFile:
    base_lifts: int
    base_project_to: int
    family_members: tuple[VectorSpanMember, ...]
    family_coefficients: tuple[float, ...]
    member: Optional[VectorSpanMember]
    certify_box: Optional[BoxSpec]
    certify_epsilon: Optional[float]
    report_format: str

    def build_base(self) -> FunctionExpr:
        expr: FunctionExpr = extend_to_line()
        for _ in range(self.base_lifts):
            expr = lift_dimension(expr)
        return project_lift(expr, self.base_project_to)

    def build_pipeline(self) -> FunctionExpr:
        base = self.build_base()
        if self.member is None:
            return base
        return compose_with_base(self.member, base)


def _check_keys(section: dict, allowed: set, required: set, where: str) -> None:
    if not isinstance(section, dict):
        raise SpecError(f"section '{where}' must be an object")
    unknown = set(section) - allowed
    if unknown:
        raise SpecError(f"unknown keys {sorted(unknown)} in section '{where}'")
    missing = required - set(section)
    if missing:
        raise SpecError(f"missing keys {sorted(missing)} in section '{where}'")


def _real(value, where: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise SpecError(f"expected a decimal string in '{where}', got {value!r}") from None


def parse_spec_data(data: dict) -> SpecFile:
    _check_keys(data, {"base", "family", "certify", "output"}, {"base"}, "spec")

    base = data["base"]
    _check_keys(base, {"construct", "lifts", "project_to"}, {"construct"}, "base")
    if base["construct"] != "extend_to_line":
        raise SpecError(f"unknown base construct {base['construct']!r}")
    lifts = int(base.get("lifts", 0))
    project_to = int(base.get("project_to", 1))
    if lifts < 0:
        raise SpecError("base.lifts must be non-negative")
    codomain = 2 + lifts

    members: tuple[VectorSpanMember, ...] = ()
    coefficients: tuple[float, ...] = ()
    member: Optional[VectorSpanMember] = None
    if "family" in data:
        family = data["family"]
        _check_keys(
            family, {"diagonal_exponents", "coefficients", "terms"}, set(), "family"
        )
        if "terms" in family:
            if "diagonal_exponents" in family or "coefficients" in family:
                raise SpecError("family takes either explicit terms or a diagonal basis")
            terms = []
            for i, entry in enumerate(family["terms"]):
                _check_keys(entry, {"coefficient", "exponents"}, {"coefficient", "exponents"},
                            f"family.terms[{i}]")
                exps = tuple(_real(r, "family.terms.exponents") for r in entry["exponents"])
                if len(exps) != codomain:
                    raise SpecError(
                        f"family.terms[{i}] has {len(exps)} exponents, base produces {codomain}"
                    )
                terms.append((_real(entry["coefficient"], "family.terms.coefficient"), exps))
            member = VectorSpanMember(tuple(terms), codomain)
        elif "diagonal_exponents" in family:
            exps = [_real(r, "family.diagonal_exponents") for r in family["diagonal_exponents"]]
            members = tuple(make_diagonal_family(exps, codomain))
            raw = family.get("coefficients", ["1"] * len(exps))
            coefficients = tuple(_real(c, "family.coefficients") for c in raw)
            if len(coefficients) != len(members):
                raise SpecError("family.coefficients must match diagonal_exponents in length")
            member = combine_members(coefficients, members)
        else:
            raise SpecError("family needs diagonal_exponents or terms")

    box = None
    epsilon = None
    if "certify" in data:
        cert = data["certify"]
        _check_keys(cert, {"box", "grid", "epsilon"}, {"box", "grid", "epsilon"}, "certify")
        bounds = []
        for i, pair in enumerate(cert["box"]):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise SpecError(f"certify.box[{i}] must be a [low, high] pair")
            bounds.append((_real(pair[0], "certify.box"), _real(pair[1], "certify.box")))
        if len(bounds) != codomain:
            raise SpecError(
                f"certify.box has {len(bounds)} coordinates, pipeline produces {codomain}"
            )
        epsilon = _real(cert["epsilon"], "certify.epsilon")
        if epsilon <= 0:
            raise SpecError("certify.epsilon must be positive")
        try:
            box = BoxSpec(tuple(bounds), int(cert["grid"]))
        except DomainError as err:
            raise SpecError(str(err)) from None

    report_format = "json"
    if "output" in data:
        _check_keys(data["output"], {"format"}, set(), "output")
        report_format = data["output"].get("format", "json")
        if report_format != "json":
            raise SpecError(f"unsupported output format {report_format!r}")

    return SpecFile(
        base_lifts=lifts,
        base_project_to=project_to,
        family_members=members,
        family_coefficients=coefficients,
        member=member,
        certify_box=box,
        certify_epsilon=epsilon,
        report_format=report_format,
    )


def parse_spec_file(path: str) -> SpecFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise SpecError(f"cannot read spec file: {err}") from None
    except json.JSONDecodeError as err:
        raise SpecError(
            f"spec parse error at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from None
    return parse_spec_data(data)


# ---------------------------------------------------------------------------
# report serialization


def _witness_json(w) -> dict:
    return {
        "target": [format_real(x) for x in w.target],
        "preimage_decimal": [format_real(float(x)) for x in w.preimage],
        "preimage_exact": [exact_string(x) for x in w.preimage],
        "achieved_error": format_real(w.achieved_error),
    }


def certificate_json(cert: CoverageCertificate) -> dict:
    return {
        "function": cert.function_id,
        "box": {
            "bounds": [[format_real(lo), format_real(hi)] for lo, hi in cert.box.bounds],
            "grid_points": cert.box.grid_points,
        },
        "epsilon": format_real(cert.epsilon),
        "status": cert.status,
        "worst_target": None
        if cert.worst_target is None
        else [format_real(x) for x in cert.worst_target],
        "witnesses": [_witness_json(w) for w in cert.witnesses],
    }


def independence_json(report: IndependenceReport) -> dict:
    return {
        "family": list(report.family),
        "sample_points": [[format_real(x) for x in p] for p in report.points],
        "matrix_shape": list(report.matrix_shape),
        "rank": report.rank,
        "full_rank": report.full_rank,
        "tolerance": format_real(report.tolerance),
        "pivot_ratios": [format_real(x) for x in report.pivot_ratios],
    }


# ---------------------------------------------------------------------------
# commands


def cmd_trace(args) -> int:
    points = curve_trace(args.depth, depth_cap=args.depth_cap)
    cells = 4**args.depth
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("t,x,y\n")
        for i, p in enumerate(points):
            t = dyadic_decimal(Fraction(i, cells))
            fh.write(f"{t},{dyadic_decimal(p.x)},{dyadic_decimal(p.y)}\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    spec = parse_spec_file(args.spec)
    pipeline = spec.build_pipeline()
    try:
        point = tuple(float(v) for v in args.point.split(","))
    except ValueError:
        raise SpecError(f"cannot parse point {args.point!r}") from None
    result = evaluate(pipeline, EvalRequest(point, depth=args.depth))
    print(" ".join(format_real(v) for v in result.value))
    print(f"error {format_real(result.error_estimate)}")
    return EXIT_OK


def cmd_certify(args) -> int:
    spec = parse_spec_file(args.spec)
    if spec.certify_box is None:
        raise SpecError("spec has no 'certify' section")
    pipeline = spec.build_pipeline()
    certificate = certify_surjective_on_box(
        pipeline, spec.certify_box, spec.certify_epsilon, target_budget=args.budget
    )

    independence: Optional[IndependenceReport] = None
    if len(spec.family_members) >= 2:
        base = spec.build_base()
        composed = [compose_with_base(m, base) for m in spec.family_members]
        points = _sample_points(len(composed), base.domain_arity, args.seed)
        independence = independence_report(composed, points)

    report = {
        "certificate": certificate_json(certificate),
        "independence": None if independence is None else independence_json(independence),
        "settings": {"budget": args.budget, "seed": args.seed},
    }
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")

    ok = certificate.certified and (independence is None or independence.full_rank)
    print(f"status {certificate.status}")
    if independence is not None:
        print(f"rank {independence.rank}/{len(independence.family)}")
    return EXIT_OK if ok else EXIT_UNCERTIFIED


def _sample_points(size: int, arity: int, seed: Optional[int]) -> list[tuple[float, ...]]:
    count = max(16, 2 * size)
    if seed is None:
        return default_sample_points(count, arity)
    rng = random.Random(seed)
    return [tuple(rng.uniform(0.25, 8.0) for _ in range(arity)) for _ in range(count)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surjkit",
        description="Build, evaluate, and certify continuous surjections R^m -> R^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="write curve cell centers as CSV")
    p_trace.add_argument("--depth", type=int, required=True)
    p_trace.add_argument("--out", required=True)
    p_trace.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP)
    p_trace.set_defaults(func=cmd_trace)

    p_eval = sub.add_parser("eval", help="evaluate the pipeline of a spec file")
    p_eval.add_argument("--spec", required=True)
    p_eval.add_argument("--point", required=True)
    p_eval.add_argument("--depth", type=int, default=12)
    p_eval.set_defaults(func=cmd_eval)

    p_cert = sub.add_parser("certify", help="run certificates and write a report")
    p_cert.add_argument("--spec", required=True)
    p_cert.add_argument("--report", required=True)
    p_cert.add_argument("--budget", type=int, default=DEFAULT_TARGET_BUDGET)
    p_cert.add_argument("--seed", type=int, default=None)
    p_cert.set_defaults(func=cmd_certify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateMemberError as err:
        print(f"degenerate member: coordinate {err.coordinate + 1}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ResourceError, RefinementError) as err:
        print(f"resource failure: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SpecError, DomainError, StructuralError, NoSolutionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
