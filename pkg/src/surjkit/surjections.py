"""Concrete continuous surjections R^m -> R^n as immutable expression trees.

Constructors
------------
extend_to_line   the line-to-plane map: constant (0,0) on t <= 0, then for
                 each n >= 1 a linear bridge on [n-1, n-1/2] into the box
                 B_n = [-n, n]^2 followed by a rescaled Hilbert curve over
                 B_n on [n-1/2, n]; the boxes exhaust the plane
lift_dimension   turns an S_{1,n} tree into S_{1,n+1} by expanding the last
                 output coordinate through a fresh line-to-plane map
project_lift     turns an S_{1,n} tree into S_{m,n} by reading only the
                 first input coordinate
compose_with_base  applies a vector span member after a base surjection

Evaluation returns the depth-k approximant together with a conservative
error estimate; preimage inverts the tree analytically, returning exact
rational parameter coordinates (floats cannot carry the depth a composed
curve chain needs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

from .curve import _d2xy, hilbert_decode
from .errors import (
    DegenerateMemberError,
    DomainError,
    RefinementError,
    ResourceError,
    StructuralError,
)
from .spans import ScalarSpan, VectorSpanMember, scalar_solve

EVAL_DEPTH_CAP = 4096
DEFAULT_EVAL_DEPTH = 12
REFINEMENT_DOUBLINGS = 4

Real = Union[int, float, Fraction]


def _exact(x: Real) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


class FunctionExpr:
    """Base of the immutable expression tree; nodes are frozen dataclasses."""

    domain_arity: int
    codomain_arity: int

    def _eval(self, point: tuple, depth: int) -> tuple[tuple[float, ...], float]:
        raise NotImplementedError

    def _preimage(self, target: tuple, tol: float, depth_scale: int) -> tuple:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class PeanoLine(FunctionExpr):
    """The line-to-plane surjection; domain arity 1, codomain arity 2."""

    domain_arity = 1
    codomain_arity = 2

    @staticmethod
    def _box_entry(n: int) -> tuple[Fraction, Fraction]:
        return Fraction(-n), Fraction(-n)

    @staticmethod
    def _box_exit(n: int) -> tuple[Fraction, Fraction]:
        return Fraction(n), Fraction(-n)

    def _eval(self, point: tuple, depth: int) -> tuple[tuple[float, ...], float]:
        t = _exact(point[0])
        if t <= 0:
            return (0.0, 0.0), 0.0
        i = math.floor(t)
        frac = t - i
        n = i + 1
        if frac < Fraction(1, 2):
            # bridge from the previous exit (or the origin) to the entry of B_n
            px, py = (Fraction(0), Fraction(0)) if i == 0 else self._box_exit(i)
            qx, qy = self._box_entry(n)
            theta = 2 * frac
            return (float(px + theta * (qx - px)), float(py + theta * (qy - py))), 0.0
        u = 2 * frac - 1  # in [0, 1)
        index = math.floor(u * 4**depth)
        col, row = _d2xy(depth, index)
        denom = 1 << (depth + 1)
        x = Fraction(2 * n) * Fraction(2 * col + 1, denom) - n
        y = Fraction(2 * n) * Fraction(2 * row + 1, denom) - n
        return (float(x), float(y)), float(2 * n) * 2.0 ** (-depth)

    def _modulus_at(self, t: float, delta: float, depth: int) -> float:
        """Bound on output movement over [t - delta, t + delta]."""
        if t + delta <= 0:
            return 0.0
        n = math.floor(t + delta) + 1
        bridge = 2.0 * (2 * n - 1) * min(2.0 * delta, 0.5)
        curve = 2.0 * n * (math.sqrt(6.0 * min(4.0 * delta, 1.0)) + 2.0 ** (1 - depth))
        return bridge + curve

    def _preimage_with_depth(
        self, target: tuple, tol: float, depth_scale: int
    ) -> tuple[tuple[Fraction], int]:
        a, b = _exact(target[0]), _exact(target[1])
        n = max(1, math.ceil(max(abs(a), abs(b))))
        # half a cell of B_n at depth k stays within tol/2
        k = max(1, math.ceil(math.log2(4.0 * n / tol))) * depth_scale
        if k > EVAL_DEPTH_CAP:
            raise ResourceError(f"preimage depth {k} exceeds cap {EVAL_DEPTH_CAP}")
        q = ((a + n) / (2 * n), (b + n) / (2 * n))
        u = hilbert_decode(q, k).value
        t = Fraction(2 * n - 1, 2) + u / 2
        return (t,), k

    def _preimage(self, target: tuple, tol: float, depth_scale: int) -> tuple:
        witness, _ = self._preimage_with_depth(target, tol, depth_scale)
        return witness

    def describe(self) -> str:
        return "peano_line"

    def to_dict(self) -> dict:
        return {"kind": "peano_line"}


@dataclass(frozen=True)
class DimLift(FunctionExpr):
    """Expands the last output coordinate of an S_{1,n} tree through a
    trailing-pair surjection, producing S_{1,n+1}."""

    inner: FunctionExpr
    pair: PeanoLine

    def __post_init__(self):
        if self.inner.domain_arity != 1:
            raise StructuralError("lift requires a domain arity of 1")
        if self.inner.codomain_arity < 2:
            raise StructuralError("lift requires a codomain arity of at least 2")
        if not isinstance(self.pair, PeanoLine):
            raise StructuralError("the trailing-pair surjection must be a peano_line")

    @property
    def domain_arity(self) -> int:
        return 1

    @property
    def codomain_arity(self) -> int:
        return self.inner.codomain_arity + 1

    def _eval(self, point: tuple, depth: int) -> tuple[tuple[float, ...], float]:
        values, est = self.inner._eval(point, depth)
        pair_values, pair_est = self.pair._eval((values[-1],), depth)
        if est > 0.0:
            pair_est += self.pair._modulus_at(values[-1], est, depth)
        return values[:-1] + pair_values, max(est, pair_est)

    def _preimage(self, target: tuple, tol: float, depth_scale: int) -> tuple:
        (s,), pair_depth = self.pair._preimage_with_depth(target[-2:], tol / 6.0, depth_scale)
        # keep the inner map within half a parameter interval of the pair's
        # depth so the pair output moves by at most one cell
        inner_tol = tol / 2.0
        if pair_depth < 500:  # below this, 4^-depth underflows; refinement catches the rest
            inner_tol = min(inner_tol, 0.5 * 4.0 ** (-pair_depth))
        inner_target = target[:-2] + (s,)
        return self.inner._preimage(inner_target, inner_tol, depth_scale)

    def describe(self) -> str:
        return f"dim_lift({self.inner.describe()})"

    def to_dict(self) -> dict:
        return {"kind": "dim_lift", "inner": self.inner.to_dict()}


@dataclass(frozen=True)
class ProjectLift(FunctionExpr):
    """Reads only the first input coordinate: F(x_1, ..., x_m) = g(x_1)."""

    inner: FunctionExpr
    arity: int

    def __post_init__(self):
        if self.inner.domain_arity != 1:
            raise StructuralError("projection lift requires an inner domain arity of 1")
        if self.arity < 1:
            raise DomainError("target domain arity must be at least 1")

    @property
    def domain_arity(self) -> int:
        return self.arity

    @property
    def codomain_arity(self) -> int:
        return self.inner.codomain_arity

    def _eval(self, point: tuple, depth: int) -> tuple[tuple[float, ...], float]:
        return self.inner._eval((point[0],), depth)

    def _preimage(self, target: tuple, tol: float, depth_scale: int) -> tuple:
        (s,) = self.inner._preimage(target, tol, depth_scale)
        return (s,) + (0,) * (self.arity - 1)

    def describe(self) -> str:
        return f"project_lift[m={self.arity}]({self.inner.describe()})"

    def to_dict(self) -> dict:
        return {"kind": "project_lift", "arity": self.arity, "inner": self.inner.to_dict()}


@dataclass(frozen=True)
class PhiCompose(FunctionExpr):
    """A vector span member applied after a base surjection."""

    member: VectorSpanMember
    inner: FunctionExpr

    def __post_init__(self):
        if self.member.base is not None:
            raise StructuralError("compose with an unbased member; the tree holds the base")
        if self.member.arity != self.inner.codomain_arity:
            raise StructuralError(
                f"member arity {self.member.arity} != base codomain {self.inner.codomain_arity}"
            )

    @property
    def domain_arity(self) -> int:
        return self.inner.domain_arity

    @property
    def codomain_arity(self) -> int:
        return self.member.arity

    def _components(self) -> list[ScalarSpan]:
        return self.member.components()

    def _eval(self, point: tuple, depth: int) -> tuple[tuple[float, ...], float]:
        values, est = self.inner._eval(point, depth)
        spans = self._components()
        out = tuple(span.value(float(v)) for span, v in zip(spans, values))
        if est == 0.0:
            return out, 0.0
        amplified = max(
            span.derivative_bound(float(v) - est, float(v) + est) * est
            for span, v in zip(spans, values)
        )
        return out, amplified

    def _preimage(self, target: tuple, tol: float, depth_scale: int) -> tuple:
        spans = self._components()
        for j, span in enumerate(spans):
            if span.is_zero:
                raise DegenerateMemberError(j)
        solved = tuple(
            scalar_solve(span, float(y), tol / 2.0) for span, y in zip(spans, target)
        )
        lipschitz = max(
            span.derivative_bound(u - 1.0, u + 1.0) for span, u in zip(spans, solved)
        )
        inner_tol = min(1.0, (tol / 2.0) / lipschitz)
        return self.inner._preimage(solved, inner_tol, depth_scale)

    def describe(self) -> str:
        return f"({self.member.describe()}) o {self.inner.describe()}"

    def to_dict(self) -> dict:
        return {
            "kind": "phi_compose",
            "member": member_to_dict(self.member),
            "inner": self.inner.to_dict(),
        }


def extend_to_line() -> PeanoLine:
    """The concrete S_{1,2} member used as the seed of every construction."""
    return PeanoLine()


def lift_dimension(f: FunctionExpr, max_codomain: int = 6) -> DimLift:
    """S_{1,n} -> S_{1,n+1}; the first output coordinate is preserved exactly."""
    if f.domain_arity != 1:
        raise StructuralError("lift requires a domain arity of 1")
    if f.codomain_arity + 1 > max_codomain:
        raise ResourceError(
            f"codomain {f.codomain_arity + 1} exceeds cap {max_codomain}; "
            f"raise max_codomain to override"
        )
    return DimLift(f, PeanoLine())


def project_lift(g: FunctionExpr, target_m: int) -> FunctionExpr:
    """S_{1,n} -> S_{m,n} by F(x) = g(x_1); m = 1 returns g unchanged."""
    if g.domain_arity != 1:
        raise StructuralError("projection lift requires a domain arity of 1")
    if target_m < 1:
        raise DomainError("target domain arity must be at least 1")
    if target_m == 1:
        return g
    return ProjectLift(g, target_m)


def compose_with_base(member: VectorSpanMember, base: FunctionExpr) -> PhiCompose:
    """Span member after base surjection, as an expression node."""
    return PhiCompose(member.without_base(), base)


def member_as_expr(member: VectorSpanMember) -> PhiCompose:
    """Expression form of a member that carries its own base."""
    if member.base is None:
        raise StructuralError("member has no base; use compose_with_base")
    return PhiCompose(member.without_base(), member.base)


@dataclass(frozen=True)
class EvalRequest:
    """Point plus the curve depth and target tolerance to evaluate at."""

    point: tuple
    depth: int = DEFAULT_EVAL_DEPTH
    precision: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(self.point))
        if self.depth < 1:
            raise DomainError("depth must be at least 1")
        if self.precision <= 0:
            raise DomainError("precision must be positive")


@dataclass(frozen=True)
class EvalResult:
    """Approximant value and a conservative bound on its movement under
    one extra level of depth refinement."""

    value: tuple[float, ...]
    error_estimate: float


def evaluate(expr: FunctionExpr, req: EvalRequest) -> EvalResult:
    """Depth-k approximant of the expression at a point."""
    if len(req.point) != expr.domain_arity:
        raise StructuralError(
            f"point arity {len(req.point)} != domain arity {expr.domain_arity}"
        )
    if req.depth > EVAL_DEPTH_CAP:
        raise ResourceError(f"depth {req.depth} exceeds cap {EVAL_DEPTH_CAP}")
    value, est = expr._eval(req.point, req.depth)
    return EvalResult(value, est)


def evaluate_at(expr: FunctionExpr, point: Sequence[Real], depth: int = DEFAULT_EVAL_DEPTH) -> EvalResult:
    return evaluate(expr, EvalRequest(tuple(point), depth))


def evaluate_to_precision(
    expr: FunctionExpr, point: Sequence[Real], precision: float
) -> EvalResult:
    """Deepen evaluation until the chained error estimate meets precision."""
    depth = 16
    point = tuple(point)
    for _ in range(12):
        value, est = expr._eval(point, depth)
        if est <= precision:
            return EvalResult(value, est)
        depth *= 2
        if depth > EVAL_DEPTH_CAP:
            break
    raise ResourceError(f"could not reach precision {precision} within the depth cap")


def preimage(expr: FunctionExpr, target: Sequence[Real], eps: float) -> tuple:
    """A point x with |evaluate(expr, x) - target|_inf <= eps.

    The analytic chain inverts each node; a forward check then validates
    the witness, doubling every curve depth on failure (four retries).
    Curve-derived coordinates come back as exact Fractions: composed
    curve chains need more parameter resolution than a float carries.
    """
    if eps <= 0:
        raise DomainError("tolerance must be positive")
    target = tuple(float(y) for y in target)
    if len(target) != expr.codomain_arity:
        raise StructuralError(
            f"target arity {len(target)} != codomain arity {expr.codomain_arity}"
        )
    best_witness, best_res = None, math.inf
    scale = 1
    for _ in range(REFINEMENT_DOUBLINGS + 1):
        witness = expr._preimage(target, eps / 2.0, scale)
        result = evaluate_to_precision(expr, witness, eps / 8.0)
        res = max(abs(v - y) for v, y in zip(result.value, target))
        if res <= eps:
            return witness
        if res < best_res:
            best_witness, best_res = witness, res
        scale *= 2
    raise RefinementError(
        f"residual {best_res:.3g} > eps {eps:.3g} after {REFINEMENT_DOUBLINGS} depth doublings",
        best_witness=best_witness,
        achieved=best_res,
    )


def member_to_dict(member: VectorSpanMember) -> dict:
    return {
        "arity": member.arity,
        "terms": [
            {"coefficient": repr(lam), "exponents": [repr(r) for r in rvec]}
            for lam, rvec in member.terms
        ],
    }


def member_from_dict(data: dict) -> VectorSpanMember:
    _require_keys(data, {"arity", "terms"}, "member")
    terms = []
    for entry in data["terms"]:
        _require_keys(entry, {"coefficient", "exponents"}, "member term")
        terms.append(
            (float(entry["coefficient"]), tuple(float(r) for r in entry["exponents"]))
        )
    return VectorSpanMember(tuple(terms), int(data["arity"]))


def _require_keys(data: dict, expected: set, what: str) -> None:
    if not isinstance(data, dict):
        raise StructuralError(f"{what} must be a mapping")
    extra = set(data) - expected
    missing = expected - set(data)
    if extra or missing:
        raise StructuralError(
            f"{what} keys mismatch: missing {sorted(missing)}, unknown {sorted(extra)}"
        )


def expr_to_dict(expr: FunctionExpr) -> dict:
    """Stable declarative form: node kind, arities, children, span parameters."""
    data = expr.to_dict()
    data["domain_arity"] = expr.domain_arity
    data["codomain_arity"] = expr.codomain_arity
    return data


def expr_from_dict(data: dict) -> FunctionExpr:
    if not isinstance(data, dict) or "kind" not in data:
        raise StructuralError("expression node must be a mapping with a 'kind'")
    payload = {k: v for k, v in data.items() if k not in ("domain_arity", "codomain_arity")}
    kind = payload.pop("kind")
    if kind == "peano_line":
        _require_keys(payload, set(), "peano_line node")
        expr: FunctionExpr = PeanoLine()
    elif kind == "dim_lift":
        _require_keys(payload, {"inner"}, "dim_lift node")
        expr = DimLift(expr_from_dict(payload["inner"]), PeanoLine())
    elif kind == "project_lift":
        _require_keys(payload, {"arity", "inner"}, "project_lift node")
        expr = ProjectLift(expr_from_dict(payload["inner"]), int(payload["arity"]))
    elif kind == "phi_compose":
        _require_keys(payload, {"member", "inner"}, "phi_compose node")
        expr = PhiCompose(member_from_dict(payload["member"]), expr_from_dict(payload["inner"]))
    else:
        raise StructuralError(f"unknown expression kind {kind!r}")
    if "domain_arity" in data and int(data["domain_arity"]) != expr.domain_arity:
        raise StructuralError("declared domain arity does not match the tree")
    if "codomain_arity" in data and int(data["codomain_arity"]) != expr.codomain_arity:
        raise StructuralError("declared codomain arity does not match the tree")
    return expr
