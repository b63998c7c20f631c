"""The sinh-type scalar family, its vector version, and span algebra.

The building block is the odd homeomorphism t -> e^(r t) - e^(-r t)
(= 2 sinh(r t)) for r > 0. Finite linear combinations over distinct
exponents form ScalarSpan values; n-coordinate stacks of them, indexed by
exponent vectors, form VectorSpanMember values, optionally pre-composed
with a base surjection of the plane-filling kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TYPE_CHECKING

from .errors import DomainError, NoSolutionError, ResourceError

if TYPE_CHECKING:  # only for annotations; avoids an import cycle
    from .surjections import FunctionExpr

BRACKET_CAP = 2.0**60


def phi_eval(r: float, t: float) -> float:
    """e^(r t) - e^(-r t) for r > 0; overflow clamps to signed infinity."""
    if r <= 0:
        raise DomainError(f"exponent must be positive, got {r}")
    try:
        return 2.0 * math.sinh(r * t)
    except OverflowError:
        return math.inf if t > 0 else -math.inf


def phi_inverse(r: float, y: float) -> float:
    """The unique t with phi_eval(r, t) = y, via t = arsinh(y/2) / r."""
    if r <= 0:
        raise DomainError(f"exponent must be positive, got {r}")
    return math.asinh(y / 2.0) / r


@dataclass(frozen=True)
class ScalarSpan:
    """Normalized combination sum(alpha_i * phi_{r_i}), exponents strictly decreasing.

    The empty term tuple is the zero function. Use make_scalar_span to
    build one from raw (coefficient, exponent) pairs.
    """

    terms: tuple[tuple[float, float], ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading(self) -> tuple[float, float]:
        if self.is_zero:
            raise NoSolutionError("zero span has no leading term")
        return self.terms[0]

    def value(self, t: float) -> float:
        total = 0.0
        for alpha, r in self.terms:
            total += alpha * phi_eval(r, t)
        return total

    __call__ = value

    def derivative_bound(self, lo: float, hi: float) -> float:
        """Upper bound on |d/dt| over [lo, hi] (derivative is r*(e^rt + e^-rt))."""
        span = max(abs(lo), abs(hi))
        total = 0.0
        for alpha, r in self.terms:
            try:
                total += abs(alpha) * r * 2.0 * math.cosh(r * span)
            except OverflowError:
                return math.inf
        return total

    def scaled(self, factor: float) -> "ScalarSpan":
        return make_scalar_span([(factor * a, r) for a, r in self.terms])

    def plus(self, other: "ScalarSpan") -> "ScalarSpan":
        return make_scalar_span(list(self.terms) + list(other.terms))

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"{a:g}*phi[{r:g}]" for a, r in self.terms)


def make_scalar_span(pairs: Iterable[tuple[float, float]]) -> ScalarSpan:
    """Merge equal exponents, drop zero coefficients, sort descending by exponent.

    Exponent equality is exact equality of the stored float: near-equal
    exponents are distinct terms and must be merged by the caller.
    """
    merged: dict[float, float] = {}
    for alpha, r in pairs:
        r = float(r)
        if r <= 0:
            raise DomainError(f"exponent must be positive, got {r}")
        merged[r] = merged.get(r, 0.0) + float(alpha)
    terms = tuple(
        (alpha, r) for r, alpha in sorted(merged.items(), reverse=True) if alpha != 0.0
    )
    return ScalarSpan(terms)


@dataclass(frozen=True)
class Asymptotics:
    """Limits of a span at +inf and -inf; (0, 0) encodes the zero function."""

    at_plus_infinity: float
    at_minus_infinity: float

    @property
    def is_zero(self) -> bool:
        return self.at_plus_infinity == 0.0


def classify_asymptotics(s: ScalarSpan) -> Asymptotics:
    """Sign of the leading coefficient decides both limits.

    A nonzero span with leading term (alpha_1, r_1) runs to
    sign(alpha_1)*inf at +inf and the opposite at -inf, because the
    largest exponent dominates every other term.
    """
    if s.is_zero:
        return Asymptotics(0.0, 0.0)
    alpha1, _ = s.leading
    limit = math.copysign(math.inf, alpha1)
    return Asymptotics(limit, -limit)


def scalar_solve(s: ScalarSpan, y: float, tol: float) -> float:
    """Some t with |s(t) - y| <= tol, by asymptotics-guided bracketing + bisection."""
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if s.is_zero:
        raise NoSolutionError("cannot solve against the zero span")
    if abs(s.value(0.0) - y) <= tol:
        return 0.0

    asym = classify_asymptotics(s)
    positive_side = 1.0 if asym.at_plus_infinity > 0 else -1.0

    def residual(t: float) -> float:
        v = s.value(t)
        if math.isinf(v):
            return v
        return v - y

    # grow T until s(+-T) - y straddles zero; overflow reads as the limit
    span = 1.0
    while True:
        hi_t = positive_side * span
        lo_t = -positive_side * span
        if residual(hi_t) >= 0.0 and residual(lo_t) <= 0.0:
            lo, hi = (lo_t, hi_t) if lo_t < hi_t else (hi_t, lo_t)
            break
        span *= 2.0
        if span > BRACKET_CAP:
            raise ResourceError("bracket expansion cap reached; check tolerance and span")

    f_lo = residual(lo)
    best_t, best_res = (lo, abs(f_lo)) if not math.isinf(f_lo) else (hi, abs(residual(hi)))
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break  # adjacent floats: no further progress possible
        f_mid = residual(mid)
        if abs(f_mid) <= tol:
            return mid
        if abs(f_mid) < best_res:
            best_t, best_res = mid, abs(f_mid)
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise ResourceError(
        f"bisection stalled at residual {best_res:.3g} (tol {tol:.3g}) near t={best_t!r}"
    )


@dataclass(frozen=True)
class VectorSpanMember:
    """Combination sum(lambda_i * Phi_{r_i}) of coordinatewise sinh stacks.

    Each term couples a coefficient with an exponent vector in (R+)^n;
    coordinate j of the map applies phi with exponent r_i[j] to input j.
    An optional base surjection pre-composes the member (the member is
    then a map on the base's domain).
    """

    terms: tuple[tuple[float, tuple[float, ...]], ...]
    arity: int
    base: Optional["FunctionExpr"] = None

    def __post_init__(self):
        merged: dict[tuple[float, ...], float] = {}
        for lam, rvec in self.terms:
            rvec = tuple(float(r) for r in rvec)
            if len(rvec) != self.arity:
                raise DomainError(
                    f"exponent vector {rvec} has length {len(rvec)}, expected {self.arity}"
                )
            if any(r <= 0 for r in rvec):
                raise DomainError(f"exponent vector {rvec} must be strictly positive")
            merged[rvec] = merged.get(rvec, 0.0) + float(lam)
        normalized = tuple(
            (lam, rvec) for rvec, lam in sorted(merged.items(), reverse=True) if lam != 0.0
        )
        object.__setattr__(self, "terms", normalized)
        if self.base is not None and self.base.codomain_arity != self.arity:
            raise DomainError(
                f"base produces {self.base.codomain_arity} coordinates, member expects {self.arity}"
            )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def components(self) -> list[ScalarSpan]:
        return component_reduce(self)

    def value_at(self, u: Sequence[float]) -> tuple[float, ...]:
        """Apply the member to a point of R^n (ignores any base)."""
        if len(u) != self.arity:
            raise DomainError(f"point has arity {len(u)}, member expects {self.arity}")
        return tuple(span.value(float(x)) for span, x in zip(self.components(), u))

    def with_base(self, base: "FunctionExpr") -> "VectorSpanMember":
        return VectorSpanMember(self.terms, self.arity, base)

    def without_base(self) -> "VectorSpanMember":
        return VectorSpanMember(self.terms, self.arity, None)

    def describe(self) -> str:
        if self.is_zero:
            body = "0"
        else:
            body = " + ".join(
                f"{lam:g}*Phi[{','.join(f'{r:g}' for r in rvec)}]" for lam, rvec in self.terms
            )
        if self.base is not None:
            return f"({body}) o {self.base.describe()}"
        return body


def component_reduce(v: VectorSpanMember) -> list[ScalarSpan]:
    """Per-coordinate scalar spans; equal exponents merge and may cancel."""
    return [
        make_scalar_span([(lam, rvec[j]) for lam, rvec in v.terms]) for j in range(v.arity)
    ]


def make_diagonal_family(exponents: Sequence[float], n: int) -> list[VectorSpanMember]:
    """Basis members with constant exponent vector (r, ..., r), one per exponent.

    Every coordinate of a nonzero combination reduces to the same nonzero
    scalar span, so the combination is surjective coordinate by coordinate.
    """
    if n < 1:
        raise DomainError("arity must be at least 1")
    values = [float(r) for r in exponents]
    if len(set(values)) != len(values):
        raise DomainError("diagonal family exponents must be pairwise distinct")
    return [VectorSpanMember(((1.0, (r,) * n),), n) for r in values]


def combine_members(
    coefficients: Sequence[float], members: Sequence[VectorSpanMember]
) -> VectorSpanMember:
    """Linear combination of members sharing one arity (and one base, if any)."""
    if len(coefficients) != len(members):
        raise DomainError("need one coefficient per member")
    if not members:
        raise DomainError("cannot combine an empty family")
    arity = members[0].arity
    base = members[0].base
    terms: list[tuple[float, tuple[float, ...]]] = []
    for c, m in zip(coefficients, members):
        if m.arity != arity or m.base is not base:
            raise DomainError("members must share arity and base to combine")
        terms.extend((float(c) * lam, rvec) for lam, rvec in m.terms)
    return VectorSpanMember(tuple(terms), arity, base)
