"""Numerical certificates: box coverage, degeneracy, and independence ranks.

A coverage certificate records, for every grid target of a compact box,
a preimage witness and the residual it achieves under forward evaluation;
the certificate is sound exactly when every residual can be reproduced by
evaluate alone. Independence reports give the numerical rank of a finite
family's evaluation matrix under pivoted elimination.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DegenerateMemberError, DomainError, RefinementError
from .spans import ScalarSpan, VectorSpanMember, scalar_solve
from .surjections import (
    FunctionExpr,
    PhiCompose,
    compose_with_base,
    evaluate_at,
    evaluate_to_precision,
    member_as_expr,
    preimage,
)

DEFAULT_TARGET_BUDGET = 100_000
DEFAULT_RANK_TOL = 1e-8
_EQUILIBRATION_SWEEPS = 6

Certifiable = Union[FunctionExpr, VectorSpanMember]
FamilyFunction = Union[ScalarSpan, VectorSpanMember, FunctionExpr]


@dataclass(frozen=True)
class BoxSpec:
    """Compact box with per-coordinate bounds and a per-coordinate grid count."""

    bounds: tuple[tuple[float, float], ...]
    grid_points: int

    def __post_init__(self):
        object.__setattr__(
            self, "bounds", tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        )
        if self.grid_points < 2:
            raise DomainError("need at least two grid points per coordinate")
        for lo, hi in self.bounds:
            if not lo < hi:
                raise DomainError(f"bound ({lo}, {hi}) must satisfy low < high")

    @property
    def arity(self) -> int:
        return len(self.bounds)

    @property
    def target_count(self) -> int:
        return self.grid_points**self.arity

    def targets(self) -> list[tuple[float, ...]]:
        axes = [
            [lo + (hi - lo) * i / (self.grid_points - 1) for i in range(self.grid_points)]
            for lo, hi in self.bounds
        ]
        return [tuple(p) for p in itertools.product(*axes)]


@dataclass(frozen=True)
class Witness:
    """One target, the preimage found for it, and the forward residual."""

    target: tuple[float, ...]
    preimage: tuple
    achieved_error: float


@dataclass(frozen=True)
class CoverageCertificate:
    """Per-target witnesses for eps-surjectivity of a map on a box."""

    function_id: str
    box: BoxSpec
    epsilon: float
    witnesses: tuple[Witness, ...]
    status: str  # "certified" | "failed"
    worst_target: Optional[tuple[float, ...]] = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def detect_degenerate(v: VectorSpanMember) -> Optional[int]:
    """Index of the first coordinate whose reduced span is zero, if any.

    Nonzero combinations of diagonal-family members never trigger this;
    mixed exponent vectors can cancel coordinatewise while the member as a
    whole stays nonzero, and such members are not surjective.
    """
    for j, span in enumerate(v.components()):
        if span.is_zero:
            return j
    return None


def _as_pipeline(f: Certifiable) -> tuple[Optional[VectorSpanMember], Optional[FunctionExpr]]:
    """Split into (pure member, None) or (None, expression)."""
    if isinstance(f, VectorSpanMember):
        if f.base is None:
            return f, None
        return None, member_as_expr(f)
    if isinstance(f, FunctionExpr):
        return None, f
    raise DomainError(f"cannot certify an object of type {type(f).__name__}")


def _reject_degenerate(f: Certifiable) -> None:
    member = None
    if isinstance(f, VectorSpanMember):
        member = f
    elif isinstance(f, PhiCompose):
        member = f.member
    if member is not None:
        if member.is_zero:
            raise DegenerateMemberError(0)
        bad = detect_degenerate(member)
        if bad is not None:
            raise DegenerateMemberError(bad)


def certify_surjective_on_box(
    f: Certifiable,
    box: BoxSpec,
    eps: float,
    target_budget: int = DEFAULT_TARGET_BUDGET,
) -> CoverageCertificate:
    """Search a preimage for every grid target; certified iff all residuals <= eps.

    Degenerate span members are rejected outright (they are not
    surjective, so a failed certificate would be misleading). Witnesses
    are stored even on failure so that each can be re-checked by forward
    evaluation alone.
    """
    if eps <= 0:
        raise DomainError("tolerance must be positive")
    if box.target_count > target_budget:
        raise DomainError(
            f"{box.target_count} targets exceed budget {target_budget}; "
            f"raise target_budget to override"
        )
    _reject_degenerate(f)
    member, expr = _as_pipeline(f)
    function_id = member.describe() if member is not None else expr.describe()

    witnesses = []
    for target in box.targets():
        if member is not None:
            point = tuple(
                scalar_solve(span, y, eps / 2.0)
                for span, y in zip(member.components(), target)
            )
            values = member.value_at(point)
            achieved = max(abs(v - y) for v, y in zip(values, target))
        else:
            try:
                point = preimage(expr, target, eps)
                result = evaluate_to_precision(expr, point, eps / 8.0)
                achieved = max(abs(v - y) for v, y in zip(result.value, target))
            except RefinementError as err:
                point = err.best_witness if err.best_witness is not None else ()
                achieved = err.achieved if err.achieved is not None else math.inf
        witnesses.append(Witness(target, point, achieved))

    worst = max(witnesses, key=lambda w: w.achieved_error)
    certified = worst.achieved_error <= eps
    return CoverageCertificate(
        function_id=function_id,
        box=box,
        epsilon=eps,
        witnesses=tuple(witnesses),
        status="certified" if certified else "failed",
        worst_target=None if certified else worst.target,
    )


@dataclass(frozen=True)
class IndependenceReport:
    """Numerical rank evidence for a finite family at stored sample points."""

    family: tuple[str, ...]
    points: tuple[tuple[float, ...], ...]
    matrix_shape: tuple[int, int]
    rank: int
    tolerance: float
    pivot_ratios: tuple[float, ...] = field(default=(), compare=False)

    @property
    def full_rank(self) -> bool:
        return self.rank == len(self.family)


def _family_eval(f: FamilyFunction, point: tuple[float, ...], depth: int) -> tuple[float, ...]:
    if isinstance(f, ScalarSpan):
        return (f.value(point[0]),)
    if isinstance(f, VectorSpanMember):
        if f.base is None:
            return f.value_at(point)
        return evaluate_at(member_as_expr(f), point, depth).value
    if isinstance(f, FunctionExpr):
        return evaluate_at(f, point, depth).value
    raise DomainError(f"cannot evaluate an object of type {type(f).__name__}")


def _describe(f: FamilyFunction) -> str:
    return f.describe()


def _equilibrate(matrix: np.ndarray) -> np.ndarray:
    """Two-sided max scaling; the raw matrices of exponential families have
    a dynamic range that swamps any relative pivot threshold."""
    a = matrix.astype(float).copy()
    for _ in range(_EQUILIBRATION_SWEEPS):
        row_max = np.abs(a).max(axis=1, keepdims=True)
        row_max[row_max == 0.0] = 1.0
        a /= row_max
        col_max = np.abs(a).max(axis=0, keepdims=True)
        col_max[col_max == 0.0] = 1.0
        a /= col_max
    return a


def matrix_rank_pivoted(matrix: np.ndarray, tol: float) -> tuple[int, list[float]]:
    """Rank by complete-pivot elimination, cutoff at tol * (largest pivot).

    The matrix is equilibrated first; pivot ratios (relative to the first
    pivot) are returned for diagnostics.
    """
    a = _equilibrate(np.atleast_2d(np.asarray(matrix, dtype=float)))
    rows = list(range(a.shape[0]))
    cols = list(range(a.shape[1]))
    pivots: list[float] = []
    while rows and cols:
        sub = np.abs(a[np.ix_(rows, cols)])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        piv = float(sub[i, j])
        if piv == 0.0 or (pivots and piv <= tol * pivots[0]):
            break
        pivots.append(piv)
        pr, pc = rows[i], cols[j]
        for r in rows:
            if r != pr:
                a[r, :] -= (a[r, pc] / a[pr, pc]) * a[pr, :]
        rows.remove(pr)
        cols.remove(pc)
    ratios = [p / pivots[0] for p in pivots] if pivots else []
    return len(pivots), ratios


def independence_report(
    family: Sequence[FamilyFunction],
    points: Sequence[Sequence[float]],
    tol: float = DEFAULT_RANK_TOL,
    depth: int = 24,
) -> IndependenceReport:
    """Evaluation-matrix rank of the family at the sample points.

    Row i holds function i evaluated at every point, flattened over output
    coordinates; full rank certifies independence of the finite family.
    """
    if len(points) < len(family):
        raise DomainError("need at least as many sample points as family members")
    pts = [tuple(float(x) for x in p) for p in points]
    matrix = np.array(
        [[v for p in pts for v in _family_eval(f, p, depth)] for f in family], dtype=float
    )
    rank, ratios = matrix_rank_pivoted(matrix, tol)
    return IndependenceReport(
        family=tuple(_describe(f) for f in family),
        points=tuple(pts),
        matrix_shape=(matrix.shape[0], matrix.shape[1]),
        rank=rank,
        tolerance=tol,
        pivot_ratios=tuple(ratios),
    )


@dataclass(frozen=True)
class CompositionRankReport:
    """Ranks of a member family before and after pre-composition with a base."""

    composed: IndependenceReport
    direct: IndependenceReport

    @property
    def ranks_equal(self) -> bool:
        return self.composed.rank == self.direct.rank


def composition_preserves_rank(
    family: Sequence[VectorSpanMember],
    f: FunctionExpr,
    points: Sequence[Sequence[float]],
    tol: float = DEFAULT_RANK_TOL,
    depth: int = 24,
) -> CompositionRankReport:
    """Rank of {F_i o f} at the points versus rank of {F_i} at the image points.

    Pre-composition with a surjection cannot create a new linear relation,
    so the two ranks agree; a disagreement would falsify the pipeline.
    """
    pts = [tuple(float(x) for x in p) for p in points]
    images = [evaluate_at(f, p, depth).value for p in pts]
    composed_family = [compose_with_base(m.without_base(), f) for m in family]
    composed = independence_report(composed_family, pts, tol, depth)
    direct = independence_report([m.without_base() for m in family], images, tol, depth)
    return CompositionRankReport(composed=composed, direct=direct)


def equispaced_points(count: int, lo: float = 0.25, hi: float = 8.0) -> list[float]:
    """Positive scalar sample grid for independence checks.

    The basis functions are odd, so symmetric grids pair up as t, -t and
    halve the usable column count; an all-positive grid avoids that.
    """
    if count < 2:
        raise DomainError("need at least two points")
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def default_sample_points(count: int, arity: int = 1) -> list[tuple[float, ...]]:
    """Staggered positive sample points in R^arity."""
    base = equispaced_points(count)
    if arity == 1:
        return [(t,) for t in base]
    step = (base[1] - base[0]) / (arity + 1)
    return [tuple(t + j * step for j in range(arity)) for t in base]
