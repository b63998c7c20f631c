"""Exact finite-depth Hilbert-curve codec on [0,1] -> [0,1]^2.

The depth-k approximant walks the 4^k cells of the 2^k x 2^k grid in the
classic Hilbert order: entry at the lower-left corner, exit at the
lower-right corner, first quadrant step upward (LL -> UL -> UR -> LR).
All arithmetic on parameters and cells is exact; floating point appears
only when callers convert the returned dyadic coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, ResourceError

DEFAULT_DEPTH_CAP = 12

RealLike = Union[int, float, Fraction, "CurveParam"]


@dataclass(frozen=True)
class CurveParam:
    """Curve parameter numerator / 4**depth in [0, 1], stored canonically.

    Construction reduces by powers of 4, so two parameters with the same
    rational value compare equal whatever depth they were produced at.
    """

    numerator: int
    depth: int

    def __post_init__(self):
        num, dep = self.numerator, self.depth
        if dep < 0 or num < 0 or num > 4**dep:
            raise DomainError(f"curve parameter {num}/4^{dep} outside [0, 1]")
        while dep > 0 and num % 4 == 0:
            num //= 4
            dep -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "depth", dep)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 4**self.depth)

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class PlanePoint:
    """Exact dyadic point of the unit square."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if not (0 <= self.x <= 1 and 0 <= self.y <= 1):
            raise DomainError(f"point ({self.x}, {self.y}) outside the unit square")

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


@dataclass(frozen=True)
class CellAddress:
    """One cell of the depth-k dyadic grid; col/row count from the lower left."""

    depth: int
    col: int
    row: int

    def __post_init__(self):
        side = 1 << self.depth
        if self.depth < 0 or not (0 <= self.col < side and 0 <= self.row < side):
            raise DomainError(f"cell ({self.col}, {self.row}) invalid at depth {self.depth}")

    def center(self) -> PlanePoint:
        denom = 1 << (self.depth + 1)
        return PlanePoint(Fraction(2 * self.col + 1, denom), Fraction(2 * self.row + 1, denom))


def _rot(s: int, x: int, y: int, rx: int, ry: int) -> tuple[int, int]:
    if ry == 0:
        if rx == 1:
            x = s - 1 - x
            y = s - 1 - y
        x, y = y, x
    return x, y


def _d2xy(k: int, d: int) -> tuple[int, int]:
    """Curve index -> grid coordinates at depth k (base-4 digit walk)."""
    x = y = 0
    t = d
    s = 1
    while s < (1 << k):
        rx = 1 & (t // 2)
        ry = 1 & (t ^ rx)
        x, y = _rot(s, x, y, rx, ry)
        x += s * rx
        y += s * ry
        t //= 4
        s *= 2
    return x, y


def _xy2d(k: int, x: int, y: int) -> int:
    """Grid coordinates -> curve index at depth k."""
    d = 0
    s = (1 << k) >> 1
    while s > 0:
        rx = 1 if (x & s) > 0 else 0
        ry = 1 if (y & s) > 0 else 0
        d += s * s * ((3 * rx) ^ ry)
        x, y = _rot(s, x, y, rx, ry)
        s >>= 1
    return d


def as_param_value(t: RealLike) -> Fraction:
    """Coerce a parameter to an exact Fraction in [0, 1]."""
    if isinstance(t, CurveParam):
        return t.value
    value = Fraction(t)
    if not 0 <= value <= 1:
        raise DomainError(f"parameter {t} outside [0, 1]")
    return value


def hilbert_encode(t: RealLike, k: int) -> tuple[CellAddress, PlanePoint]:
    """Depth-k cell visited at parameter t, and its center.

    The cell is the one whose quarter interval [i/4^k, (i+1)/4^k) contains
    t; t = 1 maps to the final cell. Deterministic and exact.
    """
    if k < 0:
        raise DomainError("depth must be non-negative")
    value = as_param_value(t)
    cells = 4**k
    index = min(math.floor(value * cells), cells - 1) if cells > 1 else 0
    col, row = _d2xy(k, index)
    cell = CellAddress(k, col, row)
    return cell, cell.center()


def cell_of(p: PlanePoint | tuple, k: int) -> CellAddress:
    """Depth-k cell containing p; boundary ties break toward the lower left."""
    if not isinstance(p, PlanePoint):
        p = PlanePoint(Fraction(p[0]), Fraction(p[1]))
    side = 1 << k
    col = max(math.ceil(p.x * side) - 1, 0)
    row = max(math.ceil(p.y * side) - 1, 0)
    return CellAddress(k, col, row)


def hilbert_decode(p: PlanePoint | tuple, k: int) -> CurveParam:
    """A parameter whose depth-k cell contains p.

    Round trip: hilbert_encode(hilbert_decode(p, k), k) yields the cell
    containing p (lower-left tie break on boundaries).
    """
    if k < 0:
        raise DomainError("depth must be non-negative")
    cell = cell_of(p, k)
    index = _xy2d(k, cell.col, cell.row)
    return CurveParam(index, k)


def curve_trace(k: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> list[PlanePoint]:
    """The 4^k cell centers in traversal order.

    Consecutive points differ by exactly one coordinate step of 2^-k.
    """
    if k < 0:
        raise DomainError("depth must be non-negative")
    if k > depth_cap:
        raise ResourceError(f"depth {k} exceeds cap {depth_cap}; raise depth_cap to override")
    denom = 1 << (k + 1)
    points = []
    for d in range(4**k):
        col, row = _d2xy(k, d)
        points.append(PlanePoint(Fraction(2 * col + 1, denom), Fraction(2 * row + 1, denom)))
    return points


def modulus_bound(k: int) -> float:
    """delta_k = 2 * 2^-k: |t-s| <= 4^-k implies sup-distance of encodings <= delta_k."""
    return 2.0 * 2.0 ** (-k)
