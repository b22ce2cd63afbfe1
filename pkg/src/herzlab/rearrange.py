"""Radial step functions and their decreasing rearrangements.

Everything in this module is exact: radii, values and measures are kept as
`fractions.Fraction`, so distribution functions, rearrangements and their
integrals satisfy equimeasurability and mass conservation as identities, not
up to rounding.  Floats enter only when a caller converts a measure or level
for norm evaluation.

A radial step function on R^N is piecewise constant in |x| with finitely many
shells and bounded support.  Its decreasing rearrangement is again a step
function, obtained by sorting shells by |value| and accumulating measures.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Number = int | float | Fraction

__all__ = [
    "RadialStepFunction",
    "StepRearrangement",
    "SumBoundReport",
    "radial_step",
    "ball",
    "unit_ball_volume",
    "distribution",
    "rearrangement",
    "rearrangement_from_pairs",
    "average_rearrangement",
    "sum_bound_check",
    "pointwise_sum",
    "scale",
    "restrict_radii",
    "common_refinement",
    "integrate_abs_product",
]


def _as_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@lru_cache(maxsize=None)
def unit_ball_volume(dim: int) -> Fraction:
    """Volume of the unit ball in R^dim, as an exact rational.

    For dim >= 2 the value is irrational; we pin the correctly rounded float
    once so that all downstream measure arithmetic stays exact and
    self-consistent.  dim = 1 gives exactly 2.
    """
    if dim < 1:
        raise ValueError("dimension must be a positive integer")
    if dim == 1:
        return Fraction(2)
    return Fraction(math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0))


@dataclass(frozen=True)
class RadialStepFunction:
    """Piecewise-constant-in-|x| function with finite support.

    ``breakpoints`` are strictly increasing radii starting at 0; ``values``
    holds one (possibly signed) value per shell {rho_{i-1} <= |x| < rho_i}.
    The function vanishes for |x| >= breakpoints[-1].  Instances are
    canonical: adjacent equal values are merged and trailing zero shells are
    stripped, so `==` is semantic equality.
    """

    dim: int
    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be a positive integer")
        bp = self.breakpoints
        if not bp or bp[0] != 0:
            raise ValueError("breakpoints must start at 0")
        if any(b >= c for b, c in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.values) != len(bp) - 1:
            raise ValueError("need exactly one value per shell")

    @property
    def support_radius(self) -> Fraction:
        return self.breakpoints[-1]

    def shell_measures(self) -> tuple[Fraction, ...]:
        """Lebesgue measure of each shell, omega_N (rho_i^N - rho_{i-1}^N)."""
        w = unit_ball_volume(self.dim)
        bp = self.breakpoints
        n = self.dim
        return tuple(w * (bp[i + 1] ** n - bp[i] ** n) for i in range(len(self.values)))

    def support_measure(self) -> Fraction:
        return sum(
            (m for m, v in zip(self.shell_measures(), self.values) if v != 0),
            Fraction(0),
        )

    def abs_integral(self) -> Fraction:
        """Integral of |f| over R^N."""
        return sum(
            (abs(v) * m for m, v in zip(self.shell_measures(), self.values)),
            Fraction(0),
        )

    def power_integral(self, p: float) -> float:
        """Integral of |f|^p, evaluated directly shell by shell."""
        return math.fsum(
            float(abs(v)) ** p * float(m)
            for m, v in zip(self.shell_measures(), self.values)
            if v != 0
        )

    def value_at_radius(self, rho: Number) -> Fraction:
        r = _as_fraction(rho)
        if r < 0:
            raise ValueError("radius must be nonnegative")
        if r >= self.breakpoints[-1]:
            return Fraction(0)
        i = bisect_right(self.breakpoints, r) - 1
        return self.values[i]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __abs__(self) -> "RadialStepFunction":
        return radial_step(self.dim, self.breakpoints, [abs(v) for v in self.values])


def radial_step(
    dim: int,
    breakpoints: Sequence[Number],
    values: Sequence[Number],
) -> RadialStepFunction:
    """Build a canonical RadialStepFunction from arbitrary numeric input."""
    bp = [_as_fraction(b) for b in breakpoints]
    vals = [_as_fraction(v) for v in values]
    if not bp:
        raise ValueError("breakpoints must start at 0")
    if bp[0] != 0:
        if all(b > 0 for b in bp) and len(vals) == len(bp):
            bp = [Fraction(0)] + bp  # tolerate inputs that omit the leading 0
        else:
            raise ValueError("breakpoints must start at 0")
    if any(a >= b for a, b in zip(bp, bp[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    if len(vals) != len(bp) - 1:
        raise ValueError("need exactly one value per shell")
    # merge adjacent shells of equal value
    merged_bp = [bp[0]]
    merged_vals: list[Fraction] = []
    for b, v in zip(bp[1:], vals):
        if merged_vals and v == merged_vals[-1]:
            merged_bp[-1] = b
        else:
            merged_bp.append(b)
            merged_vals.append(v)
    # strip trailing zero shells
    while merged_vals and merged_vals[-1] == 0:
        merged_vals.pop()
        merged_bp.pop()
    if not merged_vals:
        return RadialStepFunction(dim, (Fraction(0), Fraction(1)), (Fraction(0),))
    return RadialStepFunction(dim, tuple(merged_bp), tuple(merged_vals))


def ball(dim: int, measure: Number, value: Number = 1) -> RadialStepFunction:
    """Indicator (times `value`) of a centered ball with the given measure."""
    mu = _as_fraction(measure)
    if mu <= 0:
        raise ValueError("measure must be positive")
    w = unit_ball_volume(dim)
    ratio = mu / w
    if dim == 1:
        rho = ratio
    else:
        rho = Fraction(float(ratio) ** (1.0 / dim))
        # refine so that omega * rho^N reproduces the requested measure to
        # float precision; exactness is only available for dim = 1
    return radial_step(dim, [0, rho], [value])


@dataclass(frozen=True)
class StepRearrangement:
    """Nonincreasing step profile f* on [0, infinity).

    ``knots`` are the cumulative measures 0 < t_1 < ... < t_k and ``levels``
    the strictly decreasing positive values w_1 > ... > w_k taken on
    [t_{j-1}, t_j).  The profile is right-continuous and vanishes beyond t_k.
    """

    knots: tuple[Fraction, ...]
    levels: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.knots) != len(self.levels):
            raise ValueError("knots and levels must pair up")
        if any(t <= s for s, t in zip((Fraction(0),) + self.knots, self.knots)):
            raise ValueError("knots must be strictly increasing and positive")
        if any(w <= v for w, v in zip(self.levels, self.levels[1:])):
            raise ValueError("levels must be strictly decreasing")
        if self.levels and self.levels[-1] <= 0:
            raise ValueError("levels must be positive (zero tail is implicit)")

    @property
    def support_bound(self) -> Fraction:
        return self.knots[-1] if self.knots else Fraction(0)

    @property
    def top_level(self) -> Fraction:
        """f*(0), the essential supremum."""
        return self.levels[0] if self.levels else Fraction(0)

    def value_at(self, t: Number) -> Fraction:
        """Right-continuous evaluation of f* at t >= 0."""
        s = _as_fraction(t)
        if s < 0:
            raise ValueError("argument must be nonnegative")
        for knot, level in zip(self.knots, self.levels):
            if s < knot:
                return level
        return Fraction(0)

    def integral_up_to(self, t: Number) -> Fraction:
        """Exact integral of f* over [0, t]."""
        s = _as_fraction(t)
        if s < 0:
            raise ValueError("argument must be nonnegative")
        total = Fraction(0)
        prev = Fraction(0)
        for knot, level in zip(self.knots, self.levels):
            if s <= knot:
                return total + level * (s - prev)
            total += level * (knot - prev)
            prev = knot
        return total

    def total_mass(self) -> Fraction:
        return self.integral_up_to(self.support_bound)

    def segment_masses(self) -> tuple[Fraction, ...]:
        prev = Fraction(0)
        out = []
        for knot in self.knots:
            out.append(knot - prev)
            prev = knot
        return tuple(out)

    def superlevel_measure(self, alpha: Number) -> Fraction:
        """Measure of {f* > alpha}; the distribution function of the profile."""
        a = _as_fraction(alpha)
        if a < 0:
            raise ValueError("level must be nonnegative")
        out = Fraction(0)
        for knot, level in zip(self.knots, self.levels):
            if level > a:
                out = knot
        return out

    def float_steps(self) -> tuple[list[float], list[float]]:
        """(levels, knots) as floats, for norm evaluation."""
        return [float(w) for w in self.levels], [float(t) for t in self.knots]


def rearrangement_from_pairs(
    pairs: Iterable[tuple[Fraction, Fraction]],
) -> StepRearrangement:
    """Rearrangement of a step function given as (measure, |value|) pieces."""
    groups: dict[Fraction, Fraction] = {}
    for measure, value in pairs:
        if measure < 0:
            raise ValueError("piece measures must be nonnegative")
        if measure == 0 or value == 0:
            continue
        v = abs(value)
        groups[v] = groups.get(v, Fraction(0)) + measure
    levels = sorted(groups, reverse=True)
    knots: list[Fraction] = []
    acc = Fraction(0)
    for w in levels:
        acc += groups[w]
        knots.append(acc)
    return StepRearrangement(tuple(knots), tuple(levels))


def distribution(f: RadialStepFunction, alpha: Number) -> Fraction:
    """Measure of the superlevel set {|f| > alpha}."""
    a = _as_fraction(alpha)
    if a < 0:
        raise ValueError("alpha must be nonnegative")
    return sum(
        (m for m, v in zip(f.shell_measures(), f.values) if abs(v) > a),
        Fraction(0),
    )


def rearrangement(f: RadialStepFunction) -> StepRearrangement:
    """Decreasing rearrangement f* of a radial step function."""
    return rearrangement_from_pairs(zip(f.shell_measures(), f.values))


def average_rearrangement(g: StepRearrangement, t: Number) -> Fraction:
    """f**(t) = (1/t) integral_0^t f*, evaluated exactly."""
    s = _as_fraction(t)
    if s <= 0:
        raise ValueError("t must be positive")
    return g.integral_up_to(s) / s


def _merge_breakpoints(fs: Sequence[RadialStepFunction]) -> list[Fraction]:
    cuts: set[Fraction] = {Fraction(0)}
    for f in fs:
        cuts.update(f.breakpoints)
    return sorted(cuts)


def common_refinement(
    fs: Sequence[RadialStepFunction],
) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Shared breakpoint grid and per-function shell values on it."""
    if not fs:
        raise ValueError("need at least one function")
    dim = fs[0].dim
    if any(f.dim != dim for f in fs):
        raise ValueError("functions must live on the same R^N")
    cuts = _merge_breakpoints(fs)
    rows = []
    for f in fs:
        rows.append([f.value_at_radius(lo) for lo in cuts[:-1]])
    return cuts, rows


def pointwise_sum(fs: Sequence[RadialStepFunction]) -> RadialStepFunction:
    cuts, rows = common_refinement(fs)
    summed = [sum(col, Fraction(0)) for col in zip(*rows)]
    return radial_step(fs[0].dim, cuts, summed)


def scale(f: RadialStepFunction, alpha: Number) -> RadialStepFunction:
    a = _as_fraction(alpha)
    return radial_step(f.dim, f.breakpoints, [a * v for v in f.values])


def restrict_radii(
    f: RadialStepFunction, lo: Number, hi: Number
) -> RadialStepFunction:
    """Restriction of f to the shell {lo <= |x| < hi}."""
    lo_f, hi_f = _as_fraction(lo), _as_fraction(hi)
    if not 0 <= lo_f < hi_f:
        raise ValueError("need 0 <= lo < hi")
    cuts = sorted({lo_f, hi_f, *f.breakpoints, Fraction(0)})
    vals = []
    for a, b in zip(cuts, cuts[1:]):
        inside = lo_f <= a and b <= hi_f
        vals.append(f.value_at_radius(a) if inside else Fraction(0))
    return radial_step(f.dim, cuts, vals)


def integrate_abs_product(f: RadialStepFunction, g: RadialStepFunction) -> Fraction:
    """Exact integral of |f g| over the common shell refinement."""
    cuts, (fv, gv) = common_refinement([f, g])
    w = unit_ball_volume(f.dim)
    n = f.dim
    total = Fraction(0)
    for a, b, x, y in zip(cuts, cuts[1:], fv, gv):
        if x != 0 and y != 0:
            total += abs(x * y) * w * (b**n - a**n)
    return total


@dataclass(frozen=True)
class SumBoundReport:
    lhs: Fraction
    rhs_thm: Fraction
    rhs_cor: Fraction
    passed: bool


def sum_bound_check(
    fs: Sequence[RadialStepFunction],
    t: Number,
    cs: Sequence[Number],
) -> SumBoundReport:
    """Rearrangement-of-sums bounds, checked exactly.

    With weights c_n > 0 summing to 1, verifies

        (sum f_n)*(3t) <= sum_n [ f_n**(t) + (1/t) int_{c_n t}^{t} f_n* ]

    and the weight-free consequence (sum f_n)*(3t) <= 2 sum_n f_n**(t).
    Both sides are rational, so `passed` reflects exact comparisons.
    """
    if not fs:
        raise ValueError("need at least one function")
    if any(any(v < 0 for v in f.values) for f in fs):
        raise ValueError("the bound applies to nonnegative functions only")
    if len(cs) != len(fs):
        raise ValueError("one weight per function required")
    weights = [_as_fraction(c) for c in cs]
    if any(c <= 0 for c in weights):
        raise ValueError("weights must be positive")
    if abs(float(sum(weights)) - 1.0) > 1e-12:
        raise ValueError("weights must sum to 1")
    tt = _as_fraction(t)
    if tt <= 0:
        raise ValueError("t must be positive")

    total = pointwise_sum(fs)
    lhs = rearrangement(total).value_at(3 * tt)
    rhs_thm = Fraction(0)
    rhs_cor = Fraction(0)
    for f, c in zip(fs, weights):
        star = rearrangement(f)
        avg = average_rearrangement(star, tt)
        rhs_thm += avg + (star.integral_up_to(tt) - star.integral_up_to(c * tt)) / tt
        rhs_cor += 2 * avg
    return SumBoundReport(lhs, rhs_thm, rhs_cor, lhs <= rhs_thm and lhs <= rhs_cor)
