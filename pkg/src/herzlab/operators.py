"""Size-condition operators on uniformly sampled 1-d functions.

The uncentered maximal operator is evaluated exactly over the family of
intervals with endpoints on the grid (plus the evaluation point itself): for
grid step functions an optimal interval can always be slid to that family,
so the values are exact, and they converge to the true maximal function from
below under refinement.  The Hilbert transform uses the exact log primitive
of the kernel against piecewise-constant data, assembled with an FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .herz import HerzParams, annulus_measure
from .lorentz import (
    INF,
    LorentzParams,
    char_norm_constant,
    conjugate_exponent,
    lorentz_norm_from_steps,
)

__all__ = [
    "GridFunction1D",
    "BoundednessReport",
    "WitnessReport",
    "grid_indicator",
    "maximal_operator",
    "maximal_at_points",
    "hilbert_transform",
    "hilbert_at_points",
    "kernel_integral_at_points",
    "size_condition_check",
    "annulus_interaction_bound",
    "annulus_interaction_scan",
    "grid_annulus_profiles",
    "hl_norm_from_profiles",
    "grid_hl_norm",
    "grid_lp_norm",
    "in_window_weights",
    "boundedness_sweep",
    "out_of_range_witness",
    "interpolated_boundedness_check",
]


@dataclass(frozen=True)
class GridFunction1D:
    """Uniformly sampled function on [-R, R]: one value per cell."""

    half_width: float
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.half_width <= 0:
            raise ValueError("half width must be positive")
        if len(self.values) < 2 or len(self.values) % 2:
            raise ValueError("cell count must be even and at least 2")
        if any(not math.isfinite(v) for v in self.values):
            raise ValueError("cell values must be finite")

    @classmethod
    def from_array(cls, half_width: float, values: Iterable[float]) -> "GridFunction1D":
        return cls(half_width, tuple(float(v) for v in values))

    @property
    def n_cells(self) -> int:
        return len(self.values)

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / self.n_cells

    def nodes(self) -> np.ndarray:
        return -self.half_width + self.h * np.arange(self.n_cells + 1)

    def centers(self) -> np.ndarray:
        return -self.half_width + self.h * (np.arange(self.n_cells) + 0.5)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def refine(self) -> "GridFunction1D":
        """Same function on a doubled grid (each cell split in two)."""
        return GridFunction1D.from_array(
            self.half_width, np.repeat(self.array(), 2)
        )

    def value_at(self, x: float) -> float:
        if not -self.half_width <= x < self.half_width:
            return 0.0
        i = int((x + self.half_width) / self.h)
        return self.values[min(i, self.n_cells - 1)]


def grid_indicator(
    half_width: float, n_cells: int, lo: float, hi: float, two_sided: bool = False
) -> GridFunction1D:
    """Indicator of [lo, hi) (or {lo <= |x| < hi}) sampled on the grid."""
    h = 2.0 * half_width / n_cells
    centers = -half_width + h * (np.arange(n_cells) + 0.5)
    if two_sided:
        mask = (np.abs(centers) >= lo) & (np.abs(centers) < hi)
    else:
        mask = (centers >= lo) & (centers < hi)
    return GridFunction1D.from_array(half_width, mask.astype(float))


# ---------------------------------------------------------------------------
# uncentered maximal operator
# ---------------------------------------------------------------------------


def _cumulative_abs(f: GridFunction1D) -> np.ndarray:
    """Integral of |f| from the left edge, at every node."""
    out = np.empty(f.n_cells + 1)
    out[0] = 0.0
    np.cumsum(np.abs(f.array()) * f.h, out=out[1:])
    return out


def _one_sided_max(values: np.ndarray, h: float) -> np.ndarray:
    """sup over right grid nodes b of the average of |f| on [center, b].

    Scans cells right to left while maintaining the upper convex hull of the
    cumulative-integral graph over the nodes to the right; the best average
    is the max chord slope from the query point to a hull vertex, found by
    ternary search (the slope is unimodal along the hull).
    """
    n = len(values)
    absolute = np.abs(values)
    cum = np.concatenate(([0.0], np.cumsum(absolute * h)))
    t = h * np.arange(n + 1)
    out = np.empty(n)
    hull_t: list[float] = []  # stored in decreasing t
    hull_f: list[float] = []

    def push(tj: float, fj: float) -> None:
        # pop middle points that sink to or below the chord of their
        # neighbours: keeps only upper-hull vertices
        while len(hull_t) >= 2:
            tb, fb = hull_t[-1], hull_f[-1]
            tc, fc = hull_t[-2], hull_f[-2]
            if (tb - tj) * (fc - fj) - (fb - fj) * (tc - tj) >= 0.0:
                hull_t.pop()
                hull_f.pop()
            else:
                break
        hull_t.append(tj)
        hull_f.append(fj)

    for i in range(n - 1, -1, -1):
        push(t[i + 1], cum[i + 1])
        x = t[i] + 0.5 * h
        fx = cum[i] + 0.5 * h * absolute[i]

        def slope(k: int) -> float:
            return (hull_f[k] - fx) / (hull_t[k] - x)

        lo, hi = 0, len(hull_t) - 1
        while hi - lo > 2:
            m1 = lo + (hi - lo) // 3
            m2 = hi - (hi - lo) // 3
            if slope(m1) < slope(m2):
                lo = m1 + 1
            else:
                hi = m2
        out[i] = max(slope(k) for k in range(lo, hi + 1))
    return out


def maximal_operator(f: GridFunction1D) -> GridFunction1D:
    """Uncentered maximal function at cell centers, exact over the grid family.

    Any interval around x splits at x into two one-sided intervals whose
    averages bound the whole, so the sup equals max(|f(x)|, right-sided sup,
    left-sided sup).
    """
    vals = f.array()
    right = _one_sided_max(vals, f.h)
    left = _one_sided_max(vals[::-1], f.h)[::-1]
    return GridFunction1D.from_array(
        f.half_width, np.maximum(np.abs(vals), np.maximum(right, left))
    )


def maximal_at_points(f: GridFunction1D, xs: Sequence[float]) -> np.ndarray:
    """Uncentered maximal function at arbitrary points (direct evaluation)."""
    cum = _cumulative_abs(f)
    nodes = f.nodes()
    total = cum[-1]
    out = np.empty(len(xs))
    for k, x in enumerate(xs):
        if x <= nodes[0]:
            fx = 0.0
        elif x >= nodes[-1]:
            fx = total
        else:
            i = min(int((x - nodes[0]) / f.h), f.n_cells - 1)
            fx = cum[i] + abs(f.values[i]) * (x - nodes[i])
        best = abs(f.value_at(x))
        right = nodes > x
        if right.any():
            best = max(best, np.max((cum[right] - fx) / (nodes[right] - x)))
        left = nodes < x
        if left.any():
            best = max(best, np.max((fx - cum[left]) / (x - nodes[left])))
        out[k] = best
    return out


# ---------------------------------------------------------------------------
# Hilbert transform
# ---------------------------------------------------------------------------


def _node_jumps(f: GridFunction1D) -> np.ndarray:
    vals = f.array()
    return np.diff(vals, prepend=0.0, append=0.0)


def _linear_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n_out = len(a) + len(b) - 1
    size = 1
    while size < n_out:
        size <<= 1
    return np.fft.irfft(np.fft.rfft(a, size) * np.fft.rfft(b, size), size)[:n_out]


def hilbert_transform(f: GridFunction1D) -> GridFunction1D:
    """Principal-value convolution with 1/(pi (x - y)) at cell centers.

    For piecewise-constant data the kernel integrates per cell to a log
    primitive; summing by parts turns the result into a convolution of the
    node jumps with log distances, evaluated by FFT.  Cell centers never
    coincide with nodes, so no singular evaluation occurs; on the cell
    containing x the principal value cancels symmetrically.
    """
    n = f.n_cells
    jumps = _node_jumps(f)  # length n + 1, sums to zero
    m = np.arange(-n, n)  # center i minus node j
    kernel = np.log(np.abs((m + 0.5) * f.h))
    conv = _linear_convolve(jumps, kernel)
    out = conv[n : 2 * n] / math.pi
    return GridFunction1D.from_array(f.half_width, out)


def hilbert_at_points(f: GridFunction1D, xs: Sequence[float]) -> np.ndarray:
    """Exact evaluation at points that avoid the jump nodes of f."""
    jumps = _node_jumps(f)
    nodes = f.nodes()
    nz = np.nonzero(jumps)[0]
    out = np.empty(len(xs))
    for k, x in enumerate(xs):
        d = np.abs(x - nodes[nz])
        if np.any(d == 0.0):
            raise ValueError(f"evaluation point {x} sits on a jump of f")
        out[k] = float(np.dot(jumps[nz], np.log(d))) / math.pi
    return out


def kernel_integral_at_points(f: GridFunction1D, xs: Sequence[float]) -> np.ndarray:
    """integral of |f(y)| / |x - y| dy, exact per cell, x off the support."""
    vals = np.abs(f.array())
    nodes = f.nodes()
    nz = np.nonzero(vals)[0]
    out = np.empty(len(xs))
    for k, x in enumerate(xs):
        left = np.abs(x - nodes[nz])
        right = np.abs(x - nodes[nz + 1])
        if np.any(left == 0.0) or np.any(right == 0.0):
            raise ValueError(f"evaluation point {x} touches the support of f")
        out[k] = float(np.dot(vals[nz], np.abs(np.log(left) - np.log(right))))
    return out


_OPERATORS: dict[str, Callable[[GridFunction1D], GridFunction1D]] = {
    "maximal": maximal_operator,
    "hilbert": hilbert_transform,
}

_POINT_OPERATORS: dict[str, Callable[[GridFunction1D, Sequence[float]], np.ndarray]] = {
    "maximal": maximal_at_points,
    "hilbert": hilbert_at_points,
}


@dataclass(frozen=True)
class SizeConditionReport:
    max_ratio: float
    refined_ratio: float
    drift: float
    points: int
    passed: bool


def size_condition_check(
    operator: str,
    f: GridFunction1D,
    margin: int = 4,
    drift_tol: float = 0.05,
) -> SizeConditionReport:
    """Pointwise kernel bound |Tf(x)| <= C int |f(y)|/|x-y| dy off the support.

    Evaluates the ratio at all cell centers at least `margin` cells away from
    the support of f, records the largest constant C, and repeats on a doubled
    grid; passing requires a finite constant that is stable under refinement.
    """
    if operator not in _POINT_OPERATORS:
        raise ValueError(f"unknown operator {operator!r}")

    def max_ratio(g: GridFunction1D) -> tuple[float, int]:
        vals = np.abs(g.array())
        support = np.nonzero(vals)[0]
        if support.size == 0:
            return 0.0, 0
        idx = np.arange(g.n_cells)
        dist = np.minimum.reduce(
            [np.abs(idx - s) for s in (support[0], support[-1])]
        )
        inside = (idx >= support[0]) & (idx <= support[-1])
        ok = (~inside) & (dist >= margin)
        pts = g.centers()[ok]
        if pts.size == 0:
            raise ValueError("no off-support evaluation points available")
        t_vals = np.abs(_POINT_OPERATORS[operator](g, pts))
        k_vals = kernel_integral_at_points(g, pts)
        return float(np.max(t_vals / k_vals)), int(pts.size)

    base, n_pts = max_ratio(f)
    refined, _ = max_ratio(f.refine())
    drift = abs(refined - base) / base if base > 0 else 0.0
    passed = math.isfinite(base) and drift <= drift_tol
    return SizeConditionReport(base, refined, drift, n_pts, passed)


# ---------------------------------------------------------------------------
# annulus interaction bound
# ---------------------------------------------------------------------------


def _char_lorentz_norm(u: int, dim: int, params: LorentzParams) -> float:
    return char_norm_constant(params) * float(annulus_measure(u, dim)) ** (
        1.0 / params.p
    )


def annulus_interaction_bound(
    u: int, v: int, dim: int, params: LorentzParams
) -> tuple[float, float]:
    """(lhs, 2^{(N/p')(v-u)}) for the annulus pair (u, v).

    lhs = 2^{-uN} ||X_{A_u}||_{p,r} ||X_{A_v}||_{p',r'}; the second component
    is the claimed decay profile, so lhs / rhs is the constant the pair
    requires.
    """
    if not (1 < params.p < INF and params.r >= 1):
        raise ValueError("need 1 < p < inf and 1 <= r <= inf")
    conj = params.conjugate()
    lhs = (
        2.0 ** (-u * dim)
        * _char_lorentz_norm(u, dim, params)
        * _char_lorentz_norm(v, dim, conj)
    )
    rhs = 2.0 ** ((dim / conj.p) * (v - u))
    return lhs, rhs


@dataclass(frozen=True)
class InteractionScanReport:
    constant: float
    argmax: tuple[int, int]
    window: tuple[int, int]
    passed: bool


def annulus_interaction_scan(
    dim: int,
    params: LorentzParams,
    window: tuple[int, int] = (-1, 60),
) -> InteractionScanReport:
    """Tightest single constant over the scanned (u, v) window."""
    lo, hi = window
    best, arg = 0.0, (lo, lo)
    for u in range(lo, hi + 1):
        for v in range(lo, hi + 1):
            lhs, rhs = annulus_interaction_bound(u, v, dim, params)
            ratio = lhs / rhs
            if ratio > best:
                best, arg = ratio, (u, v)
    return InteractionScanReport(best, arg, window, math.isfinite(best))


# ---------------------------------------------------------------------------
# grid functions -> Lorentz-Herz norms
# ---------------------------------------------------------------------------


def grid_annulus_profiles(
    f: GridFunction1D,
) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """Per-annulus rearrangement steps (u, levels desc, cumulative widths).

    Cells straddling a dyadic radius are split exactly, so the annulus
    restrictions partition the grid window and the only approximation in the
    pipeline stays inside the operator, not the norm.
    """
    vals = f.array()
    el = f.nodes()[:-1]
    er = f.nodes()[1:]
    u_max = max(0, math.ceil(math.log2(f.half_width)))
    out = []
    for u in range(-1, u_max + 1):
        if u == -1:
            lo, hi = 0.0, 0.5
        else:
            lo, hi = 2.0 ** (u - 1), 2.0**u
        pos = np.clip(np.minimum(er, hi) - np.maximum(el, lo), 0.0, None)
        neg = np.clip(np.minimum(er, -lo) - np.maximum(el, -hi), 0.0, None)
        widths = pos + neg
        mask = (widths > 0.0) & (vals != 0.0)
        if not mask.any():
            continue
        w = np.abs(vals[mask])
        m = widths[mask]
        order = np.argsort(-w, kind="stable")
        out.append((u, w[order], np.cumsum(m[order])))
    return out


def hl_norm_from_profiles(
    profiles: Sequence[tuple[int, np.ndarray, np.ndarray]], params: HerzParams
) -> float:
    p, r, a, q = params.p, params.r, params.a, params.q
    scores = [
        (u, lorentz_norm_from_steps(levels, knots, p, r))
        for u, levels, knots in profiles
    ]
    if not scores:
        return 0.0
    if q == INF:
        return max(2.0 ** (u * a) * s for u, s in scores)
    return math.fsum((2.0 ** (u * a) * s) ** q for u, s in scores) ** (1.0 / q)


def grid_hl_norm(f: GridFunction1D, params: HerzParams) -> float:
    """Lorentz-Herz norm of a grid function restricted to its window."""
    return hl_norm_from_profiles(grid_annulus_profiles(f), params)


def grid_lp_norm(f: GridFunction1D, p: float) -> float:
    """Plain Lebesgue norm, computed directly cell by cell."""
    vals = np.abs(f.array())
    if p == INF:
        return float(vals.max())
    return float(np.sum(vals**p) * f.h) ** (1.0 / p)


# ---------------------------------------------------------------------------
# boundedness experiments
# ---------------------------------------------------------------------------


def in_window_weights(p: float, dim: int = 1, count: int = 5) -> list[float]:
    """`count` weight exponents strictly inside (-N/p, N/p')."""
    lo = -dim / p
    hi = dim / conjugate_exponent(p)
    return [lo + (hi - lo) * k / (count + 1) for k in range(1, count + 1)]


@dataclass(frozen=True)
class SweepCell:
    operator: str
    a: float
    p: float
    q: float
    r: float
    ratio: float
    refined_ratio: float
    drift: float
    passed: bool


@dataclass(frozen=True)
class BoundednessReport:
    cells: tuple[SweepCell, ...]
    excluded: tuple[tuple[str, str], ...]
    max_ratio: float
    passed: bool


def _sweep_ratios(
    operator: str,
    corpus: Sequence[GridFunction1D],
    cells: Sequence[tuple[float, float, float, float]],
    drift_tol: float,
) -> list[SweepCell]:
    transformed = []
    for f in corpus:
        fr = f.refine()
        transformed.append(
            (
                grid_annulus_profiles(f),
                grid_annulus_profiles(_OPERATORS[operator](f)),
                grid_annulus_profiles(fr),
                grid_annulus_profiles(_OPERATORS[operator](fr)),
            )
        )
    rows = []
    for a, p, q, r in cells:
        params = HerzParams(a, p, q, r)
        base_ratio = 0.0
        fine_ratio = 0.0
        for prof_f, prof_tf, prof_fr, prof_tfr in transformed:
            denom = hl_norm_from_profiles(prof_f, params)
            if denom == 0.0:
                continue
            base_ratio = max(
                base_ratio, hl_norm_from_profiles(prof_tf, params) / denom
            )
            denom_r = hl_norm_from_profiles(prof_fr, params)
            fine_ratio = max(
                fine_ratio, hl_norm_from_profiles(prof_tfr, params) / denom_r
            )
        drift = abs(fine_ratio - base_ratio) / base_ratio if base_ratio > 0 else 0.0
        passed = math.isfinite(base_ratio) and drift <= drift_tol
        rows.append(SweepCell(operator, a, p, q, r, base_ratio, fine_ratio, drift, passed))
    return rows


def boundedness_sweep(
    operator: str,
    corpus: Sequence[GridFunction1D],
    ps: Sequence[float] = (1.5, 2.0, 4.0),
    qs: Sequence[float] = (1.0, 2.0, INF),
    rs: Sequence[float] = (1.0, 2.0, INF),
    weight_count: int = 5,
    dim: int = 1,
    drift_tol: float = 0.05,
) -> BoundednessReport:
    """Operator-norm ratios over the admissible parameter grid.

    Cells outside the hypotheses (for the Hilbert transform, r = inf, whose
    endpoint Lorentz boundedness is not available) are excluded with a
    reason, never failed.  Each admitted cell reports the corpus-max ratio
    at the given grid and after one refinement doubling; passing requires
    drift at most `drift_tol`.
    """
    if operator not in _OPERATORS:
        raise ValueError(f"unknown operator {operator!r}")
    cells = []
    excluded = []
    for p in ps:
        for q in qs:
            for r in rs:
                label = f"a=*,p={p},q={q},r={r}"
                if not 1 < p < INF:
                    excluded.append((label, "needs 1 < p < inf"))
                    continue
                if q < 1 or r < 1:
                    excluded.append((label, "needs q, r >= 1"))
                    continue
                if operator == "hilbert" and r == INF:
                    excluded.append(
                        (label, "singular-kernel route needs r < inf")
                    )
                    continue
                for a in in_window_weights(p, dim, weight_count):
                    cells.append((a, p, q, r))
    rows = _sweep_ratios(operator, corpus, cells, drift_tol)
    max_ratio = max((row.ratio for row in rows), default=0.0)
    passed = all(row.passed for row in rows)
    return BoundednessReport(tuple(rows), tuple(excluded), max_ratio, passed)


@dataclass(frozen=True)
class WitnessReport:
    a: float
    p: float
    q: float
    r: float
    ratios: tuple[float, ...]
    growing: bool


def out_of_range_witness(
    a: float | None = None,
    p: float = 2.0,
    q: float = 1.0,
    r: float = 2.0,
    family_size: int = 8,
    cells_per_side: int = 4096,
    dim: int = 1,
) -> WitnessReport:
    """Ratio family for annulus indicators at a weight beyond the window.

    Uses f = X_{A_v} for v = 1..V on grids scaled with the support
    (half width 2^{v+1}, fixed cell count), and reports whether the ratios
    for the maximal operator grow monotonically in v.  No unboundedness
    claim is made beyond the scanned family.
    """
    if a is None:
        a = dim / conjugate_exponent(p) + 0.5
    if a < dim / conjugate_exponent(p):
        raise ValueError("witness weight must sit at or beyond the window edge")
    params = HerzParams(a, p, q, r)
    ratios = []
    for v in range(1, family_size + 1):
        half = 2.0 ** (v + 1)
        f = grid_indicator(half, 2 * cells_per_side, 2.0 ** (v - 1), 2.0**v, two_sided=True)
        mf = maximal_operator(f)
        ratios.append(grid_hl_norm(mf, params) / grid_hl_norm(f, params))
    growing = family_size >= 2 and all(
        s < t for s, t in zip(ratios, ratios[1:])
    )
    return WitnessReport(a, p, q, r, tuple(ratios), growing)


@dataclass(frozen=True)
class InterpolatedBoundednessReport:
    p: float
    q: float
    a: float
    ratio: float
    sweep_ratio: float
    agreement: float
    passed: bool


def interpolated_boundedness_check(
    operator: str,
    p: float,
    q: float,
    a: float,
    corpus: Sequence[GridFunction1D],
    drift_tol: float = 0.05,
) -> InterpolatedBoundednessReport:
    """Boundedness on the r = q diagonal, where only Lebesgue bounds enter.

    Restricted to linear operators (the Hilbert transform here); cross-checks
    the resulting corpus-max ratio against the generic sweep machinery at
    r = q.
    """
    if operator != "hilbert":
        raise ValueError("the strengthened diagonal conclusion needs a linear operator")
    if not (1 < p < INF and 0 < q < INF):
        raise ValueError("need 1 < p < inf and 0 < q < inf")
    window_lo, window_hi = -1.0 / p, 1.0 / conjugate_exponent(p)
    if not window_lo < a < window_hi:
        raise ValueError("weight exponent outside the admissible window")
    params = HerzParams(a, p, q, q)
    ratio = 0.0
    for f in corpus:
        denom = grid_hl_norm(f, params)
        if denom == 0.0:
            continue
        ratio = max(ratio, grid_hl_norm(hilbert_transform(f), params) / denom)
    rows = _sweep_ratios("hilbert", corpus, [(a, p, q, q)], drift_tol)
    sweep_ratio = rows[0].ratio
    agreement = abs(ratio - sweep_ratio) / ratio if ratio > 0 else 0.0
    passed = math.isfinite(ratio) and agreement <= 1e-6 and rows[0].passed
    return InterpolatedBoundednessReport(p, q, a, ratio, sweep_ratio, agreement, passed)
