"""
Numerical property verifier.

Re-derives the property flags of representing functions (in r) and of
assembled losses (in t) from sampled values only: second differences for
convexity, shrinking jumps for continuity, one-sided difference quotients for
differentiability and difference-quotient suprema over widening windows for
the Lipschitz properties. Every verdict carries the sample point that decided it.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from .assembly import RatioLoss, eval_loss, eval_loss_dt
from .catalog import (CATALOG, RepresentingFunction, catalog_ids, eval_ell, eval_ell_deriv, get_entry,
                      get_loss, second_draw_params)
from .conf import get_setting
from .exceptions import HypothesisViolationError, InvalidParameterError
from .links import LinkFunction, make_link
from .tables import LOSS_PROPERTIES, TABLE3_LINKS, TABLE3_OFFSETS, expected_table3

logger = logging.getLogger(__name__)

HOLDS = 'holds'
FAILS = 'fails'
INCONCLUSIVE = 'inconclusive'

ELL_PROPERTIES = ('ratio_symmetric', 'convex', 'continuous', 'locally_lipschitz',
                  'globally_lipschitz', 'differentiable')

EPS = np.finfo(float).eps
CONTINUITY_STEP = 1e-8
CONTINUITY_TOL = 1e-3
DIFFERENTIABILITY_TOL = 1e-3
PROBE_STEPS = (1e-4, 1e-6, 1e-8)
BLOWUP_RATIO = 5.0
LOCAL_T_WINDOW = 2.0
LIPSCHITZ_Y_POINTS = 81
LIPSCHITZ_S_STEP = 0.25
LOCAL_T_STEP = 0.01
GLOBAL_T_STEP = 0.02
SLOPE_ROW_CHUNK = 32
LIPSCHITZ_R_POINTS = 4001
LEMMA_SLACK = 1e-6
LEMMA_WINDOW = 20.0
ELL_SUP_POINTS = 20001

Subject = Union[RepresentingFunction, RatioLoss]


@dataclass
class Verdict:
    property: str
    verdict: str
    expected: Optional[bool] = None
    witness: Optional[float] = None
    witness_y: Optional[float] = None
    witness_value: Optional[float] = None
    grid_id: str = ''
    constant: Optional[float] = None
    windows: Tuple[float, ...] = ()
    estimates: Tuple[float, ...] = ()
    note: str = ''

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def matches(self) -> bool:
        if self.expected is None:
            return True
        if self.verdict == INCONCLUSIVE:
            return False
        return self.holds == self.expected


@dataclass
class PropertyReport:
    subject: str
    ell_id: str
    number: int = 0
    link: Optional[str] = None
    c: Optional[float] = None
    direction: Optional[str] = None
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    grids: Dict[str, str] = field(default_factory=dict)

    @property
    def mismatches(self) -> List[Verdict]:
        return [v for v in self.verdicts.values() if not v.matches]

    @property
    def sort_key(self):
        link_order = TABLE3_LINKS.index(self.link.split(':')[0]) if self.link else -1
        c_order = -(self.c or 0.0)
        return (self.number, link_order, c_order, self.subject)


# ============ Sampling helpers ============

def r_grid(points: int = None, lo: float = None, hi: float = None) -> np.ndarray:
    lo = get_setting('R_MIN') if lo is None else lo
    hi = get_setting('R_MAX') if hi is None else hi
    points = points or get_setting('R_POINTS')
    return np.logspace(math.log10(lo), math.log10(hi), points)


def t_grid(points: int = None, lo: float = None, hi: float = None) -> np.ndarray:
    lo = get_setting('T_MIN') if lo is None else lo
    hi = get_setting('T_MAX') if hi is None else hi
    return np.linspace(lo, hi, points or get_setting('T_POINTS'))


def _merge(grid: np.ndarray, extra: Sequence[float]) -> np.ndarray:
    lo, hi = grid[0], grid[-1]
    inside = [p for p in extra if lo < p < hi and math.isfinite(p)]
    return np.unique(np.concatenate([grid, np.asarray(inside, dtype=float)]))


def _probe_points(ell: RepresentingFunction) -> Tuple[float, ...]:
    return tuple(sorted(set(ell.breakpoints) | set(ell.kinks) | {1.0}))


def y_probes(link: LinkFunction) -> np.ndarray:
    """Output probes inside (a, b); bounded intervals also get 10%, 50% and 90% points"""
    probes = [y for y in get_setting('Y_PROBES') if link.a < y < link.b]
    if link.bounded:
        probes += [link.a + frac * link.width for frac in (0.1, 0.5, 0.9)]
    return np.unique(np.asarray(probes, dtype=float))


def link_window(link: LinkFunction, half_width: float) -> Tuple[float, float]:
    """Part of [-W, W] on which u is not clamped at an endpoint of (a, b)"""
    ts = np.linspace(-half_width, half_width, 20001)
    values = link(ts)
    lo, hi = link.clamp_bounds()
    unclamped = (values > lo) & (values < hi)
    if not np.any(unclamped):
        return 0.0, 0.0
    return float(ts[unclamped].min()), float(ts[unclamped].max())


def _safe(fn: Callable, *args) -> np.ndarray:
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        return np.asarray(fn(*args), dtype=float)


def _kink_crossings(L: RatioLoss, y: float, lo: float, hi: float) -> List[float]:
    """t in [lo, hi] where the quotient of L equals a breakpoint of l"""
    points = []
    for k in _probe_points(L.ell):
        def gap(t):
            return math.log(L.quotient(y, t)) - math.log(k)
        g_lo, g_hi = gap(lo), gap(hi)
        if not (math.isfinite(g_lo) and math.isfinite(g_hi)) or g_lo * g_hi > 0:
            continue
        if g_lo == 0:
            points.append(lo)
        elif g_hi == 0:
            points.append(hi)
        else:
            points.append(brentq(gap, lo, hi, xtol=1e-14, rtol=4 * EPS))
    return points


# ============ Ratio symmetry ============

def check_ratio_symmetry(ell: RepresentingFunction) -> Verdict:
    r = r_grid()
    forward = _safe(eval_ell, ell, r)
    backward = _safe(eval_ell, ell, 1.0 / r)
    both_infinite = np.isinf(forward) & np.isinf(backward) & (np.sign(forward) == np.sign(backward))
    with np.errstate(invalid='ignore'):
        gap = np.where(both_infinite, 0.0, np.abs(forward - backward))
    gap = np.where(np.isnan(gap), np.inf, gap)
    tol = get_setting('SYMMETRY_TOL') * (1.0 + np.where(np.isfinite(forward), np.abs(forward), 0.0))
    worst = int(np.argmax(gap / tol))
    verdict = HOLDS if np.all(gap <= tol) else FAILS
    return Verdict('ratio_symmetric', verdict, witness=float(r[worst]), witness_value=float(gap[worst]),
                   grid_id=f"r-log-{len(r)}")


# ============ Convexity ============

def _curvature_violation(lower, centre, upper, h):
    """Normalized second differences and the tolerance they must clear"""
    second = (upper - 2.0 * centre + lower) / h ** 2
    magnitude = np.maximum(np.maximum(np.abs(lower), np.abs(upper)), np.abs(centre))
    tol = get_setting('CONVEXITY_TOL') * np.maximum(1.0, np.abs(centre)) + 8.0 * EPS * magnitude / h ** 2
    finite = np.isfinite(lower) & np.isfinite(centre) & np.isfinite(upper)
    score = np.where(finite, second / tol, 0.0)
    return second, score


def _convexity_ell(ell: RepresentingFunction) -> Verdict:
    points = _merge(r_grid(get_setting('T_POINTS')), _probe_points(ell))
    h = get_setting('FD_STEP') * points
    lower, centre, upper = (_safe(eval_ell, ell, points - h), _safe(eval_ell, ell, points),
                            _safe(eval_ell, ell, points + h))
    second, score = _curvature_violation(lower, centre, upper, h)
    worst = int(np.argmin(score))
    verdict = FAILS if score[worst] < -1.0 else HOLDS
    return Verdict('convex', verdict, witness=float(points[worst]), witness_value=float(second[worst]),
                   grid_id=f"r-log-{len(points)}")


def _convexity_loss(L: RatioLoss, ts: np.ndarray = None, ys: np.ndarray = None) -> Verdict:
    ts = t_grid() if ts is None else np.asarray(ts, dtype=float)
    ys = y_probes(L.link) if ys is None else np.asarray(ys, dtype=float)
    h = get_setting('FD_STEP')
    best = (math.inf, None, None, None)
    for y in ys:
        points = _merge(ts, _kink_crossings(L, y, ts[0], ts[-1]))
        lower, centre, upper = (_safe(eval_loss, L, y, points - h), _safe(eval_loss, L, y, points),
                                _safe(eval_loss, L, y, points + h))
        second, score = _curvature_violation(lower, centre, upper, h)
        i = int(np.argmin(score))
        if score[i] < best[0]:
            best = (float(score[i]), float(points[i]), float(y), float(second[i]))
    verdict = FAILS if best[0] < -1.0 else HOLDS
    return Verdict('convex', verdict, witness=best[1], witness_y=best[2], witness_value=best[3],
                   grid_id=f"t-uniform-{len(ts)}/y-{len(ys)}")


def check_convexity(subject: Subject, t_grid_values=None, y_set=None) -> Verdict:
    """Convexity of l in r, or of L in t for the given outputs"""
    if isinstance(subject, RatioLoss):
        return _convexity_loss(subject, t_grid_values, y_set)
    return _convexity_ell(subject)


# ============ Continuity ============

def _jumps(fn: Callable, points: np.ndarray, h: np.ndarray):
    left, centre, right = _safe(fn, points - h), _safe(fn, points), _safe(fn, points + h)
    finite = np.isfinite(left) & np.isfinite(right) & np.isfinite(centre)
    jump = np.where(finite, np.maximum(np.abs(right - centre), np.abs(centre - left)), 0.0)
    scale = CONTINUITY_TOL * np.maximum(1.0, np.where(np.isfinite(centre), np.abs(centre), 1.0))
    return jump, scale


def check_continuity(subject: Subject) -> Verdict:
    if isinstance(subject, RatioLoss):
        L = subject
        ts = t_grid()
        best = (-math.inf, None, None, None)
        for y in y_probes(L.link):
            points = _merge(ts, _kink_crossings(L, y, ts[0], ts[-1]))
            jump, scale = _jumps(lambda t: eval_loss(L, y, t), points, np.full_like(points, CONTINUITY_STEP))
            i = int(np.argmax(jump / scale))
            if jump[i] / scale[i] > best[0]:
                best = (float(jump[i] / scale[i]), float(points[i]), float(y), float(jump[i]))
        verdict = HOLDS if best[0] <= 1.0 else FAILS
        return Verdict('continuous', verdict, witness=best[1], witness_y=best[2], witness_value=best[3],
                       grid_id=f"t-uniform-{len(ts)}")
    ell = subject
    points = _merge(r_grid(), _probe_points(ell))
    jump, scale = _jumps(lambda r: eval_ell(ell, r), points, CONTINUITY_STEP * points)
    i = int(np.argmax(jump / scale))
    verdict = HOLDS if jump[i] <= scale[i] else FAILS
    return Verdict('continuous', verdict, witness=float(points[i]), witness_value=float(jump[i]),
                   grid_id=f"r-log-{len(points)}")


# ============ Differentiability ============

def _one_sided_mismatch(fn: Callable, points: np.ndarray, h: np.ndarray):
    left, centre, right = _safe(fn, points - h), _safe(fn, points), _safe(fn, points + h)
    d_plus = (right - centre) / h
    d_minus = (centre - left) / h
    finite = np.isfinite(d_plus) & np.isfinite(d_minus)
    mismatch = np.where(finite, np.abs(d_plus - d_minus), 0.0)
    tol = DIFFERENTIABILITY_TOL * (1.0 + np.where(finite, np.maximum(np.abs(d_plus), np.abs(d_minus)), 0.0))
    return mismatch, tol


def check_differentiability(subject: Subject) -> Verdict:
    step = get_setting('KINK_STEP')
    if isinstance(subject, RatioLoss):
        L = subject
        ts = t_grid()
        best = (-math.inf, None, None, None)
        for y in y_probes(L.link):
            points = _merge(ts, _kink_crossings(L, y, ts[0], ts[-1]))
            mismatch, tol = _one_sided_mismatch(lambda t: eval_loss(L, y, t), points,
                                                np.full_like(points, step))
            i = int(np.argmax(mismatch / tol))
            if mismatch[i] / tol[i] > best[0]:
                best = (float(mismatch[i] / tol[i]), float(points[i]), float(y), float(mismatch[i]))
        verdict = HOLDS if best[0] <= 1.0 else FAILS
        return Verdict('differentiable', verdict, witness=best[1], witness_y=best[2], witness_value=best[3],
                       grid_id=f"t-uniform-{len(ts)}")
    ell = subject
    points = _merge(r_grid(), _probe_points(ell))
    mismatch, tol = _one_sided_mismatch(lambda r: eval_ell(ell, r), points, step * points)
    i = int(np.argmax(mismatch / tol))
    verdict = HOLDS if mismatch[i] <= tol[i] else FAILS
    return Verdict('differentiable', verdict, witness=float(points[i]), witness_value=float(mismatch[i]),
                   grid_id=f"r-log-{len(points)}")


# ============ Lipschitz continuity ============

def _probe_blowup(fn: Callable, point: float, scale: float) -> Tuple[bool, float]:
    """Difference quotients at `point` for shrinking steps; unbounded when they keep growing"""
    slopes = []
    centre = float(fn(point))
    for step in PROBE_STEPS:
        h = step * scale
        right = float(fn(point + h))
        left = float(fn(point - h))
        slopes.append(max(abs(right - centre), abs(centre - left)) / h)
    # a flat neighbourhood or an overflowing value is not a witness
    growing = (all(math.isfinite(s) for s in slopes) and slopes[0] > 0
               and slopes[2] >= BLOWUP_RATIO * slopes[1] and slopes[1] >= BLOWUP_RATIO * slopes[0])
    return growing, slopes[-1]


def _max_slope(values: np.ndarray, xs: np.ndarray) -> Tuple[float, int]:
    dv = np.diff(values)
    dx = np.diff(xs)
    with np.errstate(invalid='ignore', over='ignore'):
        slopes = np.abs(dv / dx)
    slopes = np.where(np.isnan(slopes), np.inf, slopes)
    flat = int(np.argmax(slopes))
    return float(slopes[flat]), flat


def _finite_max_slope(values: np.ndarray, xs: np.ndarray) -> Tuple[float, int, Optional[float]]:
    """
    Largest difference quotient between neighbouring samples, skipping pairs whose
    values or quotient overflow. Also returns the sample nearest to r = 1 that
    overflowed, None when nothing did. An undefined (NaN) value gives an infinite slope.
    """
    undefined = np.isnan(values)
    if np.any(undefined):
        return math.inf, max(int(np.argmax(undefined)) - 1, 0), None
    with np.errstate(invalid='ignore', over='ignore'):
        slopes = np.abs(np.diff(values) / np.diff(xs))
    usable = np.isfinite(slopes)
    if np.all(usable):
        flat = int(np.argmax(slopes))
        return float(slopes[flat]), flat, None
    bad = xs[:-1][~usable]
    overflow = float(bad[np.argmin(np.abs(np.log(bad)))])
    if not np.any(usable):
        return math.inf, 0, overflow
    slopes = np.where(usable, slopes, -1.0)
    flat = int(np.argmax(slopes))
    return float(slopes[flat]), flat, overflow


def _stabilized(estimates: List[float]) -> str:
    if not all(math.isfinite(e) for e in estimates):
        return FAILS
    if len(estimates) < 2:
        return INCONCLUSIVE
    previous, last = estimates[-2], estimates[-1]
    if abs(last - previous) <= get_setting('LIPSCHITZ_STABLE') * max(previous, 1e-300):
        return HOLDS
    return FAILS


def _ell_local(ell: RepresentingFunction) -> Verdict:
    points = _merge(r_grid(LIPSCHITZ_R_POINTS), _probe_points(ell))
    values = _safe(eval_ell, ell, points)
    constant, i, overflow = _finite_max_slope(values, points)
    for k in _probe_points(ell):
        growing, slope = _probe_blowup(lambda r: eval_ell(ell, r), k, k)
        if growing:
            return Verdict('locally_lipschitz', FAILS, witness=k, witness_value=slope,
                           grid_id='r-probe', note='difference quotients grow as the step shrinks')
    verdict = HOLDS if math.isfinite(constant) else FAILS
    note = f"values overflow in floating point from r={overflow:.3g} outward" if overflow is not None else ''
    return Verdict('locally_lipschitz', verdict, witness=float(points[i]), witness_value=constant,
                   grid_id=f"r-log-{len(points)}", constant=constant, note=note)


def _ell_global(ell: RepresentingFunction) -> Verdict:
    local = _ell_local(ell)
    if not local.holds:
        return Verdict('globally_lipschitz', FAILS, witness=local.witness, witness_value=local.witness_value,
                       grid_id=local.grid_id, note='not locally Lipschitz')
    windows = tuple(get_setting('LIPSCHITZ_WINDOWS'))
    estimates, witnesses = [], []
    for width in windows:
        points = _merge(r_grid(LIPSCHITZ_R_POINTS, 1.0 / width, width), _probe_points(ell))
        values = _safe(eval_ell, ell, points)
        slope, i = _max_slope(values, points)
        estimates.append(slope)
        witnesses.append(float(points[i]))
    verdict = _stabilized(estimates)
    return Verdict('globally_lipschitz', verdict, witness=witnesses[-1], witness_value=estimates[-1],
                   grid_id=f"r-windows-{LIPSCHITZ_R_POINTS}", constant=estimates[-1] if verdict == HOLDS else None,
                   windows=windows, estimates=tuple(estimates))


def _distinct_windows(link: LinkFunction, windows: Sequence[float]) -> List[Tuple[float, Tuple[float, float]]]:
    out = []
    for width in windows:
        span = link_window(link, width)
        if out and np.allclose(out[-1][1], span, rtol=0, atol=1e-9):
            continue
        out.append((width, span))
    return out


def _lattice(span: Tuple[float, float], step: float) -> np.ndarray:
    """Integer multiples of `step` inside span"""
    return np.arange(math.ceil(span[0] / step), math.floor(span[1] / step) + 1) * step


def _window_slopes(L: RatioLoss, windows: Sequence[Tuple[Tuple[float, float], Tuple[float, float]]],
                   t_step: float) -> List[Tuple[float, Optional[float], Optional[float]]]:
    """
    Largest t-difference quotient of L in each (t-span, s-span) window, outputs y = u(s).

    All windows are read off one lattice in t and one in s, so a wider window holds
    every sample of a narrower one and the estimates never decrease.
    """
    ts = _lattice((min(t[0] for t, _ in windows), max(t[1] for t, _ in windows)), t_step)
    ss = _lattice((min(s[0] for _, s in windows), max(s[1] for _, s in windows)), LIPSCHITZ_S_STEP)
    ys = L.link(ss)
    dts = np.diff(ts)
    columns = [np.nonzero((ts[:-1] >= t_span[0]) & (ts[1:] <= t_span[1]))[0] for t_span, _ in windows]
    best = [(-math.inf, None, None)] * len(windows)
    for start in range(0, len(ss), SLOPE_ROW_CHUNK):
        chunk = ss[start:start + SLOPE_ROW_CHUNK]
        values = _safe(eval_loss, L, ys[start:start + len(chunk), None], ts[None, :])
        with np.errstate(invalid='ignore', over='ignore'):
            slopes = np.abs(np.diff(values, axis=1) / dts)
        slopes = np.where(np.isnan(slopes), np.inf, slopes)
        for k, (_, s_span) in enumerate(windows):
            rows = np.nonzero((chunk >= s_span[0]) & (chunk <= s_span[1]))[0]
            if not (len(rows) and len(columns[k])):
                continue
            block = slopes[np.ix_(rows, columns[k])]
            i, j = np.unravel_index(int(np.argmax(block)), block.shape)
            if block[i, j] > best[k][0]:
                best[k] = (float(block[i, j]), float(ts[columns[k][j]]), float(ys[start + rows[i]]))
    return best


def _loss_local(L: RatioLoss) -> Verdict:
    windows = _distinct_windows(L.link, get_setting('LIPSCHITZ_WINDOWS'))
    t_span = link_window(L.link, LOCAL_T_WINDOW)
    # t stays in a compact window; outputs widen, since the constant must hold for every y
    found = _window_slopes(L, [(t_span, s_span) for _, s_span in windows], LOCAL_T_STEP)
    estimates = [slope for slope, _, _ in found]
    _, t_w, y_w = found[-1]
    # kink probes on a subsample of the widest output window
    y_span = windows[-1][1]
    for y in L.link(np.linspace(y_span[0], y_span[1], 9)):
        for t_star in _kink_crossings(L, float(y), t_span[0], t_span[1]):
            growing, slope = _probe_blowup(lambda t: eval_loss(L, float(y), t), t_star, 1.0)
            if growing:
                return Verdict('locally_lipschitz', FAILS, witness=t_star, witness_y=float(y), witness_value=slope,
                               grid_id='t-probe', note='difference quotients grow as the step shrinks')
    verdict = _stabilized(estimates)
    note = ''
    if L.link.bounded:
        note = f"output windows capped where the link saturates: {[round(w[1][1], 2) for w in windows]}"
    return Verdict('locally_lipschitz', verdict, witness=t_w, witness_y=y_w,
                   witness_value=estimates[-1], grid_id=f"t-[{t_span[0]:g},{t_span[1]:g}]-step-{LOCAL_T_STEP:g}",
                   constant=estimates[-1] if verdict == HOLDS else None,
                   windows=tuple(w for w, _ in windows), estimates=tuple(estimates), note=note)


def _loss_global(L: RatioLoss) -> Verdict:
    local = _loss_local(L)
    if not local.holds:
        return Verdict('globally_lipschitz', FAILS, witness=local.witness, witness_y=local.witness_y,
                       witness_value=local.witness_value, grid_id=local.grid_id, note='not locally Lipschitz')
    windows = _distinct_windows(L.link, get_setting('LIPSCHITZ_WINDOWS'))
    found = _window_slopes(L, [(span, span) for _, span in windows], GLOBAL_T_STEP)
    estimates = [slope for slope, _, _ in found]
    _, t_w, y_w = found[-1]
    verdict = _stabilized(estimates)
    note = ''
    if L.link.bounded:
        note = f"windows capped where the link saturates at |t| ~ {windows[-1][1][1]:.3g}"
    return Verdict('globally_lipschitz', verdict, witness=t_w, witness_y=y_w,
                   witness_value=estimates[-1], grid_id=f"t-windows-step-{GLOBAL_T_STEP:g}",
                   constant=estimates[-1] if verdict == HOLDS else None,
                   windows=tuple(w for w, _ in windows), estimates=tuple(estimates), note=note)


def check_lipschitz(subject: Subject, mode: str = 'global') -> Verdict:
    """
    Local or global Lipschitz continuity with the estimated constant.

    For an assembled loss the supremum also runs over outputs y = u(s), with s
    in the same widening windows as t, so the constant is uniform in y.
    """
    if mode not in ('local', 'global'):
        raise InvalidParameterError(f"mode must be 'local' or 'global', got {mode!r}")
    if isinstance(subject, RatioLoss):
        return _loss_local(subject) if mode == 'local' else _loss_global(subject)
    return _ell_local(subject) if mode == 'local' else _ell_global(subject)


# ============ Lipschitz constants of the lemmas ============

@dataclass
class LemmaComparison:
    lemma: str
    bound: float
    estimate: float
    ell_constant: Optional[float] = None
    link_constant: Optional[float] = None
    witness_t: Optional[float] = None
    witness_y: Optional[float] = None

    @property
    def within(self) -> bool:
        return self.estimate <= self.bound + LEMMA_SLACK


def ell_sup_derivative(ell: RepresentingFunction, lo: float, hi: float) -> float:
    """sup of |l'| over [lo, hi], one-sided at breakpoints"""
    points = _merge(np.logspace(math.log10(lo), math.log10(hi), ELL_SUP_POINTS), _probe_points(ell))
    points = np.unique(np.concatenate([points, [lo, hi]]))
    right = np.abs(_safe(eval_ell_deriv, ell, points, 'right'))
    left = np.abs(_safe(eval_ell_deriv, ell, points, 'left'))
    return float(np.nanmax(np.maximum(right, left)))


def loss_sup_derivative(L: RatioLoss, half_width: float = LEMMA_WINDOW):
    """Brute-force sup of |dL/dt| over a (y, t) grid, both one-sided derivatives"""
    span = link_window(L.link, half_width)
    ts = np.linspace(span[0], span[1], 2001)
    ys = L.link(np.linspace(span[0], span[1], LIPSCHITZ_Y_POINTS))
    best = (0.0, None, None)
    for y in ys:
        right = np.abs(_safe(lambda t: eval_loss_dt(L, y, t, side='right'), ts))
        left = np.abs(_safe(lambda t: eval_loss_dt(L, y, t, side='left'), ts))
        slopes = np.maximum(right, left)
        i = int(np.nanargmax(slopes))
        if slopes[i] > best[0]:
            best = (float(slopes[i]), float(ts[i]), float(y))
    return best


def check_lipschitz_bound_lemmas(ell: RepresentingFunction, link: LinkFunction, c: float,
                                 bound_M: Optional[float] = None) -> LemmaComparison:
    """
    Compare the brute-force Lipschitz constant of L with the closed-form bound.

    bound_M given: symmetrized generator loss with u = exp, c = 0, bound 2M.
    logistic link on (0, 1) with c > 0: |l|_{I,1} |u|_1 / c, I = (c/(1+c), (1+c)/c).
    otherwise: |l|_1 |u|_1 / (a + c), which needs a + c > 0 and Lipschitz l and u.
    """
    L = RatioLoss(ell, link, c)
    if bound_M is not None:
        if not (link.kind == 'exp' and link.a == 0 and c == 0):
            raise HypothesisViolationError('the 2M bound applies to the exponential link on (0, inf) with c = 0')
        bound = 2.0 * bound_M
        estimate, t_w, y_w = loss_sup_derivative(L)
        return LemmaComparison('generator', bound, estimate, witness_t=t_w, witness_y=y_w)

    if link.a + c <= 0:
        raise HypothesisViolationError(f"Lipschitz lemmas need a + c > 0, got a={link.a:g}, c={c:g}")

    if link.kind == 'logistic' and link.a == 0 and link.b == 1 and c > 0:
        ell_constant = ell_sup_derivative(ell, c / (1.0 + c), (1.0 + c) / c)
        link_constant = link.lipschitz_constant
        bound = ell_constant * link_constant / c
        estimate, t_w, y_w = loss_sup_derivative(L)
        return LemmaComparison('logistic-interval', bound, estimate, ell_constant, link_constant, t_w, y_w)

    link_constant = link.lipschitz_constant
    if not math.isfinite(link_constant):
        raise HypothesisViolationError(f"{link.label} is not Lipschitz continuous")
    if not check_lipschitz(ell, 'global').holds:
        raise HypothesisViolationError(f"{ell.label} is not globally Lipschitz continuous")
    ell_constant = ell_sup_derivative(ell, 1e-6, 1e6)
    bound = ell_constant * link_constant / (link.a + c)
    estimate, t_w, y_w = loss_sup_derivative(L)
    return LemmaComparison('general', bound, estimate, ell_constant, link_constant, t_w, y_w)


# ============ Finite-risk checks ============

def check_nemitski_abs_rel(link: LinkFunction, c: float) -> Dict[str, float]:
    """
    abs-rel satisfies L(y, t) <= (u(|t|) + c)/(a + c) + 1; returns the smallest
    margin on the probe grid (>= 0 when the bound holds).
    """
    if link.a + c <= 0:
        raise HypothesisViolationError(f"the bound needs a + c > 0, got a={link.a:g}, c={c:g}")
    L = RatioLoss(get_loss('abs-rel'), link, c)
    ts = t_grid()
    ys = L.link(np.linspace(-10.0, 10.0, LIPSCHITZ_Y_POINTS))
    values = _safe(eval_loss, L, ys[:, None], ts[None, :])
    # the larger of u(|t|) and u(-|t|) covers decreasing links as well
    u_abs = np.maximum(link(np.abs(ts)), link(-np.abs(ts)))
    bound = (u_abs + c) / (link.a + c) + 1.0
    margin = bound[None, :] - values
    row, col = np.unravel_index(int(np.argmin(margin)), margin.shape)
    return {'margin': float(margin[row, col]), 't': float(ts[col]), 'y': float(ys[row]),
            'holds': bool(margin[row, col] >= -1e-12)}


def check_risk_finiteness_bounded(ell: RepresentingFunction, link: LinkFunction, c: float) -> Dict[str, float]:
    """
    For b < inf and a + c > 0 the quotient stays in ((a+c)/(b+c), (b+c)/(a+c)),
    so a continuous l gives a bounded loss; reports the interval and max of l on it.
    """
    if not link.bounded or link.a + c <= 0:
        raise HypothesisViolationError('bounded quotients need b < inf and a + c > 0')
    lo = (link.a + c) / (link.b + c)
    hi = (link.b + c) / (link.a + c)
    points = _merge(np.logspace(math.log10(lo), math.log10(hi), get_setting('R_POINTS')), _probe_points(ell))
    values = _safe(eval_ell, ell, points)
    return {'lower': lo, 'upper': hi, 'sup_value': float(np.max(values)), 'finite': bool(np.all(np.isfinite(values)))}


# ============ Reports ============

def verify_ell(ell: RepresentingFunction, expected: Optional[Dict[str, bool]] = None) -> PropertyReport:
    entry = CATALOG.get(ell.id)
    report = PropertyReport(subject=ell.label, ell_id=ell.id, number=entry.number if entry else 0,
                            grids={'r': f"log[{get_setting('R_MIN'):g},{get_setting('R_MAX'):g}]"})
    checks = {
        'ratio_symmetric': lambda: check_ratio_symmetry(ell),
        'convex': lambda: check_convexity(ell),
        'continuous': lambda: check_continuity(ell),
        'locally_lipschitz': lambda: check_lipschitz(ell, 'local'),
        'globally_lipschitz': lambda: check_lipschitz(ell, 'global'),
        'differentiable': lambda: check_differentiability(ell),
    }
    for prop in ELL_PROPERTIES:
        if expected is not None and prop not in expected:
            continue
        verdict = checks[prop]()
        verdict.expected = None if expected is None else expected[prop]
        report.verdicts[prop] = verdict
    return report


def verify_loss(L: RatioLoss, expected: Optional[Dict[str, bool]] = None) -> PropertyReport:
    entry = CATALOG.get(L.ell.id)
    report = PropertyReport(subject=L.label, ell_id=L.ell.id, number=entry.number if entry else 0,
                            link=L.link.label, c=L.c, direction=L.direction,
                            grids={'t': f"uniform[{get_setting('T_MIN'):g},{get_setting('T_MAX'):g}]",
                                   'y': ','.join(f"{y:g}" for y in y_probes(L.link))})
    checks = {
        'convex': lambda: check_convexity(L),
        'continuous': lambda: check_continuity(L),
        'locally_lipschitz': lambda: check_lipschitz(L, 'local'),
        'globally_lipschitz': lambda: check_lipschitz(L, 'global'),
        'differentiable': lambda: check_differentiability(L),
    }
    for prop in LOSS_PROPERTIES:
        verdict = checks[prop]()
        verdict.expected = None if expected is None else expected.get(prop)
        report.verdicts[prop] = verdict
    return report


def table3_expectation(L: RatioLoss) -> Optional[Dict[str, bool]]:
    """Tabulated flags for standard-direction losses on the tabulated links at default parameters"""
    if L.direction != 'standard' or L.ell.id not in CATALOG:
        return None
    if L.ell.params != get_loss(L.ell.id).params:
        return None
    reference = {'exp': make_link('exp'), 'logistic': make_link('logistic')}
    if L.link.kind not in reference or L.link != reference[L.link.kind]:
        return None
    return expected_table3(L.ell.id, L.link.kind, L.c)


def _run(jobs: List[Callable[[], PropertyReport]], workers: Optional[int]) -> List[PropertyReport]:
    workers = workers or get_setting('WORKERS')
    reports = []
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(job) for job in jobs]
        for future in as_completed(futures):
            reports.append(future.result())
    reports.sort(key=lambda report: report.sort_key)
    return reports


def verify_table2(workers: Optional[int] = None) -> List[PropertyReport]:
    """
    One report per catalog entry at default parameters. Entries with parameters also
    carry '<property>@second-draw' verdicts at the alternative draw, asserting only
    the flags that hold.
    """
    def job(loss_id: str) -> PropertyReport:
        declared = get_entry(loss_id).declared.as_dict()
        report = verify_ell(get_loss(loss_id), declared)
        params = second_draw_params(loss_id)
        if params:
            holding = {prop: True for prop, flag in declared.items() if flag}
            second = verify_ell(get_loss(loss_id, **params), holding)
            drawn = ','.join(f"{name}={value:g}" for name, value in params.items())
            for prop, verdict in second.verdicts.items():
                verdict.property = f"{prop}@second-draw"
                verdict.grid_id = f"{verdict.grid_id}@{drawn}"
                report.verdicts[verdict.property] = verdict
        return report

    jobs = [lambda loss_id=loss_id: job(loss_id) for loss_id in catalog_ids()]
    logger.info(f"Verifying {len(jobs)} representing-function reports")
    return _run(jobs, workers)


def verify_table3(workers: Optional[int] = None) -> List[PropertyReport]:
    """Every catalog entry under the exponential and logistic links, c = 0.5 and c = 0"""
    jobs = []
    for loss_id in catalog_ids():
        for kind in TABLE3_LINKS:
            for c in TABLE3_OFFSETS:
                def job(loss_id=loss_id, kind=kind, c=c):
                    L = RatioLoss(get_loss(loss_id), make_link(kind), c)
                    return verify_loss(L, expected_table3(loss_id, kind, c))
                jobs.append(job)
    logger.info(f"Verifying {len(jobs)} assembled-loss reports")
    return _run(jobs, workers)


def count_mismatches(reports: Sequence[PropertyReport]) -> int:
    return sum(len(report.mismatches) for report in reports)


def documented_deviations(reports: Sequence[PropertyReport]) -> List[Tuple[str, str, str]]:
    """(subject, property, reason) for every verdict whose sampling was limited by the grid"""
    return [(report.subject, prop, verdict.note)
            for report in reports for prop, verdict in report.verdicts.items() if verdict.note]
