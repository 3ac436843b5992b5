"""
Constructive builders for convex ratio-based losses.

symmetrize:      l(r) = f(r) + f(1/r) - 2 f(1), convex in t (u = exp, c = 0)
                 whenever f'(r) + r f''(r) >= 0
build_from_generator:
                 f(r) = C + int_{r0}^{r} g(t)/t dt for an increasing g; the
                 certificate then equals g'(r)
flatten:         (1/lambda)(1 - 1/(1 + b l(r))), bounded by 1/lambda
"""
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate

from .catalog import RepresentingFunction, custom_loss, eval_ell, eval_ell_deriv
from .conf import get_setting
from .exceptions import (ContractError, DivergentIntegralError, InvalidParameterError,
                         NonMonotoneGeneratorError)

logger = logging.getLogger(__name__)

CERTIFICATE_TOL = 1e-10
MONOTONE_POINTS = 2001
NUMERIC_DERIV2_STEP = 1e-5


@dataclass(frozen=True)
class AuxFunction:
    """Auxiliary function f on (0, inf) with its first two derivatives"""
    name: str
    value: Callable = field(repr=False)
    deriv: Callable = field(repr=False)
    deriv2: Callable = field(repr=False)
    numeric_deriv2: bool = False
    bound_M: Optional[float] = None


@dataclass(frozen=True)
class GeneratorG:
    """Increasing generator g of the integral construction"""
    name: str
    g: Callable = field(repr=False)
    g_deriv: Optional[Callable] = field(default=None, repr=False)
    r0: float = 0.0
    C: float = 0.0
    bound_M: Optional[float] = None


def working_grid(points: int = None) -> np.ndarray:
    points = points or get_setting('R_POINTS')
    return np.logspace(math.log10(get_setting('R_MIN')), math.log10(get_setting('R_MAX')), points)


def convexity_certificate(f: AuxFunction, grid) -> np.ndarray:
    """f'(r) + r f''(r) at every grid point"""
    r = np.asarray(grid, dtype=float)
    if np.any(r <= 0):
        raise InvalidParameterError('certificate grid must be positive')
    return np.asarray(f.deriv(r), dtype=float) + r * np.asarray(f.deriv2(r), dtype=float)


def symmetrize(f: AuxFunction, grid=None) -> RepresentingFunction:
    """
    Ratio-symmetric l(r) = f(r) + f(1/r) - 2 f(1).

    The result is tagged certified when the convexity certificate is
    nonnegative on the grid.
    """
    grid = working_grid() if grid is None else np.asarray(grid, dtype=float)
    f_one = float(np.asarray(f.value(np.array([1.0])))[0])

    def value(r):
        return np.asarray(f.value(r), dtype=float) + np.asarray(f.value(1.0 / r), dtype=float) - 2.0 * f_one

    def deriv(r, side):
        return np.asarray(f.deriv(r), dtype=float) - np.asarray(f.deriv(1.0 / r), dtype=float) / r ** 2

    certificate = convexity_certificate(f, grid)
    certified = bool(np.all(certificate >= -CERTIFICATE_TOL))
    if not certified:
        worst = int(np.argmin(certificate))
        logger.warning(f"{f.name}: certificate negative at r={grid[worst]:.6g} ({certificate[worst]:.3g}), "
                       f"symmetrized loss is uncertified")

    values = value(grid)
    scale = np.maximum(1.0, np.abs(values))
    if np.any(values < -CERTIFICATE_TOL * scale):
        worst = int(np.argmin(values / scale))
        raise ContractError(
            f"symmetrized {f.name} is negative at r={grid[worst]:.6g} ({values[worst]:.3g})")

    return custom_loss(f"sym({f.name})", value, deriv, certified=certified)


# ============ Integral construction ============

def _check_increasing(gen: GeneratorG, grid: np.ndarray):
    values = np.asarray(gen.g(grid), dtype=float)
    drops = np.diff(values)
    scale = np.maximum(1.0, np.abs(values[1:]))
    if np.any(drops < -1e-14 * scale):
        worst = int(np.argmin(drops / scale))
        raise NonMonotoneGeneratorError(
            f"generator {gen.name} decreases between r={grid[worst]:.6g} and r={grid[worst + 1]:.6g}")


def _log_integral(g: Callable, lo: float, hi: float, tol: float) -> float:
    """int_lo^hi g(t)/t dt with t = exp(s); lo may be 0"""
    s_lo = -np.inf if lo == 0 else math.log(lo)
    s_hi = math.log(hi)

    def integrand(s):
        return float(g(math.exp(s)))

    with warnings.catch_warnings():
        warnings.simplefilter('error', integrate.IntegrationWarning)
        try:
            result, _ = integrate.quad(integrand, s_lo, s_hi, epsabs=tol, epsrel=1e-12, limit=200)
        except integrate.IntegrationWarning as e:
            raise DivergentIntegralError(f"integral from {lo:g} to {hi:g} did not converge: {str(e)}")
    if not math.isfinite(result):
        raise DivergentIntegralError(f"integral from {lo:g} to {hi:g} is not finite")
    return result


def build_from_generator(gen: GeneratorG, grid=None) -> AuxFunction:
    """
    f(r) = C + int_{r0}^{r} g(t)/t dt, evaluated by adaptive quadrature in log(t).

    f' = g(r)/r exactly; f'' uses g' when given, otherwise a central difference.
    """
    grid = working_grid(MONOTONE_POINTS) if grid is None else np.asarray(grid, dtype=float)
    _check_increasing(gen, grid)
    tol = get_setting('QUAD_ABS_TOL')
    if gen.r0 < 0:
        raise InvalidParameterError(f"r0 must be >= 0, got {gen.r0}")
    if gen.r0 == 0:
        tiny = float(gen.g(1e-200))
        if abs(tiny) > 1e-8:
            raise DivergentIntegralError(
                f"g(t)/t is not integrable at 0 for {gen.name}: g(0+) = {tiny:.3g}")

    def signed_integral(lo, hi):
        if hi == lo:
            return 0.0
        if hi > lo:
            return _log_integral(gen.g, lo, hi, tol)
        return -_log_integral(gen.g, hi, lo, tol)

    def value(r):
        r_arr = np.asarray(r, dtype=float)
        flat = np.ravel(r_arr)
        order = np.unique(flat)
        # cumulative integration between consecutive sorted points
        totals = np.empty_like(order)
        running = 0.0
        previous = gen.r0
        for i, point in enumerate(order.tolist()):
            running += signed_integral(previous, point)
            totals[i] = running
            previous = point
        lookup = dict(zip(order.tolist(), totals.tolist()))
        out = np.array([gen.C + lookup[p] for p in flat.tolist()])
        return out.reshape(r_arr.shape)

    def deriv(r):
        r = np.asarray(r, dtype=float)
        return np.asarray(gen.g(r), dtype=float) / r

    if gen.g_deriv is not None:
        def deriv2(r):
            r = np.asarray(r, dtype=float)
            return (np.asarray(gen.g_deriv(r), dtype=float) * r - np.asarray(gen.g(r), dtype=float)) / r ** 2
    else:
        def deriv2(r):
            r = np.asarray(r, dtype=float)
            h = NUMERIC_DERIV2_STEP * np.maximum(1.0, r)
            h = np.minimum(h, 0.5 * r)
            return (deriv(r + h) - deriv(r - h)) / (2.0 * h)

    return AuxFunction(f"int({gen.name})", value, deriv, deriv2,
                       numeric_deriv2=gen.g_deriv is None, bound_M=gen.bound_M)


# ============ Presets ============

def power_aux(alpha: float) -> AuxFunction:
    """f(r) = r^alpha"""
    if not alpha > 0:
        raise InvalidParameterError(f"power auxiliary function requires alpha > 0, got {alpha}")
    return AuxFunction(
        f"power:alpha={alpha:g}",
        lambda r: np.power(r, alpha),
        lambda r: alpha * np.power(r, alpha - 1.0),
        lambda r: alpha * (alpha - 1.0) * np.power(r, alpha - 2.0),
    )


def log1p_aux() -> AuxFunction:
    """f(r) = log(1 + r)"""
    return AuxFunction(
        'log1p',
        np.log1p,
        lambda r: 1.0 / (1.0 + r),
        lambda r: -1.0 / (1.0 + r) ** 2,
        bound_M=1.0,
    )


def sqrt_asinh_aux() -> AuxFunction:
    """f(r) = log(sqrt(r) + sqrt(1 + r))"""
    return AuxFunction(
        'sqrt-asinh',
        lambda r: np.arcsinh(np.sqrt(r)),
        lambda r: 1.0 / (2.0 * np.sqrt(r * (1.0 + r))),
        lambda r: -(1.0 + 2.0 * r) / (4.0 * (r * (1.0 + r)) ** 1.5),
        bound_M=0.5,
    )


GENERATORS = {
    't-over-t1': GeneratorG(
        't-over-t1', lambda t: t / (t + 1.0), lambda t: 1.0 / (t + 1.0) ** 2, bound_M=1.0),
    'sqrt-half': GeneratorG(
        'sqrt-half', lambda t: np.sqrt(t) / (2.0 * np.sqrt(t + 1.0)),
        lambda t: 0.25 / (np.sqrt(t / (t + 1.0)) * (t + 1.0) ** 2), bound_M=0.5),
    't-over-t1-plus': GeneratorG(
        't-over-t1-plus', lambda t: t / (t + 1.0) + t / (1.0 + t) ** 2,
        lambda t: 2.0 / (1.0 + t) ** 3, bound_M=1.0),
    't-over-t1-sq': GeneratorG(
        't-over-t1-sq', lambda t: (t / (t + 1.0)) ** 2, lambda t: 2.0 * t / (t + 1.0) ** 3,
        C=1.0, bound_M=1.0),
}

AUX_PRESETS = ('power:alpha=<a>', 'log1p', 'sqrt-asinh') + tuple(f"g:{name}" for name in GENERATORS)


def aux_from_preset(text: str) -> AuxFunction:
    """Auxiliary function from a CLI preset id such as 'power:alpha=2' or 'g:sqrt-half'"""
    if text == 'log1p':
        return log1p_aux()
    if text == 'sqrt-asinh':
        return sqrt_asinh_aux()
    if text.startswith('power'):
        _, _, body = text.partition(':')
        key, _, raw = body.partition('=')
        if key != 'alpha':
            raise InvalidParameterError(f"power preset expects alpha=<value>, got {text!r}")
        try:
            return power_aux(float(raw))
        except ValueError:
            raise InvalidParameterError(f"power preset expects a numeric alpha, got {raw!r}")
    if text.startswith('g:'):
        name = text[2:]
        if name not in GENERATORS:
            raise InvalidParameterError(f"unknown generator {name!r}; expected one of {', '.join(GENERATORS)}")
        return build_from_generator(GENERATORS[name])
    raise InvalidParameterError(f"unknown auxiliary preset {text!r}; expected one of {', '.join(AUX_PRESETS)}")


def nonconvexity_witness(alpha: float) -> Tuple[float, float]:
    """
    For f(r) = r^alpha with 0 < alpha < 1, a point r* where the symmetrized l
    has negative second derivative, and l''(r*).
    """
    if not 0 < alpha < 1:
        raise InvalidParameterError(f"witness exists for 0 < alpha < 1, got {alpha}")
    r_star = (2.0 * math.sqrt((1.0 + alpha) / (1.0 - alpha))) ** (1.0 / alpha)
    second = alpha * r_star ** -2 * ((alpha - 1.0) * r_star ** alpha + (alpha + 1.0) * r_star ** -alpha)
    return r_star, second


# ============ Flattening ============

def flatten(f: RepresentingFunction, lam: float, b: float) -> RepresentingFunction:
    """(1/lam)(1 - 1/(1 + b l(r))); convexity is not inherited"""
    if not (lam > 0 and b > 0):
        raise InvalidParameterError(f"flattening requires lambda > 0 and b > 0, got lambda={lam}, b={b}")

    def value(r):
        base = eval_ell(f, r)
        return (1.0 - 1.0 / (1.0 + b * base)) / lam

    def deriv(r, side):
        base = eval_ell(f, r)
        return b * eval_ell_deriv(f, r, side) / (lam * (1.0 + b * base) ** 2)

    return custom_loss(f"flat({f.label},lambda={lam:g},b={b:g})", value, deriv,
                       breakpoints=f.breakpoints, kinks=f.kinks, sup_value=1.0 / lam)
