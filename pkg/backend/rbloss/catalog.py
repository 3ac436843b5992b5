"""
Catalog of representing functions l: (0, inf) -> [0, inf) with l(1) = 0.

Each entry carries its closed form, its first derivative (one-sided at kinks),
its breakpoints and the declared property flags of the published property
table. Entries are immutable; evaluation is vectorized over numpy arrays.
"""
import math
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .exceptions import DomainError, InvalidParameterError, KinkError, UnknownLossError


SIDES = ('left', 'right', 'central')
LOG4 = math.log(4.0)
LOG2 = math.log(2.0)
ASINH1 = math.asinh(1.0)
KINK_RTOL = 1e-15


@dataclass(frozen=True)
class LossParams:
    alpha: Optional[float] = None
    beta: Optional[float] = None
    gamma: Optional[float] = None
    tau: Optional[float] = None
    epsilon: Optional[float] = None
    lam: Optional[float] = None
    b: Optional[float] = None

    def as_dict(self) -> Dict[str, float]:
        """Only the parameters that are set, keyed by their CLI names"""
        out = {}
        for name in ('alpha', 'beta', 'gamma', 'tau', 'epsilon', 'lam', 'b'):
            value = getattr(self, name)
            if value is not None:
                out[PARAM_CLI_NAMES[name]] = value
        return out


PARAM_CLI_NAMES = {
    'alpha': 'alpha', 'beta': 'beta', 'gamma': 'gamma', 'tau': 'tau',
    'epsilon': 'epsilon', 'lam': 'lambda', 'b': 'b',
}
PARAM_FIELD_NAMES = {cli: name for name, cli in PARAM_CLI_NAMES.items()}


@dataclass(frozen=True)
class DeclaredProperties:
    ratio_symmetric: bool
    convex: bool
    continuous: bool
    locally_lipschitz: bool
    globally_lipschitz: bool
    differentiable: bool

    FIELDS = ('ratio_symmetric', 'convex', 'continuous', 'locally_lipschitz',
              'globally_lipschitz', 'differentiable')

    def as_dict(self) -> Dict[str, bool]:
        return {name: getattr(self, name) for name in self.FIELDS}


def _declared(flags: str) -> DeclaredProperties:
    # one character per property, 'y' or '-'
    return DeclaredProperties(*(ch == 'y' for ch in flags))


@dataclass(frozen=True)
class RepresentingFunction:
    """
    One representing function with bound parameters.

    `value` and `deriv` take a positive float array; `deriv` also takes the side
    ('left', 'right' or 'central') used at breakpoints. Catalog entries carry
    `declared` flags; functions produced by the builders leave it unset.
    """
    id: str
    params: LossParams = field(default_factory=LossParams)
    declared: Optional[DeclaredProperties] = None
    value: Callable = field(default=None, repr=False, compare=False)
    deriv: Callable = field(default=None, repr=False, compare=False)
    breakpoints: Tuple[float, ...] = ()
    kinks: Tuple[float, ...] = ()
    sup_value: float = math.inf
    certified: Optional[bool] = None

    @property
    def label(self) -> str:
        params = self.params.as_dict()
        if not params:
            return self.id
        return self.id + ':' + ','.join(f"{k}={v:g}" for k, v in params.items())

    def __call__(self, r):
        return eval_ell(self, r)


def _as_positive(r) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"representing functions are defined for finite r > 0, got {r!r}")
    return arr


def _scalar_or_array(template, out):
    if np.ndim(template) == 0:
        return float(out)
    return out


def eval_ell(f: RepresentingFunction, r):
    """l(r) for a scalar or an array of positive ratios"""
    arr = _as_positive(r)
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        out = np.asarray(f.value(arr), dtype=float)
    return _scalar_or_array(r, out)


def eval_ell_deriv(f: RepresentingFunction, r, side: str = 'central'):
    """
    dl/dr at r. At a breakpoint `side` selects the adjacent piece; a central
    derivative at a kink raises KinkError.
    """
    if side not in SIDES:
        raise InvalidParameterError(f"side must be one of {SIDES}, got {side!r}")
    arr = _as_positive(r)
    if side == 'central':
        for kink in f.kinks:
            if np.any(np.abs(arr - kink) <= KINK_RTOL * kink):
                raise KinkError(f"{f.label} is not differentiable at r={kink:.17g}")
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        out = np.asarray(f.deriv(arr, side), dtype=float)
    return _scalar_or_array(r, out)


def is_ratio_symmetric_analytic(f: RepresentingFunction) -> bool:
    """Ratio-symmetry flag as declared in the property table"""
    if f.declared is None:
        return False
    return f.declared.ratio_symmetric


# piece selection honouring `side` at breakpoints: lower pieces are closed on
# the right (r <= k), upper pieces closed on the left (k <= r)

def _at_or_above(r, k, side):
    return r > k if side == 'left' else r >= k


def _at_or_below(r, k, side):
    return r < k if side == 'right' else r <= k


def _sign(x, r, k, side):
    """sign(x) where x changes sign at r = k, resolved by `side` exactly at k"""
    at_kink = r == k
    resolved = 1.0 if side == 'right' else (-1.0 if side == 'left' else 0.0)
    return np.where(at_kink, resolved, np.sign(x))


def _log_cosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - LOG2


# ============ Logarithmic and symmetrized entries ============

def _v_log_ratio_sym(r, p):
    return 2.0 * np.log1p(r) - np.log(r) - LOG4


def _d_log_ratio_sym(r, p, side):
    return 2.0 / (1.0 + r) - 1.0 / r


def _v_sqrt_log(r, p):
    # asinh(sqrt(r)) = log(sqrt(r) + sqrt(1 + r))
    return np.arcsinh(np.sqrt(r)) + np.arcsinh(1.0 / np.sqrt(r)) - 2.0 * ASINH1


def _d_sqrt_log(r, p, side):
    return (1.0 / np.sqrt(r) - 1.0 / r) / (2.0 * np.sqrt(1.0 + r))


def _v_squared_log(r, p):
    return np.log(r) ** 2


def _d_squared_log(r, p, side):
    return 2.0 * np.log(r) / r


def _v_abs_log(r, p):
    return np.abs(np.log(r))


def _d_abs_log(r, p, side):
    return _sign(r - 1.0, r, 1.0, side) / r


def _v_huber_log(r, p):
    a = p.alpha
    la = math.log(a)
    lr = np.log(r)
    return np.select(
        [_at_or_below(r, 1.0 / a, 'central'), _at_or_above(r, a, 'central')],
        [-la * (2.0 * lr + la), la * (2.0 * lr - la)],
        default=lr ** 2,
    )


def _d_huber_log(r, p, side):
    a = p.alpha
    la = math.log(a)
    return np.select(
        [_at_or_below(r, 1.0 / a, side), _at_or_above(r, a, side)],
        [-2.0 * la / r, 2.0 * la / r],
        default=2.0 * np.log(r) / r,
    )


def _v_log_cosh_rel(r, p):
    return _log_cosh(r - 1.0)


def _d_log_cosh_rel(r, p, side):
    return np.tanh(r - 1.0)


def _v_cosh_log(r, p):
    return 0.5 * (r + 1.0 / r) - 1.0


def _d_cosh_log(r, p, side):
    return 0.5 * (1.0 - 1.0 / r ** 2)


def _v_log_cosh_log(r, p):
    return _log_cosh(np.log(r))


def _d_log_cosh_log(r, p, side):
    return np.tanh(np.log(r)) / r


def _v_max_loss(r, p):
    return np.maximum(r, 1.0 / r) - 1.0


def _d_max_loss(r, p, side):
    return np.where(_at_or_above(r, 1.0, side), 1.0, -1.0 / r ** 2)


def _v_log_pinball(r, p):
    lr = np.log(r)
    return np.maximum(p.tau * lr, -(1.0 - p.tau) * lr)


def _d_log_pinball(r, p, side):
    return np.where(_at_or_above(r, 1.0, side), p.tau / r, -(1.0 - p.tau) / r)


# ============ Relative and inverse relative entries ============

def _v_abs_rel(r, p):
    return np.abs(r - 1.0)


def _d_abs_rel(r, p, side):
    return _sign(r - 1.0, r, 1.0, side)


def _v_squared_rel(r, p):
    return (r - 1.0) ** 2


def _d_squared_rel(r, p, side):
    return 2.0 * (r - 1.0)


def _v_huber_rel(r, p):
    a = p.alpha
    ia = 1.0 / a
    return np.select(
        [_at_or_below(r, ia, 'central'), _at_or_above(r, a, 'central')],
        [2.0 * (ia - 1.0) * (r - 1.0) - (1.0 - ia) ** 2,
         2.0 * (a - 1.0) * (r - 1.0) - (a - 1.0) ** 2],
        default=(r - 1.0) ** 2,
    )


def _d_huber_rel(r, p, side):
    a = p.alpha
    ia = 1.0 / a
    return np.select(
        [_at_or_below(r, ia, side), _at_or_above(r, a, side)],
        [np.full_like(r, 2.0 * (ia - 1.0)), np.full_like(r, 2.0 * (a - 1.0))],
        default=2.0 * (r - 1.0),
    )


def _v_inv_abs_rel(r, p):
    return np.abs(1.0 / r - 1.0)


def _d_inv_abs_rel(r, p, side):
    return _sign(r - 1.0, r, 1.0, side) / r ** 2


def _v_inv_sq_rel(r, p):
    return (1.0 / r - 1.0) ** 2


def _d_inv_sq_rel(r, p, side):
    return -2.0 * (1.0 / r - 1.0) / r ** 2


def _v_huber_inv(r, p):
    a = p.alpha
    ia = 1.0 / a
    q = 1.0 / r
    return np.select(
        [_at_or_below(r, ia, 'central'), _at_or_above(r, a, 'central')],
        [2.0 * (a - 1.0) * (q - 1.0) - (a - 1.0) ** 2,
         2.0 * (ia - 1.0) * (q - 1.0) - (1.0 - ia) ** 2],
        default=(q - 1.0) ** 2,
    )


def _d_huber_inv(r, p, side):
    a = p.alpha
    ia = 1.0 / a
    q = 1.0 / r
    return np.select(
        [_at_or_below(r, ia, side), _at_or_above(r, a, side)],
        [-2.0 * (a - 1.0) * q ** 2, -2.0 * (ia - 1.0) * q ** 2],
        default=-2.0 * (q - 1.0) * q ** 2,
    )


# ============ Entries in s = r - 1/r ============

def _s(r):
    return r - 1.0 / r


def _ds(r):
    return 1.0 + 1.0 / r ** 2


def _v_lare(r, p):
    return np.abs(_s(r))


def _d_lare(r, p, side):
    return _sign(r - 1.0, r, 1.0, side) * _ds(r)


def _v_smooth_lare(r, p):
    return _s(r) ** 2


def _d_smooth_lare(r, p, side):
    return 2.0 * _s(r) * _ds(r)


def _v_huber_lare(r, p):
    a = p.alpha
    big_a = a - 1.0 / a
    s = _s(r)
    outside = _at_or_below(r, 1.0 / a, 'central') | _at_or_above(r, a, 'central')
    return np.where(outside, 2.0 * big_a * np.abs(s) - big_a ** 2, s ** 2)


def _d_huber_lare(r, p, side):
    a = p.alpha
    big_a = a - 1.0 / a
    s = _s(r)
    outside = _at_or_below(r, 1.0 / a, side) | _at_or_above(r, a, side)
    return np.where(outside, 2.0 * big_a * np.sign(s), 2.0 * s) * _ds(r)


def _v_lpre(r, p):
    return r + 1.0 / r - 2.0


def _d_lpre(r, p, side):
    return 1.0 - 1.0 / r ** 2


# ============ General relative error entries ============

def _v_gre_sq(r, p):
    return (1.0 - r) ** 2 + (1.0 / r - 1.0) ** 2


def _d_gre_sq(r, p, side):
    return 2.0 * (r - 1.0) - 2.0 * (1.0 / r - 1.0) / r ** 2


def _v_gre_norm(r, p):
    return np.hypot(1.0 - r, 1.0 / r - 1.0)


def _d_gre_norm(r, p, side):
    value = np.hypot(1.0 - r, 1.0 / r - 1.0)
    # near r = 1 the value behaves like sqrt(2)|r - 1|
    at_one = _sign(r - 1.0, r, 1.0, side) * math.sqrt(2.0)
    safe = np.where(value > 0, value, 1.0)
    return np.where(value > 0, _d_gre_sq(r, p, side) / (2.0 * safe), at_one)


def _v_gre_sqrt(r, p):
    return np.sqrt(np.abs(1.0 - r) + np.abs(1.0 / r - 1.0))


def _d_gre_sqrt(r, p, side):
    sign = _sign(r - 1.0, r, 1.0, side)
    value = _v_gre_sqrt(r, p)
    inner = sign * (1.0 + 1.0 / r ** 2)
    safe = np.where(value > 0, value, 1.0)
    # infinite one-sided slope at r = 1
    return np.where(value > 0, inner / (2.0 * safe), sign * np.inf)


def _v_gre_exp(r, p):
    return np.abs(1.0 - r) + np.expm1(np.abs(1.0 / r - 1.0))


def _d_gre_exp(r, p, side):
    sign = _sign(r - 1.0, r, 1.0, side)
    return sign * (1.0 + np.exp(np.abs(1.0 / r - 1.0)) / r ** 2)


# ============ Insensitive and robust entries ============

def _lpre_zero_zone(eps: float) -> Tuple[float, float]:
    """Roots of r + 1/r - 2 = eps, the edges of the insensitive zone"""
    c = 2.0 + eps
    disc = math.sqrt(c * c - 4.0)
    upper = (c + disc) / 2.0
    return 1.0 / upper, upper


def _v_insens_max(r, p):
    return np.maximum(0.0, np.maximum(r, 1.0 / r) - 1.0 - p.epsilon)


def _d_insens_max(r, p, side):
    hi = 1.0 + p.epsilon
    upper = (r > hi) | ((r == hi) & (side == 'right'))
    lower = (r < 1.0 / hi) | ((r == 1.0 / hi) & (side == 'left'))
    return np.select([upper, lower], [np.ones_like(r), -1.0 / r ** 2], default=0.0)


def _v_insens_lpre(r, p):
    return np.maximum(0.0, r + 1.0 / r - 2.0 - p.epsilon)


def _d_insens_lpre(r, p, side):
    lo, hi = _lpre_zero_zone(p.epsilon)
    active = (r > hi) | (r < lo) | ((r == hi) & (side == 'right')) | ((r == lo) & (side == 'left'))
    return np.where(active, 1.0 - 1.0 / r ** 2, 0.0)


def _v_robust_max(r, p):
    a = p.alpha
    inside = (r > 1.0 / a) & (r < a)
    return np.where(inside, _v_insens_max(r, p), a - 1.0 - p.epsilon)


def _d_robust_max(r, p, side):
    a = p.alpha
    inside = ~(_at_or_below(r, 1.0 / a, side) | _at_or_above(r, a, side))
    return np.where(inside, _d_insens_max(r, p, side), 0.0)


def _v_robust_lpre(r, p):
    a = p.alpha
    inside = (r > 1.0 / a) & (r < a)
    return np.where(inside, _v_insens_lpre(r, p), 1.0 / a + a - 2.0 - p.epsilon)


def _d_robust_lpre(r, p, side):
    a = p.alpha
    inside = ~(_at_or_below(r, 1.0 / a, side) | _at_or_above(r, a, side))
    return np.where(inside, _d_insens_lpre(r, p, side), 0.0)


# ============ Smooth robust entries ============

def _v_flat_lcl(r, p):
    base = _v_log_cosh_log(r, p)
    return (1.0 - 1.0 / (1.0 + p.b * base)) / p.lam


def _d_flat_lcl(r, p, side):
    base = _v_log_cosh_log(r, p)
    return p.b * _d_log_cosh_log(r, p, side) / (p.lam * (1.0 + p.b * base) ** 2)


def _hampel3_constants(p):
    a, be, g = p.alpha, p.beta, p.gamma
    big_a, big_b, big_g = a - 1.0 / a, be - 1.0 / be, g - 1.0 / g
    k = big_a / (big_b - big_g)
    return big_a, big_b, big_g, k


def _hampel3_pieces(r, p, side):
    a, be, g = p.alpha, p.beta, p.gamma
    outer = _at_or_below(r, 1.0 / g, side) | _at_or_above(r, g, side)
    descending = ~outer & (_at_or_below(r, 1.0 / be, side) | _at_or_above(r, be, side))
    linear = ~outer & ~descending & (_at_or_below(r, 1.0 / a, side) | _at_or_above(r, a, side))
    return outer, descending, linear


def _v_hampel_lare_3(r, p):
    big_a, big_b, big_g, k = _hampel3_constants(p)
    s = np.abs(_s(r))
    outer, descending, linear = _hampel3_pieces(r, p, 'central')
    return np.select(
        [outer, descending, linear],
        [np.full_like(r, k * (big_b ** 2 - big_g ** 2) - big_a ** 2),
         k * ((s - big_g) ** 2 + big_b ** 2 - big_g ** 2) - big_a ** 2,
         2.0 * big_a * s - big_a ** 2],
        default=s ** 2,
    )


def _d_hampel_lare_3(r, p, side):
    big_a, big_b, big_g, k = _hampel3_constants(p)
    s = _s(r)
    sign = np.sign(s)
    outer, descending, linear = _hampel3_pieces(r, p, side)
    ds = np.select(
        [outer, descending, linear],
        [np.zeros_like(r), 2.0 * k * (np.abs(s) - big_g) * sign, 2.0 * big_a * sign],
        default=2.0 * s,
    )
    return ds * _ds(r)


def _hampel2_constant(p):
    a, be = p.alpha, p.beta
    return (a * a - 1.0) / ((a - be) * (a * be + 1.0))


def _v_hampel_lare_2(r, p):
    a, be = p.alpha, p.beta
    big_a, big_b = a - 1.0 / a, be - 1.0 / be
    k = _hampel2_constant(p)
    s = _s(r)
    outer = _at_or_below(r, 1.0 / be, 'central') | _at_or_above(r, be, 'central')
    upper = ~outer & _at_or_above(r, a, 'central')
    lower = ~outer & _at_or_below(r, 1.0 / a, 'central')
    tail = (be * be - 1.0) * big_a
    return np.select(
        [outer, upper, lower],
        [np.full_like(r, k * (be * be - 1.0) * (big_a - big_b)),
         k * (be * s ** 2 - 2.0 * (be * be - 1.0) * s + tail),
         k * (be * s ** 2 + 2.0 * (be * be - 1.0) * s + tail)],
        default=s ** 2,
    )


def _d_hampel_lare_2(r, p, side):
    a, be = p.alpha, p.beta
    k = _hampel2_constant(p)
    s = _s(r)
    outer = _at_or_below(r, 1.0 / be, side) | _at_or_above(r, be, side)
    upper = ~outer & _at_or_above(r, a, side)
    lower = ~outer & _at_or_below(r, 1.0 / a, side)
    ds = np.select(
        [outer, upper, lower],
        [np.zeros_like(r),
         k * (2.0 * be * s - 2.0 * (be * be - 1.0)),
         k * (2.0 * be * s + 2.0 * (be * be - 1.0))],
        default=2.0 * s,
    )
    return ds * _ds(r)


# ============ Weighted entries ============

def _weighted(base_value, r, p):
    return np.where(r < 1.0, base_value / p.tau, p.tau * base_value)


def _weighted_deriv(base_deriv, r, p, side):
    return np.where(_at_or_above(r, 1.0, side), p.tau * base_deriv, base_deriv / p.tau)


def _v_weighted_max(r, p):
    return _weighted(_v_max_loss(r, p), r, p)


def _d_weighted_max(r, p, side):
    return _weighted_deriv(_d_max_loss(r, p, side), r, p, side)


def _v_weighted_lpre(r, p):
    return _weighted(_v_lpre(r, p), r, p)


def _d_weighted_lpre(r, p, side):
    return _weighted_deriv(_d_lpre(r, p, side), r, p, side)


def _v_weighted_smooth_lare(r, p):
    return _weighted(_v_smooth_lare(r, p), r, p)


def _d_weighted_smooth_lare(r, p, side):
    return _weighted_deriv(_d_smooth_lare(r, p, side), r, p, side)


# ============ Registry ============

def _no_check(p):
    pass


def _check_huber(p):
    if not p.alpha > 1:
        raise InvalidParameterError(f"Huber-type losses require alpha > 1, got alpha={p.alpha}")


def _check_pinball(p):
    if not 0 < p.tau < 1:
        raise InvalidParameterError(f"log-pinball requires tau in (0, 1), got tau={p.tau}")


def _check_insensitive(p):
    if not 0 < p.epsilon < 1:
        raise InvalidParameterError(f"insensitive losses require epsilon in (0, 1), got epsilon={p.epsilon}")


def _check_robust(p):
    if not p.epsilon >= 0:
        raise InvalidParameterError(f"robust losses require epsilon >= 0, got epsilon={p.epsilon}")
    if not p.alpha > 1 + p.epsilon:
        raise InvalidParameterError(
            f"robust losses require alpha > 1 + epsilon, got alpha={p.alpha}, epsilon={p.epsilon}")


def _check_robust_lpre(p):
    _check_robust(p)
    # the clipping level alpha + 1/alpha - 2 - epsilon must stay nonnegative
    if not p.alpha + 1.0 / p.alpha - 2.0 >= p.epsilon:
        raise InvalidParameterError(
            f"robust-lpre requires alpha + 1/alpha - 2 >= epsilon, got alpha={p.alpha}, epsilon={p.epsilon}")


def _check_flat(p):
    if not (p.lam > 0 and p.b > 0):
        raise InvalidParameterError(f"flattening requires lambda > 0 and b > 0, got lambda={p.lam}, b={p.b}")


def _check_hampel3(p):
    if not 1 < p.alpha < p.beta < p.gamma:
        raise InvalidParameterError(
            f"hampel-lare-3 requires 1 < alpha < beta < gamma, got {p.alpha}, {p.beta}, {p.gamma}")


def _check_hampel2(p):
    if not 1 < p.alpha < p.beta:
        raise InvalidParameterError(f"hampel-lare-2 requires 1 < alpha < beta, got {p.alpha}, {p.beta}")


def _check_weighted(p):
    if not p.tau > 0:
        raise InvalidParameterError(f"weighted losses require tau > 0, got tau={p.tau}")


def _points_alpha(p):
    return (1.0 / p.alpha, p.alpha)


def _points_one(p):
    return (1.0,)


def _points_insens_max(p):
    return (1.0 / (1.0 + p.epsilon), 1.0 + p.epsilon)


def _points_insens_lpre(p):
    return _lpre_zero_zone(p.epsilon)


def _points_robust_max(p):
    return tuple(sorted(_points_alpha(p) + _points_insens_max(p)))


def _points_robust_lpre(p):
    return tuple(sorted(_points_alpha(p) + _points_insens_lpre(p)))


def _points_hampel3(p):
    return (1.0 / p.gamma, 1.0 / p.beta, 1.0 / p.alpha, p.alpha, p.beta, p.gamma)


def _points_hampel2(p):
    return (1.0 / p.beta, 1.0 / p.alpha, p.alpha, p.beta)


def _points_none(p):
    return ()


def _sup_robust_max(p):
    return p.alpha - 1.0 - p.epsilon


def _sup_robust_lpre(p):
    return 1.0 / p.alpha + p.alpha - 2.0 - p.epsilon


def _sup_flat(p):
    return 1.0 / p.lam


def _sup_hampel3(p):
    big_a, big_b, big_g, k = _hampel3_constants(p)
    return k * (big_b ** 2 - big_g ** 2) - big_a ** 2


def _sup_hampel2(p):
    big_a, big_b = p.alpha - 1.0 / p.alpha, p.beta - 1.0 / p.beta
    return _hampel2_constant(p) * (p.beta ** 2 - 1.0) * (big_a - big_b)


def _sup_unbounded(p):
    return math.inf


@dataclass(frozen=True)
class CatalogEntry:
    number: int
    id: str
    title: str
    value: Callable
    deriv: Callable
    flags: str
    param_names: Tuple[str, ...] = ()
    check: Callable = _no_check
    breakpoints: Callable = _points_none
    kinks: Callable = _points_none
    sup: Callable = _sup_unbounded

    @property
    def declared(self) -> DeclaredProperties:
        return _declared(self.flags)


_ENTRY_LIST = [
    CatalogEntry(1, 'log-ratio-sym', 'Symmetrized log(1+r)', _v_log_ratio_sym, _d_log_ratio_sym, 'y-yy-y'),
    CatalogEntry(2, 'sqrt-log', 'Symmetrized log(sqrt(r)+sqrt(1+r))', _v_sqrt_log, _d_sqrt_log, 'y-yy-y'),
    CatalogEntry(3, 'squared-log', 'Squared logarithmic relative loss', _v_squared_log, _d_squared_log, 'y-yy-y'),
    CatalogEntry(4, 'abs-log', 'Absolute logarithmic relative loss', _v_abs_log, _d_abs_log, 'y-yy--',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(5, 'huber-log', 'Huber-type logarithmic relative loss', _v_huber_log, _d_huber_log, 'y-yy-y',
                 ('alpha',), _check_huber, _points_alpha),
    CatalogEntry(6, 'log-cosh-rel', 'Log-cosh relative loss', _v_log_cosh_rel, _d_log_cosh_rel, '-yyyyy'),
    CatalogEntry(7, 'cosh-log', 'Cosh-log relative loss', _v_cosh_log, _d_cosh_log, 'yyyy-y'),
    CatalogEntry(8, 'log-cosh-log', 'Log-cosh-log relative loss', _v_log_cosh_log, _d_log_cosh_log, 'y-yy-y'),
    CatalogEntry(9, 'max-loss', 'Maximum loss', _v_max_loss, _d_max_loss, 'yyyy--',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(10, 'log-pinball', 'Logarithmic pinball loss', _v_log_pinball, _d_log_pinball, '--yy--',
                 ('tau',), _check_pinball, _points_one, _points_one),
    CatalogEntry(11, 'abs-rel', 'Absolute relative loss', _v_abs_rel, _d_abs_rel, '-yyyy-',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(12, 'squared-rel', 'Squared relative loss', _v_squared_rel, _d_squared_rel, '-yyy-y'),
    CatalogEntry(13, 'huber-rel', 'Huber-type relative loss', _v_huber_rel, _d_huber_rel, '-yyyyy',
                 ('alpha',), _check_huber, _points_alpha),
    CatalogEntry(14, 'inv-abs-rel', 'Inverse absolute relative loss', _v_inv_abs_rel, _d_inv_abs_rel, '--yy--',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(15, 'inv-sq-rel', 'Squared inverse relative loss', _v_inv_sq_rel, _d_inv_sq_rel, '--yy-y'),
    CatalogEntry(16, 'huber-inv', 'Huber-type inverse relative loss', _v_huber_inv, _d_huber_inv, '--yy-y',
                 ('alpha',), _check_huber, _points_alpha),
    CatalogEntry(17, 'lare', 'Least absolute relative loss', _v_lare, _d_lare, 'y-yy--',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(18, 'smooth-lare', 'Smooth least absolute relative loss', _v_smooth_lare, _d_smooth_lare,
                 'yyyy-y'),
    CatalogEntry(19, 'huber-lare', 'Huber-type least absolute relative loss', _v_huber_lare, _d_huber_lare,
                 'y-yy-y', ('alpha',), _check_huber, _points_alpha),
    CatalogEntry(20, 'lpre', 'Least product relative loss', _v_lpre, _d_lpre, 'yyyy-y'),
    CatalogEntry(21, 'gre-sq', 'General relative loss, squared sum', _v_gre_sq, _d_gre_sq, 'yyyy-y'),
    CatalogEntry(22, 'gre-norm', 'General relative loss, Euclidean norm', _v_gre_norm, _d_gre_norm, 'y-yy--',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(23, 'gre-sqrt', 'General relative loss, square root', _v_gre_sqrt, _d_gre_sqrt, 'y-y---',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(24, 'gre-exp', 'General relative loss, exponential', _v_gre_exp, _d_gre_exp, '--yy--',
                 breakpoints=_points_one, kinks=_points_one),
    CatalogEntry(25, 'insens-max', 'Insensitive maximum loss', _v_insens_max, _d_insens_max, 'yyyy--',
                 ('epsilon',), _check_insensitive, _points_insens_max, _points_insens_max),
    CatalogEntry(26, 'insens-lpre', 'Insensitive least product relative loss', _v_insens_lpre, _d_insens_lpre,
                 'yyyy--', ('epsilon',), _check_insensitive, _points_insens_lpre, _points_insens_lpre),
    CatalogEntry(27, 'robust-max', 'Robust maximum loss', _v_robust_max, _d_robust_max, 'y-yyy-',
                 ('alpha', 'epsilon'), _check_robust, _points_robust_max, _points_robust_max, _sup_robust_max),
    CatalogEntry(28, 'robust-lpre', 'Robust least product relative loss', _v_robust_lpre, _d_robust_lpre,
                 'y-yyy-', ('alpha', 'epsilon'), _check_robust_lpre, _points_robust_lpre, _points_robust_lpre,
                 _sup_robust_lpre),
    CatalogEntry(29, 'flat-lcl', 'Flattened log-cosh-log loss', _v_flat_lcl, _d_flat_lcl, 'y-yy-y',
                 ('lambda', 'b'), _check_flat, sup=_sup_flat),
    CatalogEntry(30, 'hampel-lare-3', 'Hampel-type least absolute relative loss, three thresholds',
                 _v_hampel_lare_3, _d_hampel_lare_3, 'y-yyyy', ('alpha', 'beta', 'gamma'), _check_hampel3,
                 _points_hampel3, sup=_sup_hampel3),
    CatalogEntry(31, 'hampel-lare-2', 'Hampel-type least absolute relative loss, two thresholds',
                 _v_hampel_lare_2, _d_hampel_lare_2, 'y-yyyy', ('alpha', 'beta'), _check_hampel2,
                 _points_hampel2, sup=_sup_hampel2),
    CatalogEntry(32, 'weighted-max', 'Weighted maximum loss', _v_weighted_max, _d_weighted_max, '-yyy--',
                 ('tau',), _check_weighted, _points_one, _points_one),
    CatalogEntry(33, 'weighted-lpre', 'Weighted least product relative loss', _v_weighted_lpre, _d_weighted_lpre,
                 '-yyy-y', ('tau',), _check_weighted, _points_one),
    CatalogEntry(34, 'weighted-smooth-lare', 'Weighted smooth least absolute relative loss',
                 _v_weighted_smooth_lare, _d_weighted_smooth_lare, '-yyy-y', ('tau',), _check_weighted,
                 _points_one),
]

CATALOG: Dict[str, CatalogEntry] = {entry.id: entry for entry in _ENTRY_LIST}

DEFAULT_PARAMS = {'alpha': 3.0, 'beta': 5.0, 'gamma': 8.0, 'epsilon': 0.2, 'lambda': 1.0, 'b': 1.0}
DEFAULT_TAU = {'log-pinball': 0.1}
WEIGHTED_DEFAULT_TAU = 2.0
SECOND_DRAW = {'alpha': 1.5, 'tau': 0.5, 'epsilon': 0.05}


def catalog_ids() -> List[str]:
    """The 34 catalog ids in table order"""
    return [entry.id for entry in _ENTRY_LIST]


def get_entry(loss_id: str) -> CatalogEntry:
    try:
        return CATALOG[loss_id]
    except KeyError:
        raise UnknownLossError(f"unknown loss id {loss_id!r}")


def default_params(loss_id: str) -> Dict[str, float]:
    """Default parameter set used by the table reproduction"""
    entry = get_entry(loss_id)
    out = {}
    for name in entry.param_names:
        if name == 'tau':
            out[name] = DEFAULT_TAU.get(loss_id, WEIGHTED_DEFAULT_TAU)
        else:
            out[name] = DEFAULT_PARAMS[name]
    return out


def second_draw_params(loss_id: str) -> Optional[Dict[str, float]]:
    """Alternative parameter draw for parametric entries, None for entries without parameters"""
    params = default_params(loss_id)
    if not params:
        return None
    for name in params:
        if name in SECOND_DRAW:
            params[name] = SECOND_DRAW[name]
    return params


def get_loss(loss_id: str, **params) -> RepresentingFunction:
    """
    Build the catalog entry `loss_id` with the given parameters.

    Parameters not given take their defaults; unknown parameter names and values
    outside the admissible range raise InvalidParameterError.
    """
    entry = get_entry(loss_id)
    merged = default_params(loss_id)
    for name, value in params.items():
        if name == 'lam':
            name = 'lambda'
        if name not in entry.param_names:
            raise InvalidParameterError(
                f"{loss_id} has no parameter {name!r}; expected one of {list(entry.param_names) or 'none'}")
        try:
            merged[name] = float(value)
        except (TypeError, ValueError):
            raise InvalidParameterError(f"parameter {name} of {loss_id} must be a number, got {value!r}")
    loss_params = LossParams(**{PARAM_FIELD_NAMES[name]: value for name, value in merged.items()})
    entry.check(loss_params)
    return RepresentingFunction(
        id=entry.id,
        params=loss_params,
        declared=entry.declared,
        value=partial(entry.value, p=loss_params),
        deriv=partial(_bound_deriv, entry.deriv, loss_params),
        breakpoints=tuple(entry.breakpoints(loss_params)),
        kinks=tuple(entry.kinks(loss_params)),
        sup_value=float(entry.sup(loss_params)),
    )


def _bound_deriv(deriv, params, r, side):
    return deriv(r, params, side)


def ell_vec(f: RepresentingFunction, r: np.ndarray) -> np.ndarray:
    """Vectorized evaluation that always returns an array"""
    return np.atleast_1d(eval_ell(f, np.atleast_1d(r)))


def custom_loss(loss_id: str, value: Callable, deriv: Callable, breakpoints=(), kinks=(),
                sup_value: float = math.inf, certified: Optional[bool] = None) -> RepresentingFunction:
    """Wrap user or builder supplied callables value(r) and deriv(r, side) as a representing function"""
    return RepresentingFunction(
        id=loss_id,
        value=value,
        deriv=deriv,
        breakpoints=tuple(breakpoints),
        kinks=tuple(kinks),
        sup_value=sup_value,
        certified=certified,
    )


def with_certification(f: RepresentingFunction, certified: bool) -> RepresentingFunction:
    return replace(f, certified=certified)


def breakpoints(f: RepresentingFunction) -> Tuple[float, ...]:
    """Piecewise breakpoints and kinks of f, sorted"""
    return tuple(sorted(set(f.breakpoints) | set(f.kinks)))
