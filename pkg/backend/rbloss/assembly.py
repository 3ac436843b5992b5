"""
Assembly of ratio-based losses L(x, y, t) = l((u(t) + c) / (y + c)).

The inverse direction uses the quotient (y + c) / (u(t) + c). The distance
bridge rewrites any assembled loss as psi(y~ - t~) with psi = l o exp,
y~ = -log(y + c) and t~ = -log(u(t) + c).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .catalog import RepresentingFunction, custom_loss, eval_ell, eval_ell_deriv
from .exceptions import ContractError, DomainError, InvalidParameterError
from .links import LinkFunction

logger = logging.getLogger(__name__)

DIRECTIONS = ('standard', 'inverse')
PSI_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class RatioLoss:
    ell: RepresentingFunction
    link: LinkFunction = field(default_factory=LinkFunction)
    c: float = 0.0
    direction: str = 'standard'

    def __post_init__(self):
        c = float(self.c)
        object.__setattr__(self, 'c', c)
        if not (math.isfinite(c) and c >= 0):
            raise InvalidParameterError(f"offset c must be finite and >= 0, got c={self.c}")
        if self.direction not in DIRECTIONS:
            raise InvalidParameterError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")
        if self.link.a + c == 0:
            logger.debug(f"{self.label}: a + c = 0, Lipschitz bounds with 1/(a+c) do not apply")

    @property
    def strict(self) -> bool:
        """Strictly ratio-based: no offset"""
        return self.c == 0

    @property
    def lipschitz_lemmas_enabled(self) -> bool:
        return self.link.a + self.c > 0

    @property
    def label(self) -> str:
        suffix = '/inverse' if self.direction == 'inverse' else ''
        return f"{self.ell.label}/{self.link.label}/c={self.c:g}{suffix}"

    @property
    def quotient_sign(self) -> int:
        """Sign of d(quotient)/dt"""
        sign = 1 if self.link.increasing else -1
        return sign if self.direction == 'standard' else -sign

    def quotient(self, y, t):
        u = self.link(t)
        if self.direction == 'standard':
            return (u + self.c) / (y + self.c)
        return (y + self.c) / (u + self.c)

    def __call__(self, y, t, x=None):
        return eval_loss(self, y, t, x)


def _validate_outputs(L: RatioLoss, y) -> np.ndarray:
    y_arr = np.asarray(y, dtype=float)
    if not np.all(L.link.contains(y_arr)):
        bad = y_arr[~L.link.contains(y_arr)] if y_arr.ndim else y_arr
        raise DomainError(
            f"outputs must lie strictly inside ({L.link.a:g}, {L.link.b:g}), got {np.ravel(bad)[:5].tolist()}")
    return y_arr


def eval_loss(L: RatioLoss, y, t, x=None):
    """
    L(x, y, t); x is accepted for signature compatibility and ignored.
    Broadcasts over y and t.
    """
    y_arr = _validate_outputs(L, y)
    t_arr = np.asarray(t, dtype=float)
    q = L.quotient(y_arr, t_arr)
    out = eval_ell(L.ell, q)
    return out


def eval_loss_dt(L: RatioLoss, y, t, x=None, side: str = 'right'):
    """
    dL/dt by the chain rule. `side` is taken with respect to t; at kinks of l the
    matching one-sided derivative of l is used.
    """
    y_arr = _validate_outputs(L, y)
    t_arr = np.asarray(t, dtype=float)
    u = L.link(t_arr)
    du = L.link.deriv(t_arr)
    q = L.quotient(y_arr, t_arr)
    ell_side = side
    if side != 'central' and L.quotient_sign < 0:
        ell_side = 'left' if side == 'right' else 'right'
    slope = eval_ell_deriv(L.ell, q, ell_side)
    if L.direction == 'standard':
        out = slope * du / (y_arr + L.c)
    else:
        out = -slope * (y_arr + L.c) * du / (u + L.c) ** 2
    if np.ndim(out) == 0:
        return float(out)
    return out


# ============ Distance-based bridge ============

@dataclass(frozen=True)
class DistanceBridge:
    """psi with the coordinate transforms y~ = -log(y + c) and t~ = -log(u(t) + c)"""
    psi: Callable = field(repr=False)
    psi_deriv: Callable = field(repr=False)
    loss: RatioLoss = None

    def transform_output(self, y):
        return -np.log(np.asarray(y, dtype=float) + self.loss.c)

    def transform_prediction(self, t):
        return -np.log(self.loss.link(t) + self.loss.c)

    def __call__(self, y, t):
        return self.psi(self.transform_output(y) - self.transform_prediction(t))


def to_distance_form(L: RatioLoss) -> DistanceBridge:
    """Distance-based representation of L: psi(d) = l(exp(d)), or l(exp(-d)) for the inverse direction"""
    sign = 1.0 if L.direction == 'standard' else -1.0

    def psi(d):
        return eval_ell(L.ell, np.exp(sign * np.asarray(d, dtype=float)))

    def psi_deriv(d, side='right'):
        q = np.exp(sign * np.asarray(d, dtype=float))
        ell_side = side if sign > 0 or side == 'central' else ('left' if side == 'right' else 'right')
        return sign * q * eval_ell_deriv(L.ell, q, ell_side)

    return DistanceBridge(psi=psi, psi_deriv=psi_deriv, loss=L)


def from_distance_form(psi: Callable, psi_deriv: Optional[Callable] = None,
                       name: str = 'from-distance', kinks=()) -> RepresentingFunction:
    """
    Representing function l = psi o log.

    psi must vanish at 0. Without psi_deriv the derivative is a central difference
    in d; kinks are given in d coordinates.
    """
    at_zero = float(psi(0.0))
    if not abs(at_zero) <= PSI_ZERO_TOL:
        raise ContractError(f"psi(0) must be 0 for a ratio-based loss, got {at_zero:.3g}")

    def value(r):
        return np.asarray(psi(np.log(r)), dtype=float)

    def deriv(r, side):
        d = np.log(r)
        if psi_deriv is not None:
            return np.asarray(psi_deriv(d), dtype=float) / r
        h = 1e-6
        if side == 'right':
            slope = (psi(d + h) - psi(d)) / h
        elif side == 'left':
            slope = (psi(d) - psi(d - h)) / h
        else:
            slope = (psi(d + h) - psi(d - h)) / (2.0 * h)
        return np.asarray(slope, dtype=float) / r

    return custom_loss(name, value, deriv, kinks=tuple(math.exp(k) for k in kinks))
