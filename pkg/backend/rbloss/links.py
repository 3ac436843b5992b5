import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .exceptions import InvalidParameterError


# ============ Link functions u: R -> (a, b) ============

LINK_KINDS = ('exp', 'neg-exp', 'logistic', 'arctan', 'gumbel')
LINK_ALIASES = {
    'exp-shift': 'exp',
    'neg-exp-shift': 'neg-exp',
}
UNBOUNDED_KINDS = ('exp', 'neg-exp')
INFINITE_CLAMP = 1e-300
FINITE_CLAMP = 1e-15


@dataclass(frozen=True)
class LinkFunction:
    """
    Monotone surjective link onto the open interval (a, b).

    exp and neg-exp map onto (a, inf); logistic, arctan and gumbel need a finite b.
    Values are clamped strictly inside (a, b) so downstream ratios stay positive.
    """
    kind: str = 'exp'
    a: float = 0.0
    b: float = math.inf

    def __post_init__(self):
        kind = LINK_ALIASES.get(self.kind, self.kind)
        if kind not in LINK_KINDS:
            raise InvalidParameterError(f"unknown link {self.kind!r}; expected one of {', '.join(LINK_KINDS)}")
        object.__setattr__(self, 'kind', kind)
        a, b = float(self.a), float(self.b)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        if not (math.isfinite(a) and a >= 0):
            raise InvalidParameterError(f"link lower endpoint must be finite and >= 0, got a={a}")
        if kind in UNBOUNDED_KINDS and b != math.inf:
            raise InvalidParameterError(f"{kind} link maps onto (a, inf) and requires b=inf, got b={b}")
        if kind not in UNBOUNDED_KINDS and not (math.isfinite(b) and b > a):
            raise InvalidParameterError(f"{kind} link requires a finite b > a, got a={a}, b={b}")

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.b)

    @property
    def increasing(self) -> bool:
        return self.kind != 'neg-exp'

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def lipschitz_constant(self) -> float:
        """sup |u'(t)| over the real line"""
        if not self.bounded:
            return math.inf
        return self.width * {'logistic': 0.25, 'arctan': 1.0 / math.pi, 'gumbel': math.exp(-1.0)}[self.kind]

    @property
    def label(self) -> str:
        if self.bounded:
            return f"{self.kind}:a={self.a:g},b={self.b:g}"
        return f"{self.kind}:a={self.a:g}"

    def clamp_bounds(self):
        if self.bounded:
            eta = FINITE_CLAMP * self.width
            lo = max(self.a + eta, np.nextafter(self.a, math.inf))
            hi = min(self.b - eta, np.nextafter(self.b, -math.inf))
        else:
            lo = max(self.a + INFINITE_CLAMP, np.nextafter(self.a, math.inf))
            hi = np.finfo(float).max
        return lo, hi

    def contains(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return (y > self.a) & (y < self.b)

    def _raw(self, t):
        if self.kind == 'exp':
            return np.exp(t) + self.a
        if self.kind == 'neg-exp':
            return np.exp(-t) + self.a
        if self.kind == 'logistic':
            return self.width * expit(t) + self.a
        if self.kind == 'arctan':
            return self.width * (0.5 + np.arctan(t) / math.pi) + self.a
        return self.width * np.exp(-np.exp(-t)) + self.a

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        with np.errstate(over='ignore'):
            out = np.clip(self._raw(t_arr), *self.clamp_bounds())
        return float(out) if np.ndim(t) == 0 else out

    def deriv(self, t):
        t_arr = np.asarray(t, dtype=float)
        with np.errstate(over='ignore'):
            if self.kind == 'exp':
                out = np.exp(t_arr)
            elif self.kind == 'neg-exp':
                out = -np.exp(-t_arr)
            elif self.kind == 'logistic':
                s = expit(t_arr)
                out = self.width * s * (1.0 - s)
            elif self.kind == 'arctan':
                out = self.width / (math.pi * (1.0 + t_arr ** 2))
            else:
                out = self.width * np.exp(-t_arr - np.exp(-t_arr))
        return float(out) if np.ndim(t) == 0 else out


def eval_link(u: LinkFunction, t):
    """u(t), strictly inside (a, b)"""
    return u(t)


def eval_link_deriv(u: LinkFunction, t):
    """du/dt"""
    return u.deriv(t)


def make_link(kind: str = 'exp', a: float = 0.0, b: float = None) -> LinkFunction:
    """Link with the CLI default for b: inf for exp/neg-exp, 1 for the bounded kinds"""
    kind = LINK_ALIASES.get(kind, kind)
    if b is None:
        b = math.inf if kind in UNBOUNDED_KINDS else float(a) + 1.0
    return LinkFunction(kind, a, b)
