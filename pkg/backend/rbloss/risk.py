"""
Empirical risk, relative-error metrics, multiplicative-noise data and an ERM fitter
for linear-in-link predictors t = w.x + b0, prediction u(t).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .assembly import RatioLoss, eval_loss, eval_loss_dt
from .conf import get_setting
from .exceptions import (DomainError, InvalidParameterError, NonFiniteRiskError, RaeUndefinedError,
                         StepCollapseError)
from .links import LinkFunction, make_link
from .prng import CounterRng

logger = logging.getLogger(__name__)

METRIC_KINDS = ('abs_rel', 'lrmse', 'mean_log10', 'rae')
ARMIJO_C1 = 1e-4
MIN_STEP = 1e-18
MAX_STEP = 1e3
MAX_RESAMPLE_ROUNDS = 1000


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.y = np.asarray(self.y, dtype=float).reshape(-1)
        X = np.asarray(self.X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(len(self.y), -1)
        self.X = X
        if len(self.y) < 1:
            raise InvalidParameterError('a dataset needs at least one row')
        if X.shape[0] != len(self.y):
            raise InvalidParameterError(f"X has {X.shape[0]} rows but y has {len(self.y)}")

    @property
    def n(self) -> int:
        return len(self.y)

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def validate(self, link: LinkFunction):
        """Every output strictly inside (a, b); the error names the first offending row"""
        inside = link.contains(self.y)
        if not np.all(inside):
            row = int(np.argmin(inside))
            raise DomainError(f"row {row}: y={self.y[row]!r} is not inside ({link.a:g}, {link.b:g})")

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> 'Dataset':
        if 'y' not in frame.columns:
            raise InvalidParameterError(f"data needs a 'y' column, got {list(frame.columns)}")
        features = sorted((col for col in frame.columns if col.startswith('x') and col[1:].isdigit()),
                          key=lambda col: int(col[1:]))
        X = frame[features].to_numpy(dtype=float) if features else np.zeros((len(frame), 0))
        return cls(X, frame['y'].to_numpy(dtype=float))

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.X, columns=[f"x{i + 1}" for i in range(self.d)])
        frame['y'] = self.y
        return frame


@dataclass
class LinearModel:
    w: np.ndarray
    b0: float = 0.0

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=float).reshape(-1)
        self.b0 = float(self.b0)
        if not (np.all(np.isfinite(self.w)) and math.isfinite(self.b0)):
            raise InvalidParameterError(f"model entries must be finite, got w={self.w.tolist()}, b0={self.b0}")

    def scores(self, X: np.ndarray) -> np.ndarray:
        """Pre-link values t = w.x + b0"""
        return np.asarray(X, dtype=float) @ self.w + self.b0

    def predict(self, X: np.ndarray, link: LinkFunction) -> np.ndarray:
        return link(self.scores(X))

    def as_dict(self) -> Dict:
        return {'w': self.w.tolist(), 'b0': self.b0}


@dataclass
class FitResult:
    model: LinearModel
    risk_trace: List[Tuple[int, float]] = field(default_factory=list)
    converged: bool = False
    final_risk: float = math.nan
    gradient_norm: float = math.nan

    @property
    def iterations(self) -> int:
        return self.risk_trace[-1][0] if self.risk_trace else 0


@dataclass
class ZeroRisk:
    value: float
    bound: Optional[float]
    hypotheses_hold: bool


def _check_model(D: Dataset, f: LinearModel):
    if f.w.shape[0] != D.d:
        raise InvalidParameterError(f"model has {f.w.shape[0]} weights, data has {D.d} features")


def _row_losses(L: RatioLoss, D: Dataset, t: np.ndarray) -> np.ndarray:
    D.validate(L.link)
    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        return np.asarray(eval_loss(L, D.y, t), dtype=float)


def _mean(values: np.ndarray) -> float:
    # fsum is exact, so the result does not depend on evaluation order
    if not np.all(np.isfinite(values)):
        return math.inf if not np.any(np.isnan(values)) else math.nan
    return math.fsum(values.tolist()) / len(values)


def empirical_risk(L: RatioLoss, D: Dataset, f: LinearModel) -> float:
    """Mean of L(x_i, y_i, f(x_i)) over the rows"""
    _check_model(D, f)
    return _mean(_row_losses(L, D, f.scores(D.X)))


def _check_reg(lambda_reg: float):
    if not (lambda_reg >= 0 and math.isfinite(lambda_reg)):
        raise InvalidParameterError(f"regularization weight must be finite and >= 0, got {lambda_reg}")


def regularized_risk(L: RatioLoss, D: Dataset, f: LinearModel, lambda_reg: float = 0.0) -> float:
    """Empirical risk plus lambda * ||w||^2; the intercept is not penalized"""
    _check_reg(lambda_reg)
    return empirical_risk(L, D, f) + lambda_reg * float(f.w @ f.w)


def risk_gradient(L: RatioLoss, D: Dataset, f: LinearModel, lambda_reg: float = 0.0) -> Tuple[np.ndarray, float]:
    """(d/dw, d/db0) of the regularized risk; right derivatives in t at kinks"""
    _check_reg(lambda_reg)
    _check_model(D, f)
    D.validate(L.link)
    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        dt = np.asarray(eval_loss_dt(L, D.y, f.scores(D.X), side='right'), dtype=float).reshape(-1)
    grad_w = D.X.T @ dt / D.n + 2.0 * lambda_reg * f.w
    grad_b = math.fsum(dt.tolist()) / D.n
    return grad_w, grad_b


def risk_at_zero(L: RatioLoss, D: Dataset) -> ZeroRisk:
    """
    Empirical risk of the zero predictor t = 0.

    With c > 0 and l Lipschitz near 0 the risk is at most
    |l|_{[0,m],1} (u(0)/c + 2), m = (u(0) + c)/c; the bound is None otherwise.
    """
    from .verifier import ell_sup_derivative

    zero = LinearModel(np.zeros(D.d), 0.0)
    value = empirical_risk(L, D, zero)
    u0 = L.link(0.0)
    if L.c <= 0 or L.direction != 'standard' or L.link.a < 0:
        return ZeroRisk(value, None, False)
    m = (u0 + L.c) / L.c
    near = ell_sup_derivative(L.ell, 1e-9, m)
    farther = ell_sup_derivative(L.ell, 1e-6, m)
    # a Lipschitz continuation at 0 exists when the slope bound stops growing towards 0
    if not (math.isfinite(near) and near <= 1.05 * farther):
        logger.info(f"{L.label}: l has no Lipschitz continuation at 0, risk bound not available")
        return ZeroRisk(value, None, False)
    bound = near * (u0 / L.c + 2.0)
    if value > bound:
        logger.warning(f"{L.label}: risk at zero {value:.6g} exceeds bound {bound:.6g}")
    return ZeroRisk(value, bound, True)


# ============ Metrics ============

def _metric_inputs(D, predictions) -> Tuple[np.ndarray, np.ndarray]:
    y = D.y if isinstance(D, Dataset) else np.asarray(D, dtype=float).reshape(-1)
    pred = np.asarray(predictions, dtype=float).reshape(-1)
    if pred.shape != y.shape:
        raise InvalidParameterError(f"expected {len(y)} predictions, got {len(pred)}")
    if np.any(pred <= 0) or np.any(y <= 0):
        raise DomainError('metrics need positive outputs and predictions')
    return y, pred


def metric(kind: str, D, predictions) -> float:
    """abs_rel, lrmse, mean_log10 or rae of the predictions against D's outputs"""
    y, pred = _metric_inputs(D, predictions)
    if kind == 'abs_rel':
        return float(np.mean(np.abs(pred - y) / y))
    if kind == 'lrmse':
        return float(np.sqrt(np.mean((np.log(pred) - np.log(y)) ** 2)))
    if kind == 'mean_log10':
        return float(np.mean(np.abs(np.log10(pred) - np.log10(y))))
    if kind == 'rae':
        spread = float(np.sum(np.abs(y - np.mean(y))))
        if spread == 0:
            raise RaeUndefinedError('RAE is undefined when every output equals the mean output')
        return float(np.sum(np.abs(y - pred))) / spread
    raise InvalidParameterError(f"unknown metric {kind!r}; expected one of {', '.join(METRIC_KINDS)}")


def metric_all(D, predictions) -> Dict[str, float]:
    out = {}
    for kind in METRIC_KINDS:
        try:
            out[kind] = metric(kind, D, predictions)
        except RaeUndefinedError as e:
            logger.warning(f"Skipping rae: {str(e)}")
    return out


# ============ Synthetic data ============

def generate_multiplicative(n: int, d: int, true_model: LinearModel, noise_sigma: float = 0.0,
                            seed: int = 0, link: Optional[LinkFunction] = None) -> Dataset:
    """
    x uniform on [-1, 1]^d, y = u(w.x + b0) * exp(sigma * N(0, 1)).
    Rows whose y leaves (a, b) or hits the clamp are redrawn from the same stream.
    """
    if n < 1 or d < 0:
        raise InvalidParameterError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if not (noise_sigma >= 0 and math.isfinite(noise_sigma)):
        raise InvalidParameterError(f"noise_sigma must be finite and >= 0, got {noise_sigma}")
    if true_model.w.shape[0] != d:
        raise InvalidParameterError(f"true model has {true_model.w.shape[0]} weights, expected {d}")
    link = link or make_link('exp')
    lo, hi = link.clamp_bounds()
    rng = CounterRng(seed)

    def draw(rows):
        X = rng.uniform(rows * d, -1.0, 1.0).reshape(rows, d)
        noise = rng.normal(rows)
        with np.errstate(over='ignore'):
            y = link(true_model.scores(X)) * np.exp(noise_sigma * noise)
        return X, np.atleast_1d(y)

    X, y = draw(n)
    for _ in range(MAX_RESAMPLE_ROUNDS):
        bad = ~((y > lo) & (y < hi) & np.isfinite(y))
        if not np.any(bad):
            break
        X[bad], y[bad] = draw(int(bad.sum()))
    else:
        raise InvalidParameterError(f"could not draw outputs inside ({link.a:g}, {link.b:g}); lower noise_sigma")
    logger.debug(f"Generated {n} rows, d={d}, sigma={noise_sigma}, seed={seed}")
    return Dataset(X, y)


# ============ Fitting ============

def initial_model(L: RatioLoss, D: Dataset) -> LinearModel:
    """w = 0 and, for exponential links, b0 matching the mean log output"""
    b0 = 0.0
    if L.link.kind in ('exp', 'neg-exp'):
        centre = float(np.mean(np.log(D.y - L.link.a)))
        b0 = centre if L.link.kind == 'exp' else -centre
    return LinearModel(np.zeros(D.d), b0)


def fit(L: RatioLoss, D: Dataset, lambda_reg: float = 0.0, tol: float = None, max_iter: int = None,
        init: Optional[LinearModel] = None) -> FitResult:
    """
    Gradient descent on the regularized risk with Armijo backtracking (step halving).
    Stops when the gradient's max-norm drops below tol, when the risk reaches 0 (the
    objective is nonnegative) or after max_iter steps.
    """
    tol = get_setting('FIT_TOL') if tol is None else tol
    max_iter = get_setting('FIT_MAX_ITER') if max_iter is None else max_iter
    model = init or initial_model(L, D)
    risk = regularized_risk(L, D, model, lambda_reg)
    if not math.isfinite(risk):
        raise NonFiniteRiskError(f"risk at the initial model is {risk}; check the data against {L.label}")

    trace = [(0, risk)]
    step = 1.0
    converged = False
    grad_norm = math.inf
    for iteration in range(1, max_iter + 1):
        grad_w, grad_b = risk_gradient(L, D, model, lambda_reg)
        grad_norm = max(float(np.max(np.abs(grad_w))) if grad_w.size else 0.0, abs(grad_b))
        if not math.isfinite(grad_norm):
            raise NonFiniteRiskError(f"gradient is not finite at iteration {iteration}")
        if grad_norm < tol or risk == 0.0:
            converged = True
            break
        squared = float(grad_w @ grad_w) + grad_b ** 2
        step = min(2.0 * step, MAX_STEP)
        while True:
            candidate = LinearModel(model.w - step * grad_w, model.b0 - step * grad_b)
            candidate_risk = regularized_risk(L, D, candidate, lambda_reg)
            if math.isfinite(candidate_risk) and candidate_risk <= risk - ARMIJO_C1 * step * squared:
                break
            step /= 2.0
            if step < MIN_STEP:
                raise StepCollapseError(
                    f"line search collapsed at iteration {iteration} (risk {risk:.6g}, gradient {grad_norm:.3g})",
                    model=model, risk=risk)
        model, risk = candidate, candidate_risk
        trace.append((iteration, risk))

    if not converged:
        logger.warning(f"{L.label}: no convergence after {max_iter} iterations, gradient norm {grad_norm:.3g}")
    return FitResult(model, trace, converged, risk, grad_norm)
