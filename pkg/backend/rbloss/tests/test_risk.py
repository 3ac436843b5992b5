import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from rbloss.assembly import RatioLoss
from rbloss.catalog import get_loss
from rbloss.exceptions import DomainError, InvalidParameterError, RaeUndefinedError
from rbloss.links import make_link
from rbloss.prng import CounterRng
from rbloss.risk import (Dataset, FitResult, LinearModel, empirical_risk, fit, generate_multiplicative, metric,
                         metric_all, regularized_risk, risk_at_zero, risk_gradient)

EXP = make_link('exp')
LOGISTIC = make_link('logistic')
TRUE_MODEL = LinearModel([0.5, -1.0], 0.3)


def loss(loss_id, link=EXP, c=0.0, **params):
    return RatioLoss(get_loss(loss_id, **params), link, c)


def intercept_only(*ys):
    return Dataset(np.zeros((len(ys), 0)), np.asarray(ys, dtype=float))


@pytest.fixture
def exact_data():
    return generate_multiplicative(200, 2, TRUE_MODEL, noise_sigma=0.0, seed=7)


@pytest.fixture
def noisy_data():
    return generate_multiplicative(300, 2, TRUE_MODEL, noise_sigma=0.3, seed=11)


class TestCounterRng:
    def test_first_draw_matches_splitmix64(self):
        assert int(CounterRng(0).next_uint64(1)[0]) == 0xE220A8397B1DCDAF

    def test_stream_depends_only_on_seed_and_counter(self):
        whole = CounterRng(42).uniform(6)
        rng = CounterRng(42)
        pieces = np.concatenate([rng.uniform(2), rng.uniform(4)])
        assert np.array_equal(whole, pieces)
        assert not np.array_equal(whole, CounterRng(43).uniform(6))

    def test_ranges(self):
        u = CounterRng(3).uniform(10000, -1.0, 1.0)
        assert np.all(u >= -1.0) and np.all(u < 1.0)
        z = CounterRng(3).normal(10000)
        assert np.all(np.isfinite(z))
        assert abs(np.mean(z)) < 0.05
        assert np.std(z) == pytest.approx(1.0, abs=0.05)


class TestDataset:
    def test_shape_checks(self):
        with pytest.raises(InvalidParameterError):
            Dataset(np.zeros((3, 2)), [1.0, 2.0])
        with pytest.raises(InvalidParameterError):
            Dataset(np.zeros((0, 1)), [])

    def test_validate_names_offending_row(self):
        D = Dataset(np.zeros((3, 1)), [0.5, 1.5, 0.2])
        D.validate(EXP)
        with pytest.raises(DomainError, match='row 1'):
            D.validate(LOGISTIC)

    def test_frame_columns(self):
        frame = pd.DataFrame({'y': [1.0, 2.0], 'x10': [3.0, 4.0], 'x2': [5.0, 6.0], 'note': ['a', 'b']})
        D = Dataset.from_frame(frame)
        assert D.d == 2
        assert_allclose(D.X, [[5.0, 3.0], [6.0, 4.0]])
        assert list(D.to_frame().columns) == ['x1', 'x2', 'y']
        with pytest.raises(InvalidParameterError):
            Dataset.from_frame(frame.drop(columns='y'))


class TestRisk:
    def test_exact_model_has_zero_risk(self, exact_data):
        assert empirical_risk(loss('lpre'), exact_data, TRUE_MODEL) == pytest.approx(0.0, abs=1e-14)

    def test_two_point_example(self):
        model = LinearModel([], math.log(4.0))
        assert empirical_risk(loss('lpre'), intercept_only(2.0, 8.0), model) == pytest.approx(0.5)

    def test_regularization_adds_weight_norm(self):
        model = LinearModel([2.0, 0.0], 0.1)
        D = generate_multiplicative(50, 2, model, seed=1)
        assert regularized_risk(loss('lpre'), D, model, 1.0) == pytest.approx(4.0, abs=1e-12)
        with pytest.raises(InvalidParameterError):
            regularized_risk(loss('lpre'), D, model, -1.0)

    def test_model_dimension_must_match(self, exact_data):
        with pytest.raises(InvalidParameterError):
            empirical_risk(loss('lpre'), exact_data, LinearModel([1.0], 0.0))

    def test_outputs_outside_link_range(self, exact_data):
        with pytest.raises(DomainError):
            empirical_risk(loss('lpre', LOGISTIC, 0.5), exact_data, TRUE_MODEL)

    def test_gradient_matches_finite_differences(self):
        D = generate_multiplicative(100, 2, TRUE_MODEL, noise_sigma=0.2, seed=5, link=LOGISTIC)
        L = loss('squared-rel', LOGISTIC, 0.5)
        model = LinearModel([0.3, -0.2], 0.1)
        grad_w, grad_b = risk_gradient(L, D, model, 0.1)
        h = 1e-6
        for i in range(2):
            step = np.eye(2)[i] * h
            numeric = (regularized_risk(L, D, LinearModel(model.w + step, model.b0), 0.1)
                       - regularized_risk(L, D, LinearModel(model.w - step, model.b0), 0.1)) / (2 * h)
            assert grad_w[i] == pytest.approx(numeric, rel=1e-5, abs=1e-9)
        numeric_b = (regularized_risk(L, D, LinearModel(model.w, model.b0 + h), 0.1)
                     - regularized_risk(L, D, LinearModel(model.w, model.b0 - h), 0.1)) / (2 * h)
        assert grad_b == pytest.approx(numeric_b, rel=1e-5, abs=1e-9)

    def test_risk_is_convex_along_lines(self, noisy_data):
        L = loss('lpre')
        rng = np.random.default_rng(0)
        for _ in range(20):
            a, b = rng.normal(size=3), rng.normal(size=3)
            ends = [empirical_risk(L, noisy_data, LinearModel(p[:2], p[2])) for p in (a, b)]
            mid = (a + b) / 2
            middle = empirical_risk(L, noisy_data, LinearModel(mid[:2], mid[2]))
            assert middle <= (ends[0] + ends[1]) / 2 + 1e-12


class TestRiskAtZero:
    def test_abs_rel_example(self):
        result = risk_at_zero(loss('abs-rel', c=1.0), intercept_only(3.0))
        assert result.value == pytest.approx(0.5)
        assert result.hypotheses_hold
        assert result.bound == pytest.approx(3.0, rel=1e-6)
        assert result.value <= result.bound

    def test_no_bound_without_offset(self):
        result = risk_at_zero(loss('abs-rel'), intercept_only(3.0))
        assert result.bound is None and not result.hypotheses_hold

    def test_no_bound_when_slope_blows_up_at_zero(self):
        result = risk_at_zero(loss('inv-abs-rel', c=1.0), intercept_only(3.0))
        assert result.bound is None and not result.hypotheses_hold


class TestMetrics:
    @pytest.mark.parametrize('kind, y, pred, expected', [
        ('mean_log10', [1.0], [10.0], 1.0),
        ('abs_rel', [2.0, 4.0], [3.0, 2.0], 0.5),
        ('lrmse', [1.0, 1.0], [math.e, 1.0 / math.e], 1.0),
        ('rae', [1.0, 3.0], [2.0, 2.0], 1.0),
    ])
    def test_examples(self, kind, y, pred, expected):
        assert metric(kind, np.asarray(y), pred) == pytest.approx(expected)

    def test_rae_needs_spread(self):
        with pytest.raises(RaeUndefinedError):
            metric('rae', np.array([2.0, 2.0]), [1.0, 3.0])
        assert set(metric_all(np.array([2.0, 2.0]), [1.0, 3.0])) == {'abs_rel', 'lrmse', 'mean_log10'}

    def test_invalid_inputs(self):
        with pytest.raises(InvalidParameterError):
            metric('mape', np.array([1.0]), [1.0])
        with pytest.raises(InvalidParameterError):
            metric('abs_rel', np.array([1.0, 2.0]), [1.0])
        with pytest.raises(DomainError):
            metric('abs_rel', np.array([1.0]), [0.0])


class TestGenerate:
    def test_deterministic_per_seed(self):
        first = generate_multiplicative(20, 2, TRUE_MODEL, 0.5, seed=3)
        second = generate_multiplicative(20, 2, TRUE_MODEL, 0.5, seed=3)
        other = generate_multiplicative(20, 2, TRUE_MODEL, 0.5, seed=4)
        assert np.array_equal(first.X, second.X) and np.array_equal(first.y, second.y)
        assert not np.array_equal(first.y, other.y)

    def test_noise_free_outputs_follow_the_model(self, exact_data):
        assert np.all(np.abs(exact_data.X) <= 1.0)
        assert_allclose(exact_data.y, np.exp(TRUE_MODEL.scores(exact_data.X)), rtol=1e-15)

    def test_log_noise_is_normal(self):
        D = generate_multiplicative(20000, 2, TRUE_MODEL, noise_sigma=0.5, seed=9)
        residual = np.log(D.y) - TRUE_MODEL.scores(D.X)
        assert abs(np.mean(residual)) < 0.02
        assert np.std(residual) == pytest.approx(0.5, abs=0.02)

    def test_bounded_link_outputs_stay_inside(self):
        D = generate_multiplicative(500, 2, TRUE_MODEL, noise_sigma=0.5, seed=2, link=LOGISTIC)
        assert np.all((D.y > 0) & (D.y < 1))

    def test_invalid_arguments(self):
        with pytest.raises(InvalidParameterError):
            generate_multiplicative(0, 2, TRUE_MODEL)
        with pytest.raises(InvalidParameterError):
            generate_multiplicative(10, 3, TRUE_MODEL)
        with pytest.raises(InvalidParameterError):
            generate_multiplicative(10, 2, TRUE_MODEL, noise_sigma=-1.0)


class TestFit:
    def test_recovers_noise_free_model(self, exact_data):
        result = fit(loss('lpre'), exact_data, tol=1e-10)
        assert isinstance(result, FitResult)
        assert result.converged
        assert_allclose(result.model.w, TRUE_MODEL.w, atol=1e-6)
        assert result.model.b0 == pytest.approx(TRUE_MODEL.b0, abs=1e-6)
        assert result.final_risk < 1e-12

    def test_zero_risk_counts_as_converged(self):
        result = fit(loss('lpre'), intercept_only(math.e), tol=0.0)
        assert result.converged
        assert result.iterations == 0
        assert result.final_risk == 0.0

    def test_risk_trace_never_increases(self, noisy_data):
        result = fit(loss('huber-lare'), noisy_data)
        risks = [risk for _, risk in result.risk_trace]
        assert risks[0] == pytest.approx(empirical_risk(loss('huber-lare'), noisy_data,
                                                       LinearModel(np.zeros(2), np.mean(np.log(noisy_data.y)))))
        assert all(b <= a for a, b in zip(risks, risks[1:]))
        assert result.iterations == result.risk_trace[-1][0]

    def test_squared_log_intercept_is_mean_log(self):
        result = fit(loss('squared-log'), intercept_only(2.0, 8.0), init=LinearModel([], 0.0))
        assert result.converged
        assert result.model.b0 == pytest.approx(math.log(4.0), abs=1e-6)

    def test_pinball_median_interval(self):
        result = fit(loss('log-pinball', tau=0.5), intercept_only(2.0, 8.0))
        assert math.log(2.0) - 1e-9 <= result.model.b0 <= math.log(8.0) + 1e-9

    def test_strict_loss_fits_are_scale_invariant(self, noisy_data):
        scale = 13.0
        scaled = Dataset(noisy_data.X, scale * noisy_data.y)
        base = fit(loss('lpre'), noisy_data, tol=1e-10)
        moved = fit(loss('lpre'), scaled, tol=1e-10)
        assert_allclose(moved.model.w, base.model.w, atol=1e-6)
        assert moved.model.b0 == pytest.approx(base.model.b0 + math.log(scale), abs=1e-6)

    def test_regularization_shrinks_weights(self, noisy_data):
        free = fit(loss('lpre'), noisy_data)
        ridge = fit(loss('lpre'), noisy_data, lambda_reg=1.0)
        assert np.linalg.norm(ridge.model.w) < np.linalg.norm(free.model.w)

    def test_iteration_cap(self, noisy_data):
        result = fit(loss('lpre'), noisy_data, tol=0.0, max_iter=3)
        assert not result.converged
        assert result.iterations == 3
