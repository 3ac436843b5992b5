import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rbloss.assembly import RatioLoss, eval_loss, eval_loss_dt, from_distance_form, to_distance_form
from rbloss.catalog import CATALOG, catalog_ids, eval_ell, get_loss
from rbloss.exceptions import ContractError, DomainError, InvalidParameterError
from rbloss.links import make_link

EXP = make_link('exp')


def loss(loss_id, c=0.0, link=EXP, direction='standard', **params):
    return RatioLoss(get_loss(loss_id, **params), link, c, direction)


@pytest.mark.parametrize('loss_id, c, y, t, expected', [
    ('abs-rel', 0.0, 5.0, math.log(5.0), 0.0),
    ('lpre', 0.0, 3.0, math.log(6.0), 0.5),
    ('abs-rel', 1.0, 3.0, math.log(3.0), 0.0),
])
def test_eval_loss_examples(loss_id, c, y, t, expected):
    assert eval_loss(loss(loss_id, c), y, t) == pytest.approx(expected, abs=1e-14)


def test_eval_loss_dt_examples():
    assert eval_loss_dt(loss('squared-rel'), 1.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert eval_loss_dt(loss('lpre'), 3.0, math.log(6.0)) == pytest.approx(1.5)


def test_log_ratio_sym_slope_bounded_by_two():
    L = loss('log-ratio-sym')
    y = np.logspace(-3, 3, 61)[:, None]
    t = np.linspace(-10, 10, 201)[None, :]
    assert np.max(np.abs(eval_loss_dt(L, y, t))) <= 2.0


def test_strict_flag_and_lemma_switch():
    assert loss('lpre').strict
    assert not loss('lpre', c=0.5).strict
    assert not loss('lpre').lipschitz_lemmas_enabled
    assert loss('lpre', c=0.5).lipschitz_lemmas_enabled


def test_outputs_outside_interval_rejected():
    with pytest.raises(DomainError):
        eval_loss(loss('lpre'), 0.0, 1.0)
    with pytest.raises(DomainError):
        eval_loss(loss('lpre', link=make_link('logistic')), 1.0, 0.0)
    with pytest.raises(DomainError):
        eval_loss_dt(loss('lpre'), -2.0, 0.0)


def test_invalid_construction():
    with pytest.raises(InvalidParameterError):
        loss('lpre', c=-1.0)
    with pytest.raises(InvalidParameterError):
        loss('lpre', direction='sideways')


@pytest.mark.parametrize('scale', [0.1, 2.0, 37.0])
@given(y=st.floats(min_value=0.01, max_value=100.0), t=st.floats(min_value=-5.0, max_value=5.0))
@settings(max_examples=50, deadline=None)
def test_strict_losses_are_scale_invariant(scale, y, t):
    L = loss('lpre')
    assert eval_loss(L, scale * y, t + math.log(scale)) == pytest.approx(eval_loss(L, y, t), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize('loss_id', ['lpre', 'log-cosh-log', 'squared-log', 'sqrt-log', 'smooth-lare'])
def test_inverse_matches_standard_for_symmetric_losses(loss_id):
    standard, inverse = loss(loss_id), loss(loss_id, direction='inverse')
    y = np.logspace(-2, 2, 25)[:, None]
    t = np.linspace(-4, 4, 25)[None, :]
    np.testing.assert_allclose(eval_loss(inverse, y, t), eval_loss(standard, y, t), rtol=1e-10, atol=1e-14)


def test_inverse_differs_for_asymmetric_losses():
    assert eval_loss(loss('abs-rel', direction='inverse'), 1.0, math.log(2.0)) == pytest.approx(0.5)
    assert eval_loss(loss('abs-rel'), 1.0, math.log(2.0)) == pytest.approx(1.0)


SMOOTH = [i for i in catalog_ids() if CATALOG[i].declared.differentiable]


@pytest.mark.parametrize('direction', ['standard', 'inverse'])
@pytest.mark.parametrize('kind', ['exp', 'logistic'])
@pytest.mark.parametrize('loss_id', SMOOTH)
def test_derivative_matches_finite_differences(loss_id, kind, direction):
    link = make_link(kind)
    L = RatioLoss(get_loss(loss_id), link, 0.5, direction)
    y = 0.3 if link.bounded else 3.0
    h = 1e-6
    for t in np.linspace(-2.0, 2.0, 9):
        numeric = (eval_loss(L, y, t + h) - eval_loss(L, y, t - h)) / (2 * h)
        assert eval_loss_dt(L, y, t, side='central') == pytest.approx(numeric, rel=1e-6, abs=1e-7)


def test_one_sided_derivative_flips_for_decreasing_link():
    L = RatioLoss(get_loss('abs-rel'), make_link('neg-exp'), 0.0)
    # t = 0 puts the quotient on the kink; increasing t lowers the quotient
    assert eval_loss_dt(L, 1.0, 0.0, side='right') == pytest.approx(1.0)
    assert eval_loss_dt(L, 1.0, 0.0, side='left') == pytest.approx(-1.0)


@pytest.mark.parametrize('loss_id', catalog_ids())
def test_distance_bridge_round_trip(loss_id):
    for c, direction in [(0.0, 'standard'), (0.5, 'inverse')]:
        L = loss(loss_id, c=c, direction=direction)
        bridge = to_distance_form(L)
        y = np.logspace(-1, 1, 50)[:, None]
        t = np.linspace(-2.3, 2.3, 50)[None, :]
        direct = eval_loss(L, y, t)
        via_bridge = bridge(y, t)
        finite = np.isfinite(direct)
        np.testing.assert_allclose(via_bridge[finite], direct[finite], rtol=1e-9, atol=1e-12)


def test_distance_examples():
    bridge = to_distance_form(loss('abs-log'))
    assert bridge.psi(-2.5) == pytest.approx(2.5)
    assert eval_loss(loss('abs-log'), 3.0, 1.0) == pytest.approx(abs(math.log(3.0) - 1.0))
    logistic = to_distance_form(loss('log-ratio-sym'))
    for d in (-3.0, 0.0, 1.7):
        assert logistic.psi(d) == pytest.approx(2 * math.log1p(math.exp(-d)) + d - 2 * math.log(2.0))
    assert to_distance_form(loss('lpre', c=0.3)).psi(0.0) == 0.0


def test_from_distance_form():
    squared = from_distance_form(lambda d: d ** 2, lambda d: 2 * d, name='squared')
    absolute = from_distance_form(np.abs, kinks=(0.0,), name='absolute')
    zero = from_distance_form(lambda d: 0.0 * d, name='zero')
    r = np.logspace(-2, 2, 41)
    np.testing.assert_allclose(eval_ell(squared, r), eval_ell(get_loss('squared-log'), r), rtol=1e-14)
    np.testing.assert_allclose(eval_ell(absolute, r), eval_ell(get_loss('abs-log'), r), rtol=1e-14, atol=1e-15)
    assert np.all(eval_ell(zero, r) == 0.0)
    assert absolute.kinks == (1.0,)


def test_from_distance_form_requires_psi_zero():
    with pytest.raises(ContractError):
        from_distance_form(lambda d: d ** 2 + 1.0)
