import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from rbloss.exceptions import InvalidParameterError
from rbloss.links import LINK_KINDS, LinkFunction, eval_link, eval_link_deriv, make_link

BOUNDED = ['logistic', 'arctan', 'gumbel']


def test_default_link_is_exp():
    u = LinkFunction()
    assert u.kind == 'exp' and u.a == 0 and math.isinf(u.b)
    assert eval_link(u, 0.0) == 1.0
    assert eval_link(u, math.log(3.0)) == pytest.approx(3.0)


@pytest.mark.parametrize('kind, t, expected', [
    ('exp', 0.0, 1.0),
    ('neg-exp', 0.0, 1.0),
    ('logistic', 0.0, 0.5),
    ('arctan', 0.0, 0.5),
    ('gumbel', 0.0, math.exp(-1.0)),
])
def test_values_at_zero(kind, t, expected):
    assert eval_link(make_link(kind), t) == pytest.approx(expected)


def test_shift_and_scale():
    u = make_link('logistic', a=2.0, b=6.0)
    assert eval_link(u, 0.0) == pytest.approx(4.0)
    assert make_link('exp', a=1.0)(0.0) == pytest.approx(2.0)
    assert make_link('exp-shift', a=1.0).kind == 'exp'


@pytest.mark.parametrize('kind', LINK_KINDS)
def test_values_stay_strictly_inside(kind):
    u = make_link(kind)
    t = np.linspace(-800, 800, 1601)
    y = u(t)
    assert np.all(y > u.a)
    assert np.all(y < u.b)


@pytest.mark.parametrize('kind', LINK_KINDS)
@given(t=st.floats(min_value=-30, max_value=30, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_monotone(kind, t):
    u = make_link(kind)
    step = 0.5
    if u.increasing:
        assert u(t + step) >= u(t)
    else:
        assert u(t + step) <= u(t)


@pytest.mark.parametrize('kind', LINK_KINDS)
def test_derivative_matches_finite_differences(kind):
    u = make_link(kind, a=0.5, b=None)
    t = np.linspace(-3, 3, 61)
    h = 1e-6
    numeric = (u(t + h) - u(t - h)) / (2 * h)
    assert_allclose(eval_link_deriv(u, t), numeric, rtol=1e-6, atol=1e-9)


def test_lipschitz_constants():
    assert make_link('logistic').lipschitz_constant == pytest.approx(0.25)
    assert make_link('arctan', b=2.0).lipschitz_constant == pytest.approx(2.0 / math.pi)
    assert make_link('gumbel').lipschitz_constant == pytest.approx(math.exp(-1.0))
    assert math.isinf(make_link('exp').lipschitz_constant)


@pytest.mark.parametrize('kind', BOUNDED)
def test_lipschitz_constant_is_sup_of_derivative(kind):
    u = make_link(kind)
    t = np.linspace(-20, 20, 400001)
    assert np.max(np.abs(u.deriv(t))) == pytest.approx(u.lipschitz_constant, rel=1e-8)


@pytest.mark.parametrize('kwargs', [
    {'kind': 'softplus'},
    {'kind': 'exp', 'a': -1.0},
    {'kind': 'exp', 'b': 5.0},
    {'kind': 'logistic', 'b': math.inf},
    {'kind': 'logistic', 'a': 1.0, 'b': 1.0},
])
def test_invalid_links(kwargs):
    with pytest.raises(InvalidParameterError):
        LinkFunction(**kwargs)


def test_contains():
    u = make_link('logistic')
    assert list(u.contains([0.0, 0.5, 1.0])) == [False, True, False]
