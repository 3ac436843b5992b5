import json
import math
from io import StringIO

import numpy as np
import pandas as pd
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from rbloss.cli import main


def run(name, *args):
    out = StringIO()
    call_command(name, *args, stdout=out)
    return out.getvalue()


def run_csv(name, *args):
    return pd.read_csv(StringIO(run(name, *args)))


class TestList:
    def test_lists_whole_catalog(self):
        frame = run_csv('rbloss_list')
        assert len(frame) == 34
        assert list(frame['number']) == list(range(1, 35))
        assert frame.loc[frame['id'] == 'log-pinball', 'params'].item() == 'tau=0.1'

    def test_filters(self):
        convex = run_csv('rbloss_list', '--convex')
        assert 0 < len(convex) < 34
        assert set(convex['convex']) == {'y'}
        assert 'lpre' in set(convex['id'])
        both = run_csv('rbloss_list', '--convex', '--ratio-symmetric')
        assert set(both['id']) <= set(convex['id'])


class TestCurve:
    def test_log_pinball_minimum_at_log_y(self):
        frame = run_csv('rbloss_curve', 'log-pinball/exp/c=0', '--y', '3')
        assert len(frame) == 201
        best = int(frame['loss'].idxmin())
        assert best == 100
        assert frame['t'][best] == pytest.approx(math.log(3.0), abs=1e-12)
        assert frame['loss'][best] == pytest.approx(0.0, abs=1e-12)

    def test_representing_function_on_log_grid(self):
        frame = run_csv('rbloss_curve', 'huber-rel:alpha=2', '--range=0.5,2', '--points', '5')
        assert list(frame.columns) == ['r', 'ell']
        assert frame['r'].iloc[0] == pytest.approx(0.5) and frame['r'].iloc[-1] == pytest.approx(2.0)
        assert frame['ell'][2] == pytest.approx(0.0, abs=1e-15)

    def test_zero_points_gives_header_only(self):
        assert run('rbloss_curve', 'lpre/exp/c=0', '--points', '0').strip() == 't,loss'

    def test_default_output_lies_inside_a_bounded_link(self):
        frame = run_csv('rbloss_curve', 'abs-rel/logistic/c=0.5', '--points', '11')
        assert frame['t'].iloc[0] == pytest.approx(-3.0) and frame['t'].iloc[-1] == pytest.approx(3.0)
        # y = 0.5 is met at t = 0
        assert frame['loss'][5] == pytest.approx(0.0, abs=1e-15)

    def test_output_outside_the_link_range(self):
        with pytest.raises(CommandError) as info:
            run('rbloss_curve', 'abs-rel/logistic/c=0.5', '--y', '3')
        assert info.value.returncode == 2

    def test_bad_range(self):
        with pytest.raises(CommandError) as info:
            run('rbloss_curve', 'lpre', '--range=2,1')
        assert info.value.returncode == 2


class TestEval:
    def test_assembled_loss(self):
        frame = run_csv('rbloss_eval', '--loss', 'lpre/exp/c=0', '--y', '3', '--t', str(math.log(6.0)))
        assert frame['value'].item() == pytest.approx(0.5)
        assert frame['derivative'].item() == pytest.approx(1.5)

    def test_representing_function_one_sided(self):
        left = run_csv('rbloss_eval', '--ell', 'abs-rel', '--r', '1', '--side', 'left')
        right = run_csv('rbloss_eval', '--ell', 'abs-rel', '--r', '1')
        assert left['derivative'].item() == -1.0
        assert right['derivative'].item() == 1.0

    def test_central_derivative_at_kink_is_an_error(self):
        with pytest.raises(CommandError) as info:
            run('rbloss_eval', '--ell', 'abs-rel', '--r', '1', '--side', 'central')
        assert info.value.returncode == 2

    def test_unknown_loss_id(self):
        with pytest.raises(CommandError, match='unknown loss id') as info:
            run('rbloss_eval', '--loss', 'nope/exp/c=0', '--y', '1', '--t', '0')
        assert info.value.returncode == 2

    def test_needs_a_subject(self):
        with pytest.raises(CommandError):
            run('rbloss_eval')


class TestVerify:
    def test_single_loss_csv(self):
        frame = run_csv('rbloss_verify', '--loss', 'lpre/exp/c=0')
        assert list(frame['property']) == ['convex', 'continuous', 'locally_lipschitz', 'globally_lipschitz',
                                           'differentiable']
        assert list(frame['expected']) == ['holds', 'holds', 'fails', 'fails', 'holds']
        assert list(frame['verdict']) == list(frame['expected'])

    def test_json_envelope(self):
        payload = json.loads(run('rbloss_verify', '--loss', 'abs-log/logistic/c=0.5', '--format', 'json'))
        assert payload['spec_version'] == '1'
        assert payload['kind'] == 'property-report'
        assert payload['mismatch_count'] == 0
        report = payload['reports'][0]
        assert report['ell_id'] == 'abs-log' and report['c'] == 0.5
        assert {v['property'] for v in report['verdicts']} == {'convex', 'continuous', 'locally_lipschitz',
                                                               'globally_lipschitz', 'differentiable'}

    def test_untabulated_loss_has_no_expectation(self):
        frame = run_csv('rbloss_verify', '--loss', 'lpre/exp/c=0/inverse')
        assert frame['expected'].isna().all()

    def test_nothing_to_verify(self):
        with pytest.raises(CommandError) as info:
            run('rbloss_verify')
        assert info.value.returncode == 2


class TestBuild:
    def test_certified_preset(self, tmp_path):
        out = tmp_path / 'log1p.csv'
        message = run('rbloss_build', '--aux', 'log1p', '--symmetrize', '--certify', '--points', '101',
                      '--out', str(out))
        assert 'Wrote' in message
        frame = pd.read_csv(out)
        assert list(frame.columns) == ['r', 'certificate', 'ell']
        assert len(frame) == 101
        assert (frame['certificate'] >= 0).all()

    def test_power_certificate_without_symmetrizing(self):
        frame = run_csv('rbloss_build', '--aux', 'power:alpha=0.5', '--certify', '--points', '11')
        assert list(frame.columns) == ['r', 'certificate']
        # f' + r f'' = alpha^2 r^(alpha - 1)
        np.testing.assert_allclose(frame['certificate'], 0.25 / np.sqrt(frame['r']), rtol=1e-12)

    def test_unknown_preset(self):
        with pytest.raises(CommandError) as info:
            run('rbloss_build', '--aux', 'cubic')
        assert info.value.returncode == 2


def test_generate_fit_and_score(tmp_path):
    data = tmp_path / 'data.csv'
    model = tmp_path / 'model.json'
    run('rbloss_gen', '--n', '200', '--d', '2', '--sigma', '0', '--seed', '4', '--w=0.5,-1', '--b0', '0.3',
        '--out', str(data))
    frame = pd.read_csv(data)
    assert list(frame.columns) == ['x1', 'x2', 'y']
    assert len(frame) == 200

    message = run('rbloss_fit', '--loss', 'lpre/exp/c=0', '--data', str(data), '--tol', '1e-10',
                  '--out', str(model))
    assert 'converged' in message
    fitted = json.loads(model.read_text())
    assert fitted['spec_version'] == '1'
    assert fitted['loss'] == 'lpre/exp:a=0.0/c=0.0'
    assert fitted['converged']
    np.testing.assert_allclose(fitted['model']['w'], [0.5, -1.0], atol=1e-6)
    assert fitted['model']['b0'] == pytest.approx(0.3, abs=1e-6)

    risks = json.loads(run('rbloss_risk', '--loss', 'lpre/exp/c=0', '--data', str(data), '--model', str(model)))
    assert risks['empirical_risk'] < 1e-12
    assert risks['risk_at_zero'] > 0
    assert risks['risk_at_zero_bound'] is None

    scores = frame[['x1', 'x2']].to_numpy() @ np.asarray(fitted['model']['w']) + fitted['model']['b0']
    predictions = tmp_path / 'pred.csv'
    pd.DataFrame({'y_hat': np.exp(scores)}).to_csv(predictions, index=False)
    metrics = json.loads(run('rbloss_metric', '--data', str(data), '--pred', str(predictions)))
    assert metrics['n'] == 200
    assert set(metrics['metrics']) == {'abs_rel', 'lrmse', 'mean_log10', 'rae'}
    assert metrics['metrics']['abs_rel'] < 1e-6


def test_generation_is_reproducible():
    args = ('rbloss_gen', '--n', '10', '--sigma', '0.4', '--seed', '12')
    assert run(*args) == run(*args)


def test_missing_data_file(tmp_path):
    with pytest.raises(CommandError) as info:
        run('rbloss_fit', '--loss', 'lpre/exp/c=0', '--data', str(tmp_path / 'missing.csv'))
    assert info.value.returncode == 2


def test_console_entry_point_rejects_unknown_verb(capsys):
    assert main(['rbloss', 'predict']) == 2
    assert 'unknown command' in capsys.readouterr().err
