"""
Published property flags of the assembled losses L with respect to t.

Cells read 'y' (holds), '-' (fails) or 'left/right' where the left symbol
applies to c > 0 and the right symbol to c = 0. Columns are convex,
continuous, locally Lipschitz, globally Lipschitz, differentiable.
"""
from typing import Dict

LOSS_PROPERTIES = ('convex', 'continuous', 'locally_lipschitz', 'globally_lipschitz', 'differentiable')

_EXP = {
    'log-ratio-sym': '-/y y y y y',
    'sqrt-log': '-/y y y y y',
    'squared-log': '-/y y - - y',
    'abs-log': '-/y y y y -',
    'huber-log': '-/y y y y y',
    'log-cosh-rel': '- y y/- - y',
    'cosh-log': '-/y y - - y',
    'log-cosh-log': '-/y y y y y',
    'max-loss': '-/y y - - -',
    'log-pinball': '-/y y y y -',
    'abs-rel': '- y y/- - -',
    'squared-rel': '- y y/- - y',
    'huber-rel': '- y y/- - y',
    'inv-abs-rel': '- y - - -',
    'inv-sq-rel': '- y - - y',
    'huber-inv': '- y - - y',
    'lare': '-/y y - - -',
    'smooth-lare': '-/y y - - y',
    'huber-lare': '-/y y - - y',
    'lpre': '-/y y - - y',
    'gre-sq': '-/y y - - y',
    'gre-norm': '-/y y - - -',
    'gre-sqrt': '- y - - -',
    'gre-exp': '-/y y - - -',
    'insens-max': '-/y y - - -',
    'insens-lpre': '-/y y - - -',
    'robust-max': '- y y y -',
    'robust-lpre': '- y y y -',
    'flat-lcl': '- y y y y',
    'hampel-lare-3': '- y y y y',
    'hampel-lare-2': '- y y y y',
    'weighted-max': '-/y y - - -',
    'weighted-lpre': '-/y y - - y',
    'weighted-smooth-lare': '-/y y - - y',
}

_LOGISTIC = {
    'log-ratio-sym': '- y y y y',
    'sqrt-log': '- y y y y',
    'squared-log': '- y y/- y/- y',
    'abs-log': '- y y y -',
    'huber-log': '- y y y y',
    'log-cosh-rel': '- y y/- y/- y',
    'cosh-log': '- y y/- y/- y',
    'log-cosh-log': '- y y y y',
    'max-loss': '- y y/- y/- -',
    'log-pinball': '- y y y -',
    'abs-rel': '- y y/- y/- -',
    'squared-rel': '- y y/- y/- y',
    'huber-rel': '- y y/- y/- y',
    'inv-abs-rel': '- y y y/- -',
    'inv-sq-rel': '- y y y/- y',
    'huber-inv': '- y y y/- y',
    'lare': '- y y/- y/- -',
    'smooth-lare': '- y y/- y/- y',
    'huber-lare': '- y y/- y/- y',
    'lpre': '- y y/- y/- y',
    'gre-sq': '- y y/- y/- y',
    'gre-norm': '- y y/- y/- -',
    'gre-sqrt': '- y - - -',
    'gre-exp': '- y y/- y/- -',
    'insens-max': '- y y/- y/- -',
    'insens-lpre': '- y y/- y/- -',
    'robust-max': '- y y y -',
    'robust-lpre': '- y y y -',
    'flat-lcl': '- y y y y',
    'hampel-lare-3': '- y y y y',
    'hampel-lare-2': '- y y y y',
    'weighted-max': '- y y/- y/- -',
    'weighted-lpre': '- y y/- y/- y',
    'weighted-smooth-lare': '- y y/- y/- y',
}

TABLE3 = {'exp': _EXP, 'logistic': _LOGISTIC}
TABLE3_LINKS = ('exp', 'logistic')
TABLE3_OFFSETS = (0.5, 0.0)


def _cell(symbol: str, c: float) -> bool:
    if '/' in symbol:
        positive, zero = symbol.split('/')
        symbol = positive if c > 0 else zero
    return symbol == 'y'


def expected_table3(loss_id: str, link_kind: str, c: float) -> Dict[str, bool]:
    """Expected verdicts for (l, link, c); KeyError when the pair is not tabulated"""
    row = TABLE3[link_kind][loss_id].split()
    return {prop: _cell(symbol, c) for prop, symbol in zip(LOSS_PROPERTIES, row)}
