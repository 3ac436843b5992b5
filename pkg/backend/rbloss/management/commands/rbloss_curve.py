import math

import numpy as np
import pandas as pd

from rbloss.assembly import eval_loss
from rbloss.catalog import eval_ell
from rbloss.exceptions import DomainError, InvalidParameterError
from rbloss.loss_spec import parse_loss_spec
from rbloss.management.base import RblossCommand


def parse_range(text):
    try:
        lo, hi = (float(part) for part in text.split(','))
    except ValueError:
        raise InvalidParameterError(f"--range must be '<lo>,<hi>', got {text!r}")
    if not lo < hi:
        raise InvalidParameterError(f"--range needs lo < hi, got {text!r}")
    return lo, hi


class Command(RblossCommand):
    help = 'Sample a representing function l(r), or an assembled loss L(y, t) at fixed y, as CSV'

    def add_arguments(self, parser):
        parser.add_argument('loss', help='Loss specification, or a bare catalog id with optional :k=v parameters')
        parser.add_argument('--range', help='lo,hi of r (log-spaced) or of t (uniform)')
        parser.add_argument('--points', type=int, default=201)
        parser.add_argument('--y', type=float,
                            help='Fixed output for assembled losses (default: a + 3, or the midpoint of a bounded (a, b))')
        self.add_out_argument(parser)

    def run(self, **options):
        text = options['loss']
        points = max(options['points'], 0)
        if '/' in text:
            L = parse_loss_spec(text).build()
            y = options['y']
            if y is None:
                y = (L.link.a + L.link.b) / 2.0 if L.link.bounded else L.link.a + 3.0
            if not L.link.contains(y):
                raise DomainError(f"y={y:g} is outside the range of {L.link.label}")
            centre = {'exp': math.log(y - L.link.a), 'neg-exp': -math.log(y - L.link.a)}.get(L.link.kind, 0.0)
            lo, hi = parse_range(options['range']) if options['range'] else (centre - 3.0, centre + 3.0)
            t = np.linspace(lo, hi, points)
            values = eval_loss(L, y, t) if points else np.empty(0)
            frame = pd.DataFrame({'t': t, 'loss': np.atleast_1d(values)})
        else:
            # a bare id goes through the loss-spec parser with a neutral link
            ell = parse_loss_spec(f"{text}/exp/c=0").build().ell
            lo, hi = parse_range(options['range']) if options['range'] else (0.1, 10.0)
            if lo <= 0:
                raise InvalidParameterError(f"r must be positive, got range {lo:g},{hi:g}")
            r = np.logspace(math.log10(lo), math.log10(hi), points)
            values = eval_ell(ell, r) if points else np.empty(0)
            frame = pd.DataFrame({'r': r, 'ell': np.atleast_1d(values)})
        self.write_frame(frame, options['out'])
