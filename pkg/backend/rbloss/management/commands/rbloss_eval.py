import pandas as pd

from rbloss.assembly import eval_loss, eval_loss_dt
from rbloss.catalog import eval_ell, eval_ell_deriv
from rbloss.exceptions import InvalidParameterError
from rbloss.loss_spec import parse_loss_spec
from rbloss.management.base import RblossCommand


class Command(RblossCommand):
    help = 'Evaluate L(y, t) and dL/dt for a loss specification, or l(r) and its derivative for a catalog id'

    def add_arguments(self, parser):
        parser.add_argument('--loss', help='Loss specification')
        parser.add_argument('--y', type=float)
        parser.add_argument('--t', type=float)
        parser.add_argument('--ell', help='Catalog id with optional :k=v parameters')
        parser.add_argument('--r', type=float)
        parser.add_argument('--side', choices=['left', 'right', 'central'], default='right')
        self.add_out_argument(parser)

    def run(self, **options):
        side = options['side']
        if options['loss']:
            if options['y'] is None or options['t'] is None:
                raise InvalidParameterError('--loss needs --y and --t')
            L = parse_loss_spec(options['loss']).build()
            y, t = options['y'], options['t']
            row = {'loss': L.label, 'y': y, 't': t, 'value': eval_loss(L, y, t),
                   'derivative': eval_loss_dt(L, y, t, side=side), 'side': side}
        elif options['ell']:
            if options['r'] is None:
                raise InvalidParameterError('--ell needs --r')
            ell = parse_loss_spec(f"{options['ell']}/exp/c=0").build().ell
            r = options['r']
            row = {'ell': ell.label, 'r': r, 'value': eval_ell(ell, r),
                   'derivative': eval_ell_deriv(ell, r, side), 'side': side}
        else:
            raise InvalidParameterError('give either --loss or --ell')
        self.write_frame(pd.DataFrame([row]), options['out'])
