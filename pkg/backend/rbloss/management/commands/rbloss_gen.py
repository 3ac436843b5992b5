import numpy as np

from rbloss.exceptions import InvalidParameterError
from rbloss.links import LINK_ALIASES, LINK_KINDS, make_link
from rbloss.management.base import RblossCommand
from rbloss.risk import LinearModel, generate_multiplicative


def parse_vector(text, d):
    if text is None:
        return np.ones(d)
    try:
        values = [float(part) for part in text.split(',')] if text else []
    except ValueError:
        raise InvalidParameterError(f"--w must be comma separated numbers, got {text!r}")
    if len(values) != d:
        raise InvalidParameterError(f"--w has {len(values)} entries, expected d={d}")
    return np.asarray(values)


class Command(RblossCommand):
    help = 'Generate a dataset with multiplicative log-normal noise around a linear-in-link model'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--d', type=int, default=1)
        parser.add_argument('--sigma', type=float, default=0.0, help='Standard deviation of log noise')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--link', default='exp', choices=list(LINK_KINDS) + list(LINK_ALIASES))
        parser.add_argument('--a', type=float, default=0.0)
        parser.add_argument('--b', type=float)
        parser.add_argument('--w', help='True weights, comma separated (default all ones)')
        parser.add_argument('--b0', type=float, default=0.0, help='True intercept')
        self.add_out_argument(parser)

    def run(self, **options):
        link = make_link(options['link'], options['a'], options['b'])
        model = LinearModel(parse_vector(options['w'], options['d']), options['b0'])
        data = generate_multiplicative(options['n'], options['d'], model, options['sigma'], options['seed'], link)
        self.write_frame(data.to_frame(), options['out'])
