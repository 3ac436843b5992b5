import pandas as pd
from django.core.management.base import CommandError

from rbloss.builder import aux_from_preset, convexity_certificate, symmetrize, working_grid
from rbloss.catalog import eval_ell
from rbloss.exceptions import InvalidParameterError
from rbloss.management.base import RblossCommand


class Command(RblossCommand):
    help = 'Build a convex ratio-based loss from an auxiliary function preset and emit its certificate'

    def add_arguments(self, parser):
        parser.add_argument('--aux', required=True, help="Preset: power:alpha=<a>, log1p, sqrt-asinh or g:<name>")
        parser.add_argument('--symmetrize', action='store_true', help='Include the symmetrized l(r) column')
        parser.add_argument('--certify', action='store_true', help='Exit 1 when the certificate is negative')
        parser.add_argument('--points', type=int, help='Working grid size')
        self.add_out_argument(parser)

    def run(self, **options):
        aux = aux_from_preset(options['aux'])
        if options['points'] is not None and options['points'] < 2:
            raise InvalidParameterError('--points must be at least 2')
        grid = working_grid(options['points'])
        certificate = convexity_certificate(aux, grid)
        frame = pd.DataFrame({'r': grid, 'certificate': certificate})
        ell = None
        if options['symmetrize'] or options['certify']:
            ell = symmetrize(aux, grid)
        if options['symmetrize']:
            frame['ell'] = eval_ell(ell, grid)
        self.write_frame(frame, options['out'])
        if options['certify'] and not ell.certified:
            raise CommandError(f"{aux.name}: certificate is negative at r={grid[certificate.argmin()]:.6g}",
                               returncode=1)
