import pandas as pd

from rbloss.catalog import catalog_ids, default_params, get_entry
from rbloss.management.base import RblossCommand


class Command(RblossCommand):
    help = 'List the catalog of representing functions with their declared properties'

    def add_arguments(self, parser):
        parser.add_argument('--convex', action='store_true', help='Only entries declared convex')
        parser.add_argument('--ratio-symmetric', action='store_true', help='Only ratio-symmetric entries')
        parser.add_argument('--differentiable', action='store_true', help='Only differentiable entries')
        self.add_out_argument(parser)

    def run(self, **options):
        rows = []
        for loss_id in catalog_ids():
            entry = get_entry(loss_id)
            flags = entry.declared.as_dict()
            if options['convex'] and not flags['convex']:
                continue
            if options['ratio_symmetric'] and not flags['ratio_symmetric']:
                continue
            if options['differentiable'] and not flags['differentiable']:
                continue
            defaults = default_params(loss_id)
            row = {
                'number': entry.number,
                'id': entry.id,
                'params': ';'.join(f"{name}={value:g}" for name, value in defaults.items()),
            }
            row.update({name: 'y' if flag else '-' for name, flag in flags.items()})
            rows.append(row)
        columns = ['number', 'id', 'params', 'ratio_symmetric', 'convex', 'continuous',
                   'locally_lipschitz', 'globally_lipschitz', 'differentiable']
        self.write_frame(pd.DataFrame(rows, columns=columns), options['out'])
