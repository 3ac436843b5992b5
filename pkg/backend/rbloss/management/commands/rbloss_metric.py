from rbloss.exceptions import InvalidParameterError
from rbloss.management.base import RblossCommand
from rbloss.risk import METRIC_KINDS, Dataset, metric, metric_all
from rbloss.serializers import SPEC_VERSION


class Command(RblossCommand):
    help = 'Relative-error metrics of predictions against a dataset'

    def add_arguments(self, parser):
        parser.add_argument('--kind', choices=list(METRIC_KINDS) + ['all'], default='all')
        parser.add_argument('--data', required=True, help='CSV with a y column')
        parser.add_argument('--pred', required=True, help='CSV with a prediction column (y_hat, or the first column)')
        self.add_out_argument(parser)

    def run(self, **options):
        data = Dataset.from_frame(self.read_frame(options['data']))
        frame = self.read_frame(options['pred'])
        if frame.shape[1] == 0:
            raise InvalidParameterError(f"{options['pred']} has no columns")
        column = 'y_hat' if 'y_hat' in frame.columns else frame.columns[0]
        predictions = frame[column].to_numpy(dtype=float)
        if options['kind'] == 'all':
            values = metric_all(data, predictions)
        else:
            values = {options['kind']: metric(options['kind'], data, predictions)}
        self.write_json({'spec_version': SPEC_VERSION, 'n': data.n,
                         'metrics': {k: float(v) for k, v in values.items()}}, options['out'])
