from rbloss.loss_spec import parse_loss_spec
from rbloss.management.base import RblossCommand
from rbloss.risk import Dataset, fit
from rbloss.serializers import FitResultSerializer


class Command(RblossCommand):
    help = 'Fit a linear-in-link model by regularized empirical risk minimization'

    def add_arguments(self, parser):
        parser.add_argument('--loss', required=True, help='Loss specification')
        parser.add_argument('--data', required=True, help='CSV with columns x1..xd,y')
        parser.add_argument('--reg', type=float, default=0.0, help='Weight of the ||w||^2 penalty')
        parser.add_argument('--tol', type=float)
        parser.add_argument('--max-iter', type=int)
        self.add_out_argument(parser)

    def run(self, **options):
        spec = parse_loss_spec(options['loss'])
        L = spec.build()
        data = Dataset.from_frame(self.read_frame(options['data']))
        result = fit(L, data, options['reg'], options['tol'], options['max_iter'])
        payload = FitResultSerializer(result, context={'loss': str(spec)}).data
        self.write_json(payload, options['out'])
        if options['out'] != '-':
            status = 'converged' if result.converged else 'stopped'
            self.stdout.write(self.style.SUCCESS(
                f"{status} after {result.iterations} iterations, risk {result.final_risk:.6g}"))
