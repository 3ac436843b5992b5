import json

from django.core.management.base import CommandError

from rbloss.loss_spec import parse_loss_spec
from rbloss.management.base import RblossCommand
from rbloss.risk import Dataset, LinearModel, empirical_risk, regularized_risk, risk_at_zero
from rbloss.serializers import SPEC_VERSION, LinearModelSerializer


def load_model(path):
    try:
        with open(path, encoding='utf-8') as handle:
            payload = json.load(handle)
    except (OSError, ValueError) as e:
        raise CommandError(f"could not read model {path}: {str(e)}", returncode=2)
    # fit output nests the model; a bare {"w": ..., "b0": ...} is accepted too
    serializer = LinearModelSerializer(data=payload.get('model', payload))
    if not serializer.is_valid():
        raise CommandError(f"invalid model {path}: {serializer.errors}", returncode=2)
    return LinearModel(serializer.validated_data['w'], serializer.validated_data['b0'])


class Command(RblossCommand):
    help = 'Report empirical, regularized and zero-predictor risks of a model on a dataset'

    def add_arguments(self, parser):
        parser.add_argument('--loss', required=True, help='Loss specification')
        parser.add_argument('--data', required=True, help='CSV with columns x1..xd,y')
        parser.add_argument('--model', help='Model JSON as written by rbloss_fit; zero model when omitted')
        parser.add_argument('--reg', type=float, default=0.0)
        self.add_out_argument(parser)

    def run(self, **options):
        L = parse_loss_spec(options['loss']).build()
        data = Dataset.from_frame(self.read_frame(options['data']))
        zero = risk_at_zero(L, data)
        payload = {'spec_version': SPEC_VERSION, 'loss': L.label,
                   'risk_at_zero': zero.value, 'risk_at_zero_bound': zero.bound,
                   'bound_hypotheses_hold': zero.hypotheses_hold}
        if options['model']:
            model = load_model(options['model'])
            payload['empirical_risk'] = empirical_risk(L, data, model)
            payload['regularized_risk'] = regularized_risk(L, data, model, options['reg'])
        self.write_json(payload, options['out'])
