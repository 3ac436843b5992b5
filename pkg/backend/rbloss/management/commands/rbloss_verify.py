import logging

import pandas as pd
from django.core.management.base import CommandError

from rbloss.exceptions import InvalidParameterError
from rbloss.loss_spec import parse_loss_spec
from rbloss.management.base import RblossCommand
from rbloss.serializers import SPEC_VERSION, ReportEnvelopeSerializer
from rbloss.verifier import count_mismatches, documented_deviations, table3_expectation, verify_loss, \
    verify_table2, verify_table3

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['subject', 'property', 'expected', 'verdict', 'witness_r_or_t', 'witness_value', 'grid_id']


def report_rows(reports):
    rows = []
    for report in reports:
        for verdict in report.verdicts.values():
            expected = '' if verdict.expected is None else ('holds' if verdict.expected else 'fails')
            rows.append({
                'subject': report.subject,
                'property': verdict.property,
                'expected': expected,
                'verdict': verdict.verdict,
                'witness_r_or_t': verdict.witness,
                'witness_value': verdict.witness_value,
                'grid_id': verdict.grid_id,
            })
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


class Command(RblossCommand):
    help = 'Re-derive property flags numerically and compare them with the published tables'

    def add_arguments(self, parser):
        parser.add_argument('--table2', action='store_true', help='Representing functions, all catalog entries')
        parser.add_argument('--table3', action='store_true', help='Assembled losses, exp and logistic links')
        parser.add_argument('--loss', action='append', default=[], help='Loss specification (repeatable)')
        parser.add_argument('--workers', type=int, help='Worker threads, defaults to RBLOSS WORKERS')
        parser.add_argument('--format', choices=['csv', 'json'], help='Defaults to json for *.json, else csv')
        self.add_out_argument(parser)

    def run(self, **options):
        if not (options['table2'] or options['table3'] or options['loss']):
            raise InvalidParameterError('nothing to verify: give --table2, --table3 or --loss')
        reports = []
        if options['table2']:
            reports += verify_table2(options['workers'])
        if options['table3']:
            reports += verify_table3(options['workers'])
        for text in options['loss']:
            L = parse_loss_spec(text).build()
            reports.append(verify_loss(L, table3_expectation(L)))

        out = options['out']
        fmt = options['format'] or ('json' if out.endswith('.json') else 'csv')
        if fmt == 'json':
            envelope = {
                'spec_version': SPEC_VERSION,
                'kind': 'property-report',
                'mismatch_count': count_mismatches(reports),
                'reports': reports,
                'deviations': [list(item) for item in documented_deviations(reports)],
            }
            self.write_json(ReportEnvelopeSerializer(envelope).data, out)
        else:
            self.write_frame(report_rows(reports), out)

        mismatches = count_mismatches(reports)
        if mismatches:
            for report in reports:
                for verdict in report.mismatches:
                    logger.warning(f"{report.subject} {verdict.property}: expected "
                                   f"{verdict.expected}, got {verdict.verdict} at {verdict.witness}")
            raise CommandError(f"{mismatches} verdict(s) disagree with the expected flags", returncode=1)
        if out != '-':
            self.stdout.write(self.style.SUCCESS(f"All {len(reports)} reports match"))
