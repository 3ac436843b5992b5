import json
import logging

import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from rbloss.conf import get_setting
from rbloss.exceptions import RatioLossError

logger = logging.getLogger(__name__)


class RblossCommand(BaseCommand):
    """
    Base for the rbloss_* commands: library errors become exit status 2 and
    data goes to --out, or to stdout for '-'.
    """

    def add_out_argument(self, parser, default='-', help_text='Output file, - for standard output'):
        parser.add_argument('--out', default=default, help=help_text)

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except RatioLossError as e:
            logger.error(f"Error in {self.__class__.__module__.rsplit('.', 1)[-1]}: {str(e)}")
            raise CommandError(str(e), returncode=2)

    def run(self, **options):
        raise NotImplementedError('subclasses of RblossCommand must provide a run() method')

    def write_text(self, text: str, out: str):
        if out == '-':
            self.stdout.write(text, ending='')
            return
        with open(out, 'w', newline='', encoding='utf-8') as handle:
            handle.write(text)
        self.stdout.write(self.style.SUCCESS(f"Wrote {out}"))

    def write_frame(self, frame: pd.DataFrame, out: str):
        digits = get_setting('CSV_DIGITS')
        self.write_text(frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator='\n'), out)

    def write_json(self, data, out: str):
        self.write_text(json.dumps(data, indent=2) + '\n', out)

    def read_frame(self, path: str) -> pd.DataFrame:
        try:
            return pd.read_csv(path)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise CommandError(f"could not read {path}: {str(e)}", returncode=2)
