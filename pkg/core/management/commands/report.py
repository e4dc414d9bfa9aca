from pathlib import Path

from core.commands import EklabCommand
from core.forms import PRESET_NAMES, ReportForm
from core.report import build_bundle


class Command(EklabCommand):
    help = "Write a report bundle (CSV, JSON and gnuplot scripts) for the standard functions"
    form_class = ReportForm
    default_out = 'report'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--preset', choices=PRESET_NAMES, help="x = 1e5, 1e6 or 1e7")
        parser.add_argument('--x')
        parser.add_argument('--fn', action='append', help="repeatable; default s, beta, cototient, n+tau")
        parser.add_argument('--bins')
        parser.add_argument('--kmax', default='4')
        parser.add_argument('--k', help="largest number of window primes in d (default 2)")

    def manifest_path(self, params):
        return Path(params['out']) / 'manifest.json'

    def run(self, params, manifest):
        return build_bundle(
            params['x'],
            params['fn'],
            params['out'],
            manifest,
            workers=params['threads'],
            bins=params.get('bins'),
            k_max=params['kmax'],
            k=params.get('k'),
        )
