from core.commands import EklabCommand
from core.output import write_csv

from arith.forms import SieveForm
from arith.sieve import sieve_range

HEADER = ('n', 'sigma', 'phi', 'tau', 'omega', 'lpf', 'lpf_sq_divides')


def sieve_rows(lo, hi):
    for block in sieve_range(lo, hi):
        columns = zip(
            block.n.tolist(), block.sigma.tolist(), block.phi.tolist(), block.tau.tolist(),
            block.omega_small.tolist(), block.lpf.tolist(), block.lpf_sq_divides.astype(int).tolist(),
        )
        yield from columns


class Command(EklabCommand):
    help = "Dump sigma, phi, tau, omega and P+ for lo <= n < hi as CSV"
    form_class = SieveForm
    default_out = 'sieve.csv'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--lo', default='2')
        parser.add_argument('--hi', required=True)

    def run(self, params, manifest):
        path = write_csv(params['out'], HEADER, sieve_rows(params['lo'], params['hi']))
        manifest.record(path)
        return None
