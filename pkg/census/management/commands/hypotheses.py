from census.forms import HypothesesForm
from census.hypotheses import run_hypotheses
from core.commands import EklabCommand
from core.output import write_json


class Command(EklabCommand):
    help = "The small-prime sum and the gcd sum over d-compatible, non-ideal m"
    form_class = HypothesesForm
    default_out = 'hypotheses.json'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--fn', default='s')
        parser.add_argument('--shift')
        parser.add_argument('--x', action='append', required=True, help="repeatable, or comma-separated")
        parser.add_argument('--k', help="largest number of window primes in d (default 2)")
        parser.add_argument('--cap', help="largest d in the d-list")
        parser.add_argument('--y')
        parser.add_argument('--z')
        parser.add_argument('--l3-floor')
        parser.add_argument('--l4-floor')

    def run(self, params, manifest):
        payload = run_hypotheses(
            params['spec'], params['x'], params.get('k'), cap=params.get('cap'),
            y=params.get('y'), z=params.get('z'),
            l3_floor=params.get('l3_floor'), l4_floor=params.get('l4_floor'),
        )
        manifest.record(write_json(params['out'], payload))
        return payload
