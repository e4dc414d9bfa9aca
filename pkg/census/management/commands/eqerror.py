from census.forms import ProgressionForm
from census.progression import progression_error
from core.commands import EklabCommand
from core.output import write_json


class Command(EklabCommand):
    help = "E(T; q), the largest deviation of pi(t; q, a) from pi(t)/phi(q) for t <= T"
    form_class = ProgressionForm
    default_out = 'eqerror.json'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--q', required=True)
        parser.add_argument('--T', required=True)

    def run(self, params, manifest):
        payload = {
            'q': params['q'],
            'T': params['T'],
            'error': progression_error(params['T'], params['q']),
        }
        manifest.record(write_json(params['out'], payload))
        return payload
