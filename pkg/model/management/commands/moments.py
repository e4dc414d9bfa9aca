from core.commands import EklabCommand
from core.output import write_json
from model.forms import MomentsForm
from sample.forms import add_sample_arguments
from sample.runner import run_sample


class Command(EklabCommand):
    help = "Standardized moments of the window count: empirical, Bernoulli model and normal"
    form_class = MomentsForm
    default_out = 'moments.json'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_sample_arguments(parser)
        parser.add_argument('--kmax', default='4')

    def run(self, params, manifest):
        cfg = self.form.config()
        manifest.parameters.update(cfg.as_dict())

        summary = run_sample(cfg, workers=params['threads']).summary
        payload = {
            'window': cfg.window.as_dict(),
            'moments': summary.moment_report(cfg.window, params['kmax']).as_dict(),
            'omega_count': summary.omega_count,
        }
        manifest.record(write_json(params['out'], payload))
        return payload
