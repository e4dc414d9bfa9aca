from census.dcount import dcount_many, dcount_summary, enumerate_d
from census.forms import DCountForm
from core.commands import EklabCommand
from core.output import write_json
from sample.forms import add_sample_arguments


class Command(EklabCommand):
    help = "Count n in the sample space with d | f(n) directly and through n = mP, and compare"
    form_class = DCountForm
    default_out = 'dcount.json'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_sample_arguments(parser)
        parser.add_argument('--d', action='append', help="comma-separated moduli, repeatable")
        parser.add_argument('--auto', help="'k=K cap=C': every d from at most K window primes with d <= C")

    def run(self, params, manifest):
        cfg = self.form.config()
        manifest.parameters.update(cfg.as_dict())

        partial = False
        ds = params['d']
        auto = params.get('auto')
        if auto:
            ds, partial = enumerate_d(cfg.window, auto['k'], cap=auto['cap'])

        reports = dcount_many(ds, cfg, workers=params['threads'])
        payload = {
            'fn': cfg.spec.label,
            'x': cfg.x,
            'partial': partial,
            'reports': [report.as_dict() for report in reports],
            'summary': dcount_summary(reports, cfg),
        }
        manifest.record(write_json(params['out'], payload))
        if len(reports) > 20:
            return {'x': cfg.x, 'moduli': len(reports), 'partial': partial, 'summary': payload['summary']}
        return payload
