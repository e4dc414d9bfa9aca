from core.commands import EklabCommand
from core.output import sibling, write_csv, write_json
from core.conf import eklab_setting
from sample.config import Population
from sample.forms import HistogramForm, add_sample_arguments
from sample.runner import iter_records, run_sample
from sample.summary import SampleSummary
from stats.histogram import HEADER

DUMP_HEADER = (
    'n', 'in_omega', 'm', 'P', 'f', 'omega_f', 'omega_prime_f',
    'x_window', 'x_small', 'x_large', 'score', 'degenerate',
)


def dump_rows(records, summary):
    """CSV rows for each record as it arrives; every record is also added to ``summary``."""
    for r in records:
        summary.add(r)
        score = '' if r.score is None else repr(r.score)
        yield (
            r.n, int(r.in_omega), r.m, r.P, r.f_value, r.omega_f, r.omega_prime_f,
            r.x_window, r.x_small, r.x_large, score, int(r.degenerate),
        )


class Command(EklabCommand):
    help = "Histogram of (omega(f(n)) - log2 x)/sqrt(log2 x) against the standard normal"
    form_class = HistogramForm
    default_out = 'ekhist.csv'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_sample_arguments(parser)
        parser.add_argument('--population', default=Population.OMEGA, choices=Population.values)
        parser.add_argument('--bins')
        parser.add_argument('--kmax', default='4')
        parser.add_argument('--multiplicity', action='store_true', help="score omega'(f(n)) instead of omega(f(n))")
        parser.add_argument('--dump', help="also write one CSV row per n")

    def run(self, params, manifest):
        cfg = self.form.config()
        manifest.parameters.update(cfg.as_dict())

        dump = params.get('dump')
        if dump:
            # one pass in this process, rows go to disk as they are made
            summary = SampleSummary(population=cfg.population)
            manifest.record(write_csv(dump, DUMP_HEADER, dump_rows(iter_records(cfg), summary)))
        else:
            summary = run_sample(cfg, workers=params['threads']).summary

        bins = eklab_setting('HIST_BINS', params.get('bins'))
        hist = summary.score_histogram(cfg, bins=bins, multiplicity=params['multiplicity'])
        manifest.record(write_csv(params['out'], HEADER, hist.rows()))

        report = summary.as_report(cfg, k_max=params['kmax'], multiplicity=params['multiplicity'])
        manifest.record(write_json(sibling(params['out'], '.json'), report))

        return {key: report[key] for key in ('omega_count', 'mu', 'sigma2', 'ks_distance', 'ks_window')}
