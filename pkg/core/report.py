"""The report bundle: histogram, moments and hypothesis sums for several f at one x."""
import logging
from pathlib import Path

from django.template.loader import render_to_string

from arith.functions import FnSpec
from census.hypotheses import run_hypotheses
from sample.config import build_config
from sample.runner import run_sample
from stats.histogram import HEADER

from .exceptions import EklabError
from .output import write_csv, write_json, write_text

logger = logging.getLogger(__name__)


class StageFailed(EklabError):
    def __init__(self, stage, fn, error):
        super().__init__(f"stage {stage} failed for --fn {fn}: {error}")
        self.exit_code = error.exit_code


def render_gnuplot(title, data, image, total, bins, x):
    return render_to_string('core/histogram.gp', {
        'title': title,
        'data': data,
        'image': image,
        'total': total,
        'last_bin': bins - 1,
        'x': x,
    })


def render_summary(x, rows):
    return render_to_string('core/summary.txt', {'x': x, 'rows': rows})


def _slug(label):
    return label.replace('+', 'plus').replace('-', 'minus')


def build_bundle(x, functions, out_dir, manifest, workers=1, bins=None, k_max=4, k=None):
    out_dir = Path(out_dir)
    index = {'x': x, 'functions': {}}

    for fn in functions:
        spec = FnSpec.of(fn)
        slug = _slug(spec.label)
        stage = 'ekhist'
        try:
            cfg = build_config(x, spec)
            summary = run_sample(cfg, workers=workers).summary
            hist = summary.score_histogram(cfg, bins=bins)
            hist_path = write_csv(out_dir / f'{slug}.hist.csv', HEADER, hist.rows())
            report = summary.as_report(cfg, k_max=k_max)
            summary_path = write_json(out_dir / f'{slug}.summary.json', report)

            stage = 'moments'
            moments_path = write_json(out_dir / f'{slug}.moments.json', {
                'window': cfg.window.as_dict(),
                'moments': summary.moment_report(cfg.window, k_max).as_dict(),
            })

            stage = 'hypotheses'
            hypotheses = run_hypotheses(spec, [x], k)
            hypotheses_path = write_json(out_dir / f'{slug}.hypotheses.json', hypotheses)

            stage = 'plot'
            script = render_gnuplot(
                title=f"omega({spec.label}(n)), n <= {x}",
                data=hist_path.name,
                image=f'{slug}.png',
                total=hist.total,
                bins=len(hist.counts),
                x=x,
            )
            plot_path = write_text(out_dir / f'{slug}.gp', script)
        except EklabError as exc:
            raise StageFailed(stage, spec.label, exc) from exc

        for path in (hist_path, summary_path, moments_path, hypotheses_path, plot_path):
            manifest.record(path)
        index['functions'][spec.label] = {
            'omega_count': report['omega_count'],
            'ks_distance': report['ks_distance'],
            'ks_window': report['ks_window'],
            'small_prime_sum': hypotheses['results'][0]['small_prime_sum'],
            'gcd_sum': hypotheses['results'][0]['gcd_sum'],
        }
        logger.info("report stage done for %s", spec.label)

    rows = [{'fn': label, **row} for label, row in index['functions'].items()]
    manifest.record(write_text(out_dir / 'summary.txt', render_summary(x, rows)))
    manifest.record(write_json(out_dir / 'index.json', index))
    return index
