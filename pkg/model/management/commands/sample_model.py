import numpy as np

from core.commands import EklabCommand
from core.output import sibling, write_csv, write_json
from model.forms import ModelSampleForm
from model.moments import model_moments, normal_moments
from model.simulate import sample_model
from model.window import build_window
from stats.ecdf import Ecdf, ks_distance
from stats.histogram import HEADER, histogram


def simulated_moments(scores, k_max):
    return [float(np.mean(scores ** j)) for j in range(k_max + 1)]


class Command(EklabCommand):
    help = "Monte-Carlo draws of the independent Bernoulli(1/p) model over the prime window"
    form_class = ModelSampleForm
    default_out = 'sample_model.csv'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--x', required=True)
        parser.add_argument('--y')
        parser.add_argument('--z')
        parser.add_argument('--l3-floor')
        parser.add_argument('--trials', default='100000')
        parser.add_argument('--seed', default='0')
        parser.add_argument('--bins')
        parser.add_argument('--kmax', default='4')

    def run(self, params, manifest):
        window = build_window(params['x'], y=params.get('y'), z=params.get('z'), l3_floor=params.get('l3_floor'))
        manifest.parameters['window'] = window.as_dict()

        draws = sample_model(window, params['trials'], params['seed'])
        hist = histogram(draws.scores, bins=params.get('bins'))
        manifest.record(write_csv(params['out'], HEADER, hist.rows()))

        k_max = params['kmax']
        payload = {
            'window': window.as_dict(),
            'trials': params['trials'],
            'seed': params['seed'],
            'mean_count': draws.mean,
            'ks_distance': ks_distance(Ecdf.from_scores(draws.scores)),
            'moments': {
                'simulated': simulated_moments(draws.scores, k_max)[1:],
                'model': list(model_moments(window, k_max))[1:],
                'normal': list(normal_moments(k_max))[1:],
            },
        }
        manifest.record(write_json(sibling(params['out'], '.json'), payload))
        return payload
