from django import forms

from arith.forms import FunctionForm
from core.forms import CountField, EklabForm, KMaxField, WindowForm

from .config import Population, build_config


# ==================== sample space ====================
class SampleForm(EklabForm, FunctionForm, WindowForm):
    x = CountField(min_value=4)
    population = forms.ChoiceField(choices=Population.choices, required=False)

    def config(self):
        """The SampleConfig for the cleaned flags. May raise ParameterError."""
        data = self.cleaned_data
        return build_config(
            data['x'],
            data['spec'],
            population=data.get('population') or Population.OMEGA,
            y=data.get('y'),
            z=data.get('z'),
            l3_floor=data.get('l3_floor'),
            l4_floor=data.get('l4_floor'),
        )


# ==================== ekhist ====================
class HistogramForm(SampleForm):
    bins = forms.IntegerField(min_value=1, required=False)
    kmax = KMaxField(required=False)
    multiplicity = forms.BooleanField(required=False)
    dump = forms.CharField(required=False)
    out = forms.CharField()


def add_sample_arguments(parser):
    """Flags of every command that builds a SampleConfig."""
    parser.add_argument('--x', required=True, help="upper end of 1 < n <= x (10000000, 1e7 or 10**7)")
    parser.add_argument('--fn', default='s', help="s, beta, A, cototient, n+tau, n-tau, n+omega, n-omega, phi+a")
    parser.add_argument('--shift', help="the a of phi+a")
    parser.add_argument('--y')
    parser.add_argument('--z')
    parser.add_argument('--l3-floor')
    parser.add_argument('--l4-floor')
