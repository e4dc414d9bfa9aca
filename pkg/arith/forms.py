from django import forms

from core.exceptions import ParameterError
from core.forms import CountField, EklabForm

from .functions import Family, FnSpec
from .sieve import MAX_HI


# ==================== f under study ====================
class FunctionForm(forms.Form):
    fn = forms.ChoiceField(choices=Family.choices)
    shift = forms.IntegerField(required=False)

    def clean(self):
        cleaned = super().clean()
        family = cleaned.get('fn')
        if family:
            try:
                cleaned['spec'] = FnSpec.of(family, cleaned.get('shift') or 0)
            except ParameterError as exc:
                self.add_error('shift', exc.args[0])
        return cleaned


# ==================== sieve dump ====================
class SieveForm(EklabForm):
    lo = CountField(min_value=2)
    hi = CountField(max_value=MAX_HI)
    out = forms.CharField()

    def clean(self):
        cleaned = super().clean()
        lo, hi = cleaned.get('lo'), cleaned.get('hi')
        if lo is not None and hi is not None and hi <= lo:
            self.add_error('hi', f"must exceed --lo ({lo})")
        return cleaned
