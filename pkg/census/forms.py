import re

from django import forms

from arith.forms import FunctionForm
from core.forms import CountField, CountListField, EklabForm, WindowForm
from sample.forms import SampleForm

AUTO_PATTERN = re.compile(r'^\s*k\s*=\s*(?P<k>\d+)\s*(?:[ ,]\s*cap\s*=\s*(?P<cap>[0-9e*.]+)\s*)?$', re.IGNORECASE)


# ==================== dcount ====================
class DCountForm(SampleForm):
    d = CountListField(min_value=2, required=False)
    auto = forms.CharField(required=False)
    out = forms.CharField()

    def clean_auto(self):
        text = self.cleaned_data.get('auto')
        if not text:
            return None
        match = AUTO_PATTERN.match(text)
        if not match:
            raise forms.ValidationError("expected 'k=K cap=C', e.g. 'k=2 cap=1000000'")
        k = int(match['k'])
        if k < 1:
            raise forms.ValidationError("k must be at least 1")
        cap = CountField(min_value=2, required=False).clean(match['cap'] or None)
        return {'k': k, 'cap': cap}

    def clean(self):
        cleaned = super().clean()
        if not cleaned.get('d') and not cleaned.get('auto') and 'd' not in self.errors and 'auto' not in self.errors:
            self.add_error('d', "pass --d or --auto")
        elif cleaned.get('d') and cleaned.get('auto'):
            self.add_error('auto', "use either --d or --auto, not both")
        return cleaned


# ==================== eqerror ====================
class ProgressionForm(EklabForm):
    q = CountField(min_value=2)
    T = CountField(min_value=2)
    out = forms.CharField()


# ==================== hypotheses ====================
class HypothesesForm(EklabForm, FunctionForm, WindowForm):
    x = CountListField(min_value=4)
    k = forms.IntegerField(min_value=1, required=False)
    cap = CountField(min_value=2, required=False)
    out = forms.CharField()
