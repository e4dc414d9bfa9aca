from django import forms

from core.forms import CountField, EklabForm, KMaxField, WindowForm
from sample.forms import SampleForm


class MomentsForm(SampleForm):
    kmax = KMaxField()
    out = forms.CharField()


class ModelSampleForm(EklabForm, WindowForm):
    x = CountField(min_value=4)
    trials = CountField(min_value=1)
    seed = forms.IntegerField(min_value=0)
    bins = forms.IntegerField(min_value=1, required=False)
    kmax = KMaxField()
    out = forms.CharField()
