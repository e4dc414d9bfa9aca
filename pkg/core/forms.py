import math

from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from .pool import available_workers


def flag_name(field):
    return '--' + field.replace('_', '-')


# ==================== fields ====================
class CountField(forms.IntegerField):
    """An integer that may be written 10000000, 1e7 or 10**7."""

    def to_python(self, value):
        if isinstance(value, str) and '**' in value:
            base, _, exponent = value.partition('**')
            try:
                value = int(base) ** int(exponent)
            except ValueError:
                raise ValidationError(f"not an integer: {value!r}") from None
        if isinstance(value, str) and 'e' in value.lower():
            try:
                number = float(value)
            except ValueError:
                raise ValidationError(f"not an integer: {value!r}") from None
            if not math.isfinite(number) or number != int(number):
                raise ValidationError(f"not an integer: {value!r}")
            value = int(number)
        return super().to_python(value)


class CountListField(forms.Field):
    """Repeated or comma-separated integers, e.g. ``--x 1e5 --x 1e6`` or ``--d 11,13``."""

    def __init__(self, *, min_value=None, **kwargs):
        self.item_field = CountField(min_value=min_value)
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return []
        if isinstance(value, str):
            value = [value]
        items = []
        for entry in value:
            for part in str(entry).split(','):
                part = part.strip()
                if part:
                    items.append(self.item_field.clean(part))
        return items


class KMaxField(forms.IntegerField):
    def validate(self, value):
        super().validate(value)
        limit = settings.EKLAB['K_MAX_LIMIT']
        if value is not None and not 1 <= value <= limit:
            raise ValidationError(f"must be in [1, {limit}], got {value}")


# ==================== base forms ====================
class EklabForm(forms.Form):
    """Flags shared by every command. Field names are option dests."""
    threads = forms.IntegerField(min_value=1, required=False)

    def clean_threads(self):
        return self.cleaned_data.get('threads') or available_workers()

    def first_error(self):
        """One-line diagnostic naming the offending flag."""
        for field, errors in self.errors.items():
            message = errors[0]
            if field == '__all__':
                return message
            return f"{flag_name(field)}: {message}"
        return ''


class LogFloorsForm(forms.Form):
    l3_floor = forms.FloatField(min_value=0, required=False)
    l4_floor = forms.FloatField(min_value=2, required=False)


class WindowForm(LogFloorsForm):
    y = forms.FloatField(min_value=2, required=False)
    z = forms.FloatField(min_value=2, required=False)

    def clean(self):
        cleaned = super().clean()
        y, z = cleaned.get('y'), cleaned.get('z')
        if y is not None and z is not None and z <= y:
            self.add_error('z', f"must exceed --y ({y:g})")
        return cleaned


# ==================== report bundle ====================
PRESET_NAMES = ('small', 'medium', 'large')


class ReportForm(EklabForm):
    preset = forms.ChoiceField(choices=[(name, name) for name in PRESET_NAMES], required=False)
    x = CountField(min_value=4, required=False)
    fn = forms.MultipleChoiceField(required=False)
    bins = forms.IntegerField(min_value=1, required=False)
    kmax = KMaxField(required=False)
    k = forms.IntegerField(min_value=1, required=False)
    out = forms.CharField()

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        functions = settings.EKLAB['REPORT_FUNCTIONS']
        self.fields['fn'].choices = [(name, name) for name in functions]

    def clean_fn(self):
        return self.cleaned_data.get('fn') or list(settings.EKLAB['REPORT_FUNCTIONS'])

    def clean(self):
        cleaned = super().clean()
        preset, x = cleaned.get('preset'), cleaned.get('x')
        if preset and x:
            self.add_error('x', "use either --preset or --x, not both")
        elif preset:
            cleaned['x'] = settings.EKLAB['REPORT_PRESETS'][PRESET_NAMES.index(preset)]
        elif not x and 'x' not in self.errors:
            cleaned['x'] = settings.EKLAB['REPORT_PRESETS'][0]
        return cleaned
