import json

from django import forms
from django.utils.translation import gettext_lazy as _

from .constants import COMMANDS, COMMAND_CLASSIFY, COMMAND_COUNT_SIMPLES
from .exceptions import FieldBoundError, ParameterError
from .finite_field import field_from_order
from .laurent import parse_rational


class RunConfigForm(forms.Form):
    command = forms.ChoiceField(choices=[(c, c) for c in COMMANDS])
    root_datum = forms.CharField(required=False)
    character = forms.CharField(required=False)
    params = forms.CharField(required=False)
    assignments = forms.CharField(required=False)
    field_order = forms.IntegerField(required=False, min_value=2)
    trials = forms.IntegerField(required=False, min_value=1)
    seed = forms.IntegerField(required=False)
    representative = forms.CharField(required=False)
    exhaustive = forms.BooleanField(required=False)

    def clean_params(self):
        params = self.cleaned_data["params"]
        if not params:
            return None
        try:
            labels = json.loads(params)
        except json.JSONDecodeError:
            raise forms.ValidationError(_("Parameter assignment must be a JSON object."))
        if not isinstance(labels, dict):
            raise forms.ValidationError(_("Parameter assignment must be a JSON object."))
        return labels

    def clean_assignments(self):
        values = {}
        for item in filter(None, self.cleaned_data["assignments"].split(",")):
            name, sep, value = item.partition("=")
            if not sep or not name.strip():
                raise forms.ValidationError(
                    _("Expected name=rational, got %(item)s"), params={"item": item}
                )
            try:
                values[name.strip()] = parse_rational(value.strip())
            except ParameterError as e:
                raise forms.ValidationError(str(e))
        return values

    def clean_field_order(self):
        order = self.cleaned_data["field_order"]
        if order is None:
            return None
        try:
            field_from_order(order)
        except FieldBoundError as e:
            raise forms.ValidationError(str(e))
        return order

    def clean(self):
        cleaned_data = super().clean()
        command = cleaned_data.get("command")
        if command in (COMMAND_CLASSIFY, COMMAND_COUNT_SIMPLES) and not cleaned_data.get(
            "character"
        ):
            self.add_error("character", _("This command needs a central character."))
        order = cleaned_data.get("field_order")
        cleaned_data["field_degree"] = field_from_order(order).degree if order else None
        return cleaned_data
