import json
import re

from django import forms

from .reflection_group import SUPPORTED_RANGES

_GROUP_PATTERNS = [
    (re.compile(r'^(cyclic|dihedral|symmetric):(\d+)(:perm)?$'), None),
    (re.compile(r'^Z/(\d+)$'), 'cyclic'),
    (re.compile(r'^I2\((\d+)\)$'), 'dihedral'),
    (re.compile(r'^S(\d+)(\(perm\))?$'), 'symmetric'),
]


def parse_group(text):
    """'cyclic:3', 'Z/3', 'I2(4)', 'S3' or 'S3(perm)' -> {"family", "param", "reflection_rep"}."""
    text = text.strip().replace(' ', '')
    for pattern, family in _GROUP_PATTERNS:
        match = pattern.match(text)
        if not match:
            continue
        if family is None:
            family, param, perm = match.group(1), match.group(2), match.group(3)
        else:
            param = match.group(1)
            perm = match.group(2) if family == 'symmetric' else None
        return {'family': family, 'param': int(param), 'reflection_rep': not perm}
    raise forms.ValidationError(f"unrecognised group {text!r}; use e.g. Z/2, I2(4), S3 or cyclic:3")


def parse_param(value):
    """A scalar string, or a JSON list of {"orbit": ..., "k": [...]} entries."""
    if isinstance(value, (list, tuple)):
        return list(value)
    text = str(value).strip()
    if text.startswith('['):
        try:
            return json.loads(text)
        except ValueError as exc:
            raise forms.ValidationError(f"invalid parameter list: {exc}")
    if not text:
        raise forms.ValidationError("empty parameter")
    return text


class JobConfigForm(forms.Form):
    FORMAT_CHOICES = [
        ('json', 'JSON'),
        ('csv', 'CSV'),
        ('xlsx', 'Excel workbook'),
    ]

    group = forms.CharField(max_length=40)
    param = forms.CharField(required=False, initial='0')
    N = forms.IntegerField(required=False, min_value=0, max_value=40)
    tol = forms.FloatField(required=False, min_value=1e-30, max_value=1e-2)
    precision = forms.IntegerField(required=False, min_value=24, max_value=1024)
    format = forms.ChoiceField(choices=FORMAT_CHOICES, required=False, initial='json')
    out = forms.CharField(required=False)
    allow_uncertified = forms.BooleanField(required=False)
    irreps = forms.CharField(required=False)
    words = forms.CharField(required=False)
    specht = forms.BooleanField(required=False)
    workers = forms.IntegerField(required=False, min_value=1, max_value=64)

    def clean_group(self):
        spec = parse_group(self.cleaned_data['group'])
        low, high = SUPPORTED_RANGES[spec['family']]
        if not low <= spec['param'] <= high:
            raise forms.ValidationError(f"{spec['family']} groups are supported for {low}..{high}")
        return spec

    def clean_param(self):
        value = self.data.get('param')
        if value in (None, ''):
            return '0'
        return parse_param(value)

    def clean_irreps(self):
        text = self.cleaned_data.get('irreps') or ''
        return [label.strip() for label in text.split(';') if label.strip()] or None

    def clean_words(self):
        text = self.cleaned_data.get('words') or ''
        return [word.strip() for word in text.split(',') if word.strip()] or None

    def clean(self):
        cleaned_data = super().clean()
        fmt = cleaned_data.get('format') or 'json'
        if fmt == 'xlsx' and not cleaned_data.get('out'):
            raise forms.ValidationError('xlsx output needs --out.')
        cleaned_data['format'] = fmt
        return cleaned_data
