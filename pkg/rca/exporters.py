import csv
import io
import json

from openpyxl import Workbook
from openpyxl.styles import Font

CONTENT_TYPES = {
    'json': 'application/json',
    'csv': 'text/csv; charset=utf-8',
    'xlsx': 'application/vnd.openxmlformats-officedocument.spreadsheetml.sheet',
}


def to_json(result):
    # Field order is fixed by the jobs, so identical configs give identical bytes
    return (json.dumps(result, indent=2, ensure_ascii=False) + '\n').encode('utf-8')


def _describe_rows(result):
    header = ['irrep', 'dimension'] + [f"{c['representative']} ({c['size']})" for c in result['classes']]
    rows = [[E['label'], E['dimension']] + row
            for E, row in zip(result['irreps'], result['character_table'])]
    return header, rows


def _c_function_rows(result):
    return ['irrep', 'c'], [[label, c] for label, c in result['c'].items()]


def _blocks_rows(result):
    rows = []
    for number, block in enumerate(result['blocks'], start=1):
        for label in block:
            rows.append([number, label, result['c'][label]])
    return ['block', 'irrep', 'c'], rows


def _char_l_rows(result):
    header = ['irrep', 'degree', 'constituent', 'multiplicity', 'certified']
    rows = []
    for entry in result['characters']:
        simple = entry['simple']
        for degree, mults in zip(simple['degrees'], simple['mults']):
            for label, m in zip(simple['irreps'], mults):
                if m:
                    rows.append([entry['irrep'], degree, label, m, entry['certified']])
    return header, rows


def _decomp_rows(result):
    header = ['block', 'standard', 'simple', 'multiplicity', 'certified', 'N']
    rows = []
    for number, block in enumerate(result['blocks'], start=1):
        labels = block['irreps']
        for i, standard in enumerate(labels):
            for j, simple in enumerate(labels):
                rows.append([number, standard, simple, block['mults'][i][j], block['certified'][i][j], block['N']])
    return header, rows


def _kz_rows(result):
    header = ['irrep', 'generator', 'reflection', 'eigenvalue_re', 'eigenvalue_im', 'hecke_residual']
    rows = []
    for entry in result['representations']:
        for generator in entry['generators']:
            for re_part, im_part in generator['eigenvalues']:
                rows.append([entry['irrep'], generator['label'], generator['reflection'],
                             re_part, im_part, generator['hecke_residual']])
    return header, rows


TABLES = {
    'describe_group': _describe_rows,
    'c_function': _c_function_rows,
    'blocks': _blocks_rows,
    'char_l': _char_l_rows,
    'decomp': _decomp_rows,
    'kz': _kz_rows,
}


def tabulate(result):
    return TABLES[result['command']](result)


def to_csv(result):
    header, rows = tabulate(result)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue().encode('utf-8')


def to_xlsx(result):
    header, rows = tabulate(result)
    wb = Workbook()
    ws = wb.active
    ws.title = result['command']
    ws.append(header)
    for cell in ws[1]:
        cell.font = Font(bold=True)
    for row in rows:
        ws.append(row)
    meta = wb.create_sheet('meta')
    meta.append(['group', result['group']])
    meta.append(['params', json.dumps(result['params'])])
    for key in ('orientation', 'N', 'certified', 'tol', 'precision', 'status'):
        if key in result:
            meta.append([key, str(result[key])])
    buffer = io.BytesIO()
    wb.save(buffer)
    return buffer.getvalue()


RENDERERS = {'json': to_json, 'csv': to_csv, 'xlsx': to_xlsx}


def render(result, fmt):
    """(bytes, content type, file extension)."""
    return RENDERERS[fmt](result), CONTENT_TYPES[fmt], fmt
