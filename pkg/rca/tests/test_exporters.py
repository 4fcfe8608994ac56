import csv
import io
from datetime import timedelta

from django.test import SimpleTestCase, TestCase
from django.utils import timezone
from openpyxl import load_workbook

from rca.exporters import render, tabulate, to_json
from rca.models import ComputationJob

DECOMP = {
    'command': 'decomp',
    'group': 'Z/2',
    'params': [{'orbit': 'H0', 'k': ['-1/2']}],
    'orientation': 'rows are standards, columns simples',
    'certified': True,
    'blocks': [{'irreps': ['triv', 'sgn'], 'mults': [[1, 1], [0, 1]],
                'certified': [[True, True], [True, True]], 'N': 5}],
}


class ExporterTests(SimpleTestCase):
    def test_decomposition_rows(self):
        header, rows = tabulate(DECOMP)
        self.assertEqual(header, ['block', 'standard', 'simple', 'multiplicity', 'certified', 'N'])
        self.assertEqual(rows[1], [1, 'triv', 'sgn', 1, True, 5])
        self.assertEqual(rows[2], [1, 'sgn', 'triv', 0, True, 5])

    def test_csv(self):
        data, ctype, ext = render(DECOMP, 'csv')
        self.assertEqual((ctype, ext), ('text/csv; charset=utf-8', 'csv'))
        rows = list(csv.reader(io.StringIO(data.decode('utf-8'))))
        self.assertEqual(len(rows), 5)

    def test_json_is_stable(self):
        self.assertEqual(to_json(DECOMP), to_json(dict(DECOMP)))
        self.assertTrue(to_json(DECOMP).endswith(b'\n'))

    def test_xlsx_sheets(self):
        data, _, _ = render(DECOMP, 'xlsx')
        wb = load_workbook(io.BytesIO(data))
        self.assertEqual(wb.sheetnames, ['decomp', 'meta'])
        self.assertEqual(wb['decomp']['D3'].value, 1)
        self.assertEqual(wb['meta']['B1'].value, 'Z/2')


class ComputationJobTests(TestCase):
    def test_duration(self):
        job = ComputationJob.objects.create(command='blocks')
        self.assertIsNone(job.duration_seconds)
        job.finished_at = job.created_at + timedelta(seconds=3)
        self.assertEqual(job.duration_seconds, 3.0)

    def test_ordering(self):
        old = ComputationJob.objects.create(command='blocks')
        ComputationJob.objects.filter(pk=old.pk).update(created_at=timezone.now() - timedelta(days=1))
        new = ComputationJob.objects.create(command='kz')
        self.assertEqual(list(ComputationJob.objects.all()), [new, old])
