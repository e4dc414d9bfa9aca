import csv
import json
import os
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django import forms
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .exceptions import DomainError, IdentityViolation, ParameterError
from .forms import CountField, CountListField, EklabForm, ReportForm
from .manifest import RunManifest
from .output import file_digest, sibling, write_csv, write_json
from .pool import map_ordered, segments
from .report import render_gnuplot, render_summary
from .test_runner import EklabTestRunner


def _square_plus(item, shared):
    return item * item + (shared or 0)


class ExceptionTests(SimpleTestCase):
    def test_parameter_error_names_flag(self):
        self.assertEqual(str(ParameterError("too big", flag='--x')), "--x: too big")
        self.assertEqual(str(ParameterError("too big")), "too big")

    def test_exit_codes(self):
        self.assertEqual(ParameterError("").exit_code, 2)
        self.assertEqual(DomainError("").exit_code, 2)
        self.assertEqual(IdentityViolation("").exit_code, 1)


class FieldTests(SimpleTestCase):
    def test_count_field_notations(self):
        field = CountField()
        self.assertEqual(field.clean('10000000'), 10_000_000)
        self.assertEqual(field.clean('1e7'), 10_000_000)
        self.assertEqual(field.clean('10**7'), 10_000_000)

    def test_count_field_rejects_fractions(self):
        field = CountField()
        for value in ('1.5e0', 'abc', '10**x'):
            with self.assertRaises(forms.ValidationError):
                field.clean(value)

    def test_count_list_field(self):
        field = CountListField(min_value=2)
        self.assertEqual(field.clean(['11,13', '1e2']), [11, 13, 100])
        self.assertEqual(field.clean('7'), [7])
        with self.assertRaises(forms.ValidationError):
            field.clean(['1'])

    def test_first_error_names_flag(self):
        class Form(EklabForm):
            l3_floor = forms.FloatField(min_value=0)

        form = Form(data={'l3_floor': '-1'})
        self.assertFalse(form.is_valid())
        self.assertTrue(form.first_error().startswith('--l3-floor: '))

    def test_threads_default(self):
        form = EklabForm(data={})
        self.assertTrue(form.is_valid())
        self.assertGreaterEqual(form.cleaned_data['threads'], 1)

    def test_report_presets(self):
        form = ReportForm(data={'preset': 'medium', 'out': 'r'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['x'], 1_000_000)
        self.assertEqual(form.cleaned_data['fn'], ['s', 'beta', 'cototient', 'n+tau'])

        form = ReportForm(data={'preset': 'small', 'x': '1e5', 'out': 'r'})
        self.assertFalse(form.is_valid())
        self.assertIn('--x', form.first_error())

        form = ReportForm(data={'fn': ['nope'], 'out': 'r'})
        self.assertFalse(form.is_valid())


class OutputTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def test_csv_uses_lf(self):
        path = write_csv(self.dir / 'a' / 't.csv', ('a', 'b'), [(1, 2), (3, 4)])
        self.assertEqual(path.read_bytes(), b'a,b\n1,2\n3,4\n')

    def test_json_sorted(self):
        path = write_json(self.dir / 't.json', {'b': 1, 'a': 2})
        text = path.read_text()
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertTrue(text.endswith('\n'))

    def test_digest_and_sibling(self):
        one = write_json(self.dir / 'one.json', {'a': 1})
        two = write_json(self.dir / 'two.json', {'a': 1})
        self.assertEqual(file_digest(one), file_digest(two))
        self.assertEqual(len(file_digest(one)), 64)
        self.assertEqual(sibling('out/h.csv', '.manifest.json'), Path('out/h.manifest.json'))

    def test_manifest(self):
        data = write_json(self.dir / 'd.json', {})
        manifest = RunManifest(subcommand='ekhist', parameters={'x': 100}, workers=2)
        manifest.record(data)
        payload = json.loads(manifest.write(self.dir / 'm.json').read_text())
        self.assertEqual(payload['subcommand'], 'ekhist')
        self.assertEqual(payload['outputs'], {str(data): file_digest(data)})
        self.assertEqual(payload['status'], 'ok')
        for key in ('version', 'python', 'wall_time', 'workers'):
            self.assertIn(key, payload)


class PoolTests(SimpleTestCase):
    def test_segments_cover(self):
        bounds = segments(2, 23, 5)
        self.assertEqual(bounds[0], (2, 7))
        self.assertEqual(bounds[-1], (22, 23))
        self.assertEqual(sum(hi - lo for lo, hi in bounds), 21)
        self.assertEqual(segments(5, 5, 3), [])

    def test_map_ordered_serial(self):
        self.assertEqual(map_ordered(_square_plus, range(5), shared=1), [1, 2, 5, 10, 17])

    def test_map_ordered_keeps_order_in_pool(self):
        items = list(range(40))
        self.assertEqual(
            map_ordered(_square_plus, items, workers=2, shared=3),
            [_square_plus(item, 3) for item in items],
        )


class TestRunnerTests(SimpleTestCase):
    def test_slow_excluded_by_default(self):
        with mock.patch.dict(os.environ, {}, clear=False):
            os.environ.pop('EKLAB_SLOW_TESTS', None)
            runner = EklabTestRunner(verbosity=0)
        self.assertIn('slow', runner.exclude_tags)

    def test_slow_included_on_request(self):
        with mock.patch.dict(os.environ, {'EKLAB_SLOW_TESTS': '1'}):
            runner = EklabTestRunner(verbosity=0)
        self.assertNotIn('slow', runner.exclude_tags)


class TemplateTests(SimpleTestCase):
    def test_gnuplot_script(self):
        script = render_gnuplot(title='omega(s(n))', data='s.hist.csv', image='s.png', total=120, bins=40, x=100000)
        self.assertIn("'s.hist.csv'", script)
        self.assertIn('every ::0::39', script)
        self.assertIn('s.png', script)

    def test_summary_groups_thousands(self):
        text = render_summary(1_000_000, [{
            'fn': 'n+tau', 'omega_count': 123456, 'ks_distance': 0.0123,
            'ks_window': 0.0456, 'small_prime_sum': 0.0, 'gcd_sum': 0.5,
        }])
        self.assertIn('1,000,000', text)
        self.assertIn('123,456', text)
        self.assertIn('n+tau', text)


# ==================== commands ====================
class CommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def call(self, name, **options):
        stdout = StringIO()
        call_command(name, threads='1', stdout=stdout, **options)
        return stdout.getvalue()

    def manifest_of(self, out):
        return json.loads(sibling(out, '.manifest.json').read_text())

    def test_sieve(self):
        out = self.dir / 'sieve.csv'
        self.call('sieve', lo='2', hi='101', out=str(out))
        with out.open() as handle:
            rows = list(csv.DictReader(handle))
        self.assertEqual(len(rows), 99)
        row = rows[10]
        self.assertEqual(row['n'], '12')
        self.assertEqual(
            (row['sigma'], row['phi'], row['tau'], row['omega'], row['lpf'], row['lpf_sq_divides']),
            ('28', '4', '6', '2', '3', '0'),
        )
        manifest = self.manifest_of(out)
        self.assertEqual(manifest['subcommand'], 'sieve')
        self.assertEqual(manifest['outputs'][str(out)], file_digest(out))
        self.assertNotIn('threads', manifest['parameters'])

    def test_ekhist(self):
        out = self.dir / 'h.csv'
        dump = self.dir / 'dump.csv'
        payload = json.loads(self.call('ekhist', x='20000', y='10', z='200', out=str(out), dump=str(dump)))
        self.assertGreater(payload['omega_count'], 0)
        report = json.loads(sibling(out, '.json').read_text())
        self.assertEqual(report['omega_count'], payload['omega_count'])
        with dump.open() as handle:
            self.assertEqual(len(list(csv.reader(handle))), 20000)  # header plus 2 <= n <= 20000
        outputs = self.manifest_of(out)['outputs']
        self.assertEqual(set(outputs), {str(out), str(sibling(out, '.json')), str(dump)})

    def test_ekhist_is_deterministic_across_workers(self):
        serial, pooled = self.dir / 'serial.csv', self.dir / 'pooled.csv'
        call_command('ekhist', x='30000', y='10', z='200', out=str(serial), threads='1', stdout=StringIO())
        call_command('ekhist', x='30000', y='10', z='200', out=str(pooled), threads='2', stdout=StringIO())
        self.assertEqual(file_digest(serial), file_digest(pooled))
        self.assertEqual(file_digest(sibling(serial, '.json')), file_digest(sibling(pooled, '.json')))

    def test_ekhist_dump_leaves_report_unchanged(self):
        plain, dumped = self.dir / 'plain.csv', self.dir / 'dumped.csv'
        call_command('ekhist', x='30000', y='10', z='200', out=str(plain), threads='2', stdout=StringIO())
        call_command(
            'ekhist', x='30000', y='10', z='200', out=str(dumped), threads='2',
            dump=str(self.dir / 'rows.csv'), stdout=StringIO(),
        )
        self.assertEqual(file_digest(plain), file_digest(dumped))
        self.assertEqual(file_digest(sibling(plain, '.json')), file_digest(sibling(dumped, '.json')))

    def test_eqerror(self):
        out = self.dir / 'e.json'
        payload = json.loads(self.call('eqerror', q='3', T='10', out=str(out)))
        self.assertAlmostEqual(payload['error'], 1.5)
        self.assertEqual(json.loads(out.read_text()), payload)

    def test_dcount(self):
        out = self.dir / 'd.json'
        self.call('dcount', x='20000', y='10', z='200', d=['11,13'], out=str(out))
        payload = json.loads(out.read_text())
        self.assertEqual([report['d'] for report in payload['reports']], [11, 13])
        for report in payload['reports']:
            self.assertEqual(report['lhs'], report['rhs'])

    def test_dcount_auto(self):
        out = self.dir / 'd.json'
        self.call('dcount', x='20000', y='10', z='40', auto='k=2 cap=1000', out=str(out))
        payload = json.loads(out.read_text())
        ds = [report['d'] for report in payload['reports']]
        self.assertIn(11 * 13, ds)
        self.assertTrue(all(d <= 1000 for d in ds))

    def test_hypotheses(self):
        out = self.dir / 'hyp.json'
        payload = json.loads(self.call('hypotheses', fn='n+tau', x='10000,20000', out=str(out)))
        self.assertEqual([result['x'] for result in payload['results']], [10000, 20000])
        self.assertEqual(payload['k'], 2)
        self.assertEqual(len(payload['ratios']), 1)

    def test_moments(self):
        out = self.dir / 'm.json'
        payload = json.loads(self.call('moments', x='20000', y='10', z='200', kmax='4', out=str(out)))
        self.assertEqual(payload['window']['y'], 10.0)
        self.assertGreater(payload['omega_count'], 0)

    def test_sample_model(self):
        out = self.dir / 'model.csv'
        payload = json.loads(self.call(
            'sample_model', x='1e6', y='10', z='1000', trials='2000', seed='3', out=str(out),
        ))
        self.assertEqual(payload['trials'], 2000)
        self.assertEqual(len(payload['moments']['normal']), 4)
        again = self.dir / 'again.csv'
        self.call('sample_model', x='1e6', y='10', z='1000', trials='2000', seed='3', out=str(again))
        self.assertEqual(file_digest(out), file_digest(again))

    def test_report_bundle(self):
        out = self.dir / 'bundle'
        self.call('report', x='20000', fn=['s', 'beta'], out=str(out))
        index = json.loads((out / 'index.json').read_text())
        self.assertEqual(sorted(index['functions']), ['beta', 's'])
        self.assertEqual(index['functions']['beta']['small_prime_sum'], 0)
        for name in ('s.hist.csv', 's.summary.json', 's.moments.json', 's.hypotheses.json', 's.gp', 'summary.txt'):
            self.assertTrue((out / name).exists(), name)
        manifest = json.loads((out / 'manifest.json').read_text())
        self.assertEqual(manifest['outputs'][str(out / 's.gp')], file_digest(out / 's.gp'))
        self.assertIn('20,000', (out / 'summary.txt').read_text())

    def test_report_bundle_is_deterministic_across_workers(self):
        serial, pooled = self.dir / 'serial', self.dir / 'pooled'
        for out, threads in ((serial, '1'), (pooled, '3')):
            call_command('report', x='20000', fn=['s', 'cototient'], out=str(out), threads=threads, stdout=StringIO())
        names = sorted(path.name for path in serial.iterdir() if path.name != 'manifest.json')
        self.assertEqual(names, sorted(path.name for path in pooled.iterdir() if path.name != 'manifest.json'))
        self.assertIn('cototient.hist.csv', names)
        for name in names:
            self.assertEqual(file_digest(serial / name), file_digest(pooled / name), name)

    def test_bad_flag_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('ekhist', x='lots', out=str(self.dir / 'h.csv'))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertTrue(str(ctx.exception).startswith('--x:'))

    def test_domain_error_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('dcount', x='20000', y='10', z='200', d=['9'], out=str(self.dir / 'd.json'))
        self.assertEqual(ctx.exception.returncode, 2)
        manifest = json.loads((self.dir / 'd.manifest.json').read_text())
        self.assertTrue(manifest['status'].startswith('failed: '))
        self.assertEqual(manifest['outputs'], {})
