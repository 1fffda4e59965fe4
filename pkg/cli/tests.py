import json
import os
import tempfile
from io import StringIO
from unittest import mock

from django.apps import apps
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.db import connections
from django.test import SimpleTestCase

from atlas.services import SizeGuardError
from euler_oracle.results import KResult
from repmodel.representations import CanonicalRep
from .base import format_errors
from .management.commands.compute import Command as ComputeCommand
from .verification import ENGINE_DISAGREEMENT, Failure, VerificationService, format_set

ALPHA, BETA, GAMMA = 0b001, 0b010, 0b100
AB = ALPHA ^ BETA

BROKEN_REDUCER = mock.patch('reducer.services.HypergraphReducer.reduce', return_value=(KResult(5, 0), None))


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO(), no_color=True)
    return out.getvalue()


class ComputeCommandTests(SimpleTestCase):

    def test_hard_case_both_engines(self):
        output = run('compute', '-n', '2', '-V', 'a+b+ab', '--method', 'both')
        self.assertIn("K^0 = 0, K^1 = Z^1 (m=0, eps=1)", output)
        self.assertIn("oracle and reducer agree", output)
        self.assertIn("chi = -1", output)

    def test_published_case(self):
        output = run('compute', '-n', '3', '-V', 'a+b+c+ab+ac+bc')
        self.assertIn("(m=2, eps=1)", output)

    def test_twisted_empty_representation(self):
        output = run('compute', '-n', '2', '-V', '', '--twist', '1-2')
        self.assertIn("twist 1-2 shifts V to 1+a+b+ab", output)
        self.assertIn("(m=0, eps=0)", output)
        self.assertIn("chi = 1", output)

    def test_json(self):
        data = json.loads(run('compute', '-n', '2', '-V', 'a+b+ab', '--method', 'both', '--json'))
        self.assertEqual(data, {
            'n': 2, 'rep': 'a+b+ab', 'twist': None, 'chi': -1, 'm': 0, 'epsilon': 1, 'method': 'both',
        })

    def test_json_with_trace(self):
        data = json.loads(run('compute', '-n', '2', '-V', 'a+b+ab', '--method', 'reduce', '--json', '--trace'))
        self.assertEqual(data['trace']['S'], ['1', '2', '3'])
        self.assertEqual(data['trace']['result'], {'m': 0, 'epsilon': 1})

    def test_json_echo_round_trips(self):
        first = run('compute', '-n', '2', '-V', '2a + b + 1 + ab', '--json')
        second = run('compute', '-n', '2', '-V', json.loads(first)['rep'], '--json')
        self.assertEqual(first, second)

    def test_text_trace(self):
        output = run('compute', '-n', '2', '-V', 'a+b+ab', '--method', 'reduce', '--trace')
        self.assertIn("trace n=2 sign=+1 S=1,2,3", output)
        self.assertIn("result m=0 eps=1", output)

    def test_usage_errors(self):
        cases = [
            ('-n', '2', '-V', 'a+c'),
            ('-n', '2', '-V', 'a++b'),
            ('-n', '2', '-V', 'a', '--twist', '2-1'),
            ('-n', '2', '-V', 'a', '--twist', '1-3'),
            ('-n', '2', '-V', 'a', '--trace'),
            ('-n', '2', '-V', 'a', '--method', 'guess'),
            ('-n', '0', '-V', ''),
            ('-n', 'two', '-V', 'a'),
        ]
        for argv in cases:
            with self.subTest(argv=argv), self.assertRaises(CommandError) as cm:
                run('compute', *argv)
            self.assertEqual(cm.exception.returncode, 1)

    def test_parse_error_names_position(self):
        with self.assertRaises(CommandError) as cm:
            run('compute', '-n', '2', '-V', 'a+c')
        self.assertIn("position 2", str(cm.exception))

    @BROKEN_REDUCER
    def test_disagreement(self, _):
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('compute', '-n', '2', '-V', 'a+b+ab', '--method', 'both', stdout=out, no_color=True)
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn("Minimal failing set: S={} sign=+1", out.getvalue())
        self.assertNotIn("K^0", out.getvalue())


class ExitCodeTests(SimpleTestCase):

    def run_from_argv(self, *argv):
        out, err = StringIO(), StringIO()
        with self.assertRaises(SystemExit) as cm:
            ComputeCommand(stdout=out, stderr=err).run_from_argv(['manage.py', 'compute', *argv])
        return cm.exception.code, err.getvalue()

    def test_bad_flag(self):
        code, err = self.run_from_argv('-n', '2', '-V', 'a', '--method', 'guess')
        self.assertEqual(code, 1)
        self.assertIn("invalid choice", err)

    def test_bad_representation(self):
        code, err = self.run_from_argv('-n', '2', '-V', 'xyz')
        self.assertEqual(code, 1)
        self.assertIn("rep:", err)

    @BROKEN_REDUCER
    def test_disagreement(self, _):
        code, _ = self.run_from_argv('-n', '2', '-V', 'a+b+ab', '--method', 'both')
        self.assertEqual(code, 2)


class AtlasCommandTests(SimpleTestCase):

    def test_csv_to_stdout(self):
        lines = run('atlas', '-n', '2').splitlines()
        self.assertEqual(lines[0], 'n,S,chi,m,epsilon,orbit,flags')
        self.assertEqual(len(lines), 9)

    def test_json_to_stdout(self):
        rows = json.loads(run('atlas', '-n', '1', '--format', 'json'))
        self.assertEqual([(row['S'], row['m'], row['epsilon']) for row in rows], [([], 1, 0), (['1'], 0, 0)])

    def test_file_output(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'atlas.csv')
            output = run('atlas', '-n', '3', '--out', path)
            with open(path) as stream:
                lines = stream.read().splitlines()
        self.assertEqual(len(lines), 129)
        self.assertIn("Wrote 128 rows", output)
        self.assertIn("7 rows differ from the published table", output)

    def test_sample_mode(self):
        lines = run('atlas', '-n', '5', '--mode', 'sample', '--samples', '10', '--seed', '1').splitlines()
        self.assertLessEqual(len(lines), 11)
        self.assertTrue(all(line.startswith('5,') for line in lines[1:]))

    def test_size_guard(self):
        with self.assertRaises(CommandError) as cm:
            run('atlas', '-n', '5')
        self.assertEqual(cm.exception.returncode, 1)


class VerifyCommandTests(SimpleTestCase):

    def test_exhaustive(self):
        output = run('verify', '-n', '2', '--exhaustive')
        self.assertIn("Checked 16 representations at n=2", output)
        self.assertNotIn("seed", output)

    def test_seed_is_printed(self):
        output = run('verify', '-n', '3', '--samples', '20', '--seed', '5')
        self.assertTrue(output.startswith("seed: 5\n"))
        self.assertIn("engines agree", output)

    def test_fresh_seed(self):
        output = run('verify', '-n', '2', '--samples', '5')
        self.assertRegex(output, r"^seed: \d+\n")

    def test_conflicting_flags(self):
        with self.assertRaises(CommandError) as cm:
            run('verify', '-n', '2', '--exhaustive', '--seed', '3')
        self.assertEqual(cm.exception.returncode, 1)

    def test_size_guard(self):
        with self.assertRaises(CommandError) as cm:
            run('verify', '-n', '5', '--exhaustive')
        self.assertEqual(cm.exception.returncode, 1)

    @BROKEN_REDUCER
    def test_failures(self, _):
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('verify', '-n', '1', '--exhaustive', stdout=out, no_color=True)
        self.assertEqual(cm.exception.returncode, 2)
        self.assertEqual(out.getvalue().count("Minimal failing set: S={}"), 4)
        self.assertIn("4 of 4 representations failed", str(cm.exception))


class SwCommandTests(SimpleTestCase):

    def test_shift_summand(self):
        output = run('sw', '-n', '2', '-V', '1+a+b+ab')
        self.assertIn("w1 = 0\n", output)
        self.assertIn("w2 = x1^2 + x1 x2 + x2^2\n", output)
        self.assertIn("beta w2 = b(x1 x2)\n", output)
        self.assertIn("Spin^c: no\n", output)
        self.assertIn("twist: 1-2\n", output)

    def test_not_orientable(self):
        output = run('sw', '-n', '1', '-V', 'a')
        self.assertIn("w1 = x1\n", output)
        self.assertIn("not orientable", output)

    def test_large_multiplicity(self):
        output = run('sw', '-n', '2', '-V', '100000001a+400000000b')
        self.assertIn("w1 = x1\n", output)
        self.assertIn("w2 = 0\n", output)

    def test_json(self):
        data = json.loads(run('sw', '-n', '2', '-V', '2a', '--json'))
        self.assertEqual(data, {
            'n': 2, 'rep': '2a', 'w1': '0', 'w2': 'x1^2', 'w3': '0',
            'beta_w2': '0', 'spinc': 'yes', 'twist': '',
        })


class ReproduceCommandTests(SimpleTestCase):

    def test_report(self):
        output = run('reproduce')
        self.assertEqual(output.count("paper_discrepancy"), 1)
        self.assertIn("6 cases in 4 GL(3, 2) orbits: 1, 2~3, 4~5, 6", output)
        first = next(line for line in output.splitlines() if line.startswith('1 '))
        self.assertIn("(2,0)    (1,0)    (1,0)", first)


class VerificationServiceTests(SimpleTestCase):

    def setUp(self):
        self.verifier = VerificationService()

    def test_check_passes(self):
        self.assertIsNone(self.verifier.check(CanonicalRep(2, frozenset({ALPHA, BETA, AB}), -1)))

    def test_minimize_is_greedy(self):
        def check(rep):
            return Failure(rep, ENGINE_DISAGREEMENT, "stub") if ALPHA in rep.S else None

        with mock.patch.object(self.verifier, 'check', side_effect=check):
            minimal = self.verifier.minimize(CanonicalRep(3, frozenset({ALPHA, BETA, GAMMA, AB})))
        self.assertEqual(minimal, CanonicalRep(3, frozenset({ALPHA})))

    def test_candidates(self):
        self.assertEqual(len(list(self.verifier.candidates(2, exhaustive=True))), 16)
        sampled = list(self.verifier.candidates(4, samples=30, seed=2))
        self.assertEqual(sampled, list(self.verifier.candidates(4, samples=30, seed=2)))
        with self.assertRaises(SizeGuardError):
            list(self.verifier.candidates(9, samples=3))

    def test_run(self):
        report = self.verifier.run(3, exhaustive=True)
        self.assertTrue(report.ok)
        self.assertEqual(report.checked, 256)

    def test_format_set(self):
        self.assertEqual(format_set({AB, ALPHA}), "{a, ab}")
        self.assertEqual(format_set(()), "{}")

    def test_format_errors(self):
        self.assertEqual(
            format_errors({'rep': ['bad'], 'non_field_errors': ['both wrong']}),
            "rep: bad\nboth wrong",
        )


class ProjectSettingsTests(SimpleTestCase):
    LOCAL_APPS = ('gf2core', 'repmodel', 'euler_oracle', 'reducer', 'charclass', 'twist', 'atlas', 'cli')

    def test_no_database(self):
        self.assertEqual(settings.DATABASES, {})
        self.assertEqual(connections.settings['default']['ENGINE'], 'django.db.backends.dummy')

    def test_no_model_apps(self):
        for name in ('django.contrib.auth', 'django.contrib.contenttypes'):
            with self.subTest(app=name):
                self.assertFalse(apps.is_installed(name))
        self.assertFalse(hasattr(settings, 'REST_FRAMEWORK'))

    def test_local_apps_have_no_models(self):
        for label in self.LOCAL_APPS:
            with self.subTest(app=label):
                config = apps.get_app_config(label)
                self.assertIsNone(config.models_module)
                self.assertNotIn('default_auto_field', vars(type(config)))
