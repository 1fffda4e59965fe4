import json
from collections import defaultdict
from io import StringIO

from django.test import SimpleTestCase, override_settings

from euler_oracle.results import KResult
from gf2core.linalg import apply_dual_map, gl_group
from .services import (
    DISCREPANCY_FLAG, SAMPLE, AtlasService, SizeGuardError, gl_canonical_form,
    orbit_classes, published_cases, subset_of_mask,
)

ALPHA, BETA, GAMMA = 0b001, 0b010, 0b100
AB, AC, BC, ABC = ALPHA ^ BETA, ALPHA ^ GAMMA, BETA ^ GAMMA, ALPHA ^ BETA ^ GAMMA


class EnumerateTests(SimpleTestCase):

    def setUp(self):
        self.service = AtlasService()

    def test_rank_one(self):
        rows = list(self.service.enumerate(1))
        self.assertEqual([(row.S, row.result) for row in rows], [
            ((), KResult(1, 0)),
            ((1,), KResult(0, 0)),
        ])

    def test_rank_two(self):
        rows = {row.S: row for row in self.service.enumerate(2)}
        self.assertEqual(len(rows), 8)
        self.assertEqual(rows[(1, 2, 3)].result, KResult(0, 1))
        self.assertEqual(rows[(1, 2, 3)].trace_toggle_count, 0)

    def test_rank_three(self):
        rows = {row.S: row for row in self.service.enumerate(3)}
        self.assertEqual(len(rows), 128)
        for case in published_cases():
            row = rows[tuple(sorted(case.S))]
            with self.subTest(case=case.label):
                if case.label == '1':
                    self.assertEqual(row.result, KResult(1, 0))
                    self.assertEqual(row.flags, (DISCREPANCY_FLAG,))
                else:
                    self.assertEqual(row.result, case.printed)
                    self.assertEqual(row.flags, ())

    def test_discrepancy_marks_one_orbit(self):
        flagged = [row for row in self.service.enumerate(3) if row.flags]
        self.assertEqual(len(flagged), 7)
        self.assertEqual({row.orbit for row in flagged}, {gl_canonical_form({ALPHA, BETA, GAMMA, ABC}, 3)})

    def test_orbit_invariance_small_ranks(self):
        for n in (2, 3):
            by_orbit = defaultdict(set)
            for row in self.service.enumerate(n):
                by_orbit[row.orbit].add(row.result)
            with self.subTest(n=n):
                self.assertTrue(all(len(results) == 1 for results in by_orbit.values()))

    def test_rank_four_exhaustive(self):
        by_orbit = defaultdict(set)
        count = 0
        for row in self.service.enumerate(4):
            count += 1
            self.assertLessEqual(abs(row.chi), 16)
            by_orbit[row.orbit].add(row.result)
        self.assertEqual(count, 32768)
        self.assertTrue(all(len(results) == 1 for results in by_orbit.values()))

    def test_size_guards(self):
        with self.assertRaises(SizeGuardError):
            list(self.service.enumerate(5))
        with self.assertRaises(SizeGuardError):
            list(self.service.enumerate(9, SAMPLE, samples=5))

    @override_settings(KSPHERE_EXHAUSTIVE_MAX_N=2)
    def test_guard_follows_settings(self):
        with self.assertRaises(SizeGuardError):
            list(self.service.enumerate(3))

    def test_sample_is_seeded(self):
        first = list(self.service.enumerate(5, SAMPLE, samples=20, seed=3))
        second = list(self.service.enumerate(5, SAMPLE, samples=20, seed=3))
        self.assertEqual(first, second)
        self.assertTrue(all(row.orbit is None and row.trace_toggle_count is not None for row in first))
        self.assertTrue(all(len(row.S) <= 10 for row in first))

    def test_workers(self):
        self.assertEqual(list(AtlasService(workers=2).enumerate(2)), list(self.service.enumerate(2)))


class OrbitTests(SimpleTestCase):

    def test_single_character(self):
        self.assertEqual(gl_canonical_form({AB}, 2), (1,))

    def test_empty(self):
        self.assertEqual(gl_canonical_form(set(), 3), ())

    def test_constant_on_orbit(self):
        S = {ALPHA, BETA, GAMMA, AB, BC, ABC}
        expected = gl_canonical_form(S, 3)
        for A in gl_group(3):
            image = {apply_dual_map(A, chi) for chi in S}
            self.assertEqual(gl_canonical_form(image, 3), expected)
        self.assertEqual(gl_canonical_form(expected, 3), expected)

    def test_union_find_matches_brute_force(self):
        classes = orbit_classes(3)
        for mask, form in classes.items():
            self.assertEqual(form, gl_canonical_form(subset_of_mask(mask), 3))
        self.assertEqual(len(set(classes.values())), 10)

    def test_published_cases_share_orbits(self):
        forms = {case.label: gl_canonical_form(case.S, 3) for case in published_cases()}
        self.assertEqual(forms['2'], forms['3'])
        self.assertEqual(forms['4'], forms['5'])
        self.assertEqual(len({forms[label] for label in ('1', '2', '4', '6')}), 4)

    def test_size_guard(self):
        with self.assertRaises(SizeGuardError):
            gl_canonical_form({1}, 5)


class WriteTableTests(SimpleTestCase):

    def setUp(self):
        self.service = AtlasService()

    def write(self, rows, fmt):
        stream = StringIO()
        self.service.write_table(rows, fmt, stream)
        return stream.getvalue()

    def test_csv(self):
        lines = self.write(self.service.enumerate(2), 'csv').splitlines()
        self.assertEqual(lines[0], 'n,S,chi,m,epsilon,orbit,flags')
        self.assertEqual(len(lines), 9)
        self.assertEqual(lines[1], '2,,4,2,0,,')
        self.assertIn('2,1 2 3,-1,0,1,1 2 3,', lines)

    def test_csv_rank_three(self):
        lines = self.write(self.service.enumerate(3), 'csv').splitlines()
        self.assertEqual(len(lines), 129)
        self.assertIn('3,1 2 4 7,2,1,0,1 2 4 7,paper_discrepancy', lines)

    def test_empty(self):
        self.assertEqual(self.write([], 'csv'), 'n,S,chi,m,epsilon,orbit,flags\n')

    def test_json(self):
        rows = json.loads(self.write(self.service.enumerate(2), 'json'))
        self.assertEqual(len(rows), 8)
        self.assertEqual(rows[-1]['S'], ['3'])
        self.assertEqual(set(rows[0]), {'n', 'S', 'chi', 'm', 'epsilon', 'orbit', 'trace_toggle_count', 'flags'})

    def test_deterministic(self):
        rows = list(self.service.enumerate(3))
        self.assertEqual(self.write(rows, 'csv'), self.write(reversed(rows), 'csv'))

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            self.write([], 'xml')


class ReproductionReportTests(SimpleTestCase):

    def test_report(self):
        entries = {entry.case.label: entry for entry in AtlasService().reproduction_report()}
        self.assertEqual(entries['1'].computed, KResult(1, 0))
        self.assertEqual(entries['1'].flags, (DISCREPANCY_FLAG,))
        expected = {'2': (1, 1), '3': (1, 1), '4': (2, 1), '5': (2, 1), '6': (3, 1)}
        for label, (m, epsilon) in expected.items():
            with self.subTest(case=label):
                self.assertEqual(entries[label].computed, KResult(m, epsilon))
                self.assertEqual(entries[label].reducer, KResult(m, epsilon))
                self.assertEqual(entries[label].flags, ())
