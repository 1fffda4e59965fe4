import random
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from unittest import mock

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from gf2core.linalg import apply_dual_map
from ksphere.strategies import (
    PROPERTY_EXAMPLES, SAMPLED_EXAMPLES, SAMPLED_RANKS, character_sets, independent_triples,
    invertible_matrices, ranks, rep_multisets, sampled_ranks, vectors,
)
from repmodel.parser import parse_rep
from repmodel.representations import RepMultiset, octet
from .results import KResult, NonPowerOfTwoError, RankBoundError
from .services import EulerOracle, OrderCapExceeded, get_oracle

ALPHA, BETA, GAMMA = 0b001, 0b010, 0b100
AB, AC, BC, ABC = ALPHA ^ BETA, ALPHA ^ GAMMA, BETA ^ GAMMA, ALPHA ^ BETA ^ GAMMA


class KResultTests(SimpleTestCase):

    def test_from_positive_chi(self):
        self.assertEqual(KResult.from_chi(8), KResult(3, 0))

    def test_from_negative_chi(self):
        self.assertEqual(KResult.from_chi(-1), KResult(0, 1))

    def test_chi_round_trip(self):
        for value in (1, -1, 2, -2, 4, -16):
            self.assertEqual(KResult.from_chi(value).chi, value)

    def test_not_a_power_of_two(self):
        for value in (0, 3, -6, 12):
            with self.subTest(value=value):
                with self.assertRaises(NonPowerOfTwoError):
                    KResult.from_chi(value)

    def test_rank_bound(self):
        self.assertEqual(KResult.from_chi(-8, 3), KResult(3, 1))
        for value in (16, -16, 1 << 10):
            with self.subTest(value=value):
                with self.assertRaises(RankBoundError):
                    KResult.from_chi(value, 3)
        self.assertEqual(KResult.from_chi(16), KResult(4, 0))

    def test_describe(self):
        self.assertEqual(KResult(0, 1).describe(), "K^0 = 0, K^1 = Z^1 (m=0, eps=1)")
        self.assertEqual(KResult(2, 0).describe(), "K^0 = Z^4, K^1 = 0 (m=2, eps=0)")


class ChiTests(SimpleTestCase):

    def setUp(self):
        self.oracle = EulerOracle()

    def test_empty(self):
        for n in range(6):
            self.assertEqual(self.oracle.chi(RepMultiset.empty(n)), 1 << n)

    def test_hard_case(self):
        self.assertEqual(self.oracle.chi(parse_rep('a+b+ab', 2)), -1)

    def test_all_pairwise_sums(self):
        self.assertEqual(self.oracle.chi(parse_rep('a+b+c+ab+ac+bc', 3)), -4)

    def test_generators_plus_full_product(self):
        self.assertEqual(self.oracle.chi_of_set(3, {ALPHA, BETA, GAMMA, ABC}), 2)

    def test_every_nonzero_character(self):
        self.assertEqual(self.oracle.chi_of_set(3, range(1, 8)), -8)

    def test_exact_mode_agrees(self):
        rep = parse_rep('2a+b+3ab+1', 2)
        exact = EulerOracle(reduce_pairs=False, use_cache=False)
        self.assertEqual(exact.chi(rep), self.oracle.chi(rep))


class KGroupsTests(SimpleTestCase):

    def setUp(self):
        self.oracle = EulerOracle()

    def test_hard_case(self):
        self.assertEqual(self.oracle.k_groups(parse_rep('a+b+ab', 2)), KResult(0, 1))

    def test_independent_characters(self):
        self.assertEqual(self.oracle.k_groups(parse_rep('a+b', 3)), KResult(1, 0))

    def test_empty(self):
        self.assertEqual(self.oracle.k_groups(RepMultiset.empty(4)), KResult(4, 0))

    def test_non_power_of_two_is_logged(self):
        with mock.patch.object(self.oracle, 'chi', return_value=6):
            with self.assertLogs('euler_oracle.services', level='ERROR'):
                with self.assertRaises(NonPowerOfTwoError):
                    self.oracle.k_groups(RepMultiset.empty(3))

    def test_chi_above_rank_is_logged(self):
        with mock.patch.object(self.oracle, 'chi', return_value=-16):
            with self.assertLogs('euler_oracle.services', level='ERROR') as logs:
                with self.assertRaises(RankBoundError):
                    self.oracle.k_groups(RepMultiset.empty(3))
        self.assertIn('exceeds 2^3', logs.output[0])


class ChiAllOrdersTests(SimpleTestCase):

    def setUp(self):
        self.oracle = EulerOracle()

    def test_hard_case(self):
        self.assertEqual(self.oracle.chi_all_orders(parse_rep('a+b+ab', 2)), [-1] * 6)

    def test_empty(self):
        self.assertEqual(self.oracle.chi_all_orders(RepMultiset.empty(3)), [8])

    def test_complex_pair(self):
        self.assertEqual(set(self.oracle.chi_all_orders(parse_rep('2a', 3))), {8})

    def test_max_orders(self):
        self.assertEqual(len(self.oracle.chi_all_orders(parse_rep('a+b+c+ab', 3), max_orders=5)), 5)

    def test_cap(self):
        with self.assertRaises(OrderCapExceeded):
            self.oracle.chi_all_orders(parse_rep('9a', 1))


class CacheTests(SimpleTestCase):

    def test_cache_off_is_identical(self):
        cached, uncached = EulerOracle(), EulerOracle(use_cache=False)
        for size in range(4):
            for S in combinations(range(1, 8), size):
                self.assertEqual(cached.chi_of_set(3, S), uncached.chi_of_set(3, S))
        self.assertEqual(uncached.cache_info()['size'], 0)
        self.assertGreater(cached.cache_info()['hits'], 0)

    def test_clear_cache(self):
        oracle = EulerOracle()
        oracle.chi_of_set(3, {ALPHA, BETA, GAMMA, ABC})
        oracle.clear_cache()
        self.assertEqual(oracle.cache_info(), {'hits': 0, 'misses': 0, 'size': 0})

    def test_counters_across_threads(self):
        oracle = EulerOracle()
        S = {ALPHA, BETA, GAMMA, ABC}
        expected = oracle.chi_of_set(3, S)
        before = oracle.cache_info()
        calls = 4000
        with ThreadPoolExecutor(max_workers=8) as pool:
            values = list(pool.map(lambda _: oracle.chi_of_set(3, S), range(calls)))
        self.assertEqual(set(values), {expected})
        after = oracle.cache_info()
        self.assertEqual(after['hits'] - before['hits'], calls)
        self.assertEqual(after['misses'], before['misses'])
        self.assertEqual(after['size'], before['size'])

    def test_shared_instance(self):
        self.assertIs(get_oracle(), get_oracle())


class ChiIdentities:
    """Identity checks shared by the small-rank and sampled-rank suites"""

    def setUp(self):
        self.oracle = get_oracle()
        self.exact = EulerOracle(reduce_pairs=False)

    def check_suspension(self, data, n):
        rep = data.draw(rep_multisets(n))
        trivial = RepMultiset.from_counts(n, {0: 1})
        self.assertEqual(self.oracle.chi(rep + trivial), -self.oracle.chi(rep))

    def check_complex_pair(self, data, n):
        rep = data.draw(rep_multisets(n, max_size=4, max_count=2))
        chi = data.draw(vectors(n))
        pair = RepMultiset.from_counts(n, {chi: 2})
        self.assertEqual(self.exact.chi(rep + pair), self.exact.chi(rep))

    def check_gl_invariance(self, data, n):
        A = data.draw(invertible_matrices(n))
        rep = data.draw(rep_multisets(n))
        moved = RepMultiset.from_counts(n, {apply_dual_map(A, chi): count for chi, count in rep.counts})
        self.assertEqual(self.oracle.chi(moved), self.oracle.chi(rep))

    def check_toggle_flip(self, data, n):
        a, b, c = data.draw(independent_triples(n))
        S = data.draw(character_sets(n))
        self.assertEqual(self.oracle.chi_of_set(n, S ^ octet(a, b, c)), -self.oracle.chi_of_set(n, S))

    def check_kunneth(self, data, n):
        d1 = data.draw(st.integers(0, min(3, n)))
        d2 = data.draw(st.integers(0, n - d1))
        free = n - d1 - d2
        S1 = data.draw(character_sets(d1, max_size=4))
        S2 = data.draw(character_sets(d2, max_size=4))
        A = data.draw(invertible_matrices(n))
        union = {apply_dual_map(A, chi) for chi in S1} | {apply_dual_map(A, chi << d1) for chi in S2}
        expected = self.oracle.chi_of_set(d1, S1) * self.oracle.chi_of_set(d2, S2) << free
        self.assertEqual(self.oracle.chi_of_set(n, union), expected)

    def check_order_independence(self, data, n):
        rep = data.draw(rep_multisets(n, max_size=4, max_count=1))
        self.assertEqual(set(self.oracle.chi_all_orders(rep)), {self.oracle.chi(rep)})


class ChiPropertyTests(ChiIdentities, SimpleTestCase):

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_suspension(self, data):
        self.check_suspension(data, data.draw(ranks()))

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_complex_pairs(self, data):
        self.check_complex_pair(data, data.draw(ranks(max_value=4)))

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_gl_invariance(self, data):
        self.check_gl_invariance(data, data.draw(ranks()))

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_toggle_flips_sign(self, data):
        self.check_toggle_flip(data, data.draw(ranks(min_value=3)))

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_kunneth(self, data):
        self.check_kunneth(data, data.draw(ranks()))

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_order_independence(self, data):
        self.check_order_independence(data, data.draw(ranks(max_value=4)))

    def test_power_of_two_exhaustive(self):
        oracle = EulerOracle()
        for n in range(1, 5):
            chars = range(1, 1 << n)
            for mask in range(1 << len(chars)):
                S = [chi for k, chi in enumerate(chars) if mask >> k & 1]
                value = oracle.chi_of_set(n, S)
                with self.subTest(n=n, S=S):
                    self.assertLessEqual(abs(value), 1 << n)
                    KResult.from_chi(value)


class SampledRankTests(ChiIdentities, SimpleTestCase):
    """Ranks 5 and 6, where exhaustive enumeration is out of reach"""

    @settings(max_examples=SAMPLED_EXAMPLES)
    @given(st.data())
    def test_suspension(self, data):
        self.check_suspension(data, data.draw(sampled_ranks()))

    @settings(max_examples=SAMPLED_EXAMPLES)
    @given(st.data())
    def test_complex_pairs(self, data):
        self.check_complex_pair(data, data.draw(sampled_ranks()))

    @settings(max_examples=SAMPLED_EXAMPLES)
    @given(st.data())
    def test_gl_invariance(self, data):
        self.check_gl_invariance(data, data.draw(sampled_ranks()))

    @settings(max_examples=SAMPLED_EXAMPLES)
    @given(st.data())
    def test_toggle_flips_sign(self, data):
        self.check_toggle_flip(data, data.draw(sampled_ranks()))

    @settings(max_examples=SAMPLED_EXAMPLES)
    @given(st.data())
    def test_kunneth(self, data):
        self.check_kunneth(data, data.draw(sampled_ranks()))

    @settings(max_examples=SAMPLED_EXAMPLES)
    @given(st.data())
    def test_order_independence(self, data):
        self.check_order_independence(data, data.draw(sampled_ranks()))

    def test_power_of_two_sampled(self):
        for n in SAMPLED_RANKS:
            rng = random.Random(n)
            chars = list(range(1, 1 << n))
            for _ in range(SAMPLED_EXAMPLES):
                S = rng.sample(chars, rng.randint(0, 2 * n))
                value = self.oracle.chi_of_set(n, S)
                with self.subTest(n=n, S=sorted(S)):
                    self.assertLessEqual(abs(value), 1 << n)
                    KResult.from_chi(value)
