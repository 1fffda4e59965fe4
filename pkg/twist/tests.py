from itertools import combinations

from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from charclass.services import NotOrientableError
from euler_oracle.results import KResult
from euler_oracle.services import get_oracle
from ksphere.strategies import ranks, rep_multisets
from repmodel.parser import parse_rep
from repmodel.representations import RepMultiset, canonicalize
from .services import BOTH, REDUCE, TwistService, shift_rep, twist_of_bundle, twisted_k_groups
from .twists import Twist, TwistParseError, parse_twist

PAIRS_3 = [(1, 2), (1, 3), (2, 3)]


def all_twists(n):
    pairs = list(combinations(range(1, n + 1), 2))
    return [
        Twist(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))
        for mask in range(1 << len(pairs))
    ]


class ParseTwistTests(SimpleTestCase):

    def test_pairs(self):
        self.assertEqual(parse_twist('1-2,2-3', 3), Twist(3, frozenset({(1, 2), (2, 3)})))

    def test_empty(self):
        self.assertTrue(parse_twist('', 3).is_trivial())

    def test_format(self):
        self.assertEqual(parse_twist('2-3, 1-2', 3).format(), '1-2,2-3')

    def test_rejected(self):
        for text in ('2-1', '1-1', '1-4', '0-2', '1+2', 'a-b', '1-2,1-2'):
            with self.subTest(text=text):
                with self.assertRaises(TwistParseError):
                    parse_twist(text, 3)

    def test_compose(self):
        first, second = parse_twist('1-2,2-3', 3), parse_twist('2-3,1-3', 3)
        self.assertEqual(first.compose(second), parse_twist('1-2,1-3', 3))


class ShiftRepTests(SimpleTestCase):

    def test_trivial_twist(self):
        rep = parse_rep('a+bc', 3)
        self.assertEqual(shift_rep(rep, Twist(3)), rep)

    def test_single_pair(self):
        shifted = shift_rep(RepMultiset.empty(2), Twist(2, frozenset({(1, 2)})))
        self.assertEqual(shifted.as_dict(), {0: 1, 0b01: 1, 0b10: 1, 0b11: 1})

    def test_dimension(self):
        rep = parse_rep('a+b', 3)
        twist = parse_twist('1-2,1-3,2-3', 3)
        self.assertEqual(shift_rep(rep, twist).dimension, rep.dimension + 12)

    def test_double_shift_cancels(self):
        rep = parse_rep('a+b+abc', 3)
        twist = parse_twist('1-2,2-3', 3)
        self.assertEqual(canonicalize(shift_rep(shift_rep(rep, twist), twist)), canonicalize(rep))


class TwistedKGroupsTests(SimpleTestCase):

    def test_single_pair_on_trivial_bundle(self):
        twist = Twist(2, frozenset({(1, 2)}))
        self.assertEqual(twisted_k_groups(RepMultiset.empty(2), twist), KResult(0, 0))

    def test_trivial_twist(self):
        rep = parse_rep('a+b+ab', 2)
        self.assertEqual(twisted_k_groups(rep, Twist(2)), get_oracle().k_groups(rep))

    def test_engines_agree(self):
        rep = parse_rep('a+c+abc', 3)
        twist = parse_twist('1-2,2-3', 3)
        service = TwistService()
        expected = service.twisted_k_groups(rep, twist)
        self.assertEqual(service.twisted_k_groups(rep, twist, REDUCE), expected)
        self.assertEqual(service.twisted_k_groups(rep, twist, BOTH), expected)

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            twisted_k_groups(RepMultiset.empty(2), Twist(2), 'guess')

    def test_composition_exhaustive(self):
        oracle = get_oracle()
        twists = all_twists(3)
        for size in range(5):
            for S in combinations(range(1, 8), size):
                rep = RepMultiset.from_characters(3, S)
                for first in twists:
                    shifted = shift_rep(rep, first)
                    for second in twists:
                        with self.subTest(S=S, first=first.format(), second=second.format()):
                            self.assertEqual(
                                twisted_k_groups(shifted, second),
                                twisted_k_groups(rep, first.compose(second)),
                            )
                    self.assertEqual(twisted_k_groups(shifted, first), oracle.k_groups(rep))

    @given(st.data())
    def test_degree_shift(self, data):
        n = data.draw(ranks(min_value=2, max_value=4))
        i, j = data.draw(st.sampled_from(list(combinations(range(1, n + 1), 2))))
        rep = data.draw(rep_multisets(n, max_size=5))
        a, b = 1 << (i - 1), 1 << (j - 1)
        untwisted = get_oracle().k_groups(rep + RepMultiset.from_characters(n, [a, b, a ^ b]))
        twisted = twisted_k_groups(rep, Twist(n, frozenset({(i, j)})))
        self.assertEqual(twisted, KResult(untwisted.m, 1 - untwisted.epsilon))


class TwistOfBundleTests(SimpleTestCase):

    def test_shift_summand(self):
        self.assertEqual(twist_of_bundle(parse_rep('1+a+b+ab', 2)), Twist(2, frozenset({(1, 2)})))

    def test_spin_octet(self):
        self.assertTrue(twist_of_bundle(parse_rep('1+a+b+c+ab+ac+bc+abc', 3)).is_trivial())

    def test_not_orientable(self):
        with self.assertRaises(NotOrientableError):
            twist_of_bundle(parse_rep('a', 2))

    def test_shift_realizes_twist(self):
        for i, j in PAIRS_3:
            with self.subTest(pair=(i, j)):
                summand = TwistService.shift_summand(i, j, 3)
                self.assertEqual(twist_of_bundle(summand).pairs, {(i, j)})
