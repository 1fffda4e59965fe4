from itertools import combinations

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from gf2core.linalg import rank
from ksphere.strategies import PROPERTY_EXAMPLES, ranks, rep_multisets
from repmodel.parser import parse_rep
from repmodel.representations import RepMultiset, octet
from .polynomials import Lambda2Class, TruncPoly
from .services import (
    CharacteristicClassService, bockstein_w2, is_spinc, spin_octet_is_spin, sw_total, w_3, w_k,
)

U = parse_rep('1+a+b+c+ab+ac+bc+abc', 3)


def poly(n, *monomials):
    return TruncPoly(n, frozenset(monomials))


def shift_summand(i, j, n):
    a, b = 1 << (i - 1), 1 << (j - 1)
    return RepMultiset.from_characters(n, [0, a, b, a ^ b])


class TruncPolyTests(SimpleTestCase):

    def test_square_of_linear_form(self):
        x = TruncPoly.linear(0b11, 2)
        self.assertEqual(x * x, poly(2, (1, 1), (2, 2)))

    def test_truncation(self):
        x = TruncPoly.linear(0b1, 1)
        self.assertEqual(x * x * x * x, poly(1))

    def test_format(self):
        self.assertEqual(poly(2, (1, 2), (1, 1), (), (1, 1, 2)).format(), "1 + x1^2 + x1 x2 + x1^2 x2")
        self.assertEqual(poly(2).format(), "0")

    def test_bad_pair(self):
        with self.assertRaises(ValueError):
            Lambda2Class(2, frozenset({(2, 1)}))
        with self.assertRaises(ValueError):
            Lambda2Class(2, frozenset({(1, 3)}))


class StiefelWhitneyTests(SimpleTestCase):

    def test_spin_octet(self):
        total = sw_total(U)
        self.assertTrue(total.degree(1).is_zero())
        self.assertTrue(total.degree(2).is_zero())
        self.assertTrue(w_3(U).is_zero())

    def test_shift_summand(self):
        self.assertEqual(
            sw_total(parse_rep('1+a+b+ab', 2)),
            poly(2, (), (1, 1), (2, 2), (1, 2), (1, 1, 2), (1, 2, 2)),
        )

    def test_multiplicity_repeats_with_period_four(self):
        for k in (1, 2, 3):
            with self.subTest(k=k):
                huge = parse_rep(f'{10 ** 9 + k}abc+{10 ** 6 + k}ab+{4 * 10 ** 8 + k}c', 3)
                self.assertEqual(sw_total(huge), sw_total(parse_rep(f'{k}abc+{k}ab+{k}c', 3)))
        self.assertEqual(sw_total(parse_rep('4a+8b', 2)), TruncPoly.one(2))

    def test_single_character(self):
        self.assertEqual(sw_total(parse_rep('a', 2)), poly(2, (), (1,)))

    def test_w2_of_shift_summand(self):
        self.assertEqual(w_k(parse_rep('1+a+b+ab', 2), 2), poly(2, (1, 1), (2, 2), (1, 2)))

    def test_complex_pair_has_no_w1(self):
        self.assertTrue(w_k(parse_rep('2a', 1), 1).is_zero())

    def test_degree_out_of_range(self):
        with self.assertRaises(ValueError):
            w_k(U, 4)

    @settings(max_examples=PROPERTY_EXAMPLES)
    @given(st.data())
    def test_multiplicative(self, data):
        n = data.draw(ranks(max_value=4))
        a = data.draw(rep_multisets(n, max_size=4))
        b = data.draw(rep_multisets(n, max_size=4))
        self.assertEqual(sw_total(a + b), sw_total(a) * sw_total(b))


class BocksteinTests(SimpleTestCase):

    def test_shift_summands(self):
        for n in range(2, 5):
            for i, j in combinations(range(1, n + 1), 2):
                with self.subTest(n=n, pair=(i, j)):
                    rep = shift_summand(i, j, n)
                    self.assertEqual(bockstein_w2(rep), Lambda2Class(n, frozenset({(i, j)})))
                    self.assertFalse(is_spinc(rep))

    def test_spin_octet(self):
        self.assertTrue(bockstein_w2(U).is_zero())

    def test_empty(self):
        self.assertEqual(bockstein_w2(RepMultiset.empty(3)), Lambda2Class(3))

    def test_format(self):
        self.assertEqual(bockstein_w2(parse_rep('1+a+b+ab', 3)).format(), "b(x1 x2)")

    @given(st.data())
    def test_doubled_representation(self, data):
        n = data.draw(ranks(max_value=4))
        rep = data.draw(rep_multisets(n, max_size=4))
        self.assertTrue(bockstein_w2(rep + rep).is_zero())
        self.assertTrue(is_spinc(rep + rep))


class SpinOctetTests(SimpleTestCase):

    def test_every_independent_triple(self):
        for n in range(3, 5):
            chars = range(1, 1 << n)
            for a, b, c in combinations(chars, 3):
                if rank([a, b, c], n) != 3:
                    continue
                with self.subTest(n=n, triple=(a, b, c)):
                    self.assertTrue(spin_octet_is_spin(a, b, c, n))
                    bundle = RepMultiset.from_characters(n, [0, *octet(a, b, c)])
                    self.assertTrue(is_spinc(bundle))
                    self.assertTrue(w_3(bundle).is_zero())

    def test_summary(self):
        summary = CharacteristicClassService().summary(parse_rep('1+a+b+ab', 2))
        self.assertEqual(summary, {
            'w1': '0',
            'w2': 'x1^2 + x1 x2 + x2^2',
            'w3': 'x1^2 x2 + x1 x2^2',
            'beta_w2': 'b(x1 x2)',
            'spinc': 'no',
        })
