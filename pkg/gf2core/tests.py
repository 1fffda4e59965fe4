from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from ksphere.strategies import invertible_matrices, ranks, vectors
from .linalg import (
    F2Matrix, GF2Error, apply_dual_map, coordinates_in_basis, format_bits,
    gl_group, kernel_basis, pairing, parse_bits, rank, restrict_char,
    span_basis, transvection,
)


def b(text):
    return parse_bits(text)


class RankTests(SimpleTestCase):

    def test_empty_span(self):
        self.assertEqual(rank([], 3), 0)

    def test_dependent_third_vector(self):
        self.assertEqual(rank([b('100'), b('010'), b('110')], 3), 2)

    def test_standard_basis(self):
        self.assertEqual(rank([b('100'), b('010'), b('001')], 3), 3)

    def test_width_overflow_rejected(self):
        with self.assertRaises(GF2Error):
            rank([], 17)
        with self.assertRaises(GF2Error):
            rank([b('111')], 2)


class SpanBasisTests(SimpleTestCase):

    def test_pairwise_sums(self):
        basis = span_basis([b('110'), b('011'), b('101')], 3)
        self.assertEqual([format_bits(v, 3) for v in basis], ['110', '011'])

    def test_empty(self):
        self.assertEqual(span_basis([], 2), [])

    def test_single(self):
        self.assertEqual(span_basis([b('111')], 3), [b('111')])

    def test_independent_input_is_kept_in_order(self):
        chars = [b('100'), b('010'), b('001')]
        self.assertEqual(span_basis(chars + [b('111')], 3), chars)


class KernelTests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(kernel_basis(b('11'), 2), [b('11')])
        self.assertEqual(kernel_basis(b('10'), 2), [b('01')])
        self.assertEqual(kernel_basis(b('111'), 3), [b('110'), b('101')])

    def test_trivial_character_rejected(self):
        with self.assertRaises(GF2Error):
            kernel_basis(0, 3)

    @given(st.data())
    def test_kernel_spans_annihilator(self, data):
        n = data.draw(ranks(min_value=1, max_value=6))
        chi = data.draw(vectors(n, nonzero=True))
        kernel = kernel_basis(chi, n)
        self.assertEqual(len(kernel), n - 1)
        self.assertEqual(rank(kernel, n), n - 1)
        self.assertTrue(all(pairing(chi, g) == 0 for g in kernel))


class RestrictionTests(SimpleTestCase):

    def test_sign_character_of_kernel(self):
        self.assertEqual(restrict_char(b('10'), kernel_basis(b('11'), 2)), 1)

    def test_character_trivial_on_own_kernel(self):
        self.assertEqual(restrict_char(b('11'), kernel_basis(b('11'), 2)), 0)

    def test_explicit_kernel(self):
        restricted = restrict_char(b('110'), [b('110'), b('101')])
        self.assertEqual(format_bits(restricted, 2), '01')


class DualMapTests(SimpleTestCase):

    def test_identity(self):
        for chi in range(1, 8):
            self.assertEqual(apply_dual_map(F2Matrix.identity(3), chi), chi)

    def test_swap(self):
        swap = F2Matrix(2, (b('01'), b('10')))
        self.assertEqual(format_bits(apply_dual_map(swap, b('10')), 2), '01')

    def test_singular_map_rejected(self):
        with self.assertRaises(GF2Error):
            apply_dual_map(F2Matrix(2, (b('11'), b('11'))), b('10'))

    def test_gl_orders(self):
        self.assertEqual(len(gl_group(2)), 6)
        self.assertEqual(len(gl_group(3)), 168)

    @given(st.data())
    def test_inverse_undoes_map(self, data):
        n = data.draw(ranks(min_value=1, max_value=5))
        A = data.draw(invertible_matrices(n))
        chi = data.draw(vectors(n))
        self.assertEqual(apply_dual_map(A.inverse(), apply_dual_map(A, chi)), chi)
        self.assertEqual(A.compose(A.inverse()), F2Matrix.identity(n))

    @given(st.data())
    def test_rank_is_gl_invariant(self, data):
        n = data.draw(ranks(min_value=1, max_value=5))
        A = data.draw(invertible_matrices(n))
        xs = data.draw(st.lists(vectors(n), max_size=6))
        self.assertEqual(rank([A.apply(x) for x in xs], n), rank(xs, n))

    def test_transvection_is_invertible(self):
        t = transvection(3, 0, 2)
        self.assertTrue(t.is_invertible)
        self.assertEqual(t.compose(t), F2Matrix.identity(3))


class CoordinateTests(SimpleTestCase):

    def test_standard_basis(self):
        basis = [b('100'), b('010'), b('001')]
        self.assertEqual(coordinates_in_basis(b('110'), basis), {0, 1})
        self.assertEqual(coordinates_in_basis(basis[2], basis), {2})

    def test_outside_span(self):
        with self.assertRaises(GF2Error):
            coordinates_in_basis(b('111'), [b('110'), b('011')])

    def test_replaced_basis_vector(self):
        # v, w, u with w replaced by w' = w + u: v + w + u becomes v + w'
        v, w, u = b('100'), b('010'), b('001')
        self.assertEqual(coordinates_in_basis(v ^ w ^ u, [v, w ^ u, u]), {0, 1})

    @given(st.data())
    def test_inverse_to_subset_sum(self, data):
        n = data.draw(ranks(min_value=1, max_value=6))
        basis = span_basis(data.draw(st.lists(vectors(n), max_size=n)), n)
        subset = data.draw(st.sets(st.integers(0, max(len(basis) - 1, 0)))) if basis else set()
        chi = 0
        for t in subset:
            chi ^= basis[t]
        self.assertEqual(coordinates_in_basis(chi, basis), subset)
