from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from gf2core.linalg import parse_bits
from ksphere.strategies import ranks, rep_multisets
from .parser import (
    BARE_MULTIPLICITY, EMPTY_TERM, MALFORMED, UNKNOWN_LETTER, RepParseError,
    format_rep, parse_rep,
)
from .representations import (
    CanonicalRep, RepMultiset, RepresentationError, canonicalize, direct_sum,
    octet, restrict_to_kernel,
)

ALPHA, BETA, GAMMA = 0b001, 0b010, 0b100


class CanonicalizeTests(SimpleTestCase):

    def test_already_reduced(self):
        rep = RepMultiset.from_characters(2, [ALPHA, BETA, ALPHA ^ BETA])
        self.assertEqual(canonicalize(rep), CanonicalRep(2, frozenset({ALPHA, BETA, ALPHA ^ BETA}), 1))

    def test_multiplicities_mod_two(self):
        rep = RepMultiset.from_counts(2, {ALPHA: 3, BETA: 2})
        self.assertEqual(canonicalize(rep), CanonicalRep(2, frozenset({ALPHA}), 1))

    def test_trivial_summand_flips_sign(self):
        rep = RepMultiset.from_counts(1, {0: 1, 1: 1})
        self.assertEqual(canonicalize(rep), CanonicalRep(1, frozenset({1}), -1))

    def test_trivial_character_not_allowed_in_S(self):
        with self.assertRaises(RepresentationError):
            CanonicalRep(2, frozenset({0, 1}))

    @given(st.data())
    def test_idempotent(self, data):
        n = data.draw(ranks())
        canonical = canonicalize(data.draw(rep_multisets(n)))
        self.assertEqual(canonicalize(canonical.as_rep()), canonical)

    @given(st.data())
    def test_commutes_with_direct_sum(self, data):
        n = data.draw(ranks())
        a = data.draw(rep_multisets(n))
        b = data.draw(rep_multisets(n))
        ca, cb, cab = canonicalize(a), canonicalize(b), canonicalize(a + b)
        self.assertEqual(cab.sign, ca.sign * cb.sign)
        self.assertEqual(cab.S, ca.S ^ cb.S)


class DirectSumTests(SimpleTestCase):

    def test_zero_is_neutral(self):
        rep = RepMultiset.from_characters(2, [ALPHA, BETA])
        self.assertEqual(direct_sum(rep, RepMultiset.empty(2)), rep)

    def test_counts_add(self):
        single = RepMultiset.from_characters(2, [ALPHA])
        self.assertEqual(direct_sum(single, single).as_dict(), {ALPHA: 2})

    def test_built_from_singletons(self):
        rep = RepMultiset.empty(3)
        for chi in (ALPHA, BETA, GAMMA, ALPHA ^ BETA, BETA ^ GAMMA):
            rep = rep + RepMultiset.from_characters(3, [chi])
        self.assertEqual(rep.dimension, 5)

    def test_rank_mismatch(self):
        with self.assertRaises(RepresentationError):
            direct_sum(RepMultiset.empty(2), RepMultiset.empty(3))

    def test_remove_one_undoes_a_summand(self):
        rep = parse_rep('2a+b+1', 2)
        self.assertEqual((rep + RepMultiset.from_characters(2, [BETA])).remove_one(BETA), rep)
        self.assertEqual(rep.remove_one(ALPHA).as_dict(), {0: 1, ALPHA: 1, BETA: 1})
        self.assertEqual(rep.remove_one(0).dimension, 3)

    def test_remove_missing_summand(self):
        with self.assertRaises(RepresentationError):
            parse_rep('a', 2).remove_one(BETA)


class RestrictToKernelTests(SimpleTestCase):

    def test_generators_restrict_to_sign_character(self):
        rep = RepMultiset.from_characters(2, [ALPHA, BETA])
        restricted = restrict_to_kernel(rep, ALPHA ^ BETA)
        self.assertEqual(restricted, RepMultiset.from_counts(1, {1: 2}))

    def test_three_generators_give_hard_pattern(self):
        rep = RepMultiset.from_characters(3, [ALPHA, BETA, GAMMA])
        restricted = restrict_to_kernel(rep, ALPHA ^ BETA ^ GAMMA)
        self.assertEqual(restricted.n, 2)
        self.assertEqual(set(restricted.characters()), {0b01, 0b10, 0b11})

    def test_empty(self):
        self.assertEqual(restrict_to_kernel(RepMultiset.empty(3), GAMMA), RepMultiset.empty(2))

    @given(st.data())
    def test_dimension_preserved(self, data):
        n = data.draw(ranks())
        rep = data.draw(rep_multisets(n))
        chi = data.draw(st.integers(1, (1 << n) - 1))
        self.assertEqual(restrict_to_kernel(rep, chi).dimension, rep.dimension)


class OctetTests(SimpleTestCase):

    def test_full_rank_three(self):
        self.assertEqual(octet(ALPHA, BETA, GAMMA), frozenset(range(1, 8)))

    def test_dependent_triple(self):
        with self.assertRaises(RepresentationError):
            octet(ALPHA, BETA, ALPHA ^ BETA)


class ParseRepTests(SimpleTestCase):

    def test_hard_case(self):
        rep = parse_rep('a+b+ab', 2)
        self.assertEqual(rep.as_dict(), {parse_bits('10'): 1, parse_bits('01'): 1, parse_bits('11'): 1})

    def test_trivial_term(self):
        self.assertEqual(parse_rep('1+a+b+ab', 2).count(0), 1)

    def test_full_product_term(self):
        rep = parse_rep('a + b + c + abc', 3)
        self.assertEqual(rep.characters(), [ALPHA, BETA, GAMMA, ALPHA ^ BETA ^ GAMMA])

    def test_multiplicity_prefix(self):
        self.assertEqual(parse_rep('2ab+3c', 3).as_dict(), {ALPHA ^ BETA: 2, GAMMA: 3})

    def test_empty_expression(self):
        self.assertEqual(parse_rep('', 2), RepMultiset.empty(2))

    def test_errors_carry_reason_and_position(self):
        cases = [
            ('a+c', 2, UNKNOWN_LETTER, 2),
            ('a++b', 2, EMPTY_TERM, 2),
            ('a+', 2, EMPTY_TERM, 2),
            ('a*b', 2, MALFORMED, 1),
            ('a+2', 2, BARE_MULTIPLICITY, 2),
        ]
        for expr, n, reason, position in cases:
            with self.subTest(expr=expr):
                with self.assertRaises(RepParseError) as ctx:
                    parse_rep(expr, n)
                self.assertEqual(ctx.exception.reason, reason)
                self.assertEqual(ctx.exception.position, position)

    def test_print_then_parse(self):
        rep = RepMultiset.from_counts(3, {0: 2, ALPHA: 1, BETA ^ GAMMA: 3})
        self.assertEqual(format_rep(rep), '1+1+a+3bc')
        self.assertEqual(parse_rep(format_rep(rep), 3), rep)

    @given(st.data())
    def test_round_trip(self, data):
        n = data.draw(ranks())
        rep = data.draw(rep_multisets(n))
        self.assertEqual(parse_rep(format_rep(rep), n), rep)
