from dataclasses import replace
from itertools import combinations
from unittest import mock

from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from euler_oracle.results import KResult
from euler_oracle.services import get_oracle
from ksphere.strategies import character_sets, rep_multisets
from repmodel.parser import parse_rep
from repmodel.representations import CanonicalRep, canonicalize
from .hypergraph import (
    HARD_TRIANGLE, MARKED_EDGE, BaseCase, Component, Hypergraph, SpinToggle,
)
from .serializers import TraceSerializer
from .services import (
    DegreeReductionError, DependentTripleError, HypergraphReducer, InvariantViolation,
    ReductionError, UnrecognizedPattern, compare_engines, reduce,
)
from .trace import CheckpointMismatch, InvalidMove, Trace, TraceFormatError, replay_trace

ALPHA, BETA, GAMMA = 0b001, 0b010, 0b100
AB, AC, BC, ABC = ALPHA ^ BETA, ALPHA ^ GAMMA, BETA ^ GAMMA, ALPHA ^ BETA ^ GAMMA

HARD = frozenset({ALPHA, BETA, AB})
CUBE_DIAGONAL = frozenset({ALPHA, BETA, GAMMA, ABC})
PATH = frozenset({ALPHA, BETA, GAMMA, AB, BC})
OCTET = frozenset(range(1, 8))


def chi_signed(h):
    return h.sign * get_oracle().chi_of_set(h.n, h.characters())


class BuildHypergraphTests(SimpleTestCase):

    def setUp(self):
        self.reducer = HypergraphReducer(debug_chi=False)

    def test_hard_case(self):
        h = self.reducer.build_hypergraph(CanonicalRep(2, HARD))
        self.assertEqual(h.basis, [ALPHA, BETA])
        self.assertEqual(h.sets, {0b01, 0b10, 0b11})

    def test_generators_plus_full_product(self):
        h = self.reducer.build_hypergraph(CanonicalRep(3, CUBE_DIAGONAL))
        self.assertEqual(h.p, 3)
        self.assertEqual(h.sets, {0b001, 0b010, 0b100, 0b111})

    def test_empty(self):
        h = self.reducer.build_hypergraph(CanonicalRep(3, frozenset()))
        self.assertEqual((h.p, h.sets), (0, set()))

    def test_sign_is_copied(self):
        h = self.reducer.build_hypergraph(CanonicalRep(2, HARD, -1))
        self.assertEqual(h.sign, -1)


class SpinToggleTests(SimpleTestCase):

    def setUp(self):
        self.reducer = HypergraphReducer(debug_chi=False)

    def graph(self, S):
        return self.reducer.build_hypergraph(CanonicalRep(3, S))

    def test_all_nonzero_characters_vanish(self):
        h = self.reducer.spin_toggle(self.graph(OCTET), ALPHA, BETA, GAMMA)
        self.assertEqual(h.characters(), frozenset())
        self.assertEqual(h.sign, -1)

    def test_octet_leaves_two_characters(self):
        h = self.reducer.spin_toggle(self.graph(PATH), ALPHA, BETA, GAMMA)
        self.assertEqual(h.characters(), {AC, ABC})
        self.assertEqual(h.sign, -1)

    def test_involution(self):
        h = self.graph(CUBE_DIAGONAL)
        self.reducer.spin_toggle(h, ALPHA, BC, GAMMA)
        self.reducer.spin_toggle(h, ALPHA, BC, GAMMA)
        self.assertEqual((h.characters(), h.sign), (CUBE_DIAGONAL, 1))

    def test_dependent_triple(self):
        with self.assertRaises(DependentTripleError):
            self.reducer.spin_toggle(self.graph(CUBE_DIAGONAL), ALPHA, BETA, AB)

    def test_basis_extended(self):
        h = Hypergraph(3, [ALPHA], {0b1})
        self.reducer.spin_toggle(h, ALPHA, BETA, GAMMA)
        self.assertEqual(h.basis, [ALPHA, BETA, GAMMA])
        self.assertEqual(h.characters(), {BETA, GAMMA, AB, AC, BC, ABC})

    def test_preserves_signed_chi(self):
        h = self.graph(PATH)
        before = chi_signed(h)
        self.reducer.spin_toggle(h, AB, BC, GAMMA)
        self.assertEqual(chi_signed(h), before)


class ToGraphTests(SimpleTestCase):

    def setUp(self):
        self.reducer = HypergraphReducer(debug_chi=False)

    def test_full_product_becomes_pairwise_sums(self):
        h = self.reducer.to_graph(self.reducer.build_hypergraph(CanonicalRep(3, CUBE_DIAGONAL)))
        self.assertEqual(h.characters(), {AB, AC, BC})
        self.assertEqual(self.reducer.moves[1:], [SpinToggle(ALPHA, BETA, GAMMA)])

    def test_graph_unchanged(self):
        h = self.reducer.build_hypergraph(CanonicalRep(3, PATH))
        self.reducer.to_graph(h)
        self.assertEqual(h.characters(), PATH)
        self.assertEqual(len(self.reducer.moves), 1)

    def test_four_vertex_set(self):
        h = Hypergraph(4, [1, 2, 4, 8], {0b1111})
        before = chi_signed(h)
        self.reducer.to_graph(h)
        self.assertEqual(self.reducer.moves, [
            SpinToggle(1, 2, 12), SpinToggle(1, 4, 8), SpinToggle(2, 4, 8),
        ])
        self.assertTrue(h.is_graph())
        self.assertEqual(h.characters(), {3, 5, 6, 9, 10, 12})
        self.assertEqual(chi_signed(h), before)


class ReduceVertexTests(SimpleTestCase):

    def setUp(self):
        self.reducer = HypergraphReducer(debug_chi=False)

    def test_star(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b011, 0b101})
        before = chi_signed(h)
        self.reducer.reduce_vertex(h, 0)
        self.assertEqual(h.degree(0), 1)
        self.assertEqual(chi_signed(h), before)

    def test_low_degree_untouched(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b001, 0b011})
        self.reducer.reduce_vertex(h, 0)
        self.assertEqual(h.sets, {0b001, 0b011})
        self.assertEqual(self.reducer.moves, [])

    def test_needs_a_graph(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b111})
        with self.assertRaises(ReductionError):
            self.reducer.reduce_vertex(h, 0)

    def test_failed_claim_is_reported(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b011, 0b101})
        with mock.patch.object(self.reducer, 'replace_vertex', side_effect=lambda h, w, u: h):
            with self.assertLogs('reducer.services', level='ERROR'):
                with self.assertRaises(DegreeReductionError) as ctx:
                    self.reducer.reduce_vertex(h, 0)
        self.assertEqual(ctx.exception.vertex, 0)
        self.assertEqual(ctx.exception.hypergraph.sets, {0b011, 0b101})

    def test_chain_splits_off(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b001, 0b011, 0b110})
        before = chi_signed(h)
        self.assertEqual(self.reducer.isolate_vertex(h, 0), (0, 1))
        self.assertEqual(h.sets, {0b001, 0b011, 0b010, 0b100})
        self.assertEqual(chi_signed(h), before)

    def test_unmarked_edge_becomes_mark(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b011, 0b110})
        self.assertEqual(self.reducer.isolate_vertex(h, 0), (0,))
        self.assertEqual(h.sets, {0b001, 0b110})


class SplitAndEvaluateTests(SimpleTestCase):

    def setUp(self):
        self.reducer = HypergraphReducer(debug_chi=False)

    def test_two_components(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b001, 0b011, 0b100})
        components, free_rank = self.reducer.split_components(h)
        self.assertEqual([c.rank for c in components], [2, 1])
        self.assertEqual(components[0].sets, {0b01, 0b11})
        self.assertEqual(free_rank, 0)

    def test_empty_graph(self):
        self.assertEqual(self.reducer.split_components(Hypergraph(3)), ([], 3))

    def test_unused_vertices_are_free(self):
        h = Hypergraph(3, [ALPHA, BETA, GAMMA], {0b011})
        components, free_rank = self.reducer.split_components(h)
        self.assertEqual((len(components), free_rank), (1, 1))

    def test_base_cases(self):
        h = Hypergraph(2, [ALPHA, BETA], {0b01, 0b10, 0b11})
        cases = [
            (Component(0b11, frozenset({0b01, 0b10, 0b11})), KResult(0, 1)),
            (Component(0b11, frozenset({0b11})), KResult(1, 0)),
            (Component(0b11, frozenset({0b10, 0b11})), KResult(0, 0)),
            (Component(0b01, frozenset({0b1})), KResult(0, 0)),
        ]
        for component, expected in cases:
            with self.subTest(component=component):
                self.assertEqual(self.reducer.eval_component(h, component), expected)

    def test_unrecognized(self):
        with self.assertRaises(UnrecognizedPattern):
            self.reducer.eval_component(Hypergraph(2), Component(0b11, frozenset({0b01})))


class ReduceTests(SimpleTestCase):

    def test_hard_case(self):
        result, trace = reduce(parse_rep('a+b+ab', 2))
        self.assertEqual(result, KResult(0, 1))
        self.assertEqual(trace.toggle_count, 0)
        self.assertEqual([m.pattern for m in trace.moves if isinstance(m, BaseCase)], [HARD_TRIANGLE])

    def test_all_nonzero_characters(self):
        self.assertEqual(reduce(CanonicalRep(3, OCTET))[0], KResult(3, 1))

    def test_generators_and_two_sums(self):
        result, trace = reduce(CanonicalRep(3, PATH))
        self.assertEqual(result, KResult(1, 1))
        self.assertIn(MARKED_EDGE, [m.pattern for m in trace.moves if isinstance(m, BaseCase)])

    def test_generators_plus_full_product(self):
        self.assertEqual(reduce(CanonicalRep(3, CUBE_DIAGONAL))[0], KResult(1, 0))

    def test_trivial_summand(self):
        self.assertEqual(reduce(parse_rep('1+a+b+ab', 2))[0], KResult(0, 0))

    def test_deterministic(self):
        self.assertEqual(reduce(CanonicalRep(4, frozenset({3, 5, 6, 9, 15})))[1],
                         reduce(CanonicalRep(4, frozenset({3, 5, 6, 9, 15})))[1])

    def test_invariant_violation(self):
        oracle = mock.Mock()
        oracle.chi_of_set.side_effect = [-1, -1, 5]
        reducer = HypergraphReducer(debug_chi=True, oracle=oracle)
        with self.assertLogs('reducer.services', level='ERROR'):
            with self.assertRaises(InvariantViolation) as ctx:
                reducer.reduce(CanonicalRep(2, HARD))
        self.assertEqual((ctx.exception.index, ctx.exception.expected, ctx.exception.got), (1, -1, 5))


class EngineAgreementTests(SimpleTestCase):

    def test_exhaustive_small_ranks(self):
        for n in range(1, 4):
            chars = range(1, 1 << n)
            for size in range(len(chars) + 1):
                for S in combinations(chars, size):
                    for sign in (1, -1):
                        canonical = CanonicalRep(n, frozenset(S), sign)
                        with self.subTest(n=n, S=S, sign=sign):
                            result, trace = compare_engines(canonical, debug_chi=True)
                            self.assertEqual(replay_trace(canonical, trace), result)

    @given(st.data())
    def test_random_rank_four(self, data):
        S = data.draw(character_sets(4, max_size=10))
        result, trace = compare_engines(CanonicalRep(4, S), debug_chi=True)
        self.assertEqual(replay_trace(CanonicalRep(4, S), trace), result)

    @given(st.data())
    def test_random_rank_five(self, data):
        rep = data.draw(rep_multisets(5, max_size=10))
        result, trace = compare_engines(rep)
        self.assertEqual(replay_trace(rep, trace), result)


class TraceCodecTests(SimpleTestCase):

    def test_text_form(self):
        _, trace = reduce(CanonicalRep(2, HARD), debug_chi=True)
        self.assertEqual(trace.to_text(), (
            "trace n=2 sign=+1 S=1,2,3\n"
            "move rebuild 1 2 chi=-1\n"
            "move split 3 chi=-1\n"
            "move base 3 pattern=hard_triangle m=0 eps=1 chi=-1\n"
            "result m=0 eps=1\n"
        ))

    def test_text_round_trip(self):
        for debug_chi in (False, True):
            _, trace = reduce(CanonicalRep(3, CUBE_DIAGONAL), debug_chi=debug_chi)
            self.assertEqual(Trace.from_text(trace.to_text()), trace)

    def test_json_round_trip(self):
        _, trace = reduce(CanonicalRep(3, PATH, -1), debug_chi=True)
        serializer = TraceSerializer(data=TraceSerializer(trace).data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), trace)

    def test_json_rejects_unknown_move(self):
        payload = {
            'n': 1, 'sign': 1, 'S': ['1'],
            'moves': [{'kind': 'teleport', 'operands': []}],
            'result': {'m': 0, 'epsilon': 0},
        }
        serializer = TraceSerializer(data=payload)
        self.assertFalse(serializer.is_valid())
        self.assertIn('moves', serializer.errors)

    def test_json_base_case_needs_pattern(self):
        payload = {
            'n': 1, 'sign': 1, 'S': ['1'],
            'moves': [{'kind': 'base', 'operands': ['1'], 'm': 0, 'epsilon': 0}],
            'result': {'m': 0, 'epsilon': 0},
        }
        self.assertFalse(TraceSerializer(data=payload).is_valid())

    def test_malformed_text(self):
        for text in (
            "trace n=2\nresult m=0 eps=1\n",
            "trace n=2 sign=+1 S=-\nmove warp 1\nresult m=2 eps=0\n",
            "trace n=2 sign=+1 S=-\nmove split -\n",
            "result m=0 eps=0\n",
        ):
            with self.subTest(text=text):
                with self.assertRaises(TraceFormatError):
                    Trace.from_text(text)


class ReplayTests(SimpleTestCase):

    def setUp(self):
        self.rep = CanonicalRep(3, CUBE_DIAGONAL)
        self.result, self.trace = reduce(self.rep, debug_chi=True)

    def test_replay(self):
        self.assertEqual(replay_trace(self.rep, self.trace), KResult(1, 0))

    def test_replay_from_multiset(self):
        rep = parse_rep('a+b+c+abc+2ab', 3)
        self.assertEqual(replay_trace(rep, reduce(rep)[1]), KResult(1, 0))

    def test_dependent_toggle(self):
        index = next(i for i, m in enumerate(self.trace.moves) if isinstance(m, SpinToggle))
        moves = list(self.trace.moves)
        moves[index] = SpinToggle(ALPHA, BETA, AB)
        with self.assertRaises(InvalidMove) as ctx:
            replay_trace(self.rep, replace(self.trace, moves=tuple(moves)))
        self.assertEqual(ctx.exception.index, index)

    def test_corrupted_checkpoint(self):
        checkpoints = list(self.trace.checkpoints)
        checkpoints[2] += 2
        with self.assertRaises(CheckpointMismatch) as ctx:
            replay_trace(self.rep, replace(self.trace, checkpoints=tuple(checkpoints)))
        self.assertEqual(ctx.exception.index, 2)
        self.assertEqual(ctx.exception.expected, self.trace.checkpoints[2])

    def test_wrong_result(self):
        with self.assertRaises(InvalidMove) as ctx:
            replay_trace(self.rep, replace(self.trace, result=KResult(2, 0)))
        self.assertEqual(ctx.exception.index, len(self.trace.moves))

    def test_wrong_base_case(self):
        moves = [
            replace(m, pattern=MARKED_EDGE, epsilon=0) if isinstance(m, BaseCase) else m
            for m in self.trace.moves
        ]
        with self.assertRaises(InvalidMove):
            replay_trace(self.rep, replace(self.trace, moves=tuple(moves)))

    def test_missing_split(self):
        moves = tuple(m for m in self.trace.moves if not isinstance(m, BaseCase))[:-1]
        with self.assertRaises(InvalidMove) as ctx:
            replay_trace(self.rep, Trace(self.rep, moves, self.result))
        self.assertEqual(ctx.exception.index, len(moves))

    def test_other_representation(self):
        with self.assertRaises(InvalidMove):
            replay_trace(canonicalize(parse_rep('a+b', 3)), self.trace)
