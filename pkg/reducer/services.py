"""
Hypergraph reducer: computes (m, epsilon) by rewriting the set system of V
until it falls apart into marked vertices and edges, recording every move.

Moves preserve sign * chi_n(S):
  - a spin toggle adds the octet of (a, b, c) plus a trivial summand, whose
    K-theory Thom class shifts degree by one;
  - a base change re-expresses S in another basis of its span;
  - a split evaluates disjoint components through the Kunneth theorem.
"""
import logging
from typing import List, Optional, Tuple, Union

from django.conf import settings

from euler_oracle.results import KResult
from euler_oracle.services import EulerOracle, get_oracle
from gf2core.linalg import (
    F2Vec, CoordinateSystem, bits_of, mask_of, rank, span_basis, transvection,
)
from repmodel.representations import CanonicalRep, RepMultiset, canonicalize
from .hypergraph import (
    BASE_CASES, BaseCase, BaseChange, Component, Hypergraph, KunnethSplit, Move,
    Rebuild, SpinToggle, compress, extend_basis, match_pattern,
)
from .trace import Trace

logger = logging.getLogger(__name__)


class ReductionError(ValueError):
    """A reduction step could not be carried out as claimed"""


class DependentTripleError(ReductionError):
    def __init__(self, a: F2Vec, b: F2Vec, c: F2Vec):
        self.triple = (a, b, c)
        super().__init__(f"Toggle triple {a:#x}, {b:#x}, {c:#x} is dependent")


class DegreeReductionError(ReductionError):
    """A vertex step did not lower the degree by one; carries the counterexample"""

    def __init__(self, hypergraph: Hypergraph, vertex: int, message: str):
        self.hypergraph = hypergraph
        self.vertex = vertex
        super().__init__(f"Vertex {vertex}: {message}")


class InvariantViolation(ReductionError):
    def __init__(self, index: int, expected: int, got: int):
        self.index = index
        self.expected = expected
        self.got = got
        super().__init__(f"Move {index}: sign*chi is {got}, expected {expected}")


class UnrecognizedPattern(ReductionError):
    def __init__(self, component: Component):
        self.component = component
        super().__init__(f"No base case for component {component}")


class EngineDisagreement(ReductionError):
    def __init__(self, rep, oracle_result: KResult, reducer_result: KResult):
        self.rep = rep
        self.oracle_result = oracle_result
        self.reducer_result = reducer_result
        super().__init__(f"Oracle gives {oracle_result}, reducer gives {reducer_result}")


def _card(mask: int) -> int:
    return bin(mask).count('1')


class HypergraphReducer:
    """Rewriting engine; one instance records the moves of one reduction at a time"""

    def __init__(self, debug_chi: Optional[bool] = None, oracle: Optional[EulerOracle] = None):
        if debug_chi is None:
            debug_chi = getattr(settings, 'KSPHERE_DEBUG_CHI', False)
        self.debug_chi = debug_chi
        self.oracle = oracle or get_oracle()
        self.moves: List[Move] = []
        self.checkpoints: List[Optional[int]] = []
        self._target: Optional[int] = None

    def reset(self):
        self.moves, self.checkpoints, self._target = [], [], None

    def _record(self, h: Hypergraph, move: Move):
        index = len(self.moves)
        self.moves.append(move)
        logger.debug("move %d: %s", index, move)
        if not self.debug_chi:
            self.checkpoints.append(None)
            return
        value = self.oracle.chi_of_set(h.n, h.characters())
        self.checkpoints.append(value)
        if self._target is not None and h.sign * value != self._target:
            logger.error("Invariant broken at move %d (%s): %r", index, move, h)
            raise InvariantViolation(index, self._target, h.sign * value)

    def build_hypergraph(self, rep: CanonicalRep) -> Hypergraph:
        basis = span_basis(rep.characters, rep.n)
        system = CoordinateSystem(basis)
        h = Hypergraph(rep.n, basis, {system.mask(chi) for chi in rep.S}, rep.sign)
        if self.debug_chi:
            self._target = rep.sign * self.oracle.chi_of_set(rep.n, rep.S)
        self._record(h, Rebuild(tuple(basis)))
        return h

    def spin_toggle(self, h: Hypergraph, a: F2Vec, b: F2Vec, c: F2Vec) -> Hypergraph:
        if rank([a, b, c], h.n) != 3:
            raise DependentTripleError(a, b, c)
        extend_basis(h.basis, (a, b, c))
        system = CoordinateSystem(h.basis)
        x, y, z = (system.mask(v) for v in (a, b, c))
        h.sets ^= {x, y, z, x ^ y, x ^ z, y ^ z, x ^ y ^ z}
        h.sign = -h.sign
        self._record(h, SpinToggle(a, b, c))
        return h

    def replace_vertex(self, h: Hypergraph, w: int, u: int) -> Hypergraph:
        """Base change basis[w] <- basis[w] + basis[u]"""
        h.basis[w] ^= h.basis[u]
        h.sets = {mask ^ ((mask >> w & 1) << u) for mask in h.sets}
        self._record(h, BaseChange(transvection(h.p, w, u)))
        return h

    def to_graph(self, h: Hypergraph) -> Hypergraph:
        """Toggle away every set of three or more vertices, largest first"""
        while True:
            large = [mask for mask in h.sets if _card(mask) >= 3]
            if not large:
                return h
            mask = min(large, key=lambda m: (-_card(m), bits_of(m)))
            first, second, *rest = bits_of(mask)
            self.spin_toggle(h, h.basis[first], h.basis[second], h.character(mask_of(rest)))

    def reduce_vertex(self, h: Hypergraph, v: int, exclude: Optional[int] = None) -> Hypergraph:
        """Lower deg(v) to at most one, leaving the sets of ``exclude`` alone"""
        if not h.is_graph():
            raise ReductionError("reduce_vertex needs a graph")
        protected = h.sets_containing(exclude) if exclude is not None else None
        while True:
            others = [x for x in h.neighbours(v) if x != exclude]
            if len(others) < 2:
                return h
            w, u = others[:2]
            before = h.degree(v)
            self.spin_toggle(h, h.basis[v], h.basis[w], h.basis[u])
            self.replace_vertex(h, w, u)
            self.to_graph(h)
            self._check_degree_claim(h, v, before, exclude, protected)

    def _check_degree_claim(self, h, v, before, exclude, protected):
        problem = None
        if h.degree(v) != before - 1:
            problem = f"degree went from {before} to {h.degree(v)}"
        elif any(_card(mask) > 2 for mask in h.sets_containing(v)):
            problem = "a set of three or more vertices contains it"
        elif protected is not None and h.sets_containing(exclude) != protected:
            problem = f"the sets of vertex {exclude} changed"
        if problem:
            logger.error("Degree reduction failed at vertex %d (%s); counterexample %r", v, problem, h)
            raise DegreeReductionError(h.copy(), v, problem)

    def isolate_vertex(self, h: Hypergraph, v: int) -> Tuple[int, ...]:
        """Split v, and its neighbour if it is marked, off the rest of the graph"""
        neighbours = h.neighbours(v)
        if len(neighbours) > 1:
            raise ReductionError(f"Vertex {v} still has degree {len(neighbours)}")
        if not neighbours:
            component = (v,)
        elif not h.is_marked(v):
            self.replace_vertex(h, v, neighbours[0])
            component = (v,)
        else:
            w = neighbours[0]
            self.reduce_vertex(h, w, exclude=v)
            rest = [x for x in h.neighbours(w) if x != v]
            if rest:
                u = rest[0]
                self.spin_toggle(h, h.basis[v], h.basis[w], h.basis[u])
                self.replace_vertex(h, v, u)
            component = (v, w)

        block = mask_of(component)
        for mask in h.sets:
            if mask & block and mask & ~block:
                logger.error("Component %s is not closed in %r", component, h)
                raise DegreeReductionError(h.copy(), v, f"set {mask:#x} leaves the component")
        return component

    def split_components(self, h: Hypergraph) -> Tuple[List[Component], int]:
        if any(h.degree(v) > 1 for v in range(h.p)):
            raise ReductionError("Components can only be split at maximum degree one")
        blocks: List[int] = []
        for mask in sorted(h.sets):
            touching = [block for block in blocks if block & mask]
            merged = mask
            for block in touching:
                blocks.remove(block)
                merged |= block
            blocks.append(merged)
        blocks.sort(key=lambda block: block & -block)
        self._record(h, KunnethSplit(tuple(blocks)))
        components = [
            Component(block, frozenset(compress(mask, block) for mask in h.sets if mask & block))
            for block in blocks
        ]
        free_rank = h.n - sum(component.rank for component in components)
        return components, free_rank

    def eval_component(self, h: Hypergraph, component: Component) -> KResult:
        pattern = match_pattern(component.sets, component.rank)
        if pattern is None:
            logger.error("Unrecognized component %s in %r", component, h)
            raise UnrecognizedPattern(component)
        m, epsilon = BASE_CASES[pattern]
        self._record(h, BaseCase(pattern, component.vertices, m, epsilon))
        return KResult(m, epsilon)

    def reduce(self, rep: Union[RepMultiset, CanonicalRep]) -> Tuple[KResult, Trace]:
        canonical = rep if isinstance(rep, CanonicalRep) else canonicalize(rep)
        self.reset()
        h = self.build_hypergraph(canonical)
        bound = sum(_card(mask) for mask in h.sets) ** 2
        self.to_graph(h)

        finished = set()
        for v in range(h.p):
            if v in finished:
                continue
            self.reduce_vertex(h, v)
            finished.update(self.isolate_vertex(h, v))

        components, free_rank = self.split_components(h)
        local = [self.eval_component(h, component) for component in components]
        m = free_rank + sum(r.m for r in local)
        epsilon = ((h.sign == -1) + sum(r.epsilon for r in local)) % 2
        result = KResult(m, epsilon)

        trace = Trace(canonical, tuple(self.moves), result,
                      tuple(self.checkpoints) if self.debug_chi else ())
        if trace.toggle_count > bound:
            logger.warning("%d toggles exceed the usual bound %d for %s",
                           trace.toggle_count, bound, sorted(canonical.S))
        logger.debug("Reduced n=%d S=%s to %s in %d moves",
                     canonical.n, sorted(canonical.S), result, len(self.moves))
        return result, trace


def reduce(rep: Union[RepMultiset, CanonicalRep], debug_chi: Optional[bool] = None) -> Tuple[KResult, Trace]:
    return HypergraphReducer(debug_chi=debug_chi).reduce(rep)


def compare_engines(rep: Union[RepMultiset, CanonicalRep], oracle: Optional[EulerOracle] = None,
                    debug_chi: Optional[bool] = None) -> Tuple[KResult, Trace]:
    """Run both engines; raise EngineDisagreement if they differ"""
    oracle = oracle or get_oracle()
    canonical = rep if isinstance(rep, CanonicalRep) else canonicalize(rep)
    expected = oracle.k_groups(canonical.as_rep())
    result, trace = HypergraphReducer(debug_chi=debug_chi, oracle=oracle).reduce(canonical)
    if result != expected:
        logger.error("Engines disagree on n=%d S=%s sign=%+d: oracle %s, reducer %s",
                     canonical.n, sorted(canonical.S), canonical.sign, expected, result)
        raise EngineDisagreement(canonical, expected, result)
    return result, trace
