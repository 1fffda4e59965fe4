"""
Hypergraph encoding of a canonical representation and the reduction moves.

A vertex is an index into ``basis``; a set is a bit mask over vertex indices
whose subset sum of basis characters is one character of S.
"""
from dataclasses import dataclass, field
from typing import ClassVar, Dict, FrozenSet, List, Optional, Set, Tuple, Type, Union

from gf2core.linalg import F2Matrix, F2Vec, CoordinateSystem, bits_of, check_width

# Local (m, epsilon) of the four components that survive the reduction.
MARKED_VERTEX = 'marked_vertex'
BARE_EDGE = 'bare_edge'
MARKED_EDGE = 'marked_edge'
HARD_TRIANGLE = 'hard_triangle'

BASE_CASES: Dict[str, Tuple[int, int]] = {
    MARKED_VERTEX: (0, 0),
    BARE_EDGE: (1, 0),
    MARKED_EDGE: (0, 0),
    HARD_TRIANGLE: (0, 1),
}


def match_pattern(local_sets: FrozenSet[int], rank: int) -> Optional[str]:
    """Pattern name for sets over local vertices 0..rank-1, or None"""
    if rank == 1:
        return MARKED_VERTEX if local_sets == {0b1} else None
    if rank != 2 or 0b11 not in local_sets or not local_sets <= {0b01, 0b10, 0b11}:
        return None
    marks = len(local_sets) - 1
    return (BARE_EDGE, MARKED_EDGE, HARD_TRIANGLE)[marks]


@dataclass
class Hypergraph:
    """Working state of one reduction: chi(original) = sign * chi_n(S)"""

    n: int
    basis: List[F2Vec] = field(default_factory=list)
    sets: Set[int] = field(default_factory=set)
    sign: int = 1

    def __post_init__(self):
        check_width(self.n)
        if len(self.basis) > self.n:
            raise ValueError(f"{len(self.basis)} basis vectors exceed rank {self.n}")
        # Raises on a dependent basis.
        CoordinateSystem(self.basis)
        if 0 in self.sets:
            raise ValueError("Sets must be nonempty")

    @property
    def p(self) -> int:
        return len(self.basis)

    def character(self, mask: int) -> F2Vec:
        value = 0
        for t in bits_of(mask):
            value ^= self.basis[t]
        return value

    def characters(self) -> FrozenSet[F2Vec]:
        """The represented set S"""
        return frozenset(self.character(mask) for mask in self.sets)

    def neighbours(self, v: int) -> List[int]:
        """Vertices joined to v by a two-element set, ascending"""
        bit = 1 << v
        return sorted(
            (mask ^ bit).bit_length() - 1
            for mask in self.sets
            if mask & bit and bin(mask).count('1') == 2
        )

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def is_marked(self, v: int) -> bool:
        return (1 << v) in self.sets

    def sets_containing(self, v: int) -> FrozenSet[int]:
        return frozenset(mask for mask in self.sets if mask >> v & 1)

    def max_cardinality(self) -> int:
        return max((bin(mask).count('1') for mask in self.sets), default=0)

    def is_graph(self) -> bool:
        return self.max_cardinality() <= 2

    def copy(self) -> 'Hypergraph':
        return Hypergraph(self.n, list(self.basis), set(self.sets), self.sign)


@dataclass(frozen=True)
class SpinToggle:
    """S <- S xor octet(a, b, c) and sign <- -sign"""

    a: F2Vec
    b: F2Vec
    c: F2Vec
    kind: ClassVar[str] = 'toggle'

    @property
    def operands(self) -> Tuple[int, ...]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class BaseChange:
    """New basis[i] is the subset sum of the old basis given by row i"""

    matrix: F2Matrix
    kind: ClassVar[str] = 'basechange'

    @property
    def operands(self) -> Tuple[int, ...]:
        return self.matrix.rows


@dataclass(frozen=True)
class Rebuild:
    basis: Tuple[F2Vec, ...]
    kind: ClassVar[str] = 'rebuild'

    @property
    def operands(self) -> Tuple[int, ...]:
        return self.basis


@dataclass(frozen=True)
class KunnethSplit:
    """Vertex masks of the components; unlisted dimensions are free"""

    blocks: Tuple[int, ...]
    kind: ClassVar[str] = 'split'

    @property
    def operands(self) -> Tuple[int, ...]:
        return self.blocks


@dataclass(frozen=True)
class BaseCase:
    pattern: str
    vertices: int
    m: int
    epsilon: int
    kind: ClassVar[str] = 'base'

    @property
    def operands(self) -> Tuple[int, ...]:
        return (self.vertices,)


Move = Union[SpinToggle, BaseChange, Rebuild, KunnethSplit, BaseCase]

MOVE_TYPES: Dict[str, Type] = {
    cls.kind: cls for cls in (SpinToggle, BaseChange, Rebuild, KunnethSplit, BaseCase)
}


@dataclass(frozen=True)
class Component:
    """A connected piece left by the reduction, sets in local coordinates"""

    vertices: int
    sets: FrozenSet[int]

    @property
    def rank(self) -> int:
        return bin(self.vertices).count('1')


def compress(mask: int, vertices: int) -> int:
    """Re-index mask onto the positions of the vertices it lies in"""
    local = 0
    for k, t in enumerate(bits_of(vertices)):
        if mask >> t & 1:
            local |= 1 << k
    return local


def extend_basis(basis: List[F2Vec], vectors) -> List[F2Vec]:
    """Append each vector outside the current span, in order"""
    for v in vectors:
        if not CoordinateSystem(basis).contains(v):
            basis.append(v)
    return basis
