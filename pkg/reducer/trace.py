"""
Reduction traces: a replayable certificate of one reducer run.

Text form, one record per line, characters and masks in hex:

    trace n=2 sign=+1 S=1,2,3
    move rebuild 1 2 chi=-1
    move split 3 chi=-1
    move base 3 pattern=hard_triangle m=0 eps=1 chi=-1
    result m=0 eps=1

``chi=`` checkpoints are the raw chi_n(S) after the move and only appear
when the reducer ran with oracle checkpoints enabled.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from euler_oracle.results import KResult
from euler_oracle.services import EulerOracle, get_oracle
from gf2core.linalg import (
    F2Matrix, F2Vec, CoordinateSystem, bits_of, check_vector, rank,
)
from repmodel.representations import (
    CanonicalRep, RepMultiset, canonicalize, octet,
)
from .hypergraph import (
    BASE_CASES, BaseCase, BaseChange, KunnethSplit, MOVE_TYPES, Move, Rebuild,
    SpinToggle, compress, extend_basis, match_pattern,
)

logger = logging.getLogger(__name__)


class TraceFormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"Line {line}: {message}")


class InvalidMove(ValueError):
    """A move whose preconditions fail on replay; index len(moves) is the final result"""

    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"Move {index}: {reason}")


class CheckpointMismatch(ValueError):
    def __init__(self, index: int, expected: int, got: int):
        self.index = index
        self.expected = expected
        self.got = got
        super().__init__(f"Move {index}: oracle gives chi={expected}, trace records {got}")


@dataclass(frozen=True)
class Trace:
    initial: CanonicalRep
    moves: Tuple[Move, ...]
    result: KResult
    checkpoints: Tuple[Optional[int], ...] = ()

    def __post_init__(self):
        if self.checkpoints and len(self.checkpoints) != len(self.moves):
            raise ValueError("One checkpoint slot per move is required")

    def checkpoint(self, index: int) -> Optional[int]:
        return self.checkpoints[index] if self.checkpoints else None

    @property
    def toggle_count(self) -> int:
        return sum(1 for move in self.moves if isinstance(move, SpinToggle))

    def to_text(self) -> str:
        initial = self.initial
        lines = [f"trace n={initial.n} sign={initial.sign:+d} S={_hex_list(initial.characters, ',')}"]
        for index, move in enumerate(self.moves):
            parts = ['move', move.kind, _hex_list(move.operands, ' ')]
            if isinstance(move, BaseCase):
                parts.append(f"pattern={move.pattern} m={move.m} eps={move.epsilon}")
            chi = self.checkpoint(index)
            if chi is not None:
                parts.append(f"chi={chi}")
            lines.append(' '.join(parts))
        lines.append(f"result m={self.result.m} eps={self.result.epsilon}")
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str) -> 'Trace':
        records = [
            (number, line.split())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith('#')
        ]
        if len(records) < 2:
            raise TraceFormatError(len(records), "a trace needs a header and a result line")

        number, header = records[0]
        if header[0] != 'trace':
            raise TraceFormatError(number, "expected 'trace' header")
        fields = _key_values(number, header[1:])
        try:
            initial = CanonicalRep(
                int(fields['n']), frozenset(_parse_hex_list(fields['S'], ',')), int(fields['sign']),
            )
        except (KeyError, ValueError) as exc:
            raise TraceFormatError(number, f"bad header: {exc}") from exc

        moves, checkpoints = [], []
        for number, tokens in records[1:-1]:
            move, chi = _parse_move(number, tokens)
            moves.append(move)
            checkpoints.append(chi)

        number, tail = records[-1]
        if tail[0] != 'result':
            raise TraceFormatError(number, "expected 'result' line")
        fields = _key_values(number, tail[1:])
        try:
            result = KResult(int(fields['m']), int(fields['eps']))
        except (KeyError, ValueError) as exc:
            raise TraceFormatError(number, f"bad result: {exc}") from exc

        if all(chi is None for chi in checkpoints):
            checkpoints = []
        return cls(initial, tuple(moves), result, tuple(checkpoints))


def _hex_list(values: Sequence[int], sep: str) -> str:
    return sep.join(f"{v:x}" for v in values) if values else '-'


def _parse_hex_list(text: str, sep: str) -> List[int]:
    if text == '-':
        return []
    return [int(token, 16) for token in text.split(sep)]


def _key_values(number: int, tokens: Sequence[str]) -> Dict[str, str]:
    fields = {}
    for token in tokens:
        key, eq, value = token.partition('=')
        if not eq:
            raise TraceFormatError(number, f"expected key=value, got {token!r}")
        fields[key] = value
    return fields


def build_move(kind: str, operands: Sequence[int], attrs: Dict[str, str]) -> Move:
    """Move from its kind, hex-decoded operands and base-case attributes"""
    if kind not in MOVE_TYPES:
        raise ValueError(f"unknown move kind {kind!r}")
    if kind == SpinToggle.kind:
        if len(operands) != 3:
            raise ValueError("a toggle takes exactly three characters")
        return SpinToggle(*operands)
    if kind == BaseChange.kind:
        return BaseChange(F2Matrix(len(operands), tuple(operands)))
    if kind == Rebuild.kind:
        return Rebuild(tuple(operands))
    if kind == KunnethSplit.kind:
        return KunnethSplit(tuple(operands))
    if len(operands) != 1:
        raise ValueError("a base case names one vertex mask")
    return BaseCase(attrs['pattern'], operands[0], int(attrs['m']), int(attrs['eps']))


def _parse_move(number: int, tokens: List[str]) -> Tuple[Move, Optional[int]]:
    if len(tokens) < 3 or tokens[0] != 'move':
        raise TraceFormatError(number, "expected 'move <kind> <operands>'")
    kind = tokens[1]
    operands = [t for t in tokens[2:] if '=' not in t]
    attrs = _key_values(number, [t for t in tokens[2:] if '=' in t])
    try:
        values = [] if operands == ['-'] else [int(t, 16) for t in operands]
        move = build_move(kind, values, attrs)
        chi = int(attrs['chi']) if 'chi' in attrs else None
    except (KeyError, ValueError) as exc:
        raise TraceFormatError(number, str(exc)) from exc
    return move, chi


class _ReplayState:
    """Character-level state, independent of the reducer's hypergraph"""

    def __init__(self, initial: CanonicalRep):
        self.n = initial.n
        self.S: Set[F2Vec] = set(initial.S)
        self.sign = initial.sign
        self.basis: List[F2Vec] = []
        self.blocks: Optional[Tuple[int, ...]] = None
        self.evaluated: Dict[int, Tuple[int, int]] = {}

    def apply(self, move: Move):
        if self.blocks is not None and not isinstance(move, BaseCase):
            raise ValueError(f"{move.kind} after the components were split")
        handler = getattr(self, f"_apply_{move.kind}")
        handler(move)

    def _apply_rebuild(self, move: Rebuild):
        for v in move.basis:
            check_vector(v, self.n)
        system = CoordinateSystem(move.basis)
        outside = [chi for chi in self.S if not system.contains(chi)]
        if outside:
            raise ValueError(f"basis does not span {outside[0]:#x}")
        self.basis = list(move.basis)

    def _apply_toggle(self, move: SpinToggle):
        if rank(move.operands, self.n) != 3:
            raise ValueError("toggle triple is dependent")
        self.S ^= octet(*move.operands)
        self.sign = -self.sign
        extend_basis(self.basis, move.operands)

    def _apply_basechange(self, move: BaseChange):
        matrix = move.matrix
        if matrix.n != len(self.basis):
            raise ValueError(f"{matrix.n}x{matrix.n} base change on a basis of {len(self.basis)}")
        if not matrix.is_invertible:
            raise ValueError("base change is not invertible")
        system = CoordinateSystem(self.basis)
        self.basis = [system.combine(bits_of(row)) for row in matrix.rows]

    def _apply_split(self, move: KunnethSplit):
        covered = 0
        for block in move.blocks:
            if not block or block & covered or block >> len(self.basis):
                raise ValueError(f"block {block:#x} is empty, overlapping or out of range")
            covered |= block
        system = CoordinateSystem(self.basis)
        for chi in self.S:
            mask = system.mask(chi)
            if not any(mask & block == mask for block in move.blocks):
                raise ValueError(f"character {chi:#x} crosses the split")
        self.blocks = move.blocks

    def _apply_base(self, move: BaseCase):
        if self.blocks is None:
            raise ValueError("base case before the split")
        if move.vertices not in self.blocks or move.vertices in self.evaluated:
            raise ValueError(f"{move.vertices:#x} is not an unevaluated component")
        system = CoordinateSystem(self.basis)
        local = frozenset(
            compress(mask, move.vertices)
            for mask in map(system.mask, self.S)
            if mask & move.vertices
        )
        pattern = match_pattern(local, bin(move.vertices).count('1'))
        if pattern != move.pattern:
            raise ValueError(f"component is {pattern or 'unrecognized'}, not {move.pattern}")
        if BASE_CASES[pattern] != (move.m, move.epsilon):
            raise ValueError(f"{pattern} has result {BASE_CASES[pattern]}")
        self.evaluated[move.vertices] = (move.m, move.epsilon)

    def result(self) -> KResult:
        if self.blocks is None:
            raise ValueError("trace never splits into components")
        if len(self.evaluated) != len(self.blocks):
            raise ValueError("some components were never evaluated")
        free_rank = self.n - sum(bin(block).count('1') for block in self.blocks)
        m = free_rank + sum(m for m, _ in self.evaluated.values())
        epsilon = (self.sign == -1) + sum(e for _, e in self.evaluated.values())
        return KResult(m, epsilon % 2)


def replay_trace(rep: Union[RepMultiset, CanonicalRep], trace: Trace,
                 oracle: Optional[EulerOracle] = None) -> KResult:
    """Re-apply every move with its preconditions re-checked"""
    oracle = oracle or get_oracle()
    initial = rep if isinstance(rep, CanonicalRep) else canonicalize(rep)
    if initial != trace.initial:
        raise InvalidMove(0, "trace starts from a different representation")

    state = _ReplayState(initial)
    for index, move in enumerate(trace.moves):
        try:
            state.apply(move)
        except ValueError as exc:
            raise InvalidMove(index, str(exc)) from exc
        recorded = trace.checkpoint(index)
        if recorded is not None:
            expected = oracle.chi_of_set(state.n, state.S)
            if expected != recorded:
                raise CheckpointMismatch(index, expected, recorded)

    try:
        result = state.result()
    except ValueError as exc:
        raise InvalidMove(len(trace.moves), str(exc)) from exc
    if result != trace.result:
        raise InvalidMove(len(trace.moves), f"moves give {result}, trace claims {trace.result}")
    logger.debug("Replayed %d moves to %s", len(trace.moves), result)
    return result
