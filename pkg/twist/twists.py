"""
Twists tau = sum of eps_ij beta(x_i x_j), written "1-2,2-3" on the command line.
"""
from dataclasses import dataclass
from typing import FrozenSet, Tuple

from charclass.polynomials import Lambda2Class
from gf2core.linalg import check_width


class TwistParseError(ValueError):
    def __init__(self, token: str, reason: str):
        self.token = token
        self.reason = reason
        super().__init__(f"Bad twist pair {token!r}: {reason}")


@dataclass(frozen=True)
class Twist:
    n: int
    pairs: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        check_width(self.n)
        for i, j in self.pairs:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"Twist pair ({i}, {j}) is not 1 <= i < j <= {self.n}")

    @classmethod
    def from_class(cls, klass: Lambda2Class) -> 'Twist':
        return cls(klass.n, klass.pairs)

    def compose(self, other: 'Twist') -> 'Twist':
        """Sum in H^3: symmetric difference of the pairs"""
        if other.n != self.n:
            raise ValueError("Cannot compose twists of different rank")
        return Twist(self.n, self.pairs ^ other.pairs)

    def is_trivial(self) -> bool:
        return not self.pairs

    def format(self) -> str:
        return ','.join(f"{i}-{j}" for i, j in sorted(self.pairs))

    __str__ = format


def parse_twist(text: str, n: int) -> Twist:
    """'1-2,2-3' -> {(1, 2), (2, 3)}; the empty string is the trivial twist"""
    pairs = set()
    for token in filter(None, (t.strip() for t in (text or '').split(','))):
        left, dash, right = token.partition('-')
        if not dash or not left.strip().isdigit() or not right.strip().isdigit():
            raise TwistParseError(token, "expected i-j")
        i, j = int(left), int(right)
        if i >= j:
            raise TwistParseError(token, "need i < j")
        if i < 1 or j > n:
            raise TwistParseError(token, f"indices must lie in 1..{n}")
        if (i, j) in pairs:
            raise TwistParseError(token, "repeated pair")
        pairs.add((i, j))
    return Twist(n, frozenset(pairs))
