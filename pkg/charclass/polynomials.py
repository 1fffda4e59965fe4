"""
Z/2[x1..xn] truncated above degree 3, and Lambda^2 classes beta(x_i x_j).

A monomial is the sorted tuple of its 1-based variable indices with
repetition, so x1^2 x3 is (1, 1, 3) and the constant 1 is ().
"""
from dataclasses import dataclass
from itertools import groupby
from typing import FrozenSet, Tuple

from gf2core.linalg import F2Vec, bits_of, check_vector, check_width

TOP_DEGREE = 3

# Smallest power of two above TOP_DEGREE: (1 + x)^4 = 1 + x^4 is 1 after truncation.
MULTIPLICITY_PERIOD = 1 << TOP_DEGREE.bit_length()

Monomial = Tuple[int, ...]


def _monomial_text(monomial: Monomial) -> str:
    if not monomial:
        return '1'
    factors = []
    for index, group in groupby(monomial):
        power = len(list(group))
        factors.append(f"x{index}" + (f"^{power}" if power > 1 else ''))
    return ' '.join(factors)


@dataclass(frozen=True)
class TruncPoly:
    n: int
    terms: FrozenSet[Monomial] = frozenset()

    def __post_init__(self):
        check_width(self.n)
        for monomial in self.terms:
            if len(monomial) > TOP_DEGREE or list(monomial) != sorted(monomial):
                raise ValueError(f"Bad monomial {monomial}")
            if monomial and not 1 <= monomial[0] <= monomial[-1] <= self.n:
                raise ValueError(f"Monomial {monomial} uses a variable outside x1..x{self.n}")

    @classmethod
    def one(cls, n: int) -> 'TruncPoly':
        return cls(n, frozenset({()}))

    @classmethod
    def linear(cls, chi: F2Vec, n: int) -> 'TruncPoly':
        """x_chi = sum of x_i over the generators in chi; w1 of the line chi"""
        check_vector(chi, n)
        return cls(n, frozenset((i + 1,) for i in bits_of(chi)))

    def __add__(self, other: 'TruncPoly') -> 'TruncPoly':
        return TruncPoly(self.n, self.terms ^ other.terms)

    def __mul__(self, other: 'TruncPoly') -> 'TruncPoly':
        if other.n != self.n:
            raise ValueError("Cannot multiply classes of different rank")
        product = set()
        for a in self.terms:
            for b in other.terms:
                if len(a) + len(b) <= TOP_DEGREE:
                    product ^= {tuple(sorted(a + b))}
        return TruncPoly(self.n, frozenset(product))

    def degree(self, k: int) -> 'TruncPoly':
        """Homogeneous part of degree k"""
        return TruncPoly(self.n, frozenset(m for m in self.terms if len(m) == k))

    def is_zero(self) -> bool:
        return not self.terms

    def format(self) -> str:
        if not self.terms:
            return '0'
        ordered = sorted(self.terms, key=lambda m: (len(m), m))
        return ' + '.join(_monomial_text(m) for m in ordered)

    __str__ = format


@dataclass(frozen=True)
class Lambda2Class:
    """A class sum of beta(x_i x_j) in H^3((Z/2)^n, Z), pairs 1-based with i < j"""

    n: int
    pairs: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        check_width(self.n)
        for i, j in self.pairs:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"Pair ({i}, {j}) is not 1 <= i < j <= {self.n}")

    def is_zero(self) -> bool:
        return not self.pairs

    def format(self) -> str:
        if not self.pairs:
            return '0'
        return ' + '.join(f"b(x{i} x{j})" for i, j in sorted(self.pairs))

    __str__ = format
