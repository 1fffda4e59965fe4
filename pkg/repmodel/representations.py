"""
Real representations of (Z/2)^n as character multisets.

Every irreducible real representation is a 1-dimensional character, so a
representation is a map character -> multiplicity. Canonicalization keeps
only what the K-groups can see: odd-multiplicity nontrivial characters and
the parity of the trivial summands.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from gf2core.linalg import (
    F2Vec, check_vector, check_width, kernel_basis, rank, restrict_char,
)

Counts = Tuple[Tuple[F2Vec, int], ...]


class RepresentationError(ValueError):
    """Representations of different ambient rank combined"""


def normalize_counts(counts: Mapping[F2Vec, int]) -> Counts:
    """Sorted (character, multiplicity) pairs with zero multiplicities dropped"""
    for chi, count in counts.items():
        if count < 0:
            raise RepresentationError(f"Negative multiplicity {count} for {chi:#x}")
    return tuple(sorted((chi, count) for chi, count in counts.items() if count))


@dataclass(frozen=True)
class RepMultiset:
    """V = sum of characters with multiplicity; key 0 is the trivial character"""

    n: int
    counts: Counts = ()

    def __post_init__(self):
        check_width(self.n)
        for chi, _ in self.counts:
            check_vector(chi, self.n)

    @classmethod
    def empty(cls, n: int) -> 'RepMultiset':
        return cls(n, ())

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[F2Vec, int]) -> 'RepMultiset':
        return cls(n, normalize_counts(counts))

    @classmethod
    def from_characters(cls, n: int, chars: Iterable[F2Vec]) -> 'RepMultiset':
        return cls.from_counts(n, Counter(chars))

    @property
    def dimension(self) -> int:
        return sum(count for _, count in self.counts)

    def count(self, chi: F2Vec) -> int:
        return dict(self.counts).get(chi, 0)

    def as_dict(self) -> Dict[F2Vec, int]:
        return dict(self.counts)

    def characters(self) -> List[F2Vec]:
        """Expanded summand list, ascending"""
        return [chi for chi, count in self.counts for _ in range(count)]

    def remove_one(self, chi: F2Vec) -> 'RepMultiset':
        counts = self.as_dict()
        if not counts.get(chi):
            raise RepresentationError(f"Character {chi:#x} is not a summand")
        counts[chi] -= 1
        return RepMultiset.from_counts(self.n, counts)

    def __add__(self, other: 'RepMultiset') -> 'RepMultiset':
        return direct_sum(self, other)


@dataclass(frozen=True)
class CanonicalRep:
    """Reduction-invariant state: chi(original) = sign * chi(S)"""

    n: int
    S: FrozenSet[F2Vec]
    sign: int = 1

    def __post_init__(self):
        check_width(self.n)
        if 0 in self.S:
            raise RepresentationError("The trivial character never appears in S")
        if self.sign not in (1, -1):
            raise RepresentationError(f"Sign must be +1 or -1, got {self.sign}")
        for chi in self.S:
            check_vector(chi, self.n)

    @property
    def characters(self) -> List[F2Vec]:
        return sorted(self.S)

    def as_rep(self) -> RepMultiset:
        """Multiplicity-one representation of S, plus a trivial summand for sign -1"""
        counts = {chi: 1 for chi in self.S}
        if self.sign == -1:
            counts[0] = 1
        return RepMultiset.from_counts(self.n, counts)


def canonicalize(rep: RepMultiset) -> CanonicalRep:
    """Drop complex pairs and record the parity of trivial summands as a sign"""
    S = frozenset(chi for chi, count in rep.counts if chi and count % 2)
    sign = -1 if rep.count(0) % 2 else 1
    return CanonicalRep(rep.n, S, sign)


def direct_sum(a: RepMultiset, b: RepMultiset) -> RepMultiset:
    if a.n != b.n:
        raise RepresentationError(f"Cannot add representations of rank {a.n} and {b.n}")
    counts = Counter(a.as_dict())
    counts.update(b.as_dict())
    return RepMultiset.from_counts(a.n, counts)


def restrict_counts(counts: Iterable[Tuple[F2Vec, int]], kernel: List[F2Vec]) -> Counts:
    restricted: Counter = Counter()
    for mu, count in counts:
        restricted[restrict_char(mu, kernel)] += count
    return normalize_counts(restricted)


def restrict_to_kernel(rep: RepMultiset, chi: F2Vec) -> RepMultiset:
    """Restriction to Ker(chi), expressed in the rank n-1 basis kernel_basis(chi)"""
    kernel = kernel_basis(chi, rep.n)
    return RepMultiset(rep.n - 1, restrict_counts(rep.counts, kernel))


def octet(a: F2Vec, b: F2Vec, c: F2Vec) -> FrozenSet[F2Vec]:
    """The seven nonzero characters of span(a, b, c)"""
    if rank([a, b, c], max(a, b, c).bit_length()) != 3:
        raise RepresentationError(f"Characters {a:#x}, {b:#x}, {c:#x} are dependent")
    return frozenset({a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c})
