"""
Exact linear algebra over the field with two elements.

Vectors of F_2^n are plain ints: bit i is the coefficient of the i-th
standard generator. Group elements of (Z/2)^n and characters share this
type; the pairing <chi, g> is the parity of ``chi & g``.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

# Every vector fits one machine word.
MAX_RANK = 16

F2Vec = int


class GF2Error(ValueError):
    """Invalid width, zero character, singular map or vector outside a span"""


def check_width(n: int) -> int:
    """Validate an ambient rank"""
    if not 0 <= n <= MAX_RANK:
        raise GF2Error(f"Rank {n} outside supported range 0..{MAX_RANK}")
    return n


def check_vector(v: F2Vec, n: int) -> F2Vec:
    """Validate that v has no bits at positions >= n"""
    if v < 0 or v >> n:
        raise GF2Error(f"Vector {v:#x} does not fit width {n}")
    return v


def pairing(chi: F2Vec, g: F2Vec) -> int:
    """<chi, g>: parity of the bitwise AND"""
    return bin(chi & g).count('1') & 1


def bits_of(v: F2Vec) -> List[int]:
    """Indices of the set bits of v, ascending"""
    return [i for i in range(v.bit_length()) if v >> i & 1]


def mask_of(indices: Iterable[int]) -> F2Vec:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def format_bits(v: F2Vec, n: int) -> str:
    """Bit string with component 0 first, e.g. alpha on n=2 is '10'"""
    return ''.join('1' if v >> i & 1 else '0' for i in range(n))


def parse_bits(text: str) -> F2Vec:
    """Inverse of format_bits"""
    if any(ch not in '01' for ch in text):
        raise GF2Error(f"Not a bit string: {text!r}")
    return mask_of(i for i, ch in enumerate(text) if ch == '1')


def span_basis(vectors: Iterable[F2Vec], n: int) -> List[F2Vec]:
    """Row-echelon basis of the span, pivoting on the highest set bit in input order"""
    check_width(n)
    pivots: Dict[int, F2Vec] = {}
    basis = []
    for v in vectors:
        r = check_vector(v, n)
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                basis.append(r)
                break
            r ^= pivots[top]
    return basis


def rank(vectors: Iterable[F2Vec], n: int) -> int:
    """Dimension of the span"""
    return len(span_basis(vectors, n))


def kernel_basis(chi: F2Vec, n: int) -> List[F2Vec]:
    """n-1 independent group elements g with <chi, g> = 0"""
    check_vector(chi, check_width(n))
    if chi == 0:
        raise GF2Error("The trivial character has the whole group as kernel")
    # Solve for the lowest set coordinate of chi; the others are free.
    p = (chi & -chi).bit_length() - 1
    basis = []
    for j in range(n):
        if j == p:
            continue
        g = 1 << j
        if chi >> j & 1:
            g |= 1 << p
        basis.append(g)
    return basis


def restrict_char(chi: F2Vec, kernel: Sequence[F2Vec]) -> F2Vec:
    """Restriction of chi to the subgroup spanned by kernel, in that basis"""
    restricted = 0
    for j, g in enumerate(kernel):
        if pairing(chi, g):
            restricted |= 1 << j
    return restricted


class CoordinateSystem:
    """Precomputed elimination for repeated coordinate lookups in one basis"""

    def __init__(self, basis: Sequence[F2Vec]):
        self.basis = tuple(basis)
        self._pivots: Dict[int, Tuple[F2Vec, int]] = {}
        for t, b in enumerate(self.basis):
            r, mask = b, 1 << t
            while r:
                top = r.bit_length() - 1
                if top not in self._pivots:
                    self._pivots[top] = (r, mask)
                    break
                pr, pm = self._pivots[top]
                r ^= pr
                mask ^= pm
            else:
                raise GF2Error(f"Basis vector {t} ({b:#x}) is dependent on the previous ones")

    def mask(self, chi: F2Vec) -> int:
        """Bit mask of basis indices whose sum is chi"""
        r, mask = chi, 0
        while r:
            top = r.bit_length() - 1
            if top not in self._pivots:
                raise GF2Error(f"Vector {chi:#x} lies outside the span of the basis")
            pr, pm = self._pivots[top]
            r ^= pr
            mask ^= pm
        return mask

    def coordinates(self, chi: F2Vec) -> FrozenSet[int]:
        return frozenset(bits_of(self.mask(chi)))

    def contains(self, chi: F2Vec) -> bool:
        try:
            self.mask(chi)
        except GF2Error:
            return False
        return True

    def combine(self, indices: Iterable[int]) -> F2Vec:
        """Subset sum of basis vectors"""
        v = 0
        for t in indices:
            v ^= self.basis[t]
        return v


def coordinates_in_basis(chi: F2Vec, basis: Sequence[F2Vec]) -> FrozenSet[int]:
    """The unique subset T of indices with chi = sum of basis[t] for t in T"""
    return CoordinateSystem(basis).coordinates(chi)


@dataclass(frozen=True)
class F2Matrix:
    """Linear map of F_2^n; row i is the image of basis vector i"""

    n: int
    rows: Tuple[F2Vec, ...]

    def __post_init__(self):
        check_width(self.n)
        if len(self.rows) != self.n:
            raise GF2Error(f"Expected {self.n} rows, got {len(self.rows)}")
        for row in self.rows:
            check_vector(row, self.n)

    @classmethod
    def identity(cls, n: int) -> 'F2Matrix':
        return cls(n, tuple(1 << i for i in range(n)))

    @cached_property
    def is_invertible(self) -> bool:
        return rank(self.rows, self.n) == self.n

    def apply(self, g: F2Vec) -> F2Vec:
        """A·g"""
        image = 0
        for i in bits_of(g):
            image ^= self.rows[i]
        return image

    def compose(self, other: 'F2Matrix') -> 'F2Matrix':
        """self ∘ other"""
        if other.n != self.n:
            raise GF2Error("Cannot compose maps of different rank")
        return F2Matrix(self.n, tuple(self.apply(r) for r in other.rows))

    def inverse(self) -> 'F2Matrix':
        if not self.is_invertible:
            raise GF2Error("Matrix is not invertible")
        system = CoordinateSystem(self.rows)
        return F2Matrix(self.n, tuple(system.mask(1 << k) for k in range(self.n)))


def transvection(n: int, i: int, j: int) -> F2Matrix:
    """Elementary map e_i -> e_i + e_j; these generate GL(n, 2)"""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise GF2Error(f"Bad transvection indices ({i}, {j}) for rank {n}")
    rows = [1 << k for k in range(n)]
    rows[i] ^= 1 << j
    return F2Matrix(n, tuple(rows))


def dual_image(rows: Sequence[F2Vec], chi: F2Vec) -> F2Vec:
    """Character g -> chi(A·g) without the invertibility check"""
    image = 0
    for i, row in enumerate(rows):
        if pairing(chi, row):
            image |= 1 << i
    return image


def apply_dual_map(A: F2Matrix, chi: F2Vec) -> F2Vec:
    """The character of the composite representation g -> chi(A·g)"""
    if not A.is_invertible:
        raise GF2Error("Base change must be invertible")
    check_vector(chi, A.n)
    return dual_image(A.rows, chi)


def iter_gl(n: int) -> Iterator[F2Matrix]:
    """All invertible n x n matrices, rows chosen outside the span so far"""
    check_width(n)

    def extend(rows: Tuple[F2Vec, ...], span: FrozenSet[F2Vec]) -> Iterator[F2Matrix]:
        if len(rows) == n:
            yield F2Matrix(n, rows)
            return
        for r in range(1, 1 << n):
            if r not in span:
                yield from extend(rows + (r,), span | {s ^ r for s in span})

    yield from extend((), frozenset({0}))


@lru_cache(maxsize=None)
def gl_group(n: int) -> Tuple[F2Matrix, ...]:
    """Cached listing of GL(n, 2); 168 elements at n=3, 20160 at n=4"""
    return tuple(iter_gl(n))
