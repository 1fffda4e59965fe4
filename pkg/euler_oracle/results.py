"""
The (m, epsilon) pair: K~^k_G(S^V) = Z^(2^m) for k = epsilon mod 2, 0 otherwise.
"""
from dataclasses import dataclass
from typing import Optional, Tuple


class NonPowerOfTwoError(ArithmeticError):
    """|chi| is not a power of two: an implementation bug or a counterexample"""

    def __init__(self, chi: int):
        self.chi = chi
        super().__init__(f"Euler characteristic {chi} is not ± a power of two")


class RankBoundError(NonPowerOfTwoError):
    """|chi| exceeds 2^n, so m would exceed the rank"""

    def __init__(self, chi: int, n: int):
        self.chi = chi
        self.n = n
        ArithmeticError.__init__(self, f"Euler characteristic {chi} exceeds 2^{n} in magnitude")


@dataclass(frozen=True)
class KResult:
    m: int
    epsilon: int

    def __post_init__(self):
        if self.m < 0 or self.epsilon not in (0, 1):
            raise ValueError(f"Invalid result m={self.m}, epsilon={self.epsilon}")

    @classmethod
    def from_chi(cls, chi: int, n: Optional[int] = None) -> 'KResult':
        magnitude = abs(chi)
        if magnitude == 0 or magnitude & (magnitude - 1):
            raise NonPowerOfTwoError(chi)
        if n is not None and magnitude > 1 << n:
            raise RankBoundError(chi, n)
        return cls(m=magnitude.bit_length() - 1, epsilon=0 if chi > 0 else 1)

    @property
    def chi(self) -> int:
        return -(1 << self.m) if self.epsilon else 1 << self.m

    def groups(self) -> Tuple[str, str]:
        """(K^0, K^1) as text"""
        concentrated = f"Z^{1 << self.m}"
        return ('0', concentrated) if self.epsilon else (concentrated, '0')

    def describe(self) -> str:
        k0, k1 = self.groups()
        return f"K^0 = {k0}, K^1 = {k1} (m={self.m}, eps={self.epsilon})"
