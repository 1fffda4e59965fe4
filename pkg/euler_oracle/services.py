"""
Euler characteristic oracle.

chi(V) = rank K~^0_G(S^V) - rank K~^1_G(S^V) is additive along the long
exact sequence obtained by smashing G/Ker(chi0)_+ -> S^0 -> S^chi0 with
S^W, which gives the recursion

    chi(n, 0)          = 2^n                         (R(G) has rank 2^n)
    chi(n, W + 1)      = -chi(n, W)                  (suspension)
    chi(n, W + chi0)   = chi(n, W) - chi(n-1, W|Ker(chi0))

The recursion needs only exactness. Concentration in a single degree is
used only when converting chi to (m, epsilon), where it is checked.
"""
import logging
from itertools import islice, permutations
from threading import Lock
from typing import Dict, Iterable, List, Optional, Tuple

from django.conf import settings

from gf2core.linalg import F2Vec, kernel_basis, restrict_char
from repmodel.representations import Counts, RepMultiset, restrict_counts
from .results import KResult, NonPowerOfTwoError

logger = logging.getLogger(__name__)


class OrderCapExceeded(ValueError):
    """Too many summands to enumerate pivot orders"""


def _remove_one(counts: Counts, chi: F2Vec) -> Counts:
    reduced = []
    for mu, count in counts:
        if mu == chi:
            count -= 1
        if count:
            reduced.append((mu, count))
    return tuple(reduced)


class EulerOracle:
    """Memoized exact recursion for chi over the cofiber sequence"""

    def __init__(self, reduce_pairs: bool = True, use_cache: bool = True):
        # reduce_pairs keys the memo on mod-2 counts and the parity of trivial
        # summands; the exact recursion (reduce_pairs=False) checks that this
        # is licensed by suspension and complex-pair invariance.
        self.reduce_pairs = reduce_pairs
        self.use_cache = use_cache
        self._cache: Dict[Tuple[int, Counts], int] = {}
        self._stats_lock = Lock()
        self.hits = 0
        self.misses = 0

    def chi(self, rep: RepMultiset) -> int:
        return self._chi(rep.n, rep.counts)

    def chi_of_set(self, n: int, S: Iterable[F2Vec]) -> int:
        """chi of the multiplicity-one representation on canonical characters S"""
        return self._chi(n, tuple((chi, 1) for chi in sorted(S)))

    def k_groups(self, rep: RepMultiset) -> KResult:
        value = self.chi(rep)
        try:
            return KResult.from_chi(value, rep.n)
        except NonPowerOfTwoError as e:
            logger.error("%s for %r", e, rep)
            raise

    def chi_all_orders(self, rep: RepMultiset, max_orders: Optional[int] = None) -> List[int]:
        """chi re-derived for each pivot order of the summands (no memo across orders)"""
        cap = getattr(settings, 'KSPHERE_ORDER_CAP', 8)
        summands = rep.characters()
        if len(summands) > cap:
            raise OrderCapExceeded(f"{len(summands)} summands exceed the order cap of {cap}")
        values = []
        for order in islice(permutations(summands), max_orders):
            values.append(self._chi_ordered(rep.n, tuple(order), {}))
        return values

    def cache_info(self) -> Dict[str, int]:
        with self._stats_lock:
            return {'hits': self.hits, 'misses': self.misses, 'size': len(self._cache)}

    def clear_cache(self):
        with self._stats_lock:
            self._cache.clear()
            self.hits = self.misses = 0

    def _normalize(self, n: int, counts: Counts) -> Tuple[int, Tuple[int, Counts]]:
        if not self.reduce_pairs:
            return 1, (n, counts)
        sign = 1
        odd = []
        for chi, count in counts:
            if count % 2:
                if chi:
                    odd.append((chi, 1))
                else:
                    sign = -1
        return sign, (n, tuple(odd))

    def _chi(self, n: int, counts: Counts) -> int:
        sign, key = self._normalize(n, counts)
        if self.use_cache:
            cached = self._cache.get(key)
            with self._stats_lock:
                if cached is None:
                    self.misses += 1
                else:
                    self.hits += 1
                    return sign * cached
        value = self._expand(*key)
        if self.use_cache:
            value = self._cache.setdefault(key, value)
        return sign * value

    def _expand(self, n: int, counts: Counts) -> int:
        if not counts:
            return 1 << n
        if counts[0][0] == 0:
            return -self._chi(n, _remove_one(counts, 0))
        # Largest character first
        pivot = counts[-1][0]
        rest = _remove_one(counts, pivot)
        restricted = restrict_counts(rest, kernel_basis(pivot, n))
        return self._chi(n, rest) - self._chi(n - 1, restricted)

    def _chi_ordered(self, n: int, summands: Tuple[F2Vec, ...], memo: Dict) -> int:
        key = (n, summands)
        if key in memo:
            return memo[key]
        if not summands:
            value = 1 << n
        elif 0 in summands:
            i = summands.index(0)
            value = -self._chi_ordered(n, summands[:i] + summands[i + 1:], memo)
        else:
            pivot, rest = summands[-1], summands[:-1]
            kernel = kernel_basis(pivot, n)
            restricted = tuple(restrict_char(mu, kernel) for mu in rest)
            value = self._chi_ordered(n, rest, memo) - self._chi_ordered(n - 1, restricted, memo)
        memo[key] = value
        return value


_shared_oracle: Optional[EulerOracle] = None
_shared_lock = Lock()


def get_oracle() -> EulerOracle:
    """Process-wide oracle; the memo is insert-if-absent so sharing is safe"""
    global _shared_oracle
    with _shared_lock:
        if _shared_oracle is None:
            _shared_oracle = EulerOracle()
        return _shared_oracle


def chi(rep: RepMultiset) -> int:
    return get_oracle().chi(rep)


def k_groups(rep: RepMultiset) -> KResult:
    return get_oracle().k_groups(rep)


def chi_all_orders(rep: RepMultiset, max_orders: Optional[int] = None) -> List[int]:
    return get_oracle().chi_all_orders(rep, max_orders)
