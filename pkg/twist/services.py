"""
Twisted K-groups through the representation shift

    K~^i_tau(S^V) = K~^i(S^(V + sum over (i,j) in tau of (1 + a_i + a_j + a_i a_j)))

since w3 of each shift summand is beta(x_i x_j) and those classes generate
the twists.
"""
import logging
from typing import Optional

from charclass.services import CharacteristicClassService, NotOrientableError
from euler_oracle.results import KResult
from euler_oracle.services import EulerOracle, get_oracle
from reducer.services import HypergraphReducer, compare_engines
from repmodel.representations import RepMultiset, RepresentationError
from .twists import Twist

logger = logging.getLogger(__name__)

ORACLE, REDUCE, BOTH = 'oracle', 'reduce', 'both'
METHODS = (ORACLE, REDUCE, BOTH)


class TwistService:

    def __init__(self, oracle: Optional[EulerOracle] = None):
        self.oracle = oracle or get_oracle()
        self.classes = CharacteristicClassService()

    @staticmethod
    def shift_summand(i: int, j: int, n: int) -> RepMultiset:
        """1 + a_i + a_j + a_i a_j with 1-based generator indices"""
        a, b = 1 << (i - 1), 1 << (j - 1)
        return RepMultiset.from_characters(n, [0, a, b, a ^ b])

    def shift_rep(self, rep: RepMultiset, twist: Twist) -> RepMultiset:
        if rep.n != twist.n:
            raise RepresentationError(f"Twist of rank {twist.n} on a representation of rank {rep.n}")
        for i, j in sorted(twist.pairs):
            rep = rep + self.shift_summand(i, j, rep.n)
        return rep

    def twisted_k_groups(self, rep: RepMultiset, twist: Twist, method: str = ORACLE) -> KResult:
        if method not in METHODS:
            raise ValueError(f"Unknown method {method!r}; choose from {', '.join(METHODS)}")
        shifted = self.shift_rep(rep, twist)
        logger.debug("Twist %s shifts dimension %d to %d", twist, rep.dimension, shifted.dimension)
        if method == ORACLE:
            return self.oracle.k_groups(shifted)
        if method == REDUCE:
            return HypergraphReducer(oracle=self.oracle).reduce(shifted)[0]
        return compare_engines(shifted, oracle=self.oracle)[0]

    def twist_of_bundle(self, rep: RepMultiset) -> Twist:
        """The twist w3 = beta(w2) of an orientable representation"""
        w1 = self.classes.w_k(rep, 1)
        if not w1.is_zero():
            raise NotOrientableError(w1)
        return Twist.from_class(self.classes.bockstein_w2(rep))


def shift_rep(rep: RepMultiset, twist: Twist) -> RepMultiset:
    return TwistService().shift_rep(rep, twist)


def twisted_k_groups(rep: RepMultiset, twist: Twist, method: str = ORACLE) -> KResult:
    return TwistService().twisted_k_groups(rep, twist, method)


def twist_of_bundle(rep: RepMultiset) -> Twist:
    return TwistService().twist_of_bundle(rep)
