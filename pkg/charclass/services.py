"""
Stiefel-Whitney classes of real representations of (Z/2)^n.

Each character chi is a real line bundle with w(chi) = 1 + x_chi, and the
total class of a sum is the product. The Bockstein of w2 keeps the mixed
terms x_i x_j since beta(x_i^2) = 0.
"""
import logging
from typing import Dict

from gf2core.linalg import F2Vec, check_width
from repmodel.representations import RepMultiset, octet
from .polynomials import MULTIPLICITY_PERIOD, TOP_DEGREE, Lambda2Class, TruncPoly

logger = logging.getLogger(__name__)


class NotOrientableError(ValueError):
    """w1 != 0, so there is no w3 obstruction to speak of"""

    def __init__(self, w1: TruncPoly):
        self.w1 = w1
        super().__init__(f"Representation is not orientable: w1 = {w1.format()}")


class CharacteristicClassService:
    """Characteristic classes computed by truncated products"""

    def sw_total(self, rep: RepMultiset) -> TruncPoly:
        total = TruncPoly.one(rep.n)
        for chi, count in rep.counts:
            factor = TruncPoly.one(rep.n) + TruncPoly.linear(chi, rep.n)
            for _ in range(count % MULTIPLICITY_PERIOD):
                total = total * factor
        return total

    def w_k(self, rep: RepMultiset, k: int) -> TruncPoly:
        if not 1 <= k <= TOP_DEGREE:
            raise ValueError(f"Only w1..w{TOP_DEGREE} are computed, not w{k}")
        return self.sw_total(rep).degree(k)

    def w_3(self, rep: RepMultiset) -> TruncPoly:
        return self.w_k(rep, 3)

    def bockstein_w2(self, rep: RepMultiset) -> Lambda2Class:
        w2 = self.w_k(rep, 2)
        return Lambda2Class(rep.n, frozenset((i, j) for i, j in w2.terms if i != j))

    def is_spinc(self, rep: RepMultiset) -> bool:
        return self.w_k(rep, 1).is_zero() and self.bockstein_w2(rep).is_zero()

    def spin_octet_is_spin(self, a: F2Vec, b: F2Vec, c: F2Vec, n: int) -> bool:
        """w1 = w2 = 0 for 1 + the octet of (a, b, c)"""
        check_width(n)
        U = RepMultiset.from_characters(n, [0, *octet(a, b, c)])
        spin = self.w_k(U, 1).is_zero() and self.w_k(U, 2).is_zero()
        if not spin:
            logger.error("Octet of %#x, %#x, %#x is not spin", a, b, c)
        return spin

    def summary(self, rep: RepMultiset) -> Dict[str, str]:
        """Rendered classes for the sw command"""
        return {
            'w1': self.w_k(rep, 1).format(),
            'w2': self.w_k(rep, 2).format(),
            'w3': self.w_3(rep).format(),
            'beta_w2': self.bockstein_w2(rep).format(),
            'spinc': 'yes' if self.is_spinc(rep) else 'no',
        }


_service = CharacteristicClassService()

sw_total = _service.sw_total
w_k = _service.w_k
w_3 = _service.w_3
bockstein_w2 = _service.bockstein_w2
is_spinc = _service.is_spinc
spin_octet_is_spin = _service.spin_octet_is_spin
