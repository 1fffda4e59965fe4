"""
Cross-checks of the two engines over many representations, and greedy
shrinking of a failing input to a minimal one.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional

from django.conf import settings

from atlas.services import SizeGuardError, sample_subsets, subset_of_mask
from euler_oracle.results import NonPowerOfTwoError
from euler_oracle.services import EulerOracle, get_oracle
from gf2core.linalg import F2Vec, check_width
from reducer.services import EngineDisagreement, ReductionError, compare_engines
from reducer.trace import CheckpointMismatch, InvalidMove, replay_trace
from repmodel.parser import format_character
from repmodel.representations import CanonicalRep

logger = logging.getLogger(__name__)

ENGINE_DISAGREEMENT = 'engine disagreement'
NOT_POWER_OF_TWO = 'non power of two'
REDUCTION_FAILURE = 'reduction failure'
REPLAY_FAILURE = 'replay failure'


def format_set(S: Iterable[F2Vec]) -> str:
    return '{' + ', '.join(format_character(chi) for chi in sorted(S)) + '}'


@dataclass(frozen=True)
class Failure:
    rep: CanonicalRep
    kind: str
    message: str


@dataclass
class VerificationReport:
    n: int
    checked: int = 0
    failures: List[Failure] = field(default_factory=list)
    minimized: List[CanonicalRep] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class VerificationService:
    """Runs both engines, replays every trace and checks the power-of-two law"""

    def __init__(self, oracle: Optional[EulerOracle] = None, debug_chi: Optional[bool] = None):
        self.oracle = oracle or get_oracle()
        self.debug_chi = debug_chi

    def check(self, rep: CanonicalRep) -> Optional[Failure]:
        try:
            _, trace = compare_engines(rep, oracle=self.oracle, debug_chi=self.debug_chi)
            replay_trace(rep, trace, oracle=self.oracle)
        except NonPowerOfTwoError as e:
            return Failure(rep, NOT_POWER_OF_TWO, str(e))
        except EngineDisagreement as e:
            return Failure(rep, ENGINE_DISAGREEMENT, str(e))
        except ReductionError as e:
            return Failure(rep, REDUCTION_FAILURE, str(e))
        except (InvalidMove, CheckpointMismatch) as e:
            return Failure(rep, REPLAY_FAILURE, str(e))
        return None

    def minimize(self, rep: CanonicalRep) -> CanonicalRep:
        """Drop characters one at a time while some check still fails"""
        current = rep
        shrinking = True
        while shrinking:
            shrinking = False
            for chi in sorted(current.S):
                candidate = CanonicalRep(current.n, current.S - {chi}, current.sign)
                if self.check(candidate) is not None:
                    current, shrinking = candidate, True
                    break
        logger.info("Minimized S=%s to %s", format_set(rep.S), format_set(current.S))
        return current

    def candidates(self, n: int, exhaustive: bool = False, samples: int = 1000,
                   seed: int = 0) -> Iterator[CanonicalRep]:
        check_width(n)
        if exhaustive:
            limit = getattr(settings, 'KSPHERE_EXHAUSTIVE_MAX_N', 4)
            if n > limit:
                raise SizeGuardError("Exhaustive verification", n, limit)
            for mask in range(1 << ((1 << n) - 1)):
                S = frozenset(subset_of_mask(mask))
                yield CanonicalRep(n, S, 1)
                yield CanonicalRep(n, S, -1)
            return
        limit = getattr(settings, 'KSPHERE_SAMPLE_MAX_N', 8)
        if n > limit:
            raise SizeGuardError("Sampled verification", n, limit)
        signs = random.Random(seed)
        for S in sample_subsets(n, samples, seed):
            yield CanonicalRep(n, frozenset(S), signs.choice((1, -1)))

    def run(self, n: int, exhaustive: bool = False, samples: int = 1000, seed: int = 0) -> VerificationReport:
        report = VerificationReport(n)
        for rep in self.candidates(n, exhaustive, samples, seed):
            report.checked += 1
            failure = self.check(rep)
            if failure is not None:
                logger.error("%s on n=%d S=%s sign=%+d: %s",
                             failure.kind, n, format_set(rep.S), rep.sign, failure.message)
                report.failures.append(failure)
                report.minimized.append(self.minimize(rep))
        logger.info("Verified %d representations at n=%d, %d failures",
                    report.checked, n, len(report.failures))
        return report
