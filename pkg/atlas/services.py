"""
Atlas of (m, epsilon) over all canonical character sets of small rank.

Rows are keyed by the canonical set S (no multiplicities, no trivial
summand); the orbit column is the lexicographically least sorted image of S
under GL(n, 2) acting on characters.
"""
import csv
import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, IO, Iterable, Iterator, List, Optional, Tuple, Union

from django.conf import settings

from euler_oracle.results import KResult
from euler_oracle.services import EulerOracle, get_oracle
from gf2core.linalg import F2Vec, check_width, dual_image, gl_group, transvection
from reducer.services import HypergraphReducer, compare_engines
from repmodel.parser import parse_rep
from repmodel.representations import CanonicalRep, canonicalize
from .serializers import AtlasRowSerializer

logger = logging.getLogger(__name__)

EXHAUSTIVE, SAMPLE = 'exhaustive', 'sample'
MODES = (EXHAUSTIVE, SAMPLE)
CSV, JSON = 'csv', 'json'
FORMATS = (CSV, JSON)

CSV_HEADER = ['n', 'S', 'chi', 'm', 'epsilon', 'orbit', 'flags']

# Flag carried by every row whose computed value differs from the printed table.
DISCREPANCY_FLAG = 'paper_discrepancy'

# Reducer cross-checks per exhaustive run above rank 3.
REDUCER_CHECKS = 256


class SizeGuardError(ValueError):
    def __init__(self, what: str, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"{what} is limited to n <= {limit}, got n={n}")


@dataclass(frozen=True)
class AtlasRow:
    n: int
    S: Tuple[F2Vec, ...]
    chi: int
    m: int
    epsilon: int
    orbit: Optional[Tuple[F2Vec, ...]] = None
    trace_toggle_count: Optional[int] = None
    flags: Tuple[str, ...] = ()

    @property
    def result(self) -> KResult:
        return KResult(self.m, self.epsilon)

    def sort_key(self):
        return (self.n, self.S)

    def csv_fields(self) -> List[str]:
        return [
            str(self.n),
            ' '.join(f"{chi:x}" for chi in self.S),
            str(self.chi),
            str(self.m),
            str(self.epsilon),
            ' '.join(f"{chi:x}" for chi in self.orbit) if self.orbit is not None else '',
            ';'.join(self.flags),
        ]


@dataclass(frozen=True)
class PublishedCase:
    label: str
    expression: str
    printed: KResult

    @property
    def S(self) -> frozenset:
        return canonicalize(parse_rep(self.expression, 3)).S


@dataclass(frozen=True)
class ReportEntry:
    case: PublishedCase
    computed: KResult
    reducer: KResult
    orbit: Tuple[F2Vec, ...]
    flags: Tuple[str, ...]


def published_cases() -> List[PublishedCase]:
    """The rank-3 classes that do not reduce to rank 2, with their printed answers"""
    return [
        PublishedCase('1', 'a+b+c+abc', KResult(2, 0)),
        PublishedCase('2', 'a+b+c+ab+bc', KResult(1, 1)),
        PublishedCase('3', 'a+b+c+ab+abc', KResult(1, 1)),
        PublishedCase('4', 'a+b+c+ab+ac+bc', KResult(2, 1)),
        PublishedCase('5', 'a+b+c+ab+bc+abc', KResult(2, 1)),
        PublishedCase('6', 'a+b+c+ab+bc+ac+abc', KResult(3, 1)),
    ]


def subset_of_mask(mask: int) -> Tuple[F2Vec, ...]:
    """Bit k of the mask selects character k + 1"""
    return tuple(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


@lru_cache(maxsize=None)
def _dual_tables(n: int) -> Tuple[Tuple[F2Vec, ...], ...]:
    return tuple(
        tuple(dual_image(A.rows, chi) for chi in range(1 << n))
        for A in gl_group(n)
    )


def _orbit_limit() -> int:
    return getattr(settings, 'KSPHERE_ORBIT_MAX_N', 4)


def gl_canonical_form(S: Iterable[F2Vec], n: int) -> Tuple[F2Vec, ...]:
    """Least sorted image of S over all of GL(n, 2)"""
    check_width(n)
    if n > _orbit_limit():
        raise SizeGuardError("GL(n, 2) canonical form", n, _orbit_limit())
    S = tuple(S)
    return min(tuple(sorted(table[chi] for chi in S)) for table in _dual_tables(n))


def orbit_classes(n: int) -> Dict[int, Tuple[F2Vec, ...]]:
    """Subset mask -> canonical form, by union-find over the transvection generators"""
    check_width(n)
    if n > _orbit_limit():
        raise SizeGuardError("Orbit classification", n, _orbit_limit())
    count = 1 << ((1 << n) - 1)
    parent = list(range(count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    generators = [
        [dual_image(transvection(n, i, j).rows, chi) for chi in range(1 << n)]
        for i in range(n) for j in range(n) if i != j
    ]
    for mask in range(count):
        chars = subset_of_mask(mask)
        for table in generators:
            image = 0
            for chi in chars:
                image |= 1 << (table[chi] - 1)
            a, b = find(mask), find(image)
            if a != b:
                parent[max(a, b)] = min(a, b)

    best: Dict[int, Tuple[F2Vec, ...]] = {}
    for mask in range(count):
        root = find(mask)
        form = subset_of_mask(mask)
        if root not in best or form < best[root]:
            best[root] = form
    classes = {mask: best[find(mask)] for mask in range(count)}
    logger.info("n=%d: %d subsets in %d GL orbits", n, count, len(best))
    return classes


def sample_subsets(n: int, samples: int, seed: int, max_size: Optional[int] = None) -> List[Tuple[F2Vec, ...]]:
    """Distinct random canonical sets, size uniform in 0..max_size (default 2n)"""
    rng = random.Random(seed)
    chars = list(range(1, 1 << n))
    limit = min(len(chars), 2 * n if max_size is None else max_size)
    seen, subsets = set(), []
    for _ in range(samples):
        S = tuple(sorted(rng.sample(chars, rng.randint(0, limit))))
        if S not in seen:
            seen.add(S)
            subsets.append(S)
    return subsets


def _compute(n: int, S: Tuple[F2Vec, ...], with_reducer: bool, oracle: EulerOracle) -> Tuple[int, Optional[int]]:
    chi = oracle.chi_of_set(n, S)
    # Power-of-two and rank-bound check on every row.
    KResult.from_chi(chi, n)
    toggles = None
    if with_reducer:
        _, trace = compare_engines(CanonicalRep(n, frozenset(S)), oracle=oracle)
        toggles = trace.toggle_count
    return chi, toggles


def _compute_chunk(n: int, jobs: List[Tuple[Tuple[F2Vec, ...], bool]]) -> List[Tuple[Tuple[F2Vec, ...], int, Optional[int]]]:
    """Process-pool entry point; each worker uses its own oracle"""
    oracle = get_oracle()
    return [(S, *_compute(n, S, with_reducer, oracle)) for S, with_reducer in jobs]


class AtlasService:
    """Enumerates, classifies and writes atlas rows"""

    def __init__(self, oracle: Optional[EulerOracle] = None, workers: int = 1, with_orbits: bool = True):
        self.oracle = oracle or get_oracle()
        self.workers = max(1, workers)
        self.with_orbits = with_orbits

    def enumerate(self, n: int, mode: str = EXHAUSTIVE, samples: int = 1000, seed: int = 0,
                  max_size: Optional[int] = None) -> Iterator[AtlasRow]:
        check_width(n)
        if mode == EXHAUSTIVE:
            limit = getattr(settings, 'KSPHERE_EXHAUSTIVE_MAX_N', 4)
            if n > limit:
                raise SizeGuardError("Exhaustive enumeration", n, limit)
            subsets = [subset_of_mask(mask) for mask in range(1 << ((1 << n) - 1))]
            if n <= 3:
                checked = set(range(len(subsets)))
            else:
                checked = set(random.Random(seed).sample(range(len(subsets)), REDUCER_CHECKS))
            jobs = [(S, k in checked) for k, S in enumerate(subsets)]
        elif mode == SAMPLE:
            limit = getattr(settings, 'KSPHERE_SAMPLE_MAX_N', 8)
            if n > limit:
                raise SizeGuardError("Sampling", n, limit)
            jobs = [(S, True) for S in sample_subsets(n, samples, seed, max_size)]
        else:
            raise ValueError(f"Unknown mode {mode!r}; choose from {', '.join(MODES)}")

        orbits = self._orbits(n, mode)
        discrepant = self._discrepant_orbits() if n == 3 else {}
        computed = self._run(n, jobs)
        logger.info("n=%d %s: %d rows, %d reducer checks", n, mode, len(computed),
                    sum(1 for _, with_reducer in jobs if with_reducer))
        for S, chi, toggles in sorted(computed):
            result = KResult.from_chi(chi, n)
            orbit = orbits(S) if orbits else None
            canonical = orbit if orbit is not None else (gl_canonical_form(S, 3) if n == 3 else None)
            flags = ()
            if canonical in discrepant and discrepant[canonical] != result:
                flags = (DISCREPANCY_FLAG,)
            yield AtlasRow(n, S, chi, result.m, result.epsilon, orbit, toggles, flags)

    def _orbits(self, n: int, mode: str):
        if not self.with_orbits or n > _orbit_limit():
            return None
        if mode == EXHAUSTIVE:
            classes = orbit_classes(n)
            return lambda S: classes[sum(1 << (chi - 1) for chi in S)]
        return lambda S: gl_canonical_form(S, n)

    @staticmethod
    def _discrepant_orbits() -> Dict[Tuple[F2Vec, ...], KResult]:
        return {gl_canonical_form(case.S, 3): case.printed for case in published_cases()}

    def _run(self, n: int, jobs):
        if self.workers == 1:
            return [(S, *_compute(n, S, with_reducer, self.oracle)) for S, with_reducer in jobs]
        chunks = [jobs[k::self.workers] for k in range(self.workers)]
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            parts = pool.map(_compute_chunk, [n] * len(chunks), chunks)
            return [row for part in parts for row in part]

    def write_table(self, rows: Iterable[AtlasRow], fmt: str, destination: Union[str, Path, IO[str]]):
        if fmt not in FORMATS:
            raise ValueError(f"Unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
        ordered = sorted(rows, key=AtlasRow.sort_key)
        if isinstance(destination, (str, Path)):
            with open(destination, 'w', newline='') as stream:
                self._write(ordered, fmt, stream)
        else:
            self._write(ordered, fmt, destination)
        logger.info("Wrote %d %s rows", len(ordered), fmt)

    @staticmethod
    def _write(rows: List[AtlasRow], fmt: str, stream: IO[str]):
        if fmt == CSV:
            writer = csv.writer(stream, lineterminator='\n')
            writer.writerow(CSV_HEADER)
            writer.writerows(row.csv_fields() for row in rows)
            return
        stream.write(json.dumps(AtlasRowSerializer(rows, many=True).data, indent=2) + '\n')

    def reproduction_report(self) -> List[ReportEntry]:
        """Printed versus computed (m, epsilon) for every published rank-3 case"""
        entries = []
        reducer = HypergraphReducer(oracle=self.oracle)
        for case in published_cases():
            canonical = CanonicalRep(3, case.S)
            computed = self.oracle.k_groups(canonical.as_rep())
            reduced, _ = reducer.reduce(canonical)
            flags = (DISCREPANCY_FLAG,) if computed != case.printed else ()
            if flags:
                logger.warning("Case %s (%s): printed %s, computed %s",
                               case.label, case.expression, case.printed, computed)
            entries.append(ReportEntry(case, computed, reduced, gl_canonical_form(case.S, 3), flags))
        return entries
