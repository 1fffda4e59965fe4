"""
Hypothesis strategies and the seeded profile shared by the test suites.

Characters are drawn as ints of width n; the profile derandomizes every
run so a failing example is reproducible from the test name alone.
"""
from decouple import config
from hypothesis import HealthCheck, assume, settings, strategies as st

from gf2core.linalg import F2Matrix, rank
from repmodel.representations import RepMultiset

settings.register_profile(
    'ksphere',
    derandomize=True,
    database=None,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(config('HYPOTHESIS_PROFILE', default='ksphere'))

# Algebraic identities run at least this many cases each.
PROPERTY_EXAMPLES = 1000

# Ranks past exhaustive reach are checked by sampling, with this many cases each.
SAMPLED_RANKS = (5, 6)
SAMPLED_EXAMPLES = 10000


def ranks(min_value=1, max_value=5):
    return st.integers(min_value=min_value, max_value=max_value)


def sampled_ranks():
    return st.sampled_from(SAMPLED_RANKS)


def vectors(n, nonzero=False):
    if nonzero and n == 0:
        raise ValueError("No nonzero vectors of width 0")
    return st.integers(min_value=1 if nonzero else 0, max_value=(1 << n) - 1)


def character_sets(n, max_size=8):
    """Canonical character sets S: distinct nonzero characters"""
    if n == 0:
        return st.just(frozenset())
    return st.frozensets(vectors(n, nonzero=True), max_size=max_size)


def invertible_matrices(n):
    return (
        st.lists(vectors(n), min_size=n, max_size=n)
        .map(lambda rows: F2Matrix(n, tuple(rows)))
        .filter(lambda A: A.is_invertible)
    )


@st.composite
def independent_triples(draw, n):
    a, b, c = (draw(vectors(n, nonzero=True)) for _ in range(3))
    assume(rank([a, b, c], n) == 3)
    return a, b, c


@st.composite
def rep_multisets(draw, n, max_size=6, max_count=3):
    """Representations with multiplicities, trivial summands allowed"""
    counts = draw(st.dictionaries(
        vectors(n), st.integers(min_value=1, max_value=max_count), max_size=max_size,
    ))
    return RepMultiset.from_counts(n, counts)
