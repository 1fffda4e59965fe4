"""
Representation expressions.

    rep    := term ('+' term)*
    term   := [0-9]* factor+ | '1'
    factor := [a-p]

Letters a, b, c, ... are the generators alpha_1, alpha_2, alpha_3, ...; a
product term such as "abc" is the character with those bits set, "1" is
the trivial character and an integer prefix is a multiplicity. Whitespace
is ignored; the empty expression is the zero representation.
"""
from collections import Counter
from typing import List, Tuple

from gf2core.linalg import bits_of, check_width
from .representations import RepMultiset

LETTERS = 'abcdefghijklmnop'

UNKNOWN_LETTER = 'unknown letter'
EMPTY_TERM = 'empty term'
MALFORMED = 'malformed syntax'
BARE_MULTIPLICITY = 'multiplicity without factor'


class RepParseError(ValueError):
    """Parse failure with the offending position in the original text"""

    def __init__(self, reason: str, position: int, expr: str):
        self.reason = reason
        self.position = position
        self.expr = expr
        super().__init__(f"{reason} at position {position} in {expr!r}")


def _split_terms(expr: str) -> List[Tuple[int, List[Tuple[int, str]]]]:
    """Terms as (position of the terminating '+' or end, [(position, char)])"""
    terms = []
    current: List[Tuple[int, str]] = []
    for position, ch in enumerate(expr):
        if ch.isspace():
            continue
        if ch == '+':
            terms.append((position, current))
            current = []
        else:
            current.append((position, ch))
    terms.append((len(expr), current))
    return terms


def parse_rep(expr: str, n: int) -> RepMultiset:
    check_width(n)
    if not expr.strip():
        return RepMultiset.empty(n)

    counts: Counter = Counter()
    for end, term in _split_terms(expr):
        if not term:
            raise RepParseError(EMPTY_TERM, end, expr)

        digits = ''
        idx = 0
        while idx < len(term) and term[idx][1].isdigit():
            digits += term[idx][1]
            idx += 1
        factors = term[idx:]

        if not factors:
            if digits == '1':
                counts[0] += 1
                continue
            raise RepParseError(BARE_MULTIPLICITY, term[0][0], expr)

        chi = 0
        for position, ch in factors:
            if ch not in LETTERS:
                raise RepParseError(MALFORMED, position, expr)
            k = LETTERS.index(ch)
            if k >= n:
                raise RepParseError(UNKNOWN_LETTER, position, expr)
            chi ^= 1 << k
        counts[chi] += int(digits) if digits else 1

    return RepMultiset.from_counts(n, counts)


def format_character(chi: int) -> str:
    """Letters of a character, '1' for the trivial one"""
    if chi == 0:
        return '1'
    return ''.join(LETTERS[i] for i in bits_of(chi))


def format_rep(rep: RepMultiset) -> str:
    """Printer inverse to parse_rep; trivial summands repeat since '21' is not a term"""
    terms = []
    for chi, count in rep.counts:
        if chi == 0:
            terms.extend(['1'] * count)
        elif count == 1:
            terms.append(format_character(chi))
        else:
            terms.append(f"{count}{format_character(chi)}")
    return '+'.join(terms)
