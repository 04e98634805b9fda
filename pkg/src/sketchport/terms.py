"""Term extraction shared by the header corpus and component-name queries."""

import re
from collections import Counter

# camelCase humps, acronym runs ("HTMLParser" -> HTML, Parser), digit runs.
_WORD = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def tokenize(text):
    """Split ``text`` into lowercase terms, in order, keeping duplicates.

    Boundaries are non-alphanumerics, lower-to-upper case changes and
    letter/digit changes. Single-character terms are dropped.

    >>> tokenize("Red (633nm) LED")
    ['red', '633', 'nm', 'led']
    >>> tokenize("MAX_SERVOS")
    ['max', 'servos']
    """
    return [w.lower() for w in _WORD.findall(text) if len(w) > 1]


def term_counts(text):
    return Counter(tokenize(text))
