"""Rank target-platform libraries for a hardware component.

Each header file is a document; a component name is the query. Relevance is
the usual TFIDF sum with log10 throughout, nudged by how often engineers
picked a library for the same component before.
"""

import math
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType

from .errors import EmptyCorpus
from .terms import tokenize

DEFAULT_TOP_K = 5
DEFAULT_HISTORY_WEIGHT = 1.0


@dataclass(frozen=True)
class LibraryIndex:
    N: int
    df: MappingProxyType  # term -> number of headers containing it
    tf: MappingProxyType  # (term, library) -> occurrences, only when >= 1
    libraries: tuple

    def idf(self, term):
        df = self.df.get(term, 0)
        return math.log10(self.N / df) if df else 0.0


@dataclass(frozen=True)
class ComponentQuery:
    component_title: str
    terms: tuple

    @classmethod
    def of(cls, title):
        return cls(title, tuple(tokenize(title)))


@dataclass(frozen=True)
class RankedEntry:
    library: str
    tfidf: float
    history_count: int
    combined: float


@dataclass(frozen=True)
class RankedList:
    component: str
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def libraries(self):
        return [e.library for e in self.entries]


def build_index(headers):
    headers = list(headers)
    if not headers:
        raise EmptyCorpus("the header corpus is empty")
    df, tf = Counter(), {}
    for doc in headers:
        counts = doc.token_multiset
        df.update(counts.keys())
        for term, c in counts.items():
            tf[(term, doc.library_name)] = tf.get((term, doc.library_name), 0) + c
    return LibraryIndex(
        N=len(headers),
        df=MappingProxyType(dict(df)),
        tf=MappingProxyType(tf),
        libraries=tuple(sorted({d.library_name for d in headers})),
    )


def tfidf(query, library, index):
    """Sum over query terms (duplicates counted) that occur in ``library``."""
    if isinstance(query, str):
        query = ComponentQuery.of(query)
    score = 0.0
    for term in query.terms:
        f = index.tf.get((term, library), 0)
        if f:
            score += (1 + math.log10(f)) * index.idf(term)
    return score


def rank(component_title, index, history, top_k=DEFAULT_TOP_K, history_weight=DEFAULT_HISTORY_WEIGHT):
    if top_k < 1:
        raise ValueError("top_k must be at least 1")
    query = ComponentQuery.of(component_title)
    entries = []
    for lib in index.libraries:
        score = tfidf(query, lib, index)
        count = history.count(component_title, lib)
        entries.append(RankedEntry(lib, score, count, score + history_weight * math.log10(1 + count)))
    entries.sort(key=lambda e: (-e.combined, e.library))
    return RankedList(component_title, tuple(entries[:top_k]))


def format_table(ranked):
    rows = [("#", "library", "tfidf", "history", "combined")]
    for i, e in enumerate(ranked.entries, 1):
        rows.append((str(i), e.library, f"{e.tfidf:.4f}", str(e.history_count), f"{e.combined:.4f}"))
    widths = [max(len(r[c]) for r in rows) for c in range(5)]
    lines = [f"{ranked.component}:"]
    for r in rows:
        cells = [r[0].rjust(widths[0]), r[1].ljust(widths[1])]
        cells += [r[c].rjust(widths[c]) for c in range(2, 5)]
        lines.append("  " + "  ".join(cells).rstrip())
    return "\n".join(lines)
