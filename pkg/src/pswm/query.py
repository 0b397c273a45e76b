"""Query parsing: raw strings to flat syntax trees of search tokens."""

from __future__ import annotations

import re
from dataclasses import dataclass

# Alphanumeric runs (unicode-aware); underscore is a separator, not a token char.
_TOKEN_RE = re.compile(r"[^\W_]+")


def tokenize(text: str) -> list[str]:
    """Lowercase `text` and split it into alphanumeric runs.

    The same tokenizer is used for queries, document bodies, and metadata
    normalization, so candidate matching and scoring agree on what a token
    is. Empty input yields an empty list.
    """
    return _TOKEN_RE.findall(text.lower())


@dataclass
class QuerySyntaxTree:
    """Root of a parsed query: the raw string plus its ordered leaf tokens."""

    raw: str
    leaves: list[str]


def build_syntax_tree(query: str) -> QuerySyntaxTree:
    """Parse `query` into a syntax tree whose leaves are its tokens.

    Raises ValueError when the query contains no searchable tokens.
    """
    leaves = tokenize(query)
    if not leaves:
        raise ValueError("empty query: no searchable tokens")
    return QuerySyntaxTree(raw=query, leaves=leaves)
