"""Corpus ingestion and the inverted index.

Corpus files are UTF-8 with one JSON record per line:

    {"id": "d1", "body": "plain text ...",
     "url": "http://...", "title": "...",
     "meta": {"keywords": ["web", "mining"], "concepts": {"search": 0.8}}}

`id` and `body` are required; `url`, `title`, and `meta` are optional.

Index files are UTF-8 text. Line 1 is the magic ``PSWM-INDEX v1``. Line 2
is ``{"doc_count": N}`` followed by N document records (one JSON object per
line, ascending id). Next comes ``{"token_count": M}`` followed by M posting
lines ``{"token": t, "postings": [[doc_id, tf], ...]}`` in ascending token
order, each posting list ascending by doc id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DataError
from .query import tokenize

INDEX_MAGIC = "PSWM-INDEX v1"


@dataclass
class MetaRecord:
    """Keyword and weighted concept tags describing what a document means."""

    keywords: set[str] = field(default_factory=set)
    concepts: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_raw(cls, keywords, concepts) -> MetaRecord:
        """Build a normalized record from raw tag data.

        Keywords and concept tags are stripped and lowercased; empty tags are
        dropped. Raises ValueError on non-string tags or concept weights
        outside [0, 1].
        """
        norm_kw: set[str] = set()
        for kw in keywords:
            if not isinstance(kw, str):
                raise ValueError(f"keyword is not a string: {kw!r}")
            kw = kw.strip().lower()
            if kw:
                norm_kw.add(kw)
        norm_concepts: dict[str, float] = {}
        for tag, weight in concepts.items():
            if not isinstance(tag, str):
                raise ValueError(f"concept tag is not a string: {tag!r}")
            if isinstance(weight, bool) or not isinstance(weight, (int, float)):
                raise ValueError(f"concept weight for {tag!r} is not a number: {weight!r}")
            w = float(weight)
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"concept weight for {tag!r} outside [0, 1]: {w}")
            tag = tag.strip().lower()
            if tag:
                norm_concepts[tag] = w
        return cls(keywords=norm_kw, concepts=norm_concepts)


@dataclass
class Document:
    """One searchable item: identifier, display fields, body text, metadata."""

    id: str
    url: str = ""
    title: str = ""
    body: str = ""
    meta: MetaRecord = field(default_factory=MetaRecord)


@dataclass
class InvertedIndex:
    """Immutable-by-convention token index over a document set.

    `postings` maps each body token to an ascending-by-doc-id list of
    (doc_id, term_frequency) pairs; `docs` maps ids to documents.
    """

    postings: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    docs: dict[str, Document] = field(default_factory=dict)
    doc_count: int = 0


def _parse_record(obj, line_no: int) -> Document:
    if not isinstance(obj, dict):
        raise DataError(f"line {line_no}: record is not a JSON object")
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise DataError(f"line {line_no}: missing or empty 'id'")
    body = obj.get("body")
    if not isinstance(body, str):
        raise DataError(f"line {line_no}: missing 'body' string")
    url = obj.get("url", "")
    title = obj.get("title", "")
    if not isinstance(url, str) or not isinstance(title, str):
        raise DataError(f"line {line_no}: 'url' and 'title' must be strings")
    raw_meta = obj.get("meta", {})
    if not isinstance(raw_meta, dict):
        raise DataError(f"line {line_no}: 'meta' must be an object")
    keywords = raw_meta.get("keywords", [])
    concepts = raw_meta.get("concepts", {})
    if not isinstance(keywords, list) or not isinstance(concepts, dict):
        raise DataError(
            f"line {line_no}: 'meta.keywords' must be an array and 'meta.concepts' an object"
        )
    try:
        meta = MetaRecord.from_raw(keywords, concepts)
    except ValueError as exc:
        raise DataError(f"line {line_no}: {exc}") from exc
    return Document(id=doc_id, url=url, title=title, body=body, meta=meta)


def parse_corpus_file(path) -> list[Document]:
    """Read a line-delimited corpus file into documents, in file order.

    Blank lines are skipped. Raises DataError on unreadable files, malformed
    lines (naming the line number), or duplicate ids (naming the id).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read corpus file {path}: {exc}") from exc

    docs: list[Document] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"line {line_no}: invalid JSON: {exc}") from exc
        doc = _parse_record(obj, line_no)
        if doc.id in seen:
            raise DataError(f"line {line_no}: duplicate document id {doc.id!r}")
        seen.add(doc.id)
        docs.append(doc)
    return docs


def build_index(docs: list[Document]) -> InvertedIndex:
    """Build the inverted index over `docs`.

    Deterministic regardless of input order: posting lists are sorted by
    doc id. Raises ValueError on duplicate ids.
    """
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_map: dict[str, Document] = {}
    for doc in docs:
        if doc.id in doc_map:
            raise ValueError(f"duplicate document id {doc.id!r}")
        doc_map[doc.id] = doc
        counts: dict[str, int] = {}
        for token in tokenize(doc.body):
            counts[token] = counts.get(token, 0) + 1
        for token, tf in counts.items():
            postings.setdefault(token, []).append((doc.id, tf))
    for entries in postings.values():
        entries.sort(key=lambda pair: pair[0])
    return InvertedIndex(postings=postings, docs=doc_map, doc_count=len(doc_map))


def _doc_to_json(doc: Document) -> str:
    payload = {
        "id": doc.id,
        "url": doc.url,
        "title": doc.title,
        "body": doc.body,
        "meta": {
            "keywords": sorted(doc.meta.keywords),
            "concepts": doc.meta.concepts,
        },
    }
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def save_index(index: InvertedIndex, path) -> None:
    """Write `index` to `path` in the versioned text format (see module doc)."""
    lines = [INDEX_MAGIC, json.dumps({"doc_count": index.doc_count})]
    for doc_id in sorted(index.docs):
        lines.append(_doc_to_json(index.docs[doc_id]))
    lines.append(json.dumps({"token_count": len(index.postings)}))
    for token in sorted(index.postings):
        entry = {"token": token, "postings": [[d, tf] for d, tf in index.postings[token]]}
        lines.append(json.dumps(entry, ensure_ascii=False, sort_keys=True, separators=(",", ":")))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _load_json_line(lines: list[str], pos: int, what: str):
    if pos >= len(lines):
        raise DataError(f"truncated index file: expected {what} at line {pos + 1}")
    try:
        return json.loads(lines[pos])
    except json.JSONDecodeError as exc:
        raise DataError(f"line {pos + 1}: invalid {what}: {exc}") from exc


def load_index(path) -> InvertedIndex:
    """Read an index written by `save_index`.

    Raises DataError on a bad magic line, truncation, or any structural
    inconsistency; never returns a partially loaded index.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read index file {path}: {exc}") from exc
    if not lines or lines[0] != INDEX_MAGIC:
        raise DataError(f"not a {INDEX_MAGIC} file: {path}")

    header = _load_json_line(lines, 1, "doc count header")
    doc_count = header.get("doc_count") if isinstance(header, dict) else None
    if not isinstance(doc_count, int) or doc_count < 0:
        raise DataError("line 2: invalid doc_count")

    docs: dict[str, Document] = {}
    pos = 2
    for _ in range(doc_count):
        obj = _load_json_line(lines, pos, "document record")
        doc = _parse_record(obj, pos + 1)
        if doc.id in docs:
            raise DataError(f"line {pos + 1}: duplicate document id {doc.id!r}")
        docs[doc.id] = doc
        pos += 1

    header = _load_json_line(lines, pos, "token count header")
    token_count = header.get("token_count") if isinstance(header, dict) else None
    if not isinstance(token_count, int) or token_count < 0:
        raise DataError(f"line {pos + 1}: invalid token_count")
    pos += 1

    postings: dict[str, list[tuple[str, int]]] = {}
    for _ in range(token_count):
        obj = _load_json_line(lines, pos, "posting record")
        line_no = pos + 1
        token = obj.get("token") if isinstance(obj, dict) else None
        raw = obj.get("postings") if isinstance(obj, dict) else None
        if not isinstance(token, str) or not token or not isinstance(raw, list):
            raise DataError(f"line {line_no}: malformed posting record")
        if token in postings:
            raise DataError(f"line {line_no}: duplicate token {token!r}")
        entries: list[tuple[str, int]] = []
        for pair in raw:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not isinstance(pair[0], str)
                or not isinstance(pair[1], int)
                or pair[1] < 1
            ):
                raise DataError(f"line {line_no}: malformed posting entry for {token!r}")
            if pair[0] not in docs:
                raise DataError(f"line {line_no}: posting references unknown doc {pair[0]!r}")
            entries.append((pair[0], pair[1]))
        ids = [d for d, _ in entries]
        if ids != sorted(set(ids)):
            raise DataError(f"line {line_no}: posting list for {token!r} not sorted/unique")
        postings[token] = entries
        pos += 1

    if any(line.strip() for line in lines[pos:]):
        raise DataError(f"line {pos + 1}: trailing content after index data")
    return InvertedIndex(postings=postings, docs=docs, doc_count=doc_count)
