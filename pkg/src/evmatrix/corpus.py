"""Document collection and citation graph.

A corpus is loaded once from a JSON-lines file and is immutable afterwards,
so any number of readers may share it. References pointing outside the
corpus (or at the document itself) are dropped at load time and counted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

DOC_TYPES = (
    "primary_study",
    "systematic_review",
    "overview",
    "structured_summary_ps",
    "structured_summary_sr",
)

# Only these two types can ever become matrix rows / columns.
ROW_TYPE = "systematic_review"
COL_TYPE = "primary_study"


class CorpusError(Exception):
    """Raised for unreadable corpus files or unknown document ids."""


@dataclass(frozen=True)
class Document:
    id: str
    doc_type: str
    title: str
    abstract: str = ""
    year: int | None = None
    authors: tuple[str, ...] = ()
    references: tuple[str, ...] = ()

    @property
    def text(self) -> str:
        """Indexable text: title and abstract, space-joined."""
        return f"{self.title} {self.abstract}" if self.abstract else self.title


@dataclass
class IngestReport:
    path: str
    n_documents: int = 0
    type_counts: dict[str, int] = field(default_factory=dict)
    dangling_count: int = 0
    malformed_lines: list[tuple[int, str]] = field(default_factory=list)
    duplicate_ids: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "path": self.path,
            "n_documents": self.n_documents,
            "type_counts": dict(self.type_counts),
            "dangling_count": self.dangling_count,
            "malformed_lines": [[ln, msg] for ln, msg in self.malformed_lines],
            "duplicate_ids": list(self.duplicate_ids),
        }


class CitationGraph:
    """Forward (cites) and backward (cited-by) adjacency, kept as exact
    transposes of each other. Neighbor lists are sorted ascending by id so
    every traversal is deterministic."""

    def __init__(self, forward: dict[str, tuple[str, ...]]):
        self.forward = forward
        backward: dict[str, list[str]] = {doc_id: [] for doc_id in forward}
        for src, targets in forward.items():
            for tgt in targets:
                backward[tgt].append(src)
        self.backward = {k: tuple(sorted(v)) for k, v in backward.items()}


class Corpus:
    def __init__(self, documents: dict[str, Document], report: IngestReport):
        self.documents = documents
        self.report = report
        self.graph = CitationGraph(
            {doc_id: doc.references for doc_id, doc in documents.items()}
        )

    def __len__(self) -> int:
        return len(self.documents)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.documents

    def get(self, doc_id: str) -> Document:
        try:
            return self.documents[doc_id]
        except KeyError:
            raise CorpusError(f"unknown document id: {doc_id!r}") from None

    def neighbors(self, doc_id: str, direction: str) -> list[str]:
        """Adjacency of `doc_id`, ascending by id.

        direction: "cites" follows outgoing references, "cited_by" the
        transpose.
        """
        if doc_id not in self.documents:
            raise CorpusError(f"unknown document id: {doc_id!r}")
        if direction == "cites":
            return list(self.graph.forward[doc_id])
        if direction == "cited_by":
            return list(self.graph.backward[doc_id])
        raise ValueError(f"direction must be 'cites' or 'cited_by', got {direction!r}")


def _parse_record(obj: dict) -> Document:
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise ValueError("missing or empty id")
    doc_type = obj.get("type")
    if doc_type not in DOC_TYPES:
        raise ValueError(f"unknown type {doc_type!r}")
    title = obj.get("title")
    if not isinstance(title, str) or not title.strip():
        raise ValueError("missing title")
    abstract = obj.get("abstract") or ""
    if not isinstance(abstract, str):
        raise ValueError("abstract must be a string")
    year = obj.get("year")
    if year is not None and not isinstance(year, int):
        raise ValueError("year must be an integer or null")
    authors = obj.get("authors") or []
    if not isinstance(authors, list) or any(not isinstance(a, str) for a in authors):
        raise ValueError("authors must be a list of strings")
    references = obj.get("references") or []
    if not isinstance(references, list) or any(
        not isinstance(r, str) for r in references
    ):
        raise ValueError("references must be a list of strings")
    return Document(
        id=doc_id,
        doc_type=doc_type,
        title=title,
        abstract=abstract,
        year=year,
        authors=tuple(authors),
        references=tuple(references),
    )


def load_corpus(path: str | Path) -> Corpus:
    """Load a JSON-lines corpus file.

    Malformed lines and duplicate ids are skipped and counted in the report;
    references to absent ids (and self-references) are dropped per document
    and counted as dangling.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file {path}: {exc}") from exc

    report = IngestReport(path=str(path))
    parsed: dict[str, Document] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("record is not a JSON object")
            doc = _parse_record(obj)
        except (json.JSONDecodeError, ValueError) as exc:
            report.malformed_lines.append((lineno, str(exc)))
            continue
        if doc.id in parsed:
            report.duplicate_ids.append(doc.id)
            continue
        parsed[doc.id] = doc

    # Resolve references against the accepted id set.
    documents: dict[str, Document] = {}
    for doc_id, doc in parsed.items():
        kept = []
        for ref in doc.references:
            if ref != doc_id and ref in parsed:
                kept.append(ref)
            else:
                report.dangling_count += 1
        # dedupe, then sort for deterministic traversal
        refs = tuple(sorted(set(kept)))
        documents[doc_id] = Document(
            id=doc.id,
            doc_type=doc.doc_type,
            title=doc.title,
            abstract=doc.abstract,
            year=doc.year,
            authors=doc.authors,
            references=refs,
        )

    report.n_documents = len(documents)
    counts = {t: 0 for t in DOC_TYPES}
    for doc in documents.values():
        counts[doc.doc_type] += 1
    report.type_counts = counts
    return Corpus(documents, report)
