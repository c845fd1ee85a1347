"""Evidence matrix construction and export.

An evidence matrix pairs systematic reviews (rows) with the primary studies
they cite (columns). The initial matrix grows from a seed review in exactly
three breadth-first layers over the citation graph:

    L1_PS: primary studies cited by the seed
    L2_SR: other systematic reviews citing any L1 study
    L3_PS: primary studies cited by an L2 review, not already columns

Traversal order is fixed by the corpus' sorted adjacency lists, so builds
are reproducible.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .corpus import COL_TYPE, ROW_TYPE, Corpus

LABELS = ("relevant", "non_relevant", "unknown")

LAYER_SEED = "seed"
LAYER_L1_PS = "L1_PS"
LAYER_L2_SR = "L2_SR"
LAYER_L3_PS = "L3_PS"


@dataclass
class EvidenceMatrix:
    matrix_id: str
    seed_id: str
    rows: list[str]
    cols: list[str]
    cells: set[tuple[str, str]]
    labels: dict[str, str]
    layer: dict[str, str]

    @property
    def doc_ids(self) -> list[str]:
        return self.rows + self.cols

    def set_label(self, doc_id: str, label: str) -> None:
        if doc_id not in self.labels:
            raise KeyError(f"document {doc_id!r} is not in the matrix")
        if label not in LABELS:
            raise ValueError(f"invalid label {label!r}")
        self.labels[doc_id] = label

    def labeled(self, label: str) -> list[str]:
        return [d for d in self.doc_ids if self.labels[d] == label]


def build_initial_matrix(
    corpus: Corpus, seed_id: str, matrix_id: str | None = None
) -> EvidenceMatrix:
    """Three-layer BFS from a seed systematic review.

    Only systematic reviews become rows and only primary studies become
    columns; other document types encountered during traversal are skipped.
    A study reachable through both L1 and L3 keeps its earliest layer.
    """
    seed = corpus.get(seed_id)
    if seed.doc_type != ROW_TYPE:
        raise ValueError(
            f"seed {seed_id!r} has type {seed.doc_type!r}; a {ROW_TYPE} is required"
        )

    layer: dict[str, str] = {seed_id: LAYER_SEED}

    l1_ps: list[str] = []
    for ref in corpus.neighbors(seed_id, "cites"):
        if corpus.get(ref).doc_type == COL_TYPE and ref not in layer:
            layer[ref] = LAYER_L1_PS
            l1_ps.append(ref)

    l2_sr: list[str] = []
    for ps in l1_ps:
        for citer in corpus.neighbors(ps, "cited_by"):
            if (
                citer != seed_id
                and corpus.get(citer).doc_type == ROW_TYPE
                and citer not in layer
            ):
                layer[citer] = LAYER_L2_SR
                l2_sr.append(citer)

    l3_ps: list[str] = []
    for sr in l2_sr:
        for ref in corpus.neighbors(sr, "cites"):
            if corpus.get(ref).doc_type == COL_TYPE and ref not in layer:
                layer[ref] = LAYER_L3_PS
                l3_ps.append(ref)

    rows = [seed_id] + l2_sr
    cols = l1_ps + l3_ps
    forward = corpus.graph.forward
    col_set = set(cols)
    cells = {(r, c) for r in rows for c in forward[r] if c in col_set}
    labels = {doc_id: "unknown" for doc_id in rows + cols}
    labels[seed_id] = "relevant"
    return EvidenceMatrix(
        matrix_id=matrix_id or f"m-{seed_id}",
        seed_id=seed_id,
        rows=rows,
        cols=cols,
        cells=cells,
        labels=labels,
        layer=layer,
    )


def export_matrix(m: EvidenceMatrix, only_relevant: bool = False) -> dict:
    """JSON-serializable export; with only_relevant, rows/cols shrink to
    documents currently labeled relevant (cells restricted accordingly)."""
    rows = [r for r in m.rows if not only_relevant or m.labels[r] == "relevant"]
    cols = [c for c in m.cols if not only_relevant or m.labels[c] == "relevant"]
    keep = set(rows), set(cols)
    cells = sorted((r, c) for r, c in m.cells if r in keep[0] and c in keep[1])
    return {
        "matrix_id": m.matrix_id,
        "seed_id": m.seed_id,
        "rows": rows,
        "cols": cols,
        "cells": [[r, c] for r, c in cells],
        "labels": {d: m.labels[d] for d in rows + cols},
    }


def import_matrix(record: dict) -> EvidenceMatrix:
    """Inverse of export_matrix for full (unfiltered) exports."""
    rows = list(record["rows"])
    cols = list(record["cols"])
    matrix = EvidenceMatrix(
        matrix_id=record["matrix_id"],
        seed_id=record["seed_id"],
        rows=rows,
        cols=cols,
        cells={(r, c) for r, c in record["cells"]},
        labels=dict(record["labels"]),
        layer={},
    )
    return matrix


def export_matrix_csv(m: EvidenceMatrix, only_relevant: bool = False) -> str:
    """Spreadsheet grid: one row per SR, one column per PS, cells "1"/"0"."""
    record = export_matrix(m, only_relevant)
    cells = {(r, c) for r, c in record["cells"]}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + record["cols"])
    for r in record["rows"]:
        writer.writerow([r] + ["1" if (r, c) in cells else "0" for c in record["cols"]])
    return buf.getvalue()
