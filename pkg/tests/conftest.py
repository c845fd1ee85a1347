import json
from pathlib import Path

import pytest

from evmatrix.corpus import load_corpus
from evmatrix.synthgen import generate_synthetic_corpus


def write_corpus(path: Path, records: list[dict]) -> Path:
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")
    return path


FIG2_RECORDS = [
    {"id": "S", "type": "systematic_review", "title": "seed review",
     "references": ["P1", "P2"]},
    {"id": "S2", "type": "systematic_review", "title": "second review",
     "references": ["P1", "P3"]},
    {"id": "P1", "type": "primary_study", "title": "study one"},
    {"id": "P2", "type": "primary_study", "title": "study two"},
    {"id": "P3", "type": "primary_study", "title": "study three"},
]


@pytest.fixture
def fig2_corpus(tmp_path):
    """5-node citation graph: seed cites P1,P2; S2 cites P1,P3."""
    return load_corpus(write_corpus(tmp_path / "fig2.jsonl", FIG2_RECORDS))


@pytest.fixture(scope="session")
def synthetic_fixture(tmp_path_factory):
    """The standard synthetic corpus: 300 docs, 60 true-relevant, seed 0."""
    d = tmp_path_factory.mktemp("synthetic")
    corpus_path, truth_path = generate_synthetic_corpus(
        300, 60, d / "synthetic.jsonl", d / "synthetic.truth.json", seed=0
    )
    return corpus_path, truth_path


@pytest.fixture(scope="session")
def small_synthetic(tmp_path_factory):
    """A 40-doc corpus for service-level tests."""
    d = tmp_path_factory.mktemp("small")
    generate_synthetic_corpus(
        40, 10, d / "fixture.jsonl", d / "fixture.truth.json", seed=1
    )
    return d
