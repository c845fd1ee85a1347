import json

import pytest

from evmatrix.corpus import CorpusError, load_corpus

from conftest import write_corpus


def test_one_of_each_type_counts(tmp_path):
    records = [
        {"id": f"d{i}", "type": t, "title": f"title {i}"}
        for i, t in enumerate(
            ["primary_study", "systematic_review", "overview",
             "structured_summary_ps", "structured_summary_sr"]
        )
    ]
    corpus = load_corpus(write_corpus(tmp_path / "c.jsonl", records))
    assert corpus.report.type_counts == {
        "primary_study": 1,
        "systematic_review": 1,
        "overview": 1,
        "structured_summary_ps": 1,
        "structured_summary_sr": 1,
    }
    assert corpus.report.n_documents == 5


def test_full_scale_type_counts(tmp_path):
    # production-scale distribution: 261085 / 71597 / 1068 / 1344 / 37735
    counts = {
        "primary_study": 261085,
        "systematic_review": 71597,
        "overview": 1068,
        "structured_summary_ps": 1344,
        "structured_summary_sr": 37735,
    }
    lines = []
    i = 0
    for doc_type, n in counts.items():
        for _ in range(n):
            lines.append('{"id":"d%d","type":"%s","title":"t"}' % (i, doc_type))
            i += 1
    path = tmp_path / "big.jsonl"
    path.write_text("\n".join(lines), encoding="utf-8")
    corpus = load_corpus(path)
    assert corpus.report.type_counts == counts
    assert corpus.report.n_documents == sum(counts.values())


def test_dangling_reference_dropped(tmp_path):
    records = [
        {"id": "A", "type": "primary_study", "title": "a", "references": ["Z"]},
    ]
    corpus = load_corpus(write_corpus(tmp_path / "c.jsonl", records))
    assert corpus.documents["A"].references == ()
    assert corpus.report.dangling_count == 1


def test_self_reference_dropped(tmp_path):
    records = [
        {"id": "A", "type": "primary_study", "title": "a", "references": ["A", "B"]},
        {"id": "B", "type": "primary_study", "title": "b"},
    ]
    corpus = load_corpus(write_corpus(tmp_path / "c.jsonl", records))
    assert corpus.documents["A"].references == ("B",)


def test_malformed_line_skipped_with_line_number(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(
        '{"id":"A","type":"primary_study","title":"a"}\n'
        "not json at all\n"
        '{"id":"B","type":"primary_study"}\n'  # missing title
        '{"id":"C","type":"primary_study","title":"c"}\n'
    )
    corpus = load_corpus(path)
    assert set(corpus.documents) == {"A", "C"}
    assert [ln for ln, _ in corpus.report.malformed_lines] == [2, 3]


def test_duplicate_id_keeps_first(tmp_path):
    records = [
        {"id": "A", "type": "primary_study", "title": "first"},
        {"id": "A", "type": "overview", "title": "second"},
    ]
    corpus = load_corpus(write_corpus(tmp_path / "c.jsonl", records))
    assert corpus.documents["A"].title == "first"
    assert corpus.report.duplicate_ids == ["A"]
    assert corpus.report.n_documents == 1


def test_missing_abstract_allowed_missing_title_rejected(tmp_path):
    records = [
        {"id": "A", "type": "primary_study", "title": "a"},
        {"id": "B", "type": "primary_study", "title": "   "},
    ]
    corpus = load_corpus(write_corpus(tmp_path / "c.jsonl", records))
    assert corpus.documents["A"].abstract == ""
    assert "B" not in corpus.documents


def test_unreadable_file():
    with pytest.raises(CorpusError):
        load_corpus("/nonexistent/corpus.jsonl")


def test_neighbors_directions(fig2_corpus):
    assert fig2_corpus.neighbors("S", "cites") == ["P1", "P2"]
    assert fig2_corpus.neighbors("P1", "cited_by") == ["S", "S2"]
    assert fig2_corpus.neighbors("P2", "cites") == []


def test_neighbors_unknown_id(fig2_corpus):
    with pytest.raises(CorpusError):
        fig2_corpus.neighbors("nope", "cites")


def test_backward_is_exact_transpose(fig2_corpus):
    graph = fig2_corpus.graph
    rebuilt: dict[str, list[str]] = {k: [] for k in graph.forward}
    for src, targets in graph.forward.items():
        for tgt in targets:
            rebuilt[tgt].append(src)
    assert {k: tuple(sorted(v)) for k, v in rebuilt.items()} == graph.backward


def test_load_is_deterministic(tmp_path, fig2_corpus):
    from conftest import FIG2_RECORDS

    path = write_corpus(tmp_path / "again.jsonl", FIG2_RECORDS)
    a = load_corpus(path)
    b = load_corpus(path)
    assert a.documents == b.documents
    assert a.report.to_dict()["type_counts"] == b.report.to_dict()["type_counts"]


def test_type_counts_sum_matches_accepted(small_synthetic):
    corpus = load_corpus(small_synthetic / "fixture.jsonl")
    assert sum(corpus.report.type_counts.values()) == corpus.report.n_documents
