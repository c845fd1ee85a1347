"""Command-line entry points: ingest, build-matrix, serve, simulate, export,
and a synthetic-corpus generator for fixtures.

Configuration comes from flags or EVMATRIX_* environment variables.
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

import click

from .corpus import load_corpus
from .matrix import build_initial_matrix, export_matrix, export_matrix_csv
from .relevance import RocchioParams
from .simulate import simulate_curation
from .store import SessionStore
from .synthgen import generate_synthetic_corpus


def _params_options(fn):
    for name, default in (("alpha", 1.0), ("beta", 0.0), ("gamma", 1.0), ("delta", 0.1)):
        fn = click.option(
            f"--{name}",
            type=float,
            default=default,
            envvar=f"EVMATRIX_{name.upper()}",
            show_default=True,
        )(fn)
    fn = click.option(
        "--top-k", type=int, default=10, envvar="EVMATRIX_TOP_K", show_default=True
    )(fn)
    return fn


def _params(alpha, beta, gamma, delta, top_k) -> RocchioParams:
    return RocchioParams(alpha=alpha, beta=beta, gamma=gamma, delta=delta, top_k=top_k)


@click.group()
def main():
    """Evidence-matrix curation workbench."""


@main.command()
@click.argument("corpus_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--data", type=click.Path(file_okay=False, path_type=Path),
              envvar="EVMATRIX_DATA", default=None,
              help="Install the corpus into this data directory after validation.")
def ingest(corpus_file: Path, data: Path | None):
    """Validate a JSON-lines corpus file and print its ingest report."""
    corpus = load_corpus(corpus_file)
    report = corpus.report.to_dict()
    if data is not None:
        data.mkdir(parents=True, exist_ok=True)
        target = data / corpus_file.name
        shutil.copyfile(corpus_file, target)
        report["installed_to"] = str(target)
    click.echo(json.dumps(report, indent=2, sort_keys=True))


@main.command("build-matrix")
@click.option("--corpus", "corpus_path", required=True,
              type=click.Path(exists=True, path_type=Path), envvar="EVMATRIX_DATA",
              help="Data directory (persistent session) or corpus file (one-shot build).")
@click.option("--seed", "seed_id", required=True, help="Seed systematic-review id.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the matrix export JSON here instead of stdout.")
@click.option("--max-vocab", type=int, default=5000, envvar="EVMATRIX_MAX_VOCAB",
              show_default=True)
@_params_options
def build_matrix(corpus_path: Path, seed_id: str, out: Path | None, max_vocab: int,
                 alpha, beta, gamma, delta, top_k):
    """Build the initial evidence matrix from a seed systematic review."""
    if corpus_path.is_dir():
        from .service import find_corpus_file

        corpus = load_corpus(find_corpus_file(corpus_path))
        store = SessionStore(
            corpus,
            data_dir=corpus_path / "matrices",
            params=_params(alpha, beta, gamma, delta, top_k),
            max_vocab=max_vocab,
        )
        session = store.create_matrix(seed_id)
        assert session.matrix is not None
        record = export_matrix(session.matrix)
        click.echo(
            f"created matrix {session.matrix_id}: "
            f"{len(record['rows'])} rows x {len(record['cols'])} cols "
            f"(log: {corpus_path / 'matrices' / (session.matrix_id + '.events.jsonl')})"
        )
    else:
        corpus = load_corpus(corpus_path)
        record = export_matrix(build_initial_matrix(corpus, seed_id))
    text = json.dumps(record, indent=2, sort_keys=True)
    if out is not None:
        out.write_text(text + "\n", encoding="utf-8")
        click.echo(f"wrote {out}")
    elif not corpus_path.is_dir():
        click.echo(text)


@main.command()
@click.option("--port", type=int, default=8000, envvar="EVMATRIX_PORT", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path),
              envvar="EVMATRIX_DATA")
@click.option("--max-vocab", type=int, default=5000, envvar="EVMATRIX_MAX_VOCAB",
              show_default=True)
@click.option("--static", type=click.Path(file_okay=False, path_type=Path), default=None,
              envvar="EVMATRIX_STATIC", help="Directory of built frontend assets for /ui.")
@_params_options
def serve(port: int, host: str, data: Path, max_vocab: int, static: Path | None,
          alpha, beta, gamma, delta, top_k):
    """Serve the HTTP API (and the frontend, when built) over a data directory."""
    import uvicorn

    from .service import create_app

    app = create_app(
        data,
        max_vocab=max_vocab,
        params=_params(alpha, beta, gamma, delta, top_k),
        static_dir=static,
    )
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--corpus", "corpus_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--seed", "seed_id", required=True)
@click.option("--truth", "truth_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--k", type=int, default=10, show_default=True)
@click.option("--rounds", type=int, default=50, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--max-vocab", type=int, default=5000, envvar="EVMATRIX_MAX_VOCAB",
              show_default=True)
@_params_options
def simulate(corpus_path: Path, seed_id: str, truth_path: Path, k: int, rounds: int,
             out: Path | None, max_vocab: int, alpha, beta, gamma, delta, top_k):
    """Replay curation with a perfectly accurate simulated reviewer."""
    report = simulate_curation(
        corpus_path,
        seed_id,
        truth_path,
        k=k,
        max_rounds=rounds,
        max_vocab=max_vocab,
        params=_params(alpha, beta, gamma, delta, top_k),
    )
    text = json.dumps(report.to_dict(), indent=2)
    if out is not None:
        out.write_text(text + "\n", encoding="utf-8")
    click.echo(
        f"rounds={report.rounds} reviewed={report.reviewed_count} "
        f"final_recall={report.final_recall:.3f}"
    )
    if out is None:
        click.echo(text)


@main.command()
@click.option("--matrix", "matrix_id", required=True)
@click.option("--data", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path),
              envvar="EVMATRIX_DATA")
@click.option("--only-relevant", is_flag=True, default=False)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--max-vocab", type=int, default=5000, envvar="EVMATRIX_MAX_VOCAB",
              show_default=True)
def export(matrix_id: str, data: Path, only_relevant: bool, fmt: str, out: Path | None,
           max_vocab: int):
    """Export a curated matrix from a data directory as JSON or a CSV grid."""
    from .service import find_corpus_file

    corpus = load_corpus(find_corpus_file(data))
    store = SessionStore(corpus, data_dir=data / "matrices", max_vocab=max_vocab)
    try:
        session = store.get(matrix_id)
    except KeyError as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    assert session.matrix is not None
    if fmt == "csv":
        text = export_matrix_csv(session.matrix, only_relevant)
    else:
        text = json.dumps(export_matrix(session.matrix, only_relevant),
                          indent=2, sort_keys=True) + "\n"
    if out is not None:
        out.write_text(text, encoding="utf-8")
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--n-docs", type=int, default=300, show_default=True)
@click.option("--n-relevant", type=int, default=60, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-corpus", type=click.Path(dir_okay=False, path_type=Path),
              default=Path("synthetic.jsonl"), show_default=True)
@click.option("--out-truth", type=click.Path(dir_okay=False, path_type=Path),
              default=Path("synthetic.truth.json"), show_default=True)
def synth(n_docs: int, n_relevant: int, seed: int, out_corpus: Path, out_truth: Path):
    """Generate a deterministic synthetic corpus plus truth labels."""
    corpus_path, truth_path = generate_synthetic_corpus(
        n_docs, n_relevant, out_corpus, out_truth, seed=seed
    )
    click.echo(f"wrote {corpus_path} and {truth_path}")


if __name__ == "__main__":
    main()
