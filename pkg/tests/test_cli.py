import json

from click.testing import CliRunner

from evmatrix.cli import main


def test_ingest_prints_report(small_synthetic):
    runner = CliRunner()
    result = runner.invoke(main, ["ingest", str(small_synthetic / "fixture.jsonl")])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["n_documents"] == 40


def test_ingest_installs_into_data_dir(small_synthetic, tmp_path):
    runner = CliRunner()
    data = tmp_path / "data"
    result = runner.invoke(
        main, ["ingest", str(small_synthetic / "fixture.jsonl"), "--data", str(data)]
    )
    assert result.exit_code == 0, result.output
    assert (data / "fixture.jsonl").exists()


def test_build_matrix_oneshot_from_file(small_synthetic):
    runner = CliRunner()
    result = runner.invoke(main, [
        "build-matrix", "--corpus", str(small_synthetic / "fixture.jsonl"),
        "--seed", "SR0000",
    ])
    assert result.exit_code == 0, result.output
    record = json.loads(result.output)
    assert record["seed_id"] == "SR0000"
    assert record["rows"][0] == "SR0000"


def test_build_matrix_persistent_then_export(small_synthetic, tmp_path):
    import shutil

    runner = CliRunner()
    data = tmp_path / "data"
    shutil.copytree(small_synthetic, data)
    result = runner.invoke(main, [
        "build-matrix", "--corpus", str(data), "--seed", "SR0000",
    ])
    assert result.exit_code == 0, result.output
    matrix_id = result.output.split()[2].rstrip(":")
    assert (data / "matrices" / f"{matrix_id}.events.jsonl").exists()

    exported = runner.invoke(main, [
        "export", "--matrix", matrix_id, "--data", str(data), "--only-relevant",
    ])
    assert exported.exit_code == 0, exported.output
    record = json.loads(exported.output)
    assert record["rows"] == ["SR0000"]

    csv_result = runner.invoke(main, [
        "export", "--matrix", matrix_id, "--data", str(data), "--format", "csv",
    ])
    assert csv_result.exit_code == 0
    assert csv_result.output.splitlines()[0].startswith(",")


def test_export_unknown_matrix_fails(small_synthetic, tmp_path):
    import shutil

    data = tmp_path / "data"
    shutil.copytree(small_synthetic, data)
    runner = CliRunner()
    result = runner.invoke(main, ["export", "--matrix", "nope", "--data", str(data)])
    assert result.exit_code == 1


def test_simulate_writes_report(synthetic_fixture, tmp_path):
    cp, tp = synthetic_fixture
    out = tmp_path / "report.json"
    runner = CliRunner()
    result = runner.invoke(main, [
        "simulate", "--corpus", str(cp), "--seed", "SR0000", "--truth", str(tp),
        "--k", "10", "--rounds", "50", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["final_recall"] == 1.0
    assert len(report["recall_curve"]) == report["rounds"]


def test_synth_command(tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, [
        "synth", "--n-docs", "30", "--n-relevant", "8", "--seed", "3",
        "--out-corpus", str(tmp_path / "c.jsonl"),
        "--out-truth", str(tmp_path / "t.json"),
    ])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "c.jsonl").exists()
    truth = json.loads((tmp_path / "t.json").read_text())
    assert sum(1 for v in truth.values() if v == "relevant") == 8
