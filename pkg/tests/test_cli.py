import json

import pytest

from girthfive.cli import main
from girthfive.fixtures import published_sparse6
from girthfive.graphs import graph_from_edges
from girthfive.sparse6 import decode_sparse6, encode_sparse6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerify:
    def test_published_fixture(self, tmp_path, capsys):
        path = tmp_path / "g.s6"
        path.write_bytes(published_sparse6())
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        assert "n=64 edges=230" in out
        assert "feasible=yes" in out
        assert "reference=230" in out and "bound=253" in out

    def test_infeasible_exit_code(self, tmp_path, capsys):
        c4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        path = tmp_path / "c4.s6"
        path.write_bytes(encode_sparse6(c4))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1 and "feasible=no" in out

    def test_trivial_graph(self, tmp_path, capsys):
        path = tmp_path / "one.s6"
        path.write_bytes(b":@")
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0 and "edges=0" in out

    def test_decode_failure(self, tmp_path, capsys):
        path = tmp_path / "bad.s6"
        path.write_bytes(b"garbage")
        code, _, err = run(capsys, "verify", str(path))
        assert code == 3 and "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "verify", "/nonexistent/file.s6")
        assert code == 3


class TestConvert:
    def test_sparse6_to_edges_and_back(self, tmp_path, capsys):
        c5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        src = tmp_path / "c5.s6"
        src.write_bytes(encode_sparse6(c5))
        code, out, _ = run(capsys, "convert", str(src), "--to", "edges")
        assert code == 0
        edges = tmp_path / "c5.edges"
        edges.write_text(out)
        code, out2, _ = run(capsys, "convert", str(edges), "--to", "sparse6")
        assert code == 0
        assert decode_sparse6(out2.strip().encode()) == c5

    def test_json_output(self, tmp_path, capsys):
        src = tmp_path / "one.s6"
        src.write_bytes(b":@")
        code, out, _ = run(capsys, "convert", str(src), "--to", "json")
        obj = json.loads(out)
        assert obj["n"] == 1 and obj["feasible"] is True


class TestOracle:
    def test_n5(self, capsys):
        code, out, _ = run(capsys, "oracle", "--n", "5")
        assert code == 0
        assert "f=5" in out and "witnesses=1" in out
        witness = out.strip().splitlines()[-1]
        g = decode_sparse6(witness.encode())
        assert g.n == 5 and g.edge_count == 5

    def test_too_big(self, capsys):
        code, _, err = run(capsys, "oracle", "--n", "9")
        assert code == 2


class TestSearchAndReport:
    def test_search_writes_archive(self, tmp_path, capsys):
        arch = tmp_path / "arch"
        code, out, _ = run(
            capsys, "search", "--n", "10", "--restarts", "8", "--seed", "1",
            "--archive", str(arch),
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["best_score"] == 15
        assert payload["seed"] == 1  # resolved config echoed
        code, out, _ = run(capsys, "report", "--archive", str(arch), "--csv", str(tmp_path / "r.csv"))
        assert code == 0
        assert "0.35355" in out  # conjectured density limit column
        rows = (tmp_path / "r.csv").read_text().splitlines()
        assert rows[0].startswith("n,score,normalized")
        assert rows[1].startswith("10,15,")

    def test_report_missing_archive(self, tmp_path, capsys):
        code, _, err = run(capsys, "report", "--archive", str(tmp_path / "none"))
        assert code == 3

    def test_reference_csv_dump(self, tmp_path, capsys):
        arch = tmp_path / "arch"
        run(capsys, "search", "--n", "5", "--restarts", "2", "--archive", str(arch))
        ref = tmp_path / "reference.csv"
        code, _, _ = run(capsys, "report", "--archive", str(arch), "--reference-csv", str(ref))
        assert code == 0
        assert len(ref.read_text().splitlines()) == 201


class TestCampaignCommand:
    def test_small_campaign_and_resume(self, tmp_path, capsys):
        arch = tmp_path / "camp"
        code, out, _ = run(
            capsys, "campaign", "--range", "5:7", "--runs-per-worker", "3",
            "--workers", "1", "--archive", str(arch), "--seed", "4",
            "--report", str(tmp_path / "report.json"),
        )
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        before = {row["n"]: row["best_score"] for row in report["rows"]}
        assert before == {5: 5, 6: 6, 7: 8}
        code, out, _ = run(
            capsys, "campaign", "--range", "5:7", "--runs-per-worker", "1",
            "--workers", "1", "--resume", str(arch), "--seed", "5",
            "--report", str(tmp_path / "report2.json"),
        )
        assert code == 0
        after = {
            row["n"]: row["best_score"]
            for row in json.loads((tmp_path / "report2.json").read_text())["rows"]
        }
        assert all(after[n] >= before[n] for n in before)

    def test_bad_range_is_usage_error(self, capsys):
        code, _, err = run(capsys, "campaign", "--range", "9:5", "--runs-per-worker", "1")
        assert code == 2


class TestBench:
    def test_runs(self, capsys):
        code, out, _ = run(capsys, "bench", "--sizes", "12", "--iterations", "50")
        assert code == 0 and "us/iteration" in out
