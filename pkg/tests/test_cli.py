import io
import json

import pytest

from fairsum.cli import UsageError, main, parse_kv, parse_list
from fairsum.frontier import ParetoFrontier, pareto_frontier


def _gen(capsys, family="sep-two-solutions", params="D=100,eps=1/100"):
    assert main(["gen", "--family", family, "--params", params]) == 0
    return capsys.readouterr().out


@pytest.fixture
def instance_file(tmp_path, capsys):
    path = tmp_path / "two.json"
    path.write_text(_gen(capsys))
    return path


def test_parse_kv():
    assert parse_kv("D=100, eps=1/100") == {"D": "100", "eps": "1/100"}
    assert parse_kv(None) == {}
    with pytest.raises(UsageError):
        parse_kv("D100")
    with pytest.raises(UsageError):
        parse_kv("D=")


def test_parse_list():
    assert parse_list("1/10, 1/100,") == ["1/10", "1/100"]
    assert parse_list("") == []


def test_gen(capsys):
    document = json.loads(_gen(capsys))
    assert document["kind"] == "separate"
    assert document["c"] == 100
    assert document["items"] == [[100, 1], [1, 1]]


def test_gen_to_file(tmp_path, capsys):
    out = tmp_path / "nested" / "inst.json"
    assert main(["gen", "--family", "pf-tight-k", "--params", "D=30,k=3", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["k"] == 3


def test_gen_bad_params(capsys):
    assert main(["gen", "--family", "sep-r-blocks", "--params", "D=10,r=3"]) == 1
    assert "992" in capsys.readouterr().err


def test_solve(instance_file, capsys):
    assert main(["solve", str(instance_file)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["mm"]["representative"] == [1, 2]
    assert report["pf"]["exists"] is False
    assert [record["criterion"] for record in report["pof"]] == ["mm", "ks"]
    assert report["pof"][0]["pof"] == {"num": 97, "den": 100}


def test_solve_single_criterion(instance_file, capsys):
    assert main(["solve", str(instance_file), "--criterion", "ks"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [record["criterion"] for record in report["pof"]] == ["ks"]


def test_solve_stdin(monkeypatch, capsys):
    document = json.dumps({"kind": "shared", "c": 10, "items": [[5, 5]]})
    monkeypatch.setattr("sys.stdin", io.StringIO(document))
    assert main(["solve", "-"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["pf"]["utilities"] == [5, 5]


def test_solve_out(instance_file, tmp_path, capsys):
    out = tmp_path / "result"
    assert main(["solve", str(instance_file), "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads((out / "report.json").read_text())["system_optimum"]["zstar"] == 100
    assert (out / "frontier.csv").read_text().splitlines()[0] == "uA,uB,witnessA,witnessB"
    assert len((out / "pof.csv").read_text().splitlines()) == 3


def test_solve_invalid_document(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "separate", "c": 10, "items": [[11], [1]]}')
    assert main(["solve", str(path)]) == 1
    assert "990" in capsys.readouterr().err


def test_solve_missing_file(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "missing.json")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_sweep_family(capsys):
    argv = ["--workers", "1", "sweep", "--family", "sep-r-blocks", "--params", "r=2..3"]
    assert main(argv + ["--eps-schedule", "1/60"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("label,scenario,criterion,alpha_num")
    assert len(lines) == 1 + 2 * 3


def test_sweep_random_to_file(tmp_path, capsys):
    out = tmp_path / "random.csv"
    argv = ["--workers", "1", "sweep", "--random", "--count", "2", "--alpha-cap", "1/2"]
    assert main(argv + ["--n", "4", "--c", "20", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0].endswith(",within")


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep"],
        ["sweep", "--random", "--family", "sep-r-blocks"],
        ["check"],
        ["gen", "--family", "sep-r-blocks", "--params", "D"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["solve"],
        ["frobnicate"],
        ["gen", "--family", "no-such-family", "--params", "D=10"],
        ["--workers", "0", "sweep", "--random"],
    ],
)
def test_argparse_errors(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_check_file(instance_file, capsys):
    assert main(["check", str(instance_file)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["holds"] is True
    assert report["observations"]["frontier_size"] == 2


def test_check_random_out(tmp_path, capsys):
    out = tmp_path / "oracle"
    argv = ["--workers", "1", "check", "--random", "--count", "3", "--kind", "shared"]
    assert main(argv + ["--c", "20", "--out", str(out)]) == 0
    reports = json.loads((out / "oracle.json").read_text())
    assert len(reports) == 3
    assert all(report["holds"] for report in reports)
    assert sorted(path.name for path in out.iterdir()) == ["oracle.json"]


def test_check_size_guard(tmp_path, capsys):
    path = tmp_path / "big.json"
    path.write_text(json.dumps({"kind": "shared", "c": 100, "items": [[1] * 20]}))
    assert main(["check", str(path)]) == 1
    assert "300" in capsys.readouterr().err


def _drop_last_entry(inst):
    frontier = pareto_frontier(inst)
    return ParetoFrontier(frontier.instance, frontier.entries[:-1])


def test_check_reports_broken_frontier(monkeypatch, tmp_path, capsys):
    monkeypatch.setattr("fairsum.oracle.pareto_frontier", _drop_last_entry)
    out = tmp_path / "oracle"
    argv = ["--workers", "1", "check", "--random", "--count", "2", "--c", "20"]
    assert main(argv + ["--out", str(out)]) == 1
    assert "frontier_equivalence" in capsys.readouterr().err

    reports = json.loads((out / "oracle.json").read_text())
    assert [report["holds"] for report in reports] == [False, False]
    for seed in (0, 1):
        instance = json.loads((out / f"random_{seed}-frontier_equivalence.json").read_text())
        assert instance["label"] == f"random:{seed}"
        vectors = json.loads(
            (out / f"random_{seed}-frontier_equivalence.vectors.json").read_text()
        )
        assert vectors["instance"] == instance
        assert len(vectors["oracle_only"]) == 1
        assert vectors["dp_only"] == []
    names = sorted(path.name for path in out.iterdir())
    assert names == [
        "oracle.json",
        "random_0-frontier_equivalence.json",
        "random_0-frontier_equivalence.vectors.json",
        "random_1-frontier_equivalence.json",
        "random_1-frontier_equivalence.vectors.json",
    ]
