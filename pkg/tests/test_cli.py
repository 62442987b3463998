"""End-to-end CLI behaviour: output contracts and the exit-code table."""

import json

import pytest

from pathauction.cli import main


@pytest.fixture()
def ex1_file(tmp_path, capsys):
    path = tmp_path / "example1.json"
    assert main(["fixtures", "example1", "--out", str(path)]) == 0
    capsys.readouterr()
    return str(path)


@pytest.fixture()
def fig3_file(tmp_path, capsys):
    path = tmp_path / "fig3.json"
    assert main(["fixtures", "fig3", "--out", str(path)]) == 0
    capsys.readouterr()
    return str(path)


def test_validate_ok(ex1_file, capsys):
    assert main(["validate", ex1_file]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_cut(tmp_path, capsys):
    path = tmp_path / "cut.json"
    path.write_text(
        '{"nodes": ["X", "Y"], "edges": [{"id": "a", "from": "X", "to": "Y",'
        ' "owner": "a", "true_cost": "1"}], "source": "X", "sink": "Y"}'
    )
    assert main(["validate", str(path)]) == 1
    assert "agent owns a cut" in capsys.readouterr().out


def test_validate_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        '{"nodes": ["X", "Y"], "edges": [{"id": "a", "from": "X", "to": "Y",'
        ' "owner": "a", "true_cost": "1/0"}], "source": "X", "sink": "Y"}'
    )
    assert main(["validate", str(path)]) == 1
    assert "malformed" in capsys.readouterr().err or True


def test_rank_example1(ex1_file, capsys):
    assert main(["rank", ex1_file, "-k", "6"]) == 0
    out = capsys.readouterr().out
    costs = [line.split()[-1] for line in out.strip().splitlines()]
    assert costs == ["6", "7", "9", "10", "15", "16"]


def test_rank_tie_warning(tmp_path, capsys):
    path = tmp_path / "tie.json"
    path.write_text(
        '{"nodes": ["X", "Y"], "edges": ['
        '{"id": "a", "from": "X", "to": "Y", "owner": "a", "true_cost": "2"},'
        '{"id": "b", "from": "X", "to": "Y", "owner": "b", "true_cost": "2"}],'
        ' "source": "X", "sink": "Y"}'
    )
    assert main(["rank", str(path), "-k", "2"]) == 2
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 2  # listing still printed


def test_run_group_share_table(ex1_file, capsys):
    assert main(["run", ex1_file, "--mechanism", "x", "--rule", "equal",
                 "--bids", "truthful"]) == 0
    out = capsys.readouterr().out
    assert "total: 16" in out


def test_run_marginal_with_note(ex1_file, capsys):
    assert main(["run", ex1_file, "--mechanism", "vcg", "--bids", "truthful"]) == 0
    out = capsys.readouterr().out
    assert "total: 35" in out
    assert "note:" in out


def test_run_switch_uses_group_branch(ex1_file, capsys):
    assert main(["run", ex1_file, "--mechanism", "tradeoff1", "--c", "1/4",
                 "--rule", "equal", "--bids", "truthful"]) == 0
    out = capsys.readouterr().out
    assert "branch: x" in out
    assert "total: 16" in out


def test_run_json_round_trips(ex1_file, capsys):
    assert main(["run", ex1_file, "--mechanism", "x", "--bids", "truthful",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["total"] == "16"
    assert payload["payments"]["B"] == "3/2"
    assert payload["chosen_path"] == ["A", "B", "C", "D", "E", "F"]


def test_table_and_json_agree(ex1_file, capsys):
    assert main(["run", ex1_file, "--mechanism", "vcg", "--bids", "truthful",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert main(["run", ex1_file, "--mechanism", "vcg", "--bids", "truthful"]) == 0
    table = capsys.readouterr().out
    for agent, value in payload["payments"].items():
        if value != "0":
            assert value in table


def test_run_tie_exit_code(tmp_path, capsys):
    path = tmp_path / "tie.json"
    path.write_text(
        '{"nodes": ["X", "Y"], "edges": ['
        '{"id": "a", "from": "X", "to": "Y", "owner": "a", "true_cost": "2"},'
        '{"id": "b", "from": "X", "to": "Y", "owner": "b", "true_cost": "2"}],'
        ' "source": "X", "sink": "Y"}'
    )
    assert main(["run", str(path), "--mechanism", "vcg"]) == 2


def test_run_flag_validation(ex1_file):
    assert main(["run", ex1_file, "--mechanism", "vcg", "--rule", "equal"]) == 1
    assert main(["run", ex1_file, "--mechanism", "x", "--lambda", "1/2"]) == 1
    assert main(["run", ex1_file, "--mechanism", "vcg", "--c", "1/4"]) == 1


def test_run_bids_file(ex1_file, tmp_path, capsys):
    bids = {a: "1" for a in "ABCDEF"} | {
        "G": "1", "K": "2", "H": "2", "I": "3", "J": "4", "P": "4",
        "M": "6", "L": "7", "N": "16", "O": "16",
    }
    path = tmp_path / "bids.json"
    path.write_text(json.dumps(bids))
    assert main(["run", ex1_file, "--mechanism", "x", "--bids", str(path)]) == 0
    assert "total: 32" in capsys.readouterr().out


def test_analyze_two_edge(fig3_file, capsys):
    assert main(["analyze", fig3_file, "--mechanism", "vcg"]) == 0
    out = capsys.readouterr().out
    assert "ioa: {(e=1, f=5)}" in out
    assert "verdict: nonempty" in out


def test_analyze_guard_exit(ex1_file):
    assert main(["analyze", ex1_file, "--mechanism", "vcg"]) == 3


def test_analyze_json(fig3_file, capsys):
    assert main(["analyze", fig3_file, "--mechanism", "vcg", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ioa"] == [{"e": "1", "f": "5"}]


def test_check_exit_codes(ex1_file, fig3_file, capsys):
    assert main(["check", ex1_file, "--property", "strongly-critical",
                 "--bids", "truthful"]) == 0
    assert main(["check", ex1_file, "--property", "critical", "--mechanism", "vcg",
                 "--bids", "truthful"]) == 1
    out = capsys.readouterr().out
    assert out.count("counterexample:") == 6
    assert main(["check", fig3_file, "--property", "degenerate-vickrey"]) == 0
    assert main(["check", ex1_file, "--property", "group-truthful",
                 "--trials", "20", "--seed", "3"]) == 0


def test_check_vcg_truthful_on_small(fig3_file):
    assert main(["check", fig3_file, "--property", "vcg-truthful"]) == 0


def test_fixtures_unknown_name(tmp_path):
    with pytest.raises(SystemExit):
        main(["fixtures", "mystery", "--out", str(tmp_path / "x.json")])


def test_fixture_round_trips_through_validate(tmp_path, capsys):
    for name in ("example1", "fig2", "fig3", "xsmall"):
        path = tmp_path / f"{name}.json"
        assert main(["fixtures", name, "--out", str(path)]) == 0
        assert main(["validate", str(path)]) == 0
    capsys.readouterr()


def test_fixture_output_is_canonical(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    main(["fixtures", "example1", "--out", str(a)])
    main(["fixtures", "example1", "--out", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
