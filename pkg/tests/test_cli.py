import json

import pytest

from degseq.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_exact_single_edge(capsys):
    code, out, _ = run_cli(["exact", "--n1", "2", "--n2", "0", "--q", "2"], capsys)
    assert code == 0
    blob = json.loads(out)
    assert blob["polynomial"] == [{"exponents": [0, 1], "num": 1, "den": 1}]
    assert blob["pmf"] == [{"counts": [0, 1], "num": 1, "den": 1}]


def test_exact_odd_n1_exits_2(capsys):
    code, _, err = run_cli(["exact", "--n1", "3", "--n2", "1"], capsys)
    assert code == 2
    assert "empty class: n1 odd" in err


def test_exact_empty_class_exits_2(capsys):
    code, _, err = run_cli(["exact", "--n1", "0", "--n2", "2"], capsys)
    assert code == 2
    assert "empty class" in err


def test_exact_multigraph_masses(capsys):
    code, out, _ = run_cli(
        ["exact", "--n1", "0", "--n2", "3", "--q", "3", "--model", "multigraph"], capsys
    )
    assert code == 0
    blob = json.loads(out)
    terms = {tuple(t["exponents"]): (t["num"], t["den"]) for t in blob["polynomial"]}
    assert terms[(0, 0, 1)] == (1, 1)  # triangle
    assert terms[(1, 1, 0)] == (3, 4)  # loop + double edge
    assert terms[(3, 0, 0)] == (1, 8)  # three loops


def test_limit_law_output(capsys):
    code, out, _ = run_cli(["limit-law", "--alpha", "1", "--q", "4"], capsys)
    assert code == 0
    blob = json.loads(out)
    assert blob["mean_coeffs"] == [0.5, 0.25, 0.125]
    assert blob["hessian"][0][0] == 0.125
    assert blob["hessian"][0][1] == -0.125
    assert blob["hessian"][1][1] == 0.1875
    assert blob["poisson_lambda"] is None


def test_limit_law_q2_matrix(capsys):
    code, out, _ = run_cli(["limit-law", "--alpha", "1", "--q", "2"], capsys)
    assert code == 0
    blob = json.loads(out)
    assert blob["hessian"] == [[0.125]]


def test_limit_law_multigraph_lambda(capsys):
    code, out, _ = run_cli(
        ["limit-law", "--alpha", "1", "--q", "2", "--model", "multigraph"], capsys
    )
    blob = json.loads(out)
    assert blob["poisson_lambda"] == 0.25


def test_limit_law_bad_alpha_usage_error(capsys):
    code, _, _ = run_cli(["limit-law", "--alpha", "-1", "--q", "4"], capsys)
    assert code == 2


def test_sample_writes_csv_and_sidecar(tmp_path, capsys):
    out = tmp_path / "s.csv"
    args = [
        "sample", "--n1", "20", "--alpha", "1", "--q", "3",
        "--N", "40", "--seed", "7", "--workers", "1", "--out", str(out),
    ]
    code, _, _ = run_cli(args, capsys)
    assert code == 0
    lines = out.read_text().split("\n")
    assert lines[0] == "rep_id,U_1,U_2,U_3,tail_count"
    assert len([x for x in lines if x]) == 41
    meta = json.loads((tmp_path / "s.csv.meta.json").read_text())
    assert meta["seed"] == 7 and meta["params"]["n2"] == 10

    # byte-for-byte reproducibility
    first = out.read_bytes()
    code, _, _ = run_cli(args, capsys)
    assert code == 0
    assert out.read_bytes() == first


def test_sample_conflicting_n2_alpha_usage_error(capsys):
    code, _, _ = run_cli(
        ["sample", "--n1", "4", "--n2", "2", "--alpha", "1", "--out", "x.csv"], capsys
    )
    assert code == 2


def test_sample_empty_simple_class_exits_2(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, err = run_cli(
        ["sample", "--n1", "0", "--n2", "2", "--model", "simple", "--out", str(out)], capsys
    )
    assert code == 2
    assert "empty class" in err


def test_sample_env_seed_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DEGSEQ_SEED", "99")
    out = tmp_path / "s.csv"
    code, _, _ = run_cli(
        ["sample", "--n1", "4", "--n2", "2", "--N", "5", "--workers", "1", "--out", str(out)],
        capsys,
    )
    assert code == 0
    meta = json.loads((tmp_path / "s.csv.meta.json").read_text())
    assert meta["seed"] == 99


def test_asymptote_output(capsys):
    code, out, _ = run_cli(
        ["asymptote", "--n1", "20", "--n2", "10", "--q", "3", "--u", "1.1,0.9"], capsys
    )
    assert code == 0
    blob = json.loads(out)
    assert 0 < blob["zeta"] < 1
    assert blob["phi_second"] > 0
    assert blob["u"] == [1.0, 1.1, 0.9]
    assert "log_gf_estimate" in blob and "coefficient_estimate" in blob


def test_asymptote_unit_weights_closed_form(capsys):
    code, out, _ = run_cli(["asymptote", "--n1", "100", "--alpha", "1", "--q", "2"], capsys)
    blob = json.loads(out)
    assert blob["zeta"] == pytest.approx(0.5, abs=1e-12)
    assert blob["phi_second"] == pytest.approx(2.0, abs=1e-10)


def test_asymptote_rejects_too_many_weights(capsys):
    code, _, err = run_cli(
        ["asymptote", "--n1", "10", "--alpha", "1", "--q", "2", "--u", "1.1,0.9"], capsys
    )
    assert code == 2


def test_verify_only_single_check(capsys):
    code, out, _ = run_cli(["verify", "--only", "3"], capsys)
    assert code == 0
    assert "PASS" in out and "saddle-closed-form" in out


def test_verify_tampered_hessian_fails(capsys, monkeypatch):
    monkeypatch.setenv("DEGSEQ_TAMPER_H", "2.0")
    code, out, _ = run_cli(["verify", "--only", "4"], capsys)
    assert code == 1
    assert "FAIL" in out


def test_verify_json_report(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, _, _ = run_cli(["verify", "--only", "3,5", "--json", str(report)], capsys)
    assert code == 0
    blob = json.loads(report.read_text())
    assert [entry["number"] for entry in blob] == [3, 5]
    assert all(entry["passed"] for entry in blob)


def test_usage_error_on_unknown_command(capsys):
    code = main(["frobnicate"])
    capsys.readouterr()
    assert code == 2
