import json

from branchmon.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_branch_e6_f4(capsys):
    code, out = run(capsys, "branch", "--case", "e6_f4", "--lambda", "pi1")
    assert code == 0
    assert "pi4" in out and "26" in out and "27" in out
    assert "dimension conservation: PASS" in out


def test_branch_identity_coordinate_syntax(capsys):
    code, out = run(capsys, "branch", "--case", "identity:A1", "--lambda", "3")
    assert code == 0
    assert "3pi1" in out and "dim 4" in out


def test_branch_sl_sp(capsys):
    code, out = run(capsys, "branch", "--case", "sl_sp", "--params", "n=3",
                    "--lambda", "pi3")
    assert code == 0
    assert "pi3" in out and "pi1" in out


def test_gamma_sl_spin(capsys):
    code, out = run(capsys, "gamma", "--case", "sl_spin", "--I", "2", "--bound", "4")
    assert code == 0
    assert "generators (4)" in out and "free: yes" in out
    assert "(2pi2; 2pi3)" in out and "(2pi2; 0)" in out


def test_gamma_negative_control_exit_zero(capsys):
    code, out = run(capsys, "gamma", "--case", "so_in_sl", "--params", "n=4",
                    "--I", "1,2", "--bound", "4")
    assert code == 0  # non-spherical is a verdict, not an error
    assert "multiplicity free: NO" in out and "witness" in out


def test_verify_single_case(capsys):
    code, out = run(capsys, "verify", "--case", "sl_spsp_12", "--params", "p=2,q=2")
    assert code == 0
    assert "PASS sl_spsp_12(p=2,q=2)" in out


def test_verify_constraint_violation_usage_error(capsys):
    code = main(["verify", "--case", "sl_spsl_12", "--params", "p=1,q=1"])
    err = capsys.readouterr().err
    assert code == 2
    assert "p >= 2" in err


def test_unknown_case_usage_error(capsys):
    code = main(["branch", "--case", "not_a_case", "--lambda", "pi1"])
    assert code == 2
    code = main(["branch", "--case", "identity:A1", "--lambda", "zz"])
    assert code == 2


def test_json_reports_deterministic(capsys):
    args = ["branch", "--case", "e6_f4", "--lambda", "pi1", "--json"]
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["schema_version"] == 1
    assert set(rep) >= {"command", "inputs", "results", "checks", "timing"}
    assert rep["timing"] is None
    assert rep["results"]["constituents"][0].keys() == {"weight", "multiplicity", "dimension"}


def test_gamma_json_schema(capsys):
    code, out = run(capsys, "gamma", "--case", "e6_f4", "--I", "1", "--bound", "2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"]["free"] is True
    assert rep["results"]["generators"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    import branchmon.cli as cli

    real = cli.instantiate

    def broken(case_id, params=None):
        inst = real(case_id, params)
        return type(inst)(inst.record, inst.params, inst.descriptor, inst.I,
                          inst.rank + 1, inst.generators)

    monkeypatch.setattr(cli, "instantiate", broken)
    code = main(["verify", "--case", "sl_spin_2"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out


def test_verify_jobs_deterministic(capsys):
    args = ["verify", "--case", "e6_f4_12", "--json"]
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_matrix_file_branch(tmp_path, capsys):
    f = tmp_path / "emb.json"
    f.write_text(json.dumps({
        "case_id": "custom-sp4",
        "g": {"factors": ["A3"], "torus": 0},
        "h": {"factors": ["C2"], "torus": 0},
        "matrix": [[1, 0], [0, 1], [1, 0]],
    }))
    code, out = run(capsys, "branch", "--matrix-file", str(f), "--lambda", "pi2")
    assert code == 0
    assert "dimension conservation: PASS" in out


def test_gamma_e6_f4_pair_all_level_one(capsys):
    code, out = run(capsys, "gamma", "--case", "e6_f4", "--I", "1,3", "--bound", "2")
    assert code == 0
    assert "generators (5)" in out
    assert "(pi1+pi3;" not in out  # every generator sits over a single node


def test_verify_all_quick_passes(capsys):
    code, out = run(capsys, "verify", "--all", "--quick")
    assert code == 0
    assert "all PASS (50 cases)" in out


def test_blocks_flag(capsys):
    code, out = run(capsys, "branch", "--case", "blocks", "--params", "n=5",
                    "--blocks", "Sp4+SL1", "--lambda", "pi1")
    assert code == 0
    code, out = run(capsys, "gamma", "--case", "levi", "--params", "n=4",
                    "--blocks", "2+2", "--I", "1,2", "--bound", "4")
    assert code == 0
    assert "free: yes" in out
