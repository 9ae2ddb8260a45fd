import json
from decimal import Decimal
from fractions import Fraction

from invpower.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------


def test_estimate_reciprocal_quarter_csv(capsys):
    code, out, err = run(capsys, "estimate", "--corpus", "reciprocal-quarter",
                         "--m-max", "20", "--tol", "1e-12", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "m,q0,q1,delta0,delta1"
    last_row = lines[21].split(",")
    assert last_row[0] == "20"
    assert Decimal(last_row[1]) == Decimal(4) / Decimal(5 ** 21)
    assert "# q0_converged=true" in lines
    # q1's second-to-last delta is 304/5^20 ~ 3.2e-12: the two-delta rule
    # holds out until m_max 21
    assert "# q1_converged=false" in lines


def test_estimate_json_summary(capsys):
    code, out, _ = run(capsys, "estimate", "--corpus", "reciprocal-quarter",
                       "--m-max", "21", "--tol", "1e-12", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"][20]["q0"] == f"4/{5 ** 21}"
    assert payload["summary"]["q0_converged"] is True
    assert payload["summary"]["q1_converged"] is True
    assert payload["summary"]["m_used"] == 21
    q1 = Fraction(payload["summary"]["q1"])
    assert abs(q1 - 1) <= Fraction(1, 10 ** 12)


def test_estimate_csv_and_json_carry_same_values(capsys):
    args = ("estimate", "--corpus", "mobius-2-3-1-2", "--m-max", "8", "--digits", "30")
    _, csv_out, _ = run(capsys, *args, "--format", "csv")
    _, json_out, _ = run(capsys, *args, "--format", "json")
    payload = json.loads(json_out)
    csv_rows = [l.split(",") for l in csv_out.strip().split("\n")[1:9 + 1]]
    for row, jrow in zip(csv_rows, payload["rows"]):
        assert int(row[0]) == jrow["m"]
        exact = Fraction(jrow["q0"])
        budget = Decimal(row[1])
        assert abs(Fraction(str(budget)) - exact) <= Fraction(1, 10 ** 25) * max(1, abs(exact))


def test_estimate_degenerate_dimension(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"center": "1", "coeffs": ["5/3"], "exact": True}))
    code, out, _ = run(capsys, "estimate", "--coeffs", str(path), "--m-max", "0",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [{"m": 0, "q0": "5/3", "q1": None, "delta0": None, "delta1": None}]
    assert payload["summary"]["q0_converged"] is False


def test_estimate_require_converged_policy(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"center": "1", "coeffs": ["5/3"], "exact": True}))
    code, _, _ = run(capsys, "estimate", "--coeffs", str(path), "--m-max", "0",
                     "--require-converged")
    assert code == 2
    code, _, _ = run(capsys, "estimate", "--corpus", "one-over-x", "--m-max", "5",
                     "--tol", "1e-12", "--require-converged")
    assert code == 0


def test_estimate_mobius_summary_near_truth(capsys):
    code, out, _ = run(capsys, "estimate", "--corpus", "mobius-2-3-1-2",
                       "--m-max", "40", "--format", "json")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert abs(Fraction(summary["q0"]) - 2) < Fraction(1, 10 ** 6)
    assert abs(Fraction(summary["q1"]) + 1) < Fraction(1, 10 ** 4)


def test_estimate_coeffs_file_too_short(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"center": "1", "coeffs": ["1", "2"], "exact": True}))
    code, _, err = run(capsys, "estimate", "--coeffs", str(path), "--m-max", "5")
    assert code == 1
    assert "coefficients" in err


def test_estimate_missing_file(capsys):
    code, _, err = run(capsys, "estimate", "--coeffs", "/no/such/file.json", "--m-max", "3")
    assert code == 1
    assert "error:" in err


def test_estimate_float_mode_emits_cancellation_warning(capsys):
    code, out, err = run(capsys, "estimate", "--corpus", "x-over-x-plus-1",
                         "--m-max", "60", "--mode", "float", "--precision", "64")
    assert code == 0
    assert "warning:" in err and "cancellation" in err and "exact mode" in err
    assert out.startswith("m,q0,q1")


def test_estimate_deterministic_output(capsys, tmp_path):
    args = ("estimate", "--corpus", "reciprocal-quarter", "--m-max", "15",
            "--tol", "1e-9", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(list(args) + ["--out", str(out_a)]) == 0
    assert main(list(args) + ["--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    assert b"\r" not in out_a.read_bytes()


def test_estimate_file_output_matches_stdout(capsys, tmp_path):
    args = ("estimate", "--corpus", "one-over-x", "--m-max", "6")
    _, stdout_text, _ = run(capsys, *args)
    path = tmp_path / "t.csv"
    main(list(args) + ["--out", str(path)])
    assert path.read_text() == stdout_text


# ---------------------------------------------------------------------------
# approximate
# ---------------------------------------------------------------------------


def test_approximate_pure_reciprocal(capsys):
    code, out, _ = run(capsys, "approximate", "--corpus", "one-over-x", "--m", "1",
                       "--eval", "10", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["coeffs"] == ["0", "1"]
    assert payload["evaluations"][0] == {
        "x": "10", "value": "1/10", "residual": "0", "error": None}
    assert "q[k] for k >= 2" in payload["note"]


def test_approximate_residual_decays_with_dimension(capsys):
    """x/(x+1) at x = 100: the frozen exact residual at dimension 5, and
    the 1e-4 bound reached by dimension 14."""
    code, out, _ = run(capsys, "approximate", "--corpus", "x-over-x-plus-1",
                       "--m", "5", "--eval", "100", "--format", "json")
    assert code == 0
    res5 = Fraction(json.loads(out)["evaluations"][0]["residual"])
    assert res5 == Fraction(941480149401, 64640000000000)
    code, out, _ = run(capsys, "approximate", "--corpus", "x-over-x-plus-1",
                       "--m", "14", "--eval", "100", "--format", "json")
    assert code == 0
    res14 = Fraction(json.loads(out)["evaluations"][0]["residual"])
    assert abs(res14) < Fraction(1, 10 ** 4) < abs(res5)


def test_approximate_pole_point_is_per_point_error(capsys):
    # center 1 puts the pole at x = 0; the good point still comes through
    code, out, _ = run(capsys, "approximate", "--corpus", "one-over-x", "--m", "2",
                       "--eval", "0", "--eval", "10", "--format", "json")
    assert code == 0
    evals = json.loads(out)["evaluations"]
    assert evals[0]["error"] == "pole"
    assert evals[1]["error"] is None


def test_approximate_all_points_failing_is_nonzero_exit(capsys):
    code, _, _ = run(capsys, "approximate", "--corpus", "one-over-x", "--m", "2",
                     "--eval", "0")
    assert code == 1


def test_approximate_csv_layout(capsys):
    code, out, _ = run(capsys, "approximate", "--corpus", "one-over-x", "--m", "1",
                       "--eval", "10,100", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert "# q[0]=0" in lines
    assert "# q[1]=1" in lines
    assert lines[-2] == "10,0.1,0,"
    assert lines[-1] == "100,0.01,0,"


# ---------------------------------------------------------------------------
# verify-identities
# ---------------------------------------------------------------------------


def test_verify_identities_small(capsys):
    code, out, _ = run(capsys, "verify-identities", "--m-max", "3", "--k-max", "3",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["failed"] == 0
    assert payload["failures"] == []
    assert payload["total"] > 0


def test_verify_identities_csv_summary(capsys):
    code, out, _ = run(capsys, "verify-identities", "--m-max", "4", "--k-max", "4")
    assert code == 0
    assert "# failed=0" in out


def test_verify_identities_bad_range(capsys):
    code, _, err = run(capsys, "verify-identities", "--m-max", "-2")
    assert code == 1
    assert "error:" in err


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def test_corpus_writes_coefficient_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "corpus", "--fn", "reciprocal-quarter", "--x0", "1",
                     "--n", "50", "--out", str(path))
    assert code == 0
    payload = json.loads(path.read_text())
    assert payload["exact"] is True
    assert payload["meta"]["hypothesis_radius"] == "4"
    assert len(payload["coeffs"]) == 50
    assert payload["coeffs"][0] == "4/5"


def test_corpus_stdout(capsys):
    code, out, _ = run(capsys, "corpus", "--fn", "one-over-x", "--x0", "1", "--n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["coeffs"] == ["1", "-1", "1", "-1"]
    assert payload["meta"]["hypothesis_radius"] is None


def test_corpus_pole_center_fails(capsys):
    code, _, err = run(capsys, "corpus", "--fn", "mobius", "--params", "1,0,1,1",
                       "--x0", "-1", "--n", "5")
    assert code == 1
    assert "pole" in err


def test_corpus_file_feeds_estimate(capsys, tmp_path):
    path = tmp_path / "c.json"
    assert main(["corpus", "--fn", "mobius-2-3-1-2", "--x0", "1", "--n", "21",
                 "--out", str(path)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "estimate", "--coeffs", str(path), "--m-max", "20",
                       "--format", "json")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert abs(Fraction(summary["q0"]) - 2) < Fraction(1, 10 ** 3)


# ---------------------------------------------------------------------------
# flag handling
# ---------------------------------------------------------------------------


def test_malformed_flags_exit_one(capsys):
    code, _, err = run(capsys, "estimate", "--corpus", "one-over-x")
    assert code == 1
    assert "usage" in err
    code, _, err = run(capsys, "estimate", "--corpus", "one-over-x", "--m-max", "zz")
    assert code == 1


def test_unknown_corpus_name(capsys):
    code, _, err = run(capsys, "estimate", "--corpus", "nope", "--m-max", "3")
    assert code == 1
    assert "known names" in err


def test_bad_precision(capsys):
    code, _, err = run(capsys, "estimate", "--corpus", "one-over-x", "--m-max", "3",
                       "--mode", "float", "--precision", "16")
    assert code == 1
    assert "precision" in err


def test_exact_mode_ignores_precision(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"center": "1", "coeffs": ["1", "-1", "1", "-1"],
                                "exact": True}))
    code, _, _ = run(capsys, "estimate", "--coeffs", str(path), "--m-max", "3",
                     "--precision", "7")
    assert code == 0


def test_estimate_reports_hypothesis_metadata(capsys):
    code, out, _ = run(capsys, "estimate", "--corpus", "x-over-x-plus-1", "--m-max", "5",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["hypothesis"] == {"radius": "1", "satisfied": False}
    code, out, _ = run(capsys, "estimate", "--corpus", "one-over-x", "--m-max", "5")
    assert "# hypothesis_radius=unbounded" in out
    assert "# hypothesis_satisfied=true" in out
