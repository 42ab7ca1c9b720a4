import io
import json
import subprocess
import sys

import pytest

from pqosc.cli import run

EVAL_ARGS = ["eval", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--beta", "0", "--gamma", "0", "--n-max", "3"]
POS_ARGS = ["positivity", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--gamma", "3.0"]


def call(args):
    out, err = io.StringIO(), io.StringIO()
    code = run(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def table_lines(csv_text):
    return [line for line in csv_text.splitlines() if not line.startswith("#")]


def test_eval_example_subprocess():
    proc = subprocess.run([sys.executable, "-m", "pqosc.cli", *EVAL_ARGS], capture_output=True, text=True)
    assert proc.returncode == 0
    assert table_lines(proc.stdout) == ["n,f,branch", "0,0,generic", "1,1,generic", "2,5,generic", "3,19,generic"]


def test_verify_example():
    code, out, _ = call(["verify", "--preset", "undeformed", "--dim", "8", "--format", "csv"])
    assert code == 0
    lines = table_lines(out)
    assert lines[0] == "check,residual,abs_residual,checked_block,tol,pass"
    for line in lines[1:]:
        cells = line.split(",")
        assert float(cells[1]) <= 1e-12 and float(cells[2]) <= 1e-12
        assert cells[-1] == "true"


def test_positivity_example():
    code, out, _ = call(POS_ARGS + ["--format", "csv"])
    assert code == 2
    lines = table_lines(out)
    assert lines[0] == "interval_lower,interval_upper,regime_sign,empirical_min,n_argmin,verdict"
    cells = lines[1].split(",")
    assert cells[:3] == ["-1", "5", "negative"]
    assert cells[-1].startswith("ViolationAt(")


def test_positivity_json():
    code, out, _ = call(POS_ARGS)
    assert code == 2
    data = json.loads(out)
    assert data["verdict"] == "ViolationAt(2)"
    assert data["interval_upper"] == 5.0 and data["inside_interval"] is False


@pytest.mark.parametrize(
    "args",
    [
        EVAL_ARGS,
        POS_ARGS,
        ["classify", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--gamma", "-2.5"],
        ["spectrum", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--parametrized"],
        ["verify", "--p", "1.2", "--q", "0.9", "--alpha", "0.7", "--nu", "1.3", "--beta", "0.2", "--gamma", "0.1"],
        ["limits"],
    ],
)
def test_json_echo_and_round_trip(args, tmp_path):
    code, out, _ = call(args + ["--format", "json"])
    data = json.loads(out)
    assert set(data["params"]) == {"p", "q", "alpha", "beta", "nu", "gamma"}
    assert data["regime"] in ("generic", "degenerate")
    # re-running from the echoed parameters reproduces the report
    pfile = tmp_path / "params.json"
    pfile.write_text(json.dumps(data["params"]))
    if args[0] == "limits":
        rerun = [args[0], "--params", str(pfile)]
    else:
        flags = {"--p", "--q", "--alpha", "--beta", "--nu", "--gamma"}
        rest, skip = [], False
        for a in args[1:]:
            if skip:
                skip = False
                continue
            if a in flags:
                skip = True
                continue
            rest.append(a)
        rerun = [args[0], "--params", str(pfile), *rest]
    code2, out2, _ = call(rerun + ["--format", "json"])
    assert code2 == code
    assert out2 == out


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_echo_in_every_format(fmt):
    _, out, _ = call(EVAL_ARGS + ["--format", fmt])
    assert "regime" in out and "gamma" in out


def test_malformed_number_names_flag():
    code, out, err = call(["eval", "--gamma", "abc"])
    assert code == 1
    assert "--gamma" in err
    assert out == ""


def test_unknown_flag_rejected():
    code, _, err = call(["eval", "--delta", "1"])
    assert code == 1
    assert "--delta" in err


def test_invalid_parameter_value():
    code, _, err = call(["eval", "--p", "-2"])
    assert code == 1 and "p must be positive" in err


def test_conflicting_inputs():
    assert call(["eval", "--preset", "undeformed", "--gamma", "0.1"])[0] == 1
    assert call(["eval", "--preset", "quesne", "--p0", "2"])[0] == 1
    assert call(["eval", "--preset", "quesne", "--p0", "2", "--q0", "1"])[0] == 1
    assert call(["eval", "--p0", "2"])[0] == 1


def test_presets_from_cli():
    code, out, _ = call(["eval", "--preset", "chakrabarty-jagannathan", "--p0", "2", "--q0", "3", "--n-max", "2"])
    assert code == 0
    assert table_lines(out)[-1] == "2,3.5,generic"
    code, out, _ = call(["eval", "--preset", "burban", "--q0", "1.5", "--nu", "1", "--alpha", "1", "--n-max", "2"])
    assert code == 0 and table_lines(out)[-1].endswith(",degenerate")


def test_eval_log_column_past_overflow():
    code, out, _ = call(["eval", "--p", "2", "--q", "3", "--alpha", "2", "--nu", "1", "--n-max", "400", "--log"])
    assert code == 0
    last = table_lines(out)[-1].split(",")
    assert last[1] == "inf" and last[3] == "1"
    assert float(last[4]) > 700


def test_classify_two_dimensional():
    code, out, _ = call(["classify", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--gamma", "-2.5"])
    assert code == 0
    data = json.loads(out)
    assert data["class"] == "TwoDimensional" and data["case_tag"] == "B2"
    assert data["support"] == "{-1, 0}"
    lam = {row["n"]: row["lambda"] for row in data["table"]}
    assert lam[-1] == 0 and abs(lam[0] - 2.0) <= 1e-12
    assert data["relations"]["pass"] and data["casimirs"]["pass"]


def test_classify_missing_lambda0():
    code, _, err = call(["classify", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--gamma", "0"])
    assert code == 1 and "lambda0" in err


def test_classify_no_representation():
    code, _, _ = call(["classify", "--p", "3", "--q", "2", "--alpha", "1", "--nu", "1", "--gamma", "-0.7"])
    assert code == 2


def test_classify_window():
    code, out, _ = call(
        ["classify", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--lambda0", "2", "--window=-3..3"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["window"] == [-3, 3]
    assert call(["classify", "--window", "3-4"])[0] == 1


def test_spectrum_csv():
    code, out, _ = call(["spectrum", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--n-max", "2", "--parametrized"])
    assert code == 0
    lines = table_lines(out)
    assert lines[0] == "n,e_n,e_n_parametrized,spacing"
    assert lines[1].startswith("0,0.5,")


def test_verify_failure_exit_code():
    # f(1) < 0: the Fock realization does not exist
    assert call(["verify", "--gamma", "-0.75"])[0] == 2
    code, out, _ = call(["verify", "--p", "2", "--q", "3", "--alpha", "1", "--nu", "1", "--tol", "1e-30"])
    assert code == 2 and json.loads(out)["pass"] is False


def test_bracket_n_out_of_range():
    assert call(["verify", "--preset", "undeformed", "--dim", "8", "--bracket-n", "7"])[0] == 1


def test_limits_pass():
    code, out, _ = call(["limits", "--format", "csv"])
    assert code == 0
    assert all(line.endswith(",true") for line in table_lines(out)[1:])


def test_out_file(tmp_path):
    target = tmp_path / "f.csv"
    code, out, _ = call(EVAL_ARGS + ["--out", str(target)])
    assert code == 0 and out == ""
    assert "3,19,generic" in target.read_text()


def test_missing_params_file():
    assert call(["eval", "--params", "/nonexistent/params.json"])[0] == 1
