import json

import pytest

from klpoly.cli import main, parse_params, InputError


def run(capsys, *argv):
    rc = main([*argv, "--no-timing"])
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    return rc, json.loads(out)


def test_transform_forward(capsys):
    rc, doc = run_json(capsys, "transform", "--alpha", "0", "--coeffs", "0,0,1", "--dir", "forward")
    assert rc == 0
    assert doc["coeffs"] == "4,5,1"
    assert doc["result"]["var"] == "z"


def test_transform_inverse_of_one(capsys):
    rc, doc = run_json(capsys, "transform", "--coeffs", "1", "--dir", "inverse")
    assert rc == 0 and doc["coeffs"] == "1"


def test_transform_round_trip(capsys):
    rc, doc = run_json(capsys, "transform", "--alpha", "1/2", "--coeffs", "1/3,-2,0,5", "--dir", "both")
    assert rc == 0 and doc["round_trip"] is True


def test_transform_parse_error_reports_position(capsys):
    rc, out, err = run(capsys, "transform", "--coeffs", "1/0")
    assert rc == 2 and out == ""
    assert "1/0" in err and "column" in err


def test_payload_is_byte_stable(capsys):
    first = run(capsys, "sequence", "laguerre", "--params", "a1=1/2", "--n", "4")
    second = run(capsys, "sequence", "laguerre", "--params", "a1=1/2", "--n", "4")
    assert first == second


def test_timing_is_kept_in_meta(capsys):
    main(["tables", "--nmax", "2"])
    doc = json.loads(capsys.readouterr().out)
    assert set(doc["meta"]) == {"wall_time_s"}


def test_sequence_hermite_type(capsys):
    rc, doc = run_json(capsys, "sequence", "hermite-type", "--params", "d=2", "--n", "4")
    assert rc == 0
    assert doc["sequence"]["polys"][3] == ["-1/3", "0", "0", "1"]


def test_sequence_laguerre(capsys):
    rc, doc = run_json(capsys, "sequence", "laguerre", "--params", "a1=0", "--n", "2")
    assert rc == 0
    assert doc["sequence"]["polys"][2] == ["2", "-4", "1"]
    assert doc["recurrence"][0]["beta"] == "1"


def test_sequence_csv(capsys):
    rc, out, _ = run(capsys, "sequence", "hermite", "--n", "2", "--out", "csv")
    assert rc == 0
    assert out.splitlines()[0] == "n,k,coeff"
    assert "2,0,-1/2" in out.splitlines()


def test_sequence_inadmissible_cdh(capsys):
    rc, out, err = run(capsys, "sequence", "cdh", "--params", "alpha=0,a1=0,a2=0", "--n", "3")
    assert rc == 2 and err.startswith("error:")


def test_sequence_missing_param(capsys):
    rc, _, err = run(capsys, "sequence", "laguerre", "--n", "3")
    assert rc == 2 and "a1" in err


@pytest.mark.parametrize("family,params,expected", [
    ("laguerre", "a1=1/2", 2),
    ("hermite", None, 4),
    ("hermite-type", "d=2", 6),
])
def test_extract_detected_order(capsys, family, params, expected):
    argv = ["extract", family, "--alpha", "1/2", "--nmax", "16"]
    if params:
        argv += ["--params", params]
    rc, doc = run_json(capsys, *argv)
    assert rc == 0
    assert doc["structural"]["detected_d"] == expected
    assert doc["checks"]["reproduces_sequence"]


def test_extract_connection_oracle(capsys):
    rc, doc = run_json(capsys, "extract", "laguerre", "--params", "a1=1/3", "--alpha", "1")
    assert rc == 0 and doc["checks"]["connection_coefficients_agree"]


def test_extract_from_file(capsys, tmp_path):
    path = tmp_path / "seq.json"
    path.write_text(json.dumps({"var": "x", "polys": [["1"], ["-1", "1"], ["2", "-4", "1"],
                                                      ["-6", "18", "-9", "1"]]}))
    rc, doc = run_json(capsys, "extract", "--file", str(path), "--no-transform")
    assert rc == 0
    assert doc["structural"]["zeta"][:3] == ["1", "3", "5"]


@pytest.mark.parametrize("family,params,case", [
    ("laguerre", "a1=1/2", "b"),
    ("hermite", None, "c"),
    ("generalized-hermite", "mu=1/2", "b"),
    ("perturbed-laguerre", "alpha=1/2,lambda=2", "a"),
])
def test_classify(capsys, family, params, case):
    argv = ["classify", family, "--alpha", "1/2"]
    if params:
        argv += ["--params", params]
    rc, doc = run_json(capsys, *argv)
    assert rc == 0 and doc["report"]["case"] == case


def test_classify_wrong_pair_fails(capsys):
    rc, doc = run_json(capsys, "classify", "laguerre", "--params", "a1=1/2", "--phi", "0,1", "--psi=-1,1")
    assert rc == 1 and doc["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "identities", "--nmax", "12"],
    ["verify", "--suite", "theorem"],
    ["verify", "numeric", "--suite", "kernel", "--tol", "1e-6"],
])
def test_verify_passes(capsys, argv):
    rc, doc = run_json(capsys, *argv)
    assert rc == 0 and doc["status"] == "pass"
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_verify_theorem_reports_printed_verdicts(capsys):
    _, doc = run_json(capsys, "verify", "--suite", "theorem")
    info = {c["check"]: c.get("info", {}) for c in doc["checks"]}
    assert info["connection_coefficients"]["printed_a_n_n-1_constant_reproduces_image"] is False


def test_verify_unknown_suite(capsys):
    rc, _, err = run(capsys, "verify", "--suite", "bogus")
    assert rc == 2 and "bogus" in err


def test_tables(capsys):
    rc, doc = run_json(capsys, "tables", "--alpha", "1/2", "--nmax", "3", "--which", "t")
    assert rc == 0
    assert doc["t"][2] == ["12", "8", "1"]
    assert "T" not in doc


def test_parse_params():
    assert parse_params("a1=1/2,alphas=1;3/2") == {"a1": "1/2", "alphas": "1;3/2"}
    with pytest.raises(InputError):
        parse_params("a1")
