import json

import pytest

from braidrep.cli import main
from braidrep.linalg import matrix_from_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gram_human(capsys):
    code, out, _ = run_cli(capsys, "gram", "--d", "5", "--kappa", "1,1,1,1,1", "--k", "1")
    assert code == 0
    assert "eps0      = 1" in out
    assert "dimension = 3" in out
    assert "signature = (0, 3)" in out


def test_gram_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "gram", "--d", "6", "--kappa", "2,3,4", "--k", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["eps0"] == 0
    gram = matrix_from_json(doc["gram"])
    assert gram.rows == gram.cols == 2
    assert gram.conj_transpose() == -gram


def test_gram_validation_exit_code(capsys):
    code, _, err = run_cli(capsys, "gram", "--d", "3", "--kappa", "3,1,1", "--k", "1")
    assert code == 2
    assert "ExponentDivisible" in err


def test_gram_not_primitive(capsys):
    code, _, err = run_cli(capsys, "gram", "--d", "4", "--kappa", "1,1,1", "--k", "2")
    assert code == 2
    assert "NotPrimitive" in err


def test_rep_empty_word_is_identity(capsys):
    code, out, _ = run_cli(
        capsys, "rep", "--d", "5", "--kappa", "1,1,2,1", "--k", "1", "--word", "", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    m = matrix_from_json(doc["matrix"])
    assert all(
        (str(m.entry(i, j)) == "1") == (i == j) for i in range(m.rows) for j in range(m.cols)
    )


def test_rep_det_and_full_twist(capsys):
    code, out, _ = run_cli(
        capsys, "rep", "--d", "5", "--kappa", "1,1,2,1", "--k", "1",
        "--word", "A(1,2)", "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["det"] == ["0", "0", "1", "0"]  # q^{k_1+k_2} = zeta^2

    code, out, _ = run_cli(
        capsys, "rep", "--d", "5", "--kappa", "1,1,2,1", "--k", "1",
        "--word", "FT(1,3) T(3)^-1", "--json",
    )
    doc = json.loads(out)
    m = matrix_from_json(doc["matrix"])
    ident = m.identity(m.d, m.rows)
    assert m == ident


def test_rep_quotient_requires_eps0(capsys):
    code, _, err = run_cli(
        capsys, "rep", "--d", "5", "--kappa", "1,1,1", "--k", "1",
        "--word", "A(1,2)", "--quotient",
    )
    assert code == 2
    assert "NotDegenerate" in err


def test_density_command(capsys):
    code, out, _ = run_cli(capsys, "density", "--d", "7", "--kappa", "1,1,1,1,1,1", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "maximal"


def test_arithmeticity_command(capsys):
    code, out, _ = run_cli(capsys, "arithmeticity", "--d", "12", "--kappa", "7,5,4,4,4", "--json")
    assert code == 0
    assert json.loads(out)["verdict"] == "unknown"
    code, out, _ = run_cli(capsys, "arithmeticity", "--d", "5", "--kappa", "1,1,3,2,2,1", "--json")
    doc = json.loads(out)
    assert doc["verdict"] == "arithmetic"
    assert doc["witness"] == [1, 2, 3]


def test_horo_command(capsys):
    code, out, _ = run_cli(
        capsys, "horo", "--d", "5", "--kappa", "1,1,3,2,2,1", "--m", "3", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["failed"] == 0
    assert doc["ranks"] == {"lower": 4, "upper": 4, "center": 2}
    assert doc["witnesses"]["lower"]


def test_horo_bad_m(capsys):
    code, _, err = run_cli(capsys, "horo", "--d", "5", "--kappa", "1,1,3,2,2,1", "--m", "4")
    assert code == 2
    assert "BadM" in err


def test_horo_maxlen_zero(capsys):
    code, out, _ = run_cli(
        capsys, "horo", "--d", "5", "--kappa", "1,1,3,2,2,1", "--m", "3",
        "--maxlen", "0", "--json",
    )
    assert code == 1  # rank targets are missed at maxlen 0
    doc = json.loads(out)
    assert doc["ranks"]["lower"] == 1
    assert doc["ranks"]["upper"] == 1


def test_verify_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--suite", "lantern", "--seed", "7")
    code2, out2, _ = run_cli(capsys, "verify", "--suite", "lantern", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2


def test_verify_all_within_budget(capsys):
    import time

    start = time.monotonic()
    code, out, _ = run_cli(capsys, "verify", "--suite", "all", "--seed", "1")
    elapsed = time.monotonic() - start
    assert code == 0
    assert "total:" in out and " 0 failed" in out
    assert elapsed < 300


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2
