import io
import json

import pytest

from polyreal.cli import main
from polyreal.fixtures import data_path

NAT_ID = str(data_path("nat_id.w"))
BAD = str(data_path("bad_scomp.w"))


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None), text


def test_check_accepts_nat_id():
    code, rep, _ = run("check", NAT_ID)
    assert code == 0 and rep["accepted"] and rep["signature"] == [1, 0]


def test_check_rejects_bad_scomp():
    code, rep, _ = run("check", BAD)
    assert code == 1
    assert rep["violations"] == [{"path": "/normals[0]", "rule": "safe-into-normal"}]


def test_eval_nat_id_half():
    code, rep, _ = run("eval", NAT_ID, "--at", "0.5", "--prec", "20")
    assert code == 0 and rep["value"] == "1*2^-1"


def test_eval_rational_point():
    code, rep, _ = run("eval", "fixture:nat_id", "--at", "1/3", "--prec", "40")
    assert code == 0 and rep["decimal"] == "0.25"


def test_eval_multi_argument():
    code, rep, _ = run("eval", "fixture:affine_shift", "--at", "3,2,1", "--prec", "10")
    assert code == 0 and rep["value"] == str(2 * 4 + 3).join(["", "*2^0"])


def test_table():
    code, rep, _ = run("table", "fixture:nat_id", "--range", "0..2", "--step", "1/2", "--prec", "10")
    assert code == 0
    assert [r["decimal"] for r in rep["rows"]] == ["0", "0.5", "1", "1.5", "2"]


def test_bc_commands():
    assert run("bc-eval", "fixture:s1", "--at", "3")[1]["value"] == 7
    code, rep, _ = run("bc-translate", "fixture:pr")
    assert code == 0 and rep["signature"] == [0, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "integers", "--samples", "20"],
        ["verify", "--suite", "peaceful", "--samples", "50"],
        ["verify", "--suite", "bc-agree", "--samples", "10"],
        ["harness", "definability", "--f", "identity", "--x=-8..8"],
        ["harness", "t-definability", "--f", "identity", "--x=-16..16"],
        ["harness", "smooth", "--f", "identity", "--M", "2"],
        ["harness", "peaceful", "--term", "fixture:nat_id", "--samples", "50"],
        ["harness", "machine-modulus", "--f", "square", "--at", "1.5", "--prec", "10"],
    ],
)
def test_passing_invocations_exit_0(argv):
    assert run(*argv)[0] == 0


def test_failing_checks_exit_1():
    assert run("harness", "definability", "--f", "identity", "--term", "fixture:def:zero", "--x=-8..8")[0] == 1
    assert run("harness", "t-definability", "--f", "identity", "--term", "fixture:t_zero", "--x=-64..64")[0] == 1


def test_usage_errors_exit_2():
    code, rep, _ = run("eval", "/no/such/file.w", "--at", "1")
    assert code == 2 and rep["error"] == "usage"
    assert run("eval", NAT_ID, "--at", "1", "--prec", "-3")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("eval", "fixture:nope", "--at", "1")[0] == 2


def test_library_errors_are_structured(tmp_path):
    code, rep, _ = run("eval", "fixture:nat_id", "--at=-1")
    assert code == 1 and rep["error"] == "DomainError"
    bad = tmp_path / "bad.w"
    bad.write_text("(add")
    code, rep, _ = run("check", str(bad))
    assert code == 1 and rep["error"] == "parse" and rep["line"] == 1
    code, rep, _ = run("eval", NAT_ID, "--at", "1,2")
    assert code == 1 and rep["error"] == "value"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "integers", "--samples", "15", "--seed", "4"],
        ["harness", "peaceful", "--term", "fixture:mixed_steps", "--samples", "30", "--seed", "9"],
        ["eval", "fixture:prefix_sum", "--at", "22/7", "--prec", "30"],
    ],
)
def test_deterministic_output(argv):
    assert run(*argv)[2] == run(*argv)[2]
