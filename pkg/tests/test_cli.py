import dataclasses
import json

import pytest

from lucaslab import identities
from lucaslab.cli import _digits_head_tail, _parse_range, main
from lucaslab.identities import get_record, registry


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_text(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert code == 0
    assert len(lines) == len(registry())
    edg = [ln for ln in lines if ln.startswith("EDG-1\t")]
    assert len(edg) == 1
    assert "x^(n+1)*F(n+1)" in edg[0]


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert isinstance(data, list) and len(data) == len(registry())
    assert {"id", "statement", "domain"} <= set(data[0])


def test_seq_fibonacci(capsys):
    code, out, _ = run(capsys, "seq", "fibonacci", "0..10")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 11
    assert lines[-1] == "10\t55"


def test_seq_lucas_polynomial(capsys):
    code, out, _ = run(capsys, "seq", "lucaspoly", "--arg", "x", "3")
    assert code == 0
    assert out.strip() == "3\tx^3 + 3*x"


def test_seq_chebyshev_negative_mirror(capsys):
    code_neg, out_neg, _ = run(capsys, "seq", "chebt", "--arg", "y", "--", "-4..-4")
    code_pos, out_pos, _ = run(capsys, "seq", "chebt", "--arg", "y", "4")
    assert code_neg == code_pos == 0
    assert out_neg.split("\t")[1] == out_pos.split("\t")[1]


def test_seq_symbolic_lucas_u(capsys):
    code, out, _ = run(capsys, "seq", "lucasu", "3")
    assert code == 0
    assert out.strip() == "3\ty^2 - z"


def test_seq_usage_errors(capsys):
    assert run(capsys, "seq", "nosuchkind", "0..3")[0] == 2
    assert run(capsys, "seq", "fibonacci", "abc")[0] == 2
    assert run(capsys, "seq", "fibonacci", "5..1")[0] == 2
    assert run(capsys, "seq", "fibonacci", "0..3", "--arg", "x")[0] == 2


def test_seq_fast_path_consistency(capsys):
    # 70 is past the fast-doubling cutoff, 10 is below it
    code, out, _ = run(capsys, "seq", "fibonacci", "69..71")
    assert code == 0
    rows = dict(line.split("\t") for line in out.strip().splitlines())
    assert rows["70"] == "190392490709135"


def test_seq_prints_full_large_values(capsys):
    # past the default interpreter int-to-str digit cap
    code, out, _ = run(capsys, "seq", "fibonacci", "30000")
    assert code == 0
    value = out.strip().split("\t")[1]
    assert len(value) == 6270
    assert value.startswith("19042435") and value.endswith("97960000")


def test_check_single_identity(capsys):
    code, out, _ = run(capsys, "check", "EDG-1", "--n", "0..5", "--x", "2")
    assert code == 0
    assert "EDG-1: pass (6/6 cases)" in out


def test_check_negative_flag_values(capsys):
    code, out, _ = run(capsys, "check", "THM1-A", "--n", "-1..8", "--c", "-3..3",
                       "--mode", "symbolic")
    assert code == 0
    assert "THM1-A: pass (70/70 cases)" in out
    code, out, _ = run(capsys, "check", "COR6-F", "--n", "0..10", "--x", "-2,1/3,7")
    assert code == 0
    assert "COR6-F: pass (33/33 cases)" in out


def test_check_unknown_identity(capsys):
    code, _, err = run(capsys, "check", "NO-SUCH-ID")
    assert code == 2
    assert "unknown identity" in err


def test_check_requires_ids_or_all(capsys):
    assert run(capsys, "check")[0] == 2


def test_check_json_schema(capsys):
    code, out, _ = run(capsys, "check", "EDG-1", "--n", "0..4", "--x", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data[0]["id"] == "EDG-1"
    assert data[0]["attempted"] == 5 == data[0]["passed"]
    assert data[0]["failures"] == []
    assert "millis" in data[0]


def test_check_csv_columns(capsys):
    code, out, _ = run(capsys, "check", "EDG-1", "--n", "0..4", "--x", "2", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "id,params,status,lhs,rhs,millis"


def test_check_exit_code_on_failure(capsys, monkeypatch):
    registry()
    rec = get_record("EDG-1")
    bad = dataclasses.replace(rec, rhs=lambda e: rec.rhs(e) + 1)
    monkeypatch.setitem(identities._BY_ID, "EDG-1", bad)
    code, out, _ = run(capsys, "check", "EDG-1", "--n", "0..2", "--x", "3")
    assert code == 1
    assert "FAIL" in out


def test_check_output_is_deterministic(capsys):
    args = ("check", "COR6-F", "--seed", "7", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    d1, d2 = json.loads(out1), json.loads(out2)
    for d in (d1, d2):
        for rep in d:
            rep["millis"] = 0
    assert d1 == d2
    # text output carries no timing at all
    _, t1, _ = run(capsys, "check", "COR6-F", "--seed", "7")
    _, t2, _ = run(capsys, "check", "COR6-F", "--seed", "7")
    assert t1 == t2


def test_list_and_seq_outputs_are_byte_identical(capsys):
    _, a1, _ = run(capsys, "list")
    _, a2, _ = run(capsys, "list")
    assert a1 == a2
    _, b1, _ = run(capsys, "seq", "lucaspoly", "--", "-6..6")
    _, b2, _ = run(capsys, "seq", "lucaspoly", "--", "-6..6")
    assert b1 == b2


def test_bench_small_values(capsys):
    code, out, _ = run(capsys, "bench", "fibonacci", "10", "--impl", "naive")
    assert code == 0
    impl, _, digits, head, tail = out.strip().split("\t")
    assert (impl, digits, head, tail) == ("naive", "2", "55", "55")
    code, out, _ = run(capsys, "bench", "fibonacci", "0")
    assert code == 0
    for line in out.strip().splitlines():
        assert line.split("\t")[2:] == ["1", "0", "0"]


def test_bench_usage_errors(capsys):
    assert run(capsys, "bench", "fibonacci", "--", "-1")[0] == 2
    assert run(capsys, "bench", "lucaspoly", "10")[0] == 2
    assert run(capsys, "bench", "fibonacci", "10", "--repeat", "0")[0] == 2


def test_bench_json(capsys):
    code, out, _ = run(capsys, "bench", "jacobsthal", "12", "--impl", "both", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [d["impl"] for d in data] == ["naive", "fast"]
    assert data[0]["tail"] == data[1]["tail"]


def test_parse_range():
    assert _parse_range("3") == (3, 3)
    assert _parse_range("-4..4") == (-4, 4)
    with pytest.raises(Exception):
        _parse_range("4..")


def test_digits_head_tail():
    assert _digits_head_tail(0) == (1, "0", "0")
    assert _digits_head_tail(55) == (2, "55", "55")
    assert _digits_head_tail(-1234567890123) == (13, "12345678", "67890123")
    n = 10**100
    assert _digits_head_tail(n) == (101, "10000000", "00000000")


def test_usage_exit_code_from_argparse(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
