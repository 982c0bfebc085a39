import json
import os

import pytest

from coxconj import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_system(tmp_path, matrix, names=None):
    p = tmp_path / "sys.json"
    data = {"rank": len(matrix), "matrix": matrix}
    if names:
        data["names"] = names
    p.write_text(json.dumps(data))
    return str(p)


def test_reduce_ss_cancellation(tmp_path, capsys):
    path = write_system(tmp_path, [[1, 3], [3, 1]])
    code, out, _ = run(capsys, "--system", path, "--word", "0 0", "reduce")
    assert code == 0
    assert json.loads(out) == {"word": [], "length": 0}


def test_classify(tmp_path, capsys):
    path = write_system(tmp_path, [[1, 3, 2], [3, 1, 4], [2, 4, 1]])
    code, out, _ = run(capsys, "--system", path, "classify")
    assert code == 0
    data = json.loads(out)
    assert data["components"][0]["type"] == "B3"
    assert data["spherical"] is True


def test_cyc(tmp_path, capsys):
    path = write_system(tmp_path, [[1, 3], [3, 1]])
    code, out, _ = run(capsys, "--system", path, "--word", "0 1 0", "cyc")
    assert code == 0
    data = json.loads(out)
    assert data["min_length"] == 1 and data["size"] == 3


def test_graph_finite(tmp_path, capsys):
    path = write_system(tmp_path, [[1, 3, 2], [3, 1, 3], [2, 3, 1]])
    code, out, _ = run(capsys, "--system", path, "--word", "0", "graph")
    assert code == 0
    data = json.loads(out)
    assert data["pipeline"] == "finite-order"
    assert len(data["graph"]["vertices"]) == 3


def test_graph_example_verify(capsys):
    code, out, err = run(capsys, "--example", "d7-1", "--verify", "graph")
    assert code == 0, err
    assert "verify: OK" in err
    data = json.loads(out)
    assert data["xi_w_order"] == 1 and data["delta_w"] == {}
    assert sorted(data["I_w"]) == ["s1", "s3", "s4", "s5", "s6"]


def test_graph_dot_output(capsys):
    code, out, _ = run(capsys, "--example", "ind-rank5", "--format", "dot",
                       "graph")
    assert code == 0
    assert out.startswith("graph conj {")


def test_check_small_affine(tmp_path, capsys):
    path = write_system(tmp_path, [[1, 3, 3], [3, 1, 3], [3, 3, 1]])
    code, out, _ = run(capsys, "--system", path, "--word", "0 1 2 0 1 2",
                       "check")
    assert code == 0 and out.strip() == "MATCH"


def test_reducible_rejected(tmp_path, capsys):
    path = write_system(tmp_path, [[1, 2], [2, 1]])
    code, _, err = run(capsys, "--system", path, "--word", "0", "graph")
    # a reducible *infinite* ambient is rejected; A1 x A1 is spherical so
    # use an infinite one
    path = write_system(tmp_path, [[1, 2, 2], [2, 1, 0], [2, 0, 1]])
    code, _, err = run(capsys, "--system", path, "--word", "1 2", "graph")
    assert code == cli.EXIT_SHAPE
    assert "reducible" in err


def test_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "--system", str(p), "--word", "0", "reduce")
    assert code == cli.EXIT_USAGE


def test_unknown_example(capsys):
    code, _, err = run(capsys, "--example", "nope", "graph")
    assert code == cli.EXIT_SHAPE


def test_cache_roundtrip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("COXCONJ_CACHE_DIR", str(tmp_path / "cache"))
    code1, out1, _ = run(capsys, "--example", "ind-rank5", "graph")
    code2, out2, _ = run(capsys, "--example", "ind-rank5", "graph")
    assert code1 == code2 == 0
    assert out1 == out2
    assert os.listdir(str(tmp_path / "cache"))


def test_determinism(capsys):
    code1, out1, _ = run(capsys, "--example", "d7-1", "graph")
    code2, out2, _ = run(capsys, "--example", "d7-1", "graph")
    assert out1 == out2
