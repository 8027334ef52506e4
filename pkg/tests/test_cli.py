import json

import pytest

from looplang.cli import main

Z2_SPEC = {
    "elements": ["e", "g"],
    "identity": "e",
    "table": [["e", "g"], ["g", "e"]],
    "generators": {"a": "g"},
}


@pytest.mark.parametrize(
    "argv,code,out",
    [
        (["decide", "Z2", "member", "aa"], 0, "true"),
        (["decide", "Z2", "member", "a"], 1, "false"),
        (["decide", "Z2", "member", "aa'"], 0, "true"),
        (["decide", "S3", "equal", "aa", "bbb"], 0, "true"),
        (["decide", "S3", "equal", "a", "b"], 1, "false"),
        (["decide", "free-monoid-2", "member", "aba'"], 1, "false"),
        (["decide", "free-monoid-2", "member", "abb'a'"], 0, "true"),
        (["decide", "free-commutative-1", "equal", "a", "a"], 0, "true"),
        (["decide", "right-zero-2", "member", ""], 0, "true"),
    ],
)
def test_decide(argv, code, out, capsys):
    assert main(argv) == code
    assert capsys.readouterr().out.strip() == out


@pytest.mark.parametrize(
    "argv",
    [
        ["decide", "Z2", "member", "z"],
        ["decide", "Z2", "member", "a", "a"],
        ["decide", "Z2", "equal", "a"],
        ["decide", "no-such-thing", "member", "a"],
        ["decide", "right-zero-2", "equal", "a", ""],
        ["decide", "free-commutative-1", "equal", "aa'", ""],
    ],
)
def test_decide_errors(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_build_finite(tmp_path, capsys):
    assert main(["build", "Z2", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["cayley.dot", "dfa.dot", "dfa.json", "loop.dot"]
    dfa = json.loads((tmp_path / "dfa.json").read_text())
    assert dfa["states"] == 2 and dfa["alphabet"] == ["a", "a'"]
    assert "style=dashed" in (tmp_path / "loop.dot").read_text()
    assert "2 elements" in capsys.readouterr().out


def test_build_symbolic(tmp_path, capsys):
    assert main(["build", "free-monoid-2", "--radius", "3", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "ball.dot").read_text().startswith("digraph")
    assert "15 elements" in capsys.readouterr().out
    assert main(["build", "free-monoid-2"]) == 2


def test_build_dot_to_stdout(capsys):
    assert main(["build", "S3", "--dot", "-"]) == 0
    assert "digraph" in capsys.readouterr().out


def test_invalid_table_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({**Z2_SPEC, "table": [["e", "g"], ["g", "q"]]}))
    assert main(["build", str(f)]) == 2
    assert "/table/1/1" in capsys.readouterr().err


@pytest.mark.parametrize("what", ["cayley", "loop", "dfa"])
@pytest.mark.parametrize("fmt", ["dot", "table"])
def test_export_is_byte_stable(what, fmt, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        assert main(["export", "S3", "--what", what, "--format", fmt, "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes() and a.read_bytes()


def test_export_hull(tmp_path):
    out = tmp_path / "hull.json"
    assert main(["export", "S3", "--what", "hull", "--format", "table", "-o", str(out)]) == 0
    hull = json.loads(out.read_text())
    assert len(hull["elements"]) == 6 and len(hull["descriptions"]) == 6
    assert main(["export", "S3", "--what", "hull"]) == 2


def test_export_transducer(capsys):
    assert main(["export", "rectangular-band-2x2", "--what", "transducer"]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("digraph") and '"A"' in dot and '"Z"' in dot
    assert main(["export", "rectangular-band-2x2", "--what", "transducer", "--format", "table"]) == 0
    table = json.loads(capsys.readouterr().out)
    assert table["states"][0] == "A" and table["states"][-1] == "Z"
    assert main(["export", "Z2", "--what", "transducer"]) == 2


def test_export_symbolic_unsupported(capsys):
    assert main(["export", "free-monoid-2", "--what", "dfa"]) == 2
    assert "infinite" in capsys.readouterr().err


def test_verify_corpus_file(tmp_path, capsys):
    corpus = tmp_path / "corpus.json"
    corpus.write_text(json.dumps({"items": ["Z2", "Z4", "S3"]}))
    report = tmp_path / "report.jsonl"
    assert main(["verify", str(corpus), "--suite", "invhull", "--report", str(report)]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS invhull") == 3 and "3/3 checks passed" in out
    records = [json.loads(line) for line in report.read_text().splitlines()]
    assert [r["item"] for r in records] == ["Z2", "Z4", "S3"]
    assert all(r["passed"] and r["claim"] for r in records)


def test_verify_parallel_matches_serial(tmp_path, capsys):
    corpus = tmp_path / "corpus.json"
    corpus.write_text(json.dumps({"items": ["Z2", "T2", "rees-Z2-2x2"]}))
    args = ["verify", str(corpus), "--suite", "insertion", "--suite", "cs-transducer"]
    assert main(args) == 0
    serial = capsys.readouterr().out
    assert main(args + ["--jobs", "2"]) == 0
    assert capsys.readouterr().out == serial


def test_verify_missing_corpus(capsys):
    assert main(["verify", "/nonexistent/corpus.json"]) == 2
