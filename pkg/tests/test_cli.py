import io
import json

import pytest

from knotoid.cli import MorseSyntaxError, figure_names, load_figure, main, parse_morse, print_morse


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def fig9_file(tmp_path):
    p = tmp_path / "k.morse"
    p.write_text(print_morse(load_figure("fig9")))
    return str(p)


def test_parse_roundtrip():
    d = load_figure("fig24")
    assert parse_morse(print_morse(d)) == d


def test_semicolons_and_comments():
    d = parse_morse("leg 0; cup 1  # a zigzag\ncap 0; head 0")
    assert len(d) == 4


@pytest.mark.parametrize(
    "text, line",
    [("leg 0\nfoo 1\nhead 0", 2), ("leg 0\nhead x", 2), ("leg 0\n\ncup 5\n", 3), ("leg 0\nxp 0", 2), ("leg", 1)],
)
def test_syntax_errors_carry_line_numbers(text, line):
    with pytest.raises(MorseSyntaxError) as exc:
        parse_morse(text)
    assert exc.value.line == line


def test_bundled_figures():
    assert {"fig9", "fig15", "fig22", "fig23", "fig24", "fig25", "trivial"} <= set(figure_names())


def test_validate(fig9_file):
    code, out = run("validate", fig9_file)
    assert code == 0 and "2 crossings" in out


def test_rot_json(fig9_file):
    code, out = run("rot", fig9_file, "--json")
    rec = json.loads(out)
    assert code == 0 and rec["rotation"] == "-2/2"


def test_bracket_json_record_keys(fig9_file):
    code, out = run("bracket", fig9_file, "--json")
    rec = json.loads(out)
    assert code == 0
    assert set(rec) == {"diagram", "model", "matrix", "scalar", "writhe", "odd_writhe", "rotation"}
    assert rec["matrix"][0][1] == "0"
    assert rec["odd_writhe"] == 2


def test_bundled_name_fallback():
    code, out = run("binary", "fig17")
    assert code == 0 and out.strip() == "A^-2"


def test_binary_normalized():
    code, out = run("binary", "fig24", "--normalized")
    assert out.strip() == "A^8 + 1"


def test_alexander_text():
    code, out = run("alexander", "fig22")
    assert code == 0 and "scalar: -1/2*q^2 - 1/2" in out


def test_homflypt_needs_positive_n():
    assert run("homflypt", "fig9", "--n", "0")[0] == 1


def test_homflypt_knotoid_scalar_text():
    code, out = run("homflypt", "fig9", "--n", "1")
    assert code == 0 and "scalar: none" in out


def test_sawollek_json():
    code, out = run("sawollek", "trivial", "--json")
    assert json.loads(out)["scalar"] == "1"


def test_verify_model():
    code, out = run("verify-model", "--model", "homflypt:2")
    assert code == 0 and "FAIL" not in out
    assert run("verify-model", "--model", "nope")[0] == 1


def test_oracle_check():
    code, out = run("oracle-check", "fig9")
    assert code == 0 and out.count("MATCH") == 6


def test_moves_emits_an_equivalent_diagram(tmp_path):
    code, out = run("moves", "fig9", "--steps", "20", "--seed", "3")
    assert code == 0
    p = tmp_path / "m.morse"
    p.write_text(out)
    assert run("bracket", str(p))[1] == run("bracket", "fig9")[1]


def test_batch(tmp_path):
    for name in ("fig9", "trivial"):
        (tmp_path / f"{name}.morse").write_text(print_morse(load_figure(name)))
    code, out = run("batch", str(tmp_path), "--model", "binary", "--json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["scalar"] for r in recs] == ["A^-2", "1"]
    code, out2 = run("batch", str(tmp_path), "--model", "binary", "--json", "--jobs", "2")
    assert out2 == out


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.morse"
    bad.write_text("leg 0\nhead 1\n")
    assert run("validate", str(bad))[0] == 2
    assert run("validate", str(tmp_path / "missing.morse"))[0] == 2
    assert run("nonsense")[0] == 1
    assert run("batch", str(tmp_path / "empty-dir"), "--model", "binary")[0] == 1


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("leg 0\nhead 0\n"))
    assert run("bracket", "-")[1].strip().startswith("[ 1, 0 ]")
