import json
from fractions import Fraction

import pytest

from signfourier.artifacts import render_pgm
from signfourier.cli import run
from signfourier.orthopoly import SignGram
from signfourier.tables import THREADS_ENV_VAR, SigmaTable, build_table


def test_sigma_plain(capsys):
    assert run(["sigma", "--n", "101", "--a", "1", "--b", "3"]) == 0
    assert capsys.readouterr().out.strip() == "35"


def test_sigma_json(capsys):
    assert run(["sigma", "--n", "101", "--a", "1", "--b", "3", "--json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec == {"n": 101, "a": 1, "b": 3, "raw": -35, "sigma": 35, "class_distance": 3}


def test_sigma_composite_json(capsys):
    assert run(["sigma", "--n", "100", "--a", "2", "--b", "6", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["class_distance"] is None


def test_sigma_bad_modulus(capsys):
    assert run(["sigma", "--n", "1", "--a", "1", "--b", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_table_class_roundtrip(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert run(["table", "--n", "101", "--out", str(out)]) == 0
    table = SigmaTable.from_csv(out)
    assert table.mode == "class" and table.sigma(1, 3) == 35
    assert "class table for n=101" in capsys.readouterr().out


def test_table_dense_flag(tmp_path):
    out = tmp_path / "d.csv"
    assert run(["table", "--n", "20", "--out", str(out), "--dense"]) == 0
    assert SigmaTable.from_csv(out).mode == "dense"


def test_table_thread_env_is_deterministic(tmp_path, monkeypatch):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["table", "--n", "101", "--out", str(a), "--threads", "1"]) == 0
    monkeypatch.setenv(THREADS_ENV_VAR, "4")
    assert run(["table", "--n", "101", "--out", str(b), "--threads", "1"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_thm1_ok(tmp_path, capsys):
    rep = tmp_path / "rep.json"
    code = run(
        ["thm1", "--n", "101", "--max-d", "5", "--ell-max", "2000", "--out", str(rep)]
    )
    assert code == 0
    assert "0 violations" in capsys.readouterr().out
    loaded = json.loads(rep.read_text())
    assert len(loaded) == 5
    assert loaded[2]["sigma"] == 35


def test_thm1_composite_is_usage_error(capsys):
    assert run(["thm1", "--n", "100"]) == 2
    assert "error:" in capsys.readouterr().err


def test_thm2_grid(tmp_path, capsys):
    rep = tmp_path / "grid.json"
    assert run(["thm2", "--n", "105", "--p", "3", "--out", str(rep)]) == 0
    out = capsys.readouterr().out
    assert "32 queries, 0 violations" in out
    assert len(json.loads(rep.read_text())) == 32


def test_thm2_single_pair(tmp_path, capsys):
    rep = tmp_path / "one.json"
    code = run(
        ["thm2", "--n", "300", "--p", "5", "--a", "1", "--c", "1", "--out", str(rep)]
    )
    assert code == 0
    loaded = json.loads(rep.read_text())
    assert loaded["S"] == 12
    assert [c["sigma_i"] for c in loaded["classes"]] == [60, 12, -36, -36, 12]


def test_thm2_argument_pairing(capsys):
    assert run(["thm2", "--n", "300", "--p", "5", "--a", "1"]) == 2
    assert run(["thm2", "--n", "300", "--p", "4"]) == 2


def test_ortho_csv(tmp_path, capsys):
    out = tmp_path / "cheb.csv"
    assert run(["ortho", "--kind", "chebyshev", "--size", "6", "--out", str(out)]) == 0
    gram = SignGram.from_csv(out)
    assert gram.size == 6
    assert gram.coeffs[1][3] == Fraction(1, 3)
    out2 = tmp_path / "leg.csv"
    assert run(["ortho", "--kind", "legendre", "--size", "5", "--out", str(out2)]) == 0
    assert SignGram.from_csv(out2).kind == "legendre"


def test_render_from_n(tmp_path):
    out = tmp_path / "x.pgm"
    assert run(["render", "--n", "50", "--out", str(out)]) == 0
    assert out.read_bytes() == render_pgm(build_table(50))


def test_render_from_csv_inputs(tmp_path):
    tcsv, gcsv = tmp_path / "t.csv", tmp_path / "g.csv"
    assert run(["table", "--n", "31", "--out", str(tcsv)]) == 0
    assert run(["ortho", "--kind", "legendre", "--size", "8", "--out", str(gcsv)]) == 0
    p1, p2 = tmp_path / "t.pgm", tmp_path / "g.pgm"
    assert run(["render", "--input", str(tcsv), "--out", str(p1)]) == 0
    assert run(["render", "--input", str(gcsv), "--out", str(p2), "--mode", "grayscale"]) == 0
    assert p1.read_bytes().startswith(b"P5\n30 30\n255\n")
    assert p2.read_bytes().startswith(b"P5\n8 8\n255\n")


def test_render_rejects_bad_inputs(tmp_path, capsys):
    junk = tmp_path / "junk.csv"
    junk.write_text("hello\n1,2\n")
    assert run(["render", "--input", str(junk), "--out", str(tmp_path / "x.pgm")]) == 2
    assert run(["render", "--input", str(tmp_path / "nope.csv"), "--out", "x.pgm"]) == 2
    assert run(["render", "--n", "31", "--out", str(tmp_path / "y.pgm"), "--tau", "0"]) == 2


def test_fig_outputs(tmp_path):
    figs = {name: tmp_path / f"{name}.png" for name in ("table", "thm1", "thm2", "ortho")}
    assert run(["table", "--n", "31", "--out", str(tmp_path / "t.csv"), "--fig", str(figs["table"])]) == 0
    assert run(["thm1", "--n", "101", "--max-d", "3", "--ell-max", "500", "--fig", str(figs["thm1"])]) == 0
    assert run(["thm2", "--n", "105", "--p", "3", "--a", "1", "--c", "1", "--fig", str(figs["thm2"])]) == 0
    assert run(["ortho", "--kind", "chebyshev", "--size", "6", "--out", str(tmp_path / "g.csv"), "--fig", str(figs["ortho"])]) == 0
    for name, path in figs.items():
        data = path.read_bytes()
        assert data.startswith(b"\x89PNG"), name


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        run(["transmogrify"])
