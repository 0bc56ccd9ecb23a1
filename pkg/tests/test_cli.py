import io
import json
import shutil
import subprocess

import pytest

from monoidvar.cli import run
from monoidvar.equational import load_chain
from monoidvar.lattice import fig1_model, load_lattice
from monoidvar.monoids import build_rees, load_monoid
from monoidvar.words import parse_identity, parse_word


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def structured(*argv):
    code, text = call("--format", "structured", *argv)
    data = json.loads(text)
    assert data["schema"] == 1 and data["exit"] == code
    return code, data


def test_cong_equiv():
    code, text = call("cong", "equiv", "--kind", "lambda", "x y x", "x y x x")
    assert code == 0 and "EQUIV" in text
    code, _ = call("cong", "equiv", "--kind", "gamma", "y x", "y x x")
    assert code == 1


def test_monoid_satisfies():
    code, text = call("monoid", "satisfies", "--rees", "x y x", "x^2 = x^3")
    assert code == 0 and text.startswith("holds")
    code, text = call("monoid", "satisfies", "--rees", "x y", "x y = y x")
    assert code == 1 and "witness" in text


def test_chain_verify():
    code, text = call("chain", "verify", "fixtures/corollary-yxxty.chain")
    assert code == 0 and "all 5 steps OK" in text


def test_deduce_prove_and_refute():
    code, text = call("deduce", "prove", "--axioms", "x y = x y x", "x y z y = x y z")
    assert code == 0 and text.startswith("PROVED")
    chain = load_chain(text.split("\n", 1)[1])
    assert chain.words == [parse_word("x y z y"), parse_word("x y z")]
    code, text = call("deduce", "prove", "--axioms", "D1", "--countermodel", "node:H",
                      "x y z x t y = y x z x t y")
    assert code == 1 and "REFUTED" in text


def test_closure_structured():
    code, data = structured("cong", "closure", "--kind", "lambda", "x y x+")
    assert code == 0 and data["count"] == 8 and "x y x+" in data["classes"]


def test_word_show_structured():
    code, data = structured("word", "show", "x y x x t y")
    assert data["blocks"] == ["x y x x", "y"] and data["separators"] == ["t"]


def test_monoid_build_round_trip():
    code, text = call("monoid", "build", "--rees", "x y x")
    assert code == 0 and load_monoid(text).same_table(build_rees(["xyx"]))


def test_lattice_round_trip():
    code, text = call("lattice", "build", "fig1")
    assert code == 0 and load_lattice(text).same_as(fig1_model())
    code, text = call("lattice", "check", "fig1")
    assert code == 0 and "distributive=True" in text


def test_monoid_leq():
    assert call("monoid", "leq", "rees:x y", "alpha:gamma:y x x+")[0] == 0
    code, text = call("monoid", "leq", "alpha:gamma:y x x+", "rees:x y")
    assert code == 1 and "SEPARATED" in text


def test_family_verbs():
    assert call("family", "gen", "a", "1", "0") == (0, "z1 t1 x z1 x\n")
    code, text = call("family", "bynum", "4")
    assert code == 0 and parse_identity(text.split(" ", 1)[1]) == parse_identity("x y x^2 = x^2 y x^2")


@pytest.mark.parametrize("argv", [["cong", "equiv", "--kind", "omega", "x", "y"],
                                  ["family", "axioms", "Z9"], ["bogus"],
                                  ["cong", "class", "--kind", "lambda", "x ^"],
                                  ["chain", "verify", "no-such-file.chain"]])
def test_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


def test_global_flags_after_verb():
    code, data = structured("cong", "closure", "--kind", "lambda", "x y x+", "--island-cap", "3")
    assert code == 0


@pytest.mark.skipif(shutil.which("monoidvar") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["monoidvar", "word", "reverse", "x y z"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "z y x"
