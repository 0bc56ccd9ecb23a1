import pytest

from monoidvar import congruences as cg
from monoidvar.acceptance import FIXTURES
from monoidvar.errors import KindMismatch, ParseError
from monoidvar.monoids import (build_rees, check_facts, class_stable, combine, dual_monoid,
                               dump_monoid, is_isoterm, load_facts, load_monoid,
                               product_monoid, satisfies, trivial_monoid, variety_leq)
from monoidvar.words import EMPTY, Identity, parse_identity, parse_word

from oracles import rees_elements, rees_satisfies, table_satisfies

W = parse_word
I = parse_identity


@pytest.mark.parametrize("words,size", [(["xyx"], 7), (["xy"], 5), ([""], 2),
                                        (["xyx", "yxx"], 9)])
def test_build_rees_sizes(words, size):
    M = build_rees(words)
    assert len(M) == size == len(rees_elements(words))


def test_rees_labels():
    assert set(build_rees(["xyx"]).labels) == {"1", "x", "y", "xy", "yx", "xyx", "0"}


def test_satisfies_examples():
    r = satisfies(build_rees(["xy"]), I("x y = y x"))
    assert not r.holds
    M = build_rees(["xy"])
    env = {a: M.index(r.witness[a].compact()) for a in "xy"}
    assert M.eval(W("x y"), env) != M.eval(W("y x"), env)
    assert satisfies(build_rees(["xyx"]), I("x^2 = x^3")).holds


@pytest.mark.parametrize("words", [["xyx"], ["xy"], ["xxy"], ["xyxty", "ytxyx"]])
@pytest.mark.parametrize("text", ["x^2 = x^3", "x y = y x", "x y x = x y x^2",
                                  "x y x z = x y x z x", "x x y = x y x",
                                  "y t x x y = y t y x x", "x y x = x x y"])
def test_satisfies_agrees_with_oracles(words, text):
    M = build_rees(words)
    s = I(text)
    got = satisfies(M, s).holds
    assert got == rees_satisfies(words, s.lhs, s.rhs) == table_satisfies(M, s.lhs, s.rhs)


def test_eta_monoid_refutes():
    M = cg.build_rees_alpha("eta", [W("x y z x x t y")])
    assert not satisfies(M, I("x y z x^2 t y = y x z x^2 t y")).holds


def test_isoterms():
    Mxy = build_rees(["xy"])
    assert is_isoterm(Mxy, W("x y"), 6).status == "ISOTERM_UP_TO_BOUND"
    v = is_isoterm(Mxy, W("x y x"), 4)
    assert v.status == "NOT_ISOTERM"
    assert rees_satisfies(["xy"], W("x y x"), v.witness)
    assert is_isoterm(Mxy, EMPTY, 3).status == "ISOTERM_UP_TO_BOUND"


def test_class_stable():
    c = cg.parse_class("x y x+", "lambda")
    M = cg.build_rees_alpha("lambda", [c])
    assert class_stable(M, "lambda", c, 5).status == "STABLE_UP_TO_BOUND"
    v = class_stable(build_rees(["xy"]), "lambda", c, 5)
    assert v.status == "UNSTABLE"
    assert rees_satisfies(["xy"], v.witness.lhs, v.witness.rhs)
    one = cg.class_of("lambda", EMPTY)
    assert class_stable(M, "lambda", one, 3).status == "STABLE_UP_TO_BOUND"


def test_variety_leq():
    Mxy = build_rees(["xy"])
    Mg = cg.build_rees_alpha("gamma", [cg.parse_class("y x x+", "gamma")])
    assert variety_leq(Mxy, Mg, 2, 7).holds
    sep = variety_leq(Mg, Mxy, 2, 7)
    assert not sep.holds
    s = sep.identity
    assert table_satisfies(Mxy, s.lhs, s.rhs) and not table_satisfies(Mg, s.lhs, s.rhs)
    assert not satisfies(Mg, I("y x^2 = x y x^2")).holds
    assert satisfies(Mxy, I("y x^2 = x y x^2")).holds
    assert variety_leq(Mg, Mg, 2, 6).holds


def test_dual_is_involution():
    M = build_rees(["xxy"])
    D = dual_monoid(M)
    assert dual_monoid(D).same_table(M)
    assert satisfies(M, I("x x y = x y x")).holds == satisfies(D, I("y x x = x y x")).holds
    assert dual_monoid(D).provenance == M.provenance


def test_product_is_conjunction():
    A, B = build_rees(["xy"]), build_rees(["yx"])
    P = product_monoid(A, B)
    assert len(P) == len(A) * len(B)
    for text in ["x y = y x", "x^2 = x^3", "x y x = x x y", "x x y = y x x"]:
        s = I(text)
        assert satisfies(P, s).holds == (satisfies(A, s).holds and satisfies(B, s).holds)


def test_combine_modes():
    a = cg.build_rees_alpha("gamma", [cg.parse_class("y x x+", "gamma")])
    b = cg.build_rees_alpha("gamma", [cg.parse_class("x x+ y", "gamma")])
    j = combine(a, b, "alpha_join")
    assert len(j) >= max(len(a), len(b))
    with pytest.raises(KindMismatch):
        combine(a, cg.build_rees_alpha("lambda", [W("x y x")]), "alpha_join")
    assert combine(a, mode="dual").same_table(dual_monoid(a))


def test_trivial_monoid_satisfies_everything():
    T = trivial_monoid()
    assert satisfies(T, I("x = y")).holds


def test_dump_load_round_trip():
    M = build_rees(["xyx", "yxx"])
    assert load_monoid(dump_monoid(M)).same_table(M)
    with pytest.raises(ParseError):
        load_monoid("nonsense")


def test_fixture_monoids_load():
    M = load_monoid((FIXTURES / "monoids" / "m-xyx.monoid").read_text("utf-8"))
    assert len(M) == 7
    assert satisfies(M, I("x^2 = x^3")).holds and not satisfies(M, I("x y = y x")).holds


@pytest.mark.parametrize("name", ["m-xy", "m-xyx", "lambda-xyx", "mu-xtxxsx"])
def test_fact_files(name):
    path = FIXTURES / "monoids" / f"{name}.facts"
    _, res = check_facts(load_facts(path.read_text("utf-8")), path.parent)
    assert res and all(r.ok for r in res), [r for r in res if not r.ok]


def test_facts_parse_error():
    with pytest.raises(ParseError):
        load_facts("holds: x = x\n")
