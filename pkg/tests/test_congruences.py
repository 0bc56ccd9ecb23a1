import pytest

from monoidvar import congruences as cg
from monoidvar.errors import ParseError
from monoidvar.words import EMPTY, parse_word

from oracles import rees_satisfies

W = parse_word


@pytest.mark.parametrize("kind,u,v,verdict", [
    ("lambda", "x y x", "x y x x", cg.EQUIV),
    ("gamma", "y x", "y x x", cg.NOT_EQUIV),
    ("lambda", "x y x", "x x y x", cg.NOT_EQUIV),
    ("gamma'", "x x y t y", "x x x y t y", cg.EQUIV),
])
def test_equiv_examples(kind, u, v, verdict):
    assert cg.equiv(kind, W(u), W(v)) == verdict


def test_gamma_prime_example_against_xyx_model():
    assert cg.equiv("gamma", W("x x y t y"), W("x x x y t y")) == cg.EQUIV
    assert rees_satisfies(["xyx"], W("x x y t y"), W("x x x y t y"))


@pytest.mark.parametrize("kind,w,rep", [
    ("gamma", "y x x x x", "y x x"),
    ("lambda", "x y x x x", "x y x"),
    ("mu", "x y z x t y s x x x", "x y z x t y s x"),
])
def test_canonical_rep(kind, w, rep):
    assert cg.canonical_rep(kind, W(w)) == W(rep)


def test_class_product():
    x = cg.class_of("lambda", W("x"))
    assert cg.render_class(cg.class_product("lambda", x, x)) == "x x+"
    c = cg.parse_class("y x x+", "gamma")
    one = cg.class_of("gamma", EMPTY)
    assert cg.same_class(cg.class_product("gamma", c, one), c)
    a, b = cg.class_of("mu", W("x y z x t y s")), cg.class_of("mu", W("x"))
    prod = cg.class_product("mu", a, b)
    assert cg.in_class(prod, W("x y z x t y s x"))


def test_class_leq():
    assert cg.class_leq("mu", cg.class_of("mu", W("z x t y s x")),
                        cg.parse_class("x y z x t y s x+", "mu"))
    assert cg.class_leq("lambda", cg.class_of("lambda", W("y x")), cg.parse_class("x y x+", "lambda"))
    assert not cg.class_leq("gamma", cg.class_of("gamma", W("x y")),
                            cg.parse_class("y x x+", "gamma"))


def _lambda_classes_by_factors(w, cap=4):
    # oracle: expand x+ to x^1..x^cap, collect factors, bucket by the lambda invariants
    out = set()
    for k in range(1, cap + 1):
        s = W("x y") + W("x") * k
        for i in range(len(s) + 1):
            for j in range(i, len(s) + 1):
                f = s[i:j]
                out.add(cg.canonical_rep("lambda", f))
    return out


def test_lambda_closure_matches_factor_oracle():
    found = cg.closure("lambda", [cg.parse_class("x y x+", "lambda")])
    assert {c.rep for c in found} == _lambda_classes_by_factors("x y x+")
    assert {cg.render_class(c) for c in found} >= {"1", "x", "y", "x y", "y x", "x y x+"}


@pytest.mark.parametrize("kind", ["gamma", "lambda", "beta", "mu", "nu"])
def test_closure_of_unit(kind):
    found = cg.closure(kind, [cg.class_of(kind, EMPTY)])
    assert [c.rep for c in found] == [EMPTY]


def test_closure_idempotent():
    once = cg.closure("gamma", [cg.parse_class("x y x+ t y", "gamma")])
    twice = cg.closure("gamma", once)
    assert {c.rep for c in once} == {c.rep for c in twice}


def test_render_and_parse():
    assert cg.render_class(cg.class_of("lambda", W("x y x x"))) == "x y x+"
    c = cg.parse_class("x z y x+ t y+", "lambda")
    assert cg.render_class(c) == "x z y x+ t y+"
    assert cg.in_class(c, W("x z y x x x t y y"))
    with pytest.raises(ParseError):
        cg.parse_class("x ^", "lambda")


@pytest.mark.parametrize("u,v", [("x y x", "x y x x"), ("x y", "y x"), ("x x y", "x y x"),
                                 ("x y x t", "x y x t x"), ("y x x", "x y x x"),
                                 ("x y z", "x z y"), ("x x", "x x x")])
def test_rees_key_matches_fingerprint(u, v):
    key = cg.rees_key(("xyx",))
    assert (key(W(u)) == key(W(v))) == rees_satisfies(["xyx"], W(u), W(v))


def test_listings_mu_and_lambda_prime():
    from monoidvar.acceptance import FIXTURES
    for name in ("mu-xyzxtysx.closure", "lambda1-xyzxtysx.closure"):
        spec = cg.load_listing((FIXTURES / "closures" / name).read_text("utf-8"))
        assert cg.check_listing(spec).ok, name


def test_mu_closure_size():
    found = cg.closure("mu", [cg.parse_class("x y z x t y s x+", "mu")])
    M = cg.build_rees_alpha("mu", [cg.parse_class("x y z x t y s x+", "mu")])
    assert len(M) == len(found) + 1


def test_build_rees_alpha_unit():
    M = cg.build_rees_alpha("gamma", [cg.class_of("gamma", EMPTY)])
    assert len(M) == 2


@pytest.mark.parametrize("fine,coarse", [("lambda", "gamma"), ("beta", "gamma"),
                                         ("lambda'", "lambda"), ("gamma'", "gamma")])
def test_refinement_on_small_words(fine, coarse):
    from monoidvar.words import words_over
    ws = list(words_over(["x", "y"], 4))
    for u in ws:
        for v in ws:
            if cg.equiv(fine, u, v) == cg.EQUIV:
                assert cg.equiv(coarse, u, v) == cg.EQUIV, (u, v)


def test_unknown_kind():
    with pytest.raises(ValueError):
        cg.get_kind("omega")
