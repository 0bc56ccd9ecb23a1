import pytest

from monoidvar.errors import OutOfRange, ParseError
from monoidvar.words import (EMPTY, LAST, Identity, Substitution, Word, chi, decompose, delete,
                             factor_closure, format_word, ini2, is_linear_balanced, islands,
                             occurrence_position, parse_identity, parse_word, restrict, reverse,
                             slice_word, transform, two_island_limited, two_island_rigid)


def W(s):
    return parse_word(s)


def test_parse_exponents_and_unit():
    assert W("x^2 y") == Word(("x", "x", "y"))
    assert W("1") == EMPTY
    assert W("z1 t1p") == Word(("z1", "t1p"))


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        W("x ^")
    assert e.value.position == 2


def test_format_round_trip():
    w = W("x y x x t1 y")
    assert W(format_word(w)) == w
    assert W(format_word(w, exponents=True)) == w


def test_parse_identity():
    s = parse_identity("x y x = x y x^2")
    assert s.lhs == W("x y x") and s.rhs == W("x y x x")


@pytest.mark.parametrize("w,x,i,pos", [("x y x", "x", 2, 2), ("x y x", "x", LAST, 2),
                                       ("x y z x t y s x", "x", 3, 7)])
def test_occurrence_position(w, x, i, pos):
    assert occurrence_position(W(w), x, i) == pos


def test_occurrence_out_of_range():
    with pytest.raises(OutOfRange):
        occurrence_position(W("x y"), "x", 2)


def test_transforms():
    assert delete(W("x y x t y"), {"y"}) == W("x x t")
    assert restrict(W("x y x t y"), {"x", "t"}) == W("x x t")
    assert chi(W("a b c"), "x") == W("a x b x c")
    assert ini2(W("x y x x y")) == W("x y x y")
    assert transform(W("x y x x y"), "ini") == W("x y")
    assert slice_word(W("x y z t"), 1, 2) == W("y z")
    with pytest.raises(OutOfRange):
        slice_word(W("x y"), 1, 5)


def test_decompose():
    d = decompose(W("x x t1 y y t2"))
    assert d.blocks == (W("x x"), W("y y"), EMPTY) and d.separators == ("t1", "t2")
    d = decompose(W("t1 t2"))
    assert d.blocks == (EMPTY, EMPTY, EMPTY)
    d = decompose(W("x y t x z1 y t1 z1"))
    assert d.separators == ("t", "t1")
    assert d.blocks == (W("x y"), W("x z1 y"), W("z1"))
    assert d.reassemble() == W("x y t x z1 y t1 z1")


def test_islands():
    w = W("x y x x y x")
    assert islands(w, "x") == [(0, 1), (2, 2), (5, 1)]
    assert not two_island_limited(w)
    assert two_island_rigid(W("x y x t y"))
    assert islands(W("x x x"), "x") == [(0, 3)]


def test_substitution():
    assert Substitution(x="y", y="z")(W("x y x")) == W("y z y")
    assert Substitution(x="")(W("x y x")) == W("y")
    assert Substitution(t="x x t")(W("x x y t y")) == W("x x y x x t y")


@pytest.mark.parametrize("text,expected", [("x t1 x = x t1 x", True),
                                           ("x x t1 = x t1 x", False),
                                           ("x y t x y = y x t x y", True)])
def test_linear_balanced(text, expected):
    assert is_linear_balanced(parse_identity(text)) is expected


def _brute_factors(w):
    # oracle: every (i, j) slice, written independently of the library
    s = tuple(w)
    return {s[i:j] for i in range(len(s) + 1) for j in range(i, len(s) + 1)}


@pytest.mark.parametrize("ws,expected", [(["x y x"], {"", "x", "y", "x y", "y x", "x y x"}),
                                         (["x y"], {"", "x", "y", "x y"}), ([""], {""})])
def test_factor_closure(ws, expected):
    got = factor_closure([W(w) for w in ws])
    assert got == {W(e) for e in expected}
    assert {tuple(f) for f in got} == set().union(*(_brute_factors(W(w)) for w in ws))


def test_reverse_identity():
    s = Identity(W("x y"), W("y x x"))
    assert s.reversed() == Identity(W("y x"), W("x x y"))
    assert reverse(reverse(W("x y z x"))) == W("x y z x")
