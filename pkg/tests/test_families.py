from math import factorial

import pytest

from monoidvar.equational import AxiomSystem
from monoidvar.errors import UnknownName, UnknownNumber
from monoidvar.families import (check_class_K, enum_perms, gen_word, identity_by_number,
                                identity_schema, named_axioms,
                                number_of, numbered_identities, resolve_label, word_a_bar,
                                word_a_hat)
from monoidvar.monoids import build_rees, satisfies, trivial_monoid
from monoidvar.words import parse_identity, parse_word

W = parse_word
I = parse_identity


def test_gen_word_examples():
    assert gen_word("a", 1, 0) == W("z1 t1 x z1 x") == word_a_hat(1, 0)
    assert gen_word("a", 0, 1) == word_a_bar(0, 1) == W("x z1 x t1 z1")
    assert gen_word("c", 0, 0, 1) == W("x y t x z1 y t1 z1")


def test_perms():
    assert sorted(enum_perms("S_nm", 1, 1)) == [(1, 2), (2, 1)]
    assert enum_perms("sharp", 1) == [(2, 1)]
    assert enum_perms("S_nm", 2, 0) == []


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (3, 1)])
def test_nm_perms_alternate(n, m):
    got = enum_perms("S_nm", n, m)
    # consecutive images alternate between {1..n} and {n+1..n+m}
    for p in got:
        assert all((p[i] <= n) != (p[i + 1] <= n) for i in range(len(p) - 1))
    f = factorial
    want = 2 * f(n) * f(m) if n == m else (f(n) * f(m) if abs(n - m) == 1 else 0)
    assert len(got) == len(set(got)) == want


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sharp_perms(k):
    got = enum_perms("sharp", k)
    assert len(got) == factorial(k) ** 2
    assert all(min(p[:k]) > k and max(p[k:]) <= k for p in got)


def test_schemas():
    assert identity_schema("sigma2") == [I("x z y t x y = x z y t y x")]
    assert identity_schema("beta_n", n=2) == [I("x t1 x t2 x = x t1 x t2 x^2")]
    assert len(identity_schema("Phi2", bound=1)) == 2


def test_named_axioms():
    q = named_axioms("Q", n=1)
    assert list(q) == [I("x = x^2"), I("x y = y x"), I("x^2 y = x y x")]
    assert list(named_axioms("A")) == [I("x^2 = x^3"), I("x^2 y x = x^2 y x^2")]
    assert len(named_axioms("D3")) == 7
    assert isinstance(named_axioms("Phi"), AxiomSystem)
    with pytest.raises(UnknownName):
        named_axioms("Z9")


@pytest.mark.parametrize("n,text", [(4, "x y x^2 = x^2 y x^2"), (9, "y x^2 t y = x y x^2 t y"),
                                    (11, "x^2 y x = x^2 y x^2"),
                                    (57, "x z x y t x s y = x z y x t x s y")])
def test_identity_by_number(n, text):
    assert identity_by_number(n) == I(text)
    assert number_of(I(text)) == n


def test_numbering_is_injective():
    table = numbered_identities()
    keys = [(s.lhs, s.rhs) for s in table.values()]
    assert len(set(keys)) == len(keys)
    for n, s in table.items():
        assert number_of(s) == n
    with pytest.raises(UnknownNumber):
        identity_by_number(3)


def test_labels_resolve():
    assert resolve_label("xxy=xxyx") == I("x^2 y = x^2 y x")
    assert resolve_label("(4)") == identity_by_number(4)


def test_class_K():
    assert check_class_K(trivial_monoid()) == "NOT_IN_K"
    bad = build_rees(["yxxty"])
    assert not satisfies(bad, identity_by_number(9)).holds
    assert check_class_K(bad) == "NOT_IN_K"
    assert check_class_K(build_rees([word_a_hat(1, 0)]), bound=1) in ("IN_K", "INCONCLUSIVE")
