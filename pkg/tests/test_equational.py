from itertools import product

import pytest

from monoidvar.acceptance import FIXTURES, chain_files, mutate_chain
from monoidvar.equational import (AxiomSystem, ProverConfig, directly_deducible,
                                  efficient_form, load_chain, one_letter_identity, prove,
                                  reduce_one_letter, verify_chain)
from monoidvar.errors import NotOneLetterForm, SkeletonMismatch
from monoidvar.families import named_axioms
from monoidvar.lattice import node_monoid
from monoidvar.monoids import build_rees, satisfies
from monoidvar.words import EMPTY, Identity, parse_identity, parse_word

W = parse_word
I = parse_identity


def brute_deducible(u, v, ax):
    """Oracle: try every common prefix/suffix and every substitution into factors."""
    u, v = tuple(u), tuple(v)
    letters = sorted(set(ax.lhs) | set(ax.rhs))
    pool = {()}
    for w in (u, v):
        pool |= {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}
    for p in range(min(len(u), len(v)) + 1):
        if u[:p] != v[:p]:
            break
        for q in range(min(len(u), len(v)) - p + 1):
            if q and u[len(u) - q:] != v[len(v) - q:]:
                break
            X, Y = u[p:len(u) - q], v[p:len(v) - q]
            for imgs in product(pool, repeat=len(letters)):
                phi = dict(zip(letters, imgs))
                s = sum((phi[a] for a in ax.lhs), ())
                t = sum((phi[a] for a in ax.rhs), ())
                if (s, t) in ((X, Y), (Y, X)):
                    return True
    return False


def test_directly_deducible_examples():
    st = directly_deducible(W("x y z y"), W("x y z"), I("x y = x y x"))
    assert st is not None and st.a == W("x") and st.b == EMPTY
    assert st.phi["x"] == W("y") and st.phi["y"] == W("z")
    st = directly_deducible(W("a x y b"), W("a y x b"), I("x y = y x"))
    assert st.a == W("a") and st.b == W("b")
    assert directly_deducible(W("x y"), W("y x"), I("x^2 = x^3")) is None


def test_directly_deducible_symmetric():
    ax = I("x y = x y x")
    assert directly_deducible(W("x y z"), W("x y z y"), ax) is not None


@pytest.mark.parametrize("u,v,ax", [
    ("x y z y", "x y z", "x y = x y x"), ("x y", "y x", "x^2 = x^3"),
    ("x x y", "x x x y", "x^2 = x^3"), ("x y x", "y x x", "x y = y x"),
    ("x y x y", "x y", "x^2 = x"), ("x y t x", "x y t x x", "x t x = x t x^2"),
    ("y x x t y", "x y x x t y", "y x^2 = x y x^2"), ("x y", "x y", "x y = y x"),
    ("x y z", "z y x", "x y = y x"),
])
def test_directly_deducible_matches_oracle(u, v, ax):
    got = directly_deducible(W(u), W(v), I(ax)) is not None
    assert got == brute_deducible(W(u), W(v), I(ax))


@pytest.mark.parametrize("path", chain_files(), ids=lambda p: p.stem)
def test_chain_fixtures_verify(path):
    ch = load_chain(path.read_text("utf-8"))
    assert verify_chain(ch, None).ok


@pytest.mark.parametrize("path", chain_files()[:4], ids=lambda p: p.stem)
def test_chain_mutations_fail_at_step(path):
    ch = load_chain(path.read_text("utf-8"))
    for i in range(1, len(ch) + 1):
        assert verify_chain(mutate_chain(ch, i), None).first_failure == i - 1


def test_chain_dump_round_trip():
    ch = load_chain((FIXTURES / "chains" / "corollary-yxxty.chain").read_text("utf-8"))
    again = load_chain(ch.dump())
    assert again.words == ch.words and again.labels == ch.labels


def test_prove_one_step():
    r = prove(AxiomSystem("V", ["x y = x y x"]), I("x y z y = x y z"))
    assert r.status == "PROVED" and len(r.chain) == 1


def test_prove_axiom_instance():
    r = prove(named_axioms("Phi"), I("x^2 y^2 = y^2 x^2"))
    assert r.status == "PROVED" and len(r.chain) <= 1


def test_prove_refutes_with_relatively_free_monoid():
    # M(xyzxty) lies outside D1 (it fails xyx = xyx^2), so the countermodel is F_H(3)
    assert not satisfies(build_rees(["xyzxty"]), I("x y x = x y x^2")).holds
    H = node_monoid("H")
    cfg = ProverConfig(countermodels=(H,))
    r = prove(named_axioms("D1"), I("x y z x t y = y x z x t y"), cfg)
    assert r.status == "REFUTED"
    assert not satisfies(r.model, I("x y z x t y = y x z x t y")).holds
    for ax in named_axioms("D1"):
        assert satisfies(r.model, ax).holds


@pytest.mark.parametrize("text,expected", [("x t1 x = x t1 x^2", ["beta1"]),
                                           ("x^2 t1 x = x t1 x^2", ["gamma1"]),
                                           ("x t1 x t2 x = x t1 x t2 x", [])])
def test_reduce_one_letter(text, expected):
    red = reduce_one_letter(text)
    assert [s.name for s in red.result] == expected
    assert red.checked


def test_reduce_rejects_other_shapes():
    with pytest.raises(NotOneLetterForm):
        reduce_one_letter("x y x y = y x y x")


def test_one_letter_identity_builder():
    assert one_letter_identity([1, 1], [1, 2]) == I("x t1 x = x t1 x^2")


def test_efficient_form():
    assert efficient_form(I("x t1 t2 x = x^2 t1 t2")) == I("x t1 x = x^2 t1")
    s = I("x t1 x = x t1 x^2")
    assert efficient_form(s) == s
    assert efficient_form(I("t1 = t1")) == I("t1 = t1")
    with pytest.raises(SkeletonMismatch):
        efficient_form(I("x t1 t2 x = x t2 t1 x"))
