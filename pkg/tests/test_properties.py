"""Property suites; the profile in conftest runs 1000 derandomized cases each."""

import random

from hypothesis import given, strategies as st

from monoidvar import congruences as cg
from monoidvar.lattice import check_props, distributive_triples, modular_triples, random_lattice
from monoidvar.monoids import build_rees, dual_monoid, satisfies
from monoidvar.words import (EMPTY, Identity, Substitution, Word, decompose, factor_closure,
                             format_word, is_factor, parse_word, reverse)

from oracles import rees_satisfies

letters = st.sampled_from(["x", "y", "t"])
words = st.lists(letters, max_size=7).map(lambda xs: Word(tuple(xs)))
short = st.lists(letters, max_size=2).map(lambda xs: Word(tuple(xs)))
exact_kinds = st.sampled_from(["gamma", "lambda", "beta", "gamma'", "lambda'", "gamma''", "nu", "mu"])


@st.composite
def kin(draw, w):
    # perturb island exponents so that pairs often share a class
    out = []
    for a in w:
        out += [a] * draw(st.sampled_from([1, 1, 2]))
    return Word(tuple(out))


@st.composite
def related_pair(draw):
    u = draw(words)
    v = draw(kin(u)) if draw(st.booleans()) else draw(words)
    return u, v


def E(kind, u, v):
    return cg.equiv(kind, u, v) == cg.EQUIV


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w
    assert parse_word(format_word(w, exponents=True)) == w


@given(words, words)
def test_reverse_is_an_involutive_antihomomorphism(u, v):
    assert reverse(reverse(u)) == u
    assert reverse(u + v) == reverse(v) + reverse(u)


@given(words, words, st.fixed_dictionaries({a: short for a in "xyt"}))
def test_substitution_is_a_homomorphism(u, v, images):
    phi = Substitution(images)
    assert phi(u + v) == phi(u) + phi(v)
    assert len(phi(u)) == sum(len(images[a]) for a in u)


@given(words)
def test_factor_closure_bounds(w):
    F = factor_closure([w])
    n = len(w)
    assert EMPTY in F and w in F
    assert len(F) <= 1 + n * (n + 1) // 2
    assert all(is_factor(f, w) for f in F)
    assert factor_closure(F) == F


@given(words)
def test_decompose_reassembles(w):
    d = decompose(w)
    assert d.reassemble() == w
    assert len(d.blocks) == len(d.separators) + 1


@given(exact_kinds, related_pair(), words, short, short)
def test_congruence_laws(kind, pair, w, p, s):
    u, v = pair
    assert E(kind, u, u)
    assert E(kind, u, v) == E(kind, v, u)
    if E(kind, u, v):
        assert E(kind, p + u + s, p + v + s)
        if E(kind, v, w):
            assert E(kind, u, w)


@given(exact_kinds, words)
def test_canonical_rep_is_a_member_and_idempotent(kind, w):
    r = cg.canonical_rep(kind, w)
    assert E(kind, w, r)
    assert cg.canonical_rep(kind, r) == r
    assert len(r) <= len(w)


@given(st.sampled_from([("lambda", "gamma"), ("beta", "gamma"), ("gamma'", "gamma"),
                        ("lambda'", "lambda"), ("lambda'", "gamma'")]), related_pair())
def test_refinement(pair_of_kinds, pair):
    fine, coarse = pair_of_kinds
    u, v = pair
    if E(fine, u, v):
        assert E(coarse, u, v)


@given(related_pair())
def test_xyx_key_matches_brute_force(pair):
    u, v = pair
    if len(set(u) | set(v)) <= 3:
        key = cg.rees_key(("xyx",))
        assert (key(u) == key(v)) == rees_satisfies(["xyx"], u, v)


@given(st.lists(st.lists(letters, min_size=1, max_size=4), min_size=1, max_size=2))
def test_rees_tables_are_monoids(ws):
    M = build_rees([Word(tuple(w)) for w in ws])
    M.check_axioms()
    assert len(M) == len(factor_closure([Word(tuple(w)) for w in ws])) + 1


@given(words, words)
def test_satisfies_matches_brute_force_and_duality(u, v):
    if len(set(u) | set(v)) > 3:
        return
    s = Identity(u, v)
    M = build_rees(["xyx"])
    got = satisfies(M, s).holds
    assert got == rees_satisfies(["xyx"], u, v)
    assert got == satisfies(dual_monoid(M), s.reversed()).holds


@given(st.integers(0, 2 ** 32 - 1))
def test_lattice_checks_agree(seed):
    L = random_lattice(random.Random(seed), max_size=10)
    p = check_props(L)
    assert p.distributive == (distributive_triples(L) is None)
    assert p.modular == (modular_triples(L) is None)
