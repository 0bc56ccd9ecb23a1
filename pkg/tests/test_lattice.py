import random

import pytest

from monoidvar.errors import NotALattice, OrderViolation, ParseError
from monoidvar.lattice import (boolean_lattice, build_lattice, chain_lattice, check_props,
                               count_pentagons, d1_chain_model, distributive_triples,
                               dump_lattice, fig1_model, load_lattice, m3_lattice,
                               modular_triples, n5_lattice, random_lattice)


def brute_meet(L, a, b):
    n = len(L)
    lower = [c for c in range(n) if L.leq[c, a] and L.leq[c, b]]
    return next(c for c in lower if all(L.leq[d, c] for d in lower))


def test_three_chain():
    L = chain_lattice(3)
    assert L.is_chain() and check_props(L).distributive
    assert (L.bottom, L.top) == ("0", "2")


def test_no_top_is_not_a_lattice():
    with pytest.raises(NotALattice):
        build_lattice(covers=[("0", "a"), ("0", "b")])


def test_order_violations():
    with pytest.raises(OrderViolation):
        build_lattice(covers=[("a", "b"), ("b", "a")])
    with pytest.raises(OrderViolation):
        build_lattice(covers=[("a", "a")])


def test_n5_and_m3():
    p = check_props(n5_lattice())
    assert not p.modular and p.shape == "N5"
    assert p.witness == ("0", "a", "c", "b", "1")
    q = check_props(m3_lattice())
    assert q.modular and not q.distributive and q.shape == "M3"
    assert count_pentagons(n5_lattice()) == 1 and count_pentagons(m3_lattice()) == 0


@pytest.mark.parametrize("k", range(5))
def test_boolean_lattices_distributive(k):
    L = boolean_lattice(k)
    assert len(L) == 2 ** k
    assert check_props(L).distributive and distributive_triples(L) is None


def test_random_lattices_agree_with_oracles():
    rng = random.Random(0)
    for _ in range(60):
        L = random_lattice(rng, max_size=10)
        p = check_props(L)
        assert p.distributive == (distributive_triples(L) is None)
        assert p.modular == (modular_triples(L) is None)
        assert len(p.n5) == count_pentagons(L)
        for a in range(len(L)):
            for b in range(len(L)):
                assert L.meet[a, b] == brute_meet(L, a, b)


def test_fig1_shape():
    L = fig1_model()
    assert len(L) == 12 and len(L.covers()) == 13
    assert L.top == "M_λ(xzyx⁺ty⁺)" and L.bottom == "T"
    assert sorted(L.upper_covers("M(xy)")) == sorted(["M_γ(yxx⁺)", "M_γ(xx⁺y)"])
    assert check_props(L).distributive


def test_d1_chain():
    L = d1_chain_model()
    assert L.is_chain() and L.top == "H"


def test_file_round_trip():
    for L in (fig1_model(), n5_lattice(), chain_lattice(4)):
        assert load_lattice(dump_lattice(L)).same_as(L)


def test_load_errors():
    with pytest.raises(ParseError):
        load_lattice("a\nb\na < b\nc\n")
