import itertools
from math import factorial

import pytest

import wreathlab as w
from wreathlab import Coset, PermGroup, Permutation, compose, parse_cycles
from wreathlab.errors import (
    CapExceeded,
    MalformedCycle,
    NotTransitive,
    PointOutOfRange,
    RepeatedPoint,
    WreathlabError,
)


def test_permutation_basics():
    g = Permutation((1, 2, 0))
    assert g(0) == 1 and g(2) == 0
    assert g.inverse() * g == Permutation.identity(3)
    assert g * g.inverse() == Permutation.identity(3)
    assert not g.is_identity()
    assert Permutation.identity(5).is_identity()


def test_permutation_rejects_non_bijection():
    with pytest.raises(WreathlabError):
        Permutation((0, 0, 1))
    with pytest.raises(WreathlabError):
        Permutation(())


def test_compose_is_right_action():
    # "g then h": x g h
    g = parse_cycles("(1 2)", 3)
    h = parse_cycles("(2 3)", 3)
    gh = compose(g, h)
    assert gh(0) == h(g(0))
    # (1 2) then (2 3) maps 1 -> 2 -> 3
    assert gh(0) == 2


def test_cycle_decomposition():
    g = parse_cycles("(1 2 3)(4 5)", 6)
    dec = g.cycles()
    assert dec.cycles == ((0, 1, 2), (3, 4), (5,))
    assert dec.cycle_count == 3
    assert dec.cycle_type == (1, 1, 1, 0, 0, 0)
    assert g.cycle_string() == "(1 2 3)(4 5)"
    assert Permutation.identity(3).cycle_string() == "()"


def test_sign():
    assert parse_cycles("(1 2)", 4).sign() == -1
    assert parse_cycles("(1 2 3)", 4).sign() == 1
    assert Permutation.identity(4).sign() == 1


def test_fixed_point_count():
    assert parse_cycles("(1 2)", 5).fixed_point_count() == 3
    assert Permutation.identity(4).fixed_point_count() == 4


class TestParseCycles:
    def test_good(self):
        assert parse_cycles("()", 3).is_identity()
        assert parse_cycles("(1 2)(3 4)", 4).images == (1, 0, 3, 2)
        assert parse_cycles("(1,2,3)", 3).images == (1, 2, 0)

    def test_malformed(self):
        with pytest.raises(MalformedCycle):
            parse_cycles("", 3)
        with pytest.raises(MalformedCycle):
            parse_cycles("(1 2", 3)
        with pytest.raises(MalformedCycle):
            parse_cycles("(1 x)", 3)

    def test_point_errors(self):
        with pytest.raises(PointOutOfRange):
            parse_cycles("(1 4)", 3)
        with pytest.raises(PointOutOfRange):
            parse_cycles("(0 1)", 3)
        with pytest.raises(RepeatedPoint):
            parse_cycles("(1 2)(2 3)", 3)


def test_symmetric_group_orders():
    for n in range(1, 7):
        assert w.symmetric(n).order == factorial(n)


def test_enumeration_matches_itertools():
    """The BFS closure of S_4 is exactly all 24 permutations."""
    G = w.symmetric(4)
    got = {tuple(int(v) for v in row) for row in G.enumerate_elements()}
    assert got == set(itertools.permutations(range(4)))


def test_elements_sorted():
    rows = [g.images for g in w.symmetric(3).elements()]
    assert rows == sorted(rows)


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        PermGroup(10, w.symmetric(10).generators, cap=100).enumerate_elements()


def test_contains():
    G = w.alternating(4)
    assert parse_cycles("(1 2 3)", 4) in G
    assert parse_cycles("(1 2)", 4) not in G
    assert parse_cycles("(1 2)", 5) not in G


def test_orbits_and_transitivity():
    assert w.symmetric(4).is_transitive()
    H = PermGroup(4, [parse_cycles("(1 2)", 4)])
    assert H.orbits() == [[0, 1], [2], [3]]
    assert not H.is_transitive()


def test_point_stabilizer():
    G = w.symmetric(4)
    H = G.point_stabilizer(0)
    assert H.order == 6
    assert all(h(0) == 0 for h in H.elements())


def test_rank():
    assert w.symmetric(4).rank() == 2   # 2-transitive
    assert w.cyclic(5).rank() == 5      # regular
    with pytest.raises(NotTransitive):
        PermGroup(4, [parse_cycles("(1 2)", 4)]).rank()


def test_sharp_transitivity_degree():
    assert w.symmetric(4).sharp_transitivity_degree() == 3
    assert w.alternating(5).sharp_transitivity_degree() == 3
    assert w.cyclic(5).sharp_transitivity_degree() == 1
    assert w.agl1(5).sharp_transitivity_degree() == 2
    # intransitive: no t works
    assert PermGroup(4, [parse_cycles("(1 2)", 4)]).sharp_transitivity_degree() == 0


def test_coset_enumeration():
    A3 = w.alternating(3)
    tau = parse_cycles("(1 2)", 3)
    coset = Coset(A3, tau)
    assert coset.size == 3
    got = {g.images for g in coset.elements()}
    want = {(c * tau).images for c in A3.elements()}
    assert got == want
    # the odd coset of A_3 is all transpositions: no derangements
    assert all(g.fixed_point_count() == 1 for g in coset.elements())


def test_coset_degree_mismatch():
    with pytest.raises(WreathlabError):
        Coset(w.alternating(3), parse_cycles("(1 2)", 4))


def test_large_degree_dtype():
    """Degrees above 256 use the 2-byte packing; sorting must stay right."""
    G = w.cyclic(300)
    rows = G.enumerate_elements()
    assert rows.dtype.str == ">u2"
    assert G.order == 300
    as_tuples = [tuple(int(v) for v in r) for r in rows]
    assert as_tuples == sorted(as_tuples)
