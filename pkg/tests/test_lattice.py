import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import S
from oracles import all_subspaces, perp as o_perp, plus as o_plus, to_frozen
from qmat.lattice import (Embedding, LatticeError, LatticeTooLarge, QuotientMap, canonicalize,
                          contains, count_subspaces, enumerate_subspaces, gaussian_binomial,
                          get_lattice, hyperplanes, interval, intersect, parse_subspace, perp,
                          span_sum, zero)

SMALL = [(2, 2), (2, 3), (3, 2)]


def test_canonicalize_examples():
    assert canonicalize(2, 3, [(1, 1, 0), (0, 1, 1)]).rows == ((1, 0, 1), (0, 1, 1))
    assert canonicalize(2, 2, []) == zero(2, 2)
    s = canonicalize(2, 2, [(1, 0), (1, 0)])
    assert s.rows == ((1, 0),) and s.dim == 1
    assert canonicalize(3, 2, [(0, 0), (2, 2)]).rows == ((1, 1),)


@pytest.mark.parametrize("gens", [[(1, 2)], [(1,)], [(0, -1)]])
def test_canonicalize_rejects_bad_vectors(gens):
    with pytest.raises(LatticeError):
        canonicalize(2, 2, gens)


def test_sum_intersect_contains_examples():
    E = get_lattice(2, 2).ground
    assert span_sum(S("10"), S("01")) == E
    assert span_sum(S("10"), S("11")) == E
    assert span_sum(S("10"), zero(2, 2)) == S("10")
    assert intersect(S("10"), S("01")) == zero(2, 2)
    assert intersect(S("11"), E) == S("11")
    a, b = S("110 011", 2, 3), S("100 010", 2, 3)
    assert intersect(a, b) == S("110", 2, 3)
    assert contains(E, S("11"))
    assert not contains(S("10"), S("01"))
    assert contains(S("101 011", 2, 3), S("110", 2, 3))


def test_ambient_mismatch():
    with pytest.raises(LatticeError):
        span_sum(S("10"), S("100", 2, 3))


def test_enumerate_examples():
    subs = enumerate_subspaces(2, 2)
    assert len(subs) == 5 and sum(s.dim == 1 for s in subs) == 3
    assert len(enumerate_subspaces(2, 3, 1)) == 7
    assert enumerate_subspaces(3, 4, 0) == [zero(3, 4)]
    assert [s.literal() for s in subs] == ["0", "01", "10", "11", "10 01"]


def test_enumeration_guard():
    with pytest.raises(LatticeTooLarge):
        enumerate_subspaces(2, 6, limit=100)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_counts_match_gaussian_binomial(q, n):
    for k in range(n + 1):
        assert len(enumerate_subspaces(q, n, k)) == gaussian_binomial(n, k, q)
    assert len(get_lattice(q, n)) == count_subspaces(q, n)


@pytest.mark.parametrize("q,n", SMALL + [(2, 4)])
def test_enumeration_matches_brute_force(q, n):
    ours = {to_frozen(s) for s in enumerate_subspaces(q, n)}
    assert ours == set(all_subspaces(q, n))


def test_gaussian_binomial_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(5, 0, 7) == 1
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 4, 2) == 0


def test_order_is_dimension_then_lex():
    for q, n in SMALL:
        subs = list(get_lattice(q, n))
        assert subs == sorted(subs, key=lambda s: (s.dim, s.rows))


def test_hyperplanes():
    assert [h.literal() for h in hyperplanes(get_lattice(2, 2))] == ["01", "10", "11"]
    assert len(hyperplanes(get_lattice(2, 3))) == 7
    assert hyperplanes(get_lattice(5, 1)) == [zero(5, 1)]


def test_perp_examples():
    E = get_lattice(2, 2).ground
    assert perp(S("10")) == S("01")
    assert perp(E) == zero(2, 2)
    assert perp(S("11")) == S("11")


def test_interval_examples():
    lat = get_lattice(2, 3)
    assert len(interval(lat.zero, lat.ground)) == 16
    a = S("101", 2, 3)
    assert interval(a, a).members == (a,)
    assert len(interval(S("100", 2, 3), lat.ground)) == 5
    with pytest.raises(LatticeError):
        interval(S("100", 2, 3), S("010 001", 2, 3))


@pytest.mark.parametrize("q,n", SMALL)
def test_interval_closed_under_join_and_meet(q, n):
    lat = get_lattice(q, n)
    for a, b in itertools.combinations_with_replacement(lat, 2):
        if contains(b, a):
            iv = interval(a, b)
            for x, y in itertools.product(iv.members, repeat=2):
                assert span_sum(x, y) in iv and intersect(x, y) in iv


@pytest.mark.parametrize("q,n", SMALL)
def test_lattice_laws_and_modularity(q, n):
    lat = get_lattice(q, n)
    fro = {s: to_frozen(s) for s in lat}
    for a, b in itertools.product(lat, repeat=2):
        s, m = span_sum(a, b), intersect(a, b)
        assert fro[s] == o_plus(q, n, fro[a], fro[b])
        assert fro[m] == fro[a] & fro[b]
        assert s == span_sum(b, a) and m == intersect(b, a)
        assert span_sum(a, intersect(a, b)) == a and intersect(a, span_sum(a, b)) == a
        assert a.dim + b.dim == s.dim + m.dim
        assert contains(a, b) == (fro[b] <= fro[a])
        # the bitmask tables agree with the subspace operations
        i, j = lat.id(a), lat.id(b)
        assert lat[lat.join(i, j)] == s and lat[lat.meet(i, j)] == m


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2)])
def test_associativity(q, n):
    lat = get_lattice(q, n)
    for a, b, c in itertools.product(lat, repeat=3):
        assert span_sum(span_sum(a, b), c) == span_sum(a, span_sum(b, c))
        assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))


@pytest.mark.parametrize("q,n", SMALL)
def test_perp_anti_isomorphism(q, n):
    lat = get_lattice(q, n)
    for a in lat:
        assert perp(perp(a)) == a
        assert perp(a).dim == n - a.dim
        assert to_frozen(perp(a)) == o_perp(q, n, to_frozen(a))
    for a, b in itertools.product(lat, repeat=2):
        assert contains(b, a) == contains(perp(a), perp(b))
        assert perp(intersect(a, b)) == span_sum(perp(a), perp(b))


def test_parse_subspace():
    assert parse_subspace("0", 2, 3) == zero(2, 3)
    assert parse_subspace("  110   011 ", 2, 3).rows == ((1, 0, 1), (0, 1, 1))
    for bad in ["", "102", "1", "1a", "1²"]:
        with pytest.raises(LatticeError):
            parse_subspace(bad, 2, 2)


def test_literal_round_trip():
    for q, n in SMALL:
        for s in get_lattice(q, n):
            assert parse_subspace(s.literal(), q, n) == s
            assert canonicalize(q, n, s.rows) == s


def test_quotient_map_examples():
    x = S("100", 2, 3)
    pi = QuotientMap(x)
    assert pi.m == 2
    assert pi.push(x) == zero(2, 2)
    assert pi.push(get_lattice(2, 3).ground) == get_lattice(2, 2).ground
    assert pi.pull(pi.push(S("010", 2, 3))) == S("100 010", 2, 3)


@pytest.mark.parametrize("q,n", SMALL)
def test_quotient_map_is_interval_isomorphism(q, n):
    lat = get_lattice(q, n)
    for x in lat:
        pi = QuotientMap(x)
        small = get_lattice(q, n - x.dim)
        for w in small:
            assert pi.push(pi.pull(w)) == w
        above = interval(x, lat.ground).members
        assert sorted(pi.push(a) for a in above) == sorted(small)
        for a in above:
            assert pi.pull(pi.push(a)) == a


@pytest.mark.parametrize("q,n", SMALL)
def test_embedding_is_interval_isomorphism(q, n):
    lat = get_lattice(q, n)
    for x in lat:
        emb = Embedding(x)
        small = get_lattice(q, x.dim)
        assert sorted(emb.push(w) for w in small) == sorted(interval(lat.zero, x).members)
        for w in small:
            assert emb.pull(emb.push(w)) == w
        for a, b in itertools.product(small, repeat=2):
            assert emb.push(span_sum(a, b)) == span_sum(emb.push(a), emb.push(b))


vec3 = st.lists(st.integers(0, 2), min_size=3, max_size=3)


@settings(max_examples=200, deadline=None)
@given(st.lists(vec3, max_size=4), st.lists(vec3, max_size=4))
def test_sum_matches_brute_force_span_q3(ga, gb):
    a, b = canonicalize(3, 3, ga), canonicalize(3, 3, gb)
    assert to_frozen(span_sum(a, b)) == o_plus(3, 3, to_frozen(a), to_frozen(b))
    assert to_frozen(intersect(a, b)) == to_frozen(a) & to_frozen(b)
    assert canonicalize(3, 3, ga + gb) == span_sum(a, b)
