from itertools import combinations

import pytest

import oracles
from latpatch import (build_lattice, classify_subset, interval, irreducibility,
                      is_isomorphic, is_semimodular)
from latpatch.core import iter_bits
from latpatch.errors import (CycleDetected, EmptySet, NotALattice, NotBounded,
                             NotComparable)


def test_three_chain():
    lat = build_lattice([("0", "a"), ("a", "1")])
    assert lat.n == 3
    assert lat.height[lat.id_of("1")] == 2
    assert lat.names[lat.bottom] == "0" and lat.names[lat.top] == "1"


def test_boolean_square_tables():
    lat = build_lattice([("0", "l"), ("0", "r"), ("l", "1"), ("r", "1")])
    l, r = lat.id_of("l"), lat.id_of("r")
    assert lat.join[l][r] == lat.top
    assert lat.meet[l][r] == lat.bottom


def test_pentagon_is_a_lattice_with_oracle_tables():
    covers = [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")]
    elements = ["0", "x", "y", "z", "1"]
    lat = build_lattice(covers, elements=elements)
    leq = oracles.closure_leq(covers, elements)
    for a in elements:
        for b in elements:
            i, j = lat.id_of(a), lat.id_of(b)
            assert lat.names[lat.join[i][j]] == oracles.lub(leq, elements, a, b)
            assert lat.names[lat.meet[i][j]] == oracles.glb(leq, elements, a, b)


def test_cycle_detected():
    with pytest.raises(CycleDetected):
        build_lattice([("a", "b"), ("b", "a")])


def test_not_bounded():
    with pytest.raises(NotBounded):
        build_lattice([("a", "c"), ("b", "c")])  # two minimal elements


def test_redundant_cover_rejected():
    with pytest.raises(NotALattice) as err:
        build_lattice([("0", "a"), ("a", "1"), ("0", "1")])
    assert err.value.witness == ("0", "1")


def test_missing_bound_rejected():
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"),
              ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice) as err:
        build_lattice(covers)
    assert err.value.witness is not None


def test_semimodular_examples(n5, m3):
    c5 = build_lattice(list(zip("01234", "12345"))[:4])
    assert is_semimodular(c5)
    assert not is_semimodular(n5.lattice)
    assert is_semimodular(m3.lattice)


def test_semimodular_matches_oracle(corpus):
    for name, diag in corpus:
        lat = diag.lattice
        covers = [(lat.names[a], lat.names[b]) for a, b in lat.covers]
        assert is_semimodular(lat) == oracles.brute_semimodular(
            covers, list(lat.names)), name


def test_irreducibility(m3, c3):
    mid = m3.lattice.id_of("m")
    assert irreducibility(m3.lattice, mid).doubly_irreducible
    b2 = build_lattice([("0", "l"), ("0", "r"), ("l", "1"), ("r", "1")])
    flags = irreducibility(b2, b2.bottom)
    assert not (flags.join_irreducible or flags.meet_irreducible
                or flags.doubly_irreducible)
    assert irreducibility(c3.lattice, c3.lattice.id_of("b")).doubly_irreducible


def test_interval_of_grid_is_product():
    from latpatch import generate
    g = generate("grid", [3, 3]).lattice
    got = interval(g, g.id_of("1,0"), g.id_of("2,2"))
    covers, elements = oracles.product_chain_covers(2, 3)
    got_covers = [(got.names[a], got.names[b]) for a, b in got.covers]
    assert oracles.brute_isomorphic(got_covers, list(got.names), covers, elements)


def test_interval_trivial_cases(c4):
    lat = c4.lattice
    assert interval(lat, lat.bottom, lat.top) == lat.restrict(range(lat.n))
    assert interval(lat, lat.id_of("a"), lat.id_of("a")).n == 1
    with pytest.raises(NotComparable):
        interval(build_lattice([("0", "l"), ("0", "r"), ("l", "1"), ("r", "1")]),
                 1, 2)


def test_classify_subset(c3, b2):
    lat = c3.lattice
    roles = classify_subset(lat, [lat.id_of("0"), lat.id_of("b")])
    assert roles.is_ideal and roles.is_chain and not roles.is_filter
    lat = b2.lattice
    roles = classify_subset(lat, [lat.id_of("l"), lat.id_of("1")])
    assert roles.is_filter and roles.is_chain
    roles = classify_subset(lat, [lat.id_of("l"), lat.id_of("r")])
    assert not (roles.is_ideal or roles.is_filter or roles.is_chain)
    with pytest.raises(EmptySet):
        classify_subset(lat, [])


def test_classify_interval_members_is_sublattice(corpus):
    for name, diag in corpus:
        lat = diag.lattice
        members = list(iter_bits(lat.up[lat.bottom] & lat.down[lat.top]))
        assert classify_subset(lat, members).is_sublattice, name


def test_isomorphic_relabeled_square(b2):
    other = build_lattice([("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")])
    send = is_isomorphic(b2.lattice, other)
    assert send is not None
    image = {(send[a], send[b]) for a, b in b2.lattice.covers}
    assert image == set(other.covers)


def test_isomorphic_distinguishes_same_size():
    c5 = build_lattice(list(zip("01234", "12345"))[:4])
    square_with_top = build_lattice(
        [("0", "l"), ("0", "r"), ("l", "c"), ("r", "c"), ("c", "1")])
    assert is_isomorphic(c5, square_with_top) is None


def test_isomorphic_reflexive_and_symmetric(corpus):
    for name, diag in corpus:
        assert is_isomorphic(diag.lattice, diag.lattice) is not None, name
    for (n1, d1), (n2, d2) in combinations(corpus[:8], 2):
        fwd = is_isomorphic(d1.lattice, d2.lattice)
        bwd = is_isomorphic(d2.lattice, d1.lattice)
        assert (fwd is None) == (bwd is None), (n1, n2)


def test_join_is_unique_minimal_upper_bound(corpus):
    for name, diag in corpus:
        lat = diag.lattice
        for a in range(lat.n):
            for b in range(lat.n):
                j = lat.join[a][b]
                uppers = [z for z in range(lat.n) if lat.leq(a, z) and lat.leq(b, z)]
                assert j in uppers and all(lat.leq(j, z) for z in uppers), name
                m = lat.meet[a][b]
                lowers = [z for z in range(lat.n) if lat.leq(z, a) and lat.leq(z, b)]
                assert m in lowers and all(lat.leq(z, m) for z in lowers), name


def test_semimodular_corpus_is_graded(corpus):
    for name, diag in corpus:
        lat = diag.lattice
        for a, b in lat.covers:
            assert lat.height[b] == lat.height[a] + 1, name
