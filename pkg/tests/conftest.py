import pytest

from latpatch import Diagram, build_lattice, generate


@pytest.fixture
def b2():
    """Boolean square with named atoms, l drawn left of r."""
    lat = build_lattice([("0", "l"), ("0", "r"), ("l", "1"), ("r", "1")])
    return Diagram(lat, [0, -1, 1, 0])


@pytest.fixture
def c3():
    lat = build_lattice([("0", "b"), ("b", "1")])
    return Diagram(lat, [0, 0, 0])


@pytest.fixture
def c4():
    lat = build_lattice([("0", "a"), ("a", "b"), ("b", "1")])
    return Diagram(lat, [0, 0, 0, 0])


@pytest.fixture
def m3():
    """Diamond with atoms a, m, b drawn left to right."""
    lat = build_lattice([("0", "a"), ("0", "m"), ("0", "b"),
                         ("a", "1"), ("m", "1"), ("b", "1")])
    return Diagram(lat, [0, -1, 0, 1, 0])


@pytest.fixture
def n5():
    """The pentagon: 0 < x < y < 1 and 0 < z < 1."""
    lat = build_lattice([("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")])
    return Diagram(lat, [0, -1, -1, 1, 0])


@pytest.fixture
def hexagon():
    """0 < p < u < 1 and 0 < q < v < 1; planar but not semimodular."""
    lat = build_lattice([("0", "p"), ("0", "q"), ("p", "u"), ("q", "v"),
                         ("u", "1"), ("v", "1")])
    return Diagram(lat, [0, -1, 1, -1, 1, 0])


def standard_corpus():
    """Chains, small grids, diamonds: the named part of the test corpus."""
    members = [("chain", (n,)) for n in range(2, 7)]
    members += [("grid", (m, n)) for m in range(2, 5) for n in range(2, 5)
                if m * n <= 12]
    members += [("diamond", (3,)), ("diamond", (4,))]
    return [(f"{kind}{params}", generate(kind, params)) for kind, params in members]


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def random_corpus_small():
    """200 seeded random instances with 2..12 elements."""
    out = []
    for seed in range(200):
        size = 2 + seed % 11
        out.append((f"sps[{size}]#{seed}", generate("random-sps", [size], seed=seed)))
    return out
