"""Finite bounded lattices built from their cover relations.

Elements are integer ids 0..n-1; external labels are kept in `names` and
only matter for IO and for re-anchoring replay records.  Order data is
stored as per-element bitmasks so that comparisons, bound scans and subset
role checks are plain integer operations.
"""

from dataclasses import dataclass

from .errors import CycleDetected, EmptySet, NotALattice, NotBounded, NotComparable


def iter_bits(mask):
    """Positions of the set bits of `mask`, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """A finite bounded lattice: cover pairs plus derived order tables.

    Construction validates every axiom (acyclicity, unique bounds, the
    input pairs being genuine covers, existence of all joins and meets)
    and raises a diagnostic naming the first violation.  Instances are
    immutable after construction and safe to share.
    """

    def __init__(self, covers, elements=None):
        covers = list(covers)
        if elements is None:
            first_seen = {}
            for lo, hi in covers:
                first_seen.setdefault(lo, None)
                first_seen.setdefault(hi, None)
            names = list(first_seen)
        else:
            names = list(elements)
        if not names:
            raise NotBounded("a lattice needs at least one element")
        if len(set(names)) != len(names):
            raise ValueError("duplicate element labels")
        self.names = tuple(names)
        self.n = n = len(names)
        self.index = {lab: i for i, lab in enumerate(names)}

        pairs = set()
        for lo, hi in covers:
            if lo not in self.index or hi not in self.index:
                raise NotALattice(f"cover ({lo!r}, {hi!r}) uses an unknown element")
            a, b = self.index[lo], self.index[hi]
            if a == b:
                raise CycleDetected(f"self-loop at {lo!r}")
            pairs.add((a, b))
        self.covers = tuple(sorted(pairs))
        self._cover_set = frozenset(self.covers)

        above = [[] for _ in range(n)]
        below = [[] for _ in range(n)]
        for a, b in self.covers:
            above[a].append(b)
            below[b].append(a)
        self.upper_covers = tuple(tuple(sorted(v)) for v in above)
        self.lower_covers = tuple(tuple(sorted(v)) for v in below)

        topo = self._topo_order()

        up = [0] * n
        for v in reversed(topo):
            m = 1 << v
            for w in self.upper_covers[v]:
                m |= up[w]
            up[v] = m
        down = [0] * n
        for v in topo:
            m = 1 << v
            for w in self.lower_covers[v]:
                m |= down[w]
            down[v] = m
        self.up = tuple(up)
        self.down = tuple(down)
        self.full_mask = (1 << n) - 1

        minima = [v for v in range(n) if not self.lower_covers[v]]
        maxima = [v for v in range(n) if not self.upper_covers[v]]
        if len(minima) != 1:
            raise NotBounded(
                f"{len(minima)} minimal elements: {[self.names[v] for v in minima]!r}")
        if len(maxima) != 1:
            raise NotBounded(
                f"{len(maxima)} maximal elements: {[self.names[v] for v in maxima]!r}")
        self.bottom = minima[0]
        self.top = maxima[0]

        for a, b in self.covers:
            between = self.up[a] & self.down[b] & ~((1 << a) | (1 << b))
            if between:
                z = next(iter_bits(between))
                raise NotALattice(
                    f"({self.names[a]!r}, {self.names[b]!r}) is not a cover: "
                    f"{self.names[z]!r} lies between",
                    witness=(self.names[a], self.names[b]))

        height = [0] * n
        for v in topo:
            for w in self.upper_covers[v]:
                if height[v] + 1 > height[w]:
                    height[w] = height[v] + 1
        self.height = tuple(height)

        self.join = self._bound_table(self.up, highest=False)
        self.meet = self._bound_table(self.down, highest=True)

    def _topo_order(self):
        indeg = [len(self.lower_covers[v]) for v in range(self.n)]
        order = [v for v in range(self.n) if indeg[v] == 0]
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            for w in self.upper_covers[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    order.append(w)
        if len(order) != self.n:
            stuck = [self.names[v] for v in range(self.n) if indeg[v] > 0]
            raise CycleDetected(f"cover relation has a cycle through {stuck[:4]!r}")
        return order

    def _bound_table(self, reach, highest):
        # In a lattice the common bounds of (a, b) are exactly the bounds of
        # their join/meet, so `reach[a] & reach[b]` must itself be a reach
        # mask; a dict lookup finds the bound or proves there is none.
        n = self.n
        owner = {mask: v for v, mask in enumerate(reach)}
        kind = "greatest lower" if highest else "least upper"
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            row = table[a]
            row[a] = a
            reach_a = reach[a]
            for b in range(a + 1, n):
                c = owner.get(reach_a & reach[b])
                if c is None:
                    raise NotALattice(
                        f"{self.names[a]!r} and {self.names[b]!r} have no "
                        f"{kind} bound", witness=(self.names[a], self.names[b]))
                row[b] = table[b][a] = c
        return tuple(map(tuple, table))

    # -- order queries ---------------------------------------------------

    def leq(self, a, b):
        return bool(self.down[b] >> a & 1)

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def is_cover(self, a, b):
        return (a, b) in self._cover_set

    def id_of(self, label):
        return self.index[label]

    def labels(self, ids):
        return [self.names[v] for v in sorted(ids)]

    def mask_of(self, ids):
        m = 0
        for v in ids:
            m |= 1 << v
        return m

    def restrict(self, members):
        """Sublattice induced on the given ids, covers recomputed.

        Intended for subsets that are sublattices (ideals, filters,
        intervals); the result is validated like any other lattice.
        """
        members = sorted(members)
        mask = self.mask_of(members)
        covers = []
        for u in members:
            for v in iter_bits(self.up[u] & mask & ~(1 << u)):
                between = self.up[u] & self.down[v] & mask & ~((1 << u) | (1 << v))
                if not between:
                    covers.append((self.names[u], self.names[v]))
        return Lattice(covers, elements=[self.names[v] for v in members])

    def __eq__(self, other):
        return (isinstance(other, Lattice)
                and self.names == other.names and self.covers == other.covers)

    __hash__ = None

    def __repr__(self):
        return f"Lattice({self.n} elements, {len(self.covers)} covers)"


def build_lattice(covers, elements=None):
    """Build and validate a lattice from labeled cover pairs."""
    return Lattice(covers, elements=elements)


def is_semimodular(lat):
    """Cover-form upper semimodularity: a∧b ≺ a implies b ≺ a∨b."""
    for a in range(lat.n):
        meets = lat.meet[a]
        joins = lat.join[a]
        for b in range(lat.n):
            if lat.is_cover(meets[b], a) and not lat.is_cover(b, joins[b]):
                return False
    return True


@dataclass(frozen=True)
class Irreducibility:
    join_irreducible: bool
    meet_irreducible: bool
    doubly_irreducible: bool


def irreducibility(lat, x):
    """Join/meet irreducibility of one element, by counting its covers."""
    ji = len(lat.lower_covers[x]) == 1
    mi = len(lat.upper_covers[x]) == 1
    return Irreducibility(ji, mi, ji and mi)


def interval(lat, a, b):
    """The interval [a, b] as a lattice of its own."""
    if not lat.leq(a, b):
        raise NotComparable(f"{lat.names[a]!r} is not below {lat.names[b]!r}")
    return lat.restrict(iter_bits(lat.up[a] & lat.down[b]))


@dataclass(frozen=True)
class SubsetRole:
    members: frozenset
    is_ideal: bool
    is_filter: bool
    is_chain: bool
    is_sublattice: bool


def classify_subset(lat, members):
    """Report which of ideal / filter / chain / sublattice hold for a subset."""
    members = frozenset(members)
    if not members:
        raise EmptySet("cannot classify the empty subset")
    mask = lat.mask_of(members)
    downset = all(lat.down[v] & ~mask == 0 for v in members)
    upset = all(lat.up[v] & ~mask == 0 for v in members)
    join_closed = meet_closed = True
    ms = sorted(members)
    for i, a in enumerate(ms):
        joins, meets = lat.join[a], lat.meet[a]
        for b in ms[i + 1:]:
            if not mask >> joins[b] & 1:
                join_closed = False
            if not mask >> meets[b] & 1:
                meet_closed = False
        if not (join_closed or meet_closed):
            break
    by_height = sorted(members, key=lambda v: lat.height[v])
    chain = all(lat.leq(a, b) for a, b in zip(by_height, by_height[1:]))
    return SubsetRole(members, downset and join_closed, upset and meet_closed,
                      chain, join_closed and meet_closed)


# -- isomorphism ---------------------------------------------------------

def _joint_colors(lat1, lat2):
    """Neighbourhood refinement over both lattices with one shared palette,
    so equal color ids mean equal invariants across the two."""

    def signatures(lat, colors):
        return [(colors[v],
                 tuple(sorted(colors[w] for w in lat.upper_covers[v])),
                 tuple(sorted(colors[w] for w in lat.lower_covers[v])))
                for v in range(lat.n)]

    palette = {}
    c1 = [palette.setdefault((lat1.height[v], len(lat1.upper_covers[v]),
                              len(lat1.lower_covers[v])), len(palette))
          for v in range(lat1.n)]
    c2 = [palette.setdefault((lat2.height[v], len(lat2.upper_covers[v]),
                              len(lat2.lower_covers[v])), len(palette))
          for v in range(lat2.n)]
    while True:
        palette = {}
        n1 = [palette.setdefault(s, len(palette)) for s in signatures(lat1, c1)]
        n2 = [palette.setdefault(s, len(palette)) for s in signatures(lat2, c2)]
        if len(set(n1) | set(n2)) == len(set(c1) | set(c2)):
            return n1, n2
        c1, c2 = n1, n2


def is_isomorphic(lat1, lat2):
    """An order-isomorphism lat1 -> lat2 as an id map, or None.

    Invariant refinement first, then backtracking over color classes;
    deterministic for fixed inputs.
    """
    if lat1.n != lat2.n or len(lat1.covers) != len(lat2.covers):
        return None
    c1, c2 = _joint_colors(lat1, lat2)
    if sorted(c1) != sorted(c2):
        return None
    class_size = {}
    for c in c1:
        class_size[c] = class_size.get(c, 0) + 1
    order = sorted(range(lat1.n), key=lambda v: (class_size[c1[v]], c1[v], v))
    candidates = {v: [w for w in range(lat2.n) if c2[w] == c1[v]] for v in order}
    mapping = [-1] * lat1.n
    used = [False] * lat2.n

    def consistent(v, w):
        for u in lat1.upper_covers[v]:
            if mapping[u] != -1 and not lat2.is_cover(w, mapping[u]):
                return False
        for u in lat1.lower_covers[v]:
            if mapping[u] != -1 and not lat2.is_cover(mapping[u], w):
                return False
        return True

    def search(i):
        if i == lat1.n:
            return True
        v = order[i]
        for w in candidates[v]:
            if not used[w] and consistent(v, w):
                mapping[v] = w
                used[w] = True
                if search(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    if not search(0):
        return None
    image = {(mapping[a], mapping[b]) for a, b in lat1.covers}
    if image != set(lat2.covers):
        return None
    return {v: mapping[v] for v in range(lat1.n)}
