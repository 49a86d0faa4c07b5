"""Constructive steps on planar semimodular diagrams.

Gluing two lattices over a chain, adding a doubly irreducible element
beside a boundary triple, pulling a gluing witness back through such an
extension, extending a lattice until it is rectangular, and cutting a
slim rectangular lattice at a boundary element.
"""

from dataclasses import dataclass
from fractions import Fraction

from .core import Lattice, classify_subset, irreducibility, iter_bits
from .diagram import (Diagram, is_patch, is_rectangular, is_slim, subdiagram,
                      synthesize_embedding, upper_left_boundary,
                      upper_right_boundary, validate_diagram)
from .errors import (AssertionFailed, BadX, ChainWasSingletonT, EmbeddingFailed,
                     ImproperWitness, InvalidSite, IsPatch,
                     IterationBoundExceeded, NotAChain, NotAFilter, NotAnIdeal,
                     NotIso, NotRectangular, StuckNotRectangular)


@dataclass(frozen=True)
class ExtensionStep:
    """One boundary extension: the new element t with a < t < c only."""
    a: object
    b: object
    c: object
    side: str
    t: object
    before: Diagram
    after: Diagram


@dataclass(frozen=True)
class GluingWitness:
    """An ideal A and a filter B covering the ambient lattice, meeting in
    a nonempty chain C = A ∩ B.  Sets hold element ids of `ambient`."""
    ambient: Lattice
    A: frozenset
    B: frozenset
    C: frozenset

    @property
    def proper(self):
        full = self.ambient.n
        return len(self.A) < full and len(self.B) < full

    def labels(self):
        amb = self.ambient
        return (amb.labels(self.A), amb.labels(self.B), amb.labels(self.C))


@dataclass(frozen=True)
class DecompositionCut:
    """A cut of a slim rectangular diagram at a boundary element x."""
    x: int
    pivot: int
    ambient: Diagram
    bottom_part: Diagram
    top_part: Diagram
    chain: tuple
    mode: str


def _is_chain_mask(lat, mask):
    members = sorted(iter_bits(mask), key=lambda v: lat.height[v])
    for a, b in zip(members, members[1:]):
        if not lat.leq(a, b):
            return False
    return True


def validate_witness(w, require_proper=True):
    """None when the witness is valid (and proper, unless waived); else a reason."""
    amb = w.ambient
    if not w.A or not w.B:
        return "empty part"
    a_mask = amb.mask_of(w.A)
    b_mask = amb.mask_of(w.B)
    reach = 0
    for v in w.A:
        reach |= amb.down[v]
    if reach != a_mask:
        return "A is not an ideal"
    # a downset is join-closed iff its maximal elements join inside it
    maxes = [v for v in w.A if amb.up[v] & a_mask == 1 << v]
    for i, x in enumerate(maxes):
        for y in maxes[i + 1:]:
            if not a_mask >> amb.join[x][y] & 1:
                return "A is not an ideal"
    reach = 0
    for v in w.B:
        reach |= amb.up[v]
    if reach != b_mask:
        return "B is not a filter"
    mins = [v for v in w.B if amb.down[v] & b_mask == 1 << v]
    for i, x in enumerate(mins):
        for y in mins[i + 1:]:
            if not b_mask >> amb.meet[x][y] & 1:
                return "B is not a filter"
    c_mask = a_mask & b_mask
    if amb.mask_of(w.C) != c_mask:
        return "C is not A ∩ B"
    if not c_mask:
        return "overlap is empty"
    if not _is_chain_mask(amb, c_mask):
        return "overlap is not a chain"
    if a_mask | b_mask != amb.full_mask:
        return "A ∪ B does not cover the lattice"
    if require_proper and not w.proper:
        return "witness is not proper"
    return None


# -- gluing over a chain ---------------------------------------------------

def _fresh(label, taken):
    while label in taken:
        label = f"{label}'"
    return label


def glue_over_chain(lower, upper, iso, max_synth=16):
    """Glue `upper` on top of `lower`, identifying a filter-chain of the
    lower piece with an ideal-chain of the upper one.

    `iso` maps lower-piece labels onto upper-piece labels and must be an
    order isomorphism between the two chains.  Coordinates are reused
    when they still draw planarly (they do whenever the pieces come from
    a recorded cut), otherwise an embedding is synthesized.
    """
    la, lb = lower.lattice, upper.lattice
    if not iso:
        raise NotAChain("the overlap chain must be nonempty")
    try:
        dom = [la.id_of(x) for x in iso]
        img = [lb.id_of(iso[x]) for x in iso]
    except KeyError as exc:
        raise NotIso(f"isomorphism mentions unknown element {exc.args[0]!r}")
    if len(set(img)) != len(img):
        raise NotIso("isomorphism is not injective")
    roles = classify_subset(la, dom)
    if not roles.is_filter:
        raise NotAFilter("domain of the overlap is not a filter of the lower piece")
    if not roles.is_chain:
        raise NotAChain("domain of the overlap is not a chain")
    roles = classify_subset(lb, img)
    if not roles.is_ideal:
        raise NotAnIdeal("image of the overlap is not an ideal of the upper piece")
    if not roles.is_chain:
        raise NotAChain("image of the overlap is not a chain")
    dom_sorted = sorted(dom, key=lambda v: la.height[v])
    img_sorted = sorted(img, key=lambda v: lb.height[v])
    for d, i in zip(dom_sorted, img_sorted):
        if lb.id_of(iso[la.names[d]]) != i:
            raise NotIso("mapping does not respect the chain order")

    inv = {iso[x]: x for x in iso}
    taken = set(la.names)
    rename = {}
    for name in lb.names:
        if name in inv:
            rename[name] = inv[name]
        else:
            fresh = _fresh(name, taken)
            rename[name] = fresh
            taken.add(fresh)
    covers = [(la.names[a], la.names[b]) for a, b in la.covers]
    covers += [(rename[lb.names[a]], rename[lb.names[b]]) for a, b in lb.covers]
    elements = list(la.names) + [rename[n] for n in lb.names if n not in inv]
    glued = Lattice(covers, elements=elements)

    unrename = {fresh: orig for orig, fresh in rename.items()}
    shifts = [Fraction(0),
              lower.xcoord[dom_sorted[0]] - upper.xcoord[img_sorted[0]],
              max(lower.xcoord) + 1 - min(upper.xcoord),
              min(lower.xcoord) - 1 - max(upper.xcoord)]
    for shift in shifts:
        xs = []
        for name in elements:
            if name in la.index:
                xs.append(lower.xcoord[la.id_of(name)])
            else:
                xs.append(upper.xcoord[lb.id_of(unrename[name])] + shift)
        cand = Diagram(glued, xs)
        if validate_diagram(cand) is None:
            return cand
    if glued.n <= max_synth:
        found = synthesize_embedding(glued, max_size=max_synth)
        if found is not None:
            return found
    raise EmbeddingFailed(
        f"no planar drawing found for the {glued.n}-element gluing")


# -- one-step extensions ----------------------------------------------------

def find_extension_sites(diag):
    """Boundary triples a < b < c with a meet-irreducible and c
    join-irreducible; left-boundary sites bottom-up, then right."""
    lat = diag.lattice
    sites = []
    for side, chain in (("left", diag.boundary.left_chain),
                        ("right", diag.boundary.right_chain)):
        for a, b, c in zip(chain, chain[1:], chain[2:]):
            if (irreducibility(lat, a).meet_irreducible
                    and irreducibility(lat, c).join_irreducible):
                sites.append((a, b, c, side))
    sites.sort(key=lambda s: (s[3] != "left", diag.lattice.height[s[0]]))
    return sites


def _fresh_t(lat):
    k = 1
    while f"t{k}" in lat.index:
        k += 1
    return f"t{k}"


def one_step_extension(diag, site):
    """Add a fresh doubly irreducible t with a < t < c beside the boundary.

    t goes strictly outside the drawing on the chosen side, one level above
    a; the new edges hug the boundary, so the drawing stays planar.
    """
    if site not in find_extension_sites(diag):
        raise InvalidSite(f"{site!r} is not an extension site")
    a, b, c, side = site
    lat = diag.lattice
    t = _fresh_t(lat)
    if side == "left":
        x = min(diag.xcoord) - 1
    else:
        x = max(diag.xcoord) + 1
    covers = [(lat.names[u], lat.names[v]) for u, v in lat.covers]
    covers += [(lat.names[a], t), (t, lat.names[c])]
    extended = Lattice(covers, elements=list(lat.names) + [t])
    after = Diagram(extended, list(diag.xcoord) + [x])
    step = ExtensionStep(lat.names[a], lat.names[b], lat.names[c], side,
                         t, diag, after)
    return after, step


def restrict_gluing(witness, step):
    """Drop t from a witness for the extended lattice, giving one for the
    original: A' = A - {t}, B' = B - {t}, C' = C - {t}."""
    after = step.after.lattice
    before = step.before.lattice
    if witness.ambient is not after and witness.ambient != after:
        raise ImproperWitness("witness does not live on the extended lattice")
    t = after.id_of(step.t)
    if witness.C == {t}:
        raise ChainWasSingletonT(
            "overlap chain is exactly {t}; no valid witness can do that")
    reason = validate_witness(witness)
    if reason is not None:
        raise ImproperWitness(reason)
    restricted = GluingWitness(
        before,
        frozenset(before.id_of(after.names[v]) for v in witness.A if v != t),
        frozenset(before.id_of(after.names[v]) for v in witness.B if v != t),
        frozenset(before.id_of(after.names[v]) for v in witness.C if v != t))
    reason = validate_witness(restricted)
    if reason is not None:
        raise AssertionFailed(f"restricted witness is invalid: {reason}")
    return restricted


def rectangularize(diag, max_rounds=None):
    """Extend at the first available site until the lattice is rectangular.

    Deterministic: left sites bottom-up are tried before right ones.  The
    round bound defaults to n²; hitting it, or running out of sites, means
    the input was not a slim planar semimodular lattice and is reported.
    """
    if max_rounds is None:
        max_rounds = diag.lattice.n ** 2
    steps = []
    cur = diag
    while not is_rectangular(cur):
        if len(steps) >= max_rounds:
            raise IterationBoundExceeded(
                f"still not rectangular after {max_rounds} extensions")
        sites = find_extension_sites(cur)
        if not sites:
            raise StuckNotRectangular(
                f"no extension site on a non-rectangular "
                f"{cur.lattice.n}-element lattice")
        cur, step = one_step_extension(cur, sites[0])
        steps.append(step)
    return cur, steps


# -- the rectangular cut -----------------------------------------------------

def decompose_at(diag, x, mode):
    """Cut a slim rectangular diagram at x on its upper boundary.

    Left mode cuts along [0, x] and [x ∧ u_r, 1]; mirrored mode swaps the
    corner roles.  Every claim made for the cut is asserted, not assumed.
    """
    if not is_rectangular(diag):
        raise BadX("lattice is not rectangular")
    if not is_slim(diag):
        raise BadX("lattice is not slim")
    lat = diag.lattice
    b = diag.boundary
    if mode == "left":
        boundary, corner, opposite = upper_left_boundary(diag), b.u_l, b.u_r
    elif mode == "mirrored":
        boundary, corner, opposite = upper_right_boundary(diag), b.u_r, b.u_l
    else:
        raise BadX(f"unknown mode {mode!r}")
    if x not in boundary or x in (corner, lat.top):
        raise BadX(f"{lat.names[x]!r} is not a cuttable boundary element")

    pivot = lat.meet[x][opposite]
    if pivot == lat.bottom:
        raise AssertionFailed("the cut pivot fell to the bottom element")
    if lat.join[corner][pivot] != x:
        raise AssertionFailed("x is not the join of the corner and the pivot")
    chain_ids = sorted(iter_bits(lat.up[pivot] & lat.down[x]))
    if not classify_subset(lat, chain_ids).is_chain:
        raise AssertionFailed("the overlap [pivot, x] is not a chain")

    bottom_part = subdiagram(diag, iter_bits(lat.down[x]))
    top_part = subdiagram(diag, iter_bits(lat.up[pivot]))
    if bottom_part.lattice.n + top_part.lattice.n - len(chain_ids) != lat.n:
        raise AssertionFailed("the two parts do not cover the lattice")
    for part in (bottom_part, top_part):
        if not is_rectangular(part):
            raise AssertionFailed("a part of the cut is not rectangular")
        if not is_slim(part):
            raise AssertionFailed("a part of the cut is not slim")
    return DecompositionCut(x, pivot, diag, bottom_part, top_part,
                            tuple(chain_ids), mode)


def choose_x(diag):
    """The canonical cut element: the boundary cover of whichever corner is
    not a dual atom (left corner preferred)."""
    if is_patch(diag):
        raise IsPatch("patch lattices admit no cut")
    if not is_rectangular(diag):
        raise NotRectangular("choose_x requires a rectangular lattice")
    lat = diag.lattice
    b = diag.boundary
    if not lat.is_cover(b.u_l, lat.top):
        chain = diag.boundary.left_chain
        return chain[chain.index(b.u_l) + 1], "left"
    if not lat.is_cover(b.u_r, lat.top):
        chain = diag.boundary.right_chain
        return chain[chain.index(b.u_r) + 1], "mirrored"
    raise IsPatch("both corners are dual atoms")


def witness_from_cut(cut):
    """The (ideal, filter, chain) witness a cut induces on its ambient."""
    lat = cut.ambient.lattice
    return GluingWitness(lat,
                         frozenset(iter_bits(lat.down[cut.x])),
                         frozenset(iter_bits(lat.up[cut.pivot])),
                         frozenset(cut.chain))
