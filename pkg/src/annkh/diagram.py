"""Annular link diagrams.

A diagram lives in an annulus with a marked vertical arc (the seam) from the
inner boundary to the outer one.  It is recorded combinatorially:

* crossings, each a 4-tuple of edge labels listed counterclockwise starting
  from the incoming under-strand, so the under-strand occupies slots 0 and 2
  and the over-strand occupies slots 1 and 3;
* signed seam-crossing counts per edge (omitted means zero);
* crossingless free circles, each reduced to its signed seam count;
* optional direction pins for closed components that never pass under
  anything (their orientation is not forced by the crossing data).

Orientations of all other components are recovered from the crossing data:
every under-strand enters at slot 0 and exits at slot 2, which directs the
whole component once any of its edges is directed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class AdtError(Exception):
    """Base class for diagram text and validation failures."""


class ParseError(AdtError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(AdtError):
    pass


# Strand passage inside one crossing: under-strand pairs slots 0,2 and
# over-strand pairs slots 1,3.
_THROUGH = {0: 2, 2: 0, 1: 3, 3: 1}


@dataclass(frozen=True)
class AnnularDiagram:
    """Immutable annular diagram.

    crossings    tuple of (e0, e1, e2, e3) edge labels per crossing
    seam         sorted tuple of (edge, signed count), zero counts dropped
    free_circles tuple of signed seam counts of crossingless circles
    opins        sorted tuple of (u, v) direction pins: the strand runs
                 along edge u into a crossing and leaves on edge v
    """

    crossings: Tuple[Tuple[int, int, int, int], ...] = ()
    seam: Tuple[Tuple[int, int], ...] = ()
    free_circles: Tuple[int, ...] = ()
    opins: Tuple[Tuple[int, int], ...] = ()

    # -- cheap derived views -------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def edges(self) -> Tuple[int, ...]:
        seen = sorted({e for quad in self.crossings for e in quad})
        return tuple(seen)

    def seam_of(self, edge: int) -> int:
        for e, k in self.seam:
            if e == edge:
                return k
        return 0

    def seam_dict(self) -> Dict[int, int]:
        return dict(self.seam)

    def wrap_upper_bound(self) -> int:
        """Total unsigned seam crossings: an upper bound for the wrapping
        number of the underlying link."""
        total = sum(abs(k) for _, k in self.seam)
        total += sum(abs(k) for k in self.free_circles)
        return total

    # -- text form -----------------------------------------------------------

    def serialize(self) -> str:
        lines = ["adt v1"]
        for quad in sorted(self.crossings):
            lines.append("X: %d %d %d %d" % quad)
        for u, v in sorted(self.opins):
            lines.append(f"O: {u} {v}")
        if self.seam:
            body = ", ".join(f"{e} {k}" for e, k in self.seam)
            lines.append(f"seam: {body}")
        for k in self.free_circles:
            lines.append(f"circle: {k}")
        return "\n".join(lines) + "\n"

    def canonical_hash(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()


def make_diagram(
    crossings: Iterable[Sequence[int]] = (),
    seam: Optional[Dict[int, int]] = None,
    free_circles: Iterable[int] = (),
    opins: Iterable[Sequence[int]] = (),
) -> AnnularDiagram:
    """Normalize raw data into an AnnularDiagram and validate it."""
    quads = tuple(tuple(int(x) for x in quad) for quad in crossings)
    for quad in quads:
        if len(quad) != 4:
            raise ValidationError(f"crossing {quad} needs exactly 4 edges")
    seam = seam or {}
    pairs = tuple(sorted((int(e), int(k)) for e, k in seam.items() if int(k) != 0))
    d = AnnularDiagram(
        crossings=quads,
        seam=pairs,
        free_circles=tuple(int(k) for k in free_circles),
        opins=tuple(sorted((int(u), int(v)) for u, v in opins)),
    )
    analyze(d)  # validates; raises ValidationError on bad data
    return d


def parse(text: str) -> AnnularDiagram:
    """Parse the diagram text format.

    Lines: ``adt v1`` header (optional), ``X: e0 e1 e2 e3``, ``O: u v``,
    ``seam: e1 k1, e2 k2, ...``, ``circle: k``.  ``#`` starts a comment.
    """
    crossings: List[Tuple[int, ...]] = []
    seam: Dict[int, int] = {}
    circles: List[int] = []
    opins: List[Tuple[int, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("adt"):
            version = line[3:].strip()
            if version and version != "v1":
                raise ParseError(f"unsupported format version {version!r}", ln)
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: values', got {line!r}", ln)
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        rest = rest.strip()
        try:
            if key == "x":
                vals = tuple(int(t) for t in rest.split())
                if len(vals) != 4:
                    raise ParseError("crossing needs exactly 4 edge labels", ln)
                crossings.append(vals)
            elif key == "o":
                vals = tuple(int(t) for t in rest.split())
                if len(vals) != 2:
                    raise ParseError("direction pin needs exactly 2 edge labels", ln)
                opins.append((vals[0], vals[1]))
            elif key == "seam":
                for item in rest.split(","):
                    item = item.strip()
                    if not item:
                        continue
                    parts = item.split()
                    if len(parts) != 2:
                        raise ParseError(f"seam entry {item!r} needs 'edge count'", ln)
                    e, k = int(parts[0]), int(parts[1])
                    seam[e] = seam.get(e, 0) + k
            elif key == "circle":
                circles.append(int(rest))
            else:
                raise ParseError(f"unknown key {key!r}", ln)
        except ValueError as exc:
            raise ParseError(f"bad integer: {exc}", ln) from None
    try:
        return make_diagram(crossings, seam, circles, opins)
    except ValidationError as exc:
        raise ValidationError(str(exc)) from None


# -- orientation and component analysis ---------------------------------------


@dataclass(frozen=True)
class Analysis:
    """Derived orientation data for a diagram.

    components    tuple of frozensets of edges, then () placeholders for
                  free circles; sorted by smallest edge label
    comp_of_edge  edge -> component index
    signs         crossing index -> +1 or -1
    head          edge -> (crossing index, slot) where the directed edge
                  arrives; the other occurrence is its tail
    windings      component index -> signed seam total
    """

    components: Tuple[frozenset, ...]
    comp_of_edge: Dict[int, int]
    signs: Tuple[int, ...]
    head: Dict[int, Tuple[int, int]]
    windings: Tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def writhe(self) -> int:
        return sum(self.signs)


def _occurrences(d: AnnularDiagram) -> Dict[int, List[Tuple[int, int]]]:
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for c, quad in enumerate(d.crossings):
        for s, e in enumerate(quad):
            occ.setdefault(e, []).append((c, s))
    for e, places in occ.items():
        if len(places) != 2:
            raise ValidationError(
                f"edge {e} appears {len(places)} times; every edge must "
                f"appear exactly twice among crossing slots"
            )
    return occ


@lru_cache(maxsize=None)
def analyze(d: AnnularDiagram) -> Analysis:
    occ = _occurrences(d)
    seam = d.seam_dict()
    for e in seam:
        if e not in occ:
            raise ValidationError(f"seam references unknown edge {e}")
    for u, v in d.opins:
        if u not in occ or v not in occ:
            raise ValidationError(f"direction pin ({u}, {v}) references unknown edge")

    # Trace strands.  A position is an occurrence (crossing, slot) meaning
    # "standing on that edge at that crossing end".  Crossing passage maps
    # slot s to _THROUGH[s]; then we walk the new edge to its far end.
    visited = set()
    cycles: List[List[Tuple[int, int]]] = []

    def other_end(pos: Tuple[int, int]) -> Tuple[int, int]:
        e = d.crossings[pos[0]][pos[1]]
        a, b = occ[e]
        return b if pos == a else a

    for e0 in sorted(occ):
        start = occ[e0][0]
        if start in visited:
            continue
        cycle = []
        pos = start
        while True:
            # pos: arriving at crossing pos[0] on edge at slot pos[1]
            cycle.append(pos)
            visited.add(pos)
            out = (pos[0], _THROUGH[pos[1]])
            cycle.append(out)  # departing via slot out[1]
            visited.add(out)
            pos = other_end(out)
            if pos == start:
                break
        cycles.append(cycle)

    # Decide each cycle's direction.  In the traced direction, even indices
    # of the cycle are arrivals and odd indices departures.  The under-strand
    # must arrive at slot 0 and depart at slot 2.
    head: Dict[int, Tuple[int, int]] = {}
    comps_edges: List[frozenset] = []
    for cycle in cycles:
        agree = disagree = 0
        for idx, (c, s) in enumerate(cycle):
            arriving = idx % 2 == 0
            if s == 0:
                agree += arriving
                disagree += not arriving
            elif s == 2:
                agree += not arriving
                disagree += arriving
        if agree and disagree:
            edges_here = sorted({d.crossings[c][s] for c, s in cycle})
            raise ValidationError(
                f"inconsistent under-strand directions on component with "
                f"edges {edges_here}"
            )
        forward = cycle
        if disagree:
            forward = list(reversed(cycle))  # arrivals/departures swap parity
            # reversal keeps even=arrival because cycle length is even
        if not agree and not disagree:
            # over-only component: no crossing forces a direction
            forward = _orient_free(d, cycle, occ)
        for idx in range(0, len(forward), 2):
            c, s = forward[idx]
            head[d.crossings[c][s]] = (c, s)
        comps_edges.append(frozenset(d.crossings[c][s] for c, s in cycle))

    comps_sorted = sorted(comps_edges, key=min)
    comp_of_edge = {e: i for i, es in enumerate(comps_sorted) for e in es}
    components = tuple(comps_sorted) + tuple(frozenset() for _ in d.free_circles)

    signs = []
    for c, quad in enumerate(d.crossings):
        over_in_3 = head[quad[3]] == (c, 3)
        over_in_1 = head[quad[1]] == (c, 1)
        if over_in_3 == over_in_1:
            raise ValidationError(f"crossing {c} has no consistent over direction")
        signs.append(1 if over_in_3 else -1)

    windings = []
    for i, comp in enumerate(components):
        if comp:
            w = 0
            for e in comp:
                k = seam.get(e, 0)
                # count is stored for the edge directed tail -> head; the
                # stored sign is already relative to that direction
                w += k
            windings.append(w)
        else:
            windings.append(d.free_circles[i - len(comps_sorted)])

    return Analysis(
        components=components,
        comp_of_edge=comp_of_edge,
        signs=tuple(signs),
        head=head,
        windings=tuple(windings),
    )


def _orient_free(d, cycle, occ):
    """Direct an over-only cycle: honor a direction pin if one applies,
    else make the smallest occurrence an arrival."""
    rev = list(reversed(cycle))
    for u, v in d.opins:
        for variant in (cycle, rev):
            for idx in range(0, len(variant), 2):
                c, s = variant[idx]
                out = variant[(idx + 1) % len(variant)]
                if d.crossings[c][s] == u and d.crossings[out[0]][out[1]] == v:
                    return variant
        edges_here = {d.crossings[c][s] for c, s in cycle}
        if u in edges_here and v in edges_here:
            raise ValidationError(
                f"direction pin ({u}, {v}) does not match any crossing passage"
            )
    lo = min(cycle)
    for variant in (cycle, rev):
        for idx in range(0, len(variant), 2):
            if variant[idx] == lo:
                return variant
    raise AssertionError("unreachable")


# -- component-level quantities ------------------------------------------------


def components(d: AnnularDiagram) -> Tuple[frozenset, ...]:
    return analyze(d).components


def n_components(d: AnnularDiagram) -> int:
    return analyze(d).n_components


def winding_number(d: AnnularDiagram, comp: int) -> int:
    return analyze(d).windings[comp]


def crossing_signs(d: AnnularDiagram) -> Tuple[int, ...]:
    return analyze(d).signs


def writhe(d: AnnularDiagram) -> int:
    return analyze(d).writhe()


def crossing_strand_components(d: AnnularDiagram, c: int) -> Tuple[int, int]:
    """(under component, over component) of crossing c."""
    a = analyze(d)
    quad = d.crossings[c]
    return a.comp_of_edge[quad[0]], a.comp_of_edge[quad[1]]


def linking_number(d: AnnularDiagram, ca: int, cb: int) -> int:
    """Linking number of two distinct components: half the signed count of
    crossings between them."""
    if ca == cb:
        raise ValueError("linking number needs two distinct components")
    a = analyze(d)
    total = 0
    for c in range(d.n_crossings):
        u, o = crossing_strand_components(d, c)
        if {u, o} == {ca, cb}:
            total += a.signs[c]
    if total % 2:
        raise AssertionError("odd crossing sign total between two components")
    return total // 2


def total_pairwise_linking(d: AnnularDiagram) -> int:
    """Sum of 2*lk(ca, cb) over unordered component pairs: the signed count
    of crossings between distinct components."""
    total = 0
    for c in range(d.n_crossings):
        u, o = crossing_strand_components(d, c)
        if u != o:
            total += analyze(d).signs[c]
    return total
