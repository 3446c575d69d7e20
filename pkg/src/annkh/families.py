"""Builders for annular link diagrams: braids, balanced tangles, annular
closure, blackboard-framed cabling with tangle inserts, doubling, unions,
connected sums, and sublink extraction.

Tangles carry direction hints: for some edge labels, the crossing occurrence
where the strand arrives (its head) or departs (its tail).  Constructions can
glue strands against their drawn direction (a doubling clasp reverses one
parallel copy), so assembly re-anchors every crossing quad after choosing
each component's direction: the hint on the smallest edge label of a strand
cycle wins, which lets deliberate reversals lose to the primary strand.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diagram import (
    AnnularDiagram,
    ValidationError,
    analyze,
    make_diagram,
)

Occ = Tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class Tangle:
    """Balanced tangle: equal numbers of bottom and top boundary points.

    quads   crossings over open strands, slots counterclockwise from the
            incoming under-strand (per the drawn strand directions)
    bottom  edge label at each bottom boundary position, left to right
    top     edge label at each top boundary position, left to right
    hints   ((label, crossing, slot, is_head), ...) drawn strand directions
    closed  number of crossingless circles carried inside the tangle
    """

    quads: Tuple[Tuple[int, int, int, int], ...]
    bottom: Tuple[int, ...]
    top: Tuple[int, ...]
    hints: Tuple[Tuple[int, int, int, bool], ...] = ()
    closed: int = 0

    @property
    def strand_count(self) -> int:
        return len(self.bottom)

    def labels(self) -> set:
        out = {e for q in self.quads for e in q}
        out.update(self.bottom)
        out.update(self.top)
        return out


def identity_tangle(m: int) -> Tangle:
    labels = tuple(range(1, m + 1))
    return Tangle(quads=(), bottom=labels, top=labels)


def braid_tangle(word: Sequence[int], strands: int) -> Tangle:
    """Tangle of a braid word, letters read bottom to top.

    Letter +i crosses the strand at position i over the strand at position
    i+1 (positions 1-based); -i crosses it under.
    """
    if strands < 1:
        raise ValidationError("braid needs at least one strand")
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    quads: List[Tuple[int, int, int, int]] = []
    hints: List[Tuple[int, int, int, bool]] = []
    for letter in word:
        i = abs(letter)
        if not 1 <= i <= strands - 1:
            raise ValidationError(f"braid letter {letter} out of range")
        a = i - 1
        n_l, n_r = nxt, nxt + 1
        nxt += 2
        c = len(quads)
        if letter > 0:
            quads.append((cur[a + 1], n_r, n_l, cur[a]))
            hints += [
                (cur[a + 1], c, 0, True),
                (n_r, c, 1, False),
                (n_l, c, 2, False),
                (cur[a], c, 3, True),
            ]
        else:
            quads.append((cur[a], cur[a + 1], n_r, n_l))
            hints += [
                (cur[a], c, 0, True),
                (cur[a + 1], c, 1, True),
                (n_r, c, 2, False),
                (n_l, c, 3, False),
            ]
        cur[a], cur[a + 1] = n_l, n_r
    return Tangle(
        quads=tuple(quads),
        bottom=tuple(range(1, strands + 1)),
        top=tuple(cur),
        hints=tuple(hints),
    )


def tangle_J(mirror: bool = False) -> Tangle:
    """Two-strand clasp tangle: a cap joining the two bottom points and a
    cup joining the two top points, clasped through each other.  Its annular
    closure is a single winding-zero unknotted component that cannot be
    pushed off a meridional disk: the wrap-2 building block for necklace
    chains and for doubling patterns.

    Edge runs: cap 1-2-3 (bottom left to bottom right), cup 6-5-4 (top
    right to top left).
    """
    if not mirror:
        quads = ((1, 5, 2, 4), (6, 2, 5, 3))
        hints = (
            (1, 0, 0, True),
            (5, 0, 1, False),
            (2, 0, 2, False),
            (4, 0, 3, False),
            (6, 1, 0, True),
            (3, 1, 3, False),
        )
    else:
        quads = ((5, 2, 4, 1), (2, 5, 3, 6))
        hints = (
            (5, 0, 0, True),
            (2, 0, 1, False),
            (4, 0, 2, False),
            (1, 0, 3, True),
            (3, 1, 2, False),
            (6, 1, 3, True),
        )
    return Tangle(quads=quads, bottom=(1, 3), top=(4, 6), hints=hints)


def _shift_tangle(t: Tangle, offset: int) -> Tangle:
    return Tangle(
        quads=tuple(tuple(e + offset for e in q) for q in t.quads),
        bottom=tuple(e + offset for e in t.bottom),
        top=tuple(e + offset for e in t.top),
        hints=tuple((e + offset, c, s, h) for e, c, s, h in t.hints),
        closed=t.closed,
    )


class _DSU:
    def __init__(self):
        self.parent: Dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent
        while p.setdefault(x, x) != x:
            p[x] = p.setdefault(p[x], p[x])
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _fuse_hints(
    dsu: _DSU, labels: Iterable[int], hints: Dict[int, Tuple[Occ, bool]]
) -> Dict[int, Tuple[Occ, bool]]:
    """Collapse drawn-direction hints onto class representatives; within a
    class the smallest hinted member speaks for the whole edge."""
    by_rep: Dict[int, List[Tuple[int, Tuple[Occ, bool]]]] = {}
    for lab in labels:
        if lab in hints:
            by_rep.setdefault(dsu.find(lab), []).append((lab, hints[lab]))
    return {rep: min(items)[1] for rep, items in by_rep.items()}


def _assemble(
    quads: List[List[int]],
    hints: Dict[int, Tuple[Occ, bool]],
    seam_assumed: Dict[int, int],
    chains: List[Tuple[int, Occ, Occ, int]],
    free: List[int],
    phantom: Iterable[int] = (),
) -> AnnularDiagram:
    """Re-anchor raw quads and build the diagram.

    Strand cycles are traced with the direction-free slot pairing
    (0 <-> 2, 1 <-> 3); per cycle the direction comes from the hint on the
    smallest hinted edge, falling back to making the smallest occurrence an
    arrival.  Quads whose under-strand runs opposite the chosen direction
    are rotated by two slots; seam counts on flipped edges are negated;
    chain seam totals (label, from-occ, to-occ, signed sum walked from-to)
    resolve by which end turned out to be the head.  Components that never
    pass under anything get an explicit direction pin.  ``phantom`` labels
    mark edges whose hint records a deliberate reversal (doubling turnbacks)
    and must not steer their cycle.
    """
    occs: Dict[int, List[Occ]] = {}
    for c, q in enumerate(quads):
        for s, e in enumerate(q):
            occs.setdefault(e, []).append((c, s))
    for e, os_ in occs.items():
        if len(os_) != 2:
            raise ValidationError(f"assembly left edge {e} with {len(os_)} ends").with_traceback(None)

    through = {0: 2, 2: 0, 1: 3, 3: 1}
    phantom = set(phantom)

    def other(pos: Occ) -> Occ:
        e = quads[pos[0]][pos[1]]
        a, b = occs[e]
        return b if pos == a else a

    visited = set()
    cycles: List[List[Occ]] = []
    for e0 in sorted(occs):
        start = occs[e0][0]
        if start in visited:
            continue
        cyc = []
        pos = start
        while True:
            cyc.append(pos)
            visited.add(pos)
            out = (pos[0], through[pos[1]])
            cyc.append(out)
            visited.add(out)
            pos = other(out)
            if pos == start:
                break
        cycles.append(cyc)

    head: Dict[int, Occ] = {}
    opins: List[Tuple[int, int]] = []
    for cyc in cycles:
        labels_here = sorted({quads[c][s] for c, s in cyc})
        chosen = None
        for lab in labels_here:
            if lab in hints and lab not in phantom:
                (occ, is_head) = hints[lab]
                arrives = {cyc[i] for i in range(0, len(cyc), 2)}
                forward_ok = (occ in arrives) == is_head
                chosen = cyc if forward_ok else list(reversed(cyc))
                break
        if chosen is None:
            lo = min(cyc)
            idx = cyc.index(lo)
            chosen = cyc if idx % 2 == 0 else list(reversed(cyc))
        for i in range(0, len(chosen), 2):
            c, s = chosen[i]
            head[quads[c][s]] = (c, s)
        if all(s in (1, 3) for _, s in cyc):
            c, s = chosen[0]
            c2, s2 = chosen[1]
            opins.append((quads[c][s], quads[c2][s2]))

    out_quads = []
    for c, q in enumerate(quads):
        if head[q[0]] == (c, 0):
            out_quads.append(tuple(q))
        else:
            out_quads.append((q[2], q[3], q[0], q[1]))

    seam: Dict[int, int] = {}
    for lab, cnt in seam_assumed.items():
        if cnt == 0:
            continue
        occ, is_head = hints[lab]
        flipped = (head[lab] == occ) != is_head
        seam[lab] = seam.get(lab, 0) + (-cnt if flipped else cnt)
    for lab, occ_x, occ_y, s_xy in chains:
        if s_xy == 0:
            continue
        cnt = s_xy if head[lab] == occ_y else -s_xy
        seam[lab] = seam.get(lab, 0) + cnt

    return make_diagram(out_quads, seam, free, opins)


def _hint_dict(t: Tangle) -> Dict[int, Tuple[Occ, bool]]:
    out: Dict[int, Tuple[Occ, bool]] = {}
    for e, c, s, h in t.hints:
        out.setdefault(e, ((c, s), h))
    return out


def stack(t1: Tangle, t2: Tangle) -> Tangle:
    """Glue the bottom of t1 to the top of t2 (t1 sits above t2)."""
    if t1.strand_count != t2.strand_count:
        raise ValidationError(
            f"cannot stack tangles with {t1.strand_count} and "
            f"{t2.strand_count} strands"
        )
    off = max(t1.labels(), default=0)
    t2 = _shift_tangle(t2, off)
    dsu = _DSU()
    for a, b in zip(t1.bottom, t2.top):
        dsu.union(a, b)
    all_labels = t1.labels() | t2.labels()
    quads = [
        tuple(dsu.find(e) for e in q) for q in t1.quads
    ] + [tuple(dsu.find(e) for e in q) for q in t2.quads]
    shift = len(t1.quads)
    hints = {}
    for e, c, s, h in t1.hints:
        hints.setdefault(e, ((c, s), h))
    for e, c, s, h in t2.hints:
        hints.setdefault(e, ((c + shift, s), h))
    fused = _fuse_hints(dsu, all_labels, hints)
    # classes that lost every crossing and boundary occurrence became
    # closed circles inside the composite
    used = {e for q in quads for e in q}
    top = tuple(dsu.find(e) for e in t1.top)
    bottom = tuple(dsu.find(e) for e in t2.bottom)
    used.update(top)
    used.update(bottom)
    reps = {dsu.find(e) for e in all_labels}
    new_closed = len([r for r in reps if r not in used])
    out_hints = tuple(
        (e, c, s, h) for e, ((c, s), h) in sorted(fused.items())
    )
    return Tangle(
        quads=tuple(quads),
        bottom=bottom,
        top=top,
        hints=out_hints,
        closed=t1.closed + t2.closed + new_closed,
    )


def stack_many(ts: Sequence[Tangle]) -> Tangle:
    out = ts[0]
    for t in ts[1:]:
        out = stack(out, t)
    return out


def annular_closure(t: Tangle, arc_weight: int = 1) -> AnnularDiagram:
    """Join each top boundary point to the matching bottom point by an arc
    running around the annulus; every arc crosses the seam ``arc_weight``
    times (1 for genuine annular closure, 0 for closure inside a disk)."""
    dsu = _DSU()
    for a, b in zip(t.top, t.bottom):
        dsu.union(a, b)
    all_labels = t.labels()
    quads = [list(dsu.find(e) for e in q) for q in t.quads]
    hints = _fuse_hints(dsu, all_labels, _hint_dict(t))

    # per-label ends: crossing occurrences plus boundary positions
    cr_occs: Dict[int, List[Occ]] = {}
    for c, q in enumerate(t.quads):
        for s, e in enumerate(q):
            cr_occs.setdefault(e, []).append((c, s))
    positions: Dict[int, List[Tuple[int, int]]] = {}
    at_pos: Dict[Tuple[int, int], int] = {}
    for i, e in enumerate(t.bottom):
        positions.setdefault(e, []).append((0, i))
        at_pos[(0, i)] = e
    for i, e in enumerate(t.top):
        positions.setdefault(e, []).append((1, i))
        at_pos[(1, i)] = e

    def walk(label: int, end) -> Tuple[int, object]:
        """From one end of a label, cross arcs until hitting a crossing
        occurrence (returns it) or looping back; accumulates signed arc
        passages (+w entering an arc from its top side)."""
        total = 0
        cur, pos = label, end
        while True:
            side, i = pos
            total += arc_weight if side == 1 else -arc_weight
            nxt_pos = (1 - side, i)
            nxt = at_pos[nxt_pos]
            ends = [p for p in positions.get(nxt, []) if p != nxt_pos]
            occ_ends = cr_occs.get(nxt, [])
            if cur == label and nxt == label and not occ_ends:
                return total, None  # single-label free loop
            if occ_ends and len(positions.get(nxt, [])) == 1:
                return total, occ_ends[0]
            if not ends:
                return total, None  # looped back through boundary only
            cur, pos = nxt, ends[0]

    chains: List[Tuple[int, Occ, Occ, int]] = []
    free: List[int] = [0] * t.closed
    done = set()
    for rep in sorted({dsu.find(e) for e in all_labels}):
        if rep in done:
            continue
        members = sorted(e for e in all_labels if dsu.find(e) == rep)
        done.add(rep)
        n_occ = sum(len(cr_occs.get(e, [])) for e in members)
        boundary = [e for e in members if e in positions]
        if n_occ == 0:
            if not boundary:
                continue  # untouched closed circle (already counted)
            lab = members[0]
            ends = sorted(positions[lab])
            total, _ = walk(lab, ends[1])
            free.append(total)
        elif n_occ == 2:
            terms = [
                (e, occ) for e in members for occ in cr_occs.get(e, [])
            ]
            terms.sort(key=lambda x: x[1])
            (ea, occ_a), (eb, occ_b) = terms
            if ea in positions or eb in positions:
                # chain passes arcs; walk from occ_a's label outward
                start_ends = positions.get(ea, [])
                if start_ends:
                    s_xy, occ_end = walk(ea, start_ends[0])
                    assert occ_end is not None
                    chains.append((rep, occ_a, occ_end, s_xy))
                # labels fully interior need no chain entry
        else:
            raise ValidationError(
                f"closure leaves strand class {members} with {n_occ} ends"
            )

    seam_assumed: Dict[int, int] = {}
    return _assemble(quads, hints, seam_assumed, chains, free)


# -- diagram-level constructions -----------------------------------------------


def essential_unknot() -> AnnularDiagram:
    return make_diagram(free_circles=[1])


def trivial_unknot() -> AnnularDiagram:
    return make_diagram(free_circles=[0])


def necklace(n: int) -> AnnularDiagram:
    """Chain of n winding-zero unknots clasped in a cycle around the axis:
    the annular closure of n stacked copies of the clasp tangle."""
    if n < 1:
        raise ValidationError("necklace needs n >= 1")
    return annular_closure(stack_many([tangle_J()] * n))


def multi_cable(
    d: AnnularDiagram,
    plan: Dict[int, Tuple[int, Optional[Tangle]]],
) -> AnnularDiagram:
    """Blackboard-framed parallel: component c of the plan is replaced by
    plan[c][0] parallel copies with plan[c][1] (an equal-strand tangle)
    spliced into a seam-free arc.  Components absent from the plan are kept
    as single strands.  Self-crossings of a component with multiplicity p
    against one with multiplicity q become p*q crossing grids.
    """
    a = analyze(d)
    n_comp = a.n_components
    for comp in plan:
        if not 0 <= comp < n_comp:
            raise ValidationError(f"component {comp} not in diagram")
    mult = {c: plan.get(c, (1, None))[0] for c in range(n_comp)}
    inserts = {c: plan.get(c, (1, None))[1] for c in range(n_comp)}
    for c, (m, ins) in plan.items():
        if m < 1:
            raise ValidationError("multiplicity must be >= 1")
        if ins is not None and ins.strand_count != m:
            raise ValidationError(
                f"insert has {ins.strand_count} strands, component cabled by {m}"
            )

    seam = d.seam_dict()
    nxt = 1
    copies: Dict[int, List[int]] = {}
    for e in d.edges():
        m = mult[a.comp_of_edge[e]]
        copies[e] = list(range(nxt, nxt + m))
        nxt += m

    quads: List[List[int]] = []
    roles: Dict[int, List[Tuple[Occ, bool]]] = {}
    seam_assumed: Dict[int, int] = {}

    def emit(q: Tuple[int, int, int, int], heads: Tuple[bool, bool, bool, bool]):
        c = len(quads)
        quads.append(list(q))
        for s, (e, h) in enumerate(zip(q, heads)):
            roles.setdefault(e, []).append(((c, s), h))

    for e in d.edges():
        cnt = seam.get(e, 0)
        if cnt:
            for lab in copies[e]:
                seam_assumed[lab] = cnt

    for c, quad in enumerate(d.crossings):
        u_in, x1, u_out, x3 = quad
        sign = a.signs[c]
        o_in, o_out = (x3, x1) if sign > 0 else (x1, x3)
        p = mult[a.comp_of_edge[u_in]]
        q = mult[a.comp_of_edge[o_in]]
        ui, uo = copies[u_in], copies[u_out]
        oi, oo = copies[o_in], copies[o_out]
        # interior grid segments
        w = [[0] * max(q - 1, 0) for _ in range(p)]
        z = [[0] * max(p - 1, 0) for _ in range(q)]
        for i in range(p):
            for jj in range(q - 1):
                w[i][jj] = nxt
                nxt += 1
        for j in range(q):
            for ii in range(p - 1):
                z[j][ii] = nxt
                nxt += 1
        # under copy i occupies which end of ui depends on whether the same
        # original edge feeds both strands (kink loop): ui/uo then share
        # labels and the grid still consumes each copy label exactly twice.
        for i in range(p):
            for j in range(q):
                if sign > 0:
                    uin = ui[i] if j == q - 1 else w[i][j]
                    uout = uo[i] if j == 0 else w[i][j - 1]
                    oin = oi[j] if i == 0 else z[j][i - 1]
                    oout = oo[j] if i == p - 1 else z[j][i]
                    emit((uin, oout, uout, oin), (True, False, False, True))
                else:
                    uin = ui[i] if j == 0 else w[i][j - 1]
                    uout = uo[i] if j == q - 1 else w[i][j]
                    oin = oi[j] if i == p - 1 else z[j][i]
                    oout = oo[j] if i == 0 else z[j][i - 1]
                    emit((uin, oin, uout, oout), (True, True, False, False))

    # splice inserts into crossing-borne components
    dsu = _DSU()
    extra_quads: List[Tuple[List[int], Dict[int, Tuple[Occ, bool]]]] = []
    phantom: List[int] = []
    splice_crossings: Dict[int, List[int]] = {}
    all_extra_hints: Dict[int, Tuple[Occ, bool]] = {}
    for comp in sorted(plan):
        ins = inserts[comp]
        if ins is None:
            continue
        comp_edges = sorted(a.components[comp]) if a.components[comp] else []
        if not comp_edges:
            continue  # free-circle components handled below
        cut = next((e for e in comp_edges if seam.get(e, 0) == 0), None)
        if cut is None:
            raise ValidationError(
                f"component {comp} has no seam-free arc to splice into"
            )
        m = mult[comp]
        ins = _shift_tangle(ins, nxt)
        nxt = max(ins.labels(), default=nxt) + 1
        base = len(quads)
        for qi, q in enumerate(ins.quads):
            quads.append(list(q))
        splice_crossings[comp] = list(range(base, len(quads)))
        for e, c_, s_, h_ in ins.hints:
            all_extra_hints.setdefault(e, ((c_ + base, s_), h_))
            phantom.append(e)
        for i in range(m):
            lab = copies[cut][i]
            ends = roles[lab]
            head_occ = next(occ for occ, h in ends if h)
            new_head = nxt
            nxt += 1
            c_, s_ = head_occ
            quads[c_][s_] = new_head
            roles.setdefault(new_head, []).append((head_occ, True))
            dsu.union(lab, ins.bottom[i])
            dsu.union(new_head, ins.top[i])

    hints: Dict[int, Tuple[Occ, bool]] = {}
    for e, entries in roles.items():
        hints.setdefault(e, entries[0])
    hints.update({e: v for e, v in all_extra_hints.items() if e not in hints})

    all_labels = {e for q in quads for e in q}
    fused = _fuse_hints(dsu, all_labels, hints)
    quads2 = [[dsu.find(e) for e in q] for q in quads]
    seam2 = {}
    for lab, cnt in seam_assumed.items():
        rep = dsu.find(lab)
        seam2[rep] = seam2.get(rep, 0) + cnt
    phantom_reps = {dsu.find(e) for e in phantom}

    free: List[int] = []
    closed_extra = sum(inserts[c].closed for c in plan if inserts[c] is not None
                       and a.components[c])
    free += [0] * closed_extra
    reps_used = {e for q in quads2 for e in q}
    for rep in sorted({dsu.find(e) for e in all_labels}):
        if rep not in reps_used:
            free.append(0)  # splice closed a loop away from the seam

    result = _assemble(quads2, fused, seam2, [], free, phantom=phantom_reps)

    # free-circle components cable into closures of their inserts
    pieces = [result]
    n_strand_comps = sum(1 for comp in a.components if comp)
    for f_idx, cnt in enumerate(d.free_circles):
        comp = n_strand_comps + f_idx
        m = mult[comp]
        ins = inserts[comp]
        if m == 1 and ins is None:
            pieces.append(make_diagram(free_circles=[cnt]))
        else:
            tang = ins if ins is not None else identity_tangle(m)
            pieces.append(annular_closure(tang, arc_weight=cnt))
    out = pieces[0]
    for p_ in pieces[1:]:
        out = disjoint_union(out, p_, annular=True)
    return out


def cable(
    d: AnnularDiagram, comp: int, m: int, insert: Optional[Tangle] = None
) -> AnnularDiagram:
    return multi_cable(d, {comp: (m, insert)})


def cable_all(
    d: AnnularDiagram, m: int, inserts: Optional[Sequence[Optional[Tangle]]] = None
) -> AnnularDiagram:
    n = analyze(d).n_components
    inserts = inserts or [None] * n
    plan = {c: (m, inserts[c] if c < len(inserts) else None) for c in range(n)}
    return multi_cable(d, plan)


def whitehead_double(d: AnnularDiagram, comp: int = 0, clasp_sign: int = -1) -> AnnularDiagram:
    """Untwisted blackboard double: 2-parallel of the component with a clasp
    tangle spliced in whose turnbacks fuse the copies into one strand.  The
    two new clasp crossings come out with the requested sign."""
    for mirror in (False, True):
        out = _whitehead_attempt(d, comp, mirror)
        if out is not None and _clasp_signs_match(d, comp, out, clasp_sign):
            return out
    raise ValidationError("no clasp orientation realizes the requested sign")


def _whitehead_attempt(d, comp, mirror):
    try:
        return cable(d, comp, 2, insert=tangle_J(mirror=mirror))
    except ValidationError:
        return None


def _clasp_signs_match(d, comp, doubled, clasp_sign) -> bool:
    signs = analyze(doubled).signs
    # clasp crossings are the last two emitted before any free-circle pieces
    base = sum(
        (2 if ci == comp else 1) * (2 if cj == comp else 1)
        for ci, cj in (
            _crossing_comps(d, c) for c in range(d.n_crossings)
        )
    )
    return all(s == clasp_sign for s in signs[base : base + 2])


def _crossing_comps(d, c):
    a = analyze(d)
    q = d.crossings[c]
    return a.comp_of_edge[q[0]], a.comp_of_edge[q[1]]


def disjoint_union(
    d1: AnnularDiagram, d2: AnnularDiagram, annular: bool = True
) -> AnnularDiagram:
    """Place d2 next to d1.  With annular placement both factors keep their
    seam data (concentric stacking); local placement requires d2 to be
    seam-free (it sits inside a disk)."""
    if not annular:
        if d2.seam or any(d2.free_circles):
            raise ValidationError("local placement needs a seam-free summand")
    off = max(d1.edges(), default=0)
    quads = list(d1.crossings) + [tuple(e + off for e in q) for q in d2.crossings]
    seam = d1.seam_dict()
    for e, k in d2.seam:
        seam[e + off] = k
    free = list(d1.free_circles) + list(d2.free_circles)
    opins = list(d1.opins) + [(u + off, v + off) for u, v in d2.opins]
    return make_diagram(quads, seam, free, opins)


def connected_sum(
    d1: AnnularDiagram,
    d2: AnnularDiagram,
    arc1: Optional[int] = None,
    arc2: Optional[int] = None,
) -> AnnularDiagram:
    """Band-join a strand of d1 to a strand of the seam-free summand d2,
    respecting orientations; the band runs inside a disk away from the seam."""
    if d2.seam:
        raise ValidationError("second summand must be seam-free")
    if not d2.crossings:
        if not d2.free_circles:
            raise ValidationError("empty second summand")
        rest = list(d2.free_circles[1:])
        return make_diagram(
            d1.crossings, d1.seam_dict(), list(d1.free_circles) + rest, d1.opins
        )
    if not d1.crossings:
        if not d1.free_circles:
            raise ValidationError("empty first summand")
        k = d1.free_circles[0]
        a2 = arc2 if arc2 is not None else min(d2.edges())
        seam = d2.seam_dict()
        seam[a2] = seam.get(a2, 0) + k
        free = list(d1.free_circles[1:]) + list(d2.free_circles)
        return make_diagram(d2.crossings, seam, free, d2.opins)

    a1 = arc1 if arc1 is not None else min(d1.edges())
    a2 = arc2 if arc2 is not None else min(d2.edges())
    if a1 not in d1.edges() or a2 not in d2.edges():
        raise ValidationError("chosen arcs not present")
    off = max(d1.edges())
    an1, an2 = analyze(d1), analyze(d2)
    h1 = an1.head[a1]
    h2 = an2.head[a2]
    h2 = (h2[0] + len(d1.crossings), h2[1])
    quads = [list(q) for q in d1.crossings] + [
        [e + off for e in q] for q in d2.crossings
    ]
    fresh = off + max(d2.edges()) + 1
    quads[h1[0]][h1[1]] = fresh  # d1 strand now flows into the band
    quads[h2[0]][h2[1]] = a1  # band returns into d2's strand head
    for c in range(len(d1.crossings), len(quads)):
        for s in range(4):
            if quads[c][s] == a2 + off:
                quads[c][s] = fresh
    seam = d1.seam_dict()
    free = list(d1.free_circles) + list(d2.free_circles)
    opins = [p for p in d1.opins if a1 not in p]
    opins += [
        (u + off, v + off)
        for u, v in d2.opins
        if a2 not in (u, v)
    ]
    return make_diagram(quads, seam, free, opins)


def sublink(d: AnnularDiagram, keep: Iterable[int]) -> AnnularDiagram:
    """Diagram of the sublink spanned by the kept components.  Crossings
    with a deleted strand dissolve: the surviving strand's edges fuse and
    their seam counts add."""
    a = analyze(d)
    keep = set(keep)
    for c in keep:
        if not 0 <= c < a.n_components:
            raise ValidationError(f"component {c} not in diagram")
    n_strand = sum(1 for comp in a.components if comp)
    seam = d.seam_dict()
    dsu = _DSU()
    kept_quads: List[Tuple[int, ...]] = []
    over_pins: Dict[int, Tuple[int, int]] = {}
    for c, quad in enumerate(d.crossings):
        cu, co = a.comp_of_edge[quad[0]], a.comp_of_edge[quad[1]]
        if cu in keep and co in keep:
            kept_quads.append(quad)
            o_in = quad[3] if a.signs[c] > 0 else quad[1]
            o_out = quad[1] if a.signs[c] > 0 else quad[3]
            over_pins.setdefault(co, (o_in, o_out))
        elif cu in keep:
            dsu.union(quad[0], quad[2])
        elif co in keep:
            dsu.union(quad[1], quad[3])
    quads = [tuple(dsu.find(e) for e in q) for q in kept_quads]
    new_seam: Dict[int, int] = {}
    kept_edges = {e for comp in keep if comp < n_strand for e in a.components[comp]}
    for e in kept_edges:
        k = seam.get(e, 0)
        if k:
            rep = dsu.find(e)
            new_seam[rep] = new_seam.get(rep, 0) + k
    used = {e for q in quads for e in q}
    free: List[int] = []
    for comp in sorted(keep):
        if comp < n_strand:
            reps = {dsu.find(e) for e in a.components[comp]}
            for rep in sorted(reps):
                if rep not in used:
                    free.append(new_seam.pop(rep, 0))
        else:
            free.append(d.free_circles[comp - n_strand])
    # direction pins for surviving components that never pass under
    opins = []
    under_comps = {a.comp_of_edge[q[0]] for q in kept_quads}
    for comp, (u, v) in sorted(over_pins.items()):
        if comp not in under_comps:
            ru, rv = dsu.find(u), dsu.find(v)
            if ru != rv and ru in used and rv in used:
                opins.append((ru, rv))
    return make_diagram(quads, new_seam, free, opins)


def split_union(d: AnnularDiagram, groups: Sequence[Iterable[int]]) -> AnnularDiagram:
    """Disjoint (concentrically split) union of the sublinks spanned by each
    group of components."""
    parts = [sublink(d, g) for g in groups]
    out = parts[0]
    for p in parts[1:]:
        out = disjoint_union(out, p, annular=True)
    return out


# -- family driver --------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Parameters for the built-in link families.

    family   necklace | cable | whitehead | disjoint | consum
    n        necklace length / doubling depth / first size
    m        cable multiplicity / summand size
    braids   per-component braid words for cable inserts
    clasp    doubling clasp sign
    """

    family: str
    n: int = 1
    m: int = 1
    braids: Tuple[Tuple[int, ...], ...] = ()
    clasp: int = -1


def build_family(spec: FamilySpec) -> AnnularDiagram:
    fam = spec.family
    if fam == "necklace":
        return necklace(spec.n)
    if fam == "cable":
        base = necklace(spec.n)
        return _cable_with_braids(base, spec.m, spec.braids)
    if fam == "whitehead":
        out = necklace(1)
        for _ in range(spec.n):
            out = whitehead_double(out, 0, spec.clasp)
        if spec.m > 1 or spec.braids:
            out = _cable_with_braids(out, spec.m, spec.braids)
        return out
    if fam == "disjoint":
        return disjoint_union(necklace(spec.n), necklace(spec.m), annular=True)
    if fam == "consum":
        local = annular_closure(braid_tangle([1] * spec.m, 2), arc_weight=0)
        return connected_sum(necklace(spec.n), local)
    raise ValidationError(f"unknown family {fam!r}")


def _cable_with_braids(base, m, braids):
    n = analyze(base).n_components
    inserts = []
    for c in range(n):
        word = braids[c] if c < len(braids) else ()
        inserts.append(braid_tangle(word, m) if word else None)
    return cable_all(base, m, inserts)
