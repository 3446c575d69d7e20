"""Annular Khovanov homology dimensions, the maximal-nonzero-annular-degree
scan, link-splitting spectral sequence pages, and the split-union rank
inequality.

The annular differential is the k-preserving piece d0, so the complex
splits into k-sectors and homology is computed blockwise per (j, k).  The
splitting spectral sequence filters the perturbed annular complex
(d0 + b0) by g2 = j - n; pages come from a filtration-compatible column
reduction whose pairings carry the page drop of each cancelling pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .chain import ACComplex, build_complex, normalize_weights
from .cube import STATE_CAP, CapExceeded, census_sweep, smooth
from .diagram import AnnularDiagram, analyze, linking_number
from .families import split_union
from .linalg import ColumnsGF2, ColumnsRat, gf2_rank, rat_rank, reduce_columns

Dims = Dict[Tuple[int, int, int], int]


def _block_rank(cx: ACComplex, srcs: List[int], tgts: List[int]) -> int:
    pos = {g: p for p, g in enumerate(tgts)}
    if cx.field == "gf2":
        rows = []
        for g in srcs:
            r = 0
            for h, v in cx.d0(g):
                if v & 1:
                    r ^= 1 << pos[h]
            rows.append(r)
        return gf2_rank(rows)
    rows = []
    for g in srcs:
        r: Dict[int, Fraction] = {}
        for h, v in cx.d0(g):
            r[pos[h]] = r.get(pos[h], Fraction(0)) + v
        rows.append({c: v for c, v in r.items() if v})
    return rat_rank(rows)


def homology_dims(
    d: AnnularDiagram,
    field: str = "gf2",
    cap: int = STATE_CAP,
    sign_mode: int = 0,
) -> Dims:
    """Graded dimensions {(i,j,k): dim} of annular Khovanov homology."""
    cx = build_complex(d, field, None, cap, sign_mode)
    return complex_homology_dims(cx)


def complex_homology_dims(cx: ACComplex) -> Dims:
    blocks: Dict[Tuple[int, int], Dict[int, List[int]]] = {}
    for g, (i, j, k) in enumerate(cx.grading):
        blocks.setdefault((j, k), {}).setdefault(i, []).append(g)
    dims: Dims = {}
    for (j, k), by_i in blocks.items():
        ranks: Dict[int, int] = {}
        for i, srcs in by_i.items():
            tgts = by_i.get(i + 1, [])
            ranks[i] = _block_rank(cx, srcs, tgts) if tgts else 0
        for i, gens_i in by_i.items():
            dim = len(gens_i) - ranks.get(i, 0) - ranks.get(i - 1, 0)
            if dim:
                dims[(i, j, k)] = dim
    return dims


def max_nonzero_k(dims: Dims) -> int:
    if not dims:
        raise ValueError("zero homology has no maximal annular degree")
    return max(k for (_i, _j, k) in dims)


def max_nonzero_k_scan(
    d: AnnularDiagram, field: str = "gf2", cap: int = STATE_CAP, workers: int = 1
) -> int:
    """Largest k with nonzero homology, found by computing one k-sector at
    a time from the top; only states with enough essential circles are ever
    resolved, which keeps the top sector cheap on large diagrams."""
    n = d.n_crossings
    if n > cap:
        raise CapExceeded(n, cap)
    bound = d.wrap_upper_bound()
    if n == 0:
        ess = sum(1 for c in d.free_circles if c % 2)
        return ess
    sweep = census_sweep(d, cap, workers)
    k = bound
    while k >= -bound:
        if _sector_nonzero(d, k, field, sweep):
            return k
        k -= 2
    raise AssertionError("homology of a nonempty complex cannot vanish")


def _sector_nonzero(d: AnnularDiagram, k: int, field: str, sweep: bytes) -> bool:
    n = d.n_crossings
    need = abs(k)
    states = []
    for s in range(1 << n):
        e = sweep[2 * s + 1]
        if e >= need and (e + k) % 2 == 0:
            states.append(s)
    if not states:
        return False
    res = {s: smooth(d, s) for s in states}
    state_set = set(states)
    a = analyze(d)
    n_minus, n_plus = a.n_minus(), a.n_plus()

    gens: List[Tuple[int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    grading: List[Tuple[int, int]] = []
    for s in states:
        r = res[s]
        ess = [z for z in range(r.n_circles) if r.essential[z]]
        triv = [z for z in range(r.n_circles) if not r.essential[z]]
        p = (len(ess) + k) // 2
        if not 0 <= p <= len(ess):
            continue
        w = s.bit_count()
        i = w - n_minus
        for plus_ess in combinations(ess, p):
            base = 0
            for z in plus_ess:
                base |= 1 << z
            for tbits in range(1 << len(triv)):
                lab = base
                for t_i, z in enumerate(triv):
                    if tbits >> t_i & 1:
                        lab |= 1 << z
                plus = lab.bit_count()
                j = (2 * plus - r.n_circles) + w + n_plus - 2 * n_minus
                index[(s, lab)] = len(gens)
                gens.append((s, lab))
                grading.append((i, j))
    if not gens:
        return False

    from .chain import transport_labels, _sign_below

    def d0_entries(g: int) -> List[Tuple[int, int]]:
        s, lab = gens[g]
        out = []
        for c in range(n):
            if s >> c & 1:
                continue
            s2 = s | (1 << c)
            if s2 not in state_set:
                continue
            for tlab in transport_labels(res[s], res[s2], lab):
                h = index.get((s2, tlab))
                if h is not None:
                    out.append((h, _sign_below(s, c)))
        return out

    blocks: Dict[int, Dict[int, List[int]]] = {}
    for g, (i, j) in enumerate(grading):
        blocks.setdefault(j, {}).setdefault(i, []).append(g)
    for j, by_i in blocks.items():
        ranks: Dict[int, int] = {}
        for i, srcs in by_i.items():
            tgts = by_i.get(i + 1, [])
            if not tgts:
                ranks[i] = 0
                continue
            pos = {h: p for p, h in enumerate(tgts)}
            if field == "gf2":
                rows = []
                for g in srcs:
                    rrow = 0
                    for h, _sg in d0_entries(g):
                        rrow ^= 1 << pos[h]
                    rows.append(rrow)
                ranks[i] = gf2_rank(rows)
            else:
                rows = []
                for g in srcs:
                    rd: Dict[int, Fraction] = {}
                    for h, sg in d0_entries(g):
                        rd[pos[h]] = rd.get(pos[h], Fraction(0)) + sg
                    rows.append({c: v for c, v in rd.items() if v})
                ranks[i] = rat_rank(rows)
        for i, gens_i in by_i.items():
            if len(gens_i) - ranks.get(i, 0) - ranks.get(i - 1, 0) > 0:
                return True
    return False


# -- link-splitting spectral sequence ------------------------------------------


@dataclass
class SSReport:
    """Page dimension tables for the splitting spectral sequence.

    pages[r] maps (l, g2, k) to the page-r dimension (r from 1 through the
    stabilization page); einf is the limit table; b_value is the largest
    page drop among cancelling pairs (0 when E1 already equals Einf).
    """

    pages: Dict[int, Dict[Tuple[int, int, int], int]]
    einf: Dict[Tuple[int, int, int], int]
    stabilized_at: int
    b_value: int

    def einf_lk(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for (l, _g2, k), v in self.einf.items():
            out[(l, k)] = out.get((l, k), 0) + v
        return out

    def page_lgk(self, r: int) -> Dict[Tuple[int, int, int], int]:
        r = min(r, self.stabilized_at)
        return self.pages[r]


def ss_pages(
    d: AnnularDiagram,
    weights,
    field: str = "rat",
    cap: int = STATE_CAP,
    sign_mode: int = 0,
) -> SSReport:
    cx = build_complex(d, field, weights, cap, sign_mode)
    sectors: Dict[int, List[int]] = {}
    for g, (_i, _j, k) in enumerate(cx.grading):
        sectors.setdefault(k, []).append(g)

    slot: List[Tuple[int, int, int]] = []
    for g, (i, j, k) in enumerate(cx.grading):
        slot.append((i - j, j - cx.n, k))

    alive_min: Dict[int, int] = {}  # generator -> dies entering page delta+1
    pairs_delta: List[int] = []
    for k, gen_list in sorted(sectors.items()):
        order = sorted(gen_list, key=lambda g: (slot[g][1], -slot[g][0], g))
        pos = {g: p for p, g in enumerate(order)}
        if field == "gf2":
            cols: List[int] = []
            for g in order:
                cmask = 0
                for h, v in cx.apply(("d0", "b0"), g).items():
                    assert pos[h] < pos[g]
                    cmask |= 1 << pos[h]
                cols.append(cmask)
            container = ColumnsGF2(cols)
        else:
            colsd: List[Dict[int, Fraction]] = []
            for g in order:
                cd: Dict[int, Fraction] = {}
                for h, v in cx.apply(("d0", "b0"), g).items():
                    assert pos[h] < pos[g]
                    cd[pos[h]] = v
                colsd.append(cd)
            container = ColumnsRat(colsd)
        lowinv = reduce_columns(container)
        paired = {}
        for row, col in lowinv.items():
            g_row, g_col = order[row], order[col]
            delta = (slot[g_col][1] - slot[g_row][1]) // 2
            paired[g_row] = delta
            paired[g_col] = delta
            pairs_delta.append(delta)
        for g in gen_list:
            alive_min[g] = paired.get(g, -1)  # -1 marks survives forever

    b_value = max((dd for dd in pairs_delta if dd >= 1), default=0)
    stabilized_at = b_value + 1 if b_value else 1

    def table(r: int) -> Dict[Tuple[int, int, int], int]:
        out: Dict[Tuple[int, int, int], int] = {}
        for g, dd in alive_min.items():
            if dd == -1 or dd >= r:
                key = slot[g]
                out[key] = out.get(key, 0) + 1
        return out

    einf: Dict[Tuple[int, int, int], int] = {}
    for g, dd in alive_min.items():
        if dd == -1:
            key = slot[g]
            einf[key] = einf.get(key, 0) + 1
    pages = {r: table(r) for r in range(1, stabilized_at + 1)}
    return SSReport(pages=pages, einf=einf, stabilized_at=stabilized_at, b_value=b_value)


# -- rank inequality ------------------------------------------------------------


SHIFT_CONVENTION = (
    "distinct unordered pairs c<d across different split classes; "
    "t = sum of 2*lk(c,d); compare rank(L) at (l,k) with rank(split) at (l+t,k)"
)


@dataclass
class RankReport:
    t: int
    groups: Tuple[Tuple[int, ...], ...]
    rows: List[Tuple[int, int, int, int, bool]]  # (l, k, lhs, rhs, ok)
    passed: bool
    convention: str = SHIFT_CONVENTION


def weight_groups(d: AnnularDiagram, weights) -> List[List[int]]:
    """Partition components by equal weight (insertion order by smallest
    component index)."""
    nc = analyze(d).n_components
    if weights is None:
        return [[c] for c in range(nc)]
    vec = normalize_weights(d, weights, "rat")
    by_w: Dict[Fraction, List[int]] = {}
    for c, w in enumerate(vec):
        by_w.setdefault(w, []).append(c)
    return [grp for _w, grp in sorted(by_w.items(), key=lambda kv: kv[1][0])]


def split_shift(d: AnnularDiagram, groups: Sequence[Sequence[int]]) -> int:
    gid = {}
    for gi, grp in enumerate(groups):
        for c in grp:
            gid[c] = gi
    t = 0
    nc = analyze(d).n_components
    for c in range(nc):
        for e in range(c + 1, nc):
            if gid[c] != gid[e]:
                t += 2 * linking_number(d, c, e)
    return t


def collapse_lk(dims: Dims) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    for (i, j, k), v in dims.items():
        key = (i - j, k)
        out[key] = out.get(key, 0) + v
    return out


def rank_inequality_check(
    d: AnnularDiagram,
    weights=None,
    groups: Optional[Sequence[Sequence[int]]] = None,
    field: str = "rat",
    cap: int = STATE_CAP,
) -> RankReport:
    """Check rank AKh^{l,k}(L) >= rank AKh^{l+t,k}(split union) at every
    slot, t the total split-pair linking shift."""
    if groups is None:
        groups = weight_groups(d, weights)
    groups = [list(g) for g in groups]
    t = split_shift(d, groups)
    big = collapse_lk(homology_dims(d, field, cap))
    small = collapse_lk(homology_dims(split_union(d, groups), field, cap))
    rows = []
    passed = True
    slots = {(l, k) for (l, k) in big} | {(l - t, k) for (l, k) in small}
    for l, k in sorted(slots):
        lhs = big.get((l, k), 0)
        rhs = small.get((l + t, k), 0)
        ok = lhs >= rhs
        passed = passed and ok
        rows.append((l, k, lhs, rhs, ok))
    return RankReport(
        t=t,
        groups=tuple(tuple(g) for g in groups),
        rows=rows,
        passed=passed,
    )


def match_up_to_l_shift(
    a: Dict[Tuple[int, int], int], b: Dict[Tuple[int, int], int]
) -> Optional[int]:
    """Shift s with a[(l,k)] == b[(l+s,k)] everywhere, if one exists."""
    if not a and not b:
        return 0
    if not a or not b or sum(a.values()) != sum(b.values()):
        return None
    la, ka = min(a)
    candidates = {lb - la for (lb, kb) in b if kb == ka}
    for s in sorted(candidates):
        if all(b.get((l + s, k), 0) == v for (l, k), v in a.items()) and all(
            a.get((l - s, k), 0) == v for (l, k), v in b.items()
        ):
            return s
    return None


def tensor_dims(a: Dims, b: Dims) -> Dims:
    """Graded tensor product of dimension tables (disjoint unions over a
    field satisfy a Kunneth formula with no correction terms)."""
    out: Dims = {}
    for (i1, j1, k1), v1 in a.items():
        for (i2, j2, k2), v2 in b.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + v1 * v2
    return out
