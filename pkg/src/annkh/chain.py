"""Annular Khovanov chain complexes.

Generators are (state, labeling) pairs: a resolution state bitmask plus a
bitmask labeling each resolution circle with plus (bit set) or minus.
Gradings per generator: homological i = |s| - n_minus, quantum
j = (#plus - #minus) + |s| + n_plus - 2 n_minus, annular k summing labels
over essential circles only, with l = i - j and the filtration coordinate
g2 = j - n.

The differential splits by annular degree: d0 preserves k, dm drops it
by 2.  The link-splitting perturbation reverses cube edges with coefficient
eta_c * (w_over - w_under) and the forward edge's cube sign; its pieces b0
and bm again have k-degree 0 and -2.  Square-zero for the perturbed
complex needs, at every state and resolution circle, the incidence-weighted
sum of the coefficients of the bands footed on that circle to vanish; over
GF(2) that holds automatically, over the rationals a scaling eta is solved
for (and the identity scaling is kept whenever it already works).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .cube import STATE_CAP, CapExceeded, Resolution, band_feet, smooth
from .diagram import AnnularDiagram, ValidationError, analyze
from .linalg import rat_nullspace


class WeightError(ValueError):
    """Weight vector unusable for the requested field or splitting."""


MERGE = {
    (1, 1): 1,
    (1, 0): 0,
    (0, 1): 0,
    (0, 0): None,  # kills the generator
}


def transport_labels(src: Resolution, dst: Resolution, labels: int) -> List[int]:
    """Push a labeling through the band surgery relating two resolutions
    that differ at one crossing.  Returns the target label masks (one for a
    merge, two or one for a split, none when the merge kills)."""
    ns, nd = src.n_circles, dst.n_circles
    if nd == ns - 1:
        feeds: List[List[int]] = [[] for _ in range(nd)]
        for i_src, circ in enumerate(src.circles):
            j = dst.circle_of[next(iter(circ))]
            feeds[j].append(i_src)
        out = 0
        merged = None
        for j, srcs in enumerate(feeds):
            if len(srcs) == 1:
                if labels >> srcs[0] & 1:
                    out |= 1 << j
            else:
                a, b = (labels >> srcs[0] & 1, labels >> srcs[1] & 1)
                v = MERGE[(a, b)]
                if v is None:
                    return []
                out |= v << j
                merged = j
        assert merged is not None
        return [out]
    if nd == ns + 1:
        base = 0
        children: Dict[int, List[int]] = {}
        for j, circ in enumerate(dst.circles):
            i_src = src.circle_of[next(iter(circ))]
            children.setdefault(i_src, []).append(j)
        split_src = next(i for i, ch in children.items() if len(ch) == 2)
        for i_src, ch in children.items():
            if len(ch) == 1 and labels >> i_src & 1:
                base |= 1 << ch[0]
        c1, c2 = children[split_src]
        if labels >> split_src & 1:
            return [base | 1 << c1, base | 1 << c2]
        return [base]
    raise AssertionError("band surgery must change the circle count by one")


def _sign_below(state: int, c: int) -> int:
    return -1 if (state & ((1 << c) - 1)).bit_count() & 1 else 1

def _sign_above(state: int, c: int, n: int) -> int:
    return -1 if (state >> (c + 1)).bit_count() & 1 else 1


@dataclass
class ACComplex:
    """Chain complex bundle for one diagram over one field."""

    diagram: AnnularDiagram
    field: str
    gens: List[Tuple[int, int]]
    index: Dict[Tuple[int, int], int]
    grading: List[Tuple[int, int, int]]  # (i, j, k) per generator
    resolutions: Dict[int, Resolution]
    bs_coeff: List[object]  # per crossing, field element
    sign_mode: int = 0

    @property
    def n(self) -> int:
        return self.diagram.n_crossings

    def _sign(self, state: int, c: int) -> int:
        if self.sign_mode == 0:
            return _sign_below(state, c)
        return _sign_above(state, c, self.n)

    def _terms(self, g: int, reverse: bool, dk: int) -> List[Tuple[int, object]]:
        state, labels = self.gens[g]
        _, _, k0 = self.grading[g]
        out: List[Tuple[int, object]] = []
        for c in range(self.n):
            bit = state >> c & 1
            if reverse != (bit == 1):
                continue
            tgt_state = state ^ (1 << c)
            low = tgt_state if reverse else state
            sgn = self._sign(low, c)
            coeff: object = sgn
            if reverse:
                v = self.bs_coeff[c]
                if not v:
                    continue
                coeff = v if self.field == "gf2" else v * sgn
            elif self.field == "gf2":
                coeff = 1
            for tlab in transport_labels(
                self.resolutions[state], self.resolutions[tgt_state], labels
            ):
                h = self.index[(tgt_state, tlab)]
                dkh = self.grading[h][2] - k0
                assert dkh in (0, -2), "annular degree of a band map"
                if dkh == dk:
                    out.append((h, coeff))
        return out

    def d0(self, g: int) -> List[Tuple[int, object]]:
        return self._terms(g, False, 0)

    def dm(self, g: int) -> List[Tuple[int, object]]:
        return self._terms(g, False, -2)

    def b0(self, g: int) -> List[Tuple[int, object]]:
        return self._terms(g, True, 0)

    def bm(self, g: int) -> List[Tuple[int, object]]:
        return self._terms(g, True, -2)

    def apply(self, parts: Sequence[str], g: int) -> Dict[int, object]:
        """Sum of the named differential pieces on one generator, as a
        sparse vector; gf2 coefficients are reduced mod 2."""
        acc: Dict[int, object] = {}
        for p in parts:
            for h, v in getattr(self, p)(g):
                acc[h] = acc.get(h, 0) + v
        if self.field == "gf2":
            acc = {h: v & 1 for h, v in acc.items()}
        return {h: v for h, v in acc.items() if v}


def normalize_weights(
    d: AnnularDiagram, weights, field: str
) -> Optional[List[object]]:
    """Per-component weight list in the field, or None for no perturbation."""
    if weights is None:
        return None
    nc = analyze(d).n_components
    if isinstance(weights, dict):
        vec = [Fraction(weights.get(c, 0)) for c in range(nc)]
    else:
        vec = [Fraction(w) for w in weights]
        if len(vec) != nc:
            raise WeightError(
                f"{len(vec)} weights for {nc} components"
            )
    if field == "gf2":
        out = []
        for w in vec:
            if w.denominator % 2 == 0:
                raise WeightError(f"weight {w} has no value over GF(2)")
            out.append(w.numerator % 2)
        return out
    return vec


def _band_incidences(d: AnnularDiagram, cap: int):
    """For every state and resolution circle, the crossings whose reverting
    band has a foot on that circle (with multiplicity)."""
    n = d.n_crossings
    if n > cap:
        raise CapExceeded(n, cap)
    for state in range(1 << n):
        res = smooth(d, state)
        inc: Dict[int, Dict[int, int]] = {}
        for c in range(n):
            f1, f2 = band_feet(d, res, c, state >> c & 1)
            for z in (f1, f2):
                inc.setdefault(z, {})
                inc[z][c] = inc[z].get(c, 0) + 1
        yield state, inc


def solve_eta(d: AnnularDiagram, cap: int = STATE_CAP) -> List[Fraction]:
    """Per-crossing scaling making the rational perturbation square to
    zero for every weight vector.  Identity scaling is used when it already
    satisfies the constraints; otherwise a nullspace element supported on
    every inter-component crossing is chosen deterministically."""
    a = analyze(d)
    n = d.n_crossings
    mixed = [
        c
        for c in range(n)
        if a.comp_of_edge[d.crossings[c][0]] != a.comp_of_edge[d.crossings[c][1]]
    ]
    eta = [Fraction(1)] * n
    if not mixed:
        return eta
    pos = {c: i for i, c in enumerate(mixed)}
    rows = set()
    for _state, inc in _band_incidences(d, cap):
        for _z, cs in inc.items():
            syms = set()
            for c in cs:
                if c in pos:
                    q = d.crossings[c]
                    syms.add(a.comp_of_edge[q[1]])
                    syms.add(a.comp_of_edge[q[0]])
            for alpha in syms:
                row = [0] * len(mixed)
                for c, mult in cs.items():
                    if c not in pos:
                        continue
                    q = d.crossings[c]
                    o_comp = a.comp_of_edge[q[1]]
                    u_comp = a.comp_of_edge[q[0]]
                    coef = (1 if o_comp == alpha else 0) - (
                        1 if u_comp == alpha else 0
                    )
                    row[pos[c]] += mult * coef
                if any(row):
                    rows.add(tuple(row))
    if not rows:
        return eta
    if all(sum(r) == 0 for r in rows):
        return eta
    basis = rat_nullspace(
        [dict(enumerate(map(Fraction, r))) for r in sorted(rows)], len(mixed)
    )
    if not basis:
        raise WeightError("no nonzero perturbation scaling exists")
    for t in range(1, 64):
        cand = [
            sum(Fraction(t) ** i * b[j] for i, b in enumerate(basis))
            for j in range(len(mixed))
        ]
        if all(cand):
            for c, v in zip(mixed, cand):
                eta[c] = v
            return eta
    # accept zeros on some crossings; splitting certificates check support
    cand = basis[0]
    for c, v in zip(mixed, cand):
        eta[c] = v
    return eta


def build_complex(
    d: AnnularDiagram,
    field: str = "gf2",
    weights=None,
    cap: int = STATE_CAP,
    sign_mode: int = 0,
) -> ACComplex:
    if field not in ("gf2", "rat"):
        raise ValidationError(f"unknown field {field!r}")
    n = d.n_crossings
    if n > cap:
        raise CapExceeded(n, cap)
    if n > 16:
        raise CapExceeded(n, 16)
    a = analyze(d)
    n_minus = a.n_minus()
    n_plus = a.n_plus()
    resolutions = {s: smooth(d, s) for s in range(1 << n)}
    gens: List[Tuple[int, int]] = []
    grading: List[Tuple[int, int, int]] = []
    index: Dict[Tuple[int, int], int] = {}
    for state in range(1 << n):
        res = resolutions[state]
        nc = res.n_circles
        w = state.bit_count()
        i = w - n_minus
        for labels in range(1 << nc):
            plus = labels.bit_count()
            j = (2 * plus - nc) + w + n_plus - 2 * n_minus
            k = 0
            for z in range(nc):
                if res.essential[z]:
                    k += 1 if labels >> z & 1 else -1
            index[(state, labels)] = len(gens)
            gens.append((state, labels))
            grading.append((i, j, k))

    wvec = normalize_weights(d, weights, field)
    bs: List[object] = [0] * n
    if wvec is not None and any(wvec):
        if field == "rat":
            eta = solve_eta(d, cap)
        for c in range(n):
            q = d.crossings[c]
            wo = wvec[a.comp_of_edge[q[1]]]
            wu = wvec[a.comp_of_edge[q[0]]]
            if field == "gf2":
                bs[c] = (wo + wu) & 1
            else:
                bs[c] = eta[c] * (wo - wu)
    return ACComplex(
        diagram=d,
        field=field,
        gens=gens,
        index=index,
        grading=grading,
        resolutions=resolutions,
        bs_coeff=bs,
        sign_mode=sign_mode,
    )
