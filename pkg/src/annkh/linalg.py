"""Exact linear algebra over GF(2) (packed bit-rows) and the rationals
(sparse Fraction rows), plus the filtered column reduction whose pairings
give spectral sequence page dimensions."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple


def gf2_rank(rows: Sequence[int]) -> int:
    pivots: List[int] = []
    rank = 0
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def rat_rank(rows: Sequence[Dict[int, Fraction]]) -> int:
    """Rank of a sparse rational matrix; pivot rows are chosen shortest
    first to limit fill-in."""
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        work.sort(key=len)
        piv = work.pop(0)
        rank += 1
        col = min(piv, key=lambda c: (len_col(work, c), c))
        pv = piv[col]
        rest = []
        for r in work:
            if col in r:
                f = r[col] / pv
                out = dict(r)
                for c, v in piv.items():
                    nv = out.get(c, Fraction(0)) - f * v
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
                if out:
                    rest.append(out)
            else:
                rest.append(r)
        work = rest
    return rank


def len_col(rows: Sequence[Dict[int, Fraction]], col: int) -> int:
    return sum(1 for r in rows if col in r)


def rat_nullspace(rows: Sequence[Dict[int, Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the right nullspace of a small dense-ish rational matrix."""
    mat = [[r.get(c, Fraction(0)) for c in range(ncols)] for r in rows]
    pivots: List[int] = []
    rr = 0
    for c in range(ncols):
        sel = None
        for r in range(rr, len(mat)):
            if mat[r][c]:
                sel = r
                break
        if sel is None:
            continue
        mat[rr], mat[sel] = mat[sel], mat[rr]
        pv = mat[rr][c]
        mat[rr] = [x / pv for x in mat[rr]]
        for r in range(len(mat)):
            if r != rr and mat[r][c]:
                f = mat[r][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rr])]
        pivots.append(c)
        rr += 1
        if rr == len(mat):
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(vec)
    return basis


class ColumnsGF2:
    """Boundary columns over GF(2) as bitmasks of row indices."""

    def __init__(self, cols: List[int]):
        self.cols = cols

    def low(self, j: int) -> int:
        c = self.cols[j]
        return c.bit_length() - 1 if c else -1

    def add_into(self, j: int, src: int, factor=None):
        self.cols[j] ^= self.cols[src]


class ColumnsRat:
    """Boundary columns over the rationals as {row: coefficient} maps."""

    def __init__(self, cols: List[Dict[int, Fraction]]):
        self.cols = cols

    def low(self, j: int) -> int:
        c = self.cols[j]
        return max(c) if c else -1

    def coeff_at_low(self, j: int) -> Fraction:
        return self.cols[j][self.low(j)]

    def add_into(self, j: int, src: int, factor: Fraction):
        tgt = self.cols[j]
        for r, v in self.cols[src].items():
            nv = tgt.get(r, Fraction(0)) + factor * v
            if nv:
                tgt[r] = nv
            else:
                tgt.pop(r, None)


def reduce_columns(columns) -> Dict[int, int]:
    """Standard left-to-right persistence reduction.

    Rows and columns index one basis ordered compatibly with the filtration;
    returns {low row: column} for every column that reduces to a nonzero
    pivot.  Works for either column container above.
    """
    lowinv: Dict[int, int] = {}
    rat = isinstance(columns, ColumnsRat)
    for j in range(len(columns.cols)):
        while True:
            lo = columns.low(j)
            if lo < 0 or lo not in lowinv:
                break
            src = lowinv[lo]
            if rat:
                f = -columns.coeff_at_low(j) / columns.coeff_at_low(src)
                columns.add_into(j, src, f)
            else:
                columns.add_into(j, src, None)
        if columns.low(j) >= 0:
            lowinv[columns.low(j)] = j
    return lowinv
