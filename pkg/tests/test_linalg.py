import random
from fractions import Fraction

from annkh.linalg import (
    ColumnsGF2,
    ColumnsRat,
    gf2_rank,
    rat_nullspace,
    rat_rank,
    reduce_columns,
)

F = Fraction


def test_gf2_rank_basics():
    assert gf2_rank([]) == 0
    assert gf2_rank([0b101, 0b011, 0b110]) == 2  # third row is the sum
    assert gf2_rank([0b1, 0b10, 0b100]) == 3


def test_gf2_rank_random_consistency():
    rng = random.Random(3)
    rows = [rng.getrandbits(12) for _ in range(8)]
    r = gf2_rank(rows)
    assert gf2_rank(rows + [rows[0] ^ rows[-1]]) == r


def test_rat_rank_matches_dense():
    rows = [
        {0: F(1), 1: F(2)},
        {0: F(2), 1: F(4)},
        {2: F(5)},
    ]
    assert rat_rank(rows) == 2


def test_rat_rank_handles_cancellation():
    rows = [
        {0: F(1), 1: F(1)},
        {0: F(1), 1: F(-1)},
        {1: F(2)},
    ]
    assert rat_rank(rows) == 2


def test_rat_nullspace_annihilates():
    rows = [
        {0: F(1), 1: F(1), 2: F(1)},
        {0: F(1), 2: F(-1)},
    ]
    basis = rat_nullspace(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(row[c] * v[c] for c in row) == 0


def test_rat_nullspace_full_rank_is_trivial():
    rows = [{0: F(1)}, {1: F(1)}]
    assert rat_nullspace(rows, 2) == []


def test_reduce_columns_gf2_pairing():
    # boundary of a single interval: two vertices, one edge
    cols = ColumnsGF2([0, 0, 0b11])
    pairs = reduce_columns(cols)
    assert pairs == {1: 2}


def test_reduce_columns_gf2_triangle():
    # triangle boundary: three edges over three vertices, rank 2
    cols = ColumnsGF2([0, 0, 0, 0b011, 0b101, 0b110])
    pairs = reduce_columns(cols)
    assert len(pairs) == 2


def test_reduce_columns_rat_matches_gf2_on_unit_matrix():
    gcols = ColumnsGF2([0, 0b1])
    rcols = ColumnsRat([{}, {0: F(1)}])
    assert reduce_columns(gcols) == reduce_columns(rcols)


def test_reduce_columns_respects_low_invariant():
    rng = random.Random(9)
    n = 10
    raw = [0] * n
    for j in range(4, n):
        raw[j] = rng.getrandbits(4)
    cols = ColumnsGF2(list(raw))
    pairs = reduce_columns(cols)
    lows = [cols.low(j) for j in range(n)]
    seen = [l for l in lows if l >= 0]
    assert len(seen) == len(set(seen))  # distinct pivots after reduction
    for r, c in pairs.items():
        assert lows[c] == r
