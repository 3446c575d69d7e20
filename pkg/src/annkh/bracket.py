"""Skein-theoretic invariants computed straight from the state cube.

Two Laurent polynomials are produced without building any chain complex:

* ``state_sum``, the Kauffman-style bracket of an annular diagram, valued
  in Z[A^{±1}, z]: each state contributes A^(#0 - #1), a factor of
  delta = -A^2 - A^{-2} per trivial circle and a factor of z per essential
  circle.  Unnormalized: the crossingless trivial circle evaluates to delta
  and the empty diagram to 1.
* ``euler_characteristic``, the alternating generator count in Z[q^{±1},
  lambda^{±1}]: each state contributes (-1)^i q^(shift) (q + q^{-1})^T
  (q*lambda + q^{-1}*lambda^{-1})^E.

Both are finitely supported dictionaries keyed by exponent pairs; only the
extremal annular degree is contractual, so no change-of-variable identity
between them is relied on anywhere.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .cube import (STATE_CAP, CapExceeded, census_sweep,
                   is_minus_adequately_wrapped)
from .diagram import AnnularDiagram, analyze

# (A-exponent, z-exponent) -> integer coefficient
SkeinBracket = Dict[Tuple[int, int], int]
# (q-exponent, lambda-exponent) -> integer coefficient
AnnularLaurent = Dict[Tuple[int, int], int]


@lru_cache(maxsize=None)
def _delta_power(t: int) -> Tuple[Tuple[int, int], ...]:
    """(-A^2 - A^{-2})^t as ((A-exponent, coefficient), ...)."""
    acc = {0: 1}
    for _ in range(t):
        nxt: Dict[int, int] = {}
        for e, c in acc.items():
            nxt[e + 2] = nxt.get(e + 2, 0) - c
            nxt[e - 2] = nxt.get(e - 2, 0) - c
        acc = nxt
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _binomials(n: int) -> Tuple[int, ...]:
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return tuple(row)


def state_sum(
    d: AnnularDiagram, cap: int = STATE_CAP, workers: int = 1
) -> SkeinBracket:
    n = d.n_crossings
    if n > cap:
        raise CapExceeded(n, cap)
    sweep = census_sweep(d, cap, workers)
    out: SkeinBracket = {}
    for s in range(1 << n):
        w = bin(s).count("1")
        trivial, ess = sweep[2 * s], sweep[2 * s + 1]
        a0 = n - 2 * w
        for da, coef in _delta_power(trivial):
            key = (a0 + da, ess)
            val = out.get(key, 0) + coef
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def euler_characteristic(
    d: AnnularDiagram, cap: int = STATE_CAP, workers: int = 1
) -> AnnularLaurent:
    n = d.n_crossings
    if n > cap:
        raise CapExceeded(n, cap)
    a = analyze(d)
    n_plus, n_minus = a.n_plus(), a.n_minus()
    sweep = census_sweep(d, cap, workers)
    out: AnnularLaurent = {}
    for s in range(1 << n):
        w = bin(s).count("1")
        trivial, ess = sweep[2 * s], sweep[2 * s + 1]
        sign = -1 if (w - n_minus) & 1 else 1
        j0 = w + n_plus - 2 * n_minus
        bt = _binomials(trivial)
        be = _binomials(ess)
        for at in range(trivial + 1):
            ct = bt[at] * sign
            qt = trivial - 2 * at
            for ae in range(ess + 1):
                k = ess - 2 * ae
                key = (j0 + qt + k, k)
                val = out.get(key, 0) + ct * be[ae]
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def max_annular_degree(poly: Dict[Tuple[int, int], int]) -> int:
    """Largest second exponent (z- or lambda-degree) with nonzero
    coefficient."""
    if not poly:
        raise ValueError("zero polynomial has no annular degree")
    return max(k for _, k in poly)


@dataclass(frozen=True)
class WrapReport:
    wrap_upper_bound: int
    bracket_max_degree: int
    akh_max_k: Optional[int]
    minus_adequately_wrapped: bool
    status: str  # VERIFIED | UNDECIDED

    def as_dict(self) -> dict:
        return asdict(self)


def wrap_report(
    d: AnnularDiagram,
    use_homology: bool = False,
    field: str = "gf2",
    cap: int = STATE_CAP,
    workers: int = 1,
) -> WrapReport:
    """Certificate for the wrap bound of one diagram.

    VERIFIED means the bracket's top annular degree meets the seam-count
    upper bound, so the bound is the true wrapping number.  UNDECIDED means
    the degree fell short; the diagram may simply be non-minimal, so this is
    never evidence against the bound.
    """
    bound = d.wrap_upper_bound()
    bmax = max_annular_degree(state_sum(d, cap=cap, workers=workers))
    kmax = None
    if use_homology:
        from .homology import max_nonzero_k_scan

        kmax = max_nonzero_k_scan(d, field=field, cap=cap, workers=workers)
    status = "VERIFIED" if bmax == bound else "UNDECIDED"
    return WrapReport(
        wrap_upper_bound=bound,
        bracket_max_degree=bmax,
        akh_max_k=kmax,
        minus_adequately_wrapped=is_minus_adequately_wrapped(d),
        status=status,
    )
