"""Figure rendering for the report commands.

Every renderer takes already-computed tables and writes one PNG/PDF/SVG
(matplotlib picks the format from the file suffix).  Rendering never feeds
back into any computation; the Agg backend is forced so the tool stays
headless.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_akh(dims: Dict[Tuple[int, int, int], int], path: str, title: str = "") -> None:
    """One panel per annular grading k, dims laid out on the (i, j) plane."""
    ks = sorted({k for _, _, k in dims})
    if not ks:
        ks = [0]
    fig, axes = plt.subplots(1, len(ks), figsize=(3.2 * len(ks), 3.2),
                             squeeze=False, sharey=True)
    for ax, k in zip(axes[0], ks):
        pts = {(i, j): v for (i, j, kk), v in dims.items() if kk == k}
        for (i, j), v in pts.items():
            ax.scatter([i], [j], s=120, c="tab:blue", alpha=0.6)
            ax.annotate(str(v), (i, j), ha="center", va="center", fontsize=8)
        ax.set_title(f"k = {k}")
        ax.set_xlabel("homological i")
        ax.grid(True, alpha=0.3)
    axes[0][0].set_ylabel("quantum j")
    if title:
        fig.suptitle(title)
    _finish(fig, path)


def plot_bracket(poly: Dict[Tuple[int, int], int], path: str, title: str = "") -> None:
    """Stem of A-coefficients, one panel per annular z-degree."""
    zs = sorted({z for _, z in poly})
    fig, axes = plt.subplots(len(zs), 1, figsize=(5, 1.8 * len(zs)),
                             squeeze=False, sharex=True)
    for ax, z in zip(axes[:, 0], zs):
        terms = sorted((a, c) for (a, zz), c in poly.items() if zz == z)
        ax.stem([a for a, _ in terms], [c for _, c in terms])
        ax.axhline(0, color="k", lw=0.5)
        ax.set_ylabel(f"z^{z}")
        ax.grid(True, alpha=0.3)
    axes[-1, 0].set_xlabel("A exponent")
    if title:
        fig.suptitle(title)
    _finish(fig, path)


def plot_wrap(report: dict, poly: Dict[Tuple[int, int], int], path: str,
              title: str = "") -> None:
    """Mass of the bracket per annular degree against the wrap bound."""
    zs = sorted({z for _, z in poly})
    mass = [sum(abs(c) for (a, zz), c in poly.items() if zz == z) for z in zs]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(zs, mass, width=0.6, color="tab:blue", alpha=0.7)
    bound = report["wrap_upper_bound"]
    ax.axvline(bound, color="tab:red", ls="--",
               label=f"wrap bound {bound} ({report['status']})")
    ax.set_xlabel("annular degree z")
    ax.set_ylabel("total |coefficient|")
    ax.legend()
    if title:
        fig.suptitle(title)
    _finish(fig, path)


def plot_ss(page_totals: Sequence[int], einf: Dict[Tuple[int, int], int],
            path: str, title: str = "") -> None:
    """Page-size decay next to the stable (l, k) table."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.4))
    rs = list(range(1, len(page_totals) + 1))
    ax1.plot(rs, page_totals, "o-")
    ax1.set_xlabel("page r")
    ax1.set_ylabel("total dimension")
    ax1.set_xticks(rs)
    ax1.grid(True, alpha=0.3)
    for (l, k), v in einf.items():
        ax2.scatter([l], [k], s=120, c="tab:green", alpha=0.6)
        ax2.annotate(str(v), (l, k), ha="center", va="center", fontsize=8)
    ax2.set_xlabel("l = i - j")
    ax2.set_ylabel("annular k")
    ax2.set_title("E_inf")
    ax2.grid(True, alpha=0.3)
    if title:
        fig.suptitle(title)
    _finish(fig, path)


def plot_rank(rows: Sequence[Tuple[int, int, int, int]], path: str,
              title: str = "") -> None:
    """Paired bars of source vs split ranks per (l, k) slot."""
    labels = [f"({l},{k})" for l, k, _, _ in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(5, 0.5 * len(rows)), 3.4))
    ax.bar([x - 0.2 for x in xs], [r[2] for r in rows], width=0.4,
           label="link", color="tab:blue", alpha=0.7)
    ax.bar([x + 0.2 for x in xs], [r[3] for r in rows], width=0.4,
           label="split target", color="tab:orange", alpha=0.7)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=60, fontsize=7)
    ax.set_ylabel("rank")
    ax.legend()
    if title:
        fig.suptitle(title)
    _finish(fig, path)


def plot_sweep(rows: Sequence[dict], path: str, title: str = "") -> None:
    """Wrap bound, bracket degree and AKh max-k across the swept instances."""
    xs = list(range(len(rows)))
    fig, ax = plt.subplots(figsize=(max(5, 0.8 * len(rows)), 3.4))
    ax.plot(xs, [r["wrap_bound"] for r in rows], "s--", label="wrap bound")
    ax.plot(xs, [r["bracket_max"] for r in rows], "o-", label="bracket max z")
    kvals = [r.get("akh_max_k") for r in rows]
    if any(v is not None for v in kvals):
        ax.plot(xs, kvals, "^:", label="AKh max k")
    ax.set_xticks(xs)
    ax.set_xticklabels([r["instance"] for r in rows], rotation=60, fontsize=7)
    ax.set_ylabel("annular degree")
    ax.legend()
    ax.grid(True, alpha=0.3)
    if title:
        fig.suptitle(title)
    _finish(fig, path)
