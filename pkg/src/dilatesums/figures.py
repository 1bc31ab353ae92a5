"""Matplotlib renderings written alongside the delimited report output."""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path: Path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def render_report_figures(reports, out_base) -> list[str]:
    """Empirical-exponent and saturation scatter plots for a report batch.

    Left: log(lhs/|A|)/log K against K (log-x), one color per inequality id,
    with the bound exponent drawn as a horizontal line where rational.
    Right: lhs/rhs saturation against |A| (log-x).
    """
    out_base = Path(out_base)
    rows = [r for r in reports if r.K is not None and r.size > 0]
    paths = []

    by_id: dict[str, list] = {}
    for r in rows:
        if r.K > 1 and r.lhs > 0:
            by_id.setdefault(r.id, []).append(r)
    if by_id:
        fig, ax = plt.subplots(figsize=(7, 5))
        for ident in sorted(by_id):
            grp = by_id[ident]
            xs = [float(r.K) for r in grp]
            ys = [(math.log(r.lhs) - math.log(r.size))
                  / math.log(float(r.K)) for r in grp]
            ax.scatter(xs, ys, s=14, alpha=0.6, label=ident)
            exps = {r.details.get("exponent") for r in grp}
            for e in exps:
                if e is not None:
                    ax.axhline(float(Fraction(e)), ls="--", lw=0.8, color="grey")
        ax.set_xscale("log")
        ax.set_xlabel("K = |A+A|/|A|")
        ax.set_ylabel("empirical exponent  log(lhs/|A|) / log K")
        ax.set_title("Empirical exponents vs growth bounds")
        ax.legend(fontsize=8)
        paths.append(_finish(fig, out_base.with_name(out_base.name + "_exponents.png")))

    if rows:
        fig, ax = plt.subplots(figsize=(7, 5))
        ids = sorted({r.id for r in rows})
        for ident in ids:
            grp = [r for r in rows if r.id == ident]
            ax.scatter([r.size for r in grp], [r.ratio for r in grp],
                       s=14, alpha=0.6, label=ident)
        ax.axhline(1.0, color="red", lw=0.8)
        ax.set_xscale("log")
        ax.set_xlabel("|A|")
        ax.set_ylabel("lhs / rhs")
        ax.set_title("Bound saturation (1.0 = sharp)")
        ax.legend(fontsize=8)
        paths.append(_finish(fig, out_base.with_name(out_base.name + "_saturation.png")))
    return paths


def render_search_history(history, bracket, out_base) -> list[str]:
    """Best-so-far exponent trajectory with the known bracket lines."""
    out_base = Path(out_base)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if history:
        xs = [h[0] for h in history]
        ys = [h[1] for h in history]
        ax.step(xs, ys, where="post", label="best exponent")
    lo, hi = bracket
    ax.axhline(lo, ls="--", color="green", lw=0.9, label=f"cube witness {lo:.4f}")
    ax.axhline(hi, ls="--", color="red", lw=0.9, label=f"proved bound {hi:.4f}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("exponent")
    ax.set_title("Extremal exponent search")
    ax.legend(fontsize=8)
    return [_finish(fig, out_base.with_name(out_base.name + "_history.png"))]


def render_partition_blocks(trace, out_base) -> list[str]:
    """Block sizes of a partition trace, colored by branch."""
    out_base = Path(out_base)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    sizes = [len(b.block) for b in trace.blocks]
    colors = ["tab:blue" if b.branch == "a" else "tab:orange" for b in trace.blocks]
    ax.bar(range(len(sizes)), sizes, color=colors)
    ax.set_xlabel("block index")
    ax.set_ylabel("|B|")
    ax.set_title(f"Partition blocks (n={trace.size}, K={float(trace.K):.3g}, "
                 f"M={float(trace.M):.3g})")
    handles = [plt.Rectangle((0, 0), 1, 1, color="tab:blue"),
               plt.Rectangle((0, 0), 1, 1, color="tab:orange")]
    ax.legend(handles, ["branch a (structured)", "branch b (uniform)"], fontsize=8)
    return [_finish(fig, out_base.with_name(out_base.name + "_blocks.png"))]
