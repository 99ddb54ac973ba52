"""Figure rendering for report documents.

Each subcommand's report carries plot-ready columns; this module turns
them into a PNG and a tab-separated table in a chosen directory.  It is
entirely optional — reports never depend on whether figures were drawn.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def write_tsv(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> None:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _finish(fig: plt.Figure, path: Path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_check(doc: dict[str, Any], outdir: Path) -> list[Path]:
    logs = doc["logs"]
    rats = doc["ratios"]
    ns = list(range(len(logs)))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(ns, logs, lw=1.2)
    ax1.set_xlabel("n")
    ax1.set_ylabel("ln M_n")
    ax1.set_title("weight sequence")
    ax2.plot(ns[:-1], rats, lw=1.2, color="tab:orange")
    ax2.set_xlabel("n")
    ax2.set_ylabel("ln m_n")
    ax2.set_title("ratios (must be non-decreasing)")
    png = outdir / "check.png"
    _finish(fig, png)
    tsv = outdir / "check.tsv"
    write_tsv(
        tsv,
        ("n", "log_M", "log_ratio"),
        [(n, logs[n], rats[n] if n < len(rats) else "") for n in ns],
    )
    return [png, tsv]


def render_certify(doc: dict[str, Any], outdir: Path) -> list[Path]:
    cert = doc["certificate"]
    ell0 = cert["ell_min"]
    env = cert["envelope"]
    ells = list(range(ell0, ell0 + len(env)))
    wlogs = doc["weight_logs"]
    admitted = [cert["log_k"] * (l + 1) + w for l, w in zip(ells, wlogs)]
    fig, ax = plt.subplots(figsize=(6.4, 4))
    ax.plot(ells, env, label="envelope", lw=1.4)
    ax.plot(ells, wlogs, label="ln M_l", lw=1.2, ls="--")
    ax.plot(ells, admitted, label="(l+1) ln K + ln M_l", lw=1.2, ls=":")
    for d in cert["orders"]:
        ax.axvline(d, color="0.85", lw=0.8, zorder=0)
    ax.set_xlabel("order l")
    ax.set_ylabel("log scale")
    ax.legend(fontsize=8)
    ax.set_title("certified derivative envelope")
    png = outdir / "certify.png"
    _finish(fig, png)
    tsv = outdir / "certify.tsv"
    write_tsv(
        tsv,
        ("order", "envelope", "log_M", "admitted"),
        zip(ells, env, wlogs, admitted),
    )
    return [png, tsv]


def render_counterexample(doc: dict[str, Any], outdir: Path) -> list[Path]:
    blocks = doc["log_m_blocks"]
    fig, ax = plt.subplots(figsize=(6.4, 4))
    for start, stop, ratio in blocks:
        # Rejoin orders grow as iterated exponentials; plot index on log10.
        x0 = math.log10(start) if start > 0 else -0.05
        x1 = math.log10(stop)
        ax.hlines(ratio, x0, x1, lw=2.0)
    ax.set_xlabel("log10 step index")
    ax.set_ylabel("ln N_{n+1}/N_n")
    ax.set_yscale("symlog")
    ax.set_title("staircase ratio profile")
    png = outdir / "counterexample.png"
    _finish(fig, png)
    tsv = outdir / "counterexample.tsv"
    write_tsv(
        tsv,
        ("block_start", "block_stop", "log_ratio"),
        blocks,
    )
    return [png, tsv]


def render_extremal(doc: dict[str, Any], outdir: Path) -> list[Path]:
    table = doc["table"]
    ns = [row["n"] for row in table]
    fig, ax = plt.subplots(figsize=(6.4, 4))
    ax.plot(ns, [row["log_midpoint"] for row in table], "o-", ms=3, label="midpoint (log)")
    ax.plot(ns, [row["log_lower"] for row in table], ls="--", lw=1.1, label="lower bound")
    ax.plot(ns, [row["log_sup"] for row in table], "s-", ms=3, lw=1.1, label="sampled sup")
    ax.plot(ns, [row["log_upper"] for row in table], ls=":", lw=1.1, label="upper bound")
    ax.set_xlabel("derivative order n")
    ax.set_ylabel("log scale")
    ax.legend(fontsize=8)
    ax.set_title("extremal series derivative bounds")
    png = outdir / "extremal.png"
    _finish(fig, png)
    tsv = outdir / "extremal.tsv"
    write_tsv(
        tsv,
        ("n", "log_midpoint", "log_lower", "log_sup", "log_upper", "log_tail",
         "midpoint_ok", "upper_ok"),
        [
            (
                row["n"], row["log_midpoint"], row["log_lower"], row["log_sup"],
                row["log_upper"], row["log_tail"], row["midpoint_ok"], row["upper_ok"],
            )
            for row in table
        ],
    )
    return [png, tsv]


def render_gorny(doc: dict[str, Any], outdir: Path) -> list[Path]:
    rows = doc["rows"]
    labels = [f"{r['fn']}:k={r['k']}" for r in rows]
    idx = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(6.4, 0.45 * len(rows)), 4))
    ax.bar(idx, [r["rhs"] for r in rows], color="0.85", label="bound (log)")
    ax.plot(idx, [r["lhs"] for r in rows], "k.", label="sampled G_k (log)")
    ax.set_xticks(list(idx))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("log scale")
    ax.legend(fontsize=8)
    ax.set_title("intermediate-derivative bound vs samples")
    png = outdir / "gorny.png"
    _finish(fig, png)
    tsv = outdir / "gorny.tsv"
    write_tsv(
        tsv,
        ("fn", "m", "k", "lhs", "rhs", "holds"),
        [(r["fn"], r["m"], r["k"], r["lhs"], r["rhs"], r["holds"]) for r in rows],
    )
    return [png, tsv]


_RENDERERS: dict[str, Callable[[dict[str, Any], Path], list[Path]]] = {
    "check": render_check,
    "certify": render_certify,
    "counterexample": render_counterexample,
    "extremal": render_extremal,
    "gorny": render_gorny,
}


def render_figures(doc: dict[str, Any], outdir: Path) -> list[Path]:
    """Render the figure + TSV pair for a report; returns written paths."""
    sub = doc.get("subcommand")
    if sub not in _RENDERERS:
        raise ValueError(f"no renderer for report kind {sub!r}")
    outdir.mkdir(parents=True, exist_ok=True)
    return _RENDERERS[sub](doc, outdir)
