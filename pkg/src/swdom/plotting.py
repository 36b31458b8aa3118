"""Figure rendering for the report paths.

Figures are a secondary output: the CSV/JSON files carry the data, the PNGs
just make the runs skimmable.  The Agg backend is forced so rendering works
headless, and PNGs are written without the software tag so reruns stay
byte-stable.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = [
    "save_figure",
    "plot_rate_sweep",
    "plot_trial_sizes",
    "plot_retention",
]


def save_figure(fig, path) -> None:
    fig.savefig(path, dpi=150, metadata={"Software": None})
    plt.close(fig)


def plot_rate_sweep(rows, threshold: float, path) -> None:
    """Error-versus-rate curves with the entropy-gap threshold marked."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    rates = [r.rate for r in rows]
    ax.plot(rates, [r.error_constructed for r in rows], "o-",
            label="constructed encoder")
    if not all(math.isnan(r.error_optimal) for r in rows):
        ax.plot(rates, [r.error_optimal for r in rows], "s--",
                label="optimal encoder")
    lo = [r.ci_low for r in rows]
    hi = [r.ci_high for r in rows]
    if any(h > l for l, h in zip(lo, hi)):
        ax.fill_between(rates, lo, hi, alpha=0.2, linewidth=0)
    ax.axvline(threshold, color="gray", linestyle=":", label="entropy gap")
    ax.set_xlabel("rate (bits/symbol)")
    ax.set_ylabel("decoding error")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    fig.tight_layout()
    save_figure(fig, path)


def plot_trial_sizes(report, path) -> None:
    """Per-trial set sizes against the (theta + 2 eta) n bound."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    trials = [r.trial for r in report.rows]
    ax.plot(trials, [r.lll_size for r in report.rows], "o",
            alpha=0.6, label="constructed")
    ax.plot(trials, [r.final_size for r in report.rows], "o",
            label="after shrinking")
    ax.axhline(report.size_bound, color="gray", linestyle=":",
               label="size bound")
    ax.set_xlabel("trial")
    ax.set_ylabel("set size")
    ax.legend()
    fig.tight_layout()
    save_figure(fig, path)


def plot_retention(result, path) -> None:
    """Majority retention after undersampling, next to the minority count."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    kept = len(result.retained_majority)
    dropped = result.majority_total - kept
    bars = ax.bar(["majority kept", "majority dropped", "minority"],
                  [kept, dropped, len(result.minority)],
                  color=["#4878cf", "#c5cbd6", "#d65f5f"])
    ax.bar_label(bars)
    ax.set_ylabel("rows")
    ax.set_title(f"retention {result.retention_fraction():.1%} at "
                 f"theta={result.theta}, k={result.k}")
    fig.tight_layout()
    save_figure(fig, path)
