"""Plot rendering for CLI reports (headless Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_error_curve(log, path, norm_sq=None):
    """Error-versus-update curve from a sweep or decomposition log.

    Sweep entries carry "error"; decomposition steps carry "discarded".
    norm_sq, when given, turns the y-axis into relative error.
    """
    errs = []
    for entry in log:
        if "error" in entry and entry["error"] is not None:
            errs.append(entry["error"])
        elif "discarded" in entry:
            errs.append(entry["discarded"])
    if not errs:
        return None
    errs = np.asarray(errs, dtype=float)
    if norm_sq:
        errs = errs / norm_sq
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(np.arange(1, errs.size + 1), np.maximum(errs, 1e-300))
    ax.set_xlabel("core update")
    ax.set_ylabel("relative squared error" if norm_sq else "squared error")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_signal_overlay(clean, noisy, estimate, path, n_show=512):
    """First n_show samples of the source, observation, and estimate."""
    n = min(n_show, len(noisy))
    t = np.arange(n)
    fig, ax = plt.subplots(figsize=(8, 4))
    if noisy is not None:
        ax.plot(t, np.asarray(noisy)[:n], color="0.8", label="noisy")
    if clean is not None:
        ax.plot(t, np.asarray(clean)[:n], "k--", lw=1.0, label="source")
    ax.plot(t, np.asarray(estimate)[:n], "r", lw=1.0, label="estimate")
    ax.set_xlabel("sample")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_rank_map(values, path):
    """Heat map of the per-pixel mean summed TT-rank."""
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(np.asarray(values, dtype=float), cmap="viridis")
    fig.colorbar(im, ax=ax, label="mean sum of TT-ranks")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_bench_bars(labels, means, path, ylabel="mean SAE (dB)"):
    """Bar chart of an aggregate metric per algorithm."""
    fig, ax = plt.subplots(figsize=(6, 4))
    pos = np.arange(len(labels))
    ax.bar(pos, means, color="tab:blue")
    ax.set_xticks(pos)
    ax.set_xticklabels(labels)
    ax.set_ylabel(ylabel)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
