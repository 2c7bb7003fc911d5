"""Figure rendering for the report command.

Each function writes one PNG next to the delimited data it illustrates.
Matplotlib runs on the Agg backend; nothing here opens a window.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_berezin_radial(radii, values, c_lam: float, lam: float, d: int, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(radii, values, "o-", label=r"transform of the symbol")
    ax.axhline(c_lam, color="gray", linestyle="--", label=f"c = {c_lam:.6g}")
    ax.set_xlabel("|z|")
    ax.set_ylabel("transform value")
    ax.set_title(f"Berezin transform, d={d}, lambda={lam:g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_hs_convergence(degrees, entry_norms, berezin_norm: float, lam: float, d: int,
                        path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(degrees, entry_norms, "o-", label="Frobenius norm of truncation")
    ax.axhline(berezin_norm, color="gray", linestyle="--",
               label=f"quadratic form = {berezin_norm:.6g}")
    ax.set_xlabel("truncation degree M")
    ax.set_ylabel("Hilbert-Schmidt norm")
    ax.set_title(f"HS norm convergence, d={d}, lambda={lam:g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_norm_growth(ks, values, lam: float, d: int, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ks, values, "o-")
    ax.axhline(1.0, color="gray", linestyle=":")
    ax.set_xlabel("k")
    ax.set_ylabel("eigenvalue on the constant function")
    ax.set_title(f"Unbounded growth for symbols (|z|^2)^k, d={d}, lambda={lam:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_verify_summary(ids: Sequence[str], passed: Sequence[int], failed: Sequence[int],
                        path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 0.5 + 0.35 * len(ids)))
    y = range(len(ids))
    ax.barh(y, passed, color="tab:green", label="pass")
    ax.barh(y, failed, left=passed, color="tab:red", label="fail")
    ax.set_yticks(list(y))
    ax.set_yticklabels(ids)
    ax.set_xlabel("checks")
    ax.set_title("identity verification summary")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
