"""Figure for a decomposition report: the subalgebra chain and the cyclic module sizes."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def chain_figure(report: dict, path: str | Path, title: str | None = None) -> Path:
    """Write a two-panel chart of dim A_i and dim M_i; the format follows the file suffix."""
    levels = report["levels"]
    chain = [lv["dim_algebra"] for lv in levels]
    if report["terminal_dim"] is not None:
        chain.append(report["terminal_dim"])
    cyclic = report["cyclic_dims"]

    fig, (left, right) = plt.subplots(1, 2, figsize=(8, 3.2), constrained_layout=True)
    left.plot(range(len(chain)), chain, marker="o", color="tab:blue")
    left.set_xlabel("level i")
    left.set_ylabel("dim A_i")
    left.set_xticks(range(len(chain)))
    if report["oracle_dim"] is not None:
        left.axhline(report["oracle_dim"], ls=":", color="grey", label="oracle dim A")
    if report["bound"] is not None:
        left.axhline(report["bound"], ls="--", color="tab:red", label="bound")
    if report["oracle_dim"] is not None or report["bound"] is not None:
        left.legend(frameon=False, fontsize="small")

    right.bar([str(i + 1) for i in range(len(cyclic))], cyclic, color="tab:green")
    right.set_xlabel("level i")
    right.set_ylabel("dim M_i")
    if not cyclic:
        right.text(0.5, 0.5, "no levels", ha="center", va="center", transform=right.transAxes)

    fig.suptitle(title or f"terminal: {report['terminal']['reason']}")
    out = Path(path)
    fig.savefig(out, metadata={"Software": None} if out.suffix == ".png" else None)
    plt.close(fig)
    return out
