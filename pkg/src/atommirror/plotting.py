"""Line plots of sweep results, rendered to self-contained vector files.

The CSV is the source of truth; plots are a convenience view. One color
per overlay value, one line style per mirror pairing, gaps where a
point is unstable (absent values are never drawn as zeros).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "atommirror"

import matplotlib.pyplot as plt
import numpy as np

from .sweep import SweepSpec, SweepAxis

__all__ = ["render_sweep_plot"]

_AXIS_LABEL = {
    SweepAxis.DELTA_OVER_OMEGA_M: r"$\Delta/\omega_m$",
    SweepAxis.TEMPERATURE_K: "T (K)",
    SweepAxis.J_OVER_OMEGA_M: r"$J/\omega_m$",
}

_PAIR_STYLE = (
    ("EN1", "mirror-cavity1", "-"),
    ("EN2", "mirror-cavity2", "--"),
    ("EN3", "mirror-atoms", ":"),
)


def render_sweep_plot(rows, spec: SweepSpec, path) -> None:
    """Render the three logarithmic negativities over the sweep axis."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    overlays = spec.overlays if spec.overlays else (None,)
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for k, overlay in enumerate(overlays):
        chunk = [r for r in rows if r.overlay_value == overlay] \
            if overlay is not None else list(rows)
        x = np.array([r.axis_value for r in chunk], dtype=float)
        color = colors[k % len(colors)]
        for field, pair_label, style in _PAIR_STYLE:
            y = np.array([getattr(r, field) if getattr(r, field) is not None
                          else np.nan for r in chunk], dtype=float)
            label = pair_label
            if overlay is not None:
                label = (f"{pair_label}, "
                         f"{spec.overlay_axis.value}={overlay:g}")
            ax.plot(x, y, style, color=color, label=label, linewidth=1.4)
    ax.set_xlabel(_AXIS_LABEL[spec.axis])
    ax.set_ylabel(r"$E_N$")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    # strip the timestamp so identical runs give identical bytes
    metadata = {"Date": None} if str(path).endswith(".svg") else None
    fig.savefig(path, metadata=metadata)
    plt.close(fig)
