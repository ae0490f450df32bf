#!/usr/bin/env python3
"""Stationary entanglement versus effective cavity detuning.

Sweeps Delta/omega_m from 0 to 2.5 for three cavity-cavity couplings
and reports where each mirror pairing is entangled. Writes the full
grid to CSV and a three-panel plot to SVG next to this script.
"""

import pathlib

from atommirror import SweepAxis, SweepSpec, default_params, run_sweep

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)


def entangled_interval(rows, field):
    vals = [(r.axis_value, getattr(r, field)) for r in rows]
    hits = [x for x, v in vals if v is not None and v > 0]
    if not hits:
        return None
    return min(hits), max(hits)


def peak(rows, field):
    best = None
    for r in rows:
        v = getattr(r, field)
        if v is not None and (best is None or v > best[1]):
            best = (r.axis_value, v)
    return best


def main():
    spec = SweepSpec(
        axis=SweepAxis.DELTA_OVER_OMEGA_M,
        start=0.0, stop=2.5, points=201,
        base=default_params(),
        overlays=(1.0, 1.5, 2.0),
    )
    rows = run_sweep(spec,
                     csv_path=OUT / "detuning_sweep.csv",
                     plot_path=OUT / "detuning_sweep.svg")

    for J in spec.overlays:
        sub = [r for r in rows if r.overlay_value == J]
        unstable = sum(1 for r in sub if r.stable is False)
        print(f"J/omega_m = {J}: {unstable} of {len(sub)} grid points "
              f"have no stationary state")
        for field, label in (("EN1", "mirror-cavity1"),
                             ("EN2", "mirror-cavity2"),
                             ("EN3", "mirror-atoms")):
            band = entangled_interval(sub, field)
            top = peak(sub, field)
            if band is None:
                print(f"  {label}: separable everywhere")
            else:
                print(f"  {label}: entangled for Delta/omega_m in "
                      f"[{band[0]:.3f}, {band[1]:.3f}], peak "
                      f"{top[1]:.4f} at {top[0]:.3f}")

    print()
    print("At J = omega_m the mirror-atom peak sits close to Delta =")
    print("omega_m. Past that the peak shrinks and migrates to the edge")
    print("of an instability band that opens around the resonance, until")
    print("near J = 2 omega_m a wide stretch of the axis has no")
    print("stationary state and the CSV rows there carry no values.")
    print(f"outputs: {OUT / 'detuning_sweep.csv'}, "
          f"{OUT / 'detuning_sweep.svg'}")


if __name__ == "__main__":
    main()
