"""Command-line front end.

Subcommands:
    point   evaluate one parameter set and print the full report
    sweep   grid sweep with CSV (and optional plot) output
    tcrit   critical-temperature search for one mirror pairing
    check   stability and validity report only (no covariance solve)

Flags mirror the config-file keys and override them; rate-like flags
exist in both plain rad/s and ``-in-omega-m`` forms. Exit codes:
0 success, 2 config error, 3 instability at a ``point`` invocation,
4 no crossing in ``tcrit``.
"""

from __future__ import annotations

import argparse
import math
import sys

from .params import (ConfigError, params_from_mapping, load_config,
                     derive_constants)
from .steady_state import (SteadyStateError, solve_steady_state,
                           validity_report)
from .linear_dynamics import build_linear_model, dump_matrices
from .lyapunov import solve_lyapunov
from .entanglement import BipartitePair, all_pairs_report
from .sweep import (NoCrossingError, SweepAxis, SweepSpec,
                    find_critical_temperature, run_sweep)

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_NO_CROSSING = 4

# (config key, rate-like) pairs; rate-like keys also get -in-omega-m flags
_SYSTEM_KEYS = (
    ("cavity_length_L", False),
    ("cavity_decay_kappa", True),
    ("drive_wavelength_lambda", False),
    ("drive_power_P", False),
    ("mech_freq_omega_m", False),
    ("mech_mass_m", False),
    ("mech_damping_gamma_m", True),
    ("atom_decay_gamma_a", True),
    ("atom_coupling_G_a", True),
    ("cavity_coupling_J", True),
    ("atom_detuning_Delta_a", True),
    ("temperature_T", False),
    ("atom_number_N", False),
)

_DETUNING_KEYS = (("Delta", True), ("Delta1", True), ("Delta2", True))

_PAIR_NAMES = {
    "mirror_cavity1": BipartitePair.MIRROR_CAVITY1,
    "mirror_cavity2": BipartitePair.MIRROR_CAVITY2,
    "mirror_atoms": BipartitePair.MIRROR_ATOMS,
}

_AXIS_NAMES = {axis.value: axis for axis in SweepAxis}


def _add_param_flags(parser):
    group = parser.add_argument_group("parameters (override config values)")
    group.add_argument("--config", metavar="FILE",
                       help="YAML config file (sections: system, detuning, "
                            "sweep, tcrit)")
    for key, rate_like in _SYSTEM_KEYS + _DETUNING_KEYS:
        flag = "--" + key.replace("_", "-")
        group.add_argument(flag, type=float, default=None, dest=key)
        if rate_like:
            group.add_argument(flag + "-in-omega-m", type=float, default=None,
                               dest=key + "_in_omega_m")
    group.add_argument("--detuning-mode", choices=("effective", "bare"),
                       default=None)


def _collect_params(args):
    config = load_config(args.config) if args.config else {}
    system = dict(config.get("system") or {})
    detuning = dict(config.get("detuning") or {})
    for key, rate_like in _SYSTEM_KEYS:
        for k in (key, key + "_in_omega_m") if rate_like else (key,):
            value = getattr(args, k, None)
            if value is not None:
                system.pop(key, None)
                system.pop(key + "_in_omega_m", None)
                system[k] = value
    for key, _ in _DETUNING_KEYS:
        for k in (key, key + "_in_omega_m"):
            value = getattr(args, k, None)
            if value is not None:
                detuning.pop(key, None)
                detuning.pop(key + "_in_omega_m", None)
                detuning[k] = value
    if args.detuning_mode is not None:
        detuning["mode"] = args.detuning_mode
    elif any(k.startswith(("Delta1", "Delta2")) for k in detuning):
        detuning.setdefault("mode", "bare")
    merged = dict(config)
    merged["system"] = system
    merged["detuning"] = detuning
    return params_from_mapping(merged), merged


def _fmt_complex(z) -> str:
    return f"{abs(z):.6e} * exp({math.atan2(z.imag, z.real):+.4f}i)"


def _print_header(p, out):
    omega_m = p.mech_freq_omega_m
    det = p.detuning
    print(f"J/omega_m = {p.cavity_coupling_J / omega_m:g}, "
          f"T = {p.temperature_T:g} K, "
          f"Delta_a/omega_m = {p.atom_detuning_Delta_a / omega_m:g}",
          file=out)
    if p.atom_detuning_Delta_a == -omega_m:
        print("note: atom detuning sits at the lower mechanical sideband "
              "(package default, an assumption rather than a measured "
              "value)", file=out)
    if hasattr(det, "Delta"):
        print(f"detuning: effective, Delta/omega_m = "
              f"{det.Delta / omega_m:g}", file=out)
    else:
        print(f"detuning: bare, Delta1/omega_m = {det.Delta1 / omega_m:g}, "
              f"Delta2/omega_m = {det.Delta2 / omega_m:g}", file=out)


def _print_steady(p, d, s, v, out):
    omega_m = p.mech_freq_omega_m
    print("steady state:", file=out)
    print(f"  q_s = {s.q_s:.6e}   (Delta2_eff/omega_m = "
          f"{s.Delta2_eff / omega_m:.6f})", file=out)
    print(f"  a1_s = {_fmt_complex(s.a1_s)}", file=out)
    print(f"  a2_s = {_fmt_complex(s.a2_s)}", file=out)
    print(f"  c_s  = {_fmt_complex(s.c_s)}", file=out)
    print(f"  G/omega_m = {s.G_eff / omega_m:.6f}", file=out)
    if s.multivalued:
        print(f"  bistable: {len(s.branches)} branches, q in "
              f"{[f'{b:.6e}' for b in s.branches]}; smallest adopted",
              file=out)
    print("validity:", file=out)
    print(f"  excitation_prob = {v.excitation_prob:.4e} "
          f"(low_excitation_ok: {str(v.low_excitation_ok).lower()})",
          file=out)
    print(f"  |a1_s| = {v.amp1_abs:.4e}, |a2_s| = {v.amp2_abs:.4e} "
          f"(strong_drive_ok: {str(v.strong_drive_ok).lower()})", file=out)
    print(f"  Q = {d.quality_factor_Q:.4e} "
          f"(markovian_ok: {str(v.markovian_ok).lower()})", file=out)


def _cmd_point(args) -> int:
    p, _ = _collect_params(args)
    d = derive_constants(p)
    out = sys.stdout
    _print_header(p, out)
    try:
        s = solve_steady_state(p, d)
    except SteadyStateError as exc:
        print(f"steady state failed: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    v = validity_report(p, d, s)
    _print_steady(p, d, s, v, out)
    model = build_linear_model(p, d, s)
    verdict = "stable" if model.stable else \
        ("marginal (classified unstable)" if model.marginal else "UNSTABLE")
    print(f"stability: {verdict} (spectral abscissa = "
          f"{model.spectral_abscissa:+.6e} rad/s)", file=out)
    if not model.stable:
        print("no stationary covariance exists at this point; "
              "entanglement is undefined here", file=out)
        return EXIT_UNSTABLE
    cov = solve_lyapunov(model.drift_A, model.diffusion_D)
    reports = all_pairs_report(cov)
    print("entanglement (logarithmic negativity, nats):", file=out)
    labels = {
        BipartitePair.MIRROR_CAVITY1: "EN1 mirror-cavity1",
        BipartitePair.MIRROR_CAVITY2: "EN2 mirror-cavity2",
        BipartitePair.MIRROR_ATOMS: "EN3 mirror-atoms  ",
    }
    for pair, report in reports.items():
        print(f"  {labels[pair]} = {report.E_N:.6f}   "
              f"(nu_- = {report.nu_minus:.6f})", file=out)
    print(f"lyapunov residual = {cov.residual_norm:.3e}", file=out)
    return EXIT_OK


def _cmd_check(args) -> int:
    p, _ = _collect_params(args)
    d = derive_constants(p)
    out = sys.stdout
    _print_header(p, out)
    try:
        s = solve_steady_state(p, d)
    except SteadyStateError as exc:
        print(f"steady state failed: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    v = validity_report(p, d, s)
    _print_steady(p, d, s, v, out)
    model = build_linear_model(p, d, s)
    verdict = "stable" if model.stable else \
        ("marginal (classified unstable)" if model.marginal else "UNSTABLE")
    print(f"stability: {verdict} (spectral abscissa = "
          f"{model.spectral_abscissa:+.6e} rad/s)", file=out)
    if args.dump_matrices:
        a_path, d_path = dump_matrices(model, args.dump_matrices)
        print(f"wrote {a_path} and {d_path}", file=out)
    return EXIT_OK


def _sweep_spec_from(args, p, config) -> SweepSpec:
    section = dict(config.get("sweep") or {})
    axis = args.axis or section.get("axis", "Delta_over_omega_m")
    if axis not in _AXIS_NAMES:
        raise ConfigError(f"unknown sweep axis {axis!r}")
    overlay_axis = args.overlay_axis or section.get("overlay_axis",
                                                    "J_over_omega_m")
    if overlay_axis not in _AXIS_NAMES:
        raise ConfigError(f"unknown overlay axis {overlay_axis!r}")
    overlays = args.overlays if args.overlays is not None \
        else section.get("overlays", ())
    if not isinstance(overlays, (list, tuple)):
        raise ConfigError("sweep overlays must be a list of numbers")
    start = args.start if args.start is not None else section.get("start")
    stop = args.stop if args.stop is not None else section.get("stop")
    points = args.points if args.points is not None \
        else section.get("points", 201)
    if start is None or stop is None:
        raise ConfigError("sweep needs --start and --stop (or config values)")
    try:
        return SweepSpec(axis=_AXIS_NAMES[axis], start=float(start),
                         stop=float(stop), points=int(points), base=p,
                         overlay_axis=_AXIS_NAMES[overlay_axis],
                         overlays=tuple(float(v) for v in overlays))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _cmd_sweep(args) -> int:
    p, config = _collect_params(args)
    spec = _sweep_spec_from(args, p, config)
    section = dict(config.get("sweep") or {})
    csv_path = args.csv or section.get("csv")
    plot_path = args.plot or section.get("plot")
    workers = args.workers if args.workers is not None \
        else int(section.get("workers", 1))
    rows = run_sweep(spec, csv_path=csv_path, plot_path=plot_path,
                     workers=workers)
    n_unstable = sum(1 for r in rows if r.stable is False)
    n_failed = sum(1 for r in rows if r.failed)
    print(f"evaluated {len(rows)} points "
          f"({n_unstable} unstable, {n_failed} failed)")
    if csv_path:
        print(f"wrote {csv_path}")
    if plot_path:
        print(f"wrote {plot_path}")
    return EXIT_OK


def _cmd_tcrit(args) -> int:
    p, config = _collect_params(args)
    section = dict(config.get("tcrit") or {})
    pair_name = args.pair or section.get("pair", "mirror_atoms")
    if pair_name not in _PAIR_NAMES:
        raise ConfigError(f"unknown pair {pair_name!r}")
    t_max = args.t_max if args.t_max is not None \
        else float(section.get("t_max", 100.0))
    tol = args.tol if args.tol is not None else float(section.get("tol", 0.1))
    _print_header(p, sys.stdout)
    result = find_critical_temperature(p, _PAIR_NAMES[pair_name],
                                       t_max=t_max, tol=tol)
    print(f"T_c = {result.T_c:.4f} K for {pair_name} "
          f"(bracket [{result.bracket[0]:.4f}, {result.bracket[1]:.4f}] K, "
          f"tol {result.tolerance:g} K)")
    for warning in result.warnings:
        print(f"warning: {warning}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atommirror",
        description="Stationary Gaussian entanglement in a driven "
                    "two-cavity optomechanical system with an atomic "
                    "ensemble.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one parameter set")
    _add_param_flags(p_point)
    p_point.set_defaults(func=_cmd_point)

    p_sweep = sub.add_parser("sweep", help="grid sweep with CSV output")
    _add_param_flags(p_sweep)
    p_sweep.add_argument("--axis", choices=sorted(_AXIS_NAMES), default=None)
    p_sweep.add_argument("--overlay-axis", choices=sorted(_AXIS_NAMES),
                         default=None)
    p_sweep.add_argument("--overlays", type=float, nargs="+", default=None)
    p_sweep.add_argument("--start", type=float, default=None)
    p_sweep.add_argument("--stop", type=float, default=None)
    p_sweep.add_argument("--points", type=int, default=None)
    p_sweep.add_argument("--csv", default=None)
    p_sweep.add_argument("--plot", default=None)
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_tcrit = sub.add_parser("tcrit", help="critical-temperature search")
    _add_param_flags(p_tcrit)
    p_tcrit.add_argument("--pair", choices=sorted(_PAIR_NAMES), default=None)
    p_tcrit.add_argument("--t-max", type=float, default=None)
    p_tcrit.add_argument("--tol", type=float, default=None)
    p_tcrit.set_defaults(func=_cmd_tcrit)

    p_check = sub.add_parser("check", help="stability and validity only")
    _add_param_flags(p_check)
    p_check.add_argument("--dump-matrices", metavar="DIR", default=None)
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoCrossingError as exc:
        print(f"no crossing: {exc}", file=sys.stderr)
        return EXIT_NO_CROSSING
    except ValueError as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
