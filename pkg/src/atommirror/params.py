"""Physical parameters, derived constants, and config-file ingestion.

All quantities are SI: lengths in meters, masses in kilograms, powers in
watts, temperatures in kelvin, and every rate/frequency/detuning as an
angular quantity in rad/s. Config files may give any rate-like quantity
as a multiple of the mechanical frequency instead, using the
``_in_omega_m`` key suffix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict, replace

import yaml

from .constants import HBAR, K_B, C_LIGHT

__all__ = [
    "ConfigError",
    "EffectiveDetuning",
    "BareDetuning",
    "PhysicalParams",
    "DerivedConstants",
    "derive_constants",
    "thermal_occupation",
    "default_params",
    "params_from_mapping",
    "params_to_mapping",
    "load_config",
    "with_effective_detuning",
]


class ConfigError(ValueError):
    """Raised for invalid parameter values or malformed config input."""


@dataclass(frozen=True)
class EffectiveDetuning:
    """Single detuning knob Delta, rad/s.

    Imposes Delta_1 = -Delta on cavity 1 and the post-shift detuning
    Delta_2' = +Delta on cavity 2 directly, so the steady state is
    closed-form (no self-consistency loop).
    """

    Delta: float


@dataclass(frozen=True)
class BareDetuning:
    """Bare cavity detunings Delta_1, Delta_2, rad/s.

    The static radiation-pressure displacement of the mirror shifts
    cavity 2 to Delta_2' = Delta_2 - G0*q_s, which must be solved
    self-consistently.
    """

    Delta1: float
    Delta2: float


@dataclass(frozen=True)
class PhysicalParams:
    """Raw inputs for the coupled two-cavity system with an atomic ensemble.

    Cavity 1 is laser driven and holds the ensemble (one collective
    bosonic mode in the low-excitation regime); cavity 2 has the movable
    mirror. Both cavities share the decay rate kappa. The atom number N
    enters diagnostics only; the collective coupling G_a is an input,
    never recomputed from the single-atom coupling.
    """

    cavity_length_L: float
    cavity_decay_kappa: float
    drive_wavelength_lambda: float
    drive_power_P: float
    mech_freq_omega_m: float
    mech_mass_m: float
    mech_damping_gamma_m: float
    atom_decay_gamma_a: float
    atom_coupling_G_a: float
    cavity_coupling_J: float
    atom_detuning_Delta_a: float
    temperature_T: float
    detuning: EffectiveDetuning | BareDetuning
    atom_number_N: float = 1e7

    def __post_init__(self):
        strictly_positive = {
            "cavity_length_L": self.cavity_length_L,
            "cavity_decay_kappa": self.cavity_decay_kappa,
            "drive_wavelength_lambda": self.drive_wavelength_lambda,
            "mech_freq_omega_m": self.mech_freq_omega_m,
            "mech_mass_m": self.mech_mass_m,
            "mech_damping_gamma_m": self.mech_damping_gamma_m,
            "atom_decay_gamma_a": self.atom_decay_gamma_a,
            "atom_number_N": self.atom_number_N,
        }
        for name, value in strictly_positive.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{name} must be finite and > 0, got {value!r}")
        # couplings and the drive may be switched off exactly
        nonnegative = {
            "drive_power_P": self.drive_power_P,
            "atom_coupling_G_a": self.atom_coupling_G_a,
            "cavity_coupling_J": self.cavity_coupling_J,
            "temperature_T": self.temperature_T,
        }
        for name, value in nonnegative.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value) or value < 0:
                raise ConfigError(f"{name} must be finite and >= 0, got {value!r}")
        if not math.isfinite(self.atom_detuning_Delta_a):
            raise ConfigError("atom_detuning_Delta_a must be finite")
        det = self.detuning
        if isinstance(det, EffectiveDetuning):
            det_values = (det.Delta,)
        elif isinstance(det, BareDetuning):
            det_values = (det.Delta1, det.Delta2)
        else:
            raise ConfigError(f"unknown detuning kind {det!r}")
        if not all(math.isfinite(v) for v in det_values):
            raise ConfigError(f"detuning values must be finite, got {det!r}")


@dataclass(frozen=True)
class DerivedConstants:
    """Quantities computed once from PhysicalParams.

    cavity_freq_omega_c: optical angular frequency 2*pi*c/lambda; used as
        both the cavity and drive frequency (detunings are the
        independent knobs, so the absolute frequency only enters G0 and
        Omega_l).
    radiation_coupling_G0: single-photon radiation-pressure coupling,
        (omega_c/L)*sqrt(hbar/(m*omega_m)), rad/s per unit displacement.
    drive_amplitude_Omega_l: sqrt(2*P*kappa/(hbar*omega_c)), rad/s.
    thermal_occupation_nbar: Bose occupation of the mechanical mode.
    quality_factor_Q: omega_m/gamma_m; the Markovian treatment of the
        mirror's thermal bath needs Q >> 1.
    """

    cavity_freq_omega_c: float
    radiation_coupling_G0: float
    drive_amplitude_Omega_l: float
    thermal_occupation_nbar: float
    quality_factor_Q: float


def thermal_occupation(omega_m: float, T: float) -> float:
    """Mean thermal phonon number at temperature T; exactly 0 at T = 0."""
    if T == 0:
        return 0.0
    return 1.0 / math.expm1(HBAR * omega_m / (K_B * T))


def derive_constants(p: PhysicalParams) -> DerivedConstants:
    """Compute all derived constants for a validated parameter set."""
    omega_c = 2.0 * math.pi * C_LIGHT / p.drive_wavelength_lambda
    G0 = (omega_c / p.cavity_length_L) * math.sqrt(
        HBAR / (p.mech_mass_m * p.mech_freq_omega_m))
    Omega_l = math.sqrt(2.0 * p.drive_power_P * p.cavity_decay_kappa
                        / (HBAR * omega_c))
    nbar = thermal_occupation(p.mech_freq_omega_m, p.temperature_T)
    Q = p.mech_freq_omega_m / p.mech_damping_gamma_m
    return DerivedConstants(
        cavity_freq_omega_c=omega_c,
        radiation_coupling_G0=G0,
        drive_amplitude_Omega_l=Omega_l,
        thermal_occupation_nbar=nbar,
        quality_factor_Q=Q,
    )


# Defaults drawn from published Fabry-Perot optomechanics experiments:
# 1 mm cavity, 810 nm drive at 35 mW, 5 ng mirror at omega_m/2pi = 10 MHz
# with Q = 1e5, kappa = gamma_a = pi*1e7 rad/s, ensemble of 1e7 atoms
# coupled at G_a = 1.2*pi*1e7 rad/s and held at the lower mechanical
# sideband (Delta_a = -omega_m).
_DEFAULTS = dict(
    cavity_length_L=1e-3,
    cavity_decay_kappa=math.pi * 1e7,
    drive_wavelength_lambda=810e-9,
    drive_power_P=35e-3,
    mech_freq_omega_m=2 * math.pi * 1e7,
    mech_mass_m=5e-12,
    mech_damping_gamma_m=200 * math.pi,
    atom_decay_gamma_a=math.pi * 1e7,
    atom_coupling_G_a=1.2 * math.pi * 1e7,
    cavity_coupling_J=2 * math.pi * 1e7,
    atom_detuning_Delta_a=-2 * math.pi * 1e7,
    temperature_T=0.4,
    atom_number_N=1e7,
)

_SUFFIX = "_in_omega_m"

# keys that may carry the _in_omega_m suffix
_RATE_KEYS = frozenset({
    "cavity_decay_kappa",
    "mech_damping_gamma_m",
    "atom_decay_gamma_a",
    "atom_coupling_G_a",
    "cavity_coupling_J",
    "atom_detuning_Delta_a",
    "Delta",
    "Delta1",
    "Delta2",
})

_DETUNING_KEYS = frozenset({"Delta", "Delta1", "Delta2"})


def _as_number(value, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key!r} must be a number, got {value!r}")
    return float(value)


def _resolve_keys(section: dict, allowed: frozenset, omega_m: float,
                  where: str) -> dict:
    """Resolve _in_omega_m suffixes against plain rad/s keys."""
    out = {}
    for key, value in section.items():
        suffixed = key.endswith(_SUFFIX)
        base = key[:-len(_SUFFIX)] if suffixed else key
        if base not in allowed or (suffixed and base not in _RATE_KEYS):
            raise ConfigError(f"unknown key {key!r} in {where}")
        if base in out:
            raise ConfigError(f"{base!r} given more than once in {where}")
        value = _as_number(value, key)
        out[base] = value * omega_m if suffixed else value
    return out


def _build_detuning(det: dict, default_Delta: float):
    if "Delta1" in det or "Delta2" in det:
        if "Delta" in det or {"Delta1", "Delta2"} - det.keys():
            raise ConfigError("bare detuning needs exactly Delta1 and Delta2")
        return BareDetuning(det["Delta1"], det["Delta2"])
    return EffectiveDetuning(det.get("Delta", default_Delta))


def default_params(**overrides) -> PhysicalParams:
    """Parameter set with the experiment-derived defaults above.

    Keyword overrides take the PhysicalParams field names; rate-like
    fields also accept the ``_in_omega_m`` suffix. The detuning can be
    given as a ready EffectiveDetuning/BareDetuning via ``detuning=`` or
    through the Delta/Delta1/Delta2 keys (plain or suffixed). Default:
    effective mode with Delta = omega_m.
    """
    detuning = overrides.pop("detuning", None)
    det_raw = {}
    for key in list(overrides):
        base = key[:-len(_SUFFIX)] if key.endswith(_SUFFIX) else key
        if base in _DETUNING_KEYS:
            det_raw[key] = overrides.pop(key)
    omega_m = _as_number(
        overrides.get("mech_freq_omega_m", _DEFAULTS["mech_freq_omega_m"]),
        "mech_freq_omega_m")
    system = _resolve_keys(overrides, frozenset(_DEFAULTS), omega_m,
                           "default_params overrides")
    merged = {**_DEFAULTS, **system}
    if detuning is None:
        det = _resolve_keys(det_raw, _DETUNING_KEYS, omega_m,
                            "default_params detuning overrides")
        detuning = _build_detuning(det, default_Delta=omega_m)
    elif det_raw:
        raise ConfigError("give either detuning= or Delta keys, not both")
    return PhysicalParams(detuning=detuning, **merged)


def params_from_mapping(config: dict) -> PhysicalParams:
    """Build PhysicalParams from a parsed config mapping.

    Expected top-level groups: ``system`` (PhysicalParams fields except
    the detuning) and ``detuning`` (``mode: effective`` with Delta, or
    ``mode: bare`` with Delta1/Delta2). Rate-like keys accept the
    ``_in_omega_m`` suffix. Missing keys fall back to the defaults.
    """
    if not isinstance(config, dict):
        raise ConfigError("config root must be a mapping")
    unknown = set(config) - {"system", "detuning", "sweep", "tcrit"}
    if unknown:
        raise ConfigError(f"unknown config sections {sorted(unknown)}")
    system_raw = config.get("system") or {}
    det_raw = config.get("detuning") or {}
    if not isinstance(system_raw, dict):
        raise ConfigError("'system' must be a mapping")
    if not isinstance(det_raw, dict):
        raise ConfigError("'detuning' must be a mapping")

    omega_m = _as_number(
        system_raw.get("mech_freq_omega_m", _DEFAULTS["mech_freq_omega_m"]),
        "mech_freq_omega_m")
    system = _resolve_keys(system_raw, frozenset(_DEFAULTS), omega_m,
                           "'system'")
    merged = {**_DEFAULTS, **system}

    det_raw = dict(det_raw)
    mode = det_raw.pop("mode", "effective")
    det = _resolve_keys(det_raw, _DETUNING_KEYS, omega_m, "'detuning'")
    if mode == "effective":
        if "Delta1" in det or "Delta2" in det:
            raise ConfigError("effective mode takes Delta only")
    elif mode == "bare":
        if "Delta" in det or {"Delta1", "Delta2"} - det.keys():
            raise ConfigError("bare mode takes exactly Delta1 and Delta2")
    else:
        raise ConfigError(f"detuning mode must be effective|bare, got {mode!r}")
    detuning = _build_detuning(det, default_Delta=omega_m)
    return PhysicalParams(detuning=detuning, **merged)


def params_to_mapping(p: PhysicalParams) -> dict:
    """Serialize to the config mapping form (plain SI values, no suffixes)."""
    system = asdict(p)
    det = system.pop("detuning")
    mode = "effective" if isinstance(p.detuning, EffectiveDetuning) else "bare"
    return {"system": system, "detuning": {"mode": mode, **det}}


def load_config(path) -> dict:
    """Parse a YAML config file into a plain mapping (no interpretation)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ConfigError("config root must be a mapping")
    return config


def with_effective_detuning(p: PhysicalParams, Delta: float) -> PhysicalParams:
    """Copy of p with the effective-detuning knob set to Delta (rad/s)."""
    return replace(p, detuning=EffectiveDetuning(Delta))
