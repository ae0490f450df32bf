"""Classical steady state of the coupled two-cavity system.

The mean-value equations close in terms of the cavity amplitudes, the
collective atomic amplitude and the static mirror displacement:

    p_s  = 0
    q_s  = G0 |a2_s|^2 / omega_m
    a2_s = -i J a1_s / (kappa + i Delta2')
    a1_s = Omega_l / [kappa + i Delta1 + G_a^2/(gamma_a + i Delta_a)
                       + J^2/(kappa + i Delta2')]
    c_s  = -i G_a a1_s / (gamma_a + i Delta_a)

with Delta2' = Delta2 - G0 q_s the radiation-pressure-shifted detuning
of the mirror cavity. In effective mode Delta2' is the input and the
chain above is closed-form; in bare mode q_s is a scalar fixed point,
possibly multivalued (optical bistability).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .params import (PhysicalParams, DerivedConstants, EffectiveDetuning,
                     BareDetuning)

__all__ = [
    "SteadyState",
    "SteadyStateError",
    "ValidityReport",
    "solve_steady_state",
    "steady_state_residual",
    "validity_report",
]

# fixed-point iteration hyperparameters; chosen so that effective/bare
# round trips agree to 1e-9 relative
_DAMPING = 0.5
_REL_TOL = 1e-12
_MAX_ITER = 10_000
_RESIDUAL_TOL = 1e-10
_SCAN_POINTS = 513


class SteadyStateError(RuntimeError):
    """Raised when the self-consistent displacement cannot be solved."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


@dataclass(frozen=True)
class SteadyState:
    """Solved mean values and the couplings they induce.

    q_s, p_s: dimensionless mirror displacement and momentum (p_s = 0).
    a1_s, a2_s: complex intracavity amplitudes.
    c_s: complex collective atomic amplitude.
    Delta1: resolved cavity-1 detuning, rad/s.
    Delta2_eff: resolved cavity-2 detuning after the static
        radiation-pressure shift, rad/s.
    G_eff: linearized optomechanical coupling sqrt(2)*G0*|a2_s|, rad/s.
    branches: all real fixed-point roots for q_s, ascending (length 1
        unless the bare-mode response is bistable).
    multivalued: more than one branch exists; q_s is the smallest.
    residual: worst relative mismatch when the solution is substituted
        back into the mean-value equations.
    """

    q_s: float
    p_s: float
    a1_s: complex
    a2_s: complex
    c_s: complex
    Delta1: float
    Delta2_eff: float
    G_eff: float
    branches: tuple[float, ...]
    multivalued: bool
    residual: float


@dataclass(frozen=True)
class ValidityReport:
    """Diagnostics for the approximations behind the linearized model.

    excitation_prob: single-atom excitation probability
        G_a^2 |a1_s|^2 / (N (Delta_a^2 + gamma_a^2)); the collective
        bosonic treatment of the ensemble needs this << 1.
    amp1_abs, amp2_abs: |a1_s|, |a2_s|; the linearization drops terms
        quadratic in the fluctuations, which needs large amplitudes.
    low_excitation_ok: excitation_prob < 0.1.
    strong_drive_ok: min(|a1_s|, |a2_s|) > 10.
    markovian_ok: mechanical quality factor Q > 100.
    """

    excitation_prob: float
    amp1_abs: float
    amp2_abs: float
    low_excitation_ok: bool
    strong_drive_ok: bool
    markovian_ok: bool


def _amplitudes(p: PhysicalParams, Omega_l: float, Delta1: float,
                Delta2_eff: float):
    """Closed-form a1_s, a2_s, c_s for a given cavity-2 detuning."""
    kappa = p.cavity_decay_kappa
    atom_term = (p.atom_coupling_G_a ** 2
                 / (p.atom_decay_gamma_a + 1j * p.atom_detuning_Delta_a))
    hop_term = p.cavity_coupling_J ** 2 / (kappa + 1j * Delta2_eff)
    a1 = Omega_l / (kappa + 1j * Delta1 + atom_term + hop_term)
    a2 = -1j * p.cavity_coupling_J * a1 / (kappa + 1j * Delta2_eff)
    c = (-1j * p.atom_coupling_G_a * a1
         / (p.atom_decay_gamma_a + 1j * p.atom_detuning_Delta_a))
    return a1, a2, c


def _q_of(p, d, Delta1, Delta2_bare, q):
    _, a2, _ = _amplitudes(p, d.drive_amplitude_Omega_l, Delta1,
                           Delta2_bare - d.radiation_coupling_G0 * q)
    return d.radiation_coupling_G0 * abs(a2) ** 2 / p.mech_freq_omega_m


def _q_upper_bound(p, d) -> float:
    # |a1| <= Omega_l/kappa and |a2| <= J|a1|/kappa for every detuning,
    # so the displacement is bounded by G0 J^2 Omega_l^2 / (omega_m kappa^4)
    kappa = p.cavity_decay_kappa
    return (d.radiation_coupling_G0 * p.cavity_coupling_J ** 2
            * d.drive_amplitude_Omega_l ** 2
            / (p.mech_freq_omega_m * kappa ** 4))


def _bare_roots(p, d, Delta1, Delta2_bare) -> list[float]:
    """All real roots of q = q_of(q) on the rigorous bracket [0, q_max]."""
    f = lambda q: q - _q_of(p, d, Delta1, Delta2_bare, q)
    q_max = _q_upper_bound(p, d)
    if q_max == 0.0:
        return [0.0]
    hi = q_max * (1.0 + 1e-9)
    grid = np.linspace(0.0, hi, _SCAN_POINTS)
    values = np.array([f(q) for q in grid])
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0.0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(brentq(f, a, b, xtol=1e-15 * hi, rtol=1e-15))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))
    deduped = []
    for r in sorted(roots):
        if not deduped or r - deduped[-1] > 1e-9 * hi:
            deduped.append(r)
    return deduped


def _solve_bare_q(p, d, Delta1, Delta2_bare):
    """Damped fixed-point iteration with a bracketed-root fallback."""
    q = 0.0
    converged = False
    for _ in range(_MAX_ITER):
        q_next = (1.0 - _DAMPING) * q + _DAMPING * _q_of(p, d, Delta1,
                                                         Delta2_bare, q)
        if abs(q_next - q) <= _REL_TOL * max(abs(q_next), 1.0):
            q = q_next
            converged = True
            break
        q = q_next
    roots = _bare_roots(p, d, Delta1, Delta2_bare)
    if not roots:
        if converged:
            roots = [q]
        else:
            raise SteadyStateError(
                "displacement fixed point did not converge within "
                f"{_MAX_ITER} damped iterations and no bracketed root "
                "was found", last_iterate=q)
    return roots


def solve_steady_state(p: PhysicalParams,
                       d: DerivedConstants) -> SteadyState:
    """Solve the mean-value equations for the configured detuning mode.

    Effective mode is closed-form. Bare mode solves the scalar
    displacement fixed point by damped iteration (damping 0.5, relative
    tolerance 1e-12, budget 10^4 steps) and falls back to bracketed root
    finding; if several roots coexist, all are returned in ``branches``
    and the smallest is adopted.
    """
    det = p.detuning
    if isinstance(det, EffectiveDetuning):
        Delta1 = -det.Delta
        Delta2_eff = det.Delta
        a1, a2, c = _amplitudes(p, d.drive_amplitude_Omega_l, Delta1,
                                Delta2_eff)
        q_s = d.radiation_coupling_G0 * abs(a2) ** 2 / p.mech_freq_omega_m
        branches = (q_s,)
        multivalued = False
    elif isinstance(det, BareDetuning):
        Delta1 = det.Delta1
        roots = _solve_bare_q(p, d, Delta1, det.Delta2)
        branches = tuple(roots)
        multivalued = len(roots) > 1
        q_s = roots[0]
        Delta2_eff = det.Delta2 - d.radiation_coupling_G0 * q_s
        a1, a2, c = _amplitudes(p, d.drive_amplitude_Omega_l, Delta1,
                                Delta2_eff)
    else:
        raise SteadyStateError(f"unknown detuning kind {det!r}")

    G_eff = math.sqrt(2.0) * d.radiation_coupling_G0 * abs(a2)
    state = SteadyState(
        q_s=q_s, p_s=0.0, a1_s=a1, a2_s=a2, c_s=c,
        Delta1=Delta1, Delta2_eff=Delta2_eff, G_eff=G_eff,
        branches=branches, multivalued=multivalued, residual=0.0,
    )
    residual = steady_state_residual(p, d, state)
    if residual > _RESIDUAL_TOL:
        raise SteadyStateError(
            f"steady-state residual {residual:.3e} exceeds "
            f"{_RESIDUAL_TOL:.0e}", last_iterate=q_s)
    return replace(state, residual=residual)


def steady_state_residual(p: PhysicalParams, d: DerivedConstants,
                          s: SteadyState) -> float:
    """Worst relative mismatch of the solution against the equations.

    Substitutes (q_s, a1_s, a2_s, c_s) back into the right-hand sides
    and compares component by component; components that are zero on
    both sides contribute nothing.
    """
    a1_rhs, a2_rhs, c_rhs = _amplitudes(p, d.drive_amplitude_Omega_l,
                                        s.Delta1, s.Delta2_eff)
    q_rhs = d.radiation_coupling_G0 * abs(a2_rhs) ** 2 / p.mech_freq_omega_m
    worst = abs(s.p_s)
    for lhs, rhs in ((s.q_s, q_rhs), (s.a1_s, a1_rhs), (s.a2_s, a2_rhs),
                     (s.c_s, c_rhs)):
        scale = max(abs(lhs), abs(rhs))
        if scale > 0:
            worst = max(worst, abs(lhs - rhs) / scale)
    return worst


def validity_report(p: PhysicalParams, d: DerivedConstants,
                    s: SteadyState) -> ValidityReport:
    """Approximation diagnostics; reports, never fails."""
    denom = p.atom_detuning_Delta_a ** 2 + p.atom_decay_gamma_a ** 2
    excitation = (p.atom_coupling_G_a ** 2 * abs(s.a1_s) ** 2
                  / (p.atom_number_N * denom))
    amp1 = abs(s.a1_s)
    amp2 = abs(s.a2_s)
    return ValidityReport(
        excitation_prob=excitation,
        amp1_abs=amp1,
        amp2_abs=amp2,
        low_excitation_ok=excitation < 0.1,
        strong_drive_ok=min(amp1, amp2) > 10.0,
        markovian_ok=d.quality_factor_Q > 100.0,
    )
