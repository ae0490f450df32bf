import math

import numpy as np
import pytest

from atommirror import (LinearModel, assemble_drift, build_linear_model,
                        check_stability, default_params, derive_constants,
                        dump_matrices, solve_steady_state, spectral_abscissa)
from helpers import char_poly, routh_stable

OMEGA_M = 2 * math.pi * 1e7


def test_drift_matrix_entries():
    # distinct values so every entry is traceable to its coefficient
    A = assemble_drift(omega_m=1.0, gamma_m=2.0, kappa=3.0, gamma_a=4.0,
                       Delta1=5.0, Delta2_eff=6.0, Delta_a=7.0, J=8.0,
                       G=9.0, G_a=10.0)
    expected = np.array([
        [0.0,  1.0,   0.0,  0.0,  0.0,  0.0,   0.0,   0.0],
        [-1.0, -2.0,  0.0,  0.0,  9.0,  0.0,   0.0,   0.0],
        [0.0,  0.0,  -3.0,  5.0,  0.0,  8.0,   0.0,  10.0],
        [0.0,  0.0,  -5.0, -3.0, -8.0,  0.0, -10.0,   0.0],
        [0.0,  0.0,   0.0,  8.0, -3.0,  6.0,   0.0,   0.0],
        [9.0,  0.0,  -8.0,  0.0, -6.0, -3.0,   0.0,   0.0],
        [0.0,  0.0,   0.0, 10.0,  0.0,  0.0,  -4.0,   7.0],
        [0.0,  0.0, -10.0,  0.0,  0.0,  0.0,  -7.0,  -4.0],
    ])
    np.testing.assert_array_equal(A, expected)


def test_drift_trace_identity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        gamma_m, kappa, gamma_a = rng.uniform(0.1, 5.0, size=3)
        A = assemble_drift(omega_m=rng.uniform(0.5, 2), gamma_m=gamma_m,
                           kappa=kappa, gamma_a=gamma_a,
                           Delta1=rng.uniform(-3, 3),
                           Delta2_eff=rng.uniform(-3, 3),
                           Delta_a=rng.uniform(-3, 3),
                           J=rng.uniform(0, 3), G=rng.uniform(0, 2),
                           G_a=rng.uniform(0, 3))
        assert np.trace(A) == pytest.approx(-(gamma_m + 4 * kappa
                                              + 2 * gamma_a), rel=1e-12)


def test_eigenvalues_closed_under_conjugation(solved):
    _, _, _, model = solved
    eigs = np.linalg.eigvals(model.drift_A)
    conj_sorted = np.sort_complex(np.conj(eigs))
    np.testing.assert_allclose(np.sort_complex(eigs), conj_sorted,
                               rtol=1e-9, atol=1e-3)


def test_build_linear_model_wires_steady_state(solved):
    p, d, s, model = solved
    expected = assemble_drift(
        omega_m=p.mech_freq_omega_m, gamma_m=p.mech_damping_gamma_m,
        kappa=p.cavity_decay_kappa, gamma_a=p.atom_decay_gamma_a,
        Delta1=s.Delta1, Delta2_eff=s.Delta2_eff,
        Delta_a=p.atom_detuning_Delta_a, J=p.cavity_coupling_J,
        G=s.G_eff, G_a=p.atom_coupling_G_a)
    np.testing.assert_array_equal(model.drift_A, expected)
    # the mirror couples to cavity 2 only through G = sqrt(2) G0 |a2|
    assert model.drift_A[1, 4] == s.G_eff
    assert model.drift_A[5, 0] == s.G_eff
    assert model.marginal_band == pytest.approx(1e-9 * p.mech_freq_omega_m)


def test_diffusion_entries(solved):
    p, d, _, model = solved
    nbar = d.thermal_occupation_nbar
    expected = np.diag([
        0.0, p.mech_damping_gamma_m * (2 * nbar + 1),
        p.cavity_decay_kappa, p.cavity_decay_kappa,
        p.cavity_decay_kappa, p.cavity_decay_kappa,
        p.atom_decay_gamma_a, p.atom_decay_gamma_a,
    ])
    np.testing.assert_array_equal(model.diffusion_D, expected)
    # temperature enters D only; A is temperature independent
    p_hot = default_params(cavity_coupling_J_in_omega_m=1.0,
                           Delta_in_omega_m=1.0, temperature_T=50.0)
    d_hot = derive_constants(p_hot)
    m_hot = build_linear_model(p_hot, d_hot,
                               solve_steady_state(p_hot, d_hot))
    np.testing.assert_array_equal(m_hot.drift_A, model.drift_A)
    assert m_hot.diffusion_D[1, 1] > model.diffusion_D[1, 1]


def test_reference_point_is_stable(solved):
    _, _, _, model = solved
    assert model.stable
    assert not model.marginal
    assert model.spectral_abscissa == pytest.approx(-3878647.438914513,
                                                    rel=1e-4)
    assert check_stability(model) == (model.stable, model.spectral_abscissa)


def test_strong_coupling_point_is_unstable():
    # at J = 2 omega_m, Delta = omega_m one eigenvalue crosses into the
    # right half plane (fingerprint frozen from the eigenvalue solver)
    p = default_params(cavity_coupling_J_in_omega_m=2.0, Delta_in_omega_m=1.0)
    d = derive_constants(p)
    model = build_linear_model(p, d, solve_steady_state(p, d))
    assert not model.stable
    assert not model.marginal
    assert model.spectral_abscissa > model.marginal_band
    assert model.spectral_abscissa == pytest.approx(5.400047e4, rel=1e-2)


def test_marginal_classified_unstable():
    # undamped mirror rotation: spectral abscissa exactly zero
    A = assemble_drift(omega_m=1.0, gamma_m=0.0, kappa=1.0, gamma_a=1.0,
                       Delta1=0.0, Delta2_eff=0.0, Delta_a=0.0, J=0.0,
                       G=0.0, G_a=0.0)
    assert spectral_abscissa(A) == pytest.approx(0.0, abs=1e-12)
    model = LinearModel(drift_A=A, diffusion_D=np.eye(8), stable=False,
                        spectral_abscissa=0.0, marginal=True,
                        marginal_band=1e-9)
    stable, abscissa = check_stability(model)
    assert not stable
    assert abscissa == pytest.approx(0.0, abs=1e-12)
    # strictly negative but inside the band: still classified unstable
    model_tiny = LinearModel(drift_A=-1e-12 * np.eye(8),
                             diffusion_D=np.eye(8), stable=False,
                             spectral_abscissa=-1e-12, marginal=True,
                             marginal_band=1e-9)
    stable, abscissa = check_stability(model_tiny)
    assert not stable
    assert abscissa < 0


def test_routh_oracle_sanity():
    # (s+1)^3: stable; (s-1)(s+2)(s+3): one right-half-plane root
    assert routh_stable([1, 3, 3, 1]) is True
    assert routh_stable([1, 4, 1, -6]) is False
    # s^2 + 1: purely imaginary pair, inconclusive table
    assert routh_stable([1, 0, 1]) is None


def _random_drift(rng):
    loguni = lambda lo, hi: math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return assemble_drift(
        omega_m=1.0,
        gamma_m=loguni(1e-5, 0.1),
        kappa=loguni(0.05, 5.0),
        gamma_a=loguni(0.05, 5.0),
        Delta1=rng.uniform(-3, 3),
        Delta2_eff=rng.uniform(-3, 3),
        Delta_a=rng.uniform(-3, 3),
        J=rng.uniform(0, 3),
        G=rng.uniform(0, 2),
        G_a=rng.uniform(0, 3),
    )


def test_stability_verdict_matches_routh_table():
    rng = np.random.default_rng(20240811)
    band = 1e-9
    n_stable = n_unstable = n_skipped = 0
    for _ in range(300):
        A = _random_drift(rng)
        abscissa = spectral_abscissa(A)
        if abs(abscissa) <= band:
            n_skipped += 1
            continue
        verdict = routh_stable(char_poly(A))
        if verdict is None:
            n_skipped += 1
            continue
        assert verdict == (abscissa < 0), \
            f"eigenvalue abscissa {abscissa} vs Routh verdict {verdict}"
        if verdict:
            n_stable += 1
        else:
            n_unstable += 1
    assert n_skipped <= 5
    assert n_stable >= 30 and n_unstable >= 30


def test_dump_matrices_round_trip(solved, tmp_path):
    _, _, _, model = solved
    a_path, d_path = dump_matrices(model, tmp_path)
    A = np.loadtxt(a_path)
    D = np.loadtxt(d_path)
    np.testing.assert_array_equal(A, model.drift_A)
    np.testing.assert_array_equal(D, model.diffusion_D)
