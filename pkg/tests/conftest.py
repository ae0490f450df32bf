import pytest

from atommirror import (default_params, derive_constants, solve_steady_state,
                        build_linear_model)


@pytest.fixture()
def base_params():
    """Reference operating point: defaults with J = omega_m, Delta = omega_m."""
    return default_params(cavity_coupling_J_in_omega_m=1.0,
                          Delta_in_omega_m=1.0)


@pytest.fixture()
def solved(base_params):
    """(params, derived, steady state, linear model) at the reference point."""
    p = base_params
    d = derive_constants(p)
    s = solve_steady_state(p, d)
    model = build_linear_model(p, d, s)
    return p, d, s, model
