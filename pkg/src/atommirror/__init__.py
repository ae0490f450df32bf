"""Stationary Gaussian entanglement in a two-cavity optomechanical system.

A movable mirror couples one cavity of a driven two-cavity system by
radiation pressure while an atomic ensemble sits inside the other. The
package linearizes the dynamics about the classical steady state, solves
the Lyapunov equation for the stationary covariance matrix, and scores
bipartite entanglement between the mirror and each partner mode by the
logarithmic negativity.

Typical use::

    import atommirror as am

    p = am.default_params(cavity_coupling_J_in_omega_m=1.0,
                          Delta_in_omega_m=1.0)
    d = am.derive_constants(p)
    s = am.solve_steady_state(p, d)
    model = am.build_linear_model(p, d, s)
    if model.stable:
        cov = am.solve_lyapunov(model.drift_A, model.diffusion_D)
        reports = am.all_pairs_report(cov)
"""

from .constants import C_LIGHT, HBAR, K_B
from .params import (BareDetuning, ConfigError, DerivedConstants,
                     EffectiveDetuning, PhysicalParams, default_params,
                     derive_constants, load_config, params_from_mapping,
                     params_to_mapping, thermal_occupation,
                     with_effective_detuning)
from .steady_state import (SteadyState, SteadyStateError, ValidityReport,
                           solve_steady_state, steady_state_residual,
                           validity_report)
from .linear_dynamics import (LinearModel, assemble_drift, build_linear_model,
                              check_stability, dump_matrices,
                              spectral_abscissa)
from .lyapunov import (CovarianceMatrix, LyapunovError, StabilityError,
                       integral_crosscheck, solve_lyapunov)
from .entanglement import (BipartitePair, EntanglementReport,
                           UnphysicalCovarianceError, all_pairs_report,
                           extract_submatrix, logarithmic_negativity)
from .sweep import (CriticalTempResult, NoCrossingError, SweepAxis, SweepRow,
                    SweepSpec, evaluate_point, find_critical_temperature,
                    rows_to_csv_text, run_sweep, write_csv)
from .cli import main as cli_main

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT", "HBAR", "K_B",
    "BareDetuning", "ConfigError", "DerivedConstants", "EffectiveDetuning",
    "PhysicalParams", "default_params", "derive_constants", "load_config",
    "params_from_mapping", "params_to_mapping", "thermal_occupation",
    "with_effective_detuning",
    "SteadyState", "SteadyStateError", "ValidityReport", "solve_steady_state",
    "steady_state_residual", "validity_report",
    "LinearModel", "assemble_drift", "build_linear_model", "check_stability",
    "dump_matrices", "spectral_abscissa",
    "CovarianceMatrix", "LyapunovError", "StabilityError",
    "integral_crosscheck", "solve_lyapunov",
    "BipartitePair", "EntanglementReport", "UnphysicalCovarianceError",
    "all_pairs_report", "extract_submatrix", "logarithmic_negativity",
    "CriticalTempResult", "NoCrossingError", "SweepAxis", "SweepRow",
    "SweepSpec", "evaluate_point", "find_critical_temperature",
    "rows_to_csv_text", "run_sweep", "write_csv",
    "cli_main",
    "__version__",
]
