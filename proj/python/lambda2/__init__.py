"""Signal manipulation in a double-Lambda atomic medium.

Thin Python layer over the C++ core: the reduced plane-wave model, the
amplification sweep, the scheme runners and the acceptance suite.
"""

from ._lambda2 import (
    ConfigParseError,
    ConfigValidationError,
    Config,
    EXIT_ERROR,
    EXIT_PASS,
    EXIT_VERDICT_FAIL,
    Lambda2Error,
    acceptance_criteria,
    amplification_ratio,
    amplification_sweep,
    asymptotic_transfer,
    control_ratio_xi,
    dark_projection,
    default_config,
    integrate_reduced,
    optimal_xi,
    parse_config,
    phase_mismatch,
    reduced_rhs,
    run,
    run_acceptance,
    run_scenario,
    run_scheme,
    schemes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
