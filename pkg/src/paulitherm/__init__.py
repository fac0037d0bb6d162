"""Entropy-production statistics of unital qubit Pauli channels.

The package follows one pipeline:

    rates  -->  mixing probabilities / channel eigenvalues   (channel)
           -->  two-point sigma_z measurement statistics     (tpm)
           -->  moment rates and mitigation-regime analysis  (reversibility)

plus a closed-form worked family (example), scenario files and a CLI
(config, cli), and built-in acceptance checks (selftest).  Numerical
kernels are compiled when the extension is available; set
PAULITHERM_BACKEND=python to force the pure-Python fallback.
"""

from ._backend import backend_name
from .channel import (ChannelEigenvalues, CPCheck, Divisibility,
                      DivisibilityReport, ProbabilityTrajectory,
                      ProbabilityVector, RateFunctions, apply_channel,
                      check_cp, classify_divisibility, make_grid,
                      probabilities_from_rates, rates_from_probabilities)
from .config import Scenario, load_config, load_rate_table
from .errors import (ConfigError, ConvergenceError, NumericalError,
                     QuadratureError, SingularChannelError)
from .example import (DEFAULT_KAPPA, ExampleParams, admissible, beta_bar,
                      classify_example, default_rate_split, gamma_sum,
                      gamma_sum_function, negativity_window, phi_closed,
                      z_max)
from .qubit import (QubitState, relative_entropy_diagonal,
                    von_neumann_entropy, xlnx)
from .reversibility import (AnalysisPoint, Case, RegimeReport, classify_regime,
                            f_function, mean_rate,
                            negativity_windows_from_scan, phi_star,
                            scan_trajectory, second_moment_rate, solve_x_star,
                            var_rate, x_star)
from .selftest import CheckResult, check_names, run_check, run_checks
from .tpm import (EntropyDistribution, TPMSetup, entropy_distribution,
                  joint_distribution, mean_and_variance, moment_closed_form,
                  moment_oracle)

__version__ = "0.1.0"

__all__ = [
    "AnalysisPoint", "Case", "ChannelEigenvalues", "CheckResult",
    "ConfigError", "ConvergenceError", "CPCheck", "DEFAULT_KAPPA",
    "Divisibility", "DivisibilityReport", "EntropyDistribution",
    "ExampleParams", "NumericalError", "ProbabilityTrajectory",
    "ProbabilityVector", "QuadratureError", "QubitState", "RateFunctions",
    "RegimeReport", "Scenario", "SingularChannelError", "TPMSetup",
    "admissible", "apply_channel", "backend_name", "beta_bar", "check_cp",
    "check_names", "classify_divisibility", "classify_example",
    "classify_regime", "default_rate_split", "entropy_distribution",
    "f_function", "gamma_sum", "gamma_sum_function", "joint_distribution",
    "load_config", "load_rate_table", "make_grid", "mean_and_variance",
    "mean_rate", "moment_closed_form", "moment_oracle",
    "negativity_window", "negativity_windows_from_scan", "phi_closed",
    "phi_star", "probabilities_from_rates", "rates_from_probabilities",
    "relative_entropy_diagonal", "run_check", "run_checks",
    "scan_trajectory", "second_moment_rate", "solve_x_star",
    "var_rate", "von_neumann_entropy", "x_star", "xlnx", "z_max",
    "__version__",
]
