"""Reverse-hazard Stein discrepancies between maxima laws and Fréchet limits."""

from .discrepancy import (BoundReport, DiscrepancyResult, bounds, burr_ratio, cauchy_ratio, delta,
                          delta_w, frechet_bounds, frechet_delta, frechet_roles, frechet_vs_frechet,
                          pareto_delta, pareto_delta_w, u_n_diagnostic)
from .distributions import (CATALOG_NAMES, TABLE1_ROWS, DistributionSpec, FrechetLaw, MaximaLaw,
                            acceptance_catalog, catalog, check_assumption0, maxima, mean,
                            reverse_hazard, scaling_sequence)
from .errors import (AssumptionError, DivergenceError, DomainError, InfiniteMeanError,
                     InversionError, ParameterError, PoleError, PreconditionError, QuadratureError,
                     SteinFrechetError)
from .karamata import RVReport, da_check, estimate_index, karamata_limit, potter_check, rv_report
from .oracle import (OracleReport, exact_distances, kolmogorov, monte_carlo_distances,
                     total_variation, wasserstein)
from .quadrature import QuadratureConfig, QuadratureResult, find_sign_changes, integrate
from .solver import (SteinSolution, envelope, halfline, indicator_solution, lipschitz, set_indicator,
                     solve, verify_proposition1)
from .special import gamma, ln_gamma, upper_incomplete_gamma
from .sweep import RateFit, SweepSpec, fit_rate, frechet_compare, run_sweep

__version__ = "0.1.0"
