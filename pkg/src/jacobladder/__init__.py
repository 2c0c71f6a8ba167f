"""Numerical toolkit for Jacob's ladders of the Riemann zeta function.

Hardy's Z and the Riemann-Siegel theta, Bessel J0/J1 and the zeros of J1,
Gram points, adaptive Gauss-Kronrod quadrature, tabulated ladders phi_1 and
phi_2, and checks of the integral identities that connect them.
"""
from .bessel import BesselZeroTable, j0, j1, j1_definite_integral, j1_zeros
from .errors import (AccuracyUnreachableError, BracketError, ConvergenceError,
                     CoverageError, DomainError, FixtureError, InadmissibleIntervalError,
                     IntegrandNaNError, JacobLadderError, NonMonotoneError, OrderingError,
                     PreconditionError, QuadratureError)
from .gram import (GramPoint, IntervalClassification, cell_count_ratio, classify_interval,
                   count_admissible_in_cell, gram_point, gram_points, spacing_residual)
from .ladder import (LadderTable, SubstitutionResult, build_ladder, ladder_inverse,
                     ladder_value, load_ladder, prime_pi, save_ladder, substitution_check)
from .oracle import oracle_check
from .quad import QuadratureResult, integrate, invert_monotone
from .rs_theta_zeta import EvalAccuracy, ThetaValue, hardy_z, theta, zeta_abs_sq
from .verify import (CampaignSpec, VerificationRecord, chain_check_36, chain_check_37_38,
                     run_campaign, thm1_lhs, thm1_rhs, thm1_verify, thm2_verify)

__version__ = "0.1.0"
