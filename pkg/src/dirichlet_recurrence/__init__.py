"""Gram matrices of Dirichlet monomials on rectangles of the critical strip,
their extended-precision Cholesky factors, and near-return distances of
twisted Dirichlet-series coefficients."""

from .characters import (DirichletCharacter, FiniteSequence, TwistedSequence,
                         character, characters_mod, difference_vector,
                         twisted_term, truncated_vector)
from .errors import (ConfigError, DirichletRecurrenceError, EvaluationFailure,
                     NotPositiveDefinite, PoleAtOne, QuadratureNonConvergence,
                     StabilizationFailure, SupportExceedsOrder)
from .factorize import (UpperFactor, apply_uk, breakdown_order, cholesky,
                        orthonormal_coeffs, orthonormal_function, u_matrix)
from .kernel import (GramTruncation, Rectangle, gram_entry, gram_matrix,
                     inner_product, monomial)
from .lfunc import alternating_eta, hurwitz_zeta, lstar, lstar_l2_distance
from .recurrence import (ScanResult, density_scan, distance, refinement_study,
                         stabilized_distance)

__version__ = "0.1.0"
