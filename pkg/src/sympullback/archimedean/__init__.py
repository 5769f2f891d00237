"""Archimedean zeta integrals for holomorphic discrete series of GSp(2n, R)."""
from .closed_form import (CriticalRangeWarning, DivergentParameter, GammaQuotient, HighestWeight,
                          InvalidWeight, a_k, a_k_value, arch_std_gamma, b_lambda, b_lambda_at, b_lambda_scalar,
                          b_lambda_via_a_k, beta_ratio, gamma_n_closed, gamma_n_convergence_bound,
                          gamma_quotient_closed, gamma_quotient_expected_poly, gamma_quotient_kappa,
                          gamma_quotient_unsimplified, haar_test_integral, hu_integral_closed,
                          kak_constant, kak_constant_derived, validate_weight)
from .numeric import (DecompositionFailure, MCEstimate, QuadResult, QuadratureSpec, fk_eval,
                      fk_torus, gamma_n_quadrature, haar_test_integral_numeric,
                      hu_integral_quadrature_n1, iwasawa_test_integral_numeric,
                      matrix_coefficient, siegel_iwasawa, zeta_integral_mc)
from .structure import CHECK_NAMES, StructureReport, structure_checks

__all__ = [name for name in dir() if not name.startswith("_")]
