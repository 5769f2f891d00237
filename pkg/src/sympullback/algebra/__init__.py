"""Exact arithmetic: polynomials, rational functions, series, constants, Gamma products."""
from .polynomial import Polynomial, poly_gcd
from .ratfun import PoleAtOrigin, RationalFunction, TruncatedSeries, series_expand
from .scaled import ExpRational, ScaledConstant
from .gamma import (GammaExpression, GammaPoleError, gamma_eval, gamma_exact,
                    gamma_product, gamma_simplify)
from .zeta import bernoulli, zeta_even

__all__ = [
    "Polynomial", "poly_gcd", "RationalFunction", "TruncatedSeries", "series_expand",
    "PoleAtOrigin", "ScaledConstant", "ExpRational", "GammaExpression", "GammaPoleError",
    "gamma_eval", "gamma_exact", "gamma_product", "gamma_simplify", "bernoulli", "zeta_even",
]
