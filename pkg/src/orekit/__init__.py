"""Exact arithmetic in Ore extensions R[x; sigma, delta] and executable checks
of their structure theory over fields, semisimple rings and a shift ring."""

from .errors import *  # noqa: F401,F403
from .scalars import (FieldEndo, FieldSigmaDeriv, Poly, PrimeField, RatFn,
                      RationalFunctionField, prime_field, ratfn_normalize, verify_quantization)
from .semisimple import (BasisDeriv, Matrix, SSDeriv, SSElem, SSEndo, SSRing, orbits,
                         solve_inner, udim_ss, verify_endomorphism, verify_sigma_derivation)
from .ore import (OreContext, SkewPoly, extend_sigma_to_ore, leading_coeff_module,
                  left_divide, left_gcd_lclm, nilpotency_search, skew_mul)
from .jordan import JordanDerivation, JordanRing, TowerElem, LaurentRing

__version__ = "0.1.0"
