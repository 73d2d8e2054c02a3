"""Exact log-algebraic identities and special L-values of Drinfeld modules
over F_q[theta], with certified infinite-place Laurent arithmetic."""

from drinlog.fields import FieldCtx, build_field, factor_prime_power
from drinlog.poly import (APoly, RatFunc, XPoly, canonical_rep, factor_monic,
                          format_poly, irreducibles_of_degree, is_irreducible,
                          monic_of_degree, parse_poly)
from drinlog.laurent import (LaurentSeries, PrecisionError, ResourceLimit,
                             embed_ratfunc, ramified_root_theta)
from drinlog.twisted import TwistedPoly, brac, phi_of, reduce_mod
from drinlog.drinfeld import DrinfeldModule, carlitz_act, star
from drinlog.frobenius import (FrobeniusData, frobenius_data, hasse_mu_batch,
                               hasse_mu_prime, unit_count,
                               unit_count_linear_algebra)
from drinlog.logalg import (MuTable, block_sum, block_sum_coprime,
                            block_sum_direct, e_block, log_algebraic_poly,
                            mu_sieve, vanishing_index)
from drinlog.lvalues import (CyclotomicElem, DirichletChar, euler_value_dual,
                             goss_L, make_character, smooth_value_dual,
                             special_point, taelman_L, taelman_unit,
                             torsion_check, torsion_root, twisted_L)

__version__ = "0.1.0"

__all__ = [
    "APoly", "CyclotomicElem", "DirichletChar", "DrinfeldModule", "FieldCtx",
    "FrobeniusData", "LaurentSeries", "MuTable", "PrecisionError", "RatFunc",
    "ResourceLimit", "TwistedPoly", "XPoly", "block_sum", "block_sum_coprime",
    "block_sum_direct", "brac", "build_field", "canonical_rep", "carlitz_act",
    "e_block", "embed_ratfunc", "euler_value_dual", "factor_monic",
    "factor_prime_power", "format_poly", "frobenius_data", "goss_L",
    "hasse_mu_batch", "hasse_mu_prime", "irreducibles_of_degree",
    "is_irreducible", "log_algebraic_poly", "make_character",
    "monic_of_degree", "mu_sieve", "parse_poly", "phi_of",
    "ramified_root_theta", "reduce_mod", "smooth_value_dual", "special_point",
    "star", "taelman_L", "taelman_unit", "torsion_check", "torsion_root",
    "twisted_L", "unit_count", "unit_count_linear_algebra", "vanishing_index",
]
