"""Exact Kloosterman sums over finite fields, with the verification toolkit
around them: cyclotomic-integer arithmetic, Dickson polynomials, Lucas
sequences and primitive divisors, irreducibility certificates, minimal
polynomials of the sums, and an exhaustive subfield search.
"""

from .cyclotomic import CyclotomicInteger
from .dickson import CarlitzCheck, carlitz_check, dickson_eval, dickson_poly
from .errors import VerificationError
from .fields import FieldElement, FieldSpec, find_irreducible
from .intpoly import IntegerPolynomial
from .irreducibility import (
    IrreducibilityCertificate,
    certify_by_patterns,
    certify_dickson_translate,
    ddf_degree_pattern,
    turnwald_decide,
)
from .kloosterman import (
    KloostermanValue,
    kloosterman_sum,
    kloosterman_sum_naive,
    shifted_sum,
    subfield_kloosterman_sum,
    weil_bound_ok,
)
from .lucas import (
    LucasPair,
    bhv_window_check,
    endgame_sweep,
    lucas_terms,
    no_primitive_divisor_chain,
    primitive_divisor,
    ratio_is_root_of_unity,
)
from .subfield import (
    MinimalPolynomialRecord,
    SearchConfig,
    SearchReport,
    contradiction_replay,
    divisibility_step,
    exhaustive_search,
    lemma9_check,
    minimal_polynomial,
    minimal_polynomial_in_field,
)

__all__ = [
    "CarlitzCheck",
    "CyclotomicInteger",
    "FieldElement",
    "FieldSpec",
    "IntegerPolynomial",
    "IrreducibilityCertificate",
    "KloostermanValue",
    "LucasPair",
    "MinimalPolynomialRecord",
    "SearchConfig",
    "SearchReport",
    "VerificationError",
    "bhv_window_check",
    "carlitz_check",
    "certify_by_patterns",
    "certify_dickson_translate",
    "contradiction_replay",
    "ddf_degree_pattern",
    "dickson_eval",
    "dickson_poly",
    "divisibility_step",
    "endgame_sweep",
    "exhaustive_search",
    "find_irreducible",
    "kloosterman_sum",
    "kloosterman_sum_naive",
    "lemma9_check",
    "lucas_terms",
    "minimal_polynomial",
    "minimal_polynomial_in_field",
    "no_primitive_divisor_chain",
    "primitive_divisor",
    "ratio_is_root_of_unity",
    "shifted_sum",
    "subfield_kloosterman_sum",
    "turnwald_decide",
    "weil_bound_ok",
]

__version__ = "0.1.0"
