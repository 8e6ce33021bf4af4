"""Exact computations in the quantum matrix algebra O_q(M(m, n)).

Normal ordering of generator products, the bar involution, the dual
canonical basis, quantum minors, broken lines with their minor families,
and quantum seeds with Berenstein-Zelevinsky mutation.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    ExponentMatrix,
    GeneratorWord,
    QuantumMatrixAlgebra,
    algebra,
    level,
    lex_compare,
    normalize,
    normalized_monomial,
    straighten,
)
from .cluster import (
    LineData,
    QuantumSeed,
    build_data,
    check_compatible,
    diamond_check,
    lambda_of,
    mutate,
    quantum_line_mutation,
    reach_minor,
)
from .dcb import dcb, expand_on_dcb
from .errors import QMatrixError
from .laurent import LaurentPoly
from .lines import BrokenLine, all_lines
from .minors import MinorSpec, commutation_exponent, qdet, quantum_minor
from .reports import Report

__all__ = [
    "AlgebraElement", "BrokenLine", "ExponentMatrix", "GeneratorWord", "LaurentPoly", "LineData",
    "MinorSpec", "QMatrixError", "QuantumMatrixAlgebra", "QuantumSeed", "Report", "algebra",
    "all_lines", "build_data", "check_compatible", "commutation_exponent", "dcb", "diamond_check",
    "expand_on_dcb", "lambda_of", "level", "lex_compare", "mutate", "normalize",
    "normalized_monomial", "qdet", "quantum_line_mutation", "quantum_minor", "reach_minor",
    "straighten",
]
