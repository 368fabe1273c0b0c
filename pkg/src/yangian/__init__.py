"""Exact finite-dimensional representations of the Yangian Y(sl2)."""

from .character import (
    CharacterElement,
    LElement,
    Sl2Character,
    char_alternating,
    char_formula,
    char_strings,
    char_w,
    dimension_formula,
    direct_character,
    e_of,
    res_character,
    y_element,
)
from .errors import (
    InconsistentEigenvalues,
    InexactDivision,
    NonRationalSpectrum,
    NotHighestWeight,
    PadeError,
    ParseError,
    SubspaceNotInvariant,
    TheoremViolation,
    YangianError,
)
from .hw import (
    DrinfeldPolynomial,
    HighestWeightVector,
    build_irreducible,
    build_w1_chain,
    drinfeld_from_eigenvalues,
    drinfeld_polynomial,
    eigenvalue_expansion,
    hw_vectors,
    is_highest_weight,
    is_irreducible,
)
from .representation import (
    YModule,
    dual,
    evaluation_module,
    generator_matrix,
    quotient,
    submodule,
    tensor,
    trivial_module,
    twist,
    verify_relations,
)
from .scalar import Polynomial, Q, RationalFunction, laurent_expand, pade_reconstruct
from .strings import (
    RootMultiset,
    StringDecomposition,
    StringRange,
    canonical_decomposition,
    in_general_position,
    string_counts,
    yangian_derivative,
)

__version__ = "0.1.0"
