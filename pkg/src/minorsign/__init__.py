"""Exact principal-minor sign classes and real-eigenvalue counts for real square matrices."""

from .classes import (
    ALL_CLASSES,
    ClassSet,
    Family,
    MatrixClass,
    SignPattern,
    Variant,
    Verdict,
    Violation,
    classify,
    inclusion_violations,
    is_class,
    required_signs,
)
from .descartes import Conclusion, DescartesBound, corollary_conclusion, descartes_bounds, var
from .errors import CapacityError, ContractViolation, InputError, MinorSignError
from .minors import (
    CharPoly,
    MinorTable,
    all_principal_minors,
    char_poly_faddeev,
    char_poly_from_minors,
    principal_minor,
)
from .numeric import Matrix, Polynomial, det, to_rational
from .spectra import (
    EigenCountReport,
    EigenPrediction,
    RootCount,
    check_consistency,
    count_real_roots,
    predict,
    root_count_with_multiplicity,
    squarefree_decompose,
    sturm_chain,
)
from .generator import EntryRange, GenSpec, SplitMix64, Witnesses, generate

__version__ = "0.1.0"

__all__ = [
    "ALL_CLASSES",
    "CapacityError",
    "CharPoly",
    "ClassSet",
    "Conclusion",
    "ContractViolation",
    "DescartesBound",
    "EigenCountReport",
    "EigenPrediction",
    "EntryRange",
    "Family",
    "GenSpec",
    "InputError",
    "Matrix",
    "MatrixClass",
    "MinorSignError",
    "MinorTable",
    "Polynomial",
    "RootCount",
    "SignPattern",
    "SplitMix64",
    "Variant",
    "Verdict",
    "Violation",
    "Witnesses",
    "all_principal_minors",
    "char_poly_faddeev",
    "char_poly_from_minors",
    "check_consistency",
    "classify",
    "corollary_conclusion",
    "count_real_roots",
    "descartes_bounds",
    "det",
    "generate",
    "inclusion_violations",
    "is_class",
    "predict",
    "principal_minor",
    "required_signs",
    "root_count_with_multiplicity",
    "squarefree_decompose",
    "sturm_chain",
    "to_rational",
    "var",
]
