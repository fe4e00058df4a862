"""Toeplitz operators with rational symbols on the Hardy space of the circle.

Core objects: polynomials with a clustering root solver, circle-split
factorizations of rational symbols, kernel/cokernel bases with Fredholm
data, pointwise spectral classification and portraits, deficiency indices
for symbols real on the circle, and independent numerical oracles that
cross-check all of it. A FastAPI service wraps the core; the CLI is a thin
in-process client of the same handlers.
"""

from .errors import (
    CancellationError,
    ConstantShiftError,
    CoprimalityError,
    DegreeCapError,
    GenerationError,
    InputError,
    InvalidElementError,
    NonConvergenceError,
    NoValidRotationError,
    NumericalError,
    OracleInapplicableError,
    PhaseJumpError,
    PoleTooCloseError,
    RealnessError,
    TheoryViolationError,
    ToepscopeError,
    UnboundedSymbolError,
    ZeroPolynomialError,
)
from .polynomial import (
    DEGREE_CAP,
    Poly,
    RootSet,
    conj_coeffs,
    from_roots,
    poly_divmod,
    recip_conj,
    reflect,
    roots,
)
from .factorization import (
    CircleSplit,
    RationalSymbol,
    circle_split,
    derived_factors,
    is_real_on_circle,
    make_symbol,
    random_real_symbol,
)
from .operator_analysis import (
    AnalysisReport,
    CayleyPullback,
    RationalFun,
    analyze,
    cayley_pullback,
    cokernel_basis,
    domain_factor,
    domain_membership,
    is_fredholm,
    kernel_basis,
    pullback_residual,
    symbol_times,
)
from .spectral import (
    PortraitGrid,
    SpectralPart,
    SpectrumReport,
    classify,
    on_symbol_curve,
    portrait,
    shifted_numerator,
    winding_number,
)
from .symmetric import (
    DeficiencyReport,
    SymmetryClass,
    deficiency,
    split_R_minus_iS,
    verify_plus_identity,
)
from .verify import (
    FourierWindow,
    ToeplitzMatrix,
    apply_residual,
    decay_ratio,
    deficiency_residual,
    kernel_residual,
    laurent_exact,
    laurent_fft,
    orthogonality_residual,
    toeplitz_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "CancellationError",
    "ConstantShiftError",
    "CoprimalityError",
    "DegreeCapError",
    "GenerationError",
    "InputError",
    "InvalidElementError",
    "NonConvergenceError",
    "NoValidRotationError",
    "NumericalError",
    "OracleInapplicableError",
    "PhaseJumpError",
    "PoleTooCloseError",
    "RealnessError",
    "TheoryViolationError",
    "ToepscopeError",
    "UnboundedSymbolError",
    "ZeroPolynomialError",
    "DEGREE_CAP",
    "Poly",
    "RootSet",
    "conj_coeffs",
    "from_roots",
    "poly_divmod",
    "recip_conj",
    "reflect",
    "roots",
    "CircleSplit",
    "RationalSymbol",
    "circle_split",
    "derived_factors",
    "is_real_on_circle",
    "make_symbol",
    "random_real_symbol",
    "AnalysisReport",
    "CayleyPullback",
    "RationalFun",
    "analyze",
    "cayley_pullback",
    "cokernel_basis",
    "domain_factor",
    "domain_membership",
    "is_fredholm",
    "kernel_basis",
    "pullback_residual",
    "symbol_times",
    "PortraitGrid",
    "SpectralPart",
    "SpectrumReport",
    "classify",
    "on_symbol_curve",
    "portrait",
    "shifted_numerator",
    "winding_number",
    "DeficiencyReport",
    "SymmetryClass",
    "deficiency",
    "split_R_minus_iS",
    "verify_plus_identity",
    "FourierWindow",
    "ToeplitzMatrix",
    "apply_residual",
    "decay_ratio",
    "deficiency_residual",
    "kernel_residual",
    "laurent_exact",
    "laurent_fft",
    "orthogonality_residual",
    "toeplitz_matrix",
    "__version__",
]
