"""Exact non-archimedean spectral calculus for compact self-adjoint operators on c0."""

from .c0 import (
    NotOrthogonal,
    NotUnitNorm,
    OrthoSystem,
    Vec0,
    ZeroVector,
    inner_product,
    normal_projection_apply,
    sup_norm,
    validate_orthosystem,
)
from .field import ONE, T, ZERO, DivisionByZero, FieldElem, NormExp, valuation
from .measure import (
    CFunc,
    Clopen,
    InvalidPartition,
    TaggedPartition,
    indicator,
    integrate,
    is_refinement,
    lagrange_interpolate,
    measure_of,
    psi,
    riemann_sum,
)
from .operators import (
    MismatchedSystem,
    OpSY,
    check_self_adjoint,
    norm_by_basis,
    op_add,
    op_apply,
    op_compose,
    op_norm,
    op_power,
    op_scale,
)
from .parsing import ParseError, parse_field_expr
from .spectral import (
    NotCompactPart,
    NotInAlgebra,
    SpecPoint,
    Spectrum,
    SpectrumPoint,
    gelfand_eval,
    resolvent,
    spectral_norm,
    spectrum_of,
    vandermonde_projection,
)

__version__ = "0.1.0"
