"""Split-complex numbers, their calculus, and generalized number systems."""

from .analysis import (
    LorentzConjugate,
    Segment,
    SplitDerivative,
    SplitFunction,
    bounded_entire_function,
    decomposition_residual,
    differentiate,
    integrate,
    l_path,
    line,
    lorentz_conjugate,
    pole_order,
    polyline,
    square_loop,
    wave_operator,
)
from .numbers import (
    ELL,
    ELL_BAR,
    H,
    GeneralizedComplex,
    GeneralizedReport,
    NumberSystem,
    SplitComplex,
    generalized_number,
    lorentz_pairing,
    split_series,
    system_class,
    zero_divisor_lines,
)

__all__ = [
    "ELL",
    "ELL_BAR",
    "GeneralizedComplex",
    "GeneralizedReport",
    "H",
    "LorentzConjugate",
    "NumberSystem",
    "Segment",
    "SplitComplex",
    "SplitDerivative",
    "SplitFunction",
    "bounded_entire_function",
    "decomposition_residual",
    "differentiate",
    "generalized_number",
    "integrate",
    "l_path",
    "line",
    "lorentz_conjugate",
    "lorentz_pairing",
    "pole_order",
    "polyline",
    "split_series",
    "square_loop",
    "system_class",
    "wave_operator",
    "zero_divisor_lines",
]
