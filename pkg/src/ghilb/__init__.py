"""Exact divided powers, the Grothendieck-Deligne norm, and blow-up charts of symmetric products."""
from .algebra import FiniteAlgebra, geometric_sigma
from .charts import (
    ChartAlgebra,
    ChartFraction,
    PointConfig,
    chart_algebra,
    chart_specialize,
    etale_family_coeffs,
    eval_point,
    kernel_check,
    pluecker_coords,
    powersum_generation_check,
    separating_tuple,
    split_algebra,
    transition_check,
    universal_coeff,
)
from .divided import (
    NormIdealGens,
    box_cofactors,
    delta,
    delta_nu,
    delta_star,
    gamma,
    internal_mul,
    margin_product,
    margin_systems,
    norm_ideal_generators,
    shuffle,
    unit,
)
from .errors import GhilbError
from .kernels import BACKEND
from .norm import AlgebraMap, norm_ideal_image, norm_value, pid_ideal_equal, reduce_symmetric_tensor
from .rings import GF, QQ, ZZ, BaseRing, Poly, PolyRing, parse_poly
from .tensor import SymTensor, TensorElem, nu_vector, orbit_compress, orbit_expand

__version__ = "0.1.0"

__all__ = [
    "AlgebraMap",
    "BACKEND",
    "BaseRing",
    "ChartAlgebra",
    "ChartFraction",
    "FiniteAlgebra",
    "GF",
    "GhilbError",
    "NormIdealGens",
    "PointConfig",
    "Poly",
    "PolyRing",
    "QQ",
    "SymTensor",
    "TensorElem",
    "ZZ",
    "box_cofactors",
    "chart_algebra",
    "chart_specialize",
    "delta",
    "delta_nu",
    "delta_star",
    "etale_family_coeffs",
    "eval_point",
    "gamma",
    "geometric_sigma",
    "internal_mul",
    "kernel_check",
    "margin_product",
    "margin_systems",
    "norm_ideal_generators",
    "norm_ideal_image",
    "norm_value",
    "nu_vector",
    "orbit_compress",
    "orbit_expand",
    "parse_poly",
    "pid_ideal_equal",
    "pluecker_coords",
    "powersum_generation_check",
    "reduce_symmetric_tensor",
    "separating_tuple",
    "shuffle",
    "split_algebra",
    "transition_check",
    "unit",
    "universal_coeff",
]
