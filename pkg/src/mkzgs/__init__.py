"""Meyer-König-Zeller and Baskakov operators with Goodman-Sharma coefficients,
the modified second-order operator and a numerical verification layer."""
from .basis import (TruncationPolicy, baskakov_basis, dtilde_modified_baskakov_basis, mkz_basis,
                    modified_baskakov_basis, modified_mkz_basis, t_factor, t_times_basis, truncation_window)
from .errors import (DivergenceError, DomainError, MKZError, NumericFailure, QuadratureError,
                     SingularityError, TruncationError)
from .functions import REGISTRY, RealFunction, get_function
from .operators import OperatorConfig, OperatorKind, apply, apply_iterated, dtilde_of_modified, materialize
from .quadrature import QuadraturePolicy, u_coeff, v_coeff

__version__ = "0.1.0"

__all__ = [
    "DivergenceError", "DomainError", "MKZError", "NumericFailure", "OperatorConfig", "OperatorKind",
    "QuadraturePolicy", "QuadratureError", "REGISTRY", "RealFunction", "SingularityError",
    "TruncationError", "TruncationPolicy", "apply", "apply_iterated", "baskakov_basis",
    "dtilde_modified_baskakov_basis", "dtilde_of_modified", "get_function", "materialize", "mkz_basis",
    "modified_baskakov_basis", "modified_mkz_basis", "t_factor", "t_times_basis", "truncation_window",
    "u_coeff", "v_coeff",
]
