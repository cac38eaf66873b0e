"""polykit: polynomial coefficients from roots via FFT, and related tasks."""
from ._kernels import BACKEND
from .coeffs import (
    eval_horner,
    eval_product,
    fft_coefficients,
    fft_coefficients_scaled,
    get_solver,
    leja_coefficients,
    leja_order,
    recursive_coefficients,
    reduce_root,
    symmetric_functions,
    with_scaling,
)
from .errors import (
    PolykitError,
    PolynomialOverflowError,
    RootError,
    SingularityError,
)
from .interpolation import (
    DataSet,
    coefficients_fft,
    coefficients_vandermonde,
    interpolation_coefficients,
)
from .vandermonde import InverseVandermonde, invert, iter_columns

__version__ = "0.1.0"
