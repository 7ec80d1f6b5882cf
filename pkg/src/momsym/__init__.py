"""Momentary and asymptotic symbols for truncated Toeplitz-like matrices.

Build structured matrices (Toeplitz, multilevel block Toeplitz, circulant,
tridiagonal-plus-corners) from generating functions, sample size-aware and
asymptotic symbols on the exact grids of the corresponding matrix algebras,
and quantify how well each symbol predicts finite-size spectra.
"""

from .analysis import (InterlacingReport, SpectrumReport, compare,
                       interlacing_check, sample_spectrum_approx,
                       verify_tau_decomposition, zero_distribution_stats)
from .errors import NumericError, ParseError
from .examples import (ExampleReport, example1, example2, example3, example4,
                       h2xn_dirichlet_neumann, run_example,
                       second_difference_symbol)
from .grids import (GridSpec, circulant_grid, circulant_real_transform,
                    fourier_matrix, grid_ordering_check, grid_ordering_detail,
                    tau_eigen_grid, tau_eigvec_matrix, uniform_open_grid)
from .matrices import (circulant, identity_rect, kron, matrix_to_csv_text,
                       matrix_to_json_text, multilevel_toeplitz,
                       multilevel_toeplitz_rect, read_matrix_csv,
                       read_matrix_json, shift_matrix, tau_matrix, toeplitz,
                       toeplitz_rect, write_matrix_csv, write_matrix_json)
from .spectra import (DistributionReport, Spectrum, distribution_test,
                      eig_general_small, eig_hermitian, fourier_sum,
                      singular_values)
from .symbols import (CoefficientScaling, LaurentSymbol, MomentarySymbol,
                      block_reinterpret, evaluate_symbol, fourier_coefficients,
                      load_symbol, momentary_add, momentary_evaluate,
                      momentary_mul, parse_scaling, symbol_add,
                      symbol_hermitian, symbol_mul, symmetrize_tridiagonal)

__version__ = "0.1.0"

__all__ = [
    "CoefficientScaling",
    "DistributionReport",
    "ExampleReport",
    "GridSpec",
    "InterlacingReport",
    "LaurentSymbol",
    "MomentarySymbol",
    "NumericError",
    "ParseError",
    "Spectrum",
    "SpectrumReport",
    "block_reinterpret",
    "circulant",
    "circulant_grid",
    "circulant_real_transform",
    "compare",
    "distribution_test",
    "eig_general_small",
    "eig_hermitian",
    "evaluate_symbol",
    "example1",
    "example2",
    "example3",
    "example4",
    "fourier_coefficients",
    "fourier_matrix",
    "fourier_sum",
    "grid_ordering_check",
    "grid_ordering_detail",
    "h2xn_dirichlet_neumann",
    "identity_rect",
    "interlacing_check",
    "kron",
    "load_symbol",
    "matrix_to_csv_text",
    "matrix_to_json_text",
    "momentary_add",
    "momentary_evaluate",
    "momentary_mul",
    "multilevel_toeplitz",
    "multilevel_toeplitz_rect",
    "parse_scaling",
    "read_matrix_csv",
    "read_matrix_json",
    "run_example",
    "sample_spectrum_approx",
    "second_difference_symbol",
    "shift_matrix",
    "singular_values",
    "symbol_add",
    "symbol_hermitian",
    "symbol_mul",
    "symmetrize_tridiagonal",
    "tau_eigen_grid",
    "tau_eigvec_matrix",
    "tau_matrix",
    "toeplitz",
    "toeplitz_rect",
    "uniform_open_grid",
    "verify_tau_decomposition",
    "write_matrix_csv",
    "write_matrix_json",
    "zero_distribution_stats",
]
