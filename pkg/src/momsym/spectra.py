"""Desk-scale eigenvalue and singular-value routines plus distribution checks.

Wraps dense solves in a small Spectrum type, provides truncated Fourier
sums, and measures how closely an empirical spectrum follows the density
of a symbol: the mean of a test function over the computed values against
its normalized integral over the symbol's domain.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from ._io import atomic_write_text, fmt_real
from .errors import NumericError
from .symbols import _quad_points_env

_HERM_TOL = 1e-10
_GENERAL_MAX_ORDER = 64


class Spectrum:
    """Sorted spectrum values plus the kind of computation that produced them.

    kind "hermitian_eig" and "singular" hold ascending real values;
    "general_eig" holds complex values sorted by (real, imag).
    """

    KINDS = ("hermitian_eig", "singular", "general_eig")

    def __init__(self, values, kind):
        if kind not in self.KINDS:
            raise ValueError(f"unknown spectrum kind {kind!r}")
        if kind == "general_eig":
            v = np.asarray(values, dtype=complex)
            v = v[np.lexsort((v.imag, v.real))]
        else:
            v = np.sort(np.asarray(values, dtype=float))
            if kind == "singular" and v.size and v[0] < 0:
                raise ValueError("singular values must be nonnegative")
        self.values = v
        self.values.flags.writeable = False
        self.kind = kind

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return f"Spectrum(kind={self.kind!r}, n={len(self)})"

    def to_csv_text(self):
        if self.kind == "general_eig":
            lines = [f"{fmt_real(v.real)},{fmt_real(v.imag)}" for v in self.values]
        else:
            lines = [fmt_real(v) for v in self.values]
        return "\n".join(lines) + "\n"

    def write_csv(self, path):
        atomic_write_text(path, self.to_csv_text())


def _as_square(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    return a


def eig_hermitian(a, vectors=False):
    """Ascending real eigenvalues of a Hermitian matrix, optionally with vectors.

    Rejects input whose max deviation from its conjugate transpose exceeds
    1e-10; the solve itself runs on the Hermitian average.
    """
    a = _as_square(a)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > _HERM_TOL:
        raise ValueError("matrix is not Hermitian to 1e-10")
    h = 0.5 * (a + a.conj().T)
    try:
        if vectors:
            w, v = np.linalg.eigh(h)
            return Spectrum(w, "hermitian_eig"), v
        w = np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"Hermitian eigensolve failed: {exc}") from exc
    return Spectrum(w, "hermitian_eig")


def _is_triangular(a):
    lower = np.all(a[np.triu_indices_from(a, 1)] == 0)
    upper = np.all(a[np.tril_indices_from(a, -1)] == 0)
    return lower or upper


def eig_general_small(a):
    """Complex eigenvalues of a small general matrix, sorted by (real, imag).

    Order is capped at 64.  Triangular input and 2x2 input bypass the
    iterative solver: the diagonal, respectively the quadratic formula, give
    the eigenvalues exactly, which matters for defective matrices where
    iterative solvers lose half or more of the working digits.
    """
    a = _as_square(a)
    n = a.shape[0]
    if n > _GENERAL_MAX_ORDER:
        raise ValueError(f"general eigensolve capped at order {_GENERAL_MAX_ORDER}, got {n}")
    if n == 1:
        return Spectrum([a[0, 0]], "general_eig")
    if _is_triangular(a):
        return Spectrum(np.diag(a), "general_eig")
    if n == 2:
        t = a[0, 0] + a[1, 1]
        disc = (a[0, 0] - a[1, 1]) ** 2 + 4 * a[0, 1] * a[1, 0]
        root = np.sqrt(complex(disc))
        return Spectrum([(t - root) / 2, (t + root) / 2], "general_eig")
    try:
        w = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"general eigensolve failed: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise NumericError("general eigensolve produced non-finite values")
    return Spectrum(w, "general_eig")


def singular_values(a):
    """Ascending singular values via the smaller of the two Gram matrices."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("need a matrix")
    gram = a.conj().T @ a if a.shape[0] >= a.shape[1] else a @ a.conj().T
    w = eig_hermitian(gram).values
    return Spectrum(np.sqrt(np.clip(w, 0.0, None)), "singular")


def fourier_sum(f, n, theta):
    """Partial Fourier sum of a scalar univariate symbol: indices |k| <= n-1."""
    if f.d != 1 or not f.is_scalar():
        raise ValueError("fourier_sum needs a scalar univariate symbol")
    n = int(n)
    total = 0j
    for (k,), m in f.coeffs.items():
        if abs(k) <= n - 1:
            total += complex(m[0, 0]) * np.exp(1j * k * float(theta))
    return total


@dataclass
class DistributionReport:
    """Mean of a test function over computed values vs over the symbol."""

    test_function_id: str
    discrete_mean: float
    integral_mean: float
    gap: float
    domain_measure: float


def _test_function(f_id):
    m = re.fullmatch(r"abs_power_(-?\d+)", f_id)
    if m:
        p = int(m.group(1))
        return lambda x: np.abs(x) ** p
    m = re.fullmatch(r"chebyshev_(\d+)", f_id)
    if m:
        cheb = np.polynomial.chebyshev.Chebyshev.basis(int(m.group(1)))
        return lambda x: cheb(np.asarray(x, dtype=float))
    raise ValueError(f"unknown test function id {f_id!r}; use abs_power_P or chebyshev_K")


def _symbol_samples(f, domain, pts_per_dim):
    # tensor midpoint rule per box side; on a full period this matches trapezoid
    axes = [lo + (hi - lo) * (np.arange(pts_per_dim) + 0.5) / pts_per_dim
            for lo, hi in domain]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    return f.sample(pts)


def distribution_test(spec, f, domain=None, f_id="abs_power_1"):
    """Compare spectral and symbol means of a test function.

    discrete side: mean of F over spec.values; integral side: integral of
    F over the symbol on [-pi,pi]^d divided by the domain measure, with the
    symbol's eigenvalues used pointwise when it is matrix valued.  Singular
    spectra compare against |f|.  The gap is reported, never judged: decay
    along a size sweep is the caller's assertion.
    """
    if spec.kind == "general_eig":
        raise ValueError("distribution_test needs a singular or hermitian_eig spectrum")
    F = _test_function(f_id)
    if domain is None:
        domain = [(-math.pi, math.pi)] * f.d
    if len(domain) != f.d:
        raise ValueError("domain arity does not match symbol arity")
    measure = float(np.prod([hi - lo for lo, hi in domain]))
    env = _quad_points_env()
    pts = max(512, env) if env else 512

    samples = _symbol_samples(f, domain, pts)
    if f.s == f.r == 1:
        vals = samples[:, 0, 0]
        if np.max(np.abs(vals.imag), initial=0.0) > 1e-9 * max(1.0, np.max(np.abs(vals))):
            raise ValueError("symbol is not real valued on the grid; cannot compare")
        vals = vals.real
    else:
        herm_dev = np.max(np.abs(samples - samples.conj().transpose(0, 2, 1)))
        if herm_dev > 1e-9:
            raise ValueError("matrix-valued symbol must be Hermitian pointwise")
        vals = np.linalg.eigvalsh(samples).ravel()
    if spec.kind == "singular":
        vals = np.abs(vals)

    discrete = float(np.mean(F(np.asarray(spec.values, dtype=float))))
    integral = float(np.mean(F(vals)))
    if not (np.isfinite(discrete) and np.isfinite(integral)):
        raise NumericError("distribution test produced non-finite means")
    return DistributionReport(
        test_function_id=f_id,
        discrete_mean=discrete,
        integral_mean=integral,
        gap=abs(discrete - integral),
        domain_measure=measure,
    )
