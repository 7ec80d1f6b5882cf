"""Sampling grids and transform matrices for the tau and circulant algebras.

Each (eps, phi) corner-correction pair has its own exact eigenvalue grid of
the form theta_j = (j + a) * pi / (n + b), j = 1..n, together with a real
orthogonal sine-type transform Q that diagonalizes the corresponding
tridiagonal-plus-corners matrix.  Circulants get the equispaced grid
(j - 1) * 2*pi / n, the unitary Fourier matrix, and a real orthogonal
alternative valid for the symmetric case.
"""

import math

import numpy as np

from .errors import ParseError

# (eps, phi) -> (a, b): grid theta_j = (j + a) pi / (n + b), denominator h = 1/(n+b)
_TAU_PARAMS = {
    (-1, -1): (0.0, 0.0),
    (-1, 0): (0.0, 0.5),
    (-1, 1): (-0.5, 0.0),
    (0, -1): (0.0, 0.5),
    (0, 0): (0.0, 1.0),
    (0, 1): (-0.5, 0.5),
    (1, -1): (-0.5, 0.0),
    (1, 0): (-0.5, 0.5),
    (1, 1): (-1.0, 0.0),
}


def _check_pair(eps, phi):
    key = (int(eps), int(phi))
    if key != (eps, phi) or key not in _TAU_PARAMS:
        raise ValueError(f"unsupported corner pair ({eps}, {phi}); both must be -1, 0 or 1")
    return key


def tau_grid_params(eps, phi):
    """(a, b) with grid angles (j + a) pi / (n + b); b also fixes h = 1/(n+b)."""
    return _TAU_PARAMS[_check_pair(eps, phi)]


def tau_eigen_grid(eps, phi, n):
    """Exact eigenvalue angles for tau_matrix(f, eps, phi, n), ascending, j=1..n."""
    a, b = tau_grid_params(eps, phi)
    n = int(n)
    if n < 1:
        raise ValueError("grid length must be positive")
    j = np.arange(1, n + 1, dtype=float)
    return (j + a) * math.pi / (n + b)


def tau_eigvec_matrix(eps, phi, n):
    """Real orthogonal Q with columns eigenvectors of tau_matrix(., eps, phi, n).

    Entries sqrt(2h) sin(Theta_ij) with h = 1/(n+b); the row angle pattern
    depends only on eps.  The boundary column whose raw entries have doubled
    norm (last for (-1,-1), first for (1,1)) is scaled by 1/sqrt(2).
    """
    key = _check_pair(eps, phi)
    n = int(n)
    if n < 1:
        raise ValueError("matrix order must be positive")
    _, b = _TAU_PARAMS[key]
    theta = tau_eigen_grid(eps, phi, n)
    i = np.arange(1, n + 1, dtype=float)[:, None]
    if key[0] == -1:
        big = (i - 0.5) * theta[None, :]
    elif key[0] == 0:
        big = i * theta[None, :]
    else:
        big = (i - 0.5) * theta[None, :] + math.pi / 2
    h = 1.0 / (n + b)
    q = math.sqrt(2.0 * h) * np.sin(big)
    if key == (-1, -1):
        q[:, -1] /= math.sqrt(2.0)
    elif key == (1, 1):
        q[:, 0] /= math.sqrt(2.0)
    return q


def uniform_open_grid(n):
    """n equispaced angles j pi/(n+1) strictly inside (0, pi)."""
    n = int(n)
    if n < 1:
        raise ValueError("grid length must be positive")
    return np.arange(1, n + 1, dtype=float) * math.pi / (n + 1)


def circulant_grid(n):
    """Angles (j-1) 2 pi / n, j=1..n."""
    n = int(n)
    if n < 1:
        raise ValueError("grid length must be positive")
    return np.arange(n, dtype=float) * 2.0 * math.pi / n


def fourier_matrix(n):
    """Unitary F with F[i,j] = exp(1i (i-1) theta_j) / sqrt(n); diagonalizes circulants."""
    n = int(n)
    if n < 1:
        raise ValueError("matrix order must be positive")
    theta = circulant_grid(n)
    i = np.arange(n)[:, None]
    return np.exp(1j * i * theta[None, :]) / math.sqrt(n)


def circulant_real_transform(n):
    """Real orthogonal Q diagonalizing real symmetric circulants of order n.

    Entries sqrt(2/n) sin(Theta_ij) where the first floor((n+2)/2) columns get
    a pi/2 phase shift; columns 1 and n/2+1 (the latter only for even n) are
    scaled by 1/sqrt(2).
    """
    n = int(n)
    if n < 1:
        raise ValueError("matrix order must be positive")
    theta = circulant_grid(n)
    i = np.arange(1, n + 1, dtype=float)[:, None]
    big = i * theta[None, :]
    ncos = (n + 2) // 2
    big[:, :ncos] += math.pi / 2
    q = math.sqrt(2.0 / n) * np.sin(big)
    q[:, 0] /= math.sqrt(2.0)
    if n % 2 == 0:
        q[:, n // 2] /= math.sqrt(2.0)
    return q


class GridSpec:
    """A named sampling grid; angles are generated for a length given later.

    Families: "tau" (with corner weights eps, phi), "circulant",
    "uniform-open", and "custom" (a fixed list of angles).
    """

    def __init__(self, family, eps=None, phi=None, angles_list=None):
        family = str(family)
        if family == "tau":
            _check_pair(eps, phi)
            self.eps, self.phi = int(eps), int(phi)
        elif family in ("circulant", "uniform-open"):
            self.eps = self.phi = None
        elif family == "custom":
            if angles_list is None:
                raise ValueError("custom grid needs an explicit angle list")
            self.eps = self.phi = None
        else:
            raise ValueError(f"unknown grid family {family!r}")
        self.family = family
        self._angles = None if angles_list is None else np.asarray(angles_list, dtype=float)

    @classmethod
    def tau(cls, eps, phi):
        return cls("tau", eps, phi)

    @classmethod
    def parse(cls, text):
        """Parse a CLI grid name: "tau:EPS,PHI", "circulant" or "uniform-open"."""
        text = str(text).strip()
        if text in ("circulant", "uniform-open"):
            return cls(text)
        if text.startswith("tau:"):
            parts = text[4:].split(",")
            if len(parts) != 2:
                raise ParseError(f"bad tau grid name {text!r}; expected tau:EPS,PHI")
            try:
                eps, phi = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(f"bad tau grid name {text!r}: {exc}") from exc
            try:
                return cls("tau", eps, phi)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        raise ParseError(f"unknown grid name {text!r}")

    def name(self):
        if self.family == "tau":
            return f"tau:{self.eps},{self.phi}"
        return self.family

    def angles(self, n):
        if self.family == "tau":
            return tau_eigen_grid(self.eps, self.phi, n)
        if self.family == "circulant":
            return circulant_grid(n)
        if self.family == "uniform-open":
            return uniform_open_grid(n)
        if len(self._angles) != int(n):
            raise ValueError(f"custom grid has {len(self._angles)} angles, asked for {n}")
        return self._angles.copy()

    def __eq__(self, other):
        return (isinstance(other, GridSpec) and self.name() == other.name()
                and (self._angles is None) == (other._angles is None)
                and (self._angles is None or np.array_equal(self._angles, other._angles)))

    def __repr__(self):
        return f"GridSpec({self.name()!r})"


# The ordering chain across the nine grids, per index j.  Equalities are exact
# by construction; every strict comparison below holds for all j except the
# (-1,1) vs (0,0) link, which reverses: (j-1/2)/n < j/(n+1) iff 2j < n+1, since
# cross-multiplying gives (j-1/2)(n+1) - jn = j - (n+1)/2.
_CHAIN = [
    ("tau(1,1) < tau(0,1)", (1, 1), "<", (0, 1), None),
    ("tau(0,1) = tau(1,0)", (0, 1), "=", (1, 0), None),
    ("tau(1,0) < tau(-1,1)", (1, 0), "<", (-1, 1), None),
    ("tau(-1,1) = tau(1,-1)", (-1, 1), "=", (1, -1), None),
    ("tau(-1,1) < tau(0,0)", (-1, 1), "<", (0, 0), "2j < n+1"),
    ("tau(0,0) < tau(-1,0)", (0, 0), "<", (-1, 0), None),
    ("tau(-1,0) = tau(0,-1)", (-1, 0), "=", (0, -1), None),
    ("tau(-1,0) < tau(-1,-1)", (-1, 0), "<", (-1, -1), None),
]


def grid_ordering_detail(n):
    """Per-link report for the cross-grid ordering chain at length n.

    Returns a dict mapping link labels to dicts with keys "holds_for_all_j"
    (bool) and "failing_j" (1-based indices where the plain relation fails).
    """
    n = int(n)
    out = {}
    for label, left, rel, right, _ in _CHAIN:
        gl = tau_eigen_grid(*left, n)
        gr = tau_eigen_grid(*right, n)
        ok = gl == gr if rel == "=" else gl < gr
        out[label] = {
            "holds_for_all_j": bool(np.all(ok)),
            "failing_j": [int(j + 1) for j in np.flatnonzero(~ok)],
        }
    return out


def grid_ordering_check(n):
    """Verify the cross-grid ordering chain on its exact range of validity.

    Seven of the eight links hold for every index j; the comparison between
    the (-1,1) and (0,0) grids holds exactly when 2j < n+1 and reverses
    beyond that point (the two grids cross mid-spectrum; at 2j = n+1 both
    angles are pi/2, equal up to rounding).  This check verifies each
    equality exactly, each universal strict inequality for all j, and the
    crossing link on both sides of its threshold, so True certifies the
    complete set of orderings that actually hold.
    """
    n = int(n)
    if n < 1:
        raise ValueError("grid length must be positive")
    j = np.arange(1, n + 1)
    for label, left, rel, right, restriction in _CHAIN:
        gl = tau_eigen_grid(*left, n)
        gr = tau_eigen_grid(*right, n)
        if rel == "=":
            if not np.array_equal(gl, gr):
                return False
        elif restriction is None:
            if not np.all(gl < gr):
                return False
        else:
            lo = 2 * j < n + 1
            hi = 2 * j > n + 1
            tie = ~lo & ~hi
            if not (np.all(gl[lo] < gr[lo]) and np.all(gl[hi] > gr[hi])
                    and np.all(np.abs(gl[tie] - gr[tie]) <= 8 * np.finfo(float).eps)):
                return False
    return True
