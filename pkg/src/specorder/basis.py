"""Truncated radial harmonic-oscillator basis at fixed angular momentum.

Matrix elements of r^2 and p^2 are tridiagonal in this basis; arbitrary V(r)
and T(p^2) are represented through spectral function calculus on those two
matrices.  Natural units (hbar = c = 1) throughout.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericError, ValidationError
from .linalg import SymMatrix, eigh

# Off-diagonal sign convention (frozen): r^2 couplings negative, p^2 couplings
# positive.  With b^4 = 1/(2 mu lambda) the off-diagonals of p^2/(2 mu) +
# lambda r^2 then cancel exactly.


@dataclass(frozen=True)
class BasisSpec:
    """Radial oscillator basis: states n = 0..size-1 at angular momentum l,
    oscillator length b."""

    l: int
    size: int
    b: float = 1.0

    def __post_init__(self):
        if not isinstance(self.l, (int, np.integer)) or self.l < 0:
            raise ValidationError(f"l must be a non-negative integer, got {self.l!r}")
        if not isinstance(self.size, (int, np.integer)) or self.size < 2:
            raise ValidationError(f"basis size must be an integer >= 2, got {self.size!r}")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise ValidationError(f"oscillator length b must be positive, got {self.b!r}")


def _tridiag(diag, off):
    a = np.diag(diag)
    idx = np.arange(len(diag) - 1)
    a[idx, idx + 1] = off
    a[idx + 1, idx] = off
    return SymMatrix(a)


def r2_matrix(basis: BasisSpec) -> SymMatrix:
    """Matrix of r^2: diagonal b^2 (2n + l + 3/2), couplings
    -b^2 sqrt(n (n + l + 1/2)) between n-1 and n."""
    n = np.arange(basis.size)
    diag = basis.b**2 * (2 * n + basis.l + 1.5)
    m = n[1:]
    off = -(basis.b**2) * np.sqrt(m * (m + basis.l + 0.5))
    return _tridiag(diag, off)


def p2_matrix(basis: BasisSpec) -> SymMatrix:
    """Matrix of p^2: same structure as r^2 with b^2 -> 1/b^2 and positive
    couplings."""
    n = np.arange(basis.size)
    diag = (2 * n + basis.l + 1.5) / basis.b**2
    m = n[1:]
    off = np.sqrt(m * (m + basis.l + 0.5)) / basis.b**2
    return _tridiag(diag, off)


def _mesh_function(op: SymMatrix, func, kind: str) -> SymMatrix:
    """Spectral calculus on a positive operator: evaluate ``func`` on the
    square roots of its eigenvalues."""
    dec = eigh(op)
    if dec.eigenvalues[0] <= 0:
        raise NumericError(
            f"{kind} mesh not positive: smallest eigenvalue {dec.eigenvalues[0]!r}"
        )
    pts = np.sqrt(dec.eigenvalues)
    vals = np.empty_like(pts)
    for i, x in enumerate(pts):
        try:
            y = float(func(float(x)))
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise NumericError(f"{kind} function failed at mesh point {x!r}: {exc}") from exc
        if not math.isfinite(y):
            raise NumericError(f"{kind} function non-finite at mesh point {x!r}")
        vals[i] = y
    v = dec.eigenvectors
    b = (v * vals) @ v.T
    return SymMatrix((b + b.T) / 2.0)


def potential_matrix(basis: BasisSpec, V) -> SymMatrix:
    """Matrix of a radial potential V(r) via function calculus on r^2."""
    return _mesh_function(r2_matrix(basis), V, "radial")


def _laguerre_nodes(m, alpha):
    """Roots of the degree-m generalized Laguerre polynomial, from the
    eigenvalues of its Jacobi matrix."""
    i = np.arange(m)
    diag = 2 * i + alpha + 1
    j = np.arange(1, m)
    off = np.sqrt(j * (j + alpha))
    return eigh(_tridiag(diag, off)).eigenvalues


def _orthonormal_values(count, alpha, t):
    """Values p_n(t) of the polynomials orthonormal under t^alpha e^-t dt,
    n = 0..count-1, by the three-term recurrence."""
    p = np.zeros((count, t.size))
    p[0] = 1.0 / math.sqrt(math.gamma(alpha + 1))
    if count > 1:
        p[1] = (t - (alpha + 1)) * p[0] / math.sqrt(1 + alpha)
    for n in range(1, count - 1):
        bn = math.sqrt(n * (n + alpha))
        bn1 = math.sqrt((n + 1) * (n + 1 + alpha))
        p[n + 1] = ((t - (2 * n + alpha + 1)) * p[n] - bn * p[n - 1]) / bn1
    return p


@lru_cache(maxsize=128)
def _power_core(l, size, eta):
    """Matrix of (r/b)^eta in the oscillator basis, exact up to rounding.

    The radial integral reduces to polynomials of degree <= 2 size - 2 under
    the weight t^(l + 1/2 + eta/2) e^-t, so Gauss quadrature at size + 2
    nodes is exact.  Weights come from the Christoffel function, which stays
    inside double range where the eigenvector-based formula underflows.
    """
    alpha = l + 0.5
    shifted = alpha + eta / 2.0
    if shifted <= -1.0:
        raise NumericError(
            f"r^{eta:g} is not integrable against the l={l} basis weight"
        )
    m = size + 2
    t = _laguerre_nodes(m, shifted)
    p = _orthonormal_values(m, shifted, t)
    w = 1.0 / np.einsum("nk,nk->k", p, p)
    q = _orthonormal_values(size, alpha, t) * np.sqrt(w)
    g = q @ q.T
    phase = (-1.0) ** np.arange(size)
    g = (phase[:, None] * phase[None, :]) * g
    g = (g + g.T) / 2.0
    g.setflags(write=False)
    return g


def power_matrix(basis: BasisSpec, eta: float) -> SymMatrix:
    """Exact matrix of r^eta (eta > -2l - 3) in the basis."""
    return SymMatrix(basis.b**eta * _power_core(basis.l, basis.size, float(eta)))


def power_sum_matrix(basis: BasisSpec, terms) -> SymMatrix:
    """Exact matrix of a sum of g r^eta terms over (g, eta) pairs."""
    acc = np.zeros((basis.size, basis.size))
    for g, eta in terms:
        if eta == 0.0:
            acc[np.diag_indices(basis.size)] += g
        else:
            acc += g * basis.b**eta * _power_core(basis.l, basis.size, float(eta))
    return SymMatrix(acc)


def kinetic_matrix(basis: BasisSpec, T) -> SymMatrix:
    """Matrix of a kinetic operator T(p^2) via function calculus on p^2."""
    dec = eigh(p2_matrix(basis))
    vals = np.empty_like(dec.eigenvalues)
    for i, x in enumerate(dec.eigenvalues):
        try:
            y = float(T(float(x)))
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise NumericError(f"kinetic function failed at p^2 eigenvalue {x!r}: {exc}") from exc
        if not math.isfinite(y):
            raise NumericError(f"kinetic function non-finite at p^2 eigenvalue {x!r}")
        vals[i] = y
    v = dec.eigenvectors
    b = (v * vals) @ v.T
    return SymMatrix((b + b.T) / 2.0)
