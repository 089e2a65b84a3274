"""Dense real-symmetric linear algebra: eigendecomposition and spectral
function calculus.

The eigensolver is Householder tridiagonalization followed by implicit-shift
QL, running on the compiled kernels when available (see ``backend``).
Everything here is a pure function of its inputs; all outputs are
deterministic for identical input on one platform.
"""

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import NumericError, ValidationError

#: symmetry tolerance: |A_ij - A_ji| <= SYM_RTOL * max(1, |A_ij|)
SYM_RTOL = 1e-12

#: QL sweeps allowed per eigenvalue before declaring non-convergence
MAX_SWEEPS = 50


@dataclass(frozen=True)
class SymMatrix:
    """Immutable dense real symmetric matrix."""

    data: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.data, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValidationError("matrix contains non-finite entries")
        asym = np.abs(a - a.T)
        bound = SYM_RTOL * np.maximum(1.0, np.abs(a))
        if np.any(asym > bound):
            i, j = np.unravel_index(np.argmax(asym - bound), a.shape)
            raise ValidationError(
                f"matrix not symmetric: |A[{i},{j}] - A[{j},{i}]| = {asym[i, j]:.3e}"
            )
        if a is self.data:
            a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def n(self):
        return self.data.shape[0]

    @property
    def norm_max(self):
        return float(np.max(np.abs(self.data))) if self.n else 0.0

    def __add__(self, other):
        return SymMatrix(self.data + other.data)

    def __sub__(self, other):
        return SymMatrix(self.data - other.data)

    def __mul__(self, scalar):
        return SymMatrix(self.data * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in ascending order; eigenvectors as orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=np.float64)
        v = np.asarray(self.eigenvectors, dtype=np.float64)
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)


def eigh(A: SymMatrix) -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric matrix.

    Raises :class:`NumericError` if the QL iteration fails to converge within
    ``MAX_SWEEPS`` sweeps for some eigenvalue.
    """
    n = A.n
    z = A.data.copy()
    d = np.empty(n)
    e = np.empty(n)
    kernels.tridiagonalize(z, d, e)
    status = kernels.ql_implicit(d, e, z, MAX_SWEEPS)
    if status != 0:
        raise NumericError(
            f"QL failed to converge for eigenvalue index {status - 1} "
            f"of a {n}x{n} matrix after {MAX_SWEEPS} sweeps"
        )
    order = np.argsort(d, kind="stable")
    return SpectralDecomposition(d[order], z[:, order])


def apply_spectral_function(A: SymMatrix, f) -> SymMatrix:
    """Evaluate ``f`` on the spectrum of ``A``: returns U f(L) U^T.

    ``f`` is a scalar real function, applied eigenvalue by eigenvalue.
    """
    dec = eigh(A)
    try:
        fw = np.array([float(f(float(w))) for w in dec.eigenvalues])
    except (ZeroDivisionError, OverflowError, ValueError) as exc:
        raise NumericError(f"function evaluation failed on the spectrum: {exc}") from exc
    bad = ~np.isfinite(fw)
    if np.any(bad):
        w = dec.eigenvalues[bad][0]
        raise NumericError(f"function evaluated non-finite at eigenvalue {w!r}")
    v = dec.eigenvectors
    b = (v * fw) @ v.T
    return SymMatrix((b + b.T) / 2.0)


def min_eigenvalue(A: SymMatrix) -> float:
    """Smallest eigenvalue of ``A``."""
    return float(eigh(A).eigenvalues[0])
