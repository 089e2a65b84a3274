"""Executable form of the eigenvalue-ordering argument: the linear
interpolation path H(a) = (1-a) H1 + a H2, its Hellmann-Feynman derivative
identity dE/da = <psi| H2 - H1 |psi>, positivity of the operator gap, and the
resulting per-level ordering verdicts."""

import math
from dataclasses import dataclass, field, replace
from typing import Tuple

import numpy as np

from .basis import BasisSpec
from .errors import NumericError, ValidationError
from .hamiltonian import KineticSpec, PotentialSpec, assemble
from .linalg import SymMatrix, eigh, min_eigenvalue

#: eigenvalue gap below which a tracked level is flagged degenerate
DEGENERACY_GAP = 1e-10

#: default absolute tolerance on ordering verdicts
DEFAULT_TOL = 1e-8


def _default_grid():
    return np.linspace(0.0, 1.0, 101)


@dataclass(frozen=True)
class FlowSpec:
    """Two endpoint problems sharing one basis, the interpolation grid, and
    the (n, l) levels to track.  The basis l is a template: each tracked l is
    solved in its own block with the same size and oscillator length."""

    endpoint1: Tuple[KineticSpec, PotentialSpec]
    endpoint2: Tuple[KineticSpec, PotentialSpec]
    basis: BasisSpec
    a_grid: np.ndarray = field(default_factory=_default_grid)
    levels: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        grid = np.asarray(self.a_grid, dtype=np.float64)
        if grid.ndim != 1 or grid.size < 2:
            raise ValidationError("a_grid must be a 1-d array with at least 2 samples")
        if np.any(np.diff(grid) <= 0):
            raise ValidationError("a_grid must be strictly ascending")
        if grid[0] != 0.0 or grid[-1] != 1.0:
            raise ValidationError("a_grid must start at 0 and end at 1")
        grid.setflags(write=False)
        object.__setattr__(self, "a_grid", grid)
        levels = tuple((int(n), int(l)) for n, l in self.levels)
        if not levels:
            levels = ((0, self.basis.l),)
        for n, l in levels:
            if n < 0 or l < 0:
                raise ValidationError(f"invalid tracked level (n={n}, l={l})")
            if n >= self.basis.size:
                raise ValidationError(
                    f"tracked level n={n} outside basis of size {self.basis.size}"
                )
        object.__setattr__(self, "levels", levels)

    def endpoint_matrices(self, l=None):
        """Assembled (H1, H2) in the shared basis at angular momentum ``l``."""
        basis = self.basis if l is None else replace(self.basis, l=l)
        t1, v1 = self.endpoint1
        t2, v2 = self.endpoint2
        return assemble(t1, v1, basis), assemble(t2, v2, basis)


@dataclass(frozen=True)
class LevelFlow:
    """Samples along the path for one tracked level."""

    n: int
    l: int
    a: np.ndarray
    energy: np.ndarray
    hf_expectation: np.ndarray
    fd_derivative: np.ndarray
    degenerate: np.ndarray  # bool per sample; HF residual unreliable there


@dataclass(frozen=True)
class FlowResult:
    """All tracked level flows plus summary verdicts."""

    levels: dict  # (n, l) -> LevelFlow
    max_hf_residual: float
    monotone: bool
    endpoint_ordered: bool
    tol: float


def interpolated_hamiltonian(spec: FlowSpec, a: float, l=None) -> SymMatrix:
    """(1-a) H1 + a H2; the endpoints are returned exactly."""
    if not 0.0 <= a <= 1.0:
        raise ValidationError(f"interpolation parameter a={a!r} outside [0, 1]")
    h1, h2 = spec.endpoint_matrices(l)
    if a == 0.0:
        return h1
    if a == 1.0:
        return h2
    return (1.0 - a) * h1 + a * h2

def psd_gap(spec: FlowSpec, l=None) -> float:
    """Smallest eigenvalue of H2 - H1 on the truncated space; a value
    >= -tol certifies the positivity hypothesis there."""
    h1, h2 = spec.endpoint_matrices(l)
    return min_eigenvalue(h2 - h1)


def _richardson(energy, h):
    """Second-order differences at steps h and 2h combined to fourth order."""
    n = energy.size
    out = np.empty(n)
    for i in range(n):
        if 2 <= i <= n - 3:
            d1 = (energy[i + 1] - energy[i - 1]) / (2 * h)
            d2 = (energy[i + 2] - energy[i - 2]) / (4 * h)
        elif i <= 1:
            d1 = (-3 * energy[i] + 4 * energy[i + 1] - energy[i + 2]) / (2 * h)
            d2 = (-3 * energy[i] + 4 * energy[i + 2] - energy[i + 4]) / (4 * h)
        else:
            d1 = (3 * energy[i] - 4 * energy[i - 1] + energy[i - 2]) / (2 * h)
            d2 = (3 * energy[i] - 4 * energy[i - 2] + energy[i - 4]) / (4 * h)
        out[i] = (4 * d1 - d2) / 3
    return out


def flow_levels(spec: FlowSpec, tol: float = DEFAULT_TOL, refine: bool = False) -> FlowResult:
    """Diagonalize along the path and record E(a), the Hellmann-Feynman
    expectation <psi| H2 - H1 |psi>, and a finite-difference dE/da.

    The derivative is a second-order central difference (one-sided at the
    endpoints); ``refine=True`` applies Richardson extrapolation on a uniform
    grid (needs at least 6 samples).
    """
    grid = spec.a_grid
    steps = np.diff(grid)
    uniform = np.allclose(steps, steps[0], rtol=1e-12, atol=0.0)
    if refine and (not uniform or grid.size < 6):
        raise ValidationError("refine=True needs a uniform a_grid with >= 6 samples")

    by_l = {}
    for n, l in spec.levels:
        by_l.setdefault(l, []).append(n)

    flows = {}
    for l, ns in sorted(by_l.items()):
        h1, h2 = spec.endpoint_matrices(l)
        diff = (h2 - h1).data
        size = h1.n
        energies = {n: np.empty(grid.size) for n in ns}
        hf = {n: np.empty(grid.size) for n in ns}
        degen = {n: np.zeros(grid.size, dtype=bool) for n in ns}
        for k, a in enumerate(grid):
            dec = eigh(interpolated_hamiltonian(spec, float(a), l))
            w, v = dec.eigenvalues, dec.eigenvectors
            for n in ns:
                energies[n][k] = w[n]
                psi = v[:, n]
                hf[n][k] = float(psi @ diff @ psi)
                gap = min(
                    w[n] - w[n - 1] if n > 0 else math.inf,
                    w[n + 1] - w[n] if n + 1 < size else math.inf,
                )
                if gap < DEGENERACY_GAP:
                    degen[n][k] = True
        for n in ns:
            if refine:
                fd = _richardson(energies[n], float(steps[0]))
            else:
                fd = np.gradient(energies[n], grid, edge_order=2)
            flows[(n, l)] = LevelFlow(
                n=n,
                l=l,
                a=grid,
                energy=energies[n],
                hf_expectation=hf[n],
                fd_derivative=fd,
                degenerate=degen[n],
            )

    residual = 0.0
    monotone = True
    ordered = True
    for lf in flows.values():
        ok = ~lf.degenerate
        if np.any(ok):
            residual = max(residual, float(np.max(np.abs(lf.fd_derivative - lf.hf_expectation)[ok])))
        if np.any(np.diff(lf.energy) < -tol):
            monotone = False
        if lf.energy[0] > lf.energy[-1] + tol:
            ordered = False
    return FlowResult(
        levels=flows,
        max_hf_residual=residual,
        monotone=monotone,
        endpoint_ordered=ordered,
        tol=tol,
    )


@dataclass(frozen=True)
class LevelVerdict:
    """Ordering verdict for one tracked level."""

    n: int
    l: int
    e1: float
    e2: float
    delta: float
    endpoint_ordered: bool
    monotone: bool
    hf_nonnegative: bool

    @property
    def all_ok(self):
        return self.endpoint_ordered and self.monotone and self.hf_nonnegative


def ordering_report(spec: FlowSpec, tol: float = DEFAULT_TOL) -> dict:
    """Per-level ordering verdicts along the flow; keys are (n, l)."""
    result = flow_levels(spec, tol=tol)
    report = {}
    for key, lf in result.levels.items():
        report[key] = LevelVerdict(
            n=lf.n,
            l=lf.l,
            e1=float(lf.energy[0]),
            e2=float(lf.energy[-1]),
            delta=float(lf.energy[-1] - lf.energy[0]),
            endpoint_ordered=bool(lf.energy[0] <= lf.energy[-1] + tol),
            monotone=bool(np.all(np.diff(lf.energy) >= -tol)),
            hf_nonnegative=bool(np.all(lf.hf_expectation >= -tol)),
        )
    return report


@dataclass(frozen=True)
class PointwiseVerdict:
    """Sampled pointwise-ordering check (not a proof)."""

    min_difference: float
    at: float
    ordered: bool


def pointwise_ordering(f1, f2, grid, tol: float = DEFAULT_TOL) -> PointwiseVerdict:
    """Minimum of f2 - f1 over a positive sample grid and its location."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0 or np.any(grid <= 0) or not np.all(np.isfinite(grid)):
        raise ValidationError("grid must be non-empty, positive, and finite")
    worst = math.inf
    at = grid[0]
    for x in grid:
        try:
            d = float(f2(float(x))) - float(f1(float(x)))
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise NumericError(f"evaluation failed at sample point {x!r}: {exc}") from exc
        if not math.isfinite(d):
            raise NumericError(f"non-finite difference at sample point {x!r}")
        if d < worst:
            worst = d
            at = float(x)
    return PointwiseVerdict(min_difference=worst, at=at, ordered=worst >= -tol)
