"""specorder: radial bound-state spectra and eigenvalue-ordering certificates
for Hamiltonians of the form T(p^2) + V(r).

Hot kernels run on a compiled extension when available; a pure-numpy fallback
is selected automatically (see :mod:`specorder.backend`).
"""

from .backend import BACKEND
from .linalg import SymMatrix, SpectralDecomposition, eigh, apply_spectral_function, min_eigenvalue
from .basis import (
    BasisSpec,
    r2_matrix,
    p2_matrix,
    potential_matrix,
    kinetic_matrix,
    power_matrix,
    power_sum_matrix,
)
from .hamiltonian import (
    NonRel,
    NonRelTwoBody,
    Salpeter,
    CustomKinetic,
    Coulomb,
    Harmonic,
    TangentHarmonic,
    PowerSum,
    CustomPotential,
    Scaled,
    Level,
    assemble,
    solve_levels,
    optimize_basis_scale,
)
from .flow import (
    FlowSpec,
    FlowResult,
    interpolated_hamiltonian,
    psd_gap,
    flow_levels,
    ordering_report,
    pointwise_ordering,
)
from . import analytic

__version__ = "0.1.0"
