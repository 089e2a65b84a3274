"""Built-in verification suite.

Each criterion returns a :class:`CriterionResult`; the CLI ``verify``
subcommand and the acceptance test module both run these.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import analytic
from .basis import BasisSpec
from .errors import NumericError
from .flow import FlowSpec, flow_levels, psd_gap
from .hamiltonian import (
    Coulomb,
    Harmonic,
    NonRel,
    NonRelTwoBody,
    Salpeter,
    Scaled,
    TangentHarmonic,
    assemble,
    optimize_basis_scale,
    solve_levels,
)
from .linalg import SymMatrix, eigh


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    details: str
    seconds: float


def _result(name, measured, tolerance, details, t0, passed=None):
    if passed is None:
        passed = measured <= tolerance
    return CriterionResult(
        name=name,
        passed=bool(passed),
        measured=float(measured),
        tolerance=float(tolerance),
        details=details,
        seconds=time.perf_counter() - t0,
    )


def crit_ho_exactness():
    """Oscillator spectrum reproduced to 1e-10 relative at matched b."""
    t0 = time.perf_counter()
    mu, lam = 1.0, 0.5
    b = (1.0 / (2.0 * mu * lam)) ** 0.25
    worst = 0.0
    for l in (0, 1, 2):
        basis = BasisSpec(l=l, size=20, b=b)
        levels = solve_levels(NonRel(mu), Harmonic(lam), basis, 5)
        for lv in levels:
            exact = analytic.ho_energy(mu, lam, lv.n, l)
            worst = max(worst, abs(lv.E - exact) / abs(exact))
    return _result("ho_exactness", worst, 1e-10, "max relative error, l in {0,1,2}, 5 levels", t0)


def crit_coulomb_convergence():
    """Coulomb levels at N=150 with optimized b match the closed form to 1e-4."""
    t0 = time.perf_counter()
    mu, kappa = 1.0, 1.0
    worst = 0.0
    for l in (0, 1):
        for n in range(3):
            if n + l > 2:
                continue
            basis = BasisSpec(l=l, size=150, b=1.0)
            opt = optimize_basis_scale(NonRel(mu), Coulomb(kappa), basis, target=n)
            exact = analytic.coulomb_energy(mu, kappa, n, l)
            worst = max(worst, abs(opt.energy - exact))
    return _result("coulomb_convergence", worst, 1e-4, "max absolute error over n+l<=2", t0)


def crit_level_difference():
    """Numeric tangent-harmonic minus Coulomb gap matches the closed form."""
    t0 = time.perf_counter()
    worst = 0.0
    for n, l in ((0, 0), (1, 0), (0, 1)):
        b1 = BasisSpec(l=l, size=150, b=1.0)
        e1 = optimize_basis_scale(NonRel(1.0), Coulomb(1.0), b1, target=n).energy
        e2 = optimize_basis_scale(NonRel(1.0), TangentHarmonic(1.0, 1.0), b1, target=n).energy
        worst = max(worst, abs((e2 - e1) - analytic.level_difference(1.0, 1.0, 1.0, n, l)))
    return _result("level_difference", worst, 2e-3, "max absolute gap error, 3 levels", t0)


def _comparison_scenarios(size=30):
    """The three operator-ordering scenarios: tangent potential, kinetic
    replacement, coupling scaling."""
    basis = BasisSpec(l=0, size=size, b=1.0)
    return [
        (
            "coulomb_vs_tangent",
            FlowSpec(
                endpoint1=(NonRel(1.0), Coulomb(1.0)),
                endpoint2=(NonRel(1.0), TangentHarmonic(1.0, 1.0)),
                basis=basis,
                a_grid=np.linspace(0.0, 1.0, 21),
                levels=((0, 0), (1, 0)),
            ),
        ),
        (
            "salpeter_vs_nonrel_rest",
            FlowSpec(
                endpoint1=(Salpeter(1.0), Coulomb(0.5)),
                endpoint2=(NonRelTwoBody(1.0), Coulomb(0.5)),
                basis=basis,
                a_grid=np.linspace(0.0, 1.0, 21),
                levels=((0, 0), (1, 0)),
            ),
        ),
        (
            "coupling_scaling",
            FlowSpec(
                endpoint1=(NonRel(1.0), Scaled(1.0, Harmonic(0.5))),
                endpoint2=(NonRel(1.0), Scaled(2.0, Harmonic(0.5))),
                basis=basis,
                a_grid=np.linspace(0.0, 1.0, 21),
                levels=((0, 0), (1, 0)),
            ),
        ),
    ]


def _random_psd_pairs(size=30, count=20, seed=20240817):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        h = rng.standard_normal((size, size))
        h = (h + h.T) / 2.0
        p = rng.standard_normal((size, size))
        pairs.append((SymMatrix(h), SymMatrix(h + p.T @ p)))
    return pairs


def crit_matrix_comparison():
    """psd gap >= -1e-9 and all sorted eigenvalue pairs ordered."""
    t0 = time.perf_counter()
    worst_gap = math.inf
    worst_order = math.inf
    for _, spec in _comparison_scenarios():
        gap = psd_gap(spec)
        worst_gap = min(worst_gap, gap)
        h1, h2 = spec.endpoint_matrices()
        w1 = eigh(h1).eigenvalues
        w2 = eigh(h2).eigenvalues
        worst_order = min(worst_order, float(np.min(w2 - w1)))
    for h1, h2 in _random_psd_pairs():
        worst_gap = min(worst_gap, float(eigh(h2 - h1).eigenvalues[0]))
        worst_order = min(worst_order, float(np.min(eigh(h2).eigenvalues - eigh(h1).eigenvalues)))
    measured = max(-worst_gap, 0.0)
    ok = worst_gap >= -1e-9 and worst_order >= -1e-10
    return _result(
        "matrix_comparison",
        measured,
        1e-9,
        f"worst psd gap {worst_gap:.3e}, worst eigenvalue ordering {worst_order:.3e}",
        t0,
        passed=ok,
    )


def crit_hellmann_feynman():
    """Refined flow residual <= 1e-5 on the 101-point grid, plus second-order
    decay of the unrefined residual under grid refinement."""
    t0 = time.perf_counter()
    # b = 0.25 keeps the spectral range of H2 - H1 small enough that the
    # a-step 1e-2 sits inside the finite-difference convergence region.
    basis = BasisSpec(l=0, size=40, b=0.25)

    def make(points):
        return FlowSpec(
            endpoint1=(NonRel(1.0), Coulomb(1.0)),
            endpoint2=(NonRel(1.0), TangentHarmonic(1.0, 1.0)),
            basis=basis,
            a_grid=np.linspace(0.0, 1.0, points),
            levels=((0, 0),),
        )

    refined = flow_levels(make(101), refine=True).max_hf_residual
    residuals = [flow_levels(make(points)).max_hf_residual for points in (11, 101, 1001)]
    steps = np.array([1e-1, 1e-2, 1e-3])
    slope = float(np.polyfit(np.log(steps), np.log(residuals), 1)[0])
    ok = refined <= 1e-5 and abs(slope - 2.0) <= 0.2
    return _result(
        "hellmann_feynman",
        refined,
        1e-5,
        f"refined residual at 101 points; decay slope {slope:.3f} (want 2 +- 0.2)",
        t0,
        passed=ok,
    )


def crit_monotone_flow():
    """HF expectation >= -1e-9 along every comparison scenario."""
    t0 = time.perf_counter()
    worst = math.inf
    for _, spec in _comparison_scenarios():
        result = flow_levels(spec)
        for lf in result.levels.values():
            worst = min(worst, float(np.min(lf.hf_expectation)))
    for h1, h2 in _random_psd_pairs(count=5, seed=20240818):
        diff = (h2 - h1).data
        for a in np.linspace(0.0, 1.0, 11):
            dec = eigh((1.0 - a) * h1 + a * h2)
            for n in (0, 1):
                psi = dec.eigenvectors[:, n]
                worst = min(worst, float(psi @ diff @ psi))
    return _result(
        "monotone_flow",
        max(-worst, 0.0),
        1e-9,
        f"most negative HF expectation {worst:.3e}",
        t0,
        passed=worst >= -1e-9,
    )


def crit_salpeter_bound_chain():
    """Numeric semirelativistic Coulomb ground state sits below the analytic
    upper bound and below the nonrelativistic-with-rest-mass value."""
    t0 = time.perf_counter()
    m, kappa = 1.0, 0.5
    basis = BasisSpec(l=0, size=150, b=1.0)
    opt = optimize_basis_scale(Salpeter(m), Coulomb(kappa), basis, target=0)
    e1 = opt.energy
    tilde = analytic.salpeter_coulomb_bound(m, kappa, 0, 0)
    e2 = analytic.nonrel_rest_coulomb(m, kappa, 0, 0)
    gap = e2**2 - tilde**2
    gap_exact = m**2 * kappa**4 / (16.0 * analytic.q_c(0, 0) ** 4)
    identity_err = abs(gap - gap_exact) / gap_exact
    ok = e1 <= tilde + 1e-6 and e1 < e2 and identity_err <= 1e-12
    return _result(
        "salpeter_bound_chain",
        e1,
        tilde + 1e-6,
        f"E1={e1:.7f} <= bound {tilde:.7f}, < E2={e2:.7f}; gap identity rel err {identity_err:.2e}",
        t0,
        passed=ok,
    )


def crit_mass_monotonicity():
    """Nonrelativistic levels fall, Salpeter levels rise, with the mass."""
    t0 = time.perf_counter()
    masses = (0.5, 1.0, 2.0)
    kappa = 0.5
    nonrel = []
    salp = []
    basis = BasisSpec(l=0, size=60, b=1.0)

    def levels(kin):
        # b tuned per level: excited Coulomb states need a wider basis than
        # the ground state, especially at weak coupling
        out = []
        for n in range(3):
            out.append(optimize_basis_scale(kin, Coulomb(kappa), basis, target=n).energy)
        return out

    for m in masses:
        nonrel.append(levels(NonRel(m / 2.0)))
        salp.append(levels(Salpeter(m)))
    dec_ok = all(
        nonrel[i + 1][k] < nonrel[i][k] for i in range(2) for k in range(3)
    )
    inc_ok = all(salp[i + 1][k] > salp[i][k] for i in range(2) for k in range(3))
    return _result(
        "mass_monotonicity",
        0.0 if (dec_ok and inc_ok) else 1.0,
        0.5,
        f"nonrelativistic decreasing: {dec_ok}; semirelativistic increasing: {inc_ok}",
        t0,
        passed=dec_ok and inc_ok,
    )


def char_poly_roots(a):
    """Roots of the characteristic cubic of a symmetric 3x3 matrix by
    bisection on monotone intervals; independent oracle for eigh."""
    c2 = -float(np.trace(a))
    c1 = float(
        a[0, 0] * a[1, 1] - a[0, 1] ** 2
        + a[0, 0] * a[2, 2] - a[0, 2] ** 2
        + a[1, 1] * a[2, 2] - a[1, 2] ** 2
    )
    c0 = -float(np.linalg.det(a))

    def p(x):
        return ((x + c2) * x + c1) * x + c0

    # Gershgorin bounds bracket all roots
    radius = np.sum(np.abs(a), axis=1)
    lo = float(np.min(np.diag(a) - (radius - np.abs(np.diag(a)))))
    hi = float(np.max(np.diag(a) + (radius - np.abs(np.diag(a)))))
    # stationary points of the cubic split it into monotone pieces
    disc = c2**2 - 3.0 * c1
    edges = [lo - 1.0, hi + 1.0]
    if disc > 0:
        for s in (-1.0, 1.0):
            x = (-c2 + s * math.sqrt(disc)) / 3.0
            if lo - 1.0 < x < hi + 1.0:
                edges.append(x)
    edges.sort()
    roots = []
    for left, right in zip(edges[:-1], edges[1:]):
        fl, fr = p(left), p(right)
        if fl == 0.0:
            roots.append(left)
            continue
        if fl * fr > 0:
            continue
        for _ in range(200):
            mid = 0.5 * (left + right)
            fm = p(mid)
            if fm == 0.0:
                break
            if fl * fm < 0:
                right = mid
            else:
                left, fl = mid, fm
        roots.append(0.5 * (left + right))
    if len(roots) != 3:
        raise NumericError(f"oracle found {len(roots)} roots (degenerate cubic)")
    return sorted(roots)


def crit_oracle_equivalence():
    """eigh agrees with the characteristic-polynomial bisection oracle."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240819)
    worst = 0.0
    for _ in range(200):
        a = rng.standard_normal((3, 3))
        a = (a + a.T) / 2.0
        w = eigh(SymMatrix(a)).eigenvalues
        try:
            roots = char_poly_roots(a)
        except NumericError:
            continue  # near-degenerate cubic: oracle inapplicable, skip
        worst = max(worst, float(np.max(np.abs(w - np.array(roots)))))
    return _result("oracle_equivalence", worst, 1e-9, "max |eigh - bisection roots| over 200 matrices", t0)


CRITERIA = (
    crit_ho_exactness,
    crit_coulomb_convergence,
    crit_level_difference,
    crit_matrix_comparison,
    crit_hellmann_feynman,
    crit_monotone_flow,
    crit_salpeter_bound_chain,
    crit_mass_monotonicity,
    crit_oracle_equivalence,
)


def list_criteria():
    return [fn.__name__.removeprefix("crit_") for fn in CRITERIA]


def run_criteria():
    return [fn() for fn in CRITERIA]
