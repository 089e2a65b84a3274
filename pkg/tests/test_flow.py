"""Interpolation path, Hellmann-Feynman identity, and ordering verdicts."""

import math

import numpy as np
import pytest

from specorder import (
    BasisSpec,
    Coulomb,
    FlowSpec,
    Harmonic,
    NonRel,
    NonRelTwoBody,
    Salpeter,
    Scaled,
    SymMatrix,
    TangentHarmonic,
    eigh,
    flow_levels,
    interpolated_hamiltonian,
    ordering_report,
    pointwise_ordering,
    psd_gap,
    solve_levels,
)
from specorder.errors import NumericError, ValidationError


def tangent_flow(basis, grid_points=101, levels=((0, 0),)):
    return FlowSpec(
        endpoint1=(NonRel(1.0), Coulomb(1.0)),
        endpoint2=(NonRel(1.0), TangentHarmonic(1.0, 1.0)),
        basis=basis,
        a_grid=np.linspace(0.0, 1.0, grid_points),
        levels=levels,
    )


def test_flow_spec_validation():
    basis = BasisSpec(l=0, size=10, b=1.0)
    ends = ((NonRel(1.0), Coulomb(1.0)), (NonRel(1.0), Coulomb(1.0)))
    with pytest.raises(ValidationError):
        FlowSpec(*ends, basis=basis, a_grid=np.array([0.0, 0.5, 0.5, 1.0]))
    with pytest.raises(ValidationError):
        FlowSpec(*ends, basis=basis, a_grid=np.array([0.1, 1.0]))
    with pytest.raises(ValidationError):
        FlowSpec(*ends, basis=basis, a_grid=np.array([0.0, 0.9]))
    with pytest.raises(ValidationError):
        FlowSpec(*ends, basis=basis, levels=((10, 0),))


def test_interpolation_endpoints_exact():
    basis = BasisSpec(l=0, size=12, b=1.0)
    spec = tangent_flow(basis)
    h1, h2 = spec.endpoint_matrices()
    assert np.array_equal(interpolated_hamiltonian(spec, 0.0).data, h1.data)
    assert np.array_equal(interpolated_hamiltonian(spec, 1.0).data, h2.data)
    mid = interpolated_hamiltonian(spec, 0.5)
    assert np.max(np.abs(mid.data - 0.5 * (h1.data + h2.data))) < 1e-15
    with pytest.raises(ValidationError):
        interpolated_hamiltonian(spec, 1.5)


def test_trivial_flow():
    basis = BasisSpec(l=0, size=10, b=1.0)
    spec = FlowSpec(
        endpoint1=(NonRel(1.0), Coulomb(1.0)),
        endpoint2=(NonRel(1.0), Coulomb(1.0)),
        basis=basis,
        a_grid=np.linspace(0.0, 1.0, 21),
        levels=((0, 0), (1, 0)),
    )
    assert psd_gap(spec) == pytest.approx(0.0, abs=1e-15)
    result = flow_levels(spec)
    assert result.max_hf_residual == pytest.approx(0.0, abs=1e-12)
    for lf in result.levels.values():
        assert np.ptp(lf.energy) < 1e-12
        assert np.max(np.abs(lf.hf_expectation)) < 1e-12
    assert result.monotone and result.endpoint_ordered


def test_psd_gap_tangent_scenario():
    spec = tangent_flow(BasisSpec(l=0, size=40, b=1.0))
    assert psd_gap(spec) >= -1e-9


def test_psd_gap_kinetic_scenario():
    basis = BasisSpec(l=0, size=40, b=1.0)
    spec = FlowSpec(
        endpoint1=(Salpeter(1.0), Coulomb(0.5)),
        endpoint2=(NonRelTwoBody(1.0), Coulomb(0.5)),
        basis=basis,
    )
    assert psd_gap(spec) >= -1e-9


def test_endpoint_identity_bit_for_bit():
    """Energies at a=0 and a=1 must match solve_levels exactly, not just
    approximately: same basis, same code path."""
    basis = BasisSpec(l=0, size=20, b=0.8)
    spec = tangent_flow(basis, grid_points=11, levels=((0, 0), (1, 0)))
    result = flow_levels(spec)
    e1 = solve_levels(NonRel(1.0), Coulomb(1.0), basis, 2)
    e2 = solve_levels(NonRel(1.0), TangentHarmonic(1.0, 1.0), basis, 2)
    for n in (0, 1):
        lf = result.levels[(n, 0)]
        assert lf.energy[0] == e1[n].E
        assert lf.energy[-1] == e2[n].E


def test_hf_residual_second_order():
    """log-log slope of the max residual vs. a-step over 1e-1, 1e-2, 1e-3."""
    basis = BasisSpec(l=0, size=40, b=0.25)
    steps = [1e-1, 1e-2, 1e-3]
    residuals = []
    for points in (11, 101, 1001):
        res = flow_levels(tangent_flow(basis, grid_points=points))
        residuals.append(res.max_hf_residual)
    slope = np.polyfit(np.log(steps), np.log(residuals), 1)[0]
    assert abs(slope - 2.0) < 0.2


def test_hf_residual_refined():
    basis = BasisSpec(l=0, size=40, b=0.25)
    res = flow_levels(tangent_flow(basis), refine=True)
    assert res.max_hf_residual <= 1e-5


def test_refine_needs_uniform_grid():
    basis = BasisSpec(l=0, size=10, b=1.0)
    grid = np.concatenate([[0.0], np.geomspace(1e-3, 1.0, 20)])
    spec = tangent_flow(basis)
    spec = FlowSpec(spec.endpoint1, spec.endpoint2, basis, a_grid=grid)
    with pytest.raises(ValidationError):
        flow_levels(spec, refine=True)


def test_flow_endpoint_energies_match_closed_forms():
    # E(0) is the Coulomb ground -1/2, E(1) the tangent-harmonic ground 0
    basis = BasisSpec(l=0, size=100, b=0.3)
    res = flow_levels(tangent_flow(basis, grid_points=11))
    lf = res.levels[(0, 0)]
    assert lf.energy[0] == pytest.approx(-0.5, abs=1e-3)
    assert lf.energy[-1] == pytest.approx(0.0, abs=1e-3)
    assert np.all(np.diff(lf.energy) > 0)


def test_monotone_flow_scenarios():
    scenarios = [
        tangent_flow(BasisSpec(l=0, size=30, b=1.0), grid_points=21, levels=((0, 0), (1, 0))),
        FlowSpec(
            endpoint1=(Salpeter(1.0), Coulomb(0.5)),
            endpoint2=(NonRelTwoBody(1.0), Coulomb(0.5)),
            basis=BasisSpec(l=0, size=30, b=1.0),
            a_grid=np.linspace(0.0, 1.0, 21),
            levels=((0, 0), (1, 0)),
        ),
        FlowSpec(
            endpoint1=(NonRel(1.0), Scaled(1.0, Harmonic(0.5))),
            endpoint2=(NonRel(1.0), Scaled(2.0, Harmonic(0.5))),
            basis=BasisSpec(l=0, size=30, b=1.0),
            a_grid=np.linspace(0.0, 1.0, 21),
            levels=((0, 0), (1, 0)),
        ),
    ]
    for spec in scenarios:
        assert psd_gap(spec) >= -1e-12
        result = flow_levels(spec)
        for lf in result.levels.values():
            assert np.min(lf.hf_expectation) >= -1e-9
        assert result.monotone


def test_matrix_comparison_random_pairs():
    # H vs. H + P^T P: eigenvalues must order pairwise (min-max theorem)
    rng = np.random.default_rng(101)
    for _ in range(10):
        h = rng.standard_normal((20, 20))
        h = (h + h.T) / 2.0
        p = rng.standard_normal((20, 20))
        h1 = SymMatrix(h)
        h2 = SymMatrix(h + p.T @ p)
        assert eigh(h2 - h1).eigenvalues[0] >= -1e-9
        w1 = eigh(h1).eigenvalues
        w2 = eigh(h2).eigenvalues
        assert np.all(w2 - w1 >= -1e-10)


def test_ordering_report_tangent():
    spec = tangent_flow(
        BasisSpec(l=0, size=40, b=1.0),
        grid_points=21,
        levels=((0, 0), (1, 0), (0, 1), (0, 2)),
    )
    report = ordering_report(spec)
    assert set(report) == {(0, 0), (1, 0), (0, 1), (0, 2)}
    for verdict in report.values():
        assert verdict.all_ok
        assert verdict.delta > 0


def test_ordering_report_salpeter_vs_nonrel():
    spec = FlowSpec(
        endpoint1=(Salpeter(1.0), Coulomb(0.5)),
        endpoint2=(NonRelTwoBody(1.0), Coulomb(0.5)),
        basis=BasisSpec(l=0, size=40, b=1.0),
        a_grid=np.linspace(0.0, 1.0, 21),
        levels=((0, 0), (1, 0), (2, 0)),
    )
    for verdict in ordering_report(spec).values():
        assert verdict.endpoint_ordered
        assert verdict.e1 <= verdict.e2


def test_ordering_report_identical_endpoints():
    basis = BasisSpec(l=0, size=15, b=1.0)
    spec = FlowSpec(
        endpoint1=(NonRel(1.0), Coulomb(1.0)),
        endpoint2=(NonRel(1.0), Coulomb(1.0)),
        basis=basis,
        a_grid=np.linspace(0.0, 1.0, 11),
        levels=((0, 0),),
    )
    verdict = ordering_report(spec)[(0, 0)]
    assert verdict.all_ok
    assert verdict.delta == pytest.approx(0.0, abs=1e-12)


def test_pointwise_identical():
    v = pointwise_ordering(lambda r: -1.0 / r, lambda r: -1.0 / r, np.geomspace(0.01, 10, 50))
    assert v.min_difference == 0.0
    assert v.ordered


def test_pointwise_tangent_difference():
    grid = np.geomspace(1e-3, 50.0, 200)
    v1 = Coulomb(1.0).function()
    v2 = TangentHarmonic(1.0, 1.0).function()
    verdict = pointwise_ordering(v1, v2, grid)
    assert verdict.min_difference >= 0.0
    assert abs(verdict.at - 1.0) < 0.1  # tangency point r0 = 1


def test_pointwise_kinetic_difference():
    m = 1.0
    t1 = lambda p: 2.0 * math.sqrt(p * p + m * m)
    t2 = lambda p: 2.0 * m + p * p / m
    grid = np.linspace(0.0, 50.0, 500)[1:]  # positive samples
    verdict = pointwise_ordering(t1, t2, np.concatenate([[1e-9], grid]))
    assert verdict.ordered
    assert verdict.min_difference == pytest.approx(0.0, abs=1e-12)


def test_pointwise_non_finite_raises():
    with pytest.raises(NumericError):
        pointwise_ordering(lambda r: 1.0 / (r - 1.0), lambda r: 0.0, np.array([0.5, 1.0]))


def test_pointwise_grid_validation():
    with pytest.raises(ValidationError):
        pointwise_ordering(lambda r: r, lambda r: r, np.array([-1.0, 2.0]))
    with pytest.raises(ValidationError):
        pointwise_ordering(lambda r: r, lambda r: r, np.array([]))


def test_p2_sign_mutation_is_caught_by_ho_exactness(monkeypatch):
    """Mutation check: flip the p^2 off-diagonal sign and confirm the suite
    notices.  The spectrum of p^2 alone is invariant under the flip, but the
    matched-b oscillator cancellation breaks, so the HO-exactness criterion
    fails loudly.  The HF identity itself stays satisfied: it holds for any
    symmetric endpoint matrices and cannot see the convention."""
    from specorder import basis as basis_mod
    from specorder.basis import BasisSpec as BS, _tridiag
    from specorder.verify import crit_ho_exactness

    orig_p2 = basis_mod.p2_matrix

    def flipped_p2(bspec):
        n = np.arange(bspec.size)
        diag = (2 * n + bspec.l + 1.5) / bspec.b**2
        m = n[1:]
        off = -np.sqrt(m * (m + bspec.l + 0.5)) / bspec.b**2
        return _tridiag(diag, off)

    monkeypatch.setattr(basis_mod, "p2_matrix", flipped_p2)

    # spectrum of p^2 itself is invariant under the sign flip
    probe = BS(l=0, size=10, b=1.0)
    w_flip = eigh(flipped_p2(probe)).eigenvalues
    w_orig = eigh(orig_p2(probe)).eigenvalues
    assert np.max(np.abs(w_flip - w_orig)) < 1e-12

    assert not crit_ho_exactness().passed

    # the HF identity still holds for the mutated matrices: the residual is
    # pure finite-difference error and keeps its second-order decay
    basis = BasisSpec(l=0, size=40, b=0.25)
    r_coarse = flow_levels(tangent_flow(basis, grid_points=101)).max_hf_residual
    r_fine = flow_levels(tangent_flow(basis, grid_points=1001)).max_hf_residual
    assert 30.0 < r_coarse / r_fine < 300.0
