import math

import numpy as np
import pytest

import dickesim as ds


def make_params(ratio, g_over_gc, cutoff, **kw):
    p = ds.ModelParams(omega=1.0, Omega=ratio, n_spins=1, cutoff=cutoff, **kw)
    p.g = g_over_gc * p.g_c
    return p


def test_version():
    assert ds.__version__


def test_operator_algebra():
    a = ds.destroy(ds.FockSpace(5))
    adag = a.adjoint()
    comm = (a @ adag) - (adag @ a)
    m = comm.matrix()
    assert m.shape == (6, 6)
    assert np.allclose(np.diag(m)[:5], 1.0)
    assert np.isclose(np.diag(m)[5].real, -5.0)

    s = ds.spin_operators(ds.SpinSpace(1))
    sz = s.sz.matrix()
    assert np.allclose(np.diag(sz), [-0.5, 0.5])


def test_closed_forms():
    p = make_params(1e4, math.sqrt(2.0), 2)
    assert math.isclose(ds.critical_coupling(p), 100.0)
    assert math.isclose(ds.well_minima(p), math.sqrt(7500.0), rel_tol=1e-12)
    assert math.isclose(ds.critical_photon_number(p), 468.75, rel_tol=1e-12)
    assert math.isclose(ds.critical_time(p), 3.76820, rel_tol=1e-4)
    w = ds.effective_frequency(make_params(1.0, math.sqrt(2.0), 2))
    assert math.isclose(w.imag, 1.0, rel_tol=1e-12)
    with pytest.raises(ds.SubcriticalError):
        ds.well_minima(make_params(1e4, 0.5, 2))


def test_evolution_matches_oracle():
    p = make_params(100.0, 0.9, 160)
    h = ds.build_hamiltonian(ds.ModelKind.FieldOnly, p)
    vac = ds.coherent_state(0.0, ds.FockSpace(p.cutoff))
    grid = ds.TimeGrid.uniform(5.0, 51)
    traj = ds.evolve_unitary(h, vac, grid)
    oracle = ds.gaussian_oracle(p, grid)
    sim = np.array(traj.photon_numbers)
    ref = np.array([cs.photon_number for cs in oracle])
    assert np.max(np.abs(sim - ref) / (1.0 + ref)) < 1e-6


def test_lindblad_decay():
    space = ds.FockSpace(20)
    p = ds.ModelParams(omega=1.0, Omega=10.0, n_spins=1, kappa=0.25, cutoff=20)
    h = ds.number_operator(space).scaled(0.0)
    rho0 = ds.DensityOperator.pure(ds.coherent_state(1.2, space))
    opts = ds.PropagatorOptions()
    opts.max_step = 0.01
    traj = ds.evolve_lindblad(h, p, rho0, ds.TimeGrid.uniform(2.0, 21), opts)
    n = np.array(traj.photon_numbers)
    t = np.array(traj.times)
    assert np.max(np.abs(n - 1.44 * np.exp(-0.5 * t))) < 1e-6


def test_husimi_vacuum_peak():
    rho = ds.DensityOperator.pure(ds.coherent_state(0.0, ds.FockSpace(40)))
    frame = ds.husimi_q(rho, ds.HusimiGridSpec.auto_extent(0.0, 81))
    assert math.isclose(frame.values.max(), 1.0 / math.pi, rel_tol=2e-2)
    assert 0.95 <= frame.normalization() <= 1.0001


def test_invariance_overlap_fields():
    p = make_params(1e4, 0.01, 40)
    ov = ds.invariance_overlap(p)
    assert math.isclose((1.0 - ov.overlap) * 8.0 * p.Omega**2 / p.g**2, 1.0, rel_tol=0.01)
    assert ov.condition_value == pytest.approx(0.25 * 1e-4 * 1e-4)
    assert ov.leading_order == pytest.approx(1.0 - p.g**2 / (4.0 * p.Omega**2))
