import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phrod.chain import ChainConfig, build_chain
from phrod.integrator import MidpointStepper, NonFiniteStateError, energy_residual, simulate, step
from phrod.ph_core import PHModel, hamiltonian
from phrod.rod import RodConfig, assemble_rod
from phrod.signals import Signal


def rotation_model():
    return PHModel(np.eye(2), np.array([[0.0, -1.0], [1.0, 0.0]]), np.zeros((2, 1)))


def test_zero_step():
    model = rotation_model()
    np.testing.assert_array_equal(step(model, [0.0, 0.0], [0.0], 0.1), [0, 0])


def test_rotation_step_matches_cayley_transform():
    # (I - h/2 J)^-1 (I + h/2 J) e for h = 0.1, written out by hand
    a = 0.05
    expected = np.array([1 - a * a, 2 * a]) / (1 + a * a)
    e1 = step(rotation_model(), [1.0, 0.0], [0.0], 0.1)
    np.testing.assert_allclose(e1, expected, rtol=1e-15)
    np.testing.assert_allclose(e1, [0.99501246, 0.09975062], atol=5e-9)
    assert e1 @ e1 == pytest.approx(1.0, abs=2e-16)


def test_step_dimension_mismatch():
    with pytest.raises(ValueError):
        step(rotation_model(), [1.0, 0.0, 0.0], [0.0], 0.1)


def test_zero_trajectory():
    model = assemble_rod(RodConfig(n_elements=3)).model
    traj = simulate(model, lambda t: np.zeros(2), np.zeros(model.n_state), 1e-6, 1e-4)
    assert not traj.states.any()
    assert not energy_residual(traj).any()


def test_simulate_requires_commensurate_horizon():
    with pytest.raises(ValueError, match="multiple"):
        simulate(rotation_model(), lambda t: [0.0], [1.0, 0.0], 0.3, 1.0)


def test_nonfinite_state_aborts():
    model = PHModel(np.eye(2), np.zeros((2, 2)), np.ones((2, 1)))
    # midpoints 0.05, 0.15, 0.25, 0.35: the fourth step (index 3) blows up
    with pytest.raises(NonFiniteStateError) as err:
        simulate(model, lambda t: [np.inf if t > 0.3 else 0.0], [1.0, 0.0], 0.1, 1.0)
    assert err.value.step == 3


def test_inputs_sampled_at_midpoints():
    seen = []
    simulate(rotation_model(), lambda t: seen.append(t) or [0.0], [1.0, 0.0], 0.25, 1.0)
    np.testing.assert_allclose(seen, [0.125, 0.375, 0.625, 0.875])


def test_pulse_edge_on_grid():
    cfg = RodConfig(n_elements=2)
    seen = []

    def u(t):
        seen.append(cfg.inputs(t)[0])
        return cfg.inputs(t)

    simulate(assemble_rod(cfg).model, u, np.zeros(9), 1e-6, 1e-3)
    assert seen[499] == 1000.0 and seen[500] == 0.0


@pytest.mark.parametrize("dt", [1e-3, 0.5, 50.0])
def test_unconditionally_norm_preserving(dt, rng):
    model = build_chain(ChainConfig(rng.uniform(1, 2, 6), rng.uniform(1, 2, 6)))
    stepper = MidpointStepper(model, dt)
    e = rng.standard_normal(12)
    H0 = hamiltonian(model, e)
    for _ in range(200):
        e = stepper.step(e, np.zeros(2))
    assert hamiltonian(model, e) == pytest.approx(H0, rel=1e-12)


def test_time_reversible(rng):
    model = assemble_rod(RodConfig(n_elements=5)).model
    e0 = rng.standard_normal(model.n_state)
    fwd, bwd = MidpointStepper(model, 1e-6), MidpointStepper(model, -1e-6)
    e = e0
    for _ in range(50):
        e = fwd.step(e, np.zeros(2))
    for _ in range(50):
        e = bwd.step(e, np.zeros(2))
    np.testing.assert_allclose(e, e0, rtol=1e-10, atol=1e-10 * np.abs(e0).max())


@settings(max_examples=15, deadline=None)
@given(N=st.integers(1, 6), seed=st.integers(0, 2**31), dt=st.floats(1e-3, 1.0))
def test_discrete_power_balance_property(N, seed, dt):
    rng = np.random.default_rng(seed)
    cfg = ChainConfig(rng.uniform(0.2, 3, N), rng.uniform(0.2, 3, N),
                      dirichlet=Signal("sinusoid", rng.uniform(-1, 1), frequency=0.7),
                      neumann=Signal("pulse", rng.uniform(-1, 1), duration=5 * dt))
    model = build_chain(cfg)
    traj = simulate(model, cfg.inputs, rng.standard_normal(2 * N), dt, 40 * dt)
    H_max = traj.hamiltonians.max()
    assert np.abs(traj.step_power_defects()).max() < 1e-12 * max(1.0, H_max)
    res = energy_residual(traj)
    assert np.abs(res - res[0]).max() < 1e-12 * max(1.0, H_max)


def test_chain_sinusoidal_residual_bound():
    cfg = ChainConfig.uniform(2, dirichlet=Signal("sinusoid", 1.0, frequency=0.2))
    model = build_chain(cfg)
    traj = simulate(model, cfg.inputs, np.zeros(4), 0.01, 50.0)
    assert np.abs(traj.residuals).max() / traj.hamiltonians.max() < 1e-10


def test_work_nondecreasing_when_power_positive():
    # constant push on a free mass: velocity and force share sign
    model = PHModel(np.eye(1), np.zeros((1, 1)), np.ones((1, 1)))
    traj = simulate(model, lambda t: [1.0], [0.0], 0.1, 2.0)
    assert np.all(np.diff(traj.work) >= 0)
    np.testing.assert_allclose(traj.hamiltonians, 0.5 * traj.states[:, 0] ** 2)


def test_benchmark_energy_flat_after_pulse(benchmark_trajectory):
    traj = benchmark_trajectory
    H = traj.hamiltonians
    after = traj.times > 0.5e-3
    assert np.abs(H[after] - H[after][0]).max() / H[after][0] < 1e-9
    assert np.abs(traj.residuals).max() / H.max() < 1e-10


def test_benchmark_tip_velocity_during_load(benchmark_trajectory, benchmark_rod):
    # before the reflection returns, the loaded end moves at tau / (rho c)
    cfg = benchmark_rod.config
    v_tip = benchmark_trajectory.states[:, benchmark_rod.v_right]
    window = (benchmark_trajectory.times >= 0.1e-3) & (benchmark_trajectory.times <= 0.15e-3)
    assert v_tip[window].mean() == pytest.approx(1000.0 / cfg.impedance, rel=0.05)
