import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phrod.ph_core import (
    BoundaryNormal3D,
    Material3D,
    PHModel,
    co_energy_variables,
    differential_symbol,
    elasticity_matrix,
    energy_variables,
    hamiltonian,
    normal_matrix,
    output,
    validate,
)
from phrod.rod import RodConfig, assemble_rod


def diag_model():
    return PHModel(np.diag([2.0, 2.0]), np.array([[0.0, -1.0], [1.0, 0.0]]), np.eye(2))


def test_hamiltonian_examples(benchmark_rod):
    m = diag_model()
    assert hamiltonian(m, [0.0, 0.0]) == 0.0
    assert hamiltonian(m, [1.0, 1.0]) == 2.0
    assert hamiltonian(benchmark_rod.model, np.zeros(401)) == 0.0


def test_hamiltonian_dimension_mismatch():
    with pytest.raises(ValueError):
        hamiltonian(diag_model(), [1.0, 2.0, 3.0])


def test_output_selectors(benchmark_rod):
    rod = benchmark_rod
    e = np.zeros(rod.model.n_state)
    np.testing.assert_array_equal(output(rod.model, e), [0, 0])
    e[rod.v_right] = 3.0
    np.testing.assert_array_equal(output(rod.model, e), [3, 0])
    e[:] = 0
    e[rod.n_v + rod.s_left] = 5.0
    np.testing.assert_array_equal(output(rod.model, e), [0, -5])


def test_energy_variables(benchmark_rod):
    model = benchmark_rod.model
    p, eps = energy_variables(model, np.zeros(401))
    assert not p.any() and not eps.any()
    e = np.zeros(401)
    e[10] = 2.0
    e[201 + 7] = 1000.0
    p, eps = energy_variables(model, e)
    assert p[10] == pytest.approx(1.57, rel=1e-15)
    assert eps[7] == pytest.approx(5e-5, rel=1e-15)
    back = co_energy_variables(model, p, eps)
    np.testing.assert_allclose(back, e, rtol=1e-14)


def test_energy_variables_need_metadata():
    with pytest.raises(ValueError, match="metadata"):
        energy_variables(diag_model(), [1.0, 1.0])


def test_elasticity_matrix_examples():
    np.testing.assert_array_equal(elasticity_matrix(0.0, 0.5), np.diag([1, 1, 1, 0.5, 0.5, 0.5]))
    E = elasticity_matrix(1.0, 1.0)
    assert E[0, 0] == 3.0 and E[0, 1] == 1.0
    np.testing.assert_allclose(np.linalg.eigvalsh(E), [1, 1, 1, 2, 2, 5], atol=1e-14)
    np.testing.assert_array_equal(E, E.T)


@settings(max_examples=50, deadline=None)
@given(lam=st.floats(-10, 10), shear=st.floats(0.01, 10))
def test_elasticity_definiteness(lam, shear):
    mat = Material3D(lam, shear, 1.0)
    eig = np.linalg.eigvalsh(mat.E_voigt)
    expected = sorted([3 * lam + 2 * shear, 2 * shear, 2 * shear, shear, shear, shear])
    np.testing.assert_allclose(eig, expected, atol=1e-12 * (abs(lam) + shear))
    if abs(3 * lam + 2 * shear) > 1e-9:
        assert mat.positive_definite == (eig.min() > 0)


def test_normal_matrix_axes():
    np.testing.assert_array_equal(
        normal_matrix([1.0, 0, 0]),
        [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]],
    )
    np.testing.assert_array_equal(normal_matrix([0, 1.0, 0])[0], [0, 0, 0, 1, 0, 0])
    np.testing.assert_array_equal(normal_matrix([0, 0, 1.0])[2], [0, 0, 1, 0, 0, 0])


def test_normal_matrix_rejects_non_unit():
    with pytest.raises(ValueError):
        normal_matrix([1.0, 1.0, 0.0])


@settings(max_examples=50, deadline=None)
@given(st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: np.linalg.norm(v) > 0.1))
def test_normal_matrix_is_transposed_strain_symbol(v):
    n = np.asarray(v) / np.linalg.norm(v)
    NT = BoundaryNormal3D(tuple(n)).N_T
    np.testing.assert_array_equal(NT, differential_symbol(n).T)
    S = NT @ elasticity_matrix(1.0, 1.0) @ NT.T
    np.testing.assert_allclose(S, S.T)
    assert np.linalg.eigvalsh(S).min() > 0


def test_validate_rod_and_fault_injection(benchmark_rod):
    rep = validate(benchmark_rod.model)
    assert rep.skew_defect == 0.0 and rep.ok and rep.mass_min_pivot > 0
    J = benchmark_rod.model.J.copy()
    J[0, 1] += 1e-3
    bad = PHModel(benchmark_rod.model.M, J, benchmark_rod.model.G)
    rep = validate(bad)
    assert rep.skew_defect == pytest.approx(1e-3)
    assert not rep.ok


def test_validate_reports_indefinite_mass():
    m = PHModel(np.diag([1.0, -1.0]), np.zeros((2, 2)), np.eye(2))
    rep = validate(m)
    assert rep.mass_min_pivot is None and not rep.ok


@pytest.mark.parametrize("n", [1, 3, 10])
def test_skew_quadratic_form_vanishes(n, rng):
    model = assemble_rod(RodConfig(n_elements=n)).model
    for _ in range(20):
        e = rng.standard_normal(model.n_state)
        scale = np.abs(e).max() ** 2 * np.abs(model.J).max() * model.n_state
        assert abs(e @ model.J @ e) <= 1e-15 * scale


def test_hamiltonian_gradient_matches_finite_differences(rng):
    model = assemble_rod(RodConfig(n_elements=3)).model
    e = rng.standard_normal(model.n_state) * np.r_[np.ones(7), 1e3 * np.ones(6)]
    grad = model.M @ e
    fd = np.empty_like(e)
    for i in range(len(e)):
        d = 1e-4 * max(1.0, abs(e[i]))
        ep, em = e.copy(), e.copy()
        ep[i] += d
        em[i] -= d
        fd[i] = (hamiltonian(model, ep) - hamiltonian(model, em)) / (2 * d)
    np.testing.assert_allclose(fd, grad, rtol=1e-6, atol=1e-6 * np.abs(grad).max())


def test_phmodel_dimension_checks():
    with pytest.raises(ValueError):
        PHModel(np.eye(2), np.zeros((3, 3)), np.eye(2))
    with pytest.raises(ValueError):
        PHModel(np.eye(2), np.zeros((2, 2)), np.eye(3))
