import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from twostroke.linalg import is_density, is_hermitian, kron
from twostroke.model import (
    IDENTITY_4,
    SIGMA_X,
    CycleParams,
    center_population_gap,
    collective_ops,
    corner_population_gap,
    free_hamiltonian,
    initial_populations,
    initial_state,
    interaction_hamiltonian,
    local_hamiltonian,
    log_partition_function,
    partition_function,
    thermal_populations,
    thermal_state,
)


def params(**overrides):
    base = dict(eps_a=1.0, eps_b=0.6, beta_a=1.0, beta_b=2.0, kappa=0.1, omega=0.5, tau=2.0)
    base.update(overrides)
    return CycleParams(**base)


# --- CycleParams validation --------------------------------------------------

@pytest.mark.parametrize(
    "overrides",
    [
        {"eps_a": 0.0},
        {"eps_b": -0.4},
        {"beta_a": 0.0},
        {"beta_b": -1.0},
        {"kappa": -0.1},
        {"omega": -0.1},
        {"tau": -1.0},
        {"beta_a": 2.0, "beta_b": 2.0},  # equal temperatures
        {"beta_a": 3.0, "beta_b": 2.0},  # a colder than b
        {"eps_a": float("nan")},
    ],
)
def test_cycle_params_rejects_invalid(overrides):
    with pytest.raises(ValueError):
        params(**overrides)


def test_cycle_params_derived_fields():
    p = params()
    assert p.delta_eps == pytest.approx(0.4)
    assert p.eps_p == pytest.approx(1.6)


# --- local Hamiltonian and thermal states ------------------------------------

def test_local_hamiltonian_values():
    assert_allclose(local_hamiltonian(1.0), np.diag([0.0, -1.0]), atol=0)
    assert_allclose(local_hamiltonian(0.6), np.diag([0.0, -0.6]), atol=0)


def test_local_hamiltonian_gap():
    for eps in (0.3, 1.0, 7.5):
        evals = np.linalg.eigvalsh(local_hamiltonian(eps))
        assert evals.max() - evals.min() == pytest.approx(eps)


def test_local_hamiltonian_rejects_nonpositive():
    with pytest.raises(ValueError):
        local_hamiltonian(0.0)
    with pytest.raises(ValueError):
        local_hamiltonian(-1.0)


def test_thermal_state_infinite_temperature_limit():
    assert_allclose(thermal_state(1.0, 1e-12), np.diag([0.5, 0.5]), atol=1e-9)


def test_thermal_state_gibbs_weights():
    # scalar oracle: populations (1/Z, e/Z) with Z = 1 + e
    z = 1.0 + math.e
    rho = thermal_state(1.0, 1.0)
    assert_allclose(np.diag(rho).real, [1.0 / z, math.e / z], atol=1e-15)
    assert_allclose(np.diag(rho).real, [0.26894, 0.73106], atol=1e-5)
    assert is_density(rho, 1e-14)


def test_thermal_state_ground_state_limit():
    # the -eps level saturates at low temperature
    assert_allclose(thermal_state(1.0, 50.0), np.diag([0.0, 1.0]), atol=1e-9)


def test_thermal_state_survives_extreme_beta():
    p_g, p_e = thermal_populations(1.0, 5000.0)
    assert p_g == 0.0 and p_e == 1.0


def test_partition_function_overflow_guard():
    assert partition_function(1.0, 1.0) == pytest.approx(1.0 + math.e)
    with pytest.raises(OverflowError):
        partition_function(1.0, 701.0)
    # the log form keeps working where the raw Z cannot
    assert log_partition_function(1.0, 1000.0) == pytest.approx(1000.0)


# --- collective operators -----------------------------------------------------

def test_collective_sz_spectrum():
    ops = collective_ops()
    assert_allclose(ops.sz, np.diag([1.0, 0.0, 0.0, -1.0]).astype(complex), atol=0)


def test_collective_sx_squared():
    # expansion of ((sigma_x x I + I x sigma_x)/2)^2 by Pauli algebra
    ops = collective_ops()
    expected = 0.5 * (IDENTITY_4 + kron(SIGMA_X, SIGMA_X))
    assert_allclose(ops.sx @ ops.sx, expected, atol=1e-15)


def test_collective_su2_commutator():
    ops = collective_ops()
    comm = ops.sx @ ops.sy - ops.sy @ ops.sx
    assert np.max(np.abs(comm - 1j * ops.sz)) < 1e-14


# --- interaction and free Hamiltonians ----------------------------------------

def test_interaction_field_only():
    assert_allclose(
        interaction_hamiltonian(0.0, 2.0), 2.0 * np.diag([1.0, 0.0, 0.0, -1.0]), atol=0
    )


def test_interaction_twisting_only():
    expected = 0.5 * 0.7 * (IDENTITY_4 + kron(SIGMA_X, SIGMA_X))
    assert_allclose(interaction_hamiltonian(0.7, 0.0), expected, atol=1e-15)


def test_interaction_block_structure():
    h = interaction_hamiltonian(1.0, 10.0)
    assert is_hermitian(h, 1e-14)
    # no matrix elements between the {gg, ee} and {ge, eg} blocks
    for i in (0, 3):
        for j in (1, 2):
            assert h[i, j] == 0 and h[j, i] == 0


def test_interaction_rejects_degenerate():
    with pytest.raises(ValueError):
        interaction_hamiltonian(0.0, 0.0)


def test_free_hamiltonian_diagonal():
    h = free_hamiltonian(params())
    assert_allclose(h, np.diag([0.0, -0.6, -1.0, -1.6]).astype(complex), atol=1e-15)
    assert is_hermitian(h, 1e-14)


def test_free_hamiltonian_commutators():
    h0 = free_hamiltonian(params())
    h_field = interaction_hamiltonian(0.0, 0.5)
    assert np.max(np.abs(h0 @ h_field - h_field @ h0)) == 0.0
    h_twist = interaction_hamiltonian(0.1, 0.5)
    assert np.max(np.abs(h0 @ h_twist - h_twist @ h0)) > 1e-3


# --- initial state -------------------------------------------------------------

def test_initial_state_is_uncorrelated_product():
    p = CycleParams(eps_a=1.0, eps_b=0.5, beta_a=1.0, beta_b=2.0, kappa=1.0, omega=10.0, tau=1.0)
    rho = initial_state(p)
    pops = initial_populations(p)
    assert is_density(rho, 1e-14)
    assert np.max(np.abs(rho - np.diag(pops))) == 0.0
    assert np.all((pops > 0) & (pops < 1))
    assert pops.sum() == pytest.approx(1.0, abs=1e-14)
    pa = np.diag(thermal_state(p.eps_a, p.beta_a)).real
    pb = np.diag(thermal_state(p.eps_b, p.beta_b)).real
    assert_allclose(pops, np.kron(pa, pb), atol=1e-16)


def test_initial_state_mean_transverse_spin_vanishes():
    ops = collective_ops()
    rho = initial_state(params())
    assert abs(np.trace(ops.sx @ rho)) == 0.0
    assert abs(np.trace(ops.sy @ rho)) == 0.0


def test_swap_symmetric_product_of_equal_thermal_states():
    # with identical gaps and temperatures the product state is swap invariant
    zeta = thermal_state(1.0, 1.3)
    rho = kron(zeta, zeta)
    swap = np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    )
    assert np.max(np.abs(swap @ rho @ swap - rho)) == 0.0


def test_population_gaps():
    p = params()
    za = partition_function(p.eps_a, p.beta_a)
    zb = partition_function(p.eps_b, p.beta_b)
    assert za > 2.0 and zb > 2.0
    zbar = corner_population_gap(p)
    assert zbar == pytest.approx(1.0 - 1.0 / za - 1.0 / zb, abs=1e-15)
    assert 0.0 <= zbar < 1.0
    # center gap follows the sign of beta_a*eps_a - beta_b*eps_b
    assert center_population_gap(p) < 0.0  # 1.0 < 1.2
    assert center_population_gap(params(eps_b=0.3)) > 0.0
