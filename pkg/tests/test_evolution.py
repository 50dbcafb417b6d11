import numpy as np
import pytest
from scipy.linalg import expm

from hopfield_annealing.evolution import (
    AnnealSchedule,
    ConvergenceError,
    evolve,
    evolve_batch,
    halving_convergence,
    magnus_step,
)
from hopfield_annealing.hamiltonians import (
    answer_overlap,
    ising_hamiltonian,
    transverse_field_hamiltonian,
    uniform_superposition,
)
from hopfield_annealing.learning import hebb_weights, weights_for_rule
from hopfield_annealing.network import BiasSpec
from hopfield_annealing.patterns import (
    index_to_pattern,
    overlapping_memories,
    pattern_to_index,
)


# evolve/magnus_step accept a bare diagonal array in place of a full
# IsingHamiltonian; most tests below use that form directly


# -- schedules ---------------------------------------------------------------------

def test_linear_schedule_endpoints():
    s = AnnealSchedule.linear(80.0)
    assert s.driver_weight(0.0) == 1.0
    assert s.problem_weight(0.0) == 0.0
    assert s.driver_weight(80.0) == 0.0
    assert s.problem_weight(80.0) == 1.0


def test_schedule_validation():
    with pytest.raises(ValueError):
        AnnealSchedule.linear(0.0)


# -- magnus_step --------------------------------------------------------------------

def test_step_preserves_norm():
    rng = np.random.default_rng(1)
    n = 3
    h0 = transverse_field_hamiltonian(n)
    schedule = AnnealSchedule.linear(10.0)
    diag = rng.normal(scale=3.0, size=8)
    psi = uniform_superposition(n)
    for t in np.arange(0.0, 1.0, 0.1):
        psi = magnus_step(psi, h0, diag, schedule, t, 0.1)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-12


def test_pure_diagonal_generator_applies_phases():
    # A == 0, B == 1: amplitudes pick up exp(-i E dt), magnitudes untouched
    diag = np.array([0.5, -1.0, 2.0, 0.0])
    schedule = AnnealSchedule(
        total_time=1.0, driver_weight=lambda t: 0.0, problem_weight=lambda t: 1.0
    )
    h0 = transverse_field_hamiltonian(2)
    psi0 = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
    dt = 0.3
    psi = magnus_step(psi0, h0, diag, schedule, 0.2, dt)
    assert np.allclose(psi, 0.5 * np.exp(-1j * diag * dt), atol=1e-13)


def test_single_qubit_driver_rotation():
    # A == 1, B == 0, dt = pi/2: exp(+i X pi/2) maps (1,0) to (cos, i sin)
    schedule = AnnealSchedule(
        total_time=2.0, driver_weight=lambda t: 1.0, problem_weight=lambda t: 0.0
    )
    h0 = transverse_field_hamiltonian(1)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    dt = np.pi / 2
    psi = magnus_step(psi0, h0, np.zeros(2), schedule, 0.0, dt)
    assert np.allclose(psi, [np.cos(dt), 1j * np.sin(dt)], atol=1e-12)


def test_step_action_matches_dense_exponential():
    # the contract: each propagator application accurate to 1e-12
    rng = np.random.default_rng(8)
    n = 3
    h0 = transverse_field_hamiltonian(n)
    for a, b, dt in [(0.9, 0.1, 0.1), (0.4, 0.6, 0.7), (0.0, 1.0, 2.5), (0.3, 0.7, 6.0)]:
        diag = rng.normal(scale=4.0, size=8)
        schedule = AnnealSchedule(
            total_time=10.0, driver_weight=lambda t: a, problem_weight=lambda t: b
        )
        psi0 = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi0 /= np.linalg.norm(psi0)
        got = magnus_step(psi0, h0, diag, schedule, 1.0, dt)
        exact = expm(-1j * dt * (a * h0 + b * np.diag(diag))) @ psi0
        assert np.abs(got - exact).max() < 1e-12


def test_step_outside_window_rejected():
    schedule = AnnealSchedule.linear(1.0)
    h0 = transverse_field_hamiltonian(1)
    with pytest.raises(ValueError):
        magnus_step(np.array([1.0, 0.0]), h0, np.zeros(2),
                    schedule, 0.95, 0.2)


# -- evolve -------------------------------------------------------------------------

def test_single_memory_recall_probability():
    mem = overlapping_memories()[:1]
    w = hebb_weights(mem)
    h1 = ising_hamiltonian(w, BiasSpec(mem[0], 0.1))
    psi = evolve(transverse_field_hamiltonian(4), h1, AnnealSchedule.linear(1000.0), 0.1)
    assert answer_overlap(psi, mem[0]) >= 0.99


def test_complement_symmetry_without_bias():
    mem = overlapping_memories()[:2]
    h1 = ising_hamiltonian(hebb_weights(mem), None)
    psi = evolve(transverse_field_hamiltonian(4), h1, AnnealSchedule.linear(30.0), 0.1)
    probs = np.abs(psi) ** 2
    for s in range(16):
        flipped = pattern_to_index(-index_to_pattern(s, 4))
        assert probs[s] == pytest.approx(probs[flipped], abs=1e-6)


def test_evolve_batch_agrees_with_single_runs():
    rng = np.random.default_rng(3)
    schedule = AnnealSchedule.linear(7.0)
    h0 = transverse_field_hamiltonian(3)
    diags = rng.normal(scale=2.0, size=(4, 8))
    batch = evolve_batch(diags, schedule, 0.1)
    for m in range(4):
        single = evolve(h0, diags[m], schedule, 0.1)
        assert np.abs(batch[m] - single).max() < 1e-12


def test_final_short_step_lands_on_total_time():
    # dt larger than T collapses the run to one step truncated to exactly T,
    # which must equal the dense midpoint exponential
    diag = np.array([1.0, -2.0, 0.5, 0.0])
    total = 1.05
    schedule = AnnealSchedule.linear(total)
    h0 = transverse_field_hamiltonian(2)
    got = evolve(h0, diag, schedule, 5.0)
    t_mid = total / 2
    h_mid = (1 - t_mid / total) * h0 + (t_mid / total) * np.diag(diag)
    exact = expm(-1j * total * h_mid) @ uniform_superposition(2)
    assert abs(np.linalg.norm(got) - 1.0) < 1e-12
    assert np.abs(got - exact).max() < 1e-12


def test_evolve_validation():
    h0 = transverse_field_hamiltonian(2)
    with pytest.raises(ValueError):
        evolve(h0, np.zeros(4), AnnealSchedule.linear(5.0), 0.0)
    with pytest.raises(ValueError):
        evolve_batch(np.zeros((2, 5)), AnnealSchedule.linear(5.0), 0.1)


def test_unitarity_along_full_anneal():
    rng = np.random.default_rng(12)
    diags = rng.normal(scale=2.0, size=(3, 16))
    out = evolve_batch(diags, AnnealSchedule.linear(25.0), 0.1)
    norms = np.linalg.norm(out, axis=1)
    assert np.abs(norms - 1.0).max() < 1e-9


# -- dt convergence ------------------------------------------------------------------

def test_halving_convergence_accepts_default_dt():
    mem = overlapping_memories()[:2]
    w = weights_for_rule("projection", mem)
    h1 = ising_hamiltonian(w, BiasSpec(mem[0], 0.3))
    q_full, q_half = halving_convergence(
        transverse_field_hamiltonian(4), h1, AnnealSchedule.linear(150.0), mem[0], dt=0.1
    )
    assert abs(q_full - q_half) <= 1e-6


def test_halving_convergence_flags_coarse_dt():
    mem = overlapping_memories()[:2]
    w = hebb_weights(mem)
    h1 = ising_hamiltonian(w, BiasSpec(mem[0], 0.9))
    with pytest.raises(ConvergenceError):
        halving_convergence(
            transverse_field_hamiltonian(4), h1, AnnealSchedule.linear(60.0),
            mem[0], dt=15.0,
        )
