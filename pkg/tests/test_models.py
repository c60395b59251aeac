import math

import numpy as np
import pytest

from tvd import (
    MINUS_IDENTITY,
    PLUS_IDENTITY,
    ParameterError,
    PremiseError,
    SymmetryTransform,
    build_s_matrix,
    conjugate_operator,
    edm_model,
    kaon_decay_scattering_model,
    kaon_oscillation_model,
    kramers_square,
    spin_operators,
    symmetrize_invariant,
    t_symmetric_smatrix,
    wigner_eckart_chain,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_spin_half_matches_pauli_over_two():
    spin = spin_operators(0.5)
    assert np.allclose(spin.jx, SIGMA_X / 2, atol=1e-15)
    assert np.allclose(spin.jy, SIGMA_Y / 2, atol=1e-15)
    assert np.allclose(spin.jz, SIGMA_Z / 2, atol=1e-15)
    assert spin.dim == 2


def test_spin_algebra_relations():
    for j in (0.0, 0.5, 1.0, 1.5, 2.0):
        spin = spin_operators(j)
        comm = spin.jx @ spin.jy - spin.jy @ spin.jx
        assert np.allclose(comm, 1j * spin.jz, atol=1e-12)
        casimir = spin.jx @ spin.jx + spin.jy @ spin.jy + spin.jz @ spin.jz
        assert np.allclose(casimir, j * (j + 1) * np.eye(spin.dim), atol=1e-12)


def test_spin_reversal_parity_alternates():
    assert kramers_square(spin_operators(0.5).time_reversal).classification == MINUS_IDENTITY
    assert kramers_square(spin_operators(1.0).time_reversal).classification == PLUS_IDENTITY
    assert kramers_square(spin_operators(1.5).time_reversal).classification == MINUS_IDENTITY


def test_spin_rejects_non_half_integers():
    with pytest.raises(ParameterError):
        spin_operators(0.3)
    with pytest.raises(ParameterError):
        spin_operators(-0.5)


def test_edm_model_parameter_validation():
    with pytest.raises(ParameterError):
        edm_model(0.5, 1.0, 1.0, (0.0, 0.0, 0.0), 0.1)
    with pytest.raises(ParameterError):
        edm_model(0.5, 1.0, 1.0, (0.0, 0.0, 1.0), 0.0)
    with pytest.raises(ParameterError):
        edm_model(0.5, 1.0, 1.0, (0.0, 0.0, 1.0), -0.1)


def test_edm_dipole_is_odd_under_reversal():
    model = edm_model(0.5, 1.0, 1.0, (0.0, 0.0, 1.0), 0.1)
    t = model.spin.time_reversal
    assert np.allclose(conjugate_operator(t, model.dipole), -model.dipole, atol=1e-12)


def test_edm_chain_spin_half_along_z():
    model = edm_model(0.5, 1.0, 1.0, (0.0, 0.0, 1.0), 0.1)
    records = wigner_eckart_chain(model)
    assert len(records) == 2
    for record in records:
        assert record.coupling == pytest.approx(0.1, abs=1e-12)
        assert record.dipole_eq_residual <= 1e-10
        assert record.transport_residual <= 1e-10
        assert record.reversed_eq_residual <= 1e-10
        # each Jz eigenstate flips to the orthogonal one under T
        assert record.displacement == pytest.approx(1.0, abs=1e-12)


def test_edm_chain_skips_degenerate_levels():
    # no dipole term g = 0 collapses everything onto one cluster
    model = edm_model(1.0, 2.0, 0.0, (0.0, 0.0, 1.0), 0.1)
    assert wigner_eckart_chain(model) == ()


def test_edm_chain_handles_tilted_axis():
    model = edm_model(1.5, 0.5, 0.7, (1.0, 1.0, 0.0), 0.2)
    records = wigner_eckart_chain(model)
    assert len(records) == 4
    for record in records:
        assert record.coupling == pytest.approx(0.2, abs=1e-10)
        assert record.dipole_eq_residual <= 1e-10
        assert record.reversed_eq_residual <= 1e-10


def test_kaon_oscillation_structure():
    model = kaon_oscillation_model(0.5, 0.7, 0.2 + 0.3j)
    expected = np.array([[0.5, 0.2 + 0.3j], [0.2 - 0.3j, 0.7]])
    assert np.array_equal(model.hamiltonian, expected)
    assert model.time_reversal.antilinear
    assert np.vdot(model.k1, model.k2) == pytest.approx(0.0)
    with pytest.raises(ParameterError):
        kaon_oscillation_model(0.5 + 1j, 0.7, 0.2)


def test_kaon_decay_commutator_norm_frozen():
    model = kaon_decay_scattering_model(0.2)
    cp = model.cp.unitary_part
    comm = cp @ model.smatrix - model.smatrix @ cp
    assert np.linalg.norm(comm) == pytest.approx(0.56568542494923812, abs=1e-12)
    assert np.linalg.norm(comm) == pytest.approx(2.0 * math.sqrt(2.0) * 0.2, abs=1e-15)


def test_kaon_decay_epsilon_validation():
    with pytest.raises(ParameterError):
        kaon_decay_scattering_model(1.0)
    with pytest.raises(ParameterError):
        kaon_decay_scattering_model(-0.1)


def test_symmetrize_is_idempotent_and_commuting():
    rng = np.random.default_rng(71)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = (g + g.conj().T) / 2
    r = SymmetryTransform(np.diag([1.0, -1.0, 1.0, -1.0]).astype(complex), antilinear=False, label="R")
    projected = symmetrize_invariant(h, r)
    assert np.allclose(symmetrize_invariant(projected, r), projected, atol=1e-12)
    comm = r.unitary_part @ projected - projected @ r.unitary_part
    assert np.linalg.norm(comm) <= 1e-12


def test_symmetrize_rejects_non_involutive_square():
    h = np.eye(2, dtype=complex)
    third_root = SymmetryTransform(np.diag([1.0, np.exp(2j * math.pi / 3)]), antilinear=False)
    with pytest.raises(PremiseError):
        symmetrize_invariant(h, third_root)


def test_t_symmetric_smatrix_is_symmetric_unitary():
    for dim, seed in ((2, 3), (3, 14), (5, 99)):
        s = t_symmetric_smatrix(dim, seed)
        assert np.allclose(s, s.T, atol=1e-12)
        assert np.allclose(s.conj().T @ s, np.eye(dim), atol=1e-12)
    with pytest.raises(ParameterError):
        t_symmetric_smatrix(0, 1)


def test_build_s_matrix_identities():
    h0 = np.diag([1.0, 2.0]).astype(complex)
    zero = np.zeros((2, 2), dtype=complex)
    assert np.allclose(build_s_matrix(h0, zero, -1.0, 1.0), np.eye(2), atol=1e-12)
    # commuting interaction contributes only its own phase
    v = np.diag([0.5, 0.5]).astype(complex)
    s = build_s_matrix(h0, v, -1.0, 2.0)
    assert np.allclose(s, np.exp(-1.5j) * np.eye(2), atol=1e-12)


def test_build_s_matrix_validation():
    h0 = np.diag([1.0, 2.0]).astype(complex)
    with pytest.raises(ParameterError):
        build_s_matrix(h0, np.zeros((3, 3)), 0.0, 1.0)
    with pytest.raises(ParameterError):
        build_s_matrix(h0, np.zeros((2, 2)), 1.0, 0.0)


def test_build_s_matrix_first_order_window():
    # weak coupling: S - 1 matches the leading interaction-picture integral
    h0 = np.diag([1.0, 2.0]).astype(complex)
    v = 1e-3 * SIGMA_X
    ti, tf = -0.5, 0.5
    s = build_s_matrix(h0, v, ti, tf)
    times = np.linspace(ti, tf, 801)
    integrand = np.stack(
        [
            np.diag(np.exp(1j * np.diag(h0) * t)) @ v @ np.diag(np.exp(-1j * np.diag(h0) * t))
            for t in times
        ]
    )
    first_order = -1j * np.trapezoid(integrand, times, axis=0)
    assert np.linalg.norm((s - np.eye(2)) - first_order) <= 1e-5
