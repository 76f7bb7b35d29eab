"""Tests for density operators and the closeness / entanglement metrics."""

import math

import numpy as np
import pytest

from zecs import linalg
from zecs.errors import DimensionMismatchError, SubsystemError, ValidationError
from zecs.states import (
    DensityOperator,
    concurrence,
    entanglement_entropy,
    fidelity,
    trace_distance,
)

BELL = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def random_density(rng, n_qubits):
    dim = 2**n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return DensityOperator.from_matrix(rho / np.trace(rho))


def random_pure(rng, n_qubits):
    v = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return DensityOperator.from_pure(v / np.linalg.norm(v))


def random_unitary(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestDensityOperator:
    def test_validation_accepts_physical_state(self):
        rho = DensityOperator.from_matrix(np.eye(2) / 2)
        assert rho.validated and rho.n_qubits == 1

    def test_validation_rejects_bad_trace(self):
        with pytest.raises(ValidationError):
            DensityOperator.from_matrix(np.eye(2).astype(complex))

    def test_validation_rejects_indefinite(self):
        with pytest.raises(ValidationError):
            DensityOperator.from_matrix(np.diag([1.5, -0.5]).astype(complex))

    def test_unvalidated_allows_indefinite(self):
        rho = DensityOperator.from_matrix(np.diag([2.0, -1.0]).astype(complex), validate=False)
        assert not rho.validated

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            DensityOperator.from_matrix(np.array([[0.5, 1], [0, 0.5]]), validate=False)

    def test_from_pure_tracks_vector(self):
        rho = DensityOperator.from_pure(BELL)
        assert rho.validated
        assert np.allclose(rho.matrix, np.outer(BELL, BELL.conj()))


class TestFidelity:
    def test_self_fidelity_is_one(self):
        rng = np.random.default_rng(1)
        rho = random_density(rng, 2)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-8)

    def test_orthogonal_pure_states(self):
        zero = DensityOperator.from_pure([1, 0])
        one = DensityOperator.from_pure([0, 1])
        assert fidelity(zero, one) == pytest.approx(0.0, abs=1e-12)

    def test_pure_versus_maximally_mixed(self):
        zero = DensityOperator.from_pure([1, 0])
        mixed = DensityOperator.from_matrix(np.eye(2) / 2)
        assert fidelity(zero, mixed) == pytest.approx(0.5, abs=1e-12)

    def test_pure_pure_matches_overlap(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            a = random_pure(rng, 2)
            b = random_pure(rng, 2)
            overlap = abs(np.vdot(a.pure_vector, b.pure_vector)) ** 2
            assert fidelity(a, b) == pytest.approx(overlap, abs=1e-10)

    def test_fast_path_matches_general_formula(self):
        rng = np.random.default_rng(3)
        pure = random_pure(rng, 2)
        mixed = random_density(rng, 2)
        fast = fidelity(pure, mixed)
        # force the general route by dropping the cached vector
        general_input = DensityOperator.from_matrix(pure.matrix)
        general = fidelity(general_input, mixed)
        assert fast == pytest.approx(general, abs=1e-8)

    def test_symmetric_for_psd_inputs(self):
        rng = np.random.default_rng(4)
        a = random_density(rng, 2)
        b = random_density(rng, 2)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-6)

    def test_clamps_indefinite_reconstructions(self):
        cs_like = DensityOperator.from_matrix(
            np.diag([1.1, -0.1, 0.0, 0.0]).astype(complex), validate=False
        )
        ref = DensityOperator.from_pure([1, 0, 0, 0])
        value = fidelity(cs_like, ref)
        assert value == pytest.approx(1.1, abs=1e-10)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            fidelity(DensityOperator.from_pure([1, 0]), DensityOperator.from_pure(BELL))


class TestTraceDistance:
    def test_orthogonal_states(self):
        zero = DensityOperator.from_pure([1, 0])
        one = DensityOperator.from_pure([0, 1])
        assert trace_distance(zero, one) == pytest.approx(1.0, abs=1e-12)

    def test_pure_versus_mixed(self):
        zero = DensityOperator.from_pure([1, 0])
        mixed = DensityOperator.from_matrix(np.eye(2) / 2)
        assert trace_distance(zero, mixed) == pytest.approx(0.5, abs=1e-12)

    def test_self_distance_zero(self):
        rng = np.random.default_rng(5)
        rho = random_density(rng, 2)
        assert trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_inputs_give_half_l1(self):
        a = DensityOperator.from_matrix(np.diag([0.7, 0.2, 0.1, 0.0]).astype(complex))
        b = DensityOperator.from_matrix(np.diag([0.1, 0.3, 0.4, 0.2]).astype(complex))
        l1 = abs(0.7 - 0.1) + abs(0.2 - 0.3) + abs(0.1 - 0.4) + abs(0.0 - 0.2)
        assert trace_distance(a, b) == pytest.approx(l1 / 2, abs=1e-12)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            a, b, c = (random_density(rng, 2) for _ in range(3))
            assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-8

    def test_fuchs_van_de_graaff_sandwich(self):
        rng = np.random.default_rng(7)
        for _ in range(15):
            a = random_density(rng, 2)
            b = random_density(rng, 2)
            f = fidelity(a, b)
            d = trace_distance(a, b)
            assert 1 - math.sqrt(f) <= d + 1e-6
            assert d <= math.sqrt(1 - f) + 1e-6


class TestConcurrence:
    def test_bell_state_is_maximally_entangled(self):
        assert concurrence(DensityOperator.from_pure(BELL)) == pytest.approx(1.0, abs=1e-8)

    def test_product_state_is_zero(self):
        assert concurrence(DensityOperator.from_pure([1, 0, 0, 0])) == pytest.approx(0.0, abs=1e-10)

    def test_werner_state_against_independent_evaluation(self):
        # second code path: numpy-based matrix square roots of the R-matrix
        p = 0.5
        rho = p * np.outer(BELL, BELL.conj()) + (1 - p) * np.eye(4) / 4

        def np_sqrt(m):
            w, v = np.linalg.eigh(m)
            return (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T

        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        flip = np.kron(sx, sx)
        flipped = flip @ rho.conj() @ flip
        r = np_sqrt(np_sqrt(rho) @ flipped @ np_sqrt(rho))
        lam = np.sort(np.linalg.eigvalsh(r))[::-1]
        expected = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])

        ours = concurrence(DensityOperator.from_matrix(rho))
        assert ours == pytest.approx(expected, abs=1e-8)
        # Werner-state closed form at p=0.5: (3p - 1)/2
        assert ours == pytest.approx(0.25, abs=1e-8)

    def test_wrong_size_rejected(self):
        with pytest.raises(DimensionMismatchError):
            concurrence(DensityOperator.from_pure([1, 0]))


class TestEntanglementEntropy:
    def test_bell_pair_scores_one_bit(self):
        rho = DensityOperator.from_pure(BELL)
        assert entanglement_entropy(rho, [0]) == pytest.approx(1.0, abs=1e-10)

    def test_pure_product_state_scores_zero(self):
        rng = np.random.default_rng(8)
        a = random_pure(rng, 1)
        b = random_pure(rng, 1)
        joint = DensityOperator.from_pure(np.kron(a.pure_vector, b.pure_vector))
        assert entanglement_entropy(joint, [0]) == pytest.approx(0.0, abs=1e-10)

    def test_ghz_marginal(self):
        ghz = np.zeros(8, dtype=complex)
        ghz[0] = ghz[7] = 1 / math.sqrt(2)
        rho = DensityOperator.from_pure(ghz)
        assert entanglement_entropy(rho, [0]) == pytest.approx(1.0, abs=1e-10)

    def test_pure_state_symmetry(self):
        rng = np.random.default_rng(9)
        rho = random_pure(rng, 3)
        s_a = entanglement_entropy(rho, [0])
        s_b = entanglement_entropy(rho, [1, 2])
        assert s_a == pytest.approx(s_b, abs=1e-6)

    def test_invariant_under_local_unitary(self):
        rng = np.random.default_rng(10)
        rho = random_pure(rng, 2)
        u = linalg.kron(random_unitary(rng, 2), np.eye(2))
        rotated = DensityOperator.from_matrix(u @ rho.matrix @ u.conj().T)
        assert entanglement_entropy(rotated, [0]) == pytest.approx(
            entanglement_entropy(rho, [0]), abs=1e-6
        )

    def test_bad_subsystem_rejected(self):
        rho = DensityOperator.from_pure(BELL)
        with pytest.raises(SubsystemError):
            entanglement_entropy(rho, [])
        with pytest.raises(SubsystemError):
            entanglement_entropy(rho, [0, 1])
        with pytest.raises(SubsystemError):
            entanglement_entropy(rho, [3])
