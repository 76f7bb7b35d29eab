"""Tests for circuit simulation, shadow sampling, and the perturbation model."""

import math

import numpy as np
import pytest

from zecs.errors import CircuitSpecError, DimensionMismatchError, RecordError, ValidationError
from zecs.simulator import (
    Circuit,
    Gate,
    SnapshotRecord,
    StateVector,
    build_efficient_su2,
    perturb_state,
    random_su2_params,
    run,
    sample_shadow,
    zero_state,
)
from zecs.states import DensityOperator

# chi-squared critical value, df=1, p=0.001
_CHI2_1DF_P001 = 10.828


def spearman(xs, ys):
    def ranks(v):
        order = np.argsort(v)
        r = np.empty(len(v))
        r[order] = np.arange(len(v))
        return r

    rx, ry = ranks(np.asarray(xs)), ranks(np.asarray(ys))
    return float(np.corrcoef(rx, ry)[0, 1])


class TestCircuitConstruction:
    def test_layer_schedule_two_qubits_one_rep(self):
        params = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
        circuit = build_efficient_su2(2, 1, params)
        kinds = [(g.kind, g.target) for g in circuit.gates]
        assert kinds == [
            ("ry", 0), ("ry", 1), ("rz", 0), ("rz", 1),
            ("cnot", 1),
            ("ry", 0), ("ry", 1), ("rz", 0), ("rz", 1),
        ]
        assert circuit.gates[4].control == 0
        angles = [g.angle for g in circuit.gates if g.angle is not None]
        assert angles == params

    def test_parameter_count_enforced(self):
        with pytest.raises(CircuitSpecError):
            build_efficient_su2(2, 1, [0.0] * 7)
        with pytest.raises(CircuitSpecError):
            build_efficient_su2(3, 2, [0.0] * 25)

    def test_reps_must_be_positive(self):
        with pytest.raises(CircuitSpecError):
            build_efficient_su2(3, 0, [])

    def test_parameter_consumption_scales(self):
        circuit = build_efficient_su2(3, 7, [0.0] * (4 * 7 * 3))
        rotations = [g for g in circuit.gates if g.kind != "cnot"]
        assert len(rotations) == 4 * 7 * 3
        ladders = [g for g in circuit.gates if g.kind == "cnot"]
        assert len(ladders) == 7 * 2

    def test_zero_parameters_fix_the_zero_state(self):
        circuit = build_efficient_su2(3, 2, [0.0] * 24)
        out = run(circuit)
        expected = np.zeros(8)
        expected[0] = 1.0
        assert np.allclose(out.amplitudes, expected, atol=1e-12)

    def test_gate_validation(self):
        with pytest.raises(CircuitSpecError):
            Circuit(2, (Gate("cnot", target=0, control=0),))
        with pytest.raises(CircuitSpecError):
            Circuit(1, (Gate("ry", target=0),))
        with pytest.raises(CircuitSpecError):
            Circuit(1, (Gate("hadamard", target=0, angle=1.0),))


class TestRun:
    def test_empty_circuit_is_identity(self):
        init = zero_state(2)
        out = run(Circuit(2, ()), init)
        assert np.array_equal(out.amplitudes, init.amplitudes)

    def test_ry_pi_flips(self):
        out = run(Circuit(1, (Gate("ry", 0, angle=math.pi),)))
        assert abs(out.amplitudes[1]) == pytest.approx(1.0, abs=1e-12)

    def test_bell_circuit(self):
        circuit = Circuit(2, (Gate("ry", 0, angle=math.pi / 2), Gate("cnot", target=1, control=0)))
        out = run(circuit)
        expected = np.array([1, 0, 0, 1]) / math.sqrt(2)
        assert np.allclose(out.amplitudes, expected, atol=1e-10)

    def test_norm_preserved(self):
        rng = np.random.default_rng(0)
        circuit = build_efficient_su2(3, 3, rng.uniform(0, math.pi, 36))
        out = run(circuit)
        assert abs(np.linalg.norm(out.amplitudes) - 1.0) <= 1e-10

    def test_inverse_circuit_returns_initial(self):
        rng = np.random.default_rng(1)
        circuit = build_efficient_su2(3, 2, rng.uniform(0, math.pi / 2, 24))
        state = run(circuit)
        back = run(circuit.inverse(), state)
        expected = np.zeros(8)
        expected[0] = 1.0
        assert np.allclose(back.amplitudes, expected, atol=1e-8)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            run(Circuit(2, ()), zero_state(1))

    def test_statevector_norm_validated(self):
        with pytest.raises(ValidationError):
            StateVector(1, np.array([1.0, 1.0]))


class TestSampleShadow:
    def test_z_basis_on_zero_state_yields_zeros(self):
        records = sample_shadow(zero_state(1), 500, seed=0)
        for rec in records:
            if rec.bases == "Z":
                assert rec.bits == "0"

    def test_x_basis_on_plus_state_is_certain(self):
        plus = StateVector(1, np.array([1, 1]) / math.sqrt(2))
        records = sample_shadow(plus, 600, seed=1)
        z_bits = []
        for rec in records:
            if rec.bases == "X":
                assert rec.bits == "0"
            elif rec.bases == "Z":
                z_bits.append(int(rec.bits))
        # Z outcomes on |+> are an unbiased coin
        n = len(z_bits)
        ones = sum(z_bits)
        chi2 = (ones - n / 2) ** 2 / (n / 2) + ((n - ones) - n / 2) ** 2 / (n / 2)
        assert chi2 < _CHI2_1DF_P001

    def test_bell_z_outcomes_perfectly_correlated(self):
        bell = StateVector(2, np.array([1, 0, 0, 1]) / math.sqrt(2))
        records = sample_shadow(bell, 2000, seed=2)
        zz = {rec.bits for rec in records if rec.bases == "ZZ"}
        assert zz <= {"00", "11"}

    def test_reproducible_from_seed(self):
        state = StateVector(2, np.array([0.5, 0.5, 0.5, 0.5]))
        a = sample_shadow(state, 50, seed=9)
        b = sample_shadow(state, 50, seed=9)
        assert a == b
        c = sample_shadow(state, 50, seed=10)
        assert a != c

    def test_basis_frequencies_uniform(self):
        state = zero_state(2)
        n = 30_000
        records = sample_shadow(state, n, seed=3)
        for q in range(2):
            for letter in "XYZ":
                count = sum(1 for rec in records if rec.bases[q] == letter)
                sigma = math.sqrt(n * (1 / 3) * (2 / 3))
                assert abs(count - n / 3) <= 3 * sigma

    def test_product_state_marginals_match_born(self):
        # |+> (x) |1>: X on qubit 0 certain, Z on qubit 1 certain
        amps = np.kron(np.array([1, 1]) / math.sqrt(2), np.array([0, 1]))
        state = StateVector(2, amps)
        records = sample_shadow(state, 10_000, seed=4)
        q0_z = [int(r.bits[0]) for r in records if r.bases[0] == "Z"]
        n, ones = len(q0_z), sum(q0_z)
        chi2 = (ones - n / 2) ** 2 / (n / 2) + ((n - ones) - n / 2) ** 2 / (n / 2)
        assert chi2 < _CHI2_1DF_P001
        for rec in records:
            if rec.bases[1] == "Z":
                assert rec.bits[1] == "1"

    def test_record_validation(self):
        with pytest.raises(RecordError):
            SnapshotRecord(bases="XQ", bits="00")
        with pytest.raises(RecordError):
            SnapshotRecord(bases="XY", bits="02")
        with pytest.raises(RecordError):
            SnapshotRecord(bases="XY", bits="0")


class TestPerturbState:
    @pytest.fixture
    def bell(self):
        return DensityOperator.from_pure(np.array([1, 0, 0, 1]) / math.sqrt(2))

    def test_sigma_zero_is_identity(self, bell):
        assert perturb_state(bell, 0.0, seed=5) is bell

    def test_output_is_physical(self, bell):
        for seed in range(20):
            out = perturb_state(bell, 0.3, seed=seed)
            assert out.validated
            assert np.trace(out.matrix).real == pytest.approx(1.0, abs=1e-10)

    def test_wrong_size(self):
        single = DensityOperator.from_pure([1, 0])
        with pytest.raises(DimensionMismatchError):
            perturb_state(single, 0.1, seed=0)

    def test_sigma_range_enforced(self, bell):
        with pytest.raises(ValueError):
            perturb_state(bell, 0.6, seed=0)
        with pytest.raises(ValueError):
            perturb_state(bell, -0.1, seed=0)

    def test_distance_stochastically_increasing(self, bell):
        sigmas = [0.05, 0.15, 0.25, 0.35, 0.45]
        means = []
        for i, sigma in enumerate(sigmas):
            dists = [
                np.linalg.norm(perturb_state(bell, sigma, seed=200 * i + t).matrix - bell.matrix)
                for t in range(200)
            ]
            means.append(np.mean(dists))
        assert spearman(sigmas, means) > 0.9
        assert all(b > a for a, b in zip(means, means[1:]))

    def test_reproducible(self, bell):
        a = perturb_state(bell, 0.2, seed=42)
        b = perturb_state(bell, 0.2, seed=42)
        assert np.array_equal(a.matrix, b.matrix)


class TestRandomParams:
    def test_range_and_shape(self):
        params = random_su2_params(3, 7, seed=0)
        assert params.shape == (84,)
        assert params.min() >= 0.0 and params.max() <= math.pi / 2
