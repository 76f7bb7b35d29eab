"""State-vector simulation, shadow-record sampling, and the perturbation model.

Circuits are flat gate lists over {RY, RZ, CNOT}.  The layered ansatz
(:func:`build_efficient_su2`) consumes ``4 * reps * n_qubits`` angles; each
repetition is an RY column, an RZ column, a linear CNOT ladder, then a
second RY and RZ column.

Shadow sampling measures every qubit in a uniformly random Pauli basis and
draws the bit string from the exact Born distribution of the basis-rotated
state.  Streams are reproducible bit-for-bit from the seed (PCG64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import CircuitSpecError, DimensionMismatchError, RecordError, ValidationError
from .states import DensityOperator

RY = "ry"
RZ = "rz"
CNOT = "cnot"

#: Basis letters in the order basis index 0, 1, 2 maps to.
BASIS_LETTERS = "XYZ"

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S_DAG = np.array([[1, 0], [0, -1j]], dtype=complex)

#: Rotation applied before a computational-basis measurement, per basis letter.
BASIS_ROTATIONS = {
    "X": _HADAMARD,
    "Y": _HADAMARD @ _S_DAG,
    "Z": np.eye(2, dtype=complex),
}

_MAX_SIM_QUBITS = 12


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    control: int | None = None
    angle: float | None = None


@dataclass(frozen=True, eq=False)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise CircuitSpecError("circuit needs at least one qubit")
        for g in self.gates:
            if not 0 <= g.target < self.n_qubits:
                raise CircuitSpecError(f"gate target {g.target} out of range")
            if g.kind == CNOT:
                if g.control is None or not 0 <= g.control < self.n_qubits:
                    raise CircuitSpecError("cnot needs an in-range control qubit")
                if g.control == g.target:
                    raise CircuitSpecError("cnot control and target must differ")
            elif g.kind in (RY, RZ):
                if g.angle is None:
                    raise CircuitSpecError(f"{g.kind} gate needs an angle")
            else:
                raise CircuitSpecError(f"unknown gate kind {g.kind!r}")
        object.__setattr__(self, "gates", tuple(self.gates))

    def inverse(self) -> "Circuit":
        """Reversed gate order with negated rotation angles."""
        inv = []
        for g in reversed(self.gates):
            if g.kind == CNOT:
                inv.append(g)
            else:
                inv.append(Gate(g.kind, g.target, angle=-g.angle))
        return Circuit(self.n_qubits, tuple(inv))


@dataclass(frozen=True, eq=False)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 2**self.n_qubits:
            raise DimensionMismatchError(
                f"{amps.shape[0]} amplitudes do not describe {self.n_qubits} qubit(s)"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-10:
            raise ValidationError(f"state vector norm {norm:.12g} deviates from 1")
        object.__setattr__(self, "amplitudes", amps)

    def to_density(self) -> DensityOperator:
        return DensityOperator.from_pure(self.amplitudes)


@dataclass(frozen=True)
class SnapshotRecord:
    """One measurement event: per-qubit basis letter and observed bit."""

    bases: str
    bits: str
    circuit_id: str = ""

    def __post_init__(self):
        if len(self.bases) != len(self.bits):
            raise RecordError(f"bases/bits length mismatch: {self.bases!r} vs {self.bits!r}")
        if not self.bases:
            raise RecordError("record covers no qubits")
        bad = set(self.bases) - set("XYZ")
        if bad:
            raise RecordError(f"invalid basis character(s) {sorted(bad)}")
        bad = set(self.bits) - set("01")
        if bad:
            raise RecordError(f"invalid bit character(s) {sorted(bad)}")

    @property
    def n_qubits(self) -> int:
        return len(self.bases)


def zero_state(n_qubits: int) -> StateVector:
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def build_efficient_su2(n_qubits: int, reps: int, params: Sequence[float]) -> Circuit:
    """Layered SU(2) ansatz: per repetition RY, RZ, CNOT ladder, RY, RZ.

    Consumes exactly ``4 * reps * n_qubits`` angles in that column order;
    the CNOT ladder entangles ``i -> i+1`` down the chain.
    """
    if reps < 1:
        raise CircuitSpecError(f"reps must be >= 1, got {reps}")
    if n_qubits < 1:
        raise CircuitSpecError(f"n_qubits must be >= 1, got {n_qubits}")
    expected = 4 * reps * n_qubits
    angles = [float(p) for p in params]
    if len(angles) != expected:
        raise CircuitSpecError(
            f"need {expected} parameters for n_qubits={n_qubits}, reps={reps}; got {len(angles)}"
        )
    gates: list[Gate] = []
    it = iter(angles)

    def rotation_column(kind: str) -> None:
        for q in range(n_qubits):
            gates.append(Gate(kind, q, angle=next(it)))

    for _ in range(reps):
        rotation_column(RY)
        rotation_column(RZ)
        for q in range(n_qubits - 1):
            gates.append(Gate(CNOT, target=q + 1, control=q))
        rotation_column(RY)
        rotation_column(RZ)
    return Circuit(n_qubits, tuple(gates))


def _apply_single(amps: np.ndarray, u: np.ndarray, qubit: int, n: int) -> np.ndarray:
    t = amps.reshape([2] * n)
    t = np.tensordot(u, t, axes=([1], [qubit]))
    return np.moveaxis(t, 0, qubit).reshape(-1)


def _apply_cnot(amps: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    t = amps.reshape([2] * n).copy()
    sel_flip = [slice(None)] * n
    sel_flip[control] = 1
    block = t[tuple(sel_flip)]
    t[tuple(sel_flip)] = np.flip(block, axis=target - (1 if target > control else 0))
    return t.reshape(-1)


def _gate_matrix(gate: Gate) -> np.ndarray:
    half = gate.angle / 2.0
    if gate.kind == RY:
        return np.array(
            [[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]], dtype=complex
        )
    return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)


def run(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Apply the circuit to ``initial`` (default all-zeros) and return the result."""
    if circuit.n_qubits > _MAX_SIM_QUBITS:
        raise DimensionMismatchError(f"simulation capped at {_MAX_SIM_QUBITS} qubits")
    if initial is None:
        initial = zero_state(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise DimensionMismatchError(
            f"initial state has {initial.n_qubits} qubits, circuit {circuit.n_qubits}"
        )
    amps = initial.amplitudes.copy()
    n = circuit.n_qubits
    for gate in circuit.gates:
        if gate.kind == CNOT:
            amps = _apply_cnot(amps, gate.control, gate.target, n)
        else:
            amps = _apply_single(amps, _gate_matrix(gate), gate.target, n)
    norm = np.linalg.norm(amps)
    return StateVector(n, amps / norm)


def _measurement_distribution(state: StateVector, basis_indices: tuple[int, ...]) -> np.ndarray:
    amps = state.amplitudes
    n = state.n_qubits
    for q, b in enumerate(basis_indices):
        letter = BASIS_LETTERS[b]
        if letter != "Z":
            amps = _apply_single(amps, BASIS_ROTATIONS[letter], q, n)
    probs = np.abs(amps) ** 2
    return probs / probs.sum()


def sample_shadow(
    state: StateVector, n_records: int, seed: int, circuit_id: str = ""
) -> list[SnapshotRecord]:
    """Draw ``n_records`` randomized Pauli-basis measurement records.

    Per record each qubit's basis is uniform over {X, Y, Z} and the joint
    bit string follows the Born distribution of the rotated state.  Rotated
    distributions are cached per basis string, so repeated bases are cheap.
    """
    if n_records < 1:
        raise ValueError(f"n_records must be >= 1, got {n_records}")
    n = state.n_qubits
    rng = np.random.default_rng(seed)
    bases = rng.integers(0, 3, size=(n_records, n))
    draws = rng.random(n_records)
    cache: dict[tuple[int, ...], np.ndarray] = {}
    records = []
    for r in range(n_records):
        key = tuple(int(b) for b in bases[r])
        cdf = cache.get(key)
        if cdf is None:
            cdf = np.cumsum(_measurement_distribution(state, key))
            cache[key] = cdf
        outcome = int(np.searchsorted(cdf, draws[r], side="right"))
        outcome = min(outcome, 2**n - 1)
        records.append(
            SnapshotRecord(
                bases="".join(BASIS_LETTERS[b] for b in key),
                bits=format(outcome, f"0{n}b"),
                circuit_id=circuit_id,
            )
        )
    return records


_PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def perturb_state(rho0: DensityOperator, sigma: float, seed: int) -> DensityOperator:
    """Randomly perturb a 2-qubit state and project back to a physical one.

    Adds ``(1/2) sum_ij eta_ij P_i (x) P_j`` over all 16 two-qubit Pauli
    pairs with ``eta_ij ~ N(0, sigma**2)`` i.i.d., then restores positivity
    by replacing eigenvalues with their absolute values and renormalizing
    the trace to 1.  ``sigma=0`` returns the input unchanged.
    """
    if rho0.n_qubits != 2:
        raise DimensionMismatchError("perturbation model is defined for 2-qubit states")
    if not 0.0 <= sigma <= 0.5:
        raise ValueError(f"sigma must lie in [0, 0.5], got {sigma}")
    if sigma == 0.0:
        return rho0
    rng = np.random.default_rng(seed)
    eta = rng.normal(0.0, sigma, size=(4, 4))
    perturbed = rho0.matrix.astype(complex).copy()
    for i in range(4):
        for j in range(4):
            perturbed += 0.5 * eta[i, j] * linalg.kron(_PAULIS[i], _PAULIS[j])
    decomp = linalg.eigh(perturbed)
    magnitudes = np.abs(decomp.eigenvalues)
    v = decomp.eigenvectors
    out = (v * (magnitudes / magnitudes.sum())) @ v.conj().T
    out = (out + out.conj().T) / 2.0
    return DensityOperator.from_matrix(out, validate=True)


def random_su2_params(n_qubits: int, reps: int, seed: int) -> np.ndarray:
    """Ansatz angles drawn uniformly from [0, pi/2], the protocol's choice."""
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, math.pi / 2.0, size=4 * reps * n_qubits)
