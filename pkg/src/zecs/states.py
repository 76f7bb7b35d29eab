"""Density operators and the closeness / entanglement metrics built on them.

Fidelity follows the Uhlmann form ``F = Tr(sqrt(sqrt(r1) r2 sqrt(r1)))**2``,
trace distance is ``D = Tr|r1 - r2| / 2``, concurrence comes from the
spin-flipped R-matrix spectrum, and entanglement entropy is the base-2 von
Neumann entropy of a marginal (a Bell pair scores exactly 1).

Shadow reconstructions are generally indefinite; metric functions clamp
negative eigenvalues internally instead of rejecting such inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, SubsystemError, ValidationError

#: Tolerances for deciding that an operator is a physical density operator.
TRACE_TOL = 1e-8
PSD_TOL = 1e-8
_PURITY_TOL = 1e-10

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian unit-trace operator on ``n_qubits`` qubits.

    ``validated`` records whether the PSD and unit-trace checks passed;
    raw shadow reconstructions carry ``validated=False``.  ``pure_vector``
    caches the state vector when the operator is a known rank-1 projector.
    """

    n_qubits: int
    matrix: np.ndarray
    validated: bool = False
    pure_vector: np.ndarray | None = field(default=None)

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        if self.n_qubits < 1 or m.shape[0] != 2**self.n_qubits:
            raise DimensionMismatchError(
                f"matrix of dim {m.shape[0]} does not describe {self.n_qubits} qubit(s)"
            )
        if linalg.hermiticity_defect(m) > linalg.HERMITICITY_TOL:
            raise ValidationError("density operator must be Hermitian within 1e-8")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, *, validate: bool = True) -> "DensityOperator":
        """Wrap a matrix; with ``validate`` the trace and PSD checks must pass."""
        m = linalg.as_matrix(matrix)
        n = int(round(math.log2(m.shape[0])))
        if 2**n != m.shape[0]:
            raise DimensionMismatchError(f"dimension {m.shape[0]} is not a power of two")
        if not validate:
            return cls(n_qubits=n, matrix=m, validated=False)
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace {trace:.6g} deviates from 1 beyond {TRACE_TOL:.1e}")
        smallest = linalg.eigh(m).eigenvalues.min()
        if smallest < -PSD_TOL:
            raise ValidationError(f"minimum eigenvalue {smallest:.3e} below -{PSD_TOL:.1e}")
        return cls(n_qubits=n, matrix=m, validated=True)

    @classmethod
    def from_pure(cls, vector: np.ndarray) -> "DensityOperator":
        """Density operator of a pure state, keeping the vector cached."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        n = int(round(math.log2(v.shape[0])))
        if 2**n != v.shape[0]:
            raise DimensionMismatchError(f"length {v.shape[0]} is not a power of two")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-10:
            raise ValidationError(f"state vector norm {norm:.12g} deviates from 1")
        return cls(n_qubits=n, matrix=np.outer(v, v.conj()), validated=True, pure_vector=v)

    def clamped(self) -> tuple[np.ndarray, float]:
        """PSD projection of the matrix plus the removed negative magnitude."""
        if self.validated or self.pure_vector is not None:
            return self.matrix, 0.0
        return linalg.clamp_psd(self.matrix)


def _rank_one_vector(rho: DensityOperator, matrix: np.ndarray) -> np.ndarray | None:
    """Return the state vector if ``matrix`` is a rank-1 projector, else None."""
    if rho.pure_vector is not None:
        return rho.pure_vector
    purity = float(np.trace(matrix @ matrix).real)
    trace = float(np.trace(matrix).real)
    if abs(trace - 1.0) > 1e-8 or abs(purity - 1.0) > _PURITY_TOL:
        return None
    decomp = linalg.eigh(matrix)
    return decomp.eigenvectors[:, 0]


def _check_same_dim(a: DensityOperator, b: DensityOperator) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"operator dims differ: {a.dim} vs {b.dim}")


def fidelity(a: DensityOperator, b: DensityOperator) -> float:
    """Uhlmann fidelity between two states, in [0, 1] up to rounding.

    Indefinite inputs are clamped to the PSD cone first.  When either state
    is rank-1 the overlap form ``<psi| rho |psi>`` is used directly.
    """
    _check_same_dim(a, b)
    am, _ = a.clamped()
    bm, _ = b.clamped()
    vec_a = _rank_one_vector(a, am)
    if vec_a is not None:
        return float(np.real(vec_a.conj() @ bm @ vec_a))
    vec_b = _rank_one_vector(b, bm)
    if vec_b is not None:
        return float(np.real(vec_b.conj() @ am @ vec_b))
    sqrt_a = linalg.mat_sqrt_psd(am)
    inner = sqrt_a @ bm @ sqrt_a
    roots = np.sqrt(np.maximum(linalg.eigh(inner).eigenvalues, 0.0))
    return float(roots.sum() ** 2)


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    """Half the trace norm of the difference of the two operators."""
    _check_same_dim(a, b)
    values = linalg.eigh(a.matrix - b.matrix).eigenvalues
    return float(np.abs(values).sum() / 2.0)


def concurrence(rho: DensityOperator) -> float:
    """Two-qubit entanglement monotone from the spin-flipped R-matrix.

    ``R = sqrt(sqrt(rho) rho~ sqrt(rho))`` with
    ``rho~ = (X (x) X) conj(rho) (X (x) X)``; the result is
    ``max(0, l0 - l1 - l2 - l3)`` over the descending eigenvalues of R.
    """
    if rho.n_qubits != 2:
        raise DimensionMismatchError("concurrence is defined for exactly 2 qubits")
    m, _ = rho.clamped()
    flip = linalg.kron(_SIGMA_X, _SIGMA_X)
    flipped = flip @ m.conj() @ flip
    sqrt_m = linalg.mat_sqrt_psd(m)
    inner = sqrt_m @ flipped @ sqrt_m
    # R's eigenvalues are the square roots of inner's (inner is PSD up to noise).
    lam = np.sqrt(np.maximum(linalg.eigh(inner).eigenvalues, 0.0))
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def entanglement_entropy(rho: DensityOperator, subsystem_a: Sequence[int]) -> float:
    """Base-2 von Neumann entropy of the marginal on ``subsystem_a``.

    Marginal eigenvalues are clamped to [0, 1] and renormalized before the
    entropy sum, so slightly unphysical reconstructions are handled.
    """
    qubits = list(subsystem_a)
    if not qubits or len(set(qubits)) != len(qubits):
        raise SubsystemError(f"subsystem {qubits} must be non-empty without repeats")
    if any(q < 0 or q >= rho.n_qubits for q in qubits):
        raise SubsystemError(f"subsystem {qubits} out of range for {rho.n_qubits} qubits")
    if len(qubits) >= rho.n_qubits:
        raise SubsystemError("subsystem must be a proper subset of the qubits")
    marginal = linalg.partial_trace(rho.matrix, qubits, rho.n_qubits)
    probs = np.clip(linalg.eigh(marginal).eigenvalues, 0.0, 1.0)
    total = probs.sum()
    if total <= 0.0:
        raise ValidationError("marginal has no positive weight")
    probs = probs / total
    positive = probs[probs > 0.0]
    return float(-(positive * np.log2(positive)).sum())
