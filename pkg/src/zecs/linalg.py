"""Dense complex linear algebra for small qubit-sized operators.

Matrices are plain square ``numpy`` arrays of ``complex128`` in row-major
order.  The qubit-index convention used throughout the package: qubit 0 is
the most significant bit of the computational-basis index, so the first
factor of a Kronecker product acts on qubit 0.

The Hermitian eigensolver is a cyclic complex Jacobi iteration.  It is
dependency-free, deterministic, and accurate enough at the dimensions this
package works with (up to 2**10).
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_letters
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, DimensionMismatchError, NotHermitianError

#: Max entrywise deviation of ``m - m.conj().T`` tolerated for Hermitian input.
HERMITICITY_TOL = 1e-8

#: Eigenvalues in [-CLAMP_TOL, 0) are treated as numerical noise when clamping.
CLAMP_TOL = 1e-10

_MAX_DIM = 1024
_MAX_KRON_DIM = 2**20
_JACOBI_SWEEP_CAP = 100
_JACOBI_REL_TOL = 1e-12


def as_matrix(m: np.ndarray | Sequence) -> np.ndarray:
    """Coerce input to a square complex matrix, validating the shape."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation between ``m`` and its adjoint."""
    return float(np.abs(m - m.conj().T).max())


def require_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate hermiticity and return the symmetrized matrix ``(m + m†)/2``."""
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(f"matrix deviates from its adjoint by {defect:.3e} (tol {tol:.1e})")
    return (a + a.conj().T) / 2.0


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and sorted by descending absolute value (ties
    broken by descending signed value, then original diagonal position);
    ``eigenvectors`` holds the matching orthonormal columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(w) V†``."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Apply one unitary Jacobi rotation annihilating ``a[p, q]`` in place."""
    beta = a[p, q]
    mag = abs(beta)
    if mag < 1e-300:
        return
    phase = beta / mag
    alpha = a[p, p].real
    gamma = a[q, q].real
    tau = (alpha - gamma) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    sigma = (t * c) * phase

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p + np.conj(sigma) * col_q
    a[:, q] = -sigma * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p + sigma * row_q
    a[q, :] = -np.conj(sigma) * row_p + c * row_q
    # Annihilated pair and diagonal are exactly real by construction.
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p + np.conj(sigma) * vec_q
    v[:, q] = -sigma * vec_p + c * vec_q


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eigh(m: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigendecompose a Hermitian matrix by cyclic complex Jacobi sweeps.

    Raises ``NotHermitianError`` when the input fails the hermiticity
    tolerance and ``ConvergenceError`` if the off-diagonal mass has not
    dropped below ``1e-12 * ||m||_F`` within 100 sweeps.
    """
    a = require_hermitian(m, tol)
    n = a.shape[0]
    if n > _MAX_DIM:
        raise DimensionMismatchError(f"dimension {n} exceeds the supported maximum {_MAX_DIM}")

    v = np.eye(n, dtype=complex)
    threshold = _JACOBI_REL_TOL * float(np.linalg.norm(a))
    if n > 1:
        for _ in range(_JACOBI_SWEEP_CAP):
            if _off_diagonal_norm(a) <= threshold:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    _jacobi_rotate(a, v, p, q)
        else:
            raise ConvergenceError(f"Jacobi iteration did not converge in {_JACOBI_SWEEP_CAP} sweeps")

    values = np.diag(a).real.copy()
    order = sorted(range(n), key=lambda i: (-abs(values[i]), -values[i], i))
    return EigenDecomposition(eigenvalues=values[order], eigenvectors=v[:, order])


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor is the more significant one."""
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape[0] * bm.shape[0] > _MAX_KRON_DIM:
        raise OverflowError(
            f"Kronecker product dimension {am.shape[0] * bm.shape[0]} exceeds {_MAX_KRON_DIM}"
        )
    return np.kron(am, bm)


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of a non-empty sequence of matrices, left to right."""
    if not len(factors):
        raise DimensionMismatchError("need at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def partial_trace(m: np.ndarray, keep: Sequence[int], n: int) -> np.ndarray:
    """Trace out all qubits not listed in ``keep`` from an ``n``-qubit operator.

    ``keep`` is an ordered list of distinct qubit indices; the result axes
    follow that order, so ``keep=[2, 0]`` returns an operator whose most
    significant qubit is original qubit 2.  ``keep=[]`` yields the 1x1
    matrix ``[[trace]]``.
    """
    a = as_matrix(m)
    if n < 0 or a.shape[0] != 2**n:
        raise DimensionMismatchError(f"matrix of dim {a.shape[0]} is not a {n}-qubit operator")
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise IndexError(f"duplicate qubit indices in keep={keep}")
    for q in keep:
        if not 0 <= q < n:
            raise IndexError(f"qubit index {q} out of range for {n} qubits")

    if not keep:
        return np.array([[np.trace(a)]], dtype=complex)

    keep_set = set(keep)
    row = {}
    col = {}
    symbols = iter(ascii_letters)
    for q in range(n):
        if q in keep_set:
            row[q] = next(symbols)
            col[q] = next(symbols)
        else:
            shared = next(symbols)
            row[q] = shared
            col[q] = shared
    source = "".join(row[q] for q in range(n)) + "".join(col[q] for q in range(n))
    target = "".join(row[q] for q in keep) + "".join(col[q] for q in keep)
    reduced = np.einsum(f"{source}->{target}", a.reshape([2] * (2 * n)))
    dim = 2 ** len(keep)
    return reduced.reshape(dim, dim)


def clamp_psd(m: np.ndarray) -> tuple[np.ndarray, float]:
    """Project a Hermitian matrix onto the PSD cone by zeroing negative eigenvalues.

    Returns the clamped matrix and the total magnitude of eigenvalues below
    ``-CLAMP_TOL`` that had to be removed (0.0 when only numerical-noise
    negatives were present).  The trace is not renormalized.
    """
    decomp = eigh(m)
    values = decomp.eigenvalues
    clamped_magnitude = float(-values[values < -CLAMP_TOL].sum())
    positive = np.maximum(values, 0.0)
    v = decomp.eigenvectors
    out = (v * positive) @ v.conj().T
    return (out + out.conj().T) / 2.0, clamped_magnitude


def mat_sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Negative eigenvalues are clamped to zero first, so mildly indefinite
    inputs (finite-sample shadow reconstructions) are accepted.
    """
    decomp = eigh(m)
    roots = np.sqrt(np.maximum(decomp.eigenvalues, 0.0))
    v = decomp.eigenvectors
    out = (v * roots) @ v.conj().T
    return (out + out.conj().T) / 2.0
