"""Invert randomized-measurement records and aggregate them into a state estimate.

Each record contributes the tensor product, over the selected qubits, of
``3 U† |b><b| U - I`` where ``U`` rotates the measured Pauli basis to the
computational one (X via Hadamard, Y via Hadamard after S-dagger).  Every
single-qubit factor has unit trace and eigenvalues {2, -1}, so the running
mean has exact unit trace but is generally indefinite.

Subsystem estimates are built by extracting the per-qubit tensor factors of
the chosen qubits record by record; the full-device operator is never formed.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CoverageError,
    EmptyAccumulatorError,
    MergeError,
    SubsystemError,
)
from .simulator import BASIS_LETTERS, BASIS_ROTATIONS, SnapshotRecord
from .states import DensityOperator

_CHUNK_ENTRIES = 2**22


def _single_qubit_factors() -> np.ndarray:
    """Factors indexed by [basis, bit] -> 2x2 inverted-channel matrix."""
    table = np.empty((3, 2, 2, 2), dtype=complex)
    for b, letter in enumerate(BASIS_LETTERS):
        u = BASIS_ROTATIONS[letter]
        for bit in (0, 1):
            ket = np.zeros(2, dtype=complex)
            ket[bit] = 1.0
            rotated = u.conj().T @ ket
            table[b, bit] = 3.0 * np.outer(rotated, rotated.conj()) - np.eye(2)
    return table


_FACTORS = _single_qubit_factors()
_BASIS_INDEX = {letter: i for i, letter in enumerate(BASIS_LETTERS)}


def _check_subset(record: SnapshotRecord, qubit_subset: Sequence[int]) -> None:
    for q in qubit_subset:
        if q < 0 or q >= record.n_qubits:
            raise CoverageError(
                f"record covers qubits 0..{record.n_qubits - 1}, subset asks for {q}"
            )


def invert_snapshot(record: SnapshotRecord, qubit_subset: Sequence[int]) -> np.ndarray:
    """Inverted snapshot restricted to ``qubit_subset``, in subset order."""
    subset = list(qubit_subset)
    if not subset or len(set(subset)) != len(subset):
        raise SubsystemError(f"qubit subset {subset} must be non-empty without repeats")
    _check_subset(record, subset)
    out = np.array([[1.0 + 0j]])
    for q in subset:
        factor = _FACTORS[_BASIS_INDEX[record.bases[q]], int(record.bits[q])]
        out = np.kron(out, factor)
    return out


class ShadowAccumulator:
    """Running sum of inverted snapshots over a fixed qubit subset.

    Stores the raw sum (not the mean) so that merging shards is exact.
    Single-writer: shard streams across accumulators and merge afterwards.
    """

    def __init__(self, qubit_subset: Sequence[int]):
        subset = tuple(int(q) for q in qubit_subset)
        if not subset or len(set(subset)) != len(subset):
            raise SubsystemError(f"qubit subset {subset} must be non-empty without repeats")
        self.qubit_subset = subset
        self.count = 0
        dim = 2 ** len(subset)
        self.sum_matrix = np.zeros((dim, dim), dtype=complex)

    def add(self, record: SnapshotRecord) -> "ShadowAccumulator":
        """Absorb one record."""
        self.sum_matrix += invert_snapshot(record, self.qubit_subset)
        self.count += 1
        return self

    def add_many(self, records: Iterable[SnapshotRecord]) -> "ShadowAccumulator":
        """Absorb a batch of records with vectorized Kronecker products."""
        records = list(records)
        if not records:
            return self
        for rec in records:
            _check_subset(rec, self.qubit_subset)
        k = len(self.qubit_subset)
        dim = 2**k
        basis_idx = np.array(
            [[_BASIS_INDEX[rec.bases[q]] for q in self.qubit_subset] for rec in records]
        )
        bit_idx = np.array([[int(rec.bits[q]) for q in self.qubit_subset] for rec in records])
        chunk = max(1, _CHUNK_ENTRIES // (dim * dim))
        for start in range(0, len(records), chunk):
            b = basis_idx[start : start + chunk]
            o = bit_idx[start : start + chunk]
            prod = _FACTORS[b[:, 0], o[:, 0]]
            for j in range(1, k):
                nxt = _FACTORS[b[:, j], o[:, j]]
                prod = np.einsum("rab,rcd->racbd", prod, nxt).reshape(
                    b.shape[0], prod.shape[1] * 2, prod.shape[1] * 2
                )
            self.sum_matrix += prod.sum(axis=0)
        self.count += len(records)
        return self


def accumulate(acc: ShadowAccumulator, record: SnapshotRecord) -> ShadowAccumulator:
    """Functional alias for :meth:`ShadowAccumulator.add`."""
    return acc.add(record)


def merge(a: ShadowAccumulator, b: ShadowAccumulator) -> ShadowAccumulator:
    """Combine two shards; exactly equivalent to sequential accumulation."""
    if a.qubit_subset != b.qubit_subset:
        raise MergeError(f"subset mismatch: {a.qubit_subset} vs {b.qubit_subset}")
    out = ShadowAccumulator(a.qubit_subset)
    out.count = a.count + b.count
    out.sum_matrix = a.sum_matrix + b.sum_matrix
    return out


def rho_cs(acc: ShadowAccumulator) -> DensityOperator:
    """Mean of the absorbed snapshots: Hermitian, unit trace, not necessarily PSD."""
    if acc.count == 0:
        raise EmptyAccumulatorError("no records absorbed")
    mean = acc.sum_matrix / acc.count
    mean = (mean + mean.conj().T) / 2.0
    return DensityOperator.from_matrix(mean, validate=False)


def reconstruct(
    records: Sequence[SnapshotRecord], qubit_subset: Sequence[int]
) -> DensityOperator:
    """One-shot helper: accumulate all records and return the mean state."""
    acc = ShadowAccumulator(qubit_subset)
    acc.add_many(records)
    return rho_cs(acc)
