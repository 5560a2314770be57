"""Extensive conserved quantities and conservation audits.

A charge is a single-subsystem Hermitian observable; its extensive total on a
joint space is the sum of one copy per subsystem. Charges are arbitrary
user-supplied Hermitians, deliberately not tied to any symmetry group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import is_hermitian, operator_norm, tensor

# Dense joint spaces beyond this dimension are refused rather than attempted.
DEFAULT_DIMENSION_CAP = 4096


class CapacityError(ValueError):
    """Raised when a lifted operator would exceed the dense-dimension cap."""


@dataclass(frozen=True)
class ExtensiveObservable:
    """A single-subsystem Hermitian charge with a label for reports."""

    matrix: np.ndarray
    label: str = "A"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("charge must be a square matrix")
        if not is_hermitian(m):
            raise ValueError(f"charge {self.label!r} is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def embed(op, dims, slot: int) -> np.ndarray:
    """Place ``op`` at subsystem ``slot`` of a joint space, identity elsewhere."""
    op = np.asarray(op, dtype=complex)
    dims = [int(d) for d in dims]
    if op.shape != (dims[slot], dims[slot]):
        raise ValueError(
            f"operator of dimension {op.shape[0]} does not fit slot {slot} of dims {tuple(dims)}"
        )
    left = int(np.prod(dims[:slot])) if slot else 1
    right = int(np.prod(dims[slot + 1:])) if slot + 1 < len(dims) else 1
    return tensor(np.eye(left), op, np.eye(right))


def lift_extensive(
    charge: ExtensiveObservable | np.ndarray,
    n: int,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> np.ndarray:
    """Extensive total of a charge over n identical subsystems."""
    a = charge.matrix if isinstance(charge, ExtensiveObservable) else np.asarray(charge, dtype=complex)
    if n < 1:
        raise ValueError("need at least one subsystem")
    d = a.shape[0]
    if d**n > cap:
        raise CapacityError(f"joint dimension {d}^{n} exceeds cap {cap}")
    dims = [d] * n
    total = np.zeros((d**n, d**n), dtype=complex)
    for slot in range(n):
        total += embed(a, dims, slot)
    return total


def partial_sum(charge, dims, slots) -> np.ndarray:
    """Sum of one copy of the charge on each of ``slots`` of a joint space."""
    a = charge.matrix if isinstance(charge, ExtensiveObservable) else np.asarray(charge, dtype=complex)
    total = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for slot in slots:
        total += embed(a, dims, slot)
    return total


def commutator_norm(v, a_tot) -> float:
    """Operator norm of [V, A_total]; zero means exact conservation."""
    v = np.asarray(v, dtype=complex)
    a_tot = np.asarray(a_tot, dtype=complex)
    if v.shape != a_tot.shape:
        raise ValueError(f"dimension mismatch: {v.shape} vs {a_tot.shape}")
    return operator_norm(v @ a_tot - a_tot @ v)


def audit_evolution(before, after, charge: ExtensiveObservable, n: int | None = None) -> float:
    """Change of the extensive total of a charge across a joint evolution.

    ``n`` is the number of subsystems; inferred from the matrix dimension when
    omitted. Charge-conserving evolutions give deltas at fp-noise level.
    """
    before = np.asarray(before, dtype=complex)
    after = np.asarray(after, dtype=complex)
    if before.shape != after.shape:
        raise ValueError(f"dimension mismatch: {before.shape} vs {after.shape}")
    d = charge.dim
    if n is None:
        n = int(round(np.log(before.shape[0]) / np.log(d)))
    if d**n != before.shape[0]:
        raise ValueError(
            f"joint dimension {before.shape[0]} is not {d}^{n} for charge {charge.label!r}"
        )
    a_tot = lift_extensive(charge, n)
    return float(np.trace(a_tot @ (after - before)).real)
