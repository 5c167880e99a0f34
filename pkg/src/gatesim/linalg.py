"""Dense complex linear algebra over composite qudit-cavity Hilbert spaces.

States and operators live on a :class:`HilbertSpace`: an ordered tuple of
subsystem dimensions, qudits first and the cavity mode last.  Basis indices
are mixed-radix numbers with the cavity digit least significant, i.e.
``|l1 .. ln> ⊗ |nc>`` maps to ``((l1*d2 + l2)*d3 + ...) * d_cav + nc``.
Fixing this one convention removes an entire class of indexing bugs.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to use from concurrent workers.
Hermitian time evolution uses the spectral decomposition of the (dense)
matrix, which is exact up to floating point; no step-wise integrator is
involved because every Hamiltonian in this package is time independent in
its rotating frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

# Default tolerances: analytic matrix identities vs. norm-level checks.
UNITARY_TOL = 1e-10
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12

QUDIT_LEVELS = 4


def _freeze(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class HilbertSpace:
    """Ordered subsystem dimensions; the last entry is the cavity truncation."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) < 1:
            raise ValueError("HilbertSpace needs at least one subsystem")
        if any(d < 1 for d in self.dims):
            raise ValueError(f"subsystem dimensions must be positive, got {self.dims}")

    @classmethod
    def for_qubits(cls, n_qubits: int, cavity_dim: int = 2) -> "HilbertSpace":
        """Standard layout: ``n_qubits`` four-level systems plus one cavity mode."""
        if n_qubits < 1:
            raise ValueError("need at least one qubit")
        if cavity_dim < 2:
            raise ValueError("cavity truncation must be at least 2")
        return cls((QUDIT_LEVELS,) * n_qubits + (cavity_dim,))

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    @property
    def n_qubits(self) -> int:
        return len(self.dims) - 1

    @property
    def cavity_slot(self) -> int:
        return len(self.dims) - 1

    @property
    def cavity_dim(self) -> int:
        return self.dims[-1]

    def index(self, levels: Sequence[int]) -> int:
        """Mixed-radix basis index of a product state, cavity least significant."""
        if len(levels) != len(self.dims):
            raise ValueError(f"expected {len(self.dims)} levels, got {len(levels)}")
        idx = 0
        for level, dim in zip(levels, self.dims):
            if not 0 <= level < dim:
                raise ValueError(f"level {level} out of range for dimension {dim}")
            idx = idx * dim + level
        return idx

    def levels(self, index: int) -> tuple[int, ...]:
        """Inverse of :meth:`index`."""
        if not 0 <= index < self.total_dim:
            raise ValueError(f"basis index {index} out of range")
        out = []
        for dim in reversed(self.dims):
            out.append(index % dim)
            index //= dim
        return tuple(reversed(out))

    def basis_vector(self, levels: Sequence[int]) -> np.ndarray:
        vec = np.zeros(self.total_dim, dtype=complex)
        vec[self.index(levels)] = 1.0
        return vec

    def basis_state(self, levels: Sequence[int]) -> "StateVector":
        return StateVector(self, self.basis_vector(levels))

    def computational_indices(self) -> list[int]:
        """Indices of qubit-{0,1} product states with the cavity in vacuum.

        Ordered as binary numbers with qubit 1 the most significant bit, so
        entry ``k`` is the state labelled by the bitstring of ``k``.
        """
        n = self.n_qubits
        out = []
        for k in range(2**n):
            bits = [(k >> (n - 1 - q)) & 1 for q in range(n)]
            out.append(self.index(bits + [0]))
        return out

    def computational_label(self, k: int) -> str:
        n = self.n_qubits
        return format(k, f"0{n}b")


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over a :class:`HilbertSpace`."""

    space: HilbertSpace
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = _freeze(self.amplitudes)
        if amps.shape != (self.space.total_dim,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({self.space.total_dim},)"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        _require_same_space(self.space, other.space)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def probability(self, indices: Sequence[int]) -> float:
        return float(np.sum(np.abs(self.amplitudes[list(indices)]) ** 2))

    def level_population(self, slot: int, level: int) -> float:
        """Total probability of finding subsystem ``slot`` at ``level``."""
        mask = subsystem_level_mask(self.space, slot, level)
        return float(np.sum(np.abs(self.amplitudes[mask]) ** 2))

    def residual_photon(self) -> float:
        """Probability that the cavity is not in vacuum."""
        return 1.0 - self.level_population(self.space.cavity_slot, 0)


def subsystem_level_mask(space: HilbertSpace, slot: int, level: int) -> np.ndarray:
    """Boolean mask over basis indices where subsystem ``slot`` sits at ``level``."""
    if not 0 <= slot < space.n_subsystems:
        raise ValueError(f"slot {slot} out of range")
    dims = space.dims
    below = math.prod(dims[slot + 1 :])
    digits = (np.arange(space.total_dim) // below) % dims[slot]
    return digits == level


def level_count_weights(space: HilbertSpace, level: int) -> np.ndarray:
    """Per-basis-state count of qubits sitting at ``level`` (cavity excluded)."""
    weights = np.zeros(space.total_dim)
    for slot in range(space.n_qubits):
        weights += subsystem_level_mask(space, slot, level)
    return weights


@dataclass(frozen=True)
class HermitianOperator:
    """Hermitian matrix over a space, in angular-frequency units (rad/s)."""

    space: HilbertSpace
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _freeze(self.matrix)
        dim = self.space.total_dim
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix has shape {mat.shape}, expected ({dim}, {dim})")
        defect = np.max(np.abs(mat - mat.conj().T)) if dim else 0.0
        if defect > HERMITIAN_TOL:
            raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
        object.__setattr__(self, "matrix", mat)

    @cached_property
    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues and eigenvectors, cached for repeated propagation."""
        w, v = np.linalg.eigh(self.matrix)
        return w, v


@dataclass(frozen=True)
class UnitaryMatrix:
    """Dense unitary over a space.  Unitarity is asserted by the test suite."""

    space: HilbertSpace
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _freeze(self.matrix)
        dim = self.space.total_dim
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix has shape {mat.shape}, expected ({dim}, {dim})")
        object.__setattr__(self, "matrix", mat)

    def unitarity_defect(self) -> float:
        """Frobenius norm of ``U†U - I``."""
        dim = self.space.total_dim
        return float(np.linalg.norm(self.matrix.conj().T @ self.matrix - np.eye(dim)))

    def dagger(self) -> "UnitaryMatrix":
        return UnitaryMatrix(self.space, self.matrix.conj().T)

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        _require_same_space(self.space, other.space)
        return UnitaryMatrix(self.space, self.matrix @ other.matrix)

    def apply(self, state: StateVector) -> StateVector:
        _require_same_space(self.space, state.space)
        return StateVector(self.space, self.matrix @ state.amplitudes)


def _require_same_space(a: HilbertSpace, b: HilbertSpace) -> None:
    if a.dims != b.dims:
        raise ValueError(f"operands live on different spaces: {a.dims} vs {b.dims}")


def _check_slots(space: HilbertSpace, slots: Sequence[int], local_dim: int) -> tuple[int, ...]:
    slots = tuple(int(s) for s in slots)
    if len(set(slots)) != len(slots):
        raise ValueError(f"duplicate slots in {slots}")
    for s in slots:
        if not 0 <= s < space.n_subsystems:
            raise ValueError(f"slot {s} out of range for {space.n_subsystems} subsystems")
    expected = math.prod(space.dims[s] for s in slots)
    if local_dim != expected:
        raise ValueError(
            f"local operator dimension {local_dim} does not match slot dims (expected {expected})"
        )
    return slots


def apply_local(
    local: np.ndarray, space: HilbertSpace, slots: Sequence[int], array: np.ndarray
) -> np.ndarray:
    """Apply a local operator on ``slots`` to a vector or a stack of columns.

    ``array`` has shape ``(D,)`` or ``(D, m)``; the result has the same shape.
    This avoids materialising the embedded ``D x D`` matrix, which matters for
    the larger gate spaces.
    """
    local = np.asarray(local, dtype=complex)
    if local.ndim != 2 or local.shape[0] != local.shape[1]:
        raise ValueError("local operator must be a square matrix")
    slots = _check_slots(space, slots, local.shape[0])

    arr = np.asarray(array, dtype=complex)
    single = arr.ndim == 1
    mat = arr.reshape(space.total_dim, -1)
    m = mat.shape[1]
    n = space.n_subsystems

    order = list(slots) + [i for i in range(n) if i not in slots]
    tensor = mat.reshape(space.dims + (m,))
    tensor = np.transpose(tensor, order + [n])
    head = math.prod(space.dims[s] for s in slots)
    tensor = local @ tensor.reshape(head, -1)
    tensor = tensor.reshape([space.dims[i] for i in order] + [m])
    inverse = np.argsort(order)
    tensor = np.transpose(tensor, list(inverse) + [n])
    out = tensor.reshape(space.total_dim, m)
    return out[:, 0] if single else out


def tensor_embed(local: np.ndarray, space: HilbertSpace, slots: Sequence[int]) -> np.ndarray:
    """Embed a local operator as ``local`` on ``slots`` and identity elsewhere.

    Subsystem ordering is preserved; the result acts on the full space.
    """
    return apply_local(local, space, slots, np.eye(space.total_dim, dtype=complex))


def embed_hermitian(
    local: np.ndarray, space: HilbertSpace, slots: Sequence[int]
) -> HermitianOperator:
    return HermitianOperator(space, tensor_embed(local, space, slots))


def embed_unitary(local: np.ndarray, space: HilbertSpace, slots: Sequence[int]) -> UnitaryMatrix:
    return UnitaryMatrix(space, tensor_embed(local, space, slots))


def evolve(state: StateVector, h: HermitianOperator, t: float) -> StateVector:
    """Propagate ``state`` under ``exp(-i H t)`` via spectral decomposition."""
    _require_same_space(state.space, h.space)
    if not math.isfinite(t):
        raise ValueError("evolution time must be finite")
    if t < 0:
        raise ValueError("evolution time must be non-negative (use propagator for inverses)")
    w, v = h.eig
    coeff = v.conj().T @ state.amplitudes
    return StateVector(state.space, v @ (np.exp(-1j * w * t) * coeff))


def evolve_times(state: StateVector, h: HermitianOperator, times: np.ndarray) -> np.ndarray:
    """Amplitudes of ``exp(-i H t)|state>`` for each ``t``; shape ``(len(times), D)``."""
    _require_same_space(state.space, h.space)
    w, v = h.eig
    coeff = v.conj().T @ state.amplitudes
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), w))
    return (phases * coeff) @ v.T


def propagator(h: HermitianOperator, t: float) -> UnitaryMatrix:
    """Full matrix ``exp(-i H t)``.  Negative ``t`` yields the inverse."""
    if not math.isfinite(t):
        raise ValueError("evolution time must be finite")
    w, v = h.eig
    return UnitaryMatrix(h.space, (v * np.exp(-1j * w * t)) @ v.conj().T)


def process_fidelity(u: UnitaryMatrix, v: UnitaryMatrix, subspace: Sequence[int]) -> float:
    """``|Tr(P u† v P)|² / d²`` on the subspace spanned by the given basis indices.

    Equals 1 iff the two unitaries agree on the subspace up to a global phase.
    """
    _require_same_space(u.space, v.space)
    idx = list(subspace)
    if not idx:
        raise ValueError("comparison subspace must not be empty")
    tr = np.sum(np.conj(u.matrix[:, idx]) * v.matrix[:, idx])
    return float(abs(tr) ** 2 / len(idx) ** 2)


def exact_match(
    u: UnitaryMatrix, v: UnitaryMatrix, subspace: Sequence[int], tol: float = UNITARY_TOL
) -> bool:
    """Entrywise agreement, phases included, of the action on the subspace."""
    _require_same_space(u.space, v.space)
    idx = list(subspace)
    if not idx:
        raise ValueError("comparison subspace must not be empty")
    return bool(np.max(np.abs(u.matrix[:, idx] - v.matrix[:, idx])) <= tol)
