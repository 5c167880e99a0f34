"""Two-qubit Deutsch-Jozsa demonstration on top of the two-qubit fanout CNOT.

The query qubit is the emitter (slot 0) and the auxiliary qubit the
dispersive target (slot 1), prepared in
``(|0> + |1>)/sqrt(2) (x) |1>`` which reads
``(|0> + |1>) (x) (|+> - |->) / 2`` in the target's +/- basis.  Each oracle
is one of the four functions on one bit, compiled from at most two CNOTs and
two idealized single-qubit rotations; after the oracle, a Hadamard on the
query qubit maps constant functions to ``|0>`` and balanced ones to ``|1>``
deterministically.  Measurement is modelled as a projection probability:
the claim under test is deterministic discrimination, so sampling would add
nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import DeviceParams
from .linalg import (
    QUDIT_LEVELS,
    HilbertSpace,
    StateVector,
    apply_local,
    subsystem_level_mask,
)
from .pulses import Mode
from .sequences import compose, ntcnot_sequence

PROB_TOL = 1e-10


@dataclass(frozen=True)
class OracleVariant:
    """One of the four one-bit functions, keyed the way the demo labels them."""

    id: int
    f0: int
    f1: int

    @property
    def is_constant(self) -> bool:
        return self.f0 == self.f1


ORACLES = {
    1: OracleVariant(1, 0, 0),
    2: OracleVariant(2, 1, 1),
    3: OracleVariant(3, 0, 1),
    4: OracleVariant(4, 1, 0),
}


def oracle_variant(variant_id: int) -> OracleVariant:
    try:
        return ORACLES[variant_id]
    except KeyError:
        raise ValueError(f"oracle variant must be 1..4, got {variant_id}") from None


# Idealized single-qubit rotations used inside the oracle recipes.
def _rotation(sign: int) -> np.ndarray:
    # sign=+1: |0> -> |1>, |1> -> -|0>;  sign=-1: |0> -> -|1>, |1> -> |0>.
    u = np.eye(QUDIT_LEVELS, dtype=complex)
    u[0, 0] = u[1, 1] = 0.0
    u[1, 0] = float(sign)
    u[0, 1] = -float(sign)
    return u


def _hadamard_local() -> np.ndarray:
    u = np.eye(QUDIT_LEVELS, dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    u[0, 0] = u[0, 1] = u[1, 0] = s
    u[1, 1] = -s
    return u


def dj_space(cavity_dim: int = 2) -> HilbertSpace:
    return HilbertSpace.for_qubits(2, cavity_dim)


def prepare_input(space: HilbertSpace) -> StateVector:
    amps = np.zeros(space.total_dim, dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    amps[space.index((0, 1, 0))] = s
    amps[space.index((1, 1, 0))] = s
    return StateVector(space, amps)


def uf_apply(
    variant: OracleVariant | int,
    state: StateVector,
    params: DeviceParams,
    mode: Mode = Mode.ANALYTIC,
) -> StateVector:
    """Apply one oracle to the prepared state, following its pulse recipe."""
    if isinstance(variant, int):
        variant = oracle_variant(variant)
    space = state.space
    cnot = compose(ntcnot_sequence(2, params, space.cavity_dim), mode).matrix
    amps = state.amplitudes.copy()

    def apply_cnot():
        nonlocal amps
        amps = cnot @ amps

    def rotate(sign: int):
        nonlocal amps
        amps = apply_local(_rotation(sign), space, (0,), amps)

    if variant.id == 1:
        pass  # constant-0: both systems stay far off resonance
    elif variant.id == 2:
        apply_cnot()
        rotate(+1)
        apply_cnot()
        rotate(-1)
    elif variant.id == 3:
        apply_cnot()
    else:
        rotate(+1)
        apply_cnot()
        rotate(-1)
    return StateVector(space, amps)


@dataclass(frozen=True)
class DJResult:
    variant: int
    classification: str
    probability: float
    oracle_applications: int

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "classification": self.classification,
            "probability": self.probability,
            "oracle_applications": self.oracle_applications,
        }


def run_dj(
    variant_id: int,
    params: DeviceParams,
    mode: Mode = Mode.ANALYTIC,
    cavity_dim: int = 2,
) -> DJResult:
    """One oracle query, one Hadamard, one projective readout of the query qubit."""
    variant = oracle_variant(variant_id)
    space = dj_space(cavity_dim)
    state = prepare_input(space)
    state = uf_apply(variant, state, params, mode)
    oracle_applications = 1
    amps = apply_local(_hadamard_local(), space, (0,), state.amplitudes)
    p0 = float(np.sum(np.abs(amps[subsystem_level_mask(space, 0, 0)]) ** 2))
    p1 = float(np.sum(np.abs(amps[subsystem_level_mask(space, 0, 1)]) ** 2))
    if p0 >= p1:
        classification, probability = "constant", p0
    else:
        classification, probability = "balanced", p1
    return DJResult(variant.id, classification, probability, oracle_applications)


def query_target_schmidt_values(state: StateVector) -> np.ndarray:
    """Singular values of the query vs. (target, cavity) bipartition."""
    space = state.space
    mat = state.amplitudes.reshape(QUDIT_LEVELS, space.total_dim // QUDIT_LEVELS)
    return np.linalg.svd(mat, compute_uv=False)
