"""Pulse-sequence construction and composition for the multiqubit gates.

The four gates are built from the pulse primitives:

* ``cp3``: three-qubit controlled phase (-1 on ``|111>``), 7 steps;
* ``ncp``: its n-qubit generalization with n-1 controls, one emitter qubit,
  absorbers in the middle, one dispersive target at the end;
* ``ntcnot``: one control qubit flipping n-1 targets simultaneously (targets
  read in the +/- basis), 5 steps for every n;
* ``toffoli``: cp3 conjugated by Hadamards on the target, 9 steps.

A step groups pulses that run at the same time; its duration is the longest
member.  One step (the target stage of the phase gates) instead bundles an
ordered sub-list, whose duration is the sum.  Within a simultaneous group,
members must act on distinct qubits, at most one member may exchange a
photon with the cavity, and a photon-exchanging member cannot share the
group with any other cavity-coupled member; any number of dispersive-phase
members may share the cavity since their generators commute.

Composition walks the sequence in one of three modes (see
:class:`gatesim.pulses.Mode`).  The full mode solves the joint step
Hamiltonian including the always-on cavity couplings of undriven qubits.
The effective mode can optionally include those idle couplings as a
factorized per-step phase applied to the entering state; that factorized
form is what the analytic phase audit reproduces term by term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import hamiltonians as ham
from .device import DeviceParams, Role
from .linalg import (
    HermitianOperator,
    HilbertSpace,
    StateVector,
    UnitaryMatrix,
    apply_local,
    embed_hermitian,
    subsystem_level_mask,
)
from .pulses import Mode, Pulse, PulseKind, make_pulse, pulse_local_unitary

DOMAIN_TOL = 1e-10


class GateKind(enum.Enum):
    CP3 = "cp3"
    NCP = "ncp"
    NTCNOT = "ntcnot"
    TOFFOLI = "toffoli"

    @classmethod
    def parse(cls, name: str) -> "GateKind":
        for g in cls:
            if g.value == name:
                return g
        raise ValueError(f"unknown gate {name!r}")


@dataclass(frozen=True)
class PulseStep:
    """A group of simultaneous pulses, or an ordered bundle of them."""

    members: tuple[Pulse, ...]
    ordered: bool = False

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("a pulse step needs at least one member")
        if self.ordered:
            return
        slots = [p.slot for p in self.members]
        if len(set(slots)) != len(slots):
            raise ValueError(f"simultaneous pulses must act on distinct qubits, got slots {slots}")
        exchangers = [p for p in self.members if p.kind.exchanges_photon]
        dispersive = [p for p in self.members if p.kind is PulseKind.DISPERSIVE_PHASE]
        if len(exchangers) > 1:
            raise ValueError("at most one pulse per step may exchange a photon with the cavity")
        if exchangers and dispersive:
            raise ValueError(
                "a photon-exchanging pulse cannot share a step with other cavity-coupled pulses"
            )

    @property
    def duration(self) -> float:
        if self.ordered:
            return sum(p.duration for p in self.members)
        return max(p.duration for p in self.members)


@dataclass(frozen=True)
class PulseSequence:
    gate: GateKind
    n: int
    steps: tuple[PulseStep, ...]
    roles: tuple[Role, ...]
    params: DeviceParams
    space: HilbertSpace

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def total_duration(self) -> float:
        return sum(step.duration for step in self.steps)


def ncp_roles(n: int) -> tuple[Role, ...]:
    return (Role.EMITTER,) + (Role.ABSORBER,) * (n - 2) + (Role.TARGET,)


def ntcnot_roles(n: int) -> tuple[Role, ...]:
    return (Role.EMITTER,) + (Role.TARGET,) * (n - 1)


def ncp_sequence(n: int, params: DeviceParams, cavity_dim: int = 2) -> PulseSequence:
    """n-qubit controlled phase: -1 on ``|1...1>``, identity elsewhere.

    Grouping convention: all first-pass pi pulses share one step, the
    absorber swaps run sequentially (each exchanges the single cavity
    photon), the target stage is one ordered bundle, and the second pass
    mirrors the first with the absorber order reversed.  This yields
    ``2n + 1`` steps and reduces to the seven-step three-qubit sequence at
    ``n = 3``.
    """
    if n < 3:
        raise ValueError("the multi-control phase gate needs at least 3 qubits")
    roles = ncp_roles(n)
    mk = lambda kind, slot: make_pulse(kind, slot, params, roles)
    target = n - 1
    steps = [PulseStep((mk(PulseKind.RAMAN_EMIT, 0),))]
    steps.append(
        PulseStep(
            (mk(PulseKind.PI_PULSE, 0),)
            + tuple(mk(PulseKind.PI_PULSE_DAG, q) for q in range(1, target))
        )
    )
    for q in range(1, target):
        steps.append(PulseStep((mk(PulseKind.RAMAN_ABSORB, q),)))
    steps.append(
        PulseStep(
            (
                mk(PulseKind.PI_PULSE_DAG, target),
                mk(PulseKind.DISPERSIVE_PHASE, target),
                mk(PulseKind.PI_PULSE, target),
            ),
            ordered=True,
        )
    )
    for q in range(target - 1, 0, -1):
        steps.append(PulseStep((mk(PulseKind.RAMAN_ABSORB, q),)))
    steps.append(
        PulseStep(
            (mk(PulseKind.PI_PULSE_DAG, 0),)
            + tuple(mk(PulseKind.PI_PULSE, q) for q in range(1, target))
        )
    )
    steps.append(PulseStep((mk(PulseKind.RAMAN_EMIT, 0),)))
    gate = GateKind.CP3 if n == 3 else GateKind.NCP
    space = HilbertSpace.for_qubits(n, cavity_dim)
    return PulseSequence(gate, n, tuple(steps), roles, params, space)


def cp3_sequence(params: DeviceParams, cavity_dim: int = 2) -> PulseSequence:
    """Three-qubit controlled phase gate, seven steps."""
    return ncp_sequence(3, params, cavity_dim)


def ntcnot_sequence(n: int, params: DeviceParams, cavity_dim: int = 2) -> PulseSequence:
    """One control qubit flipping ``n - 1`` targets at once, five steps.

    All dispersive-phase pulses run in a single shared interaction window,
    so the total duration does not grow with ``n``.

    Basis convention: the control reads in 0/1 and each target in the +/-
    basis, which needs no Hadamards at all.  Reading the control in +/-
    instead would cost two extra Hadamards on the control; reading the
    targets in 0/1 would cost ``2(n - 1)`` extra Hadamards around the
    sequence.  Only the Hadamard-free convention is built here.
    """
    if n < 2:
        raise ValueError("the fanout CNOT needs at least 2 qubits")
    roles = ntcnot_roles(n)
    mk = lambda kind, slot: make_pulse(kind, slot, params, roles)
    steps = [
        PulseStep((mk(PulseKind.RAMAN_EMIT, 0),)),
        PulseStep(
            (mk(PulseKind.PI_PULSE, 0),)
            + tuple(mk(PulseKind.PI_PULSE_DAG, q) for q in range(1, n))
        ),
        PulseStep(tuple(mk(PulseKind.DISPERSIVE_PHASE, q) for q in range(1, n))),
        PulseStep(
            (mk(PulseKind.PI_PULSE_DAG, 0),)
            + tuple(mk(PulseKind.PI_PULSE, q) for q in range(1, n))
        ),
        PulseStep((mk(PulseKind.RAMAN_EMIT, 0),)),
    ]
    space = HilbertSpace.for_qubits(n, cavity_dim)
    return PulseSequence(GateKind.NTCNOT, n, tuple(steps), roles, params, space)


def toffoli_sequence(params: DeviceParams, cavity_dim: int = 2) -> PulseSequence:
    """Controlled-controlled-NOT: Hadamards on the target around cp3."""
    base = cp3_sequence(params, cavity_dim)
    roles = base.roles
    h = make_pulse(PulseKind.HADAMARD, 2, params, roles)
    steps = (PulseStep((h,)),) + base.steps + (PulseStep((h,)),)
    return PulseSequence(GateKind.TOFFOLI, 3, steps, roles, params, base.space)


def build_sequence(
    gate: GateKind, n: int, params: DeviceParams, cavity_dim: int = 2
) -> PulseSequence:
    if gate is GateKind.CP3:
        return cp3_sequence(params, cavity_dim)
    if gate is GateKind.NCP:
        return ncp_sequence(n, params, cavity_dim)
    if gate is GateKind.NTCNOT:
        return ntcnot_sequence(n, params, cavity_dim)
    return toffoli_sequence(params, cavity_dim)


# --- composition ---------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    """One atomic evolution window: a simultaneous group or one ordered member."""

    step_index: int
    pulses: tuple[Pulse, ...]
    duration: float

    @property
    def cavity_actors(self) -> frozenset[int]:
        return frozenset(p.slot for p in self.pulses if p.kind.touches_cavity)


def sequence_units(seq: PulseSequence) -> list[Unit]:
    units = []
    for i, step in enumerate(seq.steps):
        if step.ordered:
            for pulse in step.members:
                units.append(Unit(i, (pulse,), pulse.duration))
        else:
            units.append(Unit(i, step.members, step.duration))
    return units


@dataclass(frozen=True)
class SubEvolution:
    """One factor of the composed unitary, in one of three representations."""

    unit: Unit
    applications: tuple[tuple[np.ndarray, tuple[int, ...]], ...] = ()
    hamiltonian: HermitianOperator | None = None
    diagonal: np.ndarray | None = None
    duration: float = 0.0


def photon_number_vector(space: HilbertSpace) -> np.ndarray:
    # Cavity digit is least significant in the index convention.
    return np.arange(space.total_dim) % space.cavity_dim


def _idle_rate(params: DeviceParams, roles: tuple[Role, ...], slot: int) -> float:
    return params.g_at(slot) ** 2 / params.detuning_for(slot, roles[slot])


def _idle_diagonal(seq: PulseSequence, unit: Unit) -> np.ndarray:
    """Factorized idle phase for one window: ``exp(-i t sum_q h_disp(q))``.

    Every qubit that is not the window's cavity actor keeps its dispersive
    shift on; the generator is diagonal, so this is a plain phase vector.
    """
    space = seq.space
    photon = photon_number_vector(space)
    gen = np.zeros(space.total_dim)
    for q in range(space.n_qubits):
        if q in unit.cavity_actors:
            continue
        rate = _idle_rate(seq.params, seq.roles, q)
        shift = subsystem_level_mask(space, q, 3).astype(float)
        shift -= subsystem_level_mask(space, q, 2).astype(float)
        gen += rate * shift * photon
    return np.exp(-1j * unit.duration * gen)


def _full_unit_hamiltonian(
    seq: PulseSequence, unit: Unit, include_idle: bool
) -> HermitianOperator:
    """Joint Hamiltonian of one full-mode window.

    Pulsed qubits contribute their pulse Hamiltonian: the first-principles
    Raman generator for photon swaps, the exact cavity coupling for the
    dispersive phase, the bare Rabi drive for pi pulses.  Every unpulsed
    qubit keeps its dispersive shift on when idles are included; that is the
    always-on interaction the phase audit accounts for.
    """
    space = seq.space
    params = seq.params
    roles = seq.roles
    cav = space.cavity_slot
    dim = space.total_dim
    total = np.zeros((dim, dim), dtype=complex)
    member_for = {p.slot: p for p in unit.pulses}
    for p in unit.pulses:
        if not math.isclose(p.duration, unit.duration, rel_tol=1e-9):
            raise ValueError(
                "simultaneous full-mode evolution needs equal member durations; "
                f"got {p.duration} vs {unit.duration}"
            )
    for q in range(space.n_qubits):
        pulse = member_for.get(q)
        if pulse is not None and pulse.kind.exchanges_photon:
            local = ham.raman_full_local(params, q, roles[q], space.cavity_dim)
            total += embed_hermitian(local, space, (q, cav)).matrix
        elif pulse is not None and pulse.kind in (PulseKind.PI_PULSE, PulseKind.PI_PULSE_DAG):
            phi = -math.pi / 2 if pulse.kind is PulseKind.PI_PULSE_DAG else math.pi / 2
            local = ham.resonant_drive_local(params.omega_resonant, phi, roles[q].pulse_level)
            total += embed_hermitian(local, space, (q,)).matrix
        elif pulse is not None and pulse.kind is PulseKind.DISPERSIVE_PHASE:
            local = ham.idle_coupling_local(params, q, roles[q], space.cavity_dim, full=True)
            total += embed_hermitian(local, space, (q, cav)).matrix
        elif pulse is None and include_idle:
            idle = ham.idle_coupling_local(params, q, roles[q], space.cavity_dim, full=False)
            total += embed_hermitian(idle, space, (q, cav)).matrix
    return HermitianOperator(space, total)


def build_evolutions(
    seq: PulseSequence, mode: Mode, include_idle: bool | None = None
) -> list[SubEvolution]:
    """Lower a sequence to an ordered list of evolution factors."""
    if include_idle is None:
        include_idle = mode is Mode.FULL
    if include_idle and mode is Mode.ANALYTIC:
        raise ValueError("analytic composition has no idle couplings to include")
    space = seq.space
    out: list[SubEvolution] = []
    for unit in sequence_units(seq):
        instant_only = all(p.kind is PulseKind.HADAMARD for p in unit.pulses)
        if mode is Mode.FULL and not instant_only:
            h = _full_unit_hamiltonian(seq, unit, include_idle)
            out.append(SubEvolution(unit, hamiltonian=h, duration=unit.duration))
            continue
        if mode is Mode.EFFECTIVE and include_idle and not instant_only:
            out.append(SubEvolution(unit, diagonal=_idle_diagonal(seq, unit)))
        apps = []
        for p in unit.pulses:
            local, with_cavity = pulse_local_unitary(
                p, seq.params, seq.roles, space.cavity_dim, Mode.ANALYTIC if instant_only else mode
            )
            slots = (p.slot, space.cavity_slot) if with_cavity else (p.slot,)
            apps.append((local, slots))
        out.append(SubEvolution(unit, applications=tuple(apps), duration=unit.duration))
    return out


def apply_evolutions(
    evolutions: Iterable[SubEvolution], space: HilbertSpace, array: np.ndarray
) -> np.ndarray:
    """Apply the factors in order to a vector or a stack of columns."""
    arr = np.asarray(array, dtype=complex)
    for evo in evolutions:
        if evo.diagonal is not None:
            arr = evo.diagonal * arr if arr.ndim == 1 else evo.diagonal[:, None] * arr
        elif evo.hamiltonian is not None:
            w, v = evo.hamiltonian.eig
            mat = arr.reshape(space.total_dim, -1)
            mat = v @ (np.exp(-1j * w * evo.duration)[:, None] * (v.conj().T @ mat))
            arr = mat[:, 0] if arr.ndim == 1 else mat
        else:
            for local, slots in evo.applications:
                arr = apply_local(local, space, slots, arr)
    return arr


def compose(seq: PulseSequence, mode: Mode, include_idle: bool | None = None) -> UnitaryMatrix:
    """Ordered product of the sequence's step unitaries."""
    evolutions = build_evolutions(seq, mode, include_idle)
    matrix = apply_evolutions(evolutions, seq.space, np.eye(seq.space.total_dim, dtype=complex))
    return UnitaryMatrix(seq.space, matrix)


def _swap_domain_defect(seq: PulseSequence, pulse: Pulse, amps: np.ndarray) -> float:
    """Probability weight on states where the swap's closed form is undefined."""
    space = seq.space
    photon = photon_number_vector(space)
    j = seq.roles[pulse.slot].pulse_level
    bad = subsystem_level_mask(space, pulse.slot, j) & (photon >= 1)
    bad |= subsystem_level_mask(space, pulse.slot, 2) & (photon >= 2)
    return float(np.sum(np.abs(amps[bad]) ** 2))


def intermediate_states(
    seq: PulseSequence,
    state: StateVector,
    mode: Mode,
    include_idle: bool | None = None,
) -> list[StateVector]:
    """States after each step.  Flags inputs the closed forms do not cover.

    In analytic and effective modes, applying a Raman swap to a state with
    weight on (pulse level, photon >= 1) or (level 2, photon >= 2) would rely
    on the identity convention for states the protocols never visit; such a
    sequence is rejected rather than silently accepted.
    """
    if state.space.dims != seq.space.dims:
        raise ValueError("state lives on a different space than the sequence")
    evolutions = build_evolutions(seq, mode, include_idle)
    amps = state.amplitudes.copy()
    out: list[StateVector] = []
    last_step: int | None = None
    for evo in evolutions:
        if mode is not Mode.FULL:
            for p in evo.unit.pulses:
                if p.kind.exchanges_photon:
                    defect = _swap_domain_defect(seq, p, amps)
                    if defect > DOMAIN_TOL:
                        raise ValueError(
                            f"step {evo.unit.step_index}: raman swap at slot {p.slot} "
                            f"applied to a state outside its closed-form domain "
                            f"(weight {defect:.3e})"
                        )
        amps = apply_evolutions([evo], seq.space, amps)
        if evo.unit.step_index != last_step:
            out.append(StateVector(seq.space, amps))
            last_step = evo.unit.step_index
        else:
            out[-1] = StateVector(seq.space, amps)
    return out


def serialize_sequence(seq: PulseSequence) -> dict:
    """JSON-ready step list: kind, slot, duration and grouping per pulse."""
    steps = []
    for i, step in enumerate(seq.steps):
        steps.append(
            {
                "group": i,
                "ordered": step.ordered,
                "duration_s": step.duration,
                "pulses": [
                    {"kind": p.kind.value, "slot": p.slot, "duration_s": p.duration}
                    for p in step.members
                ],
            }
        )
    return {
        "gate": seq.gate.value,
        "n": seq.n,
        "roles": [r.value for r in seq.roles],
        "cavity_dim": seq.space.cavity_dim,
        "step_count": seq.step_count,
        "total_duration_s": seq.total_duration,
        "steps": steps,
    }


@dataclass(frozen=True)
class TruthRow:
    input_label: str
    amplitudes: dict[str, complex]
    leakage: float


def truth_table(
    u: UnitaryMatrix, inputs: Sequence[tuple[str, np.ndarray]], drop_below: float = 0.0
) -> list[TruthRow]:
    """Decompose the action of ``u`` on labelled states over the same states.

    The leakage column is the norm of the output component outside the
    labelled set.
    """
    labels = [label for label, _ in inputs]
    vectors = np.column_stack([vec for _, vec in inputs])
    outputs = u.matrix @ vectors
    overlaps = vectors.conj().T @ outputs
    # residual computed as a vector difference: subtracting probabilities
    # from 1 would lose half the significant digits to cancellation
    residuals = outputs - vectors @ overlaps
    rows = []
    for col, label in enumerate(labels):
        amps = {}
        for row, other in enumerate(labels):
            a = complex(overlaps[row, col])
            if abs(a) > drop_below:
                amps[other] = a
        leakage = float(np.linalg.norm(residuals[:, col]))
        rows.append(TruthRow(label, amps, leakage))
    return rows
