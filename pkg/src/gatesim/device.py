"""Device parameters and per-qubit roles.

Units are fixed once here and never mixed: coupling constants, detunings and
Rabi frequencies are angular frequencies in rad/s; relaxation and lifetime
figures are seconds; the resonator frequency ``nu_c`` is a plain frequency in
Hz (it only enters the cavity-lifetime formula, which divides by 2*pi
itself).

Per-qubit quantities (``g``, ``delta_ck``, ``omega_raman``) may be given as a
scalar, which broadcasts to every slot, or as a list with one entry per
qubit.  Nothing in the package assumes uniform couplings or detunings.
"""

from __future__ import annotations

import enum
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Union

PerQubit = Union[float, tuple[float, ...]]

# Repo-level parameter presets shipped next to the package sources.
PRESET_DIR = Path(__file__).resolve().parents[2] / "presets"

_PARAM_KEYS = {
    "g",
    "delta_c",
    "delta_ck",
    "omega_raman",
    "omega_resonant",
    "gamma2_inv",
    "quality_q",
    "nu_c",
}
_OPTIONAL_KEYS = {"delta_mu", "description", "squid", "levels"}

# The dispersive regime the pulse recipes rely on: detunings at least this
# many times the coupling.  Weaker ratios are allowed but warned about.
DISPERSIVE_RATIO = 10.0


class ConfigError(ValueError):
    """Raised for malformed or physically inconsistent parameter files."""


class Role(enum.Enum):
    """What a qubit does inside a pulse sequence.

    EMITTER drives the photon-emitting Raman pair (levels 1 and 2),
    ABSORBER the photon-absorbing pair (levels 0 and 2), and TARGET couples
    to the cavity only dispersively.  The resonant pi-pulses act between the
    auxiliary level 2 and the role's ``pulse_level``.
    """

    EMITTER = "emitter"
    ABSORBER = "absorber"
    TARGET = "target"

    @property
    def pulse_level(self) -> int:
        return 0 if self is Role.ABSORBER else 1


def _broadcastable(value) -> PerQubit:
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    raise ConfigError(f"expected a number or list of numbers, got {value!r}")


def _at(value: PerQubit, slot: int) -> float:
    if isinstance(value, tuple):
        if slot >= len(value):
            raise ConfigError(f"no per-qubit entry for slot {slot}")
        return value[slot]
    return value


def _all_values(value: PerQubit):
    return value if isinstance(value, tuple) else (value,)


@dataclass(frozen=True)
class DeviceParams:
    """All physical symbols entering the pulse and budget formulas."""

    g: PerQubit  # cavity coupling on the 2-3 transition, rad/s
    delta_c: float  # Raman-stage detuning, rad/s
    delta_ck: PerQubit  # dispersive-stage detuning per target, rad/s
    omega_raman: PerQubit  # Raman drive Rabi frequency per qubit, rad/s
    omega_resonant: float  # resonant pi-pulse Rabi frequency, rad/s
    gamma2_inv: float  # level-2 energy relaxation time, s
    quality_q: float  # loaded cavity quality factor
    nu_c: float  # resonator frequency, Hz

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", _broadcastable(self.g))
        object.__setattr__(self, "delta_ck", _broadcastable(self.delta_ck))
        object.__setattr__(self, "omega_raman", _broadcastable(self.omega_raman))
        for name in ("delta_c", "omega_resonant", "gamma2_inv", "quality_q", "nu_c"):
            object.__setattr__(self, name, float(getattr(self, name)))
        values = (
            list(_all_values(self.g))
            + [self.delta_c]
            + list(_all_values(self.delta_ck))
            + list(_all_values(self.omega_raman))
            + [self.omega_resonant, self.gamma2_inv, self.quality_q, self.nu_c]
        )
        for v in values:
            if not math.isfinite(v) or v <= 0:
                raise ConfigError(f"all device parameters must be positive and finite, got {v}")

    def g_at(self, slot: int) -> float:
        return _at(self.g, slot)

    def delta_ck_at(self, slot: int) -> float:
        return _at(self.delta_ck, slot)

    def omega_raman_at(self, slot: int) -> float:
        return _at(self.omega_raman, slot)

    def detuning_for(self, slot: int, role: Role) -> float:
        """Detuning of the slot's cavity coupling given its role."""
        if role is Role.TARGET:
            return self.delta_ck_at(slot)
        return self.delta_c

    def check_dispersive(self, n_qubits: int, strict: bool = False) -> None:
        """Warn (or raise) when detunings fall below the dispersive regime."""
        for slot in range(n_qubits):
            g = self.g_at(slot)
            for name, delta in (("delta_c", self.delta_c), ("delta_ck", self.delta_ck_at(slot))):
                if delta < DISPERSIVE_RATIO * g:
                    msg = (
                        f"{name} = {delta:.3e} rad/s is below {DISPERSIVE_RATIO} x g "
                        f"= {DISPERSIVE_RATIO * g:.3e} for qubit {slot}; the dispersive "
                        "approximation degrades"
                    )
                    if strict:
                        raise ConfigError(msg)
                    warnings.warn(msg, stacklevel=2)

    def replace(self, **changes) -> "DeviceParams":
        fields = {
            "g": self.g,
            "delta_c": self.delta_c,
            "delta_ck": self.delta_ck,
            "omega_raman": self.omega_raman,
            "omega_resonant": self.omega_resonant,
            "gamma2_inv": self.gamma2_inv,
            "quality_q": self.quality_q,
            "nu_c": self.nu_c,
        }
        fields.update(changes)
        return DeviceParams(**fields)

    def to_dict(self) -> dict:
        def plain(v):
            return list(v) if isinstance(v, tuple) else v

        return {
            "g": plain(self.g),
            "delta_c": self.delta_c,
            "delta_ck": plain(self.delta_ck),
            "omega_raman": plain(self.omega_raman),
            "omega_resonant": self.omega_resonant,
            "gamma2_inv": self.gamma2_inv,
            "quality_q": self.quality_q,
            "nu_c": self.nu_c,
        }


def params_from_dict(raw: dict) -> DeviceParams:
    """Build :class:`DeviceParams` from a parsed JSON object.

    A ``delta_mu`` key, if present, must equal ``delta_c``: the pulse
    construction requires the two Raman detunings to coincide (zero second
    order detuning), and that premise is enforced at parse time rather than
    silently absorbed.
    """
    if not isinstance(raw, dict):
        raise ConfigError("parameter file must contain a JSON object")
    unknown = set(raw) - _PARAM_KEYS - _OPTIONAL_KEYS
    if unknown:
        raise ConfigError(f"unknown parameter keys: {sorted(unknown)}")
    missing = _PARAM_KEYS - set(raw)
    if missing:
        raise ConfigError(f"missing parameter keys: {sorted(missing)}")
    if "delta_mu" in raw:
        delta_mu = float(raw["delta_mu"])
        if not math.isclose(delta_mu, float(raw["delta_c"]), rel_tol=1e-12):
            raise ConfigError(
                "delta_mu must equal delta_c: the pulse recipes assume zero "
                "second-order detuning"
            )
    return DeviceParams(
        g=raw["g"],
        delta_c=raw["delta_c"],
        delta_ck=raw["delta_ck"],
        omega_raman=raw["omega_raman"],
        omega_resonant=raw["omega_resonant"],
        gamma2_inv=raw["gamma2_inv"],
        quality_q=raw["quality_q"],
        nu_c=raw["nu_c"],
    )


def resolve_params_path(name_or_path: str) -> Path:
    """Resolve either an explicit file path or a shipped preset name."""
    p = Path(name_or_path)
    if p.exists():
        return p
    preset = PRESET_DIR / f"{name_or_path}.json"
    if preset.exists():
        return preset
    raise ConfigError(f"no parameter file or preset named {name_or_path!r}")


def load_params(name_or_path: str) -> tuple[DeviceParams, dict]:
    """Load parameters from JSON; returns the params and the raw document."""
    path = resolve_params_path(name_or_path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"could not parse {path}: {exc}") from exc
    return params_from_dict(raw), raw
