"""Physical parameters and the Dirichlet mode ladder of the cavity.

The cavity is a 1D segment [0, L0] with a fixed perfect mirror at x = 0 and a
movable one bound harmonically around x = L0.  Field modes are the sine modes
vanishing at both walls, with equally spaced angular frequencies

    omega_k = k * pi * c / L0,   k = 1, 2, ...

A sharp ultraviolet cutoff omega_cut (the wall is transparent above its plasma
frequency) truncates every mode sum at the largest index n_max with
omega_{n_max} <= omega_cut (boundary inclusive).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ParameterError

# SI values derived from the exact defined Planck constant and speed of light.
HBAR = 6.62607015e-34 / (2.0 * math.pi)  # J s
C_LIGHT = 299792458.0  # m / s


@dataclass(frozen=True)
class PhysicalParams:
    """Immutable parameter set; all quantities in SI unless overridden.

    L0        equilibrium cavity length (m)
    M         movable mirror mass (kg)
    omega_osc angular frequency of the mirror's harmonic binding (rad/s)
    omega_cut sharp cutoff angular frequency (rad/s)
    hbar, c   overridable so test fixtures can work in natural units
    """

    L0: float
    M: float
    omega_osc: float
    omega_cut: float
    hbar: float = HBAR
    c: float = C_LIGHT

    def __post_init__(self) -> None:
        for name in ("L0", "M", "omega_osc", "omega_cut", "hbar", "c"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be a finite positive number, got {value!r}")
        if self.omega_cut < math.pi * self.c / self.L0:
            raise ParameterError(
                "omega_cut must retain at least the fundamental mode: "
                f"omega_cut={self.omega_cut:g} < pi*c/L0={math.pi * self.c / self.L0:g}"
            )

    def replace(self, **changes: float) -> "PhysicalParams":
        return dataclasses.replace(self, **changes)

    @classmethod
    def natural(
        cls,
        n_modes: int,
        *,
        L0: float = 1.0,
        M: float = 1.0,
        omega_osc: float = 1.0,
    ) -> "PhysicalParams":
        """Natural-unit parameters (hbar = c = 1) retaining exactly `n_modes` modes."""
        if n_modes < 1:
            raise ParameterError("n_modes must be >= 1")
        omega_cut = (n_modes + 0.5) * math.pi * 1.0 / L0
        return cls(L0=L0, M=M, omega_osc=omega_osc, omega_cut=omega_cut, hbar=1.0, c=1.0)


def default_params() -> PhysicalParams:
    """Defaults: 10 um cavity, 1e-11 kg mirror (commercial MEMS scale),
    omega_osc = 1e5 rad/s, cutoff 1e16 rad/s."""
    return PhysicalParams(L0=10e-6, M=1e-11, omega_osc=1e5, omega_cut=1e16)


def mode_frequency(k: int, params: PhysicalParams) -> float:
    """Angular frequency of Dirichlet mode k: omega_k = k*pi*c/L0.

    There is no k = 0 mode (the field vanishes at both walls).
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ParameterError(f"mode index must be an integer, got {k!r}")
    if k < 1:
        raise ParameterError(f"mode index must be >= 1, got {k}")
    return k * math.pi * params.c / params.L0


def max_mode_index(params: PhysicalParams) -> int:
    """Largest n with n*pi*c/L0 <= omega_cut (cutoff boundary inclusive)."""
    n = int(math.floor(params.omega_cut * params.L0 / (math.pi * params.c)))
    # Settle float boundary cases with the same arithmetic mode_frequency uses.
    while mode_frequency(n + 1, params) <= params.omega_cut:
        n += 1
    while n >= 1 and mode_frequency(n, params) > params.omega_cut:
        n -= 1
    if n < 1:
        raise ParameterError("no mode at or below omega_cut")
    return n


@dataclass(frozen=True)
class ModeBasis:
    """Cutoff-truncated mode set. frequencies[k-1] == mode_frequency(k)."""

    params: PhysicalParams
    n_max: int
    frequencies: np.ndarray

    @classmethod
    def from_params(cls, params: PhysicalParams) -> "ModeBasis":
        n_max = max_mode_index(params)
        freqs = np.arange(1, n_max + 1, dtype=float) * math.pi * params.c / params.L0
        freqs.setflags(write=False)
        return cls(params=params, n_max=n_max, frequencies=freqs)

    def omega(self, k: int) -> float:
        if not 1 <= k <= self.n_max:
            raise ParameterError(f"mode index {k} outside 1..{self.n_max}")
        return float(self.frequencies[k - 1])


# Configuration file grammar: one `key = value` pair per line, `#` starts a
# comment, blank lines are ignored.  Keys map 1:1 onto PhysicalParams fields;
# unknown or repeated keys are errors.
CONFIG_KEYS = {
    "L0_m": "L0",
    "M_kg": "M",
    "omega_osc": "omega_osc",
    "omega_cut": "omega_cut",
    "hbar": "hbar",
    "c": "c",
}


def parse_config(text: str) -> dict[str, float]:
    """Parse config text into a {field-name: value} dict (keys already mapped)."""
    values: dict[str, float] = {}
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value_str = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r} (known: {', '.join(CONFIG_KEYS)})")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        try:
            values[CONFIG_KEYS[key]] = float(value_str.strip())
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad numeric value for {key!r}: {value_str.strip()!r}") from exc
    return values


def resolve_params(
    config: dict[str, float] | None = None,
    overrides: dict[str, float | None] | None = None,
) -> PhysicalParams:
    """Defaults, overlaid by config-file values, overlaid by explicit overrides."""
    fields = dataclasses.asdict(default_params())
    if config:
        fields.update(config)
    if overrides:
        fields.update({k: v for k, v in overrides.items() if v is not None})
    return PhysicalParams(**fields)
