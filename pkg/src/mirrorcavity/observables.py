"""Ground-state observables of the coupled mirror-field system.

Everything here is second order in the mirror-field interaction: virtual
photon occupations per mode, the mirror excitation number, the energy budget
of the dressed vacuum, and the resulting correction to the Casimir energy and
force between the walls.

Two deliberate convention repairs relative to the naive symbol-by-symbol
transcription of the underlying model, both required by dimensional
consistency and confirmed against the exact-diagonalization oracle:
the mirror-excitation summand carries omega_k * omega_j (not a spectator
index), and the field part of the dressed-state energy weights each occupation
by hbar * omega_k.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .coupling import amplitude_D
from .errors import CutoffCrossingWarning, ParameterError
from .params import ModeBasis, PhysicalParams, max_mode_index, mode_frequency
from .summation import NeumaierAccumulator

# Construction-time gate on the algebraic identities below; acceptance tests
# assert the same bound on freshly computed values.
IDENTITY_RTOL = 1e-12


def photon_number(m: int, params: PhysicalParams) -> float:
    """<N_m> on the dressed ground state.

    Sum over partner modes j of
        (hbar / (2 L0^2 M)) * (omega_m omega_j / omega_osc) / (omega_osc+omega_m+omega_j)^2
    accumulated in ascending j with compensation.
    """
    basis = ModeBasis.from_params(params)
    if not 1 <= m <= basis.n_max:
        raise ParameterError(f"mode index m={m} outside retained range 1..{basis.n_max}")
    p = params
    pref = p.hbar / (2.0 * p.L0 * p.L0 * p.M)
    wm = basis.omega(m)
    acc = NeumaierAccumulator()
    for j in range(1, basis.n_max + 1):
        wj = basis.omega(j)
        denom = p.omega_osc + wm + wj
        acc.add(pref * ((wm * wj / p.omega_osc) / (denom * denom)))
    return acc.value


def photon_number_from_amplitudes(m: int, params: PhysicalParams) -> float:
    """Independent route: assemble <N_m> from the projection amplitudes.

    The пair state (m, j) holds one photon in mode m for j != m and two for
    j == m, so <N_m> = sum_{j != m} D(m,j)^2 + 2 D(m,m)^2.
    """
    basis = ModeBasis.from_params(params)
    if not 1 <= m <= basis.n_max:
        raise ParameterError(f"mode index m={m} outside retained range 1..{basis.n_max}")
    acc = NeumaierAccumulator()
    for j in range(1, basis.n_max + 1):
        d = amplitude_D(m, j, params)
        acc.add((d * d) if j != m else (2.0 * d * d))
    return acc.value


def mirror_excitation(params: PhysicalParams) -> float:
    """<N_osc> on the dressed ground state (double sum, j outer, k inner)."""
    basis = ModeBasis.from_params(params)
    p = params
    pref = p.hbar / (4.0 * p.L0 * p.L0 * p.M)
    acc = NeumaierAccumulator()
    for j in range(1, basis.n_max + 1):
        wj = basis.omega(j)
        for k in range(1, basis.n_max + 1):
            wk = basis.omega(k)
            denom = p.omega_osc + wk + wj
            acc.add(pref * ((wk * wj / p.omega_osc) / (denom * denom)))
    return acc.value


@dataclass(frozen=True)
class SpectrumResult:
    """Per-mode virtual photon numbers and the mirror excitation number."""

    basis: ModeBasis
    photon_numbers: np.ndarray  # photon_numbers[m-1] = <N_m>
    n_osc: float

    def __post_init__(self) -> None:
        if np.any(self.photon_numbers < 0.0) or self.n_osc < 0.0:
            raise ParameterError("occupation expectations must be nonnegative")
        total = float(np.sum(self.photon_numbers))
        if abs(total - 2.0 * self.n_osc) > IDENTITY_RTOL * max(total, 2.0 * self.n_osc):
            raise ParameterError(
                "pair-counting identity violated: sum <N_m> != 2 <N_osc> "
                f"({total!r} vs {2.0 * self.n_osc!r})"
            )

    def photon_number(self, m: int) -> float:
        return float(self.photon_numbers[m - 1])


def photon_spectrum(params: PhysicalParams) -> SpectrumResult:
    """<N_m> for every retained mode, plus <N_osc>.

    Each dressed-state component carries exactly two photons and one mirror
    quantum, so sum_m <N_m> = 2 <N_osc> up to rounding.
    """
    basis = ModeBasis.from_params(params)
    numbers = np.array([photon_number(m, params) for m in range(1, basis.n_max + 1)])
    numbers.setflags(write=False)
    return SpectrumResult(basis=basis, photon_numbers=numbers, n_osc=mirror_excitation(params))


def spectrum_peak_check(j: int, params: PhysicalParams) -> float:
    """Location of the continuous-omega maximum of the mode-j spectrum summand.

    The summand is proportional to f(w) = w / (omega_osc + w + omega_j)^2 and
    f'(w) = (omega_osc + omega_j - w) / (omega_osc + w + omega_j)^3, so the
    peak sits exactly at omega_osc + omega_j.
    """
    wj = mode_frequency(j, params)
    n_max = max_mode_index(params)
    if j > n_max:
        raise ParameterError(f"mode index j={j} outside retained range 1..{n_max}")
    return params.omega_osc + wj


def pair_term_value(wk: float, wj: float, params: PhysicalParams) -> float:
    """Single-pair contribution to <N_osc> at continuous frequencies (wk, wj)."""
    p = params
    denom = p.omega_osc + wk + wj
    return p.hbar / (4.0 * p.L0 * p.L0 * p.M) * (wk * wj / p.omega_osc) / (denom * denom)


def pair_sum_at_peak(j: int, params: PhysicalParams) -> float:
    """Total pair frequency at the maximum of the single-pair term.

    With the partner held at omega_j, the term peaks at
    omega_k = omega_osc + omega_j, i.e. at pair sum omega_osc + 2*omega_j;
    for omega_j << omega_osc the maximizing pair sum approaches omega_osc
    (the two virtual quanta then share the mirror's oscillation frequency).
    """
    wj = mode_frequency(j, params)
    return params.omega_osc + 2.0 * wj


@dataclass(frozen=True)
class EnergyBudget:
    """Second-order energy bookkeeping of the dressed vacuum (all in J).

    E2        second-order ground-state energy shift (negative)
    H0_exp    excess of <H0> over the bare vacuum (positive)
    Hint_exp  <H_int> (equals -2 * H0_exp, hence E2 = -H0_exp)
    """

    E2: float
    H0_exp: float
    Hint_exp: float

    def __post_init__(self) -> None:
        scale = max(abs(self.E2), abs(self.H0_exp), abs(self.Hint_exp))
        if scale == 0.0:
            return
        if abs(self.E2 - (self.H0_exp + self.Hint_exp)) > IDENTITY_RTOL * scale:
            raise ParameterError("budget identity E2 = H0 + Hint violated beyond tolerance")
        if abs(self.Hint_exp + 2.0 * self.H0_exp) > IDENTITY_RTOL * scale:
            raise ParameterError("budget identity Hint = -2 H0 violated beyond tolerance")
        if not (self.E2 < 0.0 < self.H0_exp):
            raise ParameterError("budget signs wrong: expected E2 < 0 < H0")


def energy_shift(params: PhysicalParams) -> EnergyBudget:
    """Second-order energy shift and its decomposition.

    E2 from the direct double sum
        -(hbar^2 / (4 L0^2 M)) * (omega_k omega_j / omega_osc) / (omega_osc+omega_k+omega_j)
    and H0_exp = hbar*omega_osc*<N_osc> + sum_k hbar*omega_k*<N_k>; the two
    routes agree to rounding, which the budget identities enforce.
    """
    basis = ModeBasis.from_params(params)
    p = params
    pref = p.hbar * p.hbar / (4.0 * p.L0 * p.L0 * p.M)
    acc = NeumaierAccumulator()
    for j in range(1, basis.n_max + 1):
        wj = basis.omega(j)
        for k in range(1, basis.n_max + 1):
            wk = basis.omega(k)
            acc.add(pref * ((wk * wj / p.omega_osc) / (p.omega_osc + wk + wj)))
    e2 = -acc.value

    spectrum = photon_spectrum(params)
    field = NeumaierAccumulator()
    for k in range(1, basis.n_max + 1):
        field.add(p.hbar * basis.omega(k) * spectrum.photon_number(k))
    h0 = p.hbar * p.omega_osc * spectrum.n_osc + field.value
    return EnergyBudget(E2=e2, H0_exp=h0, Hint_exp=-2.0 * h0)


@dataclass(frozen=True)
class ForceResult:
    """Casimir-energy correction and its length derivative.

    E2_J           energy correction at L0
    dE2_dL0_N      central finite difference of E2 w.r.t. L0 (omega_cut held fixed)
    force_correction_N  -dE2/dL0
    fixed_wall_force_N  reference force between fixed walls, -hbar*c*pi/(24 L0^2)
    delta          relative finite-difference step used
    cutoff_crossed True when the stencil endpoints retain different mode counts
    """

    E2_J: float
    dE2_dL0_N: float
    force_correction_N: float
    fixed_wall_force_N: float
    delta: float
    cutoff_crossed: bool


def casimir_energy_correction(params: PhysicalParams, delta: float = 1e-4) -> ForceResult:
    """Correction to the Casimir energy and force from the mirror's mobility.

    Rebuilds the mode basis at L0*(1 +/- delta) keeping omega_cut fixed (the
    cutoff is a material property, not a geometric one).  Warns when the
    stencil straddles a mode-count change; the derivative is then unreliable
    and the caller should shrink delta.
    """
    if not 0.0 < delta < 0.1:
        raise ParameterError(f"relative step delta must be in (0, 0.1), got {delta}")
    plus = params.replace(L0=params.L0 * (1.0 + delta))
    minus = params.replace(L0=params.L0 * (1.0 - delta))
    crossed = max_mode_index(plus) != max_mode_index(minus)
    if crossed:
        warnings.warn(
            f"mode count changes across L0*(1 +/- {delta:g}): "
            f"{max_mode_index(minus)} -> {max_mode_index(plus)}; "
            "finite difference straddles a cutoff discontinuity",
            CutoffCrossingWarning,
            stacklevel=2,
        )
    e2 = energy_shift(params).E2
    e2_plus = energy_shift(plus).E2
    e2_minus = energy_shift(minus).E2
    derivative = (e2_plus - e2_minus) / (2.0 * delta * params.L0)
    fixed_wall = -params.hbar * params.c * math.pi / (24.0 * params.L0 * params.L0)
    return ForceResult(
        E2_J=e2,
        dE2_dL0_N=derivative,
        force_correction_N=-derivative,
        fixed_wall_force_N=fixed_wall,
        delta=delta,
        cutoff_crossed=crossed,
    )
