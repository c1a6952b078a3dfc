"""Compute-to-document orchestration shared by the HTTP service.

Each report runs one command against the core modules and returns the exact
CSV document, a one-line summary, and the key scalars.  The service exposes
these verbatim; the CLI writes the CSV bytes as received.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from . import density as density_mod
from . import ed_oracle, observables
from .csvio import params_meta, render_csv
from .errors import CutoffCrossingError, CutoffCrossingWarning, ParameterError
from .params import PhysicalParams, max_mode_index

SPECTRUM_COLUMNS = ("mode_index", "omega_rad_s", "photon_number")
BUDGET_COLUMNS = ("E2_J", "H0_J", "Hint_J", "N_osc")
FORCE_COLUMNS = ("E2_J", "dE2_dL0_N", "fixed_wall_force_N")
DENSITY_COLUMNS = ("x_m", "baseline_J_per_m", "delta_J_per_m", "total_J_per_m")
ORACLE_COLUMNS = ("lambda", "E_ground", "E2_pert_prediction", "ratio", "truncation_estimate")

SWEEP_AXES = ("omega_osc", "omega_cut", "M", "L0")

# Oracle-check regime: hbar = c = L0 = 1 with a heavy mirror, so the
# second-order formulas dominate and deviations scale cleanly as lambda^2.
ORACLE_DEFAULT_MASS = 100.0
ORACLE_DEFAULT_OMEGA_OSC = 1.0
ORACLE_DEFAULT_LAMBDAS = (0.1, 0.05, 0.025)


@dataclass
class ReportResult:
    csv: str
    summary: str
    scalars: dict[str, float] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def _spectrum_rows(params: PhysicalParams) -> tuple[list[tuple[int, float, float]], float]:
    spectrum = observables.photon_spectrum(params)
    basis = spectrum.basis
    rows = [
        (m, float(basis.frequencies[m - 1]), float(spectrum.photon_numbers[m - 1]))
        for m in range(1, basis.n_max + 1)
    ]
    return rows, spectrum.n_osc


def spectrum_report(params: PhysicalParams) -> ReportResult:
    rows, n_osc = _spectrum_rows(params)
    meta = params_meta(params) + [("n_max", len(rows)), ("command", "spectrum")]
    csv = render_csv(meta, SPECTRUM_COLUMNS, rows)
    return ReportResult(
        csv=csv,
        summary=f"spectrum: {len(rows)} modes, N_osc = {n_osc!r}",
        scalars={"n_max": float(len(rows)), "N_osc": n_osc},
    )


def budget_report(params: PhysicalParams) -> ReportResult:
    budget = observables.energy_shift(params)
    n_osc = observables.mirror_excitation(params)
    meta = params_meta(params) + [("n_max", max_mode_index(params)), ("command", "budget")]
    csv = render_csv(meta, BUDGET_COLUMNS, [(budget.E2, budget.H0_exp, budget.Hint_exp, n_osc)])
    return ReportResult(
        csv=csv,
        summary=f"budget: E2 = {budget.E2!r} J",
        scalars={"E2_J": budget.E2, "H0_J": budget.H0_exp, "Hint_J": budget.Hint_exp, "N_osc": n_osc},
    )


def force_report(params: PhysicalParams, delta: float = 1e-4, strict: bool = False) -> ReportResult:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CutoffCrossingWarning)
        result = observables.casimir_energy_correction(params, delta=delta)
    notes = [str(w.message) for w in caught if issubclass(w.category, CutoffCrossingWarning)]
    if strict and notes:
        raise CutoffCrossingError(notes[0])
    meta = params_meta(params) + [
        ("n_max", max_mode_index(params)),
        ("delta", delta),
        ("command", "force"),
    ]
    csv = render_csv(
        meta, FORCE_COLUMNS, [(result.E2_J, result.dE2_dL0_N, result.fixed_wall_force_N)]
    )
    return ReportResult(
        csv=csv,
        summary=(
            f"force: E2 = {result.E2_J!r} J, correction = {result.force_correction_N!r} N "
            f"(fixed-wall {result.fixed_wall_force_N!r} N)"
        ),
        scalars={
            "E2_J": result.E2_J,
            "dE2_dL0_N": result.dE2_dL0_N,
            "force_correction_N": result.force_correction_N,
            "fixed_wall_force_N": result.fixed_wall_force_N,
        },
        warnings=notes,
    )


def _density_rows(params: PhysicalParams, grid_size: int, workers: int):
    profile = density_mod.density_profile(grid_size, params, workers=workers)
    rows = [
        (float(x), profile.baseline, float(d), float(t))
        for x, d, t in zip(profile.grid, profile.delta, profile.total)
    ]
    return rows, profile


def density_report(params: PhysicalParams, grid_size: int = 1000, workers: int = 1) -> ReportResult:
    rows, profile = _density_rows(params, grid_size, workers)
    meta = params_meta(params) + [
        ("n_max", max_mode_index(params)),
        ("grid_size", grid_size),
        ("command", "density"),
    ]
    csv = render_csv(meta, DENSITY_COLUMNS, rows)
    wall = profile.delta_at_wall()
    return ReportResult(
        csv=csv,
        summary=f"density: {grid_size} points, delta(L0) = {wall!r} J/m",
        scalars={"delta_at_wall_J_per_m": wall, "baseline_J_per_m": profile.baseline},
    )


def sweep_report(
    params: PhysicalParams,
    axis: str,
    values: list[float],
    target: str = "spectrum",
    grid_size: int = 1000,
    workers: int = 1,
) -> ReportResult:
    if axis not in SWEEP_AXES:
        raise ParameterError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    if target not in ("spectrum", "density"):
        raise ParameterError(f"sweep target must be 'spectrum' or 'density', got {target!r}")
    if not values:
        raise ParameterError("sweep needs at least one axis value")
    if any(v <= 0.0 for v in values):
        raise ParameterError("sweep values must be strictly positive")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ParameterError("sweep values must be strictly increasing")

    columns = (axis,) + (SPECTRUM_COLUMNS if target == "spectrum" else DENSITY_COLUMNS)
    rows: list[tuple] = []
    for value in values:
        swept = params.replace(**{axis: value})
        if target == "spectrum":
            sub, _ = _spectrum_rows(swept)
        else:
            sub, _ = _density_rows(swept, grid_size, workers)
        rows.extend((value,) + r for r in sub)
    meta = params_meta(params) + [
        ("axis", axis),
        ("values", ";".join(repr(float(v)) for v in values)),
        ("target", target),
    ]
    if target == "density":
        meta.append(("grid_size", grid_size))
    meta.append(("command", "sweep"))
    csv = render_csv(meta, columns, rows)
    return ReportResult(
        csv=csv,
        summary=f"sweep: {len(rows)} rows over {len(values)} {axis} values",
        scalars={"rows": float(len(rows)), "values": float(len(values))},
    )


def oracle_report(
    n_modes: int = 2,
    max_total_photons: int = 4,
    max_mirror_quanta: int = 2,
    lambdas: tuple[float, ...] = ORACLE_DEFAULT_LAMBDAS,
    mirror_mass: float = ORACLE_DEFAULT_MASS,
    omega_osc: float = ORACLE_DEFAULT_OMEGA_OSC,
) -> ReportResult:
    if not lambdas:
        raise ParameterError("need at least one lambda value")
    if any(lam <= 0.0 for lam in lambdas):
        raise ParameterError("lambda values must be strictly positive")
    params = PhysicalParams.natural(n_modes, M=mirror_mass, omega_osc=omega_osc)
    basis = ed_oracle.enumerate_basis(n_modes, max_total_photons, max_mirror_quanta)
    e2_formula = observables.energy_shift(params).E2

    rows = []
    for lam in lambdas:
        ham = ed_oracle.assemble_hamiltonian(basis, params, lam)
        energy, _ = ed_oracle.ground_state(ham)
        prediction = lam * lam * e2_formula
        ratio = energy / prediction
        estimate = ed_oracle.truncation_estimate(basis, params, lam, energy)
        rows.append((float(lam), energy, prediction, ratio, estimate))

    meta = [
        ("n_modes", n_modes),
        ("max_total_photons", max_total_photons),
        ("max_mirror_quanta", max_mirror_quanta),
        ("mirror_mass", float(mirror_mass)),
        ("omega_osc", float(omega_osc)),
        ("lambdas", ";".join(repr(float(v)) for v in lambdas)),
        ("command", "oracle-check"),
    ]
    csv = render_csv(meta, ORACLE_COLUMNS, rows)
    last_ratio = rows[-1][3]
    return ReportResult(
        csv=csv,
        summary=f"oracle-check: {len(rows)} lambda rungs, ratio at smallest = {last_ratio!r}",
        scalars={"ratio_at_smallest_lambda": last_ratio, "rows": float(len(rows))},
    )
