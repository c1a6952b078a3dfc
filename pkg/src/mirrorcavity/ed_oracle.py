"""Independent brute-force validator: exact diagonalization in truncated Fock space.

The full Hamiltonian H = H0 + lambda * H_int is assembled as a dense symmetric
matrix over occupation states (n_1 .. n_modes; n_mirror) with a cap on the
total photon number and on the mirror quanta, then diagonalized exactly.  The
interaction applies the eight ladder-operator strings

    b^+ a_k a_j,  b^+ a_k^+ a_j^+,  b^+ a_k^+ a_j,  b^+ a_j^+ a_k,
    b   a_k a_j,  b   a_k^+ a_j^+,  b   a_k^+ a_j,  b   a_j^+ a_k

for every ordered mode pair (k, j), each scaled by -lambda * C_kj; images that
exceed a cap are dropped (truncation).  Ladder factors are multiplied in
sorted order so the assembled matrix is symmetric to the last bit.

This module runs in a natural-unit regime (hbar = c = 1, heavy order-10^2
mirror mass): SI-scale couplings (~1e-19 relative to the diagonal) would be
invisible to a double-precision eigensolver, and the perturbative formulas are
homogeneous in these scales, so validation transfers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.linalg

from .coupling import coupling_from_frequencies
from .errors import OracleError, ParameterError
from .params import PhysicalParams, mode_frequency

MAX_DIMENSION = 20_000
MAX_MODES = 4


@dataclass(frozen=True)
class FockBasis:
    """Complete occupation-number enumeration under the caps, vacuum first."""

    n_modes: int
    max_total_photons: int
    max_mirror_quanta: int
    states: tuple[tuple[int, ...], ...] = field(repr=False)

    @cached_property
    def index_map(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.states)}

    @property
    def dim(self) -> int:
        return len(self.states)


def enumerate_basis(n_modes: int, max_total_photons: int, max_mirror_quanta: int) -> FockBasis:
    """Lexicographically ordered states (n_1..n_modes, n_mirror) under the caps."""
    if not 1 <= n_modes <= MAX_MODES:
        raise ParameterError(f"n_modes must be in 1..{MAX_MODES}, got {n_modes}")
    if max_total_photons < 1 or max_mirror_quanta < 1:
        raise ParameterError("occupancy caps must be >= 1")
    projected = math.comb(max_total_photons + n_modes, n_modes) * (max_mirror_quanta + 1)
    if projected > MAX_DIMENSION:
        raise OracleError(f"basis would have {projected} states (limit {MAX_DIMENSION})")
    states = []
    for occ in itertools.product(range(max_total_photons + 1), repeat=n_modes):
        if sum(occ) > max_total_photons:
            continue
        for nb in range(max_mirror_quanta + 1):
            states.append(occ + (nb,))
    states.sort()
    return FockBasis(
        n_modes=n_modes,
        max_total_photons=max_total_photons,
        max_mirror_quanta=max_mirror_quanta,
        states=tuple(states),
    )


def apply_ladder(
    state: tuple[int, ...], pos: int, direction: int, basis: FockBasis
) -> tuple[tuple[int, ...], float] | None:
    """Apply a_pos (direction -1) or a_pos^+ (+1); None if annihilated or capped.

    pos indexes field modes 0..n_modes-1; pos == n_modes is the mirror.
    Returns the image state and the sqrt occupation factor.
    """
    occ = state[pos]
    if direction < 0:
        if occ == 0:
            return None
        out = list(state)
        out[pos] = occ - 1
        return tuple(out), math.sqrt(occ)
    out = list(state)
    out[pos] = occ + 1
    if pos == basis.n_modes:
        if out[pos] > basis.max_mirror_quanta:
            return None
    elif sum(out[: basis.n_modes]) > basis.max_total_photons:
        return None
    return tuple(out), math.sqrt(occ + 1)


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Diagonal H0 energies plus the dense symmetric lambda-scaled interaction."""

    basis: FockBasis
    H0_diag: np.ndarray
    Hint: np.ndarray
    lam: float

    @property
    def dim(self) -> int:
        return self.basis.dim

    def total(self) -> np.ndarray:
        return np.diag(self.H0_diag) + self.Hint


def _interaction_strings(k_pos: int, j_pos: int, mirror_pos: int) -> list[list[tuple[int, int]]]:
    """The eight operator strings as (pos, direction) lists, leftmost first."""
    return [
        [(mirror_pos, +1), (k_pos, -1), (j_pos, -1)],
        [(mirror_pos, +1), (k_pos, +1), (j_pos, +1)],
        [(mirror_pos, +1), (k_pos, +1), (j_pos, -1)],
        [(mirror_pos, +1), (j_pos, +1), (k_pos, -1)],
        [(mirror_pos, -1), (k_pos, -1), (j_pos, -1)],
        [(mirror_pos, -1), (k_pos, +1), (j_pos, +1)],
        [(mirror_pos, -1), (k_pos, +1), (j_pos, -1)],
        [(mirror_pos, -1), (j_pos, +1), (k_pos, -1)],
    ]


def assemble_hamiltonian(basis: FockBasis, params: PhysicalParams, lam: float) -> HamiltonianMatrix:
    """Dense H0 diagonal and interaction matrix over the truncated basis.

    H0 is normal ordered (bare vacuum at zero energy).  The oracle's mode set
    is the first `basis.n_modes` cavity modes regardless of omega_cut; the
    basis size plays the cutoff's role here.
    """
    freqs = [mode_frequency(k, params) for k in range(1, basis.n_modes + 1)]
    h0 = np.array(
        [
            params.hbar * params.omega_osc * s[-1]
            + sum(params.hbar * freqs[m] * s[m] for m in range(basis.n_modes))
            for s in basis.states
        ]
    )
    hint = np.zeros((basis.dim, basis.dim))
    mirror_pos = basis.n_modes
    for k in range(1, basis.n_modes + 1):
        for j in range(1, basis.n_modes + 1):
            ckj = coupling_from_frequencies(k, j, freqs[k - 1], freqs[j - 1], params)
            strings = _interaction_strings(k - 1, j - 1, mirror_pos)
            for i, state in enumerate(basis.states):
                for ops in strings:
                    current = state
                    factors = []
                    for pos, direction in reversed(ops):  # rightmost operator acts first
                        step = apply_ladder(current, pos, direction, basis)
                        if step is None:
                            factors = None
                            break
                        current, f = step
                        factors.append(f)
                    if factors is not None:
                        # sorted product keeps H[t,s] and H[s,t] bit-identical
                        hint[basis.index_map[current], i] += -lam * ckj * math.prod(sorted(factors))
    h0.setflags(write=False)
    hint.setflags(write=False)
    return HamiltonianMatrix(basis=basis, H0_diag=h0, Hint=hint, lam=lam)


def ground_state(ham: HamiltonianMatrix) -> tuple[float, np.ndarray]:
    """Lowest eigenpair; vector normalized with a real positive vacuum amplitude."""
    try:
        energies, vectors = scipy.linalg.eigh(ham.total())
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK breakdown
        raise OracleError(f"dense eigensolver failed: {exc}") from exc
    vec = vectors[:, 0].copy()
    anchor = vec[0] if vec[0] != 0.0 else vec[np.argmax(np.abs(vec))]
    if anchor < 0.0:
        vec = -vec
    vec.setflags(write=False)
    return float(energies[0]), vec


@dataclass(frozen=True)
class OracleObservables:
    """Expectation values evaluated directly on a basis-expanded state."""

    photon_numbers: np.ndarray
    n_osc: float
    H0_exp: float
    Hint_exp: float


def oracle_observables(ham: HamiltonianMatrix, state: np.ndarray) -> OracleObservables:
    weights = state * state
    occ = np.array(ham.basis.states, dtype=float)
    photon = occ[:, : ham.basis.n_modes].T @ weights
    n_osc = float(occ[:, -1] @ weights)
    h0 = float(ham.H0_diag @ weights)
    hint = float(state @ (ham.Hint @ state))
    photon.setflags(write=False)
    return OracleObservables(photon_numbers=photon, n_osc=n_osc, H0_exp=h0, Hint_exp=hint)


def pair_state_index(basis: FockBasis, k: int, j: int) -> int:
    """Index of the state with photons in modes k, j and one mirror quantum."""
    occ = [0] * basis.n_modes
    occ[k - 1] += 1
    occ[j - 1] += 1
    return basis.index_map[tuple(occ) + (1,)]


def truncation_estimate(basis: FockBasis, params: PhysicalParams, lam: float, energy: float) -> float:
    """Relative ground-energy change when both occupancy caps are raised by one."""
    bigger = enumerate_basis(basis.n_modes, basis.max_total_photons + 1, basis.max_mirror_quanta + 1)
    refined, _ = ground_state(assemble_hamiltonian(bigger, params, lam))
    return abs(refined - energy) / max(abs(energy), 1e-300)
