"""Mirror-field coupling constants and first-order ground-state amplitudes.

The movable mirror couples to the field through the radiation pressure on the
wall; linearized about the equilibrium length, the interaction is bilinear in
the field ladder operators and linear in the mirror displacement.  The mode
pair (k, j) enters with the coupling energy

    C_kj = (-1)^(k+j) * (hbar/2)^(3/2) * sqrt(omega_k*omega_j/omega_osc) / (L0*sqrt(M))

First-order perturbation theory admixes states with one mirror quantum and two
field quanta into the ground state.  The amplitude returned by `amplitude_D`
is the projection of the interacting ground state onto the *normalized*
two-photon/one-phonon state:

    D(k, j) = m_kj * C_kj / (hbar * (omega_osc + omega_k + omega_j))

with the pair-multiplicity factor m_kj = 2 for k != j (the interaction's
ordered double sum counts the pair twice) and m_kk = sqrt(2) (Fock
normalization of the doubly occupied mode).  This constant is fixed by
requiring D(k, j) * (-hbar*(omega_osc+omega_k+omega_j)) to equal the exact
matrix element of the interaction between the bare vacuum and the pair state,
which the exact-diagonalization oracle reproduces to machine precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, PerturbativityWarning
from .params import ModeBasis, PhysicalParams, max_mode_index, mode_frequency

# |D| above this is no longer perturbatively small.
PERTURBATIVE_LIMIT = 0.1


def coupling_from_frequencies(k: int, j: int, wk: float, wj: float, params: PhysicalParams) -> float:
    """C_kj given precomputed mode frequencies; indices fix the sign only."""
    sign = -1.0 if (k + j) % 2 else 1.0
    return (
        sign
        * (params.hbar / 2.0) ** 1.5
        / (params.L0 * math.sqrt(params.M))
        * math.sqrt(wk * wj / params.omega_osc)
    )


def _check_indices(k: int, j: int, params: PhysicalParams) -> None:
    n_max = max_mode_index(params)
    for name, idx in (("k", k), ("j", j)):
        if not isinstance(idx, (int, np.integer)) or isinstance(idx, bool):
            raise ParameterError(f"mode index {name} must be an integer, got {idx!r}")
        if not 1 <= idx <= n_max:
            raise ParameterError(f"mode index {name}={idx} outside retained range 1..{n_max}")


def coupling_C(k: int, j: int, params: PhysicalParams) -> float:
    """Coupling energy C_kj (J) for retained modes k, j."""
    _check_indices(k, j, params)
    return coupling_from_frequencies(k, j, mode_frequency(k, params), mode_frequency(j, params), params)


def pair_multiplicity(k: int, j: int) -> float:
    return 2.0 if k != j else math.sqrt(2.0)


def interaction_matrix_element(k: int, j: int, params: PhysicalParams) -> float:
    """<pair(k,j); 1 mirror quantum| H_int |vacuum> = -m_kj * C_kj (J)."""
    _check_indices(k, j, params)
    return -pair_multiplicity(k, j) * coupling_C(k, j, params)


def amplitude_D(k: int, j: int, params: PhysicalParams) -> float:
    """Dimensionless first-order amplitude of the normalized pair state (k, j).

    Matrix element divided by -hbar*(omega_osc + omega_k + omega_j); see the
    module docstring for the multiplicity convention.
    """
    me = interaction_matrix_element(k, j, params)
    denom = params.omega_osc + mode_frequency(k, params) + mode_frequency(j, params)
    return me / (-params.hbar * denom)


@dataclass(frozen=True)
class CouplingMatrix:
    """Dense symmetric matrix of C_kj over the retained modes; C[k-1, j-1]."""

    basis: ModeBasis
    C: np.ndarray

    @classmethod
    def build(cls, basis: ModeBasis) -> "CouplingMatrix":
        w = basis.frequencies
        p = basis.params
        magnitude = (p.hbar / 2.0) ** 1.5 / (p.L0 * math.sqrt(p.M)) * np.sqrt(
            np.outer(w, w) / p.omega_osc
        )
        k = np.arange(1, basis.n_max + 1)
        signs = np.where((k[:, None] + k[None, :]) % 2 == 0, 1.0, -1.0)
        mat = signs * magnitude
        mat.setflags(write=False)
        return cls(basis=basis, C=mat)


@dataclass(frozen=True)
class PerturbationAmplitudes:
    """Dense symmetric matrix of amplitude_D over the retained modes; D[k-1, j-1]."""

    basis: ModeBasis
    D: np.ndarray

    @classmethod
    def build(cls, basis: ModeBasis) -> "PerturbationAmplitudes":
        w = basis.frequencies
        p = basis.params
        cmat = CouplingMatrix.build(basis).C
        mult = np.full((basis.n_max, basis.n_max), 2.0)
        np.fill_diagonal(mult, math.sqrt(2.0))
        denom = p.hbar * (p.omega_osc + w[:, None] + w[None, :])
        mat = mult * cmat / denom
        mat.setflags(write=False)
        worst = float(np.max(np.abs(mat)))
        if worst > PERTURBATIVE_LIMIT:
            warnings.warn(
                f"max |D| = {worst:.3g} exceeds {PERTURBATIVE_LIMIT}; "
                "first-order results are unreliable at these parameters",
                PerturbativityWarning,
                stacklevel=2,
            )
        return cls(basis=basis, D=mat)


def write_matrix_csv(matrix: np.ndarray, path: str, label: str = "value") -> None:
    """Debug dump of a mode-indexed matrix; not a stability-guaranteed format."""
    n = matrix.shape[0]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {label}; rows and columns are mode indices 1..{n}\n")
        fh.write("k\\j," + ",".join(str(j) for j in range(1, n + 1)) + "\n")
        for i in range(n):
            fh.write(str(i + 1) + "," + ",".join(repr(float(v)) for v in matrix[i]) + "\n")
