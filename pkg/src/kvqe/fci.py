"""Exact diagonalization in a fixed (N, 2*Sz) sector — the oracle energies."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import eigsh

from .pauli import PauliSum
from .sector import SectorSpace, pauli_csr
from .state import StateVector

DENSE_LIMIT = 4096
RESIDUAL_TOL = 1e-8


@dataclass
class SpectrumResult:
    energies: np.ndarray
    states: list[StateVector]
    sector: tuple[int, int]  # (nelec, ms2)
    dim: int


def fci(hamiltonian: PauliSum, nelec, ms2, n_states=1, n_qubits=None) -> SpectrumResult:
    """Lowest eigenpairs of the Hamiltonian restricted to the sector.

    Dense diagonalization up to dimension 4096, Lanczos beyond; iterative
    eigenpairs are verified against the residual ||H v - E v|| <= 1e-8.
    """
    n = n_qubits if n_qubits is not None else hamiltonian.n_qubits
    space = SectorSpace(n, nelec, ms2)
    if space.dim == 0:
        raise ValueError(f"empty sector (nelec={nelec}, ms2={ms2})")
    mat = pauli_csr(hamiltonian, space)
    k = min(n_states, space.dim)
    if k < n_states:
        warnings.warn(
            f"sector holds only {space.dim} states; truncating from {n_states}",
            stacklevel=2,
        )
    if space.dim <= DENSE_LIMIT:
        dense = mat.toarray()
        dense = 0.5 * (dense + dense.conj().T)
        w, v = np.linalg.eigh(dense)
        w, v = w[:k], v[:, :k]
    else:
        if k >= space.dim - 1:  # eigsh needs k < dim
            raise ValueError("n_states too large for iterative diagonalization")
        w, v = eigsh(mat, k=k, which="SA")
        order = np.argsort(w)
        w, v = w[order], v[:, order]
        for j in range(k):
            res = np.linalg.norm(mat @ v[:, j] - w[j] * v[:, j])
            if res > RESIDUAL_TOL:
                raise RuntimeError(f"eigenpair {j} residual {res:.3e} above tolerance")
    states = [space.embed(v[:, j]) for j in range(k)]
    return SpectrumResult(np.real(w), states, (int(nelec), int(ms2)), space.dim)
