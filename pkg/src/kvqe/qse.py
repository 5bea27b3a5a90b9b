"""Quantum subspace expansion on top of a prepared reference state.

The subspace is spanned by {T_u |psi>} with T_0 = 1 and T_u excitation
operators; ground and excited states come from the generalized eigenproblem

    H_qse c = E S_qse c,
    H_qse[u,v] = <T_u psi| H |T_v psi>,   S_qse[u,v] = <T_u psi|T_v psi>,

solved after canonical orthogonalization (overlap eigenvalues below the
threshold are discarded).  Default operator content: spin-orbital
excitations filtered to conserve Sz and crystal momentum; a spin-adapted
variant is available for comparison with spin-free counting conventions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fermion import FermionOperator, excitation
from .integrals import IntegralSet, ReferenceDeterminant
from .pauli import PauliSum, jordan_wigner
from .pool import _doubles, _single, momentum_conserved
from .sector import SectorSpace, pauli_csr
from .state import StateVector

ORTHO_THRESHOLD = 1e-8


@dataclass
class QseSpace:
    operators: list[FermionOperator]  # index 0 is the identity
    paulis: list[PauliSum]
    labels: list[str]
    truncation: str

    @property
    def dim(self) -> int:
        return len(self.operators)


def build_qse_space(
    integrals: IntegralSet,
    reference: ReferenceDeterminant | None = None,
    truncation: str = "sd",
    spin_adapted: bool = False,
    momentum_filtered: bool = True,
) -> QseSpace:
    """Expansion operators up to doubles.

    ``truncation="sd"`` uses occupied -> virtual indices relative to the
    reference; ``"general"`` uses all mode pairs.  Operators violating Sz or
    (when filtering is on) crystal momentum conservation are dropped.
    """
    n_qubits = integrals.n_qubits
    if reference is None:
        reference = integrals.hf_reference()
    ops: list[FermionOperator] = [FermionOperator.identity()]
    labels = ["1"]

    def conserves(creations, annihilations):
        if not momentum_filtered:
            return True
        return momentum_conserved(
            [m // 2 for m in creations], [m // 2 for m in annihilations], integrals
        )

    if spin_adapted:
        _spin_adapted_ops(integrals, reference, truncation, conserves, ops, labels)
        return QseSpace(ops, [jordan_wigner(t, n_qubits) for t in ops], labels, truncation)

    if truncation == "sd":
        occ = list(reference.occupied)
        virt = [m for m in range(n_qubits) if m not in occ]
        singles = [(a, i) for i in occ for a in virt if a % 2 == i % 2]
        ann_pairs = [(i, j) for n, i in enumerate(occ) for j in occ[n + 1 :]]
        cre_pairs = [(a, b) for n, a in enumerate(virt) for b in virt[n + 1 :]]
    elif truncation == "general":
        modes = list(range(n_qubits))
        singles = [(a, i) for i in modes for a in modes if a != i and a % 2 == i % 2]
        ann_pairs = [(i, j) for n, i in enumerate(modes) for j in modes[n + 1 :]]
        cre_pairs = ann_pairs
    else:
        raise ValueError(f"unknown truncation {truncation!r}")

    for a, i in singles:
        if conserves([a], [i]):
            ops.append(excitation([a], [i]))
            labels.append(f"{a}^{i}")
    for i, j in ann_pairs:
        sz_ann = (i % 2) + (j % 2)
        for a, b in cre_pairs:
            if truncation == "general" and {a, b} == {i, j}:
                continue
            if (a % 2) + (b % 2) != sz_ann:
                continue
            if conserves([a, b], [i, j]):
                ops.append(excitation([a, b], [j, i]))
                labels.append(f"{a}^{b}^{j}{i}")
    return QseSpace(ops, [jordan_wigner(t, n_qubits) for t in ops], labels, truncation)


def _spin_adapted_ops(integrals, reference, truncation, conserves, ops, labels):
    """Singlet-coupled spatial excitations (the spin-free counting convention)."""
    norb = integrals.norb
    if truncation == "sd":
        occ = list(reference.occupied_spatial)
        virt = [p for p in range(norb) if p not in occ]
        singles = [(i, a) for i in occ for a in virt]
        ann_pairs = [(i, j) for n, i in enumerate(occ) for j in occ[n:]]
        cre_pairs = [(a, b) for n, a in enumerate(virt) for b in virt[n:]]
    elif truncation == "general":
        singles = [(p, q) for p in range(norb) for q in range(norb) if p != q]
        ann_pairs = [(p, q) for p in range(norb) for q in range(p, norb)]
        cre_pairs = ann_pairs
    else:
        raise ValueError(f"unknown truncation {truncation!r}")
    for p, q in singles:
        if conserves([q], [p]):
            ops.append(_single(p, q))
            labels.append(f"S({p}->{q})")
    for p, q in ann_pairs:
        for r, s in cre_pairs:
            if not conserves([r, s], [p, q]):
                continue
            termA, termB = _doubles(p, q, r, s)
            for tag, term in (("A", termA), ("B", termB)):
                if term.normal_ordered().terms:
                    ops.append(term)
                    labels.append(f"D{tag}({p},{q}->{r},{s})")


def qse_matrices(hamiltonian: PauliSum, space: QseSpace, state: StateVector, sector: SectorSpace):
    """(H_qse, S_qse) over the expansion operators applied to the state."""
    vec = sector.project(state)
    cols = []
    for p in space.paulis:
        cols.append(pauli_csr(p, sector) @ vec)
    B = np.array(cols).T  # (dim, nops)
    h = pauli_csr(hamiltonian, sector)
    Hq = B.conj().T @ (h @ B)
    Sq = B.conj().T @ B
    return Hq, Sq


def solve_pencil(Hq, Sq, threshold: float = ORTHO_THRESHOLD):
    """Canonically orthogonalized generalized eigenproblem.

    Returns (energies ascending, coefficients in the original operator basis,
    retained rank).
    """
    Sq = 0.5 * (Sq + Sq.conj().T)
    w, v = np.linalg.eigh(Sq)
    keep = w > threshold * max(1.0, w.max())
    rank = int(keep.sum())
    if rank == 0:
        raise ValueError("overlap matrix is numerically zero")
    X = v[:, keep] / np.sqrt(w[keep])
    Ht = X.conj().T @ Hq @ X
    Ht = 0.5 * (Ht + Ht.conj().T)
    e, c = np.linalg.eigh(Ht)
    return e, X @ c, rank


@dataclass
class QseResult:
    energies: np.ndarray
    coefficients: np.ndarray
    rank: int
    dim: int


def qse(hamiltonian, space: QseSpace, state: StateVector, sector: SectorSpace, threshold=ORTHO_THRESHOLD) -> QseResult:
    Hq, Sq = qse_matrices(hamiltonian, space, state, sector)
    e, c, rank = solve_pencil(Hq, Sq, threshold)
    return QseResult(e, c, rank, space.dim)
