"""Spin-adapted, momentum-conserving excitation pools for UCC and ADAPT.

Singles pair the alpha and beta channels of a spatial excitation; doubles
come in (up to) two orthogonal singlet combinations per spatial index
quadruple — coefficients 2/sqrt(12) (parallel spins) and 1/sqrt(12)
(crossed) for the first, +-1/2 for the second.  Every candidate T is turned
into tau = T - T^+ in normal-ordered form, normalized to unit coefficient
two-norm, and dropped if it vanishes or duplicates an earlier generator.

Crystal momentum: a generator is admitted only when the k-point sum of its
created spatial orbitals matches that of the annihilated ones modulo the
reciprocal lattice (componentwise, tolerance 1e-8).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .fermion import FermionOperator, anti_hermitian
from .integrals import IntegralSet, ReferenceDeterminant
from .pauli import PauliSum, jordan_wigner

MOMENTUM_TOL = 1e-8


@dataclass
class PoolGenerator:
    """One anti-Hermitian pool member tau_u and its qubit image."""

    id: int
    label: str
    rank: str  # "single" | "double"
    spatial: tuple[int, ...]
    tau: FermionOperator
    pauli: PauliSum
    norm1: float = field(init=False)

    def __post_init__(self):
        self.norm1 = self.pauli.norm1()


def momentum_conserved(creations, annihilations, integrals: IntegralSet, tol=MOMENTUM_TOL) -> bool:
    """Whether spatial orbital index lists conserve crystal momentum mod 1."""
    total = np.zeros(3)
    for p in creations:
        total += np.array(integrals.kmesh.points[integrals.orb_k[p]])
    for p in annihilations:
        total -= np.array(integrals.kmesh.points[integrals.orb_k[p]])
    d = total % 1.0
    return bool(np.all(np.minimum(d, 1.0 - d) < tol))


def _single(p, q):
    """(a+_q a_p) alpha + beta, spatial p -> q."""
    pa, pb, qa, qb = 2 * p, 2 * p + 1, 2 * q, 2 * q + 1
    return FermionOperator.from_term([(qa, True), (pa, False)]) + FermionOperator.from_term(
        [(qb, True), (pb, False)]
    )


def _doubles(p, q, r, s):
    """The two singlet combinations annihilating (p, q) and creating (r, s)."""
    pa, pb = 2 * p, 2 * p + 1
    qa, qb = 2 * q, 2 * q + 1
    ra, rb = 2 * r, 2 * r + 1
    sa, sb = 2 * s, 2 * s + 1
    c1, c2 = 2.0 / np.sqrt(12.0), 1.0 / np.sqrt(12.0)
    termA = FermionOperator()
    for fac, c in (
        (((ra, True), (pa, False), (sa, True), (qa, False)), c1),
        (((rb, True), (pb, False), (sb, True), (qb, False)), c1),
        (((ra, True), (pa, False), (sb, True), (qb, False)), c2),
        (((rb, True), (pb, False), (sa, True), (qa, False)), c2),
        (((ra, True), (pb, False), (sb, True), (qa, False)), c2),
        (((rb, True), (pa, False), (sa, True), (qb, False)), c2),
    ):
        termA = termA + FermionOperator.from_term(fac, c)
    termB = FermionOperator()
    for fac, c in (
        (((ra, True), (pa, False), (sb, True), (qb, False)), 0.5),
        (((rb, True), (pb, False), (sa, True), (qa, False)), 0.5),
        (((ra, True), (pb, False), (sb, True), (qa, False)), -0.5),
        (((rb, True), (pa, False), (sa, True), (qb, False)), -0.5),
    ):
        termB = termB + FermionOperator.from_term(fac, c)
    return termA, termB


def _normalize(tau: FermionOperator) -> FermionOperator:
    nrm = np.sqrt(sum(abs(c) ** 2 for c in tau.terms.values()))
    return tau * (1.0 / nrm)


def _signature(tau: FermionOperator):
    """Canonical hashable form, invariant to global phase/sign."""
    items = sorted(tau.terms.items())
    c0 = items[0][1]
    scale = abs(c0) / c0
    return tuple((fac, round((c * scale).real, 10), round((c * scale).imag, 10)) for fac, c in items)


def build_pool(
    integrals: IntegralSet,
    kind: str = "GSD",
    reference: ReferenceDeterminant | None = None,
) -> list[PoolGenerator]:
    """Momentum-filtered singlet pool.

    ``kind="SD"`` restricts annihilated indices to reference-occupied spatial
    orbitals and created ones to virtuals (a reference is then required);
    ``kind="GSD"`` runs over all spatial indices.
    """
    norb = integrals.norb
    if kind == "SD":
        if reference is None:
            reference = integrals.hf_reference()
        occ = list(reference.occupied_spatial)
        virt = [p for p in range(norb) if p not in occ]
        single_pairs = [(i, a) for i in occ for a in virt]
        double_quads = []
        occ_pairs = [(i, j) for n, i in enumerate(occ) for j in occ[n:]]
        virt_pairs = [(a, b) for n, a in enumerate(virt) for b in virt[n:]]
        for i, j in occ_pairs:
            for a, b in virt_pairs:
                double_quads.append((i, j, a, b))
    elif kind == "GSD":
        single_pairs = [(p, q) for p in range(norb) for q in range(p, norb)]
        pairs = [(p, q) for p in range(norb) for q in range(p, norb)]
        double_quads = []
        for upq, (p, q) in enumerate(pairs):
            for urs, (r, s) in enumerate(pairs):
                if upq > urs:
                    continue
                double_quads.append((p, q, r, s))
    else:
        raise ValueError(f"unknown pool kind {kind!r}")

    out: list[PoolGenerator] = []
    seen = set()

    def admit(term, label, rank, spatial):
        tau = anti_hermitian(term)
        if not tau.terms:
            return
        tau = _normalize(tau)
        sig = _signature(tau)
        if sig in seen:
            return
        seen.add(sig)
        pauli = jordan_wigner(tau, integrals.n_qubits)
        out.append(PoolGenerator(len(out), label, rank, spatial, tau, pauli))

    for p, q in single_pairs:
        if not momentum_conserved([q], [p], integrals):
            continue
        admit(_single(p, q), f"s({p}->{q})", "single", (p, q))
    for p, q, r, s in double_quads:
        if not momentum_conserved([r, s], [p, q], integrals):
            continue
        termA, termB = _doubles(p, q, r, s)
        admit(termA, f"dA({p},{q}->{r},{s})", "double", (p, q, r, s))
        admit(termB, f"dB({p},{q}->{r},{s})", "double", (p, q, r, s))
    if not out:
        warnings.warn("empty pool: system is trivially uncorrelated or degenerate", stacklevel=2)
    return out
