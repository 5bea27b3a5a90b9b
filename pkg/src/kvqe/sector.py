"""(N, 2*Sz) symmetry-sector basis and sparse operator compilation.

Particle number and Sz commute with every operator this package optimizes
over, so the hot loops can run on the sector-restricted CSR matrix instead of
the full 2^n statevector.  Alpha modes are the even qubits, beta the odd.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix

from .pauli import PauliSum
from .state import StateVector


def _alpha_mask(n_qubits):
    m = 0
    for q in range(0, n_qubits, 2):
        m |= 1 << q
    return np.uint64(m)


class SectorSpace:
    """Ordered basis of determinants with fixed electron count and 2*Sz."""

    __slots__ = ("n_qubits", "nelec", "ms2", "basis")

    def __init__(self, n_qubits, nelec, ms2):
        self.n_qubits = int(n_qubits)
        self.nelec = int(nelec)
        self.ms2 = int(ms2)
        idx = np.arange(1 << self.n_qubits, dtype=np.uint64)
        amask = _alpha_mask(self.n_qubits)
        na = np.bitwise_count(idx & amask).astype(np.int64)
        ntot = np.bitwise_count(idx).astype(np.int64)
        keep = (ntot == self.nelec) & (2 * na - self.nelec == self.ms2)
        self.basis = idx[keep]  # ascending by construction

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def of_reference(cls, reference, n_qubits) -> "SectorSpace":
        return cls(n_qubits, reference.nelec, reference.ms2)

    def index_of(self, dets: np.ndarray) -> np.ndarray:
        """Positions of basis determinants; raises if any is out of sector."""
        pos = np.searchsorted(self.basis, dets)
        if np.any(pos >= self.dim) or np.any(self.basis[pos] != dets):
            raise ValueError("determinant outside sector")
        return pos

    def project(self, state: StateVector) -> np.ndarray:
        """Sector amplitudes; raises if weight outside the sector exceeds 1e-10."""
        amp = state.amplitudes
        vec = amp[self.basis.astype(np.int64)]
        outside = np.linalg.norm(amp) ** 2 - np.linalg.norm(vec) ** 2
        if outside > 1e-10:
            raise ValueError(f"state has weight {outside:.3e} outside the sector")
        return vec

    def embed(self, vec: np.ndarray) -> StateVector:
        amp = np.zeros(1 << self.n_qubits, dtype=np.complex128)
        amp[self.basis.astype(np.int64)] = vec
        return StateVector(amp, self.n_qubits)


def pauli_csr(op: PauliSum, space: SectorSpace, leak_tol: float = 1e-10) -> csr_matrix:
    """Sector-restricted sparse matrix of a sector-preserving Pauli sum.

    Individual strings of a conserving operator may scatter determinants out
    of the sector (the XX piece of XX+YY hopping does); those contributions
    must cancel in the sum.  They are accumulated on scratch rows and checked
    against ``leak_tol`` — a genuinely non-conserving operator raises.
    """
    xs, zs, cs = op.compiled()
    dim = space.dim
    basis = space.basis
    col = np.arange(dim, dtype=np.int64)
    rows, cols, vals = [], [], []
    extra: dict[int, int] = {}  # out-of-sector determinant -> scratch row
    for x, z, c in zip(xs, zs, cs):
        target = basis ^ x
        signs = 1.0 - 2.0 * (np.bitwise_count(basis & z) & np.uint64(1)).astype(np.float64)
        pos = np.searchsorted(basis, target)
        posc = np.minimum(pos, dim - 1)
        inside = basis[posc] == target
        r = np.where(inside, posc, -1)
        if not inside.all():
            uniq, inv = np.unique(target[~inside], return_inverse=True)
            lut = np.array([extra.setdefault(int(d), dim + len(extra)) for d in uniq])
            r[~inside] = lut[inv]
        rows.append(r)
        cols.append(col)
        vals.append(c * signs)
    if not rows:
        return csr_matrix((dim, dim), dtype=np.complex128)
    full = csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim + len(extra), dim),
    )
    if extra:
        leak = full[dim:, :]
        if leak.nnz and np.abs(leak.data).max() > leak_tol:
            raise ValueError(
                f"operator leaks {np.abs(leak.data).max():.3e} outside the sector"
            )
    out = full[:dim, :]
    out.eliminate_zeros()
    return out
