"""Pauli-string sums on qubits and the Jordan-Wigner image of fermionic operators.

A Pauli string is stored in symplectic form as a pair of bit masks (x, z):
bit b of x set means an X-type flip on qubit b, bit b of z a Z-type phase,
both set means Y.  The stored coefficient refers to the canonical tensor
product of I/X/Y/Z letters.
"""

from __future__ import annotations

import numpy as np

from .fermion import FermionOperator, PRUNE_TOL

_I4 = (1, 1j, -1, -1j)


class PauliSum:
    """Complex-weighted sum of Pauli strings on ``n_qubits`` qubits."""

    __slots__ = ("terms", "n_qubits", "_compiled")

    def __init__(self, n_qubits: int, terms: dict[tuple[int, int], complex] | None = None):
        self.n_qubits = int(n_qubits)
        self.terms: dict[tuple[int, int], complex] = dict(terms) if terms else {}
        self._compiled = None

    @classmethod
    def identity(cls, n_qubits: int, coefficient=1.0) -> "PauliSum":
        return cls(n_qubits, {(0, 0): complex(coefficient)})

    @classmethod
    def from_label(cls, label: str, coefficient=1.0) -> "PauliSum":
        """Build a single string from a letter label, qubit 0 first ('XIZ' = X0 Z2)."""
        x = z = 0
        for q, letter in enumerate(label):
            if letter == "X":
                x |= 1 << q
            elif letter == "Y":
                x |= 1 << q
                z |= 1 << q
            elif letter == "Z":
                z |= 1 << q
            elif letter != "I":
                raise ValueError(f"bad Pauli letter {letter!r}")
        return cls(len(label), {(x, z): complex(coefficient)})

    def label(self, key: tuple[int, int]) -> str:
        x, z = key
        return "".join(
            "IXZY"[((x >> q) & 1) + 2 * ((z >> q) & 1)] for q in range(self.n_qubits)
        )

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise ValueError("qubit count mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0.0) + c
        return PauliSum(self.n_qubits, out)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (other * -1.0)

    def __mul__(self, scalar) -> "PauliSum":
        s = complex(scalar)
        return PauliSum(self.n_qubits, {k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise ValueError("qubit count mismatch")
        out: dict[tuple[int, int], complex] = {}
        for (x1, z1), c1 in self.terms.items():
            for (x2, z2), c2 in other.terms.items():
                x3, z3 = x1 ^ x2, z1 ^ z2
                k = (x1 & z1).bit_count() + (x2 & z2).bit_count() - (x3 & z3).bit_count()
                phase = _I4[k % 4] * (-1) ** ((z1 & x2).bit_count() & 1)
                key = (x3, z3)
                out[key] = out.get(key, 0.0) + c1 * c2 * phase
        return PauliSum(self.n_qubits, out)

    def dagger(self) -> "PauliSum":
        # each canonical string is Hermitian
        return PauliSum(self.n_qubits, {k: c.conjugate() for k, c in self.terms.items()})

    def prune(self, tol: float = PRUNE_TOL) -> "PauliSum":
        return PauliSum(self.n_qubits, {k: c for k, c in self.terms.items() if abs(c) >= tol})

    # -- queries ---------------------------------------------------------

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self.terms.values())

    def is_anti_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.real) <= tol for c in self.terms.values())

    def norm1(self) -> float:
        return float(sum(abs(c) for c in self.terms.values()))

    def constant(self) -> complex:
        return self.terms.get((0, 0), 0.0)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        bits = [f"({c:.6g}) {self.label(k)}" for k, c in sorted(self.terms.items())]
        return " + ".join(bits) if bits else "PauliSum<0>"

    # -- numerics --------------------------------------------------------

    def compiled(self):
        """Cached (x, z, ny, coeff) arrays for vectorized state application."""
        if self._compiled is None or len(self._compiled[0]) != len(self.terms):
            xs = np.empty(len(self.terms), dtype=np.uint64)
            zs = np.empty(len(self.terms), dtype=np.uint64)
            cs = np.empty(len(self.terms), dtype=np.complex128)
            for j, ((x, z), c) in enumerate(self.terms.items()):
                ny = (x & z).bit_count()
                xs[j] = x
                zs[j] = z
                cs[j] = c * _I4[ny % 4]
            self._compiled = (xs, zs, cs)
        return self._compiled

    def dot(self, amplitudes: np.ndarray) -> np.ndarray:
        """Exact action on a dense amplitude vector of length 2**n_qubits."""
        dim = 1 << self.n_qubits
        if amplitudes.shape != (dim,):
            raise ValueError("dimension mismatch")
        idx = np.arange(dim, dtype=np.uint64)
        out = np.zeros(dim, dtype=np.complex128)
        xs, zs, cs = self.compiled()
        for x, z, c in zip(xs, zs, cs):
            signs = 1.0 - 2.0 * (np.bitwise_count(idx & z) & np.uint64(1)).astype(np.float64)
            out[idx ^ x] += (c * signs) * amplitudes
        return out

    def to_matrix(self) -> np.ndarray:
        """Dense matrix (small qubit counts; used by tests and oracles)."""
        if self.n_qubits > 14:
            raise ValueError("dense matrix limited to 14 qubits")
        dim = 1 << self.n_qubits
        idx = np.arange(dim, dtype=np.uint64)
        mat = np.zeros((dim, dim), dtype=np.complex128)
        xs, zs, cs = self.compiled()
        for x, z, c in zip(xs, zs, cs):
            signs = 1.0 - 2.0 * (np.bitwise_count(idx & z) & np.uint64(1)).astype(np.float64)
            mat[(idx ^ x).astype(np.int64), idx.astype(np.int64)] += c * signs
        return mat


def _ladder_image(mode: int, dagger: bool, n_qubits: int) -> PauliSum:
    zchain = (1 << mode) - 1
    x = 1 << mode
    y_coeff = -0.5j if dagger else 0.5j
    return PauliSum(n_qubits, {(x, zchain): 0.5, (x, zchain | x): y_coeff})


def jordan_wigner(op: FermionOperator, n_qubits: int) -> PauliSum:
    """Jordan-Wigner image of a fermionic operator.

    Linear and product-preserving; Hermitian input maps to Hermitian output.
    Raises ValueError if a mode index does not fit on ``n_qubits`` qubits.
    """
    if op.max_mode() >= n_qubits:
        raise ValueError(
            f"mode index {op.max_mode()} out of range for {n_qubits} qubits"
        )
    total = PauliSum(n_qubits)
    for factors, coeff in op.terms.items():
        term = PauliSum.identity(n_qubits, coeff)
        for mode, dagger in factors:
            term = term @ _ladder_image(mode, dagger, n_qubits)
        total = total + term
    return total.prune()
