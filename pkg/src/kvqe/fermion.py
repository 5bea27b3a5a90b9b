"""Second-quantized fermionic operator algebra.

Operators are complex-weighted sums of products of creation/annihilation
operators on spin-orbital modes.  Mode numbering is interleaved-spin:
mode 2*p is the alpha spin orbital of spatial orbital p, mode 2*p+1 the
beta one, and mode index == qubit index under the Jordan-Wigner mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

PRUNE_TOL = 1e-14


class Spin(Enum):
    ALPHA = 0
    BETA = 1


@dataclass(frozen=True)
class SpinOrbital:
    """A spin orbital tagged with its spatial index, spin, k-point and occupancy."""

    spatial_index: int
    spin: Spin
    k_index: int = 0
    occupied: bool = False

    @property
    def mode(self) -> int:
        """Fermionic mode / qubit index (interleaved spin)."""
        return 2 * self.spatial_index + self.spin.value


# A term is an ordered product of (mode, dagger) factors.
Factors = tuple[tuple[int, bool], ...]


class FermionOperator:
    """Sum of products of fermionic ladder operators with complex weights.

    Terms are stored as {factors: coefficient}; ``normal_ordered`` brings an
    operator to the canonical form (creations in descending mode order, then
    annihilations in descending mode order) with near-zero terms pruned.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Factors, complex] | None = None):
        self.terms: dict[Factors, complex] = dict(terms) if terms else {}

    @classmethod
    def from_term(cls, factors, coefficient=1.0) -> "FermionOperator":
        fac = tuple((int(m), bool(d)) for m, d in factors)
        return cls({fac: complex(coefficient)})

    @classmethod
    def identity(cls, coefficient=1.0) -> "FermionOperator":
        return cls({(): complex(coefficient)})

    @classmethod
    def zero(cls) -> "FermionOperator":
        return cls()

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        out = dict(self.terms)
        for fac, c in other.terms.items():
            out[fac] = out.get(fac, 0.0) + c
        return FermionOperator(out)

    def __sub__(self, other: "FermionOperator") -> "FermionOperator":
        return self + (other * -1.0)

    def __mul__(self, scalar) -> "FermionOperator":
        s = complex(scalar)
        return FermionOperator({f: c * s for f, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "FermionOperator") -> "FermionOperator":
        out: dict[Factors, complex] = {}
        for f1, c1 in self.terms.items():
            for f2, c2 in other.terms.items():
                fac = f1 + f2
                out[fac] = out.get(fac, 0.0) + c1 * c2
        return FermionOperator(out)

    def dagger(self) -> "FermionOperator":
        out: dict[Factors, complex] = {}
        for fac, c in self.terms.items():
            rev = tuple((m, not d) for m, d in reversed(fac))
            out[rev] = out.get(rev, 0.0) + c.conjugate()
        return FermionOperator(out)

    def prune(self, tol: float = PRUNE_TOL) -> "FermionOperator":
        return FermionOperator({f: c for f, c in self.terms.items() if abs(c) >= tol})

    # -- canonical form --------------------------------------------------

    def normal_ordered(self) -> "FermionOperator":
        """Canonical normal-ordered form via Wick reordering.

        Anticommutation {a_p, a_q^+} = delta_pq generates contraction terms;
        equal-mode repeated creations/annihilations vanish.
        """
        out: dict[Factors, complex] = {}
        stack = [(fac, c) for fac, c in self.terms.items()]
        while stack:
            fac, coeff = stack.pop()
            if abs(coeff) < PRUNE_TOL:
                continue
            i = _first_disorder(fac)
            if i is None:
                out[fac] = out.get(fac, 0.0) + coeff
                continue
            (m1, d1), (m2, d2) = fac[i], fac[i + 1]
            if m1 == m2 and d1 == d2:
                continue  # a a or a^+ a^+ on the same mode
            swapped = fac[:i] + ((m2, d2), (m1, d1)) + fac[i + 2 :]
            stack.append((swapped, -coeff))
            if m1 == m2 and not d1 and d2:
                # a_p a_p^+ = 1 - a_p^+ a_p
                stack.append((fac[:i] + fac[i + 2 :], coeff))
        return FermionOperator(out).prune()

    # -- queries ---------------------------------------------------------

    def is_zero(self, tol: float = PRUNE_TOL) -> bool:
        return all(abs(c) < tol for c in self.normal_ordered().terms.values())

    def max_mode(self) -> int:
        """Largest mode index appearing, or -1 for a pure constant."""
        return max((m for fac in self.terms for m, _ in fac), default=-1)

    def norm1(self) -> float:
        return sum(abs(c) for c in self.terms.values())

    def constant(self) -> complex:
        return self.terms.get((), 0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FermionOperator):
            return NotImplemented
        a = self.normal_ordered().terms
        b = other.normal_ordered().terms
        keys = set(a) | set(b)
        return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) < 1e-12 for k in keys)

    def __repr__(self) -> str:
        if not self.terms:
            return "FermionOperator<0>"
        bits = []
        for fac, c in sorted(self.terms.items()):
            ops = " ".join(f"{m}^" if d else f"{m}" for m, d in fac) or "1"
            bits.append(f"({c:.6g}) [{ops}]")
        return " + ".join(bits)


def _first_disorder(fac: Factors):
    """Index of the first adjacent pair violating canonical order, or None."""
    for i in range(len(fac) - 1):
        (m1, d1), (m2, d2) = fac[i], fac[i + 1]
        if (not d1 and d2) or (d1 == d2 and m1 < m2) or (d1 == d2 and m1 == m2):
            return i
    return None


def excitation(creations, annihilations, coefficient=1.0) -> FermionOperator:
    """Pure excitation a^+_{c1} a^+_{c2}.. a_{a1} a_{a2}.. with the given modes."""
    factors = [(m, True) for m in creations] + [(m, False) for m in annihilations]
    return FermionOperator.from_term(factors, coefficient)


def anti_hermitian(T: FermionOperator) -> FermionOperator:
    """tau = T - T^+ in canonical normal-ordered form."""
    return (T - T.dagger()).normal_ordered()


def number_operator(n_modes: int) -> FermionOperator:
    op = FermionOperator()
    for m in range(n_modes):
        op = op + excitation([m], [m])
    return op


def sz_operator(n_modes: int) -> FermionOperator:
    """Total S_z in units of hbar/2 (alpha modes +1, beta modes -1)."""
    op = FermionOperator()
    for m in range(n_modes):
        op = op + excitation([m], [m], 1.0 if m % 2 == 0 else -1.0)
    return op
