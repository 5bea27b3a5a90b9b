"""Integral container, PFCIDUMP file format, and Hamiltonian assembly.

Two-electron integrals follow the convention

    h2[p, q, r, s] = <p(1) q(2) | 1/r12 | r(2) s(1)>

i.e. electron 1 carries the (p, s) pair and electron 2 the (q, r) pair, so

    H = sum_pq h1[p,q] a+_p a_q
      + 1/2 sum_pqrs h2[p,q,r,s] a+_p a+_q a_r a_s  + ecore

after spin expansion with restricted (spin-independent) spatial integrals.

PFCIDUMP text format
--------------------
    &PFCI NORB=<n> NELEC=<n> MS2=<n> NKPT=<n> ECORE=<real>
    KPT <idx> <fx> <fy> <fz>          (one line per k-point, idx 1-based)
    ORBK <k_1> ... <k_NORB>           (1-based k index per spatial orbital)
    <re> <im> <p> <q> <r> <s>         (integral records, 1-based indices)

``r = s = 0`` denotes the one-electron integral h1[p,q]; all-zero indices an
additive core-energy contribution.  ``#`` starts a comment; fields are
whitespace separated; reals are written with 15 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fermion import FermionOperator

KCAL_PER_HARTREE = 627.5094740631

HERMITICITY_TOL = 1e-8
MOMENTUM_TOL = 1e-8
SERIALIZE_TOL = 1e-12


def hartree_to_kcalmol(x):
    """Convert an energy (difference) from Hartree to kcal/mol."""
    return x * KCAL_PER_HARTREE


@dataclass(frozen=True)
class KMesh:
    """Sampled crystal-momentum points as fractional 3-vectors in [0, 1)."""

    points: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        pts = tuple(tuple(float(c) % 1.0 for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate k-points")

    @property
    def nkpt(self) -> int:
        return len(self.points)

    @classmethod
    def gamma(cls) -> "KMesh":
        return cls(((0.0, 0.0, 0.0),))

    def negation_closed(self, tol: float = MOMENTUM_TOL) -> bool:
        pts = np.array(self.points)
        for p in pts:
            neg = (-p) % 1.0
            d = np.abs(pts - neg) % 1.0
            d = np.minimum(d, 1.0 - d)
            if not np.any(np.all(d < tol, axis=1)):
                return False
        return True


@dataclass(frozen=True)
class ReferenceDeterminant:
    """Occupied spin-orbital modes of the reference state."""

    occupied: tuple[int, ...]
    total_momentum: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def nelec(self) -> int:
        return len(self.occupied)

    @property
    def ms2(self) -> int:
        na = sum(1 for m in self.occupied if m % 2 == 0)
        return 2 * na - self.nelec

    @property
    def occupied_spatial(self) -> tuple[int, ...]:
        return tuple(sorted({m // 2 for m in self.occupied}))


class IntegralError(ValueError):
    pass


@dataclass
class IntegralSet:
    """One- and two-electron integrals with k-mesh metadata (Hartree units)."""

    norb: int
    nelec: int
    ms2: int
    kmesh: KMesh
    orb_k: tuple[int, ...]
    h1: np.ndarray
    h2: np.ndarray
    ecore: float = 0.0
    basis_label: str = ""
    imag_residue: float = 0.0  # max |Im| truncated by a realifying rotation

    def __post_init__(self):
        self.h1 = np.asarray(self.h1, dtype=np.complex128)
        self.h2 = np.asarray(self.h2, dtype=np.complex128)
        self.orb_k = tuple(int(k) for k in self.orb_k)

    def validate(self, tol: float = 1e-10):
        if self.h1.shape != (self.norb, self.norb):
            raise IntegralError("h1 shape mismatch")
        if self.h2.shape != (self.norb,) * 4:
            raise IntegralError("h2 shape mismatch")
        if len(self.orb_k) != self.norb:
            raise IntegralError("orb_k length mismatch")
        if any(k < 0 or k >= self.kmesh.nkpt for k in self.orb_k):
            raise IntegralError("orb_k index out of range")
        if np.max(np.abs(self.h1 - self.h1.conj().T)) > tol:
            raise IntegralError("h1 not Hermitian")
        # h2[p,q,r,s] = conj(h2[s,r,q,p])
        if np.max(np.abs(self.h2 - self.h2.conj().transpose(3, 2, 1, 0))) > tol:
            raise IntegralError("h2 Hermiticity violated")
        self._check_momentum_zeros()
        return self

    def _check_momentum_zeros(self):
        kfrac = np.array([self.kmesh.points[k] for k in self.orb_k])
        # one-body: k_p == k_q
        for p in range(self.norb):
            for q in range(self.norb):
                if not _congruent(kfrac[p] - kfrac[q]) and self.h1[p, q] != 0:
                    raise IntegralError(f"h1[{p},{q}] violates momentum conservation")
        pq = kfrac[:, None, :] + kfrac[None, :, :]
        nz = np.argwhere(np.abs(self.h2) > 0)
        for p, q, r, s in nz:
            if not _congruent(pq[p, q] - pq[r, s]):
                raise IntegralError(f"h2[{p},{q},{r},{s}] violates momentum conservation")

    def momentum_snap(self, tol: float = 1e-10) -> "IntegralSet":
        """Zero out entries whose index momenta cannot be conserved.

        Entries violating conservation by more than ``tol`` in magnitude raise.
        """
        kfrac = np.array([self.kmesh.points[k] for k in self.orb_k])
        ok1 = np.zeros((self.norb, self.norb), dtype=bool)
        for p in range(self.norb):
            for q in range(self.norb):
                ok1[p, q] = _congruent(kfrac[p] - kfrac[q])
        bad = np.abs(self.h1[~ok1])
        if bad.size and bad.max() > tol:
            raise IntegralError(f"h1 momentum violation of {bad.max():.3e}")
        self.h1 = np.where(ok1, self.h1, 0.0)
        pq = kfrac[:, None, :] + kfrac[None, :, :]
        ok2 = np.zeros((self.norb,) * 4, dtype=bool)
        for p in range(self.norb):
            for q in range(self.norb):
                for r in range(self.norb):
                    for s in range(self.norb):
                        ok2[p, q, r, s] = _congruent(pq[p, q] - pq[r, s])
        bad = np.abs(self.h2[~ok2])
        if bad.size and bad.max() > tol:
            raise IntegralError(f"h2 momentum violation of {bad.max():.3e}")
        self.h2 = np.where(ok2, self.h2, 0.0)
        return self

    @property
    def n_qubits(self) -> int:
        return 2 * self.norb

    def hf_reference(self) -> ReferenceDeterminant:
        """Closed/open-shell determinant filling the leading spatial orbitals.

        Orbital columns are assumed energy-ordered (canonical bases built in
        this package are).
        """
        na = (self.nelec + self.ms2) // 2
        nb = self.nelec - na
        occ = [2 * p for p in range(na)] + [2 * p + 1 for p in range(nb)]
        kfrac = np.array([self.kmesh.points[k] for k in self.orb_k])
        total = np.zeros(3)
        for m in occ:
            total += kfrac[m // 2]
        return ReferenceDeterminant(tuple(sorted(occ)), tuple(total % 1.0))


def _congruent(delta, tol: float = MOMENTUM_TOL) -> bool:
    d = np.asarray(delta, dtype=float) % 1.0
    d = np.minimum(d, 1.0 - d)
    return bool(np.all(d < tol))


# ---------------------------------------------------------------------------
# Hamiltonian assembly


def build_hamiltonian(integrals: IntegralSet) -> FermionOperator:
    """Second-quantized Hamiltonian with restricted spin expansion."""
    terms: dict = {}
    h1, h2 = integrals.h1, integrals.h2
    for p, q in zip(*np.nonzero(np.abs(h1) > 0)):
        c = complex(h1[p, q])
        for s in (0, 1):
            terms[((2 * int(p) + s, True), (2 * int(q) + s, False))] = c
    half = 0.5
    for p, q, r, s in zip(*np.nonzero(np.abs(h2) > 0)):
        c = half * complex(h2[p, q, r, s])
        for s1 in (0, 1):
            for s2 in (0, 1):
                fac = (
                    (2 * int(p) + s1, True),
                    (2 * int(q) + s2, True),
                    (2 * int(r) + s2, False),
                    (2 * int(s) + s1, False),
                )
                terms[fac] = terms.get(fac, 0.0) + c
    if integrals.ecore:
        terms[()] = terms.get((), 0.0) + complex(integrals.ecore)
    return FermionOperator(terms).prune()


def reference_energy(integrals: IntegralSet, ref: ReferenceDeterminant) -> float:
    """Mean-field (determinant) energy directly from the integrals.

    Independent of the statevector engine; used as an expectation oracle.
    """
    occ_a = [m // 2 for m in ref.occupied if m % 2 == 0]
    occ_b = [m // 2 for m in ref.occupied if m % 2 == 1]
    e = complex(integrals.ecore)
    for i in occ_a + occ_b:
        e += integrals.h1[i, i]
    for occ1, occ2 in ((occ_a, occ_a), (occ_a, occ_b), (occ_b, occ_a), (occ_b, occ_b)):
        same_spin = occ1 is occ2
        for i in occ1:
            for j in occ2:
                e += 0.5 * integrals.h2[i, j, j, i]  # Coulomb
                if same_spin:
                    e -= 0.5 * integrals.h2[i, j, i, j]  # exchange
    return float(e.real)


# ---------------------------------------------------------------------------
# PFCIDUMP I/O


class PfcidumpError(ValueError):
    pass


def write_pfcidump(integrals: IntegralSet, path):
    lines = [
        "&PFCI NORB=%d NELEC=%d MS2=%d NKPT=%d ECORE=%.15g"
        % (integrals.norb, integrals.nelec, integrals.ms2, integrals.kmesh.nkpt, integrals.ecore)
    ]
    for i, pt in enumerate(integrals.kmesh.points):
        lines.append("KPT %d %.15g %.15g %.15g" % (i + 1, pt[0], pt[1], pt[2]))
    lines.append("ORBK " + " ".join(str(k + 1) for k in integrals.orb_k))
    fmt = "%.15e %.15e %d %d %d %d"
    for p in range(integrals.norb):
        for q in range(integrals.norb):
            v = integrals.h1[p, q]
            if abs(v) >= SERIALIZE_TOL:
                lines.append(fmt % (v.real, v.imag, p + 1, q + 1, 0, 0))
    nz = np.argwhere(np.abs(integrals.h2) >= SERIALIZE_TOL)
    for p, q, r, s in nz:
        v = integrals.h2[p, q, r, s]
        lines.append(fmt % (v.real, v.imag, p + 1, q + 1, r + 1, s + 1))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_pfcidump(path) -> IntegralSet:
    header = None
    kpts: dict[int, tuple] = {}
    orb_k = None
    records = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            try:
                if toks[0] == "&PFCI":
                    header = {}
                    for tok in toks[1:]:
                        key, val = tok.split("=")
                        header[key] = val
                elif toks[0] == "KPT":
                    kpts[int(toks[1])] = (float(toks[2]), float(toks[3]), float(toks[4]))
                elif toks[0] == "ORBK":
                    orb_k = [int(t) - 1 for t in toks[1:]]
                else:
                    re_, im_ = float(toks[0]), float(toks[1])
                    p, q, r, s = (int(t) for t in toks[2:6])
                    records.append((re_, im_, p, q, r, s))
            except (ValueError, IndexError) as exc:
                raise PfcidumpError(f"{path}: parse error at line {lineno}: {exc}") from exc
    if header is None:
        raise PfcidumpError(f"{path}: missing &PFCI header")
    try:
        norb = int(header["NORB"])
        nelec = int(header["NELEC"])
        ms2 = int(header["MS2"])
        nkpt = int(header["NKPT"])
        ecore = float(header.get("ECORE", "0"))
    except (KeyError, ValueError) as exc:
        raise PfcidumpError(f"{path}: bad header: {exc}") from exc
    if sorted(kpts) != list(range(1, nkpt + 1)):
        raise PfcidumpError(f"{path}: expected k-points 1..{nkpt}, got {sorted(kpts)}")
    if orb_k is None or len(orb_k) != norb:
        raise PfcidumpError(f"{path}: ORBK line missing or wrong length")
    h1 = np.zeros((norb, norb), dtype=np.complex128)
    h2 = np.zeros((norb,) * 4, dtype=np.complex128)
    for re_, im_, p, q, r, s in records:
        v = complex(re_, im_)
        if p == q == r == s == 0:
            ecore += re_
        elif r == 0 and s == 0:
            h1[p - 1, q - 1] = v
        elif 0 in (p, q, r, s):
            raise PfcidumpError(f"{path}: bad index record {(p, q, r, s)}")
        else:
            h2[p - 1, q - 1, r - 1, s - 1] = v
    kmesh = KMesh(tuple(kpts[i] for i in range(1, nkpt + 1)))
    out = IntegralSet(norb, nelec, ms2, kmesh, tuple(orb_k), h1, h2, ecore)
    if np.max(np.abs(out.h1 - out.h1.conj().T)) > HERMITICITY_TOL:
        raise PfcidumpError(f"{path}: h1 Hermiticity violated beyond {HERMITICITY_TOL}")
    if np.max(np.abs(out.h2 - out.h2.conj().transpose(3, 2, 1, 0))) > HERMITICITY_TOL:
        raise PfcidumpError(f"{path}: h2 Hermiticity violated beyond {HERMITICITY_TOL}")
    try:
        out.validate(tol=HERMITICITY_TOL)
    except IntegralError as exc:
        raise PfcidumpError(f"{path}: {exc}") from exc
    return out
