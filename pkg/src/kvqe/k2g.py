"""K2G: rotate a complex k-point orbital basis into real Gamma-labelled MOs.

For a negation-closed k-mesh the span of the occupied (and of the virtual)
Bloch orbitals is closed under complex conjugation, so each block admits a
real orthonormal basis.  The recipe, applied independently to the occupied
and virtual blocks (no cross-gap mixing by construction):

  1. collect the real span  M = [Re C | Im C]  in the AO basis,
  2. S-orthonormalize it (eigendecomposition of M^T S M, rank must equal
     the block size),
  3. rebuild the Fock matrix F = S C diag(e) C^+ S and re-diagonalize its
     projection onto the real span -> canonical real orbitals with sharp
     orbital energies,
  4. fix each column's sign so its largest-magnitude coefficient is positive.

The unitary connecting the bases is U = C_old^+ S C_real; rotating the
integrals through U must leave at most a numerically-zero imaginary part,
which is truncated and reported.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .integrals import IntegralSet, KMesh

SPAN_TOL = 1e-10
IMAG_TOL = 1e-8
DEGENERACY_GAP = 1e-9


class RealificationError(ValueError):
    pass


@dataclass
class OrbitalSet:
    """Molecular/crystalline orbitals over a (possibly nonorthogonal) AO basis."""

    coefficients: np.ndarray  # (nbasis, norb), columns = orbitals
    energies: np.ndarray
    orb_k: tuple[int, ...]
    kpoints: tuple[tuple[float, float, float], ...]
    n_occ: int
    overlap: np.ndarray | None = None  # None -> orthonormal AO basis

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=np.complex128)
        self.energies = np.asarray(self.energies, dtype=float)
        self.orb_k = tuple(int(k) for k in self.orb_k)

    @property
    def norb(self) -> int:
        return self.coefficients.shape[1]

    @property
    def s(self) -> np.ndarray:
        if self.overlap is None:
            return np.eye(self.coefficients.shape[0])
        return np.asarray(self.overlap, dtype=float)

    def validate(self, tol=1e-8):
        g = self.coefficients.conj().T @ self.s @ self.coefficients
        if np.max(np.abs(g - np.eye(self.norb))) > tol:
            raise RealificationError("orbitals are not S-orthonormal")
        kmesh = KMesh(self.kpoints)
        if not kmesh.negation_closed():
            raise RealificationError("k-mesh is not closed under negation")
        return self


@dataclass
class RealificationResult:
    coefficients: np.ndarray  # real Gamma orbitals in the AO basis
    energies: np.ndarray
    rotation: np.ndarray  # U = C_old^+ S C_real, block-diagonal occ/virt
    n_occ: int
    max_imag_residue: float = 0.0  # filled in by the integral rotation
    diagnostics: list = field(default_factory=list)


def _realify_block(C, S, F):
    """Real canonical orbitals spanning the same space as the columns of C."""
    m = C.shape[1]
    M = np.hstack([C.real, C.imag])
    G = M.T @ S @ M
    w, v = np.linalg.eigh(G)
    keep = w > SPAN_TOL
    if int(keep.sum()) != m:
        raise RealificationError(
            f"real span has rank {int(keep.sum())}, expected {m}: "
            "block is not closed under conjugation"
        )
    Q = M @ (v[:, keep] / np.sqrt(w[keep]))
    Fq = Q.T @ F @ Q
    if np.max(np.abs(Fq.imag)) > IMAG_TOL:
        raise RealificationError(
            f"projected Fock has imaginary part {np.max(np.abs(Fq.imag)):.3e}"
        )
    e, V = np.linalg.eigh(Fq.real)
    Creal = Q @ V
    for j in range(m):
        i = int(np.argmax(np.abs(Creal[:, j])))
        if Creal[i, j] < 0:
            Creal[:, j] = -Creal[:, j]
    return Creal, e


def realify(orbitals: OrbitalSet) -> RealificationResult:
    orbitals.validate()
    S = orbitals.s
    C = orbitals.coefficients
    nocc, norb = orbitals.n_occ, orbitals.norb
    # supercell Fock rebuilt from the canonical orbitals
    F = S @ (C * orbitals.energies) @ C.conj().T @ S
    diagnostics = []
    occ_r, occ_e = _realify_block(C[:, :nocc], S, F)
    vir_r, vir_e = _realify_block(C[:, nocc:], S, F)
    if len(occ_e) and len(vir_e) and vir_e.min() - occ_e.max() < DEGENERACY_GAP:
        diagnostics.append(
            "occupied/virtual Fock energies nearly degenerate across the gap "
            f"(gap {vir_e.min() - occ_e.max():.3e}); blocks kept separate"
        )
    Creal = np.hstack([occ_r, vir_r])
    energies = np.concatenate([occ_e, vir_e])
    U = C.conj().T @ S @ Creal
    if np.max(np.abs(U.conj().T @ U - np.eye(norb))) > 1e-8:
        raise RealificationError("rotation is not unitary")
    # rounded-off eigenvalues should match the input ones as multisets
    if np.max(np.abs(np.sort(energies) - np.sort(orbitals.energies))) > 1e-6:
        diagnostics.append("orbital energies shifted by the realification")
    for msg in diagnostics:
        warnings.warn(msg, stacklevel=2)
    return RealificationResult(Creal, energies, U, nocc, diagnostics=diagnostics)


def rotate_integrals(integrals: IntegralSet, rotation: np.ndarray, label="k2g") -> IntegralSet:
    """Change of orbital basis h -> U-rotated h; truncates numerically-zero
    imaginary parts and records the largest one in ``imag_residue``."""
    U = np.asarray(rotation, dtype=np.complex128)
    norb = integrals.norb
    if U.shape != (norb, norb):
        raise ValueError("rotation shape mismatch")
    if np.max(np.abs(U.conj().T @ U - np.eye(norb))) > 1e-8:
        raise ValueError("rotation is not unitary")
    h1 = U.conj().T @ integrals.h1 @ U
    h2 = np.einsum(
        "PQRS,Pp,Qq,Rr,Ss->pqrs",
        integrals.h2, U.conj(), U.conj(), U, U, optimize=True,
    )
    residue = float(max(np.max(np.abs(h1.imag)), np.max(np.abs(h2.imag))))
    if residue <= 1e-10:
        h1 = h1.real.astype(np.complex128)
        h2 = h2.real.astype(np.complex128)
    out = IntegralSet(
        norb=norb,
        nelec=integrals.nelec,
        ms2=integrals.ms2,
        kmesh=KMesh.gamma(),
        orb_k=(0,) * norb,
        h1=h1,
        h2=h2,
        ecore=integrals.ecore,
        basis_label=(integrals.basis_label + "/" + label).lstrip("/"),
        imag_residue=residue,
    )
    return out.validate()


def k2g_transform(integrals: IntegralSet, orbitals: OrbitalSet):
    """Full pipeline: realify the orbitals, rotate the integrals onto them.

    Returns (gamma_integrals, RealificationResult).
    """
    result = realify(orbitals)
    rotated = rotate_integrals(integrals, result.rotation)
    result.max_imag_residue = rotated.imag_residue
    return rotated, result


# ---------------------------------------------------------------------------
# Supercell dump: the file interface feeding this module from outside.
#
#   &PSUP NBASIS=<nb> NORB=<n> NOCC=<n> NKPT=<nk>
#   KPT <idx> <fx> <fy> <fz>
#   ORBK <k_1> ... <k_NORB>
#   CMO <row> <col> <re> <im>     (AO x MO coefficient, 1-based)
#   EIG <col> <e>
#   SOV <row> <col> <re>          (AO overlap; omitted -> identity)


class SupercellDumpError(ValueError):
    pass


def write_supercell_dump(orbitals: OrbitalSet, path):
    nb, norb = orbitals.coefficients.shape
    lines = [
        "&PSUP NBASIS=%d NORB=%d NOCC=%d NKPT=%d"
        % (nb, norb, orbitals.n_occ, len(orbitals.kpoints))
    ]
    for i, pt in enumerate(orbitals.kpoints):
        lines.append("KPT %d %.15g %.15g %.15g" % (i + 1, pt[0], pt[1], pt[2]))
    lines.append("ORBK " + " ".join(str(k + 1) for k in orbitals.orb_k))
    for j in range(norb):
        lines.append("EIG %d %.15e" % (j + 1, orbitals.energies[j]))
    for i in range(nb):
        for j in range(norb):
            c = orbitals.coefficients[i, j]
            if abs(c) >= 1e-14:
                lines.append("CMO %d %d %.15e %.15e" % (i + 1, j + 1, c.real, c.imag))
    if orbitals.overlap is not None:
        s = orbitals.s
        for i in range(nb):
            for j in range(nb):
                if abs(s[i, j]) >= 1e-14:
                    lines.append("SOV %d %d %.15e" % (i + 1, j + 1, s[i, j]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_supercell_dump(path) -> OrbitalSet:
    header = None
    kpts = {}
    orb_k = None
    cmo, eig, sov = [], [], []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            try:
                if toks[0] == "&PSUP":
                    header = dict(t.split("=") for t in toks[1:])
                elif toks[0] == "KPT":
                    kpts[int(toks[1])] = (float(toks[2]), float(toks[3]), float(toks[4]))
                elif toks[0] == "ORBK":
                    orb_k = [int(t) - 1 for t in toks[1:]]
                elif toks[0] == "CMO":
                    cmo.append((int(toks[1]), int(toks[2]), float(toks[3]), float(toks[4])))
                elif toks[0] == "EIG":
                    eig.append((int(toks[1]), float(toks[2])))
                elif toks[0] == "SOV":
                    sov.append((int(toks[1]), int(toks[2]), float(toks[3])))
                else:
                    raise ValueError(f"unknown record {toks[0]!r}")
            except (ValueError, IndexError) as exc:
                raise SupercellDumpError(f"{path}: parse error at line {lineno}: {exc}") from exc
    if header is None:
        raise SupercellDumpError(f"{path}: missing &PSUP header")
    try:
        nb, norb = int(header["NBASIS"]), int(header["NORB"])
        nocc, nkpt = int(header["NOCC"]), int(header["NKPT"])
    except (KeyError, ValueError) as exc:
        raise SupercellDumpError(f"{path}: bad header: {exc}") from exc
    if sorted(kpts) != list(range(1, nkpt + 1)):
        raise SupercellDumpError(f"{path}: expected k-points 1..{nkpt}")
    if orb_k is None or len(orb_k) != norb:
        raise SupercellDumpError(f"{path}: ORBK line missing or wrong length")
    C = np.zeros((nb, norb), dtype=np.complex128)
    for i, j, re_, im_ in cmo:
        C[i - 1, j - 1] = complex(re_, im_)
    E = np.zeros(norb)
    for j, e in eig:
        E[j - 1] = e
    S = None
    if sov:
        S = np.zeros((nb, nb))
        for i, j, v in sov:
            S[i - 1, j - 1] = v
    out = OrbitalSet(
        coefficients=C,
        energies=E,
        orb_k=tuple(orb_k),
        kpoints=tuple(kpts[i] for i in range(1, nkpt + 1)),
        n_occ=nocc,
        overlap=S,
    )
    try:
        out.validate()
    except RealificationError as exc:
        raise SupercellDumpError(f"{path}: {exc}") from exc
    return out
