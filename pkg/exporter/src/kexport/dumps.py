"""Serialization of engine output.

Two text formats are produced, both line-oriented with ``#`` comments:

PFCIDUMP (k-point MO integrals)::

    &PFCI NORB=.. NELEC=.. MS2=.. NKPT=.. ECORE=..
    KPT <index> <fx> <fy> <fz>          # fractional k-point, 1-based index
    ORBK <k_1> ... <k_norb>             # k label of every orbital, 1-based
    <re> <im> p q r s                   # h2[p,q,r,s]; r=s=0 means h1[p,q]

with the two-electron convention h2[p,q,r,s] = (ps|qr): electron one carries
(p, s), electron two carries (q, r).

Supercell dump (orbital coefficients over the replicated cell)::

    &PSUP NBASIS=.. NORB=.. NOCC=.. NKPT=..
    KPT / ORBK as above
    EIG <j> <energy>
    CMO <i> <j> <re> <im>
    SOV <i> <j> <value>                 # AO overlap, real
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

WRITE_TOL = 1e-12


@dataclass
class ExportData:
    """Everything a mean-field engine hands to the writers."""

    norb: int
    nelec: int
    ms2: int
    kpoints: list  # fractional (fx, fy, fz) per k-point
    orb_k: list  # k-point index of each MO
    h1: np.ndarray
    h2: np.ndarray
    ecore: float
    e_hf: float  # engine's own mean-field total, for cross checks
    nbasis: int
    cmo: np.ndarray  # (nbasis, norb) supercell MO coefficients
    mo_energies: np.ndarray
    overlap: np.ndarray  # (nbasis, nbasis) real AO overlap
    n_occ: int
    provenance: str = ""


def write_pfcidump(data: ExportData, path):
    lines = []
    if data.provenance:
        lines.append("# " + data.provenance)
    lines.append(
        "&PFCI NORB=%d NELEC=%d MS2=%d NKPT=%d ECORE=%.15g"
        % (data.norb, data.nelec, data.ms2, len(data.kpoints), data.ecore)
    )
    for i, pt in enumerate(data.kpoints):
        lines.append("KPT %d %.15g %.15g %.15g" % (i + 1, pt[0], pt[1], pt[2]))
    lines.append("ORBK " + " ".join(str(k + 1) for k in data.orb_k))
    fmt = "%.15e %.15e %d %d %d %d"
    for p in range(data.norb):
        for q in range(data.norb):
            v = data.h1[p, q]
            if abs(v) >= WRITE_TOL:
                lines.append(fmt % (v.real, v.imag, p + 1, q + 1, 0, 0))
    for p, q, r, s in np.argwhere(np.abs(data.h2) >= WRITE_TOL):
        v = data.h2[p, q, r, s]
        lines.append(fmt % (v.real, v.imag, p + 1, q + 1, r + 1, s + 1))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_supercell_dump(data: ExportData, path):
    lines = []
    if data.provenance:
        lines.append("# " + data.provenance)
    lines.append(
        "&PSUP NBASIS=%d NORB=%d NOCC=%d NKPT=%d"
        % (data.nbasis, data.norb, data.n_occ, len(data.kpoints))
    )
    for i, pt in enumerate(data.kpoints):
        lines.append("KPT %d %.15g %.15g %.15g" % (i + 1, pt[0], pt[1], pt[2]))
    lines.append("ORBK " + " ".join(str(k + 1) for k in data.orb_k))
    for j in range(data.norb):
        lines.append("EIG %d %.15e" % (j + 1, data.mo_energies[j]))
    for i in range(data.nbasis):
        for j in range(data.norb):
            c = data.cmo[i, j]
            if abs(c) >= 1e-14:
                lines.append("CMO %d %d %.15e %.15e" % (i + 1, j + 1, c.real, c.imag))
    for i in range(data.nbasis):
        for j in range(data.nbasis):
            if abs(data.overlap[i, j]) >= 1e-14:
                lines.append("SOV %d %d %.15e" % (i + 1, j + 1, data.overlap[i, j]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_supercell_dump(path):
    """Minimal reader for round-trip checks: returns (cmo, overlap, orb_k, kpoints)."""
    header = None
    kpts = {}
    orb_k = None
    cmo_rec, sov_rec = [], []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if toks[0] == "&PSUP":
                header = dict(t.split("=") for t in toks[1:])
            elif toks[0] == "KPT":
                kpts[int(toks[1])] = tuple(float(t) for t in toks[2:5])
            elif toks[0] == "ORBK":
                orb_k = [int(t) - 1 for t in toks[1:]]
            elif toks[0] == "CMO":
                cmo_rec.append((int(toks[1]) - 1, int(toks[2]) - 1, float(toks[3]), float(toks[4])))
            elif toks[0] == "SOV":
                sov_rec.append((int(toks[1]) - 1, int(toks[2]) - 1, float(toks[3])))
    nb, norb = int(header["NBASIS"]), int(header["NORB"])
    cmo = np.zeros((nb, norb), dtype=np.complex128)
    for i, j, re, im in cmo_rec:
        cmo[i, j] = re + 1j * im
    s = np.zeros((nb, nb))
    for i, j, v in sov_rec:
        s[i, j] = v
    kpoints = [kpts[i + 1] for i in range(len(kpts))]
    return cmo, s, orb_k, kpoints
