"""PySCF-backed engine: periodic closed-shell Hartree-Fock for the hydrogen
chain, exported as k-point MO integrals plus supercell orbital data.

The k-mesh is shifted to kz = (2j+1)/(2 nk) so it is closed under time
reversal without containing self-conjugate interior points; that is what the
downstream realification step needs.  Only 1xNxM transverse sampling of 1
point is exercised in practice (isolated chain).
"""

from __future__ import annotations

import numpy as np

from .chain import ChainSpec
from .dumps import ExportData


def _require_pyscf():
    try:
        from pyscf.pbc import gto, scf  # noqa: F401
    except ImportError as exc:
        raise RuntimeError(
            "pyscf is not installed; install the 'pyscf' extra or use --engine model"
        ) from exc
    from pyscf.pbc import gto, scf
    return gto, scf


def _build_cell(spec: ChainSpec):
    gto, _ = _require_pyscf()
    cell = gto.Cell()
    cell.atom = [["H", (0.0, 0.0, 0.0)], ["H", (0.0, 0.0, spec.r)]]
    cell.a = np.diag([spec.vacuum, spec.vacuum, spec.lattice])
    cell.unit = "angstrom"
    cell.basis = spec.basis
    cell.pseudo = spec.pp
    cell.verbose = 0
    cell.build()
    return cell


def _shifted_kpts(spec: ChainSpec):
    nk = spec.mesh[2]
    return [(0.0, 0.0, (2 * j + 1) / (2 * nk)) for j in range(nk)]


def solve(spec: ChainSpec) -> ExportData:
    gto, scf = _require_pyscf()
    if spec.mesh[0] != 1 or spec.mesh[1] != 1:
        raise ValueError("transverse sampling beyond 1 point is not supported")
    cell = _build_cell(spec)
    frac = _shifted_kpts(spec)
    kpts = cell.get_abs_kpts(np.array(frac))
    nk = len(kpts)

    mf = scf.KRHF(cell, kpts=kpts).density_fit()
    mf.kernel()
    if not mf.converged:
        raise RuntimeError("periodic SCF did not converge: e_tot=%r" % mf.e_tot)

    nao = cell.nao_nr()
    nmo = mf.mo_coeff[0].shape[1]
    # deterministic column phases: largest AO coefficient real positive
    mo_coeff = []
    for c in mf.mo_coeff:
        c = np.array(c, dtype=np.complex128)
        for j in range(c.shape[1]):
            mags = np.abs(c[:, j])
            i = int(np.argmax(mags >= mags.max() * (1.0 - 1e-6)))
            c[:, j] *= abs(c[i, j]) / c[i, j]
        mo_coeff.append(c)

    # global orbital order: by (energy, k)
    flat = [(mf.mo_energy[k][b], k, b) for k in range(nk) for b in range(nmo)]
    flat.sort()
    orb_k = [k for _, k, _ in flat]
    norb = len(flat)
    nelec = cell.nelectron * nk

    hcore = mf.get_hcore()
    h1 = np.zeros((norb, norb), dtype=np.complex128)
    for g, (_, k, b) in enumerate(flat):
        for g2, (_, k2, b2) in enumerate(flat):
            if k == k2:
                h1[g, g2] = mo_coeff[k][:, b].conj() @ hcore[k] @ mo_coeff[k2][:, b2]

    # two-electron integrals, h2[p,q,r,s] = (ps|qr) with momentum conservation
    fz = np.array([f[2] for f in frac])
    h2 = np.zeros((norb,) * 4, dtype=np.complex128)
    by_k = {}
    for g, (_, k, b) in enumerate(flat):
        by_k.setdefault(k, []).append((g, b))
    for kp in range(nk):
        for ks in range(nk):
            for kq in range(nk):
                tot = fz[kp] + fz[kq] - fz[ks]
                kr = int(np.argmin(np.abs((fz - tot + 0.5) % 1.0 - 0.5)))
                if abs((fz[kr] - tot + 0.5) % 1.0 - 0.5) > 1e-8:
                    continue
                coeffs = [
                    mo_coeff[kp], mo_coeff[ks], mo_coeff[kq], mo_coeff[kr]
                ]
                eri = mf.with_df.ao2mo(
                    coeffs, kpts=[kpts[kp], kpts[ks], kpts[kq], kpts[kr]], compact=False
                ).reshape(nmo, nmo, nmo, nmo) / nk
                for gp, bp in by_k[kp]:
                    for gs, bs in by_k[ks]:
                        for gq, bq in by_k[kq]:
                            for gr, br in by_k[kr]:
                                h2[gp, gq, gr, gs] = eri[bp, bs, bq, br]

    ecore = nk * cell.energy_nuc()
    e_hf = nk * mf.e_tot

    # supercell expansion: replica n gets the Bloch phase of its cell
    nbasis = nao * nk
    cmo = np.zeros((nbasis, norb), dtype=np.complex128)
    for g, (_, k, b) in enumerate(flat):
        for ncell in range(nk):
            ph = np.exp(2j * np.pi * fz[k] * ncell) / np.sqrt(nk)
            cmo[ncell * nao:(ncell + 1) * nao, g] = ph * mo_coeff[k][:, b]
    s_k = mf.get_ovlp()
    overlap = np.zeros((nbasis, nbasis))
    for ncell in range(nk):
        for mcell in range(nk):
            blk = sum(
                np.exp(2j * np.pi * fz[k] * (ncell - mcell)) * s_k[k] for k in range(nk)
            ) / nk
            if np.max(np.abs(blk.imag)) > 1e-8:
                raise RuntimeError("supercell overlap not real; mesh not TR-closed?")
            overlap[ncell * nao:(ncell + 1) * nao, mcell * nao:(mcell + 1) * nao] = blk.real

    return ExportData(
        norb=norb,
        nelec=nelec,
        ms2=0,
        kpoints=frac,
        orb_k=orb_k,
        h1=h1,
        h2=h2,
        ecore=ecore,
        e_hf=e_hf,
        nbasis=nbasis,
        cmo=cmo,
        mo_energies=np.array([e for e, _, _ in flat]),
        overlap=overlap,
        n_occ=nelec // 2,
        provenance="engine=pyscf r=%.6f mesh=%dx%dx%d basis=%s pp=%s"
        % (spec.r, *spec.mesh, spec.basis, spec.pp),
    )
