"""Built-in periodic lattice models used as test fixtures and CLI inputs.

The workhorse is an SSH-Hubbard chain: a two-site unit cell with alternating
hoppings t1 (intra-cell) and t2 (inter-cell) plus an on-site Hubbard U,
sampled on a 1D ring of ``ncell`` cells with antiperiodic boundary
conditions.  The antiperiodic choice shifts the k-mesh to
k_j = (2j+1)/(2*ncell), which keeps the mesh closed under negation while
making the Bloch phases genuinely complex already at ncell=2 — exactly the
regime where a complex orbital basis breaks real-arithmetic methods.

Two bases are provided for the same Hamiltonian:
  * ``site``: localized real orbitals (Gamma-only k labels),
  * ``band``: canonical complex Bloch bands, momentum-labelled.
They are related by a unitary, so all spectra must agree.
"""

from __future__ import annotations

import numpy as np

from .integrals import IntegralSet, KMesh


def _site_hopping(ncell, t1, t2):
    """Real supercell hopping matrix with the antiperiodic wrap."""
    n = 2 * ncell
    h = np.zeros((n, n))
    for c in range(ncell):
        a, b = 2 * c, 2 * c + 1
        h[a, b] += -t1
        h[b, a] += -t1
        nxt = (2 * c + 2) % n
        sign = -1.0 if c == ncell - 1 else 1.0  # antiperiodic wrap
        h[b, nxt] += -t2 * sign
        h[nxt, b] += -t2 * sign
    return h


def shifted_kmesh(ncell) -> KMesh:
    """Antiperiodic 1D mesh (0, 0, (2j+1)/(2*ncell))."""
    return KMesh(tuple((0.0, 0.0, (2 * j + 1) / (2 * ncell)) for j in range(ncell)))


def _band_orbitals(ncell, t1, t2):
    """Bloch-diagonalized bands: returns (C, energies, orb_k, kmesh).

    C is (2*ncell, 2*ncell) complex, columns sorted by (energy, k index),
    each column phase-fixed so its largest-magnitude entry is real positive.
    """
    n = 2 * ncell
    hsite = _site_hopping(ncell, t1, t2)
    kmesh = shifted_kmesh(ncell)
    cols, energies, orb_k = [], [], []
    for ki, (_, _, kz) in enumerate(kmesh.points):
        bloch = np.zeros((n, 2), dtype=np.complex128)
        for c in range(ncell):
            ph = np.exp(2j * np.pi * kz * c) / np.sqrt(ncell)
            bloch[2 * c, 0] = ph
            bloch[2 * c + 1, 1] = ph
        hk = bloch.conj().T @ hsite @ bloch
        w, u = np.linalg.eigh(hk)
        for band in range(2):
            col = bloch @ u[:, band]
            j = int(np.argmax(np.abs(col)))
            col = col * (abs(col[j]) / col[j])
            cols.append(col)
            energies.append(w[band])
            orb_k.append(ki)
    order = sorted(range(n), key=lambda i: (energies[i], orb_k[i]))
    C = np.array([cols[i] for i in order]).T
    return C, np.array([energies[i] for i in order]), tuple(orb_k[i] for i in order), kmesh


def build_ssh_hubbard(ncell, t1, t2, U, basis="band", nelec=None) -> IntegralSet:
    """SSH-Hubbard integral set; half filling by default."""
    n = 2 * ncell
    if nelec is None:
        nelec = n
    if basis == "site":
        h1 = _site_hopping(ncell, t1, t2).astype(np.complex128)
        h2 = np.zeros((n,) * 4, dtype=np.complex128)
        for i in range(n):
            h2[i, i, i, i] = U
        out = IntegralSet(
            norb=n,
            nelec=nelec,
            ms2=0,
            kmesh=KMesh.gamma(),
            orb_k=(0,) * n,
            h1=h1,
            h2=h2,
            basis_label="ssh-hubbard/site",
        )
    elif basis == "band":
        C, energies, orb_k, kmesh = _band_orbitals(ncell, t1, t2)
        h1 = C.conj().T @ _site_hopping(ncell, t1, t2) @ C
        # on-site U: h2[p,q,r,s] = U sum_i C*_ip C*_iq C_ir C_is
        h2 = U * np.einsum("ip,iq,ir,is->pqrs", C.conj(), C.conj(), C, C, optimize=True)
        out = IntegralSet(
            norb=n,
            nelec=nelec,
            ms2=0,
            kmesh=kmesh,
            orb_k=orb_k,
            h1=h1,
            h2=h2,
            basis_label="ssh-hubbard/band",
        )
        out.momentum_snap(tol=1e-10)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return out.validate()


def hubbard_dimer(t=1.0, U=4.0, basis="band") -> IntegralSet:
    """Single-cell special case: two sites, hopping t, on-site U.

    Exact ground state energy at half filling: U/2 - sqrt((U/2)^2 + 4 t^2).
    """
    return build_ssh_hubbard(1, t, 0.0, U, basis=basis)


def hubbard_dimer_exact_energy(t=1.0, U=4.0) -> float:
    return U / 2.0 - np.sqrt((U / 2.0) ** 2 + 4.0 * t * t)


def ssh_hubbard_orbitals(ncell, t1, t2):
    """Band orbitals packaged for the realification pipeline."""
    from .k2g import OrbitalSet

    C, energies, orb_k, kmesh = _band_orbitals(ncell, t1, t2)
    return OrbitalSet(
        coefficients=C,
        energies=energies,
        overlap=None,
        orb_k=orb_k,
        kpoints=kmesh.points,
        n_occ=ncell,
    )
