import numpy as np
import pytest

from kvqe.fci import fci
from kvqe.integrals import build_hamiltonian
from kvqe.models import (
    build_ssh_hubbard,
    hubbard_dimer,
    hubbard_dimer_exact_energy,
    shifted_kmesh,
    ssh_hubbard_orbitals,
)
from kvqe.pauli import jordan_wigner


def test_shifted_mesh_is_negation_closed():
    for ncell in (1, 2, 3, 4):
        mesh = shifted_kmesh(ncell)
        assert mesh.nkpt == ncell and mesh.negation_closed()
        # no Gamma point on the antiperiodic mesh
        assert all(abs(kz) > 1e-12 for _, _, kz in mesh.points)


def test_dimer_fci_matches_analytic(dimer):
    ints, ham = dimer
    e = fci(ham, ints.nelec, ints.ms2).energies[0]
    assert e == pytest.approx(hubbard_dimer_exact_energy(1.0, 4.0), abs=1e-12)
    assert e == pytest.approx(-0.8284271247461903, abs=1e-12)


def test_dimer_site_band_agree():
    es = []
    for basis in ("site", "band"):
        ints = hubbard_dimer(1.0, 4.0, basis=basis)
        ham = jordan_wigner(build_hamiltonian(ints), ints.n_qubits)
        es.append(fci(ham, 2, 0).energies[0])
    assert es[0] == pytest.approx(es[1], abs=1e-12)


def test_band_basis_is_canonical(band2):
    # h1 diagonal with ascending energies; integrals validated on build
    off = band2.h1 - np.diag(np.diag(band2.h1))
    assert np.max(np.abs(off)) < 1e-12
    d = np.diag(band2.h1).real
    assert np.all(np.diff(d) > -1e-12)


def test_band_two_electron_integrals_are_complex(band2):
    # the whole point of the antiperiodic ncell=2 fixture
    assert np.max(np.abs(band2.h2.imag)) > 1e-2


def test_site_basis_is_real(site2):
    assert np.max(np.abs(site2.h1.imag)) == 0.0
    assert np.max(np.abs(site2.h2.imag)) == 0.0


def test_band_site_unitary_equivalence(band2, site2, band2_fci):
    ham = jordan_wigner(build_hamiltonian(site2), site2.n_qubits)
    spec = fci(ham, site2.nelec, site2.ms2, n_states=2)
    assert np.allclose(spec.energies, band2_fci.energies[:2], atol=1e-10)


def test_orbitals_diagonalize_site_hamiltonian(band2):
    orbs = ssh_hubbard_orbitals(2, 1.0, 0.6)
    g = orbs.coefficients.conj().T @ orbs.coefficients
    assert np.allclose(g, np.eye(4), atol=1e-12)
    assert np.allclose(np.sort(orbs.energies), np.diag(band2.h1).real, atol=1e-12)
    assert orbs.n_occ == 2


def test_hubbard_u_only_on_site_diagonal():
    ints = build_ssh_hubbard(3, 1.0, 0.4, 2.5, basis="site")
    nz = np.argwhere(np.abs(ints.h2) > 0)
    assert all(p == q == r == s for p, q, r, s in nz)
    assert np.allclose(ints.h2[np.arange(6), np.arange(6), np.arange(6), np.arange(6)], 2.5)
