import numpy as np
import pytest

from kvqe.fci import fci
from kvqe.integrals import build_hamiltonian
from kvqe.k2g import (
    OrbitalSet,
    RealificationError,
    k2g_transform,
    load_supercell_dump,
    realify,
    rotate_integrals,
    write_supercell_dump,
)
from kvqe.models import ssh_hubbard_orbitals
from kvqe.pauli import jordan_wigner


def test_realified_orbitals_are_real_and_orthonormal(band2):
    orbs = ssh_hubbard_orbitals(2, 1.0, 0.6)
    res = realify(orbs)
    assert np.max(np.abs(res.coefficients.imag)) == 0.0
    g = res.coefficients.T @ res.coefficients
    assert np.allclose(g, np.eye(4), atol=1e-10)
    u = res.rotation
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-10)
    # occ/virt blocks do not mix: U is block diagonal
    assert np.max(np.abs(u[:2, 2:])) < 1e-12 and np.max(np.abs(u[2:, :2])) < 1e-12
    assert np.allclose(np.sort(res.energies), np.sort(orbs.energies), atol=1e-10)


def test_realification_is_deterministic():
    a = realify(ssh_hubbard_orbitals(2, 1.0, 0.6))
    b = realify(ssh_hubbard_orbitals(2, 1.0, 0.6))
    assert np.array_equal(a.coefficients, b.coefficients)
    assert np.array_equal(a.rotation, b.rotation)


def test_k2g_integrals_are_real(gamma2):
    g_ints, res = gamma2
    assert res.max_imag_residue < 1e-10
    assert np.max(np.abs(g_ints.h1.imag)) == 0.0
    assert np.max(np.abs(g_ints.h2.imag)) == 0.0
    assert g_ints.kmesh.nkpt == 1 and g_ints.orb_k == (0,) * 4


def test_k2g_preserves_spectrum(band2_fci, gamma2):
    g_ints, _ = gamma2
    ham = jordan_wigner(build_hamiltonian(g_ints), g_ints.n_qubits)
    spec = fci(ham, g_ints.nelec, g_ints.ms2, n_states=4)
    assert np.allclose(spec.energies, band2_fci.energies, atol=1e-9)


def test_rotate_integrals_random_unitary_invariance(band2, band2_fci, rng):
    # any unitary change of orbitals leaves the spectrum untouched
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    q, _ = np.linalg.qr(a)
    rotated = rotate_integrals(band2, q, label="random")
    ham = jordan_wigner(build_hamiltonian(rotated), 8)
    spec = fci(ham, 4, 0, n_states=2)
    assert np.allclose(spec.energies, band2_fci.energies[:2], atol=1e-9)


def test_rotate_integrals_rejects_nonunitary(band2):
    with pytest.raises(ValueError):
        rotate_integrals(band2, 0.5 * np.eye(4))


def test_realify_rejects_non_closed_mesh():
    orbs = ssh_hubbard_orbitals(2, 1.0, 0.6)
    bad = OrbitalSet(
        orbs.coefficients, orbs.energies, orbs.orb_k,
        ((0, 0, 0.25), (0, 0, 0.5)), orbs.n_occ,
    )
    with pytest.raises(RealificationError):
        realify(bad)


def test_realify_rejects_conjugation_open_block():
    # a single complex column whose conjugate lies outside the span
    c = np.array([[1.0], [1.0j]]) / np.sqrt(2.0)
    orbs = OrbitalSet(
        np.hstack([c, np.array([[1.0], [-1.0j]]) / np.sqrt(2.0)]),
        np.array([-1.0, 1.0]),
        (0, 0),
        ((0.0, 0.0, 0.0),),
        1,
    )
    with pytest.raises(RealificationError):
        realify(orbs)


def test_supercell_dump_roundtrip(tmp_path):
    orbs = ssh_hubbard_orbitals(2, 1.0, 0.6)
    path = tmp_path / "cell.psup"
    write_supercell_dump(orbs, path)
    back = load_supercell_dump(path)
    assert np.allclose(back.coefficients, orbs.coefficients, atol=1e-13)
    assert np.allclose(back.energies, orbs.energies, atol=1e-13)
    assert back.orb_k == orbs.orb_k and back.n_occ == orbs.n_occ
    assert np.allclose(np.array(back.kpoints), np.array(orbs.kpoints), atol=1e-14)


def test_k2g_transform_pipeline(band2):
    g_ints, res = k2g_transform(band2, ssh_hubbard_orbitals(2, 1.0, 0.6))
    assert g_ints.basis_label.endswith("k2g")
    assert res.max_imag_residue <= 1e-12
