import numpy as np
import pytest

import kvqe.fci
from kvqe.fci import fci
from kvqe.pauli import PauliSum
from kvqe.sector import SectorSpace, pauli_csr
from kvqe.state import StateVector, prepare_reference


def test_sector_dimensions():
    assert SectorSpace(4, 2, 0).dim == 4
    assert SectorSpace(8, 4, 0).dim == 36
    assert SectorSpace(8, 4, 2).dim == 16  # C(4,3)*C(4,1)
    assert SectorSpace(16, 8, 0).dim == 4900


def test_project_embed_roundtrip(band2, band2_fci):
    space = SectorSpace(8, 4, 0)
    st = band2_fci.states[0]
    vec = space.project(st)
    back = space.embed(vec)
    assert np.allclose(back.amplitudes, st.amplitudes)


def test_project_rejects_out_of_sector():
    space = SectorSpace(4, 2, 0)
    amp = np.zeros(16, dtype=complex)
    amp[0b0111] = 1.0  # three electrons
    with pytest.raises(ValueError):
        space.project(StateVector(amp))


def test_csr_matches_dense_restriction(band2_ham):
    space = SectorSpace(8, 4, 0)
    mat = pauli_csr(band2_ham, space).toarray()
    dense = band2_ham.to_matrix()
    rows = space.basis.astype(np.int64)
    assert np.allclose(mat, dense[np.ix_(rows, rows)], atol=1e-12)


def test_csr_rejects_nonconserving_operator():
    space = SectorSpace(4, 2, 0)
    with pytest.raises(ValueError):
        pauli_csr(PauliSum.from_label("XIII"), space)


def test_string_leakage_cancels_for_hopping():
    # the XX string alone leaks out of the sector (its a+a+ / aa parts hit
    # determinants with both sites empty or filled); the XX+YY sum does not
    space = SectorSpace(6, 2, 0)
    hop = PauliSum.from_label("XZXIII", 0.5) + PauliSum.from_label("YZYIII", 0.5)
    mat = pauli_csr(hop, space)
    assert mat.shape == (space.dim, space.dim)
    with pytest.raises(ValueError):
        pauli_csr(PauliSum.from_label("XZXIII", 0.5), space)


def test_fci_dense_vs_iterative(band2, band2_ham, band2_fci, monkeypatch):
    monkeypatch.setattr(kvqe.fci, "DENSE_LIMIT", 8)
    spec = fci(band2_ham, 4, 0, n_states=3)
    assert np.allclose(spec.energies, band2_fci.energies[:3], atol=1e-9)


def test_fci_empty_sector_raises(band2_ham):
    with pytest.raises(ValueError):
        fci(band2_ham, 9, 9)


def test_fci_truncation_warns(dimer):
    _, ham = dimer
    with pytest.warns(UserWarning):
        spec = fci(ham, 2, 2, n_states=10)  # the (2, 2) sector holds one determinant
    assert len(spec.energies) == 1


def test_fci_states_are_eigenstates(band2_ham, band2_fci):
    for e, st in zip(band2_fci.energies, band2_fci.states):
        hv = band2_ham.dot(st.amplitudes)
        assert np.linalg.norm(hv - e * st.amplitudes) < 1e-8
