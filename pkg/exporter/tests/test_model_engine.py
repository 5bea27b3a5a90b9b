import numpy as np
import pytest

from kexport.chain import ChainSpec
from kexport import model_engine


def test_spec_invariants():
    with pytest.raises(ValueError):
        ChainSpec(r=-1.0)
    with pytest.raises(ValueError):
        ChainSpec(r=1.0, mesh=(1, 1, 0))
    with pytest.raises(ValueError):
        model_engine.solve(ChainSpec(r=1.0, mesh=(2, 1, 2)))


def test_counts_scale_with_mesh(chain2, chain4):
    assert (chain2.norb, chain2.nelec) == (4, 4)
    assert (chain4.norb, chain4.nelec) == (8, 8)
    assert chain4.ms2 == 0 and len(chain4.kpoints) == 4


def test_integrals_hermitian(chain4):
    assert np.allclose(chain4.h1, chain4.h1.conj().T, atol=1e-12)
    assert np.allclose(chain4.h2, np.conj(chain4.h2.transpose(3, 2, 1, 0)), atol=1e-12)


def test_momentum_conservation(chain4):
    fz = np.array([chain4.kpoints[k][2] for k in chain4.orb_k])
    tot = (fz[:, None, None, None] + fz[None, :, None, None]
           - fz[None, None, :, None] - fz[None, None, None, :])
    bad = np.abs(tot - np.round(tot)) > 1e-12
    assert np.max(np.abs(chain4.h2[bad]), initial=0.0) == 0.0


def test_single_cell_real():
    data = model_engine.solve(ChainSpec(r=1.0, mesh=(1, 1, 1)))
    assert np.max(np.abs(data.h1.imag)) <= 1e-10
    assert np.max(np.abs(data.h2.imag)) <= 1e-10


def test_gapped_at_half_filling(chain4):
    e = np.sort(chain4.mo_energies)
    assert e[chain4.n_occ] - e[chain4.n_occ - 1] > 1e-3


def test_supercell_columns(chain4):
    c, s = chain4.cmo, chain4.overlap
    assert np.allclose(c.conj().T @ s @ c, np.eye(chain4.norb), atol=1e-8)
    # time reversal: the -k partner column is the complex conjugate
    fz = [chain4.kpoints[k][2] for k in chain4.orb_k]
    for j in range(chain4.norb):
        target = (-fz[j]) % 1.0
        partners = [
            i for i in range(chain4.norb)
            if abs(fz[i] - target) < 1e-12
            and abs(chain4.mo_energies[i] - chain4.mo_energies[j]) < 1e-10
        ]
        assert any(np.allclose(c[:, i], c[:, j].conj(), atol=1e-8) for i in partners)


def test_hf_energy_is_smooth_in_r():
    energies = [model_engine.solve(ChainSpec(r=r, mesh=(1, 1, 2))).e_hf
                for r in (0.9, 1.0, 1.1)]
    assert energies[0] != energies[1]
    # crude second difference bound: no jumps from occupation reordering
    assert abs(energies[0] - 2 * energies[1] + energies[2]) < 0.1
