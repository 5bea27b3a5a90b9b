import numpy as np
import pytest

from kvqe.diagnostics import (
    AcseReport,
    ScanRow,
    acse_residuals,
    error_stats,
    read_scan_csv,
    write_scan_csv,
)
from kvqe.integrals import hartree_to_kcalmol
from kvqe.pool import build_pool
from kvqe.sector import SectorSpace


def test_acse_re_residuals_vanish_on_eigenstate(band2, band2_ham, band2_fci):
    # the commutator part vanishes on any eigenstate; the anticommutator
    # part generally survives on a complex basis even at FCI
    pool = build_pool(band2, "GSD")
    rep = acse_residuals(band2_fci.states[0], band2_ham, pool, SectorSpace(8, 4, 0))
    assert np.max(np.abs(rep.re_residuals)) < 1e-8
    assert rep.mare_re < 1e-5
    assert rep.mare_im > 1e-3


def test_acse_im_vanishes_for_real_problem(gamma2):
    from kvqe.integrals import build_hamiltonian
    from kvqe.pauli import jordan_wigner
    from kvqe.state import prepare_reference

    g_ints, _ = gamma2
    ham = jordan_wigner(build_hamiltonian(g_ints), 8)
    pool = build_pool(g_ints, "GSD")
    ref = prepare_reference(g_ints.hf_reference(), 8)
    rep = acse_residuals(ref, ham, pool)
    assert rep.mare_im < 1e-10
    assert rep.mare_re > 0.0  # HF is no eigenstate


def test_acse_residuals_nonzero_on_reference(band2, band2_ham):
    from kvqe.state import prepare_reference

    pool = build_pool(band2, "GSD")
    ref = prepare_reference(band2.hf_reference(), 8)
    rep = acse_residuals(ref, band2_ham, pool)  # sector auto-detected
    assert rep.norm > 0.1
    assert len(rep.labels) == len(pool)


def test_mare_units():
    rep = AcseReport(["a", "b"], np.array([0.001, -0.003]), np.array([0.0, 0.0]))
    assert rep.mare_re == pytest.approx(hartree_to_kcalmol(0.003))
    assert rep.mare_im == 0.0


def test_error_stats():
    stats = error_stats([-1.0, -2.0], [-1.001, -2.0])
    assert stats.me == pytest.approx(hartree_to_kcalmol(0.0005))
    assert stats.mae == pytest.approx(hartree_to_kcalmol(0.0005))
    assert stats.max_abs == pytest.approx(hartree_to_kcalmol(0.001))
    with pytest.raises(ValueError):
        error_stats([1.0], [1.0, 2.0])


def test_scan_csv_roundtrip_and_bytes(tmp_path):
    rows = [
        ScanRow(0.5, "hf", -1.23456789123, 12.3456789),
        ScanRow(1.0, "adapt(3)", -2.0, -0.000001234),
    ]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_scan_csv(rows, p1)
    write_scan_csv(rows, p2)
    assert p1.read_bytes() == p2.read_bytes()
    text = p1.read_text()
    assert text.splitlines()[0] == "R,method,energy_hartree,error_kcalmol"
    assert "\r" not in text
    back = read_scan_csv(p1)
    assert back[0].method == "hf"
    assert back[0].energy == pytest.approx(-1.23456789, abs=1e-8)
    assert back[1].error == pytest.approx(-0.000001, abs=1e-6)
