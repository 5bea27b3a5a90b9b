"""ACSE residual diagnostics, error statistics and parameter scans.

The anti-Hermitian contracted Schroedinger equation residuals over a pool
{tau_u} probe how far a state is from stationarity:

    Re-residual:  <[tau_u, H]>   = 2 Re <H psi | tau_u psi>
    Im-residual: -i<{tau_u, H}>  = 2 Im <H psi | tau_u psi>

For an exact eigenstate the Re part vanishes; the Im part vanishes whenever
Hamiltonian and state are both real, which is what the K2G rotation buys.
On a complex orbital basis an optimizer drives the Re part below threshold
while the Im part stays finite — the complex-basis pathology.
MARE = maximum absolute residual error, quoted in kcal/mol.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .integrals import hartree_to_kcalmol
from .sector import SectorSpace, pauli_csr
from .state import StateVector


@dataclass
class AcseReport:
    labels: list
    re_residuals: np.ndarray
    im_residuals: np.ndarray

    @property
    def mare_re(self) -> float:
        """Maximum absolute Re-residual in kcal/mol."""
        return float(hartree_to_kcalmol(np.max(np.abs(self.re_residuals))))

    @property
    def mare_im(self) -> float:
        return float(hartree_to_kcalmol(np.max(np.abs(self.im_residuals))))

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.re_residuals**2 + self.im_residuals**2)))


def acse_residuals(state: StateVector, hamiltonian, pool, sector: SectorSpace | None = None) -> AcseReport:
    """Residuals of every pool generator on the given (normalized) state."""
    if sector is None:
        sector = SectorSpace(state.n_qubits, *_detect_sector(state))
    vec = sector.project(state)
    h = pauli_csr(hamiltonian, sector)
    hv = h @ vec
    re, im, labels = [], [], []
    for g in pool:
        inner = np.vdot(hv, pauli_csr(g.pauli, sector) @ vec)
        re.append(2.0 * inner.real)
        im.append(2.0 * inner.imag)
        labels.append(g.label)
    return AcseReport(labels, np.array(re), np.array(im))


def _detect_sector(state: StateVector):
    amp = state.amplitudes
    idx = int(np.argmax(np.abs(amp)))
    nelec = bin(idx).count("1")
    na = sum(1 for q in range(0, state.n_qubits, 2) if (idx >> q) & 1)
    return nelec, 2 * na - nelec


@dataclass
class ErrorStats:
    """Signed errors of a method against reference energies, in kcal/mol."""

    errors: np.ndarray

    @property
    def me(self) -> float:
        """Mean error."""
        return float(np.mean(self.errors))

    @property
    def mae(self) -> float:
        return float(np.mean(np.abs(self.errors)))

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.errors)))


def error_stats(energies, reference_energies) -> ErrorStats:
    e = np.asarray(energies, dtype=float)
    r = np.asarray(reference_energies, dtype=float)
    if e.shape != r.shape:
        raise ValueError("shape mismatch")
    return ErrorStats(hartree_to_kcalmol(e - r))


@dataclass
class ScanRow:
    r: float
    method: str
    energy: float  # Hartree
    error: float  # kcal/mol vs the oracle


def write_scan_csv(rows, path):
    """Deterministic CSV: fixed column order, fixed precision, LF endings."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["R", "method", "energy_hartree", "error_kcalmol"])
        for row in rows:
            w.writerow(["%.4f" % row.r, row.method, "%.8f" % row.energy, "%.6f" % row.error])


def read_scan_csv(path):
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            rows.append(
                ScanRow(
                    float(rec["R"]),
                    rec["method"],
                    float(rec["energy_hartree"]),
                    float(rec["error_kcalmol"]),
                )
            )
    return rows
