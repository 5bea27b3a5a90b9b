import numpy as np
import pytest

from kvqe.fci import fci
from kvqe.integrals import build_hamiltonian
from kvqe.k2g import k2g_transform
from kvqe.models import build_ssh_hubbard, hubbard_dimer, ssh_hubbard_orbitals
from kvqe.pauli import jordan_wigner

# the ncell=2 fixture of the acceptance suite: genuinely complex band basis
SSH2 = dict(ncell=2, t1=1.0, t2=0.6, U=4.0)


@pytest.fixture(scope="session")
def dimer():
    ints = hubbard_dimer(1.0, 4.0)
    ham = jordan_wigner(build_hamiltonian(ints), ints.n_qubits)
    return ints, ham


@pytest.fixture(scope="session")
def band2():
    return build_ssh_hubbard(SSH2["ncell"], SSH2["t1"], SSH2["t2"], SSH2["U"], basis="band")


@pytest.fixture(scope="session")
def band2_ham(band2):
    return jordan_wigner(build_hamiltonian(band2), band2.n_qubits)


@pytest.fixture(scope="session")
def band2_fci(band2, band2_ham):
    return fci(band2_ham, band2.nelec, band2.ms2, n_states=4)


@pytest.fixture(scope="session")
def site2():
    return build_ssh_hubbard(SSH2["ncell"], SSH2["t1"], SSH2["t2"], SSH2["U"], basis="site")


@pytest.fixture(scope="session")
def gamma2(band2):
    orbs = ssh_hubbard_orbitals(SSH2["ncell"], SSH2["t1"], SSH2["t2"])
    return k2g_transform(band2, orbs)  # (IntegralSet, RealificationResult)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
