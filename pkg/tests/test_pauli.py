import numpy as np
from hypothesis import given, settings, strategies as st

from kvqe.fermion import excitation
from kvqe.pauli import PauliSum, jordan_wigner

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
LETTERS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_oracle(label, coeff=1.0):
    # qubit 0 is the least significant factor
    m = np.array([[coeff]], dtype=complex)
    for letter in label:
        m = np.kron(LETTERS[letter], m)
    return m


labels3 = st.text(alphabet="IXYZ", min_size=3, max_size=3)


@given(labels3)
@settings(max_examples=64, deadline=None)
def test_single_string_matrix(label):
    assert np.allclose(PauliSum.from_label(label).to_matrix(), kron_oracle(label))


@given(labels3, labels3)
@settings(max_examples=64, deadline=None)
def test_symplectic_product(l1, l2):
    p = PauliSum.from_label(l1) @ PauliSum.from_label(l2)
    assert np.allclose(p.to_matrix(), kron_oracle(l1) @ kron_oracle(l2), atol=1e-12)


def test_product_phases():
    assert repr(PauliSum.from_label("X") @ PauliSum.from_label("Y")) == "(0+1j) Z"
    assert repr(PauliSum.from_label("Y") @ PauliSum.from_label("X")) == "(0-1j) Z"
    zz = PauliSum.from_label("Z") @ PauliSum.from_label("Z")
    assert zz.terms == {(0, 0): 1.0 + 0j}


def test_label_roundtrip():
    p = PauliSum.from_label("XIZY", 2.5)
    ((key, c),) = p.terms.items()
    assert p.label(key) == "XIZY" and c == 2.5


@given(st.lists(st.tuples(labels3, st.floats(-2, 2)), min_size=1, max_size=5))
@settings(max_examples=40, deadline=None)
def test_dot_matches_dense(items):
    p = PauliSum(3)
    for label, c in items:
        p = p + PauliSum.from_label(label, c)
    rng = np.random.default_rng(3)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    assert np.allclose(p.dot(v), p.to_matrix() @ v, atol=1e-12)


def test_hermiticity_flags():
    h = PauliSum.from_label("XY", 0.3) + PauliSum.from_label("ZI", -1.2)
    assert h.is_hermitian() and not (h * 1j).is_hermitian()
    assert (h * 1j).is_anti_hermitian()


def test_jw_ladder_images():
    assert repr(jordan_wigner(excitation([0], []), 1)) == "(0.5+0j) X + (0-0.5j) Y"
    # number operator n_0 = (I - Z)/2
    n0 = jordan_wigner(excitation([0], [0]), 1)
    assert np.allclose(n0.to_matrix(), np.diag([0.0, 1.0]))
    # JW string: a_2^+ picks up Z_0 Z_1
    a2d = jordan_wigner(excitation([2], []), 3)
    labels = sorted(a2d.label(k) for k in a2d.terms)
    assert labels == ["ZZX", "ZZY"]


def test_jw_out_of_range():
    import pytest

    with pytest.raises(ValueError):
        jordan_wigner(excitation([4], []), 4)


def test_jw_preserves_hermiticity_and_products(rng):
    from kvqe.fermion import FermionOperator

    op = FermionOperator()
    for _ in range(5):
        k = rng.integers(1, 4)
        fac = [(int(rng.integers(0, 3)), bool(rng.integers(0, 2))) for _ in range(k)]
        op = op + FermionOperator.from_term(fac, complex(rng.normal(), rng.normal()))
    herm = op + op.dagger()
    assert jordan_wigner(herm, 3).is_hermitian()
    m1 = jordan_wigner(op @ op, 3).to_matrix()
    m2 = jordan_wigner(op, 3).to_matrix()
    assert np.allclose(m1, m2 @ m2, atol=1e-9)
