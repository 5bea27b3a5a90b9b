import numpy as np
from hypothesis import given, settings, strategies as st

from kvqe.fermion import (
    FermionOperator,
    anti_hermitian,
    excitation,
    number_operator,
    sz_operator,
)
from kvqe.pauli import jordan_wigner

N_MODES = 4


def _dense(op):
    return jordan_wigner(op, N_MODES).to_matrix()


factors = st.lists(
    st.tuples(st.integers(0, N_MODES - 1), st.booleans()), min_size=0, max_size=4
).map(tuple)
coeffs = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=3.0, allow_nan=False, allow_infinity=False
)
operators = st.lists(st.tuples(factors, coeffs), min_size=1, max_size=4).map(
    lambda items: sum(
        (FermionOperator.from_term(f, c) for f, c in items), FermionOperator.zero()
    )
)


@given(operators)
@settings(max_examples=60, deadline=None)
def test_normal_ordering_preserves_operator(op):
    # the canonical form must represent the same matrix
    assert np.allclose(_dense(op.normal_ordered()), _dense(op), atol=1e-10)


@given(operators)
@settings(max_examples=60, deadline=None)
def test_normal_ordered_is_canonical(op):
    for fac in op.normal_ordered().terms:
        ncre = sum(d for _, d in fac)
        assert all(d for _, d in fac[:ncre]) and not any(d for _, d in fac[ncre:])
        cre = [m for m, d in fac if d]
        ann = [m for m, d in fac if not d]
        assert cre == sorted(cre, reverse=True) and len(set(cre)) == len(cre)
        assert ann == sorted(ann, reverse=True) and len(set(ann)) == len(ann)


@given(operators, operators)
@settings(max_examples=40, deadline=None)
def test_product_and_sum_match_dense(a, b):
    assert np.allclose(_dense(a @ b), _dense(a) @ _dense(b), atol=1e-9)
    assert np.allclose(_dense(a + b), _dense(a) + _dense(b), atol=1e-10)


@given(operators)
@settings(max_examples=40, deadline=None)
def test_dagger_is_adjoint(op):
    assert np.allclose(_dense(op.dagger()), _dense(op).conj().T, atol=1e-10)


def test_canonical_anticommutators():
    a0 = excitation([], [0])
    a0d = excitation([0], [])
    a1 = excitation([], [1])
    assert (a0 @ a0d + a0d @ a0) == FermionOperator.identity()
    assert (a0 @ a1 + a1 @ a0).is_zero()
    assert (a0 @ a0).is_zero()


def test_double_excitation_normal_ordering():
    # a_1 a_0^+ = -a_0^+ a_1 for distinct modes, no contraction
    op = FermionOperator.from_term([(1, False), (0, True)]).normal_ordered()
    assert op.terms == {((0, True), (1, False)): -1.0}


def test_anti_hermitian_generator():
    tau = anti_hermitian(excitation([3, 2], [1, 0], 0.8 - 0.3j))
    m = jordan_wigner(tau, N_MODES).to_matrix()
    assert np.allclose(m, -m.conj().T, atol=1e-12)


def test_number_and_sz_eigenvalues():
    n = _dense(number_operator(N_MODES))
    sz = _dense(sz_operator(N_MODES))
    idx = np.arange(16)
    pops = np.array([bin(i).count("1") for i in idx])
    na = np.array([sum((i >> q) & 1 for q in (0, 2)) for i in idx])
    assert np.allclose(np.diag(n).real, pops)
    assert np.allclose(np.diag(sz).real, 2 * na - pops)
    assert np.allclose(n - np.diag(np.diag(n)), 0.0)
