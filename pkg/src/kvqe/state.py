"""Dense statevector engine: reference preparation, Pauli action, evolution.

Exponentials act through a scaled-and-squared Taylor series on the vector
(never materializing the matrix exponential); the scaling uses the 1-norm of
the Pauli coefficients as a cheap upper bound on the operator norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliSum

TAYLOR_TOL = 1e-12


class StateVector:
    __slots__ = ("amplitudes", "n_qubits")

    def __init__(self, amplitudes, n_qubits=None):
        self.amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if n_qubits is None:
            n_qubits = int(self.amplitudes.shape[0]).bit_length() - 1
        if self.amplitudes.shape != (1 << n_qubits,):
            raise ValueError("amplitude length is not a power of two / mismatch")
        self.n_qubits = n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.n_qubits)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def prepare_reference(reference, n_qubits) -> StateVector:
    """Computational-basis determinant |occ> (occupied modes set)."""
    index = 0
    for m in reference.occupied:
        if m >= n_qubits:
            raise ValueError(f"occupied mode {m} out of range")
        index |= 1 << m
    amp = np.zeros(1 << n_qubits, dtype=np.complex128)
    amp[index] = 1.0
    return StateVector(amp, n_qubits)


def apply(op: PauliSum, state: StateVector) -> StateVector:
    """op|state> (generally unnormalized)."""
    return StateVector(op.dot(state.amplitudes), state.n_qubits)


def expectation(op: PauliSum, state: StateVector) -> complex:
    return complex(np.vdot(state.amplitudes, op.dot(state.amplitudes)))


@dataclass(frozen=True)
class EvolutionPlan:
    """How exp(theta*tau) is applied: exactly or first-order Trotterized."""

    mode: str = "exact"  # "exact" | "trotter"
    steps: int = 1
    tolerance: float = TAYLOR_TOL

    def __post_init__(self):
        if self.mode not in ("exact", "trotter"):
            raise ValueError(f"unknown evolution mode {self.mode!r}")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


def expm_apply(matvec, vec, norm_bound, tol=TAYLOR_TOL):
    """exp(A) vec via Taylor series with halving; norm_bound >= ||A||."""
    halvings = 0
    scale = float(norm_bound)
    while scale > 1.0:
        scale *= 0.5
        halvings += 1
    inv = 0.5**halvings
    for _ in range(1 << halvings):
        term = vec
        out = vec.copy()
        k = 0
        while np.linalg.norm(term) > tol:
            k += 1
            term = matvec(term) * (inv / k)
            out = out + term
            if k > 200:
                raise RuntimeError("Taylor series did not converge")
        vec = out
    return vec


def evolve(theta, generator: PauliSum, state: StateVector, plan: EvolutionPlan | None = None) -> StateVector:
    """exp(theta * tau)|state> for an anti-Hermitian Pauli generator."""
    if not generator.is_anti_hermitian():
        raise ValueError("generator must be anti-Hermitian")
    scaled = generator * theta
    amp = expm_apply(
        scaled.dot, state.amplitudes, scaled.norm1(), (plan or EvolutionPlan()).tolerance
    )
    return StateVector(amp, state.n_qubits)


def ucc_state(parameters, generators, reference: StateVector, plan: EvolutionPlan | None = None) -> StateVector:
    """exp(sum_u t_u tau_u)|ref>, exactly or as a first-order product formula."""
    plan = plan or EvolutionPlan()
    if len(parameters) != len(generators):
        raise ValueError("parameter / generator count mismatch")
    if not generators:
        return reference.copy()
    n = reference.n_qubits
    if plan.mode == "exact":
        total = PauliSum(n)
        for t, g in zip(parameters, generators):
            total = total + g * t
        total = total.prune()
        amp = expm_apply(total.dot, reference.amplitudes, total.norm1(), plan.tolerance)
        return StateVector(amp, n)
    state = reference
    dt = 1.0 / plan.steps
    for _ in range(plan.steps):
        for t, g in zip(parameters, generators):
            state = evolve(t * dt, g, state, plan)
    return state


def product_state(parameters, generators, reference: StateVector, plan: EvolutionPlan | None = None) -> StateVector:
    """Ordered product exp(t_1 tau_1) .. exp(t_L tau_L)|ref| (ADAPT ansatz).

    Factor 1 is applied first (rightmost in operator order).
    """
    state = reference
    for t, g in zip(parameters, generators):
        state = evolve(t, g, state, plan)
    return state
