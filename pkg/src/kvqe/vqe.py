"""VQE and ADAPT-VQE drivers.

All hot-loop linear algebra runs on the conserved (N, Sz) sector through CSR
matrices compiled once per operator (see sector.py); the public interfaces
speak full statevectors.  BFGS with analytic gradients where the ansatz
permits them, central finite differences otherwise.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize as scipy_minimize

from .pauli import PauliSum
from .sector import SectorSpace, pauli_csr
from .state import EvolutionPlan, StateVector, expm_apply

FD_STEP = 1e-5
DEFAULT_GTOL = 1e-6


class SectorProblem:
    """Shared compiled workspace: H, reference and generators on the sector."""

    def __init__(self, hamiltonian: PauliSum, reference: StateVector, space: SectorSpace):
        self.space = space
        self.h = pauli_csr(hamiltonian, space)
        self.ref = space.project(reference)
        self._gen_cache: dict[int, object] = {}

    @classmethod
    def of(cls, hamiltonian, reference: StateVector, nelec, ms2):
        return cls(hamiltonian, reference, SectorSpace(reference.n_qubits, nelec, ms2))

    def matrix(self, gen):
        key = id(gen)
        if key not in self._gen_cache:
            self._gen_cache[key] = pauli_csr(gen.pauli, self.space)
        return self._gen_cache[key]

    def evolve(self, theta, gen, vec, tol=1e-12):
        if theta == 0.0:
            return vec
        mat = self.matrix(gen)
        return expm_apply(lambda v: mat @ (theta * v), vec, abs(theta) * gen.norm1, tol)

    def product_state(self, params, gens, plan: EvolutionPlan):
        vec = self.ref
        for t, g in zip(params, gens):
            vec = self.evolve(t, g, vec, plan.tolerance)
        return vec

    def ucc_state(self, params, gens, plan: EvolutionPlan):
        if plan.mode == "trotter":
            vec = self.ref
            dt = 1.0 / plan.steps
            for _ in range(plan.steps):
                for t, g in zip(params, gens):
                    vec = self.evolve(t * dt, g, vec, plan.tolerance)
            return vec
        mats = [self.matrix(g) for g in gens]
        nrm = sum(abs(t) * g.norm1 for t, g in zip(params, gens))

        def matvec(v):
            out = params[0] * (mats[0] @ v)
            for t, m in zip(params[1:], mats[1:]):
                out = out + t * (m @ v)
            return out

        if not gens or nrm == 0.0:
            return self.ref
        return expm_apply(matvec, self.ref, nrm, plan.tolerance)

    def energy_of(self, vec):
        return float(np.vdot(vec, self.h @ vec).real)


@dataclass
class VqeResult:
    energy: float
    parameters: np.ndarray
    state: StateVector
    n_iterations: int
    n_evaluations: int
    converged: bool
    energy_history: list = field(default_factory=list)


def _fd_gradient(fun, x, step=FD_STEP):
    g = np.empty_like(x)
    for i in range(len(x)):
        xp = x.copy()
        xp[i] += step
        xm = x.copy()
        xm[i] -= step
        g[i] = (fun(xp) - fun(xm)) / (2.0 * step)
    return g


def analytic_gradient(problem: SectorProblem, params, gens, plan: EvolutionPlan):
    """dE/dtheta_l for the ordered-product ansatz, via forward/backward sweeps.

    G_l = 2 Re <B_l | tau_l | psi_l>, B_L = H |psi_L>, B_{l-1} = e^{-t_l tau_l} B_l.
    Only valid for exact factor evolution.
    """
    if plan.mode != "exact":
        raise ValueError("analytic gradient requires exact evolution")
    L = len(gens)
    fwd = [problem.ref]
    for t, g in zip(params, gens):
        fwd.append(problem.evolve(t, g, fwd[-1], plan.tolerance))
    grad = np.empty(L)
    back = problem.h @ fwd[L]
    for l in range(L - 1, -1, -1):
        tau_psi = problem.matrix(gens[l]) @ fwd[l + 1]
        grad[l] = 2.0 * np.vdot(back, tau_psi).real
        if l:
            back = problem.evolve(-params[l], gens[l], back, plan.tolerance)
    return grad


def minimize(
    problem: SectorProblem,
    gens,
    x0,
    ansatz="product",
    plan: EvolutionPlan | None = None,
    gtol=DEFAULT_GTOL,
    maxiter=500,
):
    """BFGS energy minimization over the given generators."""
    plan = plan or EvolutionPlan()
    x0 = np.asarray(x0, dtype=float)
    build = problem.product_state if ansatz == "product" else problem.ucc_state
    nev = [0]

    def fun(x):
        nev[0] += 1
        return problem.energy_of(build(x, gens, plan))

    if ansatz == "product" and plan.mode == "exact":
        jac = lambda x: analytic_gradient(problem, x, gens, plan)
    else:
        jac = lambda x: _fd_gradient(fun, x)
    history = []
    res = scipy_minimize(
        fun,
        x0,
        jac=jac,
        method="BFGS",
        callback=lambda xk: history.append(fun(xk)),
        options={"gtol": gtol, "maxiter": maxiter},
    )
    vec = build(res.x, gens, plan)
    return VqeResult(
        energy=problem.energy_of(vec),
        parameters=res.x,
        state=problem.space.embed(vec),
        n_iterations=int(res.nit),
        n_evaluations=nev[0],
        converged=bool(res.success) or res.status == 2,  # 2: line-search stall at gtol scale
        energy_history=history,
    )


def ucc_vqe(hamiltonian, pool, reference: StateVector, nelec, ms2, plan=None, gtol=DEFAULT_GTOL, maxiter=2000):
    """UCC with the full pool as simultaneous generators, zero start."""
    problem = SectorProblem.of(hamiltonian, reference, nelec, ms2)
    return minimize(problem, pool, np.zeros(len(pool)), ansatz="ucc", plan=plan, gtol=gtol, maxiter=maxiter)


# ---------------------------------------------------------------------------
# ADAPT


@dataclass
class AdaptConfig:
    epsilon: float = 1e-3  # convergence threshold on ||R||_2
    batch_size: int = 1
    max_iterations: int = 200
    gtol: float = DEFAULT_GTOL
    maxiter_bfgs: int = 500
    readmit: bool = True  # allow re-selecting an operator already in the ansatz
    plan: EvolutionPlan = field(default_factory=EvolutionPlan)


_PRESET_RE = re.compile(r"^ADAPT\((\d+|X)\)$")


def adapt_preset(name: str, batch_size: int = 1) -> AdaptConfig:
    """ADAPT(m) -> epsilon 10^-m; ADAPT(X) -> epsilon 2e-4."""
    m = _PRESET_RE.match(name.strip())
    if not m:
        raise ValueError(f"unknown preset {name!r}")
    eps = 2e-4 if m.group(1) == "X" else 10.0 ** (-int(m.group(1)))
    return AdaptConfig(epsilon=eps, batch_size=batch_size)


@dataclass
class AnsatzTrace:
    generator_ids: list
    parameters: np.ndarray
    energy: float
    state: StateVector
    energy_history: list
    residual_norms: list
    converged: bool
    generators: list


def pool_gradients(problem: SectorProblem, vec, pool):
    """Pre-estimated gradients R_u = 2 Re <H psi | tau_u psi> for all u."""
    hv = problem.h @ vec
    return np.array([2.0 * np.vdot(hv, problem.matrix(g) @ vec).real for g in pool])


def adapt_vqe(hamiltonian, pool, reference: StateVector, nelec, ms2, config: AdaptConfig | None = None) -> AnsatzTrace:
    """Adaptive ansatz growth with batched gradient selection.

    Each iteration measures R_u over the pool, stops when ||R||_2 < epsilon,
    otherwise appends the batch_size largest-|R_u| operators (zero-initialized)
    and re-optimizes every parameter.
    """
    cfg = config or AdaptConfig()
    problem = SectorProblem.of(hamiltonian, reference, nelec, ms2)
    gens: list = []
    params = np.zeros(0)
    energy_history = [problem.energy_of(problem.ref)]
    residual_norms = []
    converged = False
    for _ in range(cfg.max_iterations):
        vec = problem.product_state(params, gens, cfg.plan)
        grads = pool_gradients(problem, vec, pool)
        if not cfg.readmit:
            taken = {g.id for g in gens}
            grads = np.array([0.0 if g.id in taken else r for g, r in zip(pool, grads)])
        rnorm = float(np.linalg.norm(grads))
        residual_norms.append(rnorm)
        if rnorm < cfg.epsilon:
            converged = True
            break
        order = np.argsort(-np.abs(grads))
        picked = [pool[u] for u in order[: cfg.batch_size] if abs(grads[u]) > 0.0]
        if not picked:
            warnings.warn("ADAPT stalled: no usable operator left in the pool", stacklevel=2)
            break
        gens = gens + picked
        params = np.concatenate([params, np.zeros(len(picked))])
        res = minimize(
            problem, gens, params, ansatz="product", plan=cfg.plan,
            gtol=cfg.gtol, maxiter=cfg.maxiter_bfgs,
        )
        params = res.parameters
        energy_history.append(res.energy)
    vec = problem.product_state(params, gens, cfg.plan)
    return AnsatzTrace(
        generator_ids=[g.id for g in gens],
        parameters=params,
        energy=problem.energy_of(vec),
        state=problem.space.embed(vec),
        energy_history=energy_history,
        residual_norms=residual_norms,
        converged=converged,
        generators=gens,
    )
