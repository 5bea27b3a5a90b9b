"""Shared experiment execution: named methods over an integral set.

Method grammar (case-insensitive):

    hf | fci | uccsd | uccgsd
    adapt(<m>)       ADAPT with the GSD pool, epsilon = 10^-m
    adapt(X)         epsilon = 2e-4
    adapt(<m>)-sd    ADAPT with the SD pool
    <any>/qse        diagonalize the general QSE space on the final state
    <any>/qse-sd     same with the SD-truncated space

A leading ``g-`` requests the K2G realification first (an OrbitalSet must be
supplied, e.g. from the built-in models or a supercell dump).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .fci import fci
from .integrals import IntegralSet, build_hamiltonian
from .k2g import k2g_transform
from .pauli import jordan_wigner
from .pool import build_pool
from .qse import build_qse_space, qse
from .sector import SectorSpace
from .state import StateVector, prepare_reference
from .vqe import AdaptConfig, SectorProblem, adapt_preset, minimize

_ADAPT_RE = re.compile(r"^adapt\((\d+|x)\)(-sd)?$", re.IGNORECASE)


@dataclass
class RunResult:
    method: str
    energy: float
    state: StateVector | None = None
    excited_energies: np.ndarray | None = None
    details: dict = field(default_factory=dict)


def run_method(
    integrals: IntegralSet,
    method: str,
    orbitals=None,
    batch_size: int = 1,
    n_states: int = 1,
) -> RunResult:
    name = method.strip()
    details = {}
    if name.lower().startswith("g-"):
        if orbitals is None:
            raise ValueError("K2G method requested but no orbitals supplied")
        integrals, real = k2g_transform(integrals, orbitals)
        details["k2g_imag_residue"] = real.max_imag_residue
        name = name[2:]
    base, _, post = name.partition("/")
    base_l = base.lower()

    ham = jordan_wigner(build_hamiltonian(integrals), integrals.n_qubits)
    ref = integrals.hf_reference()
    refstate = prepare_reference(ref, integrals.n_qubits)
    sector = SectorSpace(integrals.n_qubits, integrals.nelec, integrals.ms2)

    if base_l == "fci":
        spec = fci(ham, integrals.nelec, integrals.ms2, n_states=n_states)
        return RunResult(method, float(spec.energies[0]), spec.states[0],
                         np.asarray(spec.energies), details)

    problem = SectorProblem(ham, refstate, sector)
    if base_l == "hf":
        energy, state = problem.energy_of(problem.ref), refstate
        details["n_parameters"] = 0
    elif base_l in ("uccsd", "uccgsd"):
        pool = build_pool(integrals, "SD" if base_l == "uccsd" else "GSD", ref)
        res = minimize(problem, pool, np.zeros(len(pool)), ansatz="ucc")
        energy, state = res.energy, res.state
        details.update(n_parameters=len(pool), converged=res.converged,
                       n_evaluations=res.n_evaluations)
    else:
        m = _ADAPT_RE.match(base_l)
        if not m:
            raise ValueError(f"unknown method {method!r}")
        cfg = adapt_preset(f"ADAPT({m.group(1).upper()})", batch_size=batch_size)
        pool = build_pool(integrals, "SD" if m.group(2) else "GSD", ref)
        from .vqe import adapt_vqe

        trace = adapt_vqe(ham, pool, refstate, integrals.nelec, integrals.ms2, cfg)
        energy, state = trace.energy, trace.state
        details.update(
            n_parameters=len(trace.parameters),
            n_adapt_iterations=len(trace.residual_norms),
            converged=trace.converged,
            final_residual_norm=trace.residual_norms[-1] if trace.residual_norms else None,
        )

    excited = None
    if post:
        post_l = post.lower()
        if post_l not in ("qse", "qse-sd"):
            raise ValueError(f"unknown post-processing {post!r}")
        trunc = "sd" if post_l == "qse-sd" else "general"
        space = build_qse_space(integrals, ref, truncation=trunc)
        r = qse(ham, space, state, sector)
        k = min(n_states, len(r.energies)) or 1
        energy = float(r.energies[0])
        excited = r.energies[:k]
        details.update(qse_dim=r.dim, qse_rank=r.rank)
    elif n_states > 1:
        excited = np.array([energy])
    return RunResult(method, float(energy), state, excited, details)


def run_scan(build_model, r_values, methods, orbitals_for=None, batch_size=1):
    """Energies and kcal/mol errors vs FCI over a scanned coordinate.

    ``build_model(r) -> IntegralSet``; ``orbitals_for(r) -> OrbitalSet`` is
    only needed when a method carries the ``g-`` prefix.
    """
    from .diagnostics import ScanRow
    from .integrals import hartree_to_kcalmol

    rows = []
    for r in r_values:
        ints = build_model(r)
        orbs = orbitals_for(r) if orbitals_for is not None else None
        e_fci = run_method(ints, "fci").energy
        for method in methods:
            if method.lower() == "fci":
                res_e = e_fci
            else:
                res_e = run_method(ints, method, orbitals=orbs, batch_size=batch_size).energy
            rows.append(ScanRow(float(r), method, res_e, hartree_to_kcalmol(res_e - e_fci)))
    return rows
