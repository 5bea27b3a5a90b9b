"""Command line interface.

Subcommands:
    run       single-point calculation from an INI config
    scan      scan a model parameter, write a deterministic CSV
    validate  check a PFCIDUMP file against the format invariants
    k2g       realify a k-point PFCIDUMP using a supercell orbital dump
    fci       exact sector energies of a PFCIDUMP Hamiltonian

The KVQE_THREADS environment variable caps the BLAS/OpenMP thread count;
results are bitwise independent of it.
"""

import os

_threads = os.environ.get("KVQE_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                 "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import argparse
import configparser
import sys

import numpy as np


def _load_config(path):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cp.read(path)
    if not read:
        raise SystemExit(f"error: cannot read config {path!r}")
    return cp


def _build_model(cp, overrides=None):
    from .integrals import load_pfcidump
    from .models import build_ssh_hubbard, ssh_hubbard_orbitals

    model = dict(cp["model"]) if cp.has_section("model") else {}
    model.update(overrides or {})
    mtype = model.get("type", "ssh-hubbard")
    if mtype == "pfcidump":
        ints = load_pfcidump(model["path"])
        return ints, None
    if mtype != "ssh-hubbard":
        raise SystemExit(f"error: unknown model type {mtype!r}")
    ncell = int(model.get("ncell", 2))
    t1 = float(model.get("t1", 1.0))
    t2 = float(model.get("t2", 0.6))
    u = float(model.get("u", 2.0))
    basis = model.get("basis", "band")
    ints = build_ssh_hubbard(ncell, t1, t2, u, basis=basis)
    orbs = ssh_hubbard_orbitals(ncell, t1, t2) if basis == "band" else None
    return ints, orbs


def _print_resolved(cp, out):
    out.write("# resolved configuration\n")
    for section in cp.sections():
        out.write(f"[{section}]\n")
        for key, val in cp.items(section):
            out.write(f"{key} = {val}\n")
    out.write("\n")


def cmd_run(args):
    from .integrals import hartree_to_kcalmol
    from .runner import run_method

    cp = _load_config(args.config)
    ints, orbs = _build_model(cp)
    method = cp.get("method", "name", fallback="adapt(3)")
    batch = cp.getint("method", "batch_size", fallback=1)
    n_states = cp.getint("method", "n_states", fallback=1)
    out = sys.stdout
    _print_resolved(cp, out)
    res = run_method(ints, method, orbitals=orbs, batch_size=batch, n_states=n_states)
    e_fci = run_method(ints, "fci").energy
    out.write(f"method            {res.method}\n")
    out.write(f"basis             {ints.basis_label}\n")
    out.write(f"energy_hartree    {res.energy:.10f}\n")
    out.write(f"fci_hartree       {e_fci:.10f}\n")
    out.write(f"error_kcalmol     {hartree_to_kcalmol(res.energy - e_fci):.6f}\n")
    for key, val in sorted(res.details.items()):
        out.write(f"{key}  {val}\n")
    if res.excited_energies is not None and len(res.excited_energies) > 1:
        for j, e in enumerate(res.excited_energies):
            out.write(f"state_{j}  {e:.10f}\n")
    return 0


def cmd_scan(args):
    from .diagnostics import write_scan_csv
    from .runner import run_scan

    cp = _load_config(args.config)
    if not cp.has_section("scan"):
        raise SystemExit("error: config has no [scan] section")
    param = cp.get("scan", "parameter", fallback="t2")
    values = [float(v) for v in cp.get("scan", "values").split(",")]
    methods = [m.strip() for m in cp.get("scan", "methods").split(",")]
    batch = cp.getint("method", "batch_size", fallback=1) if cp.has_section("method") else 1

    def build(r):
        ints, _ = _build_model(cp, overrides={param: repr(r)})
        return ints

    def orbitals_for(r):
        _, orbs = _build_model(cp, overrides={param: repr(r)})
        return orbs

    rows = run_scan(build, values, methods, orbitals_for=orbitals_for, batch_size=batch)
    write_scan_csv(rows, args.out)
    sys.stdout.write(f"wrote {len(rows)} rows to {args.out}\n")
    return 0


def cmd_validate(args):
    from .integrals import PfcidumpError, load_pfcidump

    try:
        ints = load_pfcidump(args.pfcidump)
    except PfcidumpError as exc:
        sys.stderr.write(f"INVALID: {exc}\n")
        return 1
    sys.stdout.write(
        "OK: norb=%d nelec=%d ms2=%d nkpt=%d ecore=%.10g\n"
        % (ints.norb, ints.nelec, ints.ms2, ints.kmesh.nkpt, ints.ecore)
    )
    return 0


def cmd_k2g(args):
    from .integrals import load_pfcidump, write_pfcidump
    from .k2g import k2g_transform, load_supercell_dump

    ints = load_pfcidump(args.pfcidump)
    orbs = load_supercell_dump(args.supercell)
    rotated, result = k2g_transform(ints, orbs)
    write_pfcidump(rotated, args.out)
    sys.stdout.write(
        "wrote %s (max imaginary residue %.3e)\n" % (args.out, result.max_imag_residue)
    )
    for msg in result.diagnostics:
        sys.stdout.write(f"note: {msg}\n")
    return 0


def cmd_fci(args):
    from .fci import fci as run_fci
    from .integrals import build_hamiltonian, load_pfcidump
    from .pauli import jordan_wigner

    ints = load_pfcidump(args.pfcidump)
    nelec = args.nelec if args.nelec is not None else ints.nelec
    ms2 = args.ms2 if args.ms2 is not None else ints.ms2
    ham = jordan_wigner(build_hamiltonian(ints), ints.n_qubits)
    spec = run_fci(ham, nelec, ms2, n_states=args.states)
    sys.stdout.write(f"sector nelec={nelec} ms2={ms2} dim={spec.dim}\n")
    for j, e in enumerate(spec.energies):
        sys.stdout.write(f"state_{j}  {e:.10f}\n")
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="kvqe", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single-point calculation from an INI config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("scan", help="parameter scan, CSV output")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("validate", help="validate a PFCIDUMP file")
    p.add_argument("pfcidump")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("k2g", help="realify a k-point PFCIDUMP")
    p.add_argument("--pfcidump", required=True)
    p.add_argument("--supercell", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_k2g)

    p = sub.add_parser("fci", help="exact sector energies of a PFCIDUMP")
    p.add_argument("pfcidump")
    p.add_argument("--nelec", type=int)
    p.add_argument("--ms2", type=int)
    p.add_argument("--states", type=int, default=1)
    p.set_defaults(func=cmd_fci)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
