"""Command line entry points: export-kpoint and export-supercell.

Both take the same flags and differ only in which file they write:

    export-kpoint    --R 1.0 --mesh 1,1,4 --basis szv --pp gth-pade --out chain.pfcidump
    export-supercell --R 1.0 --mesh 1,1,4 --basis szv --pp gth-pade --out chain.psup

--engine selects the mean-field backend: 'pyscf' (real chemistry, requires
pyscf), 'model' (built-in analytic surrogate), or 'auto' (pyscf if
importable, else model; the choice is reported on stderr).
"""

from __future__ import annotations

import argparse
import sys

from .chain import ChainSpec
from .dumps import write_pfcidump, write_supercell_dump


def _parser(prog):
    ap = argparse.ArgumentParser(prog=prog, description=__doc__.splitlines()[0])
    ap.add_argument("--R", type=float, required=True, help="bond length in Angstrom")
    ap.add_argument("--mesh", default="1,1,4", help="k-mesh as a,b,c")
    ap.add_argument("--basis", default="szv")
    ap.add_argument("--pp", default="gth-pade")
    ap.add_argument("--out", required=True)
    ap.add_argument("--engine", choices=("auto", "pyscf", "model"), default="auto")
    return ap


def _solve(args):
    try:
        mesh = tuple(int(m) for m in args.mesh.split(","))
        spec = ChainSpec(r=args.R, mesh=mesh, basis=args.basis, pp=args.pp)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    engine = args.engine
    if engine == "auto":
        try:
            import pyscf  # noqa: F401
            engine = "pyscf"
        except ImportError:
            engine = "model"
        sys.stderr.write(f"engine: {engine}\n")
    if engine == "pyscf":
        from . import pyscf_engine
        try:
            return pyscf_engine.solve(spec)
        except RuntimeError as exc:
            raise SystemExit(f"error: {exc}")
    from . import model_engine
    try:
        return model_engine.solve(spec)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


def main_kpoint(argv=None):
    args = _parser("export-kpoint").parse_args(argv)
    data = _solve(args)
    write_pfcidump(data, args.out)
    sys.stdout.write(
        "wrote %s: norb=%d nelec=%d nkpt=%d e_hf=%.10f\n"
        % (args.out, data.norb, data.nelec, len(data.kpoints), data.e_hf)
    )
    return 0


def main_supercell(argv=None):
    args = _parser("export-supercell").parse_args(argv)
    data = _solve(args)
    write_supercell_dump(data, args.out)
    sys.stdout.write(
        "wrote %s: nbasis=%d norb=%d nocc=%d\n"
        % (args.out, data.nbasis, data.norb, data.n_occ)
    )
    return 0
