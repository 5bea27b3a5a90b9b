"""Geometry/job specification for the 1D hydrogen chain export."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ChainSpec:
    """Two hydrogen atoms per unit cell on a line, bond length ``r`` (Angstrom),
    lattice vector ``2 r`` along the chain, large transverse vacuum."""

    r: float
    mesh: tuple = (1, 1, 4)
    basis: str = "szv"
    pp: str = "gth-pade"
    vacuum: float = 20.0  # Angstrom of transverse padding
    atoms_per_cell: int = 2

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"bond length must be positive, got {self.r}")
        if len(self.mesh) != 3 or any(int(m) < 1 for m in self.mesh):
            raise ValueError(f"mesh components must be >= 1, got {self.mesh}")
        object.__setattr__(self, "mesh", tuple(int(m) for m in self.mesh))

    @property
    def nkpt(self) -> int:
        return self.mesh[0] * self.mesh[1] * self.mesh[2]

    @property
    def lattice(self) -> float:
        return 2.0 * self.r
