"""VQE/ADAPT-VQE simulator for periodic electronic-structure Hamiltonians."""

__version__ = "0.1.0"
