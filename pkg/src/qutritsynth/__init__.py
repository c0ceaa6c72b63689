"""Exact synthesis of single-qutrit Clifford+R unitaries over the Eisenstein integers."""

__version__ = "0.1.0"
