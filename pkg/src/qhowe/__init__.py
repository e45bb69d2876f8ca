"""Quantum Schur and iSchur algebras: Fock spaces, coordinate algebras and Howe duality checks."""

__version__ = "0.1.0"
