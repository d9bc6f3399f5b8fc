"""Entropic uncertainty bounds for two-qubit states with quantum memory."""
