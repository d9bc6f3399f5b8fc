"""Shannon and von Neumann entropies (base 2) and quantum-memory conditionals."""
from __future__ import annotations

import math

import numpy as np

from .errors import NotDensity, ParameterOutOfRange
from .linalg import I2, eigvalsh, is_density, kron, partial_trace
from .measure import BlochDirection, projector
from .states import TwoQubitState

CLAMP = 1e-9


def binary_entropy(p: float) -> float:
    """``-p log2 p - (1-p) log2 (1-p)``; values within 1e-9 outside [0, 1] are clamped."""
    p = float(p)
    if not (-CLAMP <= p <= 1.0 + CLAMP):
        raise ParameterOutOfRange(f"probability {p!r} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def shannon(probs) -> float:
    h = 0.0
    for p in probs:
        if p > 0.0:
            h -= p * math.log2(p)
    return h


def von_neumann(rho) -> float:
    """``-Tr rho log2 rho`` from the spectrum.

    Eigenvalues in ``[-1e-9, 0)`` are treated as rounding and set to zero.
    """
    m = rho.matrix if isinstance(rho, TwoQubitState) else np.asarray(rho, dtype=complex)
    if not is_density(m, CLAMP):
        raise NotDensity("von Neumann entropy needs a density matrix")
    lam = np.clip(eigvalsh(m, CLAMP), 0.0, 1.0)
    return shannon(lam)


def cond_entropy_AB(rho: TwoQubitState) -> float:
    """``S(A|B) = S(rho_AB) - S(rho_B)``."""
    return von_neumann(rho.matrix) - von_neumann(partial_trace(rho.matrix, "B"))


def post_measurement(rho: TwoQubitState, n: BlochDirection) -> TwoQubitState:
    """State after Alice measures along ``n`` and forgets nothing: ``sum_j (P_j x I) rho (P_j x I)``."""
    out = np.zeros((4, 4), dtype=complex)
    for j in (0, 1):
        k = kron(projector(n, j), I2)
        out += k @ rho.matrix @ k
    return TwoQubitState(out, f"dephased[{rho.label}]")


def measured_cond_entropy(rho: TwoQubitState, n: BlochDirection) -> float:
    """``S(R|B)`` for Alice's spin measurement along ``n``."""
    return cond_entropy_AB(post_measurement(rho, n))
