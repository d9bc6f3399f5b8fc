"""Two-qubit states used throughout: Bell states and their mixtures, states
with maximally mixed marginals, Werner states and seeded random states.

Qubit ordering is ``|a b>`` with Alice's qubit as the most significant
index, so ``kron(A_op, B_op)`` acts as ``A_op`` on Alice and ``B_op`` on Bob.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import NotDensity, ParameterOutOfRange, SpecParseError, UnphysicalParameters
from .linalg import I2, I4, PAULIS, is_density, kron, partial_trace, trace_product

_SQ = 1.0 / math.sqrt(2.0)
BELL_KETS = {
    "phi+": np.array([_SQ, 0, 0, _SQ], dtype=complex),
    "phi-": np.array([_SQ, 0, 0, -_SQ], dtype=complex),
    "psi+": np.array([0, _SQ, _SQ, 0], dtype=complex),
    "psi-": np.array([0, _SQ, -_SQ, 0], dtype=complex),
}


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """A validated 4x4 density matrix plus a label naming its construction."""

    matrix: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise NotDensity(f"two-qubit state must be 4x4, got {m.shape}")
        if not is_density(m, 1e-9):
            raise NotDensity(f"matrix for {self.label or 'state'} is not a density matrix")
        m = 0.5 * (m + m.conj().T)
        m /= np.trace(m).real
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def marginal(self, keep: str) -> np.ndarray:
        return partial_trace(self.matrix, keep)

    def __repr__(self):
        return f"TwoQubitState({self.label!r})"


class CorrelationData(NamedTuple):
    t: np.ndarray
    bloch_a: np.ndarray
    bloch_b: np.ndarray


def _pure(ket: np.ndarray) -> np.ndarray:
    return np.outer(ket, ket.conj())


def bell(kind: str) -> TwoQubitState:
    try:
        ket = BELL_KETS[kind]
    except KeyError:
        raise ParameterOutOfRange(
            f"unknown Bell state {kind!r}; expected one of {', '.join(BELL_KETS)}"
        ) from None
    return TwoQubitState(_pure(ket), f"bell:{kind}")


def _check_unit(name: str, p: float) -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ParameterOutOfRange(f"{name}={p!r} outside [0, 1]")
    return p


def bell_diagonal_mix(p: float) -> TwoQubitState:
    """``p |phi+><phi+| + (1 - p) |psi-><psi-|``."""
    p = _check_unit("p", p)
    m = p * _pure(BELL_KETS["phi+"]) + (1.0 - p) * _pure(BELL_KETS["psi-"])
    return TwoQubitState(m, f"belldiag:p={p!r}")


def mmm_spectrum(c1: float, c2: float, c3: float) -> tuple[float, float, float, float]:
    """Eigenvalues of ``(I + sum c_i s_i x s_i)/4`` on psi-, phi-, phi+, psi+."""
    return (
        (1 - c1 - c2 - c3) / 4,
        (1 - c1 + c2 + c3) / 4,
        (1 + c1 - c2 + c3) / 4,
        (1 + c1 + c2 - c3) / 4,
    )


_MMM_EIG_NAMES = ("(1-c1-c2-c3)/4", "(1-c1+c2+c3)/4", "(1+c1-c2+c3)/4", "(1+c1+c2-c3)/4")


def mmm(c1: float, c2: float, c3: float) -> TwoQubitState:
    """Two-qubit state with maximally mixed marginals and correlations ``c``.

    Physicality is checked on the Bell-basis spectrum; the error names the
    first eigenvalue that leaves ``[-1e-12, 1]``.
    """
    c = (float(c1), float(c2), float(c3))
    for name, lam in zip(_MMM_EIG_NAMES, mmm_spectrum(*c)):
        if not (-1e-12 <= lam <= 1.0):
            raise UnphysicalParameters(
                f"eigenvalue {name} = {lam:.6g} is outside [0, 1] for c = {c}"
            )
    m = I4.copy()
    for ci, s in zip(c, PAULIS):
        m += ci * kron(s, s)
    m /= 4.0
    return TwoQubitState(m, f"mmm:c1={c[0]!r},c2={c[1]!r},c3={c[2]!r}")


def werner(p: float) -> TwoQubitState:
    """``(1 - p)/4 I + p |psi-><psi-|`` for ``p`` in ``[0, 1]``."""
    p = _check_unit("p", p)
    m = (1.0 - p) / 4.0 * I4 + p * _pure(BELL_KETS["psi-"])
    return TwoQubitState(m, f"werner:p={p!r}")


def random_density(seed: int) -> TwoQubitState:
    """Seeded random state ``G G^dag / Tr(G G^dag)``.

    ``G`` has independent standard-normal real and imaginary parts drawn
    from ``numpy.random.default_rng(seed)`` (PCG64), real parts first.
    """
    if int(seed) < 0:
        raise ParameterOutOfRange(f"seed must be non-negative, got {seed}")
    rng = np.random.default_rng(int(seed))
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return TwoQubitState(m, f"random:seed={int(seed)}")


def product_state(rho_a, rho_b, label: str = "product") -> TwoQubitState:
    return TwoQubitState(kron(rho_a, rho_b), label)


def maximally_mixed() -> TwoQubitState:
    return TwoQubitState(I4 / 4.0, "mixed")


def correlation_data(rho: TwoQubitState) -> CorrelationData:
    """Correlation matrix ``t[i][j] = Tr[rho (s_i x s_j)]`` and both Bloch vectors."""
    m = rho.matrix
    t = np.array([[trace_product(kron(si, sj), m).real for sj in PAULIS] for si in PAULIS])
    a = np.array([trace_product(kron(s, I2), m).real for s in PAULIS])
    b = np.array([trace_product(kron(I2, s), m).real for s in PAULIS])
    return CorrelationData(t, a, b)


_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"^{_REAL}$")


def _parse_params(body: str, names: tuple[str, ...], whole: str) -> dict[str, float]:
    found: dict[str, float] = {}
    for item in body.split(","):
        key, sep, val = item.partition("=")
        key = key.strip()
        val = val.strip()
        if not sep or key not in names:
            raise SpecParseError("unexpected parameter", item)
        if key in found:
            raise SpecParseError("duplicate parameter", item)
        if not _REAL_RE.match(val):
            raise SpecParseError("not a decimal number", val)
        found[key] = float(val)
    for name in names:
        if name not in found:
            raise SpecParseError(f"missing parameter {name!r} in", whole)
    return found


def parse_state(spec: str) -> TwoQubitState:
    """Build a state from a CLI specification string.

    Accepted forms::

        bell:phi+|phi-|psi+|psi-
        belldiag:p=<real>
        mmm:c1=<real>,c2=<real>,c3=<real>
        werner:p=<real>
        random:seed=<uint>

    Raises ``SpecParseError`` for malformed text and a ``StateError`` for
    well-formed but unphysical parameters.
    """
    family, sep, body = spec.strip().partition(":")
    if not sep:
        raise SpecParseError("state spec needs '<family>:<params>'", spec)
    if family == "bell":
        if body not in BELL_KETS:
            raise SpecParseError("unknown Bell state", body)
        return bell(body)
    if family == "belldiag":
        return bell_diagonal_mix(_parse_params(body, ("p",), spec)["p"])
    if family == "werner":
        return werner(_parse_params(body, ("p",), spec)["p"])
    if family == "mmm":
        c = _parse_params(body, ("c1", "c2", "c3"), spec)
        return mmm(c["c1"], c["c2"], c["c3"])
    if family == "random":
        key, sep, val = body.partition("=")
        if key != "seed" or not sep:
            raise SpecParseError("expected seed=<uint>", body)
        if not val.isdigit():
            raise SpecParseError("seed must be an unsigned integer", val)
        return random_density(int(val))
    raise SpecParseError("unknown state family", family)
