"""Projective spin measurements along Bloch-sphere directions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IncompatiblePair, SpecParseError
from .linalg import I2, PAULIS, kron, trace_product
from .states import TwoQubitState

EPS_EXCL = 1e-6
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BlochDirection:
    """Unit direction ``(sin t cos p, sin t sin p, cos t)``.

    ``theta`` is kept in ``[0, pi]`` and ``phi`` in ``[0, 2 pi)``; at the
    poles ``phi`` is forced to 0.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("direction angles must be finite")
        if not (0.0 <= theta <= math.pi):
            raise ValueError(f"theta={theta!r} outside [0, pi]")
        phi = math.fmod(phi, TWO_PI)
        if phi < 0.0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        if theta == 0.0 or theta == math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi + 0.0)

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    @classmethod
    def from_vector(cls, v) -> "BlochDirection":
        x, y, z = (float(c) for c in v)
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise ValueError("cannot take the direction of a zero vector")
        theta = math.atan2(math.hypot(x, y), z)
        phi = math.atan2(y, x) if (x or y) else 0.0
        return cls(theta, phi)

    def observable(self) -> np.ndarray:
        n = self.vector
        return n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]

    def angle_to_axis(self, other: "BlochDirection") -> float:
        """Angle to the nearer of ``+other`` and ``-other``, in ``[0, pi/2]``."""
        a, b = self.vector, other.vector
        return math.atan2(float(np.linalg.norm(np.cross(a, b))), abs(float(a @ b)))


X = BlochDirection(math.pi / 2, 0.0)
Y = BlochDirection(math.pi / 2, math.pi / 2)
Z = BlochDirection(0.0, 0.0)
AXES = {"x": X, "y": Y, "z": Z}


@dataclass(frozen=True)
class MeasurementPair:
    """Two spin observables ``R`` and ``S`` measured on Alice's qubit."""

    r: BlochDirection
    s: BlochDirection

    def check(self, eps: float = EPS_EXCL) -> "MeasurementPair":
        """Raise ``IncompatiblePair`` if ``s`` lies within ``eps`` of ``+-r``."""
        ang = self.s.angle_to_axis(self.r)
        if ang < eps:
            raise IncompatiblePair(
                f"R and S are (anti)parallel: angle {ang:.3e} rad < eps {eps:.1e}"
            )
        return self


def parse_direction(text: str) -> BlochDirection:
    """``x``, ``y``, ``z`` or ``<theta>,<phi>`` in radians."""
    t = text.strip().lower()
    if t in AXES:
        return AXES[t]
    parts = t.split(",")
    if len(parts) != 2:
        raise SpecParseError("direction must be x, y, z or '<theta>,<phi>'", text)
    try:
        theta, phi = float(parts[0]), float(parts[1])
    except ValueError:
        raise SpecParseError("direction angles must be decimal radians", text) from None
    try:
        return BlochDirection(theta, phi)
    except ValueError as exc:
        raise SpecParseError(str(exc), text) from None


def projector(n: BlochDirection, outcome: int) -> np.ndarray:
    """``(I + (-1)^outcome n.sigma) / 2``."""
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    sign = 1.0 if outcome == 0 else -1.0
    return 0.5 * (I2 + sign * n.observable())


def joint_probability(rho: TwoQubitState, na: BlochDirection, a: int,
                      nb: BlochDirection, b: int) -> float:
    """Probability that Alice gets ``a`` along ``na`` and Bob gets ``b`` along ``nb``."""
    return trace_product(kron(projector(na, a), projector(nb, b)), rho.matrix).real


def discord_probability(rho: TwoQubitState, n: BlochDirection) -> float:
    """Probability that both parties measuring along ``n`` get different outcomes."""
    return joint_probability(rho, n, 0, n, 1) + joint_probability(rho, n, 1, n, 0)


def complementarity(r: BlochDirection, s: BlochDirection) -> float:
    """Maximal eigenvector overlap ``max |<a_i|b_j>|^2 = (1 + |r.s|)/2``."""
    d = abs(float(r.vector @ s.vector))
    return 0.5 * (1.0 + min(d, 1.0))
