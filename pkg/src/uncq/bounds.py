"""Entropic uncertainty lower bounds with quantum memory.

Two families of bound are compared for a fixed two-qubit state:

* the setting-dependent bound ``log2(1/c) + S(A|B)``, and
* the fine-grained bound ``H(p_d^R) + min_S H(p_d^S)``, where ``p_d`` is the
  probability that Alice and Bob measuring the same spin direction disagree.

Also here: the two-player game value and its optimisation over settings,
and the key-rate lower bounds built from either uncertainty bound.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import binary_entropy, cond_entropy_AB, measured_cond_entropy
from .errors import InvalidSpec
from .measure import (
    EPS_EXCL,
    BlochDirection,
    MeasurementPair,
    Z,
    complementarity,
    discord_probability,
    joint_probability,
)
from .optimize import DEFAULT_GRID, maximize_quadratic
from .states import TwoQubitState, correlation_data

WINNING = ("chsh", "anticorrelate")


@dataclass(frozen=True)
class BoundReport:
    """Everything computed for one fine-grained bound evaluation.

    ``r`` is Alice's first observable (fixed in the fixed-R mode, optimised
    in the joint mode); ``argmin_s`` is the optimised second observable and
    ``p_extremal`` its disagreement probability.
    """

    r: BlochDirection
    p_d_r: float
    h_r: float
    argmin_s: BlochDirection
    p_extremal: float
    h_s_min: float
    fg_bound: float
    berta_rhs_at_argmin: float


def pair_entropy_sum(rho: TwoQubitState, r: BlochDirection, s: BlochDirection) -> float:
    """``H(p_d^R) + H(p_d^S)`` with no incompatibility check."""
    return binary_entropy(discord_probability(rho, r)) + binary_entropy(discord_probability(rho, s))


def pair_uncertainty(rho: TwoQubitState, pair: MeasurementPair, eps: float = EPS_EXCL) -> float:
    """Uncertainty ``H(p_d^R) + H(p_d^S)`` of an incompatible pair of observables."""
    pair.check(eps)
    return pair_entropy_sum(rho, pair.r, pair.s)


def berta_rhs(rho: TwoQubitState, pair: MeasurementPair) -> float:
    """``log2(1/c) + S(A|B)``."""
    return float(-math.log2(complementarity(pair.r, pair.s)) + cond_entropy_AB(rho))


def _symmetric_correlations(rho: TwoQubitState) -> np.ndarray:
    t = correlation_data(rho).t
    return 0.5 * (t + t.T)


def extremal_discord(rho: TwoQubitState, exclude: BlochDirection | None = None,
                     eps: float = EPS_EXCL,
                     grid: tuple[int, int] = DEFAULT_GRID) -> tuple[BlochDirection, float]:
    """Direction whose disagreement probability has the least binary entropy.

    The probability of disagreeing along ``n`` is ``(1 - n.T.n)/2`` with
    ``T`` the symmetrised correlation matrix, so minimising its entropy means
    pushing ``|n.T.n|`` as high as the search space allows. The search space
    is the sphere minus the cap of radius ``eps`` around ``+-exclude``.

    Returns the direction and its disagreement probability (evaluated with
    the trace formula, not the quadratic form).
    """
    opt = maximize_quadratic(_symmetric_correlations(rho), exclude, eps, grid)
    return opt.direction, discord_probability(rho, opt.direction)


def _report(rho: TwoQubitState, r: BlochDirection, s: BlochDirection, p_s: float) -> BoundReport:
    p_r = discord_probability(rho, r)
    h_r = binary_entropy(p_r)
    h_s = binary_entropy(p_s)
    return BoundReport(
        r=r,
        p_d_r=p_r,
        h_r=h_r,
        argmin_s=s,
        p_extremal=p_s,
        h_s_min=h_s,
        fg_bound=h_r + h_s,
        berta_rhs_at_argmin=berta_rhs(rho, MeasurementPair(r, s)),
    )


def fine_grained_bound(rho: TwoQubitState, r: BlochDirection = Z, eps: float = EPS_EXCL,
                       grid: tuple[int, int] = DEFAULT_GRID) -> BoundReport:
    """Fine-grained bound with Alice's first observable fixed to ``r``."""
    s, p_s = extremal_discord(rho, r, eps, grid)
    return _report(rho, r, s, p_s)


def joint_fine_grained(rho: TwoQubitState, eps: float = EPS_EXCL,
                       grid: tuple[int, int] = DEFAULT_GRID) -> BoundReport:
    """Fine-grained bound minimised over both observables.

    For any ``r`` the inner minimum over ``s`` is the unconstrained minimum
    unless ``r`` sits inside the cap around that minimiser, so the nested
    problem reduces to: take the global minimiser as ``s``, then the best
    ``r`` outside the cap around ``s``. The residual error is second order
    in ``eps``.
    """
    s, p_s = extremal_discord(rho, None, 0.0, grid)
    r, _ = extremal_discord(rho, s, eps, grid)
    return _report(rho, r, s, p_s)


@dataclass(frozen=True)
class GameSpec:
    """Settings, priors and winning rule for a two-player binary game.

    ``winning`` is ``"chsh"`` (win iff ``a xor b == t_A t_B``, at most two
    settings per side) or ``"anticorrelate"`` (win iff ``a != b``).
    """

    alice_settings: tuple[BlochDirection, ...]
    bob_settings: tuple[BlochDirection, ...]
    priors: np.ndarray = field(default=None, compare=False)
    winning: str = "chsh"

    def __post_init__(self):
        object.__setattr__(self, "alice_settings", tuple(self.alice_settings))
        object.__setattr__(self, "bob_settings", tuple(self.bob_settings))
        na, nb = len(self.alice_settings), len(self.bob_settings)
        if na == 0 or nb == 0:
            raise InvalidSpec("setting lists must be nonempty")
        if self.winning not in WINNING:
            raise InvalidSpec(f"unknown winning rule {self.winning!r}")
        if self.winning == "chsh" and (na > 2 or nb > 2):
            raise InvalidSpec("chsh rule takes at most two settings per side")
        priors = self.priors
        if priors is None:
            priors = np.full((na, nb), 1.0 / (na * nb))
        priors = np.array(priors, dtype=float)
        if priors.shape != (na, nb):
            raise InvalidSpec(f"priors shape {priors.shape} != ({na}, {nb})")
        if np.any(priors < 0) or abs(priors.sum() - 1.0) > 1e-12:
            raise InvalidSpec("priors must be nonnegative and sum to 1")
        priors.setflags(write=False)
        object.__setattr__(self, "priors", priors)

    def wins(self, a: int, b: int, ta: int, tb: int) -> bool:
        if self.winning == "chsh":
            return (a ^ b) == (ta & tb)
        return a != b


def game_value(rho: TwoQubitState, spec: GameSpec) -> float:
    """Winning probability ``sum p(tA,tB) sum_{a,b} V(a,b|tA,tB) P(a,b|tA,tB)``."""
    total = 0.0
    for ta, na in enumerate(spec.alice_settings):
        for tb, nb in enumerate(spec.bob_settings):
            w = spec.priors[ta, tb]
            if w == 0.0:
                continue
            for a, b in itertools.product((0, 1), repeat=2):
                if spec.wins(a, b, ta, tb):
                    total += w * joint_probability(rho, na, a, nb, b)
    return total


def _sign_matrix(winning: str) -> np.ndarray:
    # win probability = 1/2 + 1/8 sum_ij s_ij a_i.T.b_j for uniform 2x2 priors
    if winning == "chsh":
        return np.array([[1.0, 1.0], [1.0, -1.0]])
    return -np.ones((2, 2))


def _unit(v: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    nv = np.linalg.norm(v)
    return fallback if nv < 1e-300 else v / nv


def _direction_grid(n_theta: int = 7, n_phi: int = 12) -> np.ndarray:
    dirs = [np.array([0.0, 0.0, 1.0])]
    for th in np.linspace(0.0, np.pi, n_theta)[1:-1]:
        for ph in 2 * np.pi * np.arange(n_phi) / n_phi:
            dirs.append(np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]))
    dirs.append(np.array([0.0, 0.0, -1.0]))
    return np.array(dirs)


def game_max(rho: TwoQubitState, winning: str = "chsh",
             tol: float = 1e-15, max_iter: int = 10_000) -> tuple[GameSpec, float]:
    """Best two-settings-per-side strategy for a fixed state and uniform priors.

    Bob's settings are seeded from the best pair on a coarse direction grid
    (Alice's settings are optimal in closed form for given Bob settings),
    then the two sides are alternately re-optimised until the value stops
    increasing. Every step is monotone, so the result is at least the best
    grid value.
    """
    if winning not in WINNING:
        raise InvalidSpec(f"unknown winning rule {winning!r}")
    t = correlation_data(rho).t
    s = _sign_matrix(winning)
    d = _direction_grid()
    tb = d @ t.T  # rows: T b for each grid direction
    # value for Bob pair (j, k) with optimal Alice: 1/2 + 1/8 sum_i |sum_l s_il T b_l|
    v0 = tb[:, None, :] * s[0, 0] + tb[None, :, :] * s[0, 1]
    v1 = tb[:, None, :] * s[1, 0] + tb[None, :, :] * s[1, 1]
    vals = np.linalg.norm(v0, axis=-1) + np.linalg.norm(v1, axis=-1)
    j, k = divmod(int(np.argmax(vals)), len(d))
    b = [d[j], d[k]]
    a = [d[0], d[0]]
    best = -np.inf
    for _ in range(max_iter):
        a = [_unit(t @ (s[i, 0] * b[0] + s[i, 1] * b[1]), a[i]) for i in range(2)]
        b = [_unit(t.T @ (s[0, l] * a[0] + s[1, l] * a[1]), b[l]) for l in range(2)]
        val = 0.5 + 0.125 * sum(s[i, l] * a[i] @ t @ b[l] for i in range(2) for l in range(2))
        if val <= best + tol:
            best = max(best, val)
            break
        best = val
    spec = GameSpec(
        tuple(BlochDirection.from_vector(x) for x in a),
        tuple(BlochDirection.from_vector(x) for x in b),
        winning=winning,
    )
    return spec, game_value(rho, spec)


def key_rate_berta(rho: TwoQubitState, pair: MeasurementPair) -> float:
    """``log2(1/c) - S(R|B) - S(S|B)``."""
    return (-math.log2(complementarity(pair.r, pair.s))
            - measured_cond_entropy(rho, pair.r)
            - measured_cond_entropy(rho, pair.s))


def key_rate_fine_grained(rho: TwoQubitState, pair: MeasurementPair, eps: float = EPS_EXCL,
                          grid: tuple[int, int] = DEFAULT_GRID) -> float:
    """``log2(1/c) - min_{R,S} [H(p_d^R) + H(p_d^S)]``."""
    return -math.log2(complementarity(pair.r, pair.s)) - joint_fine_grained(rho, eps, grid).fg_bound
