"""Seeded randomized invariant suites behind ``uncq verify``.

Trial ``k`` of a run with seed ``s`` uses ``random_density(s + k)`` as its
state and ``numpy.random.default_rng([s, k])`` for every other draw, so any
reported failure can be replayed in isolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bounds, entropy, linalg, measure, states
from .measure import BlochDirection, MeasurementPair

BELL_SIGNS = np.array([
    [-1.0, -1.0, -1.0],  # psi-
    [-1.0, 1.0, 1.0],    # phi-
    [1.0, -1.0, 1.0],    # phi+
    [1.0, 1.0, -1.0],    # psi+
])


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, detail: Callable[[], str]):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(detail())


def random_direction(rng: np.random.Generator) -> BlochDirection:
    v = rng.standard_normal(3)
    return BlochDirection.from_vector(v / np.linalg.norm(v))


def random_pair(rng: np.random.Generator, eps: float = 1e-3) -> MeasurementPair:
    while True:
        pair = MeasurementPair(random_direction(rng), random_direction(rng))
        if pair.s.angle_to_axis(pair.r) >= eps:
            return pair


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_zero_bloch_state(rng: np.random.Generator) -> states.TwoQubitState:
    """Locally rotated Bell-diagonal state: marginals stay maximally mixed."""
    w = rng.dirichlet(np.ones(4))
    c = w @ BELL_SIGNS
    base = states.mmm(*c).matrix
    u = linalg.kron(random_unitary(rng), random_unitary(rng))
    return states.TwoQubitState(u @ base @ u.conj().T, "rotated-mmm")


def _trial(seed: int, k: int, tol: float, results: dict[str, SuiteResult], eps: float):
    rng = np.random.default_rng([seed, k])
    rho = states.random_density(seed + k)
    tag = f"seed={seed} trial={k} state={rho.label}"

    def rec(name, ok, detail):
        results.setdefault(name, SuiteResult(name)).record(bool(ok), lambda: f"{tag}: {detail()}")

    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h = g + g.conj().T
    w, v = linalg.hermitian_eigen(h)
    resid = float(np.max(np.abs(h - (v * w) @ v.conj().T)))
    ortho = float(np.max(np.abs(v.conj().T @ v - np.eye(4))))
    rec("eigen_reconstruction", resid <= 1e-10 and ortho <= 1e-10 and np.all(np.diff(w) >= 0),
        lambda: f"residual={resid:.3e} orthonormality={ortho:.3e}")

    lam_min = float(linalg.eigvalsh(rho.matrix)[0])
    rec("random_density", linalg.is_density(rho.matrix, 1e-9) and lam_min >= -1e-12,
        lambda: f"min eigenvalue={lam_min:.3e}")

    pair = random_pair(rng)
    r, s = pair.r, pair.s
    probs = [measure.joint_probability(rho, r, a, s, b) for a in (0, 1) for b in (0, 1)]
    rec("outcome_distribution", min(probs) >= -1e-12 and abs(sum(probs) - 1.0) <= 1e-12,
        lambda: f"probabilities={probs}")

    t = states.correlation_data(rho).t
    ts = 0.5 * (t + t.T)
    pd_r = measure.discord_probability(rho, r)
    pd_s = measure.discord_probability(rho, s)
    quad = 0.5 * (1.0 - r.vector @ ts @ r.vector)
    rec("discord_quadratic_form", abs(pd_r - quad) <= 1e-10,
        lambda: f"trace={pd_r!r} quadratic={quad!r}")

    c = measure.complementarity(r, s)
    vr = linalg.hermitian_eigen(r.observable()).eigenvectors
    vs = linalg.hermitian_eigen(s.observable()).eigenvectors
    c_bf = float(np.max(np.abs(vr.conj().T @ vs) ** 2))
    rec("complementarity_bruteforce", abs(c - c_bf) <= 1e-10,
        lambda: f"closed={c!r} bruteforce={c_bf!r}")

    lhs = entropy.binary_entropy(pd_r) + entropy.binary_entropy(pd_s)
    s_rb = entropy.measured_cond_entropy(rho, r)
    s_sb = entropy.measured_cond_entropy(rho, s)
    rec("fano_chain", lhs >= s_rb + s_sb - tol,
        lambda: f"H(p_R)+H(p_S)={lhs!r} S(R|B)+S(S|B)={s_rb + s_sb!r}")
    s_ab = entropy.cond_entropy_AB(rho)
    rhs = -math.log2(c) + s_ab
    rec("berta_relation", s_rb + s_sb >= rhs - tol,
        lambda: f"S(R|B)+S(S|B)={s_rb + s_sb!r} log2(1/c)+S(A|B)={rhs!r}")
    unc = bounds.pair_uncertainty(rho, pair)
    b_rhs = bounds.berta_rhs(rho, pair)
    rec("fano_form_bound", unc >= b_rhs - tol, lambda: f"lhs={unc!r} rhs={b_rhs!r}")
    rec("measured_cond_nonnegative", min(s_rb, s_sb) >= -tol,
        lambda: f"S(R|B)={s_rb!r} S(S|B)={s_sb!r}")

    s_rho = entropy.von_neumann(rho)
    s_deph = entropy.von_neumann(entropy.post_measurement(rho, r))
    rec("dephasing_monotone", s_deph >= s_rho - tol,
        lambda: f"S(dephased)={s_deph!r} S(rho)={s_rho!r}")

    rep = bounds.fine_grained_bound(rho, r, eps)
    rec("fine_grained_dominance", rep.fg_bound >= rep.berta_rhs_at_argmin - tol,
        lambda: f"fg={rep.fg_bound!r} berta_at_argmin={rep.berta_rhs_at_argmin!r}")
    worst = math.inf
    for _ in range(5):
        probe = random_direction(rng)
        if probe.angle_to_axis(r) < eps:
            continue
        worst = min(worst, bounds.pair_entropy_sum(rho, r, probe) - rep.fg_bound)
    rec("fine_grained_minimality", worst >= -1e-8, lambda: f"probe slack={worst!r}")

    zb = random_zero_bloch_state(rng)
    _, p_opt = bounds.extremal_discord(zb, None, 0.0)
    tz = states.correlation_data(zb).t
    lam = np.linalg.eigvalsh(0.5 * (tz + tz.T))
    lam_star = lam[np.argmax(np.abs(lam))]
    h_opt = entropy.binary_entropy(p_opt)
    h_oracle = entropy.binary_entropy(0.5 * (1.0 - lam_star))
    rec("optimizer_eigen_oracle", abs(h_opt - h_oracle) <= 1e-6 and
        min(abs(p_opt - 0.5 * (1 - lam_star)), abs(p_opt - 0.5 * (1 + lam_star))) <= 1e-6,
        lambda: f"optimizer p={p_opt!r} oracle p={0.5 * (1 - lam_star)!r}")

    spec = bounds.GameSpec((r,), (r,), winning="anticorrelate")
    gv = bounds.game_value(rho, spec)
    rec("game_discord_consistency", abs(gv - pd_r) <= 1e-12,
        lambda: f"game={gv!r} discord={pd_r!r}")

    kfg = bounds.key_rate_fine_grained(rho, pair, eps)
    rec("key_rate_cap", kfg <= -math.log2(c) + 1e-12,
        lambda: f"key_rate_fine_grained={kfg!r} log2(1/c)={-math.log2(c)!r}")


def run(trials: int, seed: int = 0, tol: float = 1e-9,
        eps: float = measure.EPS_EXCL) -> list[SuiteResult]:
    """Run every suite over ``trials`` seeded draws; results in first-seen order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    results: dict[str, SuiteResult] = {}
    for k in range(trials):
        _trial(seed, k, tol, results, eps)
    return list(results.values())
