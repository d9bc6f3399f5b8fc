"""Pure-Python implementations of the hot kernels.

These mirror ``uncq._ckernels`` one for one and are used whenever the
compiled extension is unavailable (or ``UNCQ_PURE_PYTHON=1`` is set).
"""
from __future__ import annotations

import math

import numpy as np


def jacobi_eigh(h: np.ndarray, max_sweeps: int = 50, rel_tol: float = 1e-14):
    """Cyclic complex Jacobi diagonalisation of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues in the
    order they appear on the final diagonal (unsorted). ``sweeps`` is -1 if
    the budget ran out before convergence.
    """
    n = h.shape[0]
    a = [[complex(h[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]

    fro2 = sum(abs(x) ** 2 for row in a for x in row)
    thresh2 = (rel_tol * rel_tol) * fro2

    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += 2.0 * (a[p][q].real ** 2 + a[p][q].imag ** 2)
        if off2 <= thresh2 or off2 == 0.0:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p][q]
                ag = math.hypot(g.real, g.imag)
                if ag < 1e-300:
                    continue
                eph = (g / ag).conjugate()
                app = a[p][p].real
                aqq = a[q][q].real
                theta = (aqq - app) / (2.0 * ag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                jqp = -s * eph
                jqq = c * eph
                for k in range(n):
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = akp * c + akq * jqp
                    a[k][q] = akp * s + akq * jqq
                ceph = eph.conjugate()
                for k in range(n):
                    apk = a[p][k]
                    aqk = a[q][k]
                    a[p][k] = c * apk - s * ceph * aqk
                    a[q][k] = s * apk + c * ceph * aqk
                a[p][q] = 0j
                a[q][p] = 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)
                for k in range(n):
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = vkp * c + vkq * jqp
                    v[k][q] = vkp * s + vkq * jqq

    w = np.array([a[i][i].real for i in range(n)])
    vecs = np.array(v, dtype=np.complex128)
    return w, vecs, sweeps


def _score(t, n):
    q = 0.0
    for i in range(3):
        for j in range(3):
            q += n[i] * t[i][j] * n[j]
    return abs(q)


def _cap_angle(n, e):
    """Angle between ``n`` and the nearer of ``+e`` / ``-e``."""
    cx = n[1] * e[2] - n[2] * e[1]
    cy = n[2] * e[0] - n[0] * e[2]
    cz = n[0] * e[1] - n[1] * e[0]
    return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz),
                      abs(n[0] * e[0] + n[1] * e[1] + n[2] * e[2]))


def scan_grid(t: np.ndarray, thetas: np.ndarray, phis: np.ndarray,
              excl: np.ndarray | None, eps: float, tie_tol: float):
    """Best feasible grid point for the score ``|n.T.n|``.

    Ties within ``tie_tol`` of the maximum resolve to the first point in
    theta-major order. Returns ``(i, j, score)``, or ``(-1, -1, nan)`` when
    no grid point is feasible.
    """
    st = np.sin(thetas)[:, None]
    ct = np.cos(thetas)[:, None]
    n = np.empty((thetas.size, phis.size, 3))
    n[..., 0] = st * np.cos(phis)[None, :]
    n[..., 1] = st * np.sin(phis)[None, :]
    n[..., 2] = np.broadcast_to(ct, (thetas.size, phis.size))
    score = np.abs(np.einsum("abi,ij,abj->ab", n, t, n))
    if excl is not None:
        cross = np.cross(n, excl)
        ang = np.arctan2(np.linalg.norm(cross, axis=-1), np.abs(n @ excl))
        score = np.where(ang >= eps, score, -np.inf)
    best = score.max()
    if not np.isfinite(best):
        return -1, -1, math.nan
    flat = np.flatnonzero(score.ravel() >= best - tie_tol)[0]
    i, j = divmod(int(flat), phis.size)
    return i, j, float(score[i, j])


def _normalize(x):
    r = math.sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])
    return [x[0] / r, x[1] / r, x[2] / r]


def _tangent_basis(n):
    k = min(range(3), key=lambda i: abs(n[i]))
    a = [0.0, 0.0, 0.0]
    a[k] = 1.0
    d = n[k]
    u = _normalize([a[0] - d * n[0], a[1] - d * n[1], a[2] - d * n[2]])
    v = [n[1] * u[2] - n[2] * u[1],
         n[2] * u[0] - n[0] * u[2],
         n[0] * u[1] - n[1] * u[0]]
    return u, v


def _project(m, e, eps, force=False):
    """Pull ``m`` onto the rim of the cap around ``+-e`` (only if inside it,
    unless ``force``). Returns None when the rim direction is undefined."""
    if not force and _cap_angle(m, e) >= eps:
        return m
    d = m[0] * e[0] + m[1] * e[1] + m[2] * e[2]
    sgn = 1.0 if d >= 0.0 else -1.0
    pole = [sgn * e[0], sgn * e[1], sgn * e[2]]
    dp = sgn * d
    w = [m[0] - dp * pole[0], m[1] - dp * pole[1], m[2] - dp * pole[2]]
    wn = math.sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    if wn < 1e-300:
        return None
    target = eps * (1.0 + 1e-12) + 1e-15
    ca, sa = math.cos(target), math.sin(target)
    m = [ca * pole[i] + sa * w[i] / wn for i in range(3)]
    if _cap_angle(m, e) < eps:
        return None
    return m


def refine(t: np.ndarray, n0: np.ndarray, excl: np.ndarray | None, eps: float,
           h0: float, hmin: float, tol: float, max_iter: int):
    """Compass search maximising ``|n.T.n|`` on the unit sphere.

    Probes the four tangent-plane neighbours at angular step ``h``, moves to
    the best strict improvement (by more than ``tol``), otherwise halves
    ``h``; stops once ``h < hmin``. Probes falling inside the exclusion cap
    are projected onto its rim; while the current point is within ``2 h`` of
    the rim each probe is also tried snapped onto the rim, so the search can
    slide along an active constraint. Returns ``(n, score, iterations)``.
    """
    tt = [[float(t[i, j]) for j in range(3)] for i in range(3)]
    e = None if excl is None else [float(x) for x in excl]
    n = [float(x) for x in n0]
    best = _score(tt, n)
    h = h0
    it = 0
    while h >= hmin and it < max_iter:
        it += 1
        u, v = _tangent_basis(n)
        near_rim = e is not None and _cap_angle(n, e) < eps + 2.0 * h
        cand = None
        cand_score = best + tol
        for du, dv in ((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)):
            m = _normalize([n[i] + h * (du * u[i] + dv * v[i]) for i in range(3)])
            probes = [m]
            if e is not None:
                probes = [_project(m, e, eps)]
                if near_rim:
                    probes.append(_project(m, e, eps, force=True))
            for m in probes:
                if m is None:
                    continue
                sc = _score(tt, m)
                if sc > cand_score:
                    cand_score = sc
                    cand = m
        if cand is None:
            h *= 0.5
        else:
            n = cand
            best = cand_score
    return np.array(n), best, it
