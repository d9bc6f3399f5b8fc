# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``uncq._pykernels`` for the reference versions."""
import numpy as np

from libc.math cimport sqrt, fabs, atan2, sin, cos, hypot, INFINITY, NAN


def jacobi_eigh(h, int max_sweeps=50, double rel_tol=1e-14):
    cdef Py_ssize_t n = h.shape[0]
    a_arr = np.array(h, dtype=np.complex128, order="C", copy=True)
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k, i, j
    cdef double fro2 = 0.0, off2, thresh2, ag, app, aqq, theta, t, c, s
    cdef double complex g, eph, ceph, jqp, jqq, akp, akq, apk, aqk
    cdef int sweep, sweeps = -1

    for i in range(n):
        for j in range(n):
            fro2 += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    thresh2 = rel_tol * rel_tol * fro2

    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += 2.0 * (a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag)
        if off2 <= thresh2 or off2 == 0.0:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = hypot(g.real, g.imag)
                if ag < 1e-300:
                    continue
                eph = g.real / ag - 1j * (g.imag / ag)
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * ag)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                jqp = -s * eph
                jqq = c * eph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * c + akq * jqp
                    a[k, q] = akp * s + akq * jqq
                ceph = eph.conjugate()
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ceph * aqk
                    a[q, k] = s * apk + c * ceph * aqk
                a[p, q] = 0
                a[q, p] = 0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = akp * c + akq * jqp
                    v[k, q] = akp * s + akq * jqq

    w = np.array([a[i, i].real for i in range(n)])
    return w, v_arr, sweeps


cdef inline double _score(double[:, ::1] t, double* n) noexcept nogil:
    cdef double q = 0.0
    cdef int i, j
    for i in range(3):
        for j in range(3):
            q += n[i] * t[i, j] * n[j]
    return fabs(q)


cdef inline double _cap_angle(double* n, double* e) noexcept nogil:
    cdef double cx = n[1] * e[2] - n[2] * e[1]
    cdef double cy = n[2] * e[0] - n[0] * e[2]
    cdef double cz = n[0] * e[1] - n[1] * e[0]
    return atan2(sqrt(cx * cx + cy * cy + cz * cz),
                 fabs(n[0] * e[0] + n[1] * e[1] + n[2] * e[2]))


def scan_grid(double[:, ::1] t, double[::1] thetas, double[::1] phis,
              excl, double eps, double tie_tol):
    cdef Py_ssize_t nt = thetas.shape[0], nphi = phis.shape[0], i, j
    cdef double n[3]
    cdef double e[3]
    cdef bint has_excl = excl is not None
    cdef double best = -INFINITY, sc
    cdef double st, ct
    if has_excl:
        e[0] = excl[0]
        e[1] = excl[1]
        e[2] = excl[2]
    cp_arr = np.cos(np.asarray(phis))
    sp_arr = np.sin(np.asarray(phis))
    st_arr = np.sin(np.asarray(thetas))
    ct_arr = np.cos(np.asarray(thetas))
    cdef double[::1] cp = cp_arr, sp = sp_arr, sts = st_arr, cts = ct_arr
    scores_arr = np.empty((nt, nphi))
    cdef double[:, ::1] scores = scores_arr

    with nogil:
        for i in range(nt):
            st = sts[i]
            ct = cts[i]
            for j in range(nphi):
                n[0] = st * cp[j]
                n[1] = st * sp[j]
                n[2] = ct
                if has_excl and not (_cap_angle(n, e) >= eps):
                    scores[i, j] = -INFINITY
                    continue
                sc = _score(t, n)
                scores[i, j] = sc
                if sc > best:
                    best = sc
        if best == -INFINITY:
            i = -1
        else:
            for i in range(nt):
                for j in range(nphi):
                    if scores[i, j] >= best - tie_tol:
                        break
                else:
                    continue
                break
    if i < 0:
        return -1, -1, NAN
    return int(i), int(j), float(scores[i, j])


cdef inline void _normalize(double* x) noexcept nogil:
    cdef double r = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])
    x[0] /= r
    x[1] /= r
    x[2] /= r


cdef void _tangent_basis(double* n, double* u, double* v) noexcept nogil:
    cdef int k = 0, i
    for i in range(1, 3):
        if fabs(n[i]) < fabs(n[k]):
            k = i
    cdef double d = n[k]
    for i in range(3):
        u[i] = -d * n[i]
    u[k] += 1.0
    _normalize(u)
    v[0] = n[1] * u[2] - n[2] * u[1]
    v[1] = n[2] * u[0] - n[0] * u[2]
    v[2] = n[0] * u[1] - n[1] * u[0]


cdef bint _project(double* m, double* e, double eps, bint force) noexcept nogil:
    """Move ``m`` onto the rim of the exclusion cap; False if impossible."""
    if not force and _cap_angle(m, e) >= eps:
        return True
    cdef double d = m[0] * e[0] + m[1] * e[1] + m[2] * e[2]
    cdef double sgn = 1.0 if d >= 0.0 else -1.0
    cdef double pole[3]
    cdef double w[3]
    cdef int i
    for i in range(3):
        pole[i] = sgn * e[i]
    cdef double dp = sgn * d
    for i in range(3):
        w[i] = m[i] - dp * pole[i]
    cdef double wn = sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2])
    if wn < 1e-300:
        return False
    cdef double target = eps * (1.0 + 1e-12) + 1e-15
    cdef double ca = cos(target), sa = sin(target)
    for i in range(3):
        m[i] = ca * pole[i] + sa * w[i] / wn
    return _cap_angle(m, e) >= eps


def refine(double[:, ::1] t, n0, excl, double eps, double h0, double hmin,
           double tol, int max_iter):
    cdef double n[3]
    cdef double e[3]
    cdef double u[3]
    cdef double v[3]
    cdef double m[3]
    cdef double cand[3]
    cdef double base[3]
    cdef bint near_rim
    cdef int pass_
    cdef double du[4]
    cdef double dv[4]
    cdef bint has_excl = excl is not None
    cdef bint found
    cdef double best, h = h0, sc, cand_score
    cdef int it = 0, d, i
    du[:] = [1.0, -1.0, 0.0, 0.0]
    dv[:] = [0.0, 0.0, 1.0, -1.0]
    for i in range(3):
        n[i] = n0[i]
        if has_excl:
            e[i] = excl[i]
    with nogil:
        best = _score(t, n)
        while h >= hmin and it < max_iter:
            it += 1
            _tangent_basis(n, u, v)
            near_rim = has_excl and _cap_angle(n, e) < eps + 2.0 * h
            found = False
            cand_score = best + tol
            for d in range(4):
                for i in range(3):
                    base[i] = n[i] + h * (du[d] * u[i] + dv[d] * v[i])
                _normalize(base)
                for pass_ in range(2 if near_rim else 1):
                    m[0] = base[0]
                    m[1] = base[1]
                    m[2] = base[2]
                    if has_excl and not _project(m, e, eps, pass_ == 1):
                        continue
                    sc = _score(t, m)
                    if sc > cand_score:
                        cand_score = sc
                        cand[0] = m[0]
                        cand[1] = m[1]
                        cand[2] = m[2]
                        found = True
            if found:
                n[0] = cand[0]
                n[1] = cand[1]
                n[2] = cand[2]
                best = cand_score
            else:
                h *= 0.5
    return np.array([n[0], n[1], n[2]]), best, it
