# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense kernels; same contract as ``_pykernels``."""
import numpy as np
cimport cython
from libc.math cimport sqrt, fabs, hypot, cos, sin, pow, copysign

cdef double EPS = 2.220446049250313e-16
cdef double TINY = 1e-300

BACKEND = "cython"


cdef inline double cabs_(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline double complex conj_(double complex z) nogil:
    return z.real - 1j * z.imag


cdef inline double complex csqrt_(double complex z) nogil:
    cdef double x = z.real, y = z.imag
    cdef double r = hypot(x, y)
    cdef double t
    if r == 0.0:
        return 0.0
    t = sqrt((r + fabs(x)) * 0.5)
    if x >= 0.0:
        return t + 1j * (y / (2.0 * t))
    return fabs(y) / (2.0 * t) + 1j * copysign(t, y)


cdef double frob(double complex[:, ::1] a) nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0, v
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            v = cabs_(a[i, j])
            s += v * v
    return sqrt(s)


def schur(a, int max_iter_per_eig=30):
    cdef double complex[:, ::1] h = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = h.shape[0]
    z_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] z = z_arr
    cdef double complex[::1] v = np.zeros(max(n, 1), dtype=np.complex128)
    rots_arr = np.zeros((max(n, 1), 2), dtype=np.complex128)
    cdef double complex[:, ::1] rots = rots_arr
    cdef Py_ssize_t k, i, j, m, lo, hi, kk
    cdef double alpha, vnorm2, sub, tst, hnorm, r, shs, xmax
    cdef double complex x0, phase, s, mu, p, q, rr, d, half, disc, m1, m2, c, sn, cc, sc, xv, yv
    cdef int its = 0, total = 0
    cdef int budget = max_iter_per_eig * (n if n > 1 else 1)

    with nogil:
        for k in range(n - 2):
            m = n - k - 1
            xmax = 0.0
            for i in range(m):
                if cabs_(h[k + 1 + i, k]) > xmax:
                    xmax = cabs_(h[k + 1 + i, k])
            if xmax == 0.0:
                continue
            # the reflector is scale invariant; normalising keeps the squares in range
            alpha = 0.0
            for i in range(m):
                v[i] = h[k + 1 + i, k] / xmax
                alpha += cabs_(v[i]) ** 2
            alpha = sqrt(alpha)
            x0 = v[0]
            if cabs_(x0) != 0.0:
                phase = x0 / cabs_(x0)
            else:
                phase = 1.0
            v[0] = x0 + phase * alpha
            vnorm2 = 0.0
            for i in range(m):
                vnorm2 += cabs_(v[i]) ** 2
            if vnorm2 == 0.0:
                continue
            for j in range(n):
                s = 0.0
                for i in range(m):
                    s = s + conj_(v[i]) * h[k + 1 + i, j]
                s = s * (2.0 / vnorm2)
                for i in range(m):
                    h[k + 1 + i, j] = h[k + 1 + i, j] - v[i] * s
            for j in range(n):
                s = 0.0
                for i in range(m):
                    s = s + h[j, k + 1 + i] * v[i]
                s = s * (2.0 / vnorm2)
                for i in range(m):
                    h[j, k + 1 + i] = h[j, k + 1 + i] - s * conj_(v[i])
                s = 0.0
                for i in range(m):
                    s = s + z[j, k + 1 + i] * v[i]
                s = s * (2.0 / vnorm2)
                for i in range(m):
                    z[j, k + 1 + i] = z[j, k + 1 + i] - s * conj_(v[i])
            for i in range(k + 2, n):
                h[i, k] = 0.0

        hnorm = frob(h)
        hi = n - 1
        while hi > 0:
            lo = hi
            while lo > 0:
                sub = cabs_(h[lo, lo - 1])
                tst = cabs_(h[lo, lo]) + cabs_(h[lo - 1, lo - 1])
                if tst == 0.0:
                    tst = hnorm
                if sub <= EPS * tst or sub < TINY:
                    h[lo, lo - 1] = 0.0
                    break
                lo -= 1
            if lo == hi:
                hi -= 1
                its = 0
                continue
            if total >= budget:
                break
            its += 1
            total += 1

            if its % 11 == 0:
                mu = h[hi, hi] + 0.75 * fabs(h[hi, hi - 1].real)
            else:
                p = h[hi - 1, hi - 1]
                q = h[hi - 1, hi]
                rr = h[hi, hi - 1]
                d = h[hi, hi]
                # scaled so that the products below cannot underflow
                shs = cabs_(p) + cabs_(q) + cabs_(rr) + cabs_(d)
                p = p / shs
                q = q / shs
                rr = rr / shs
                d = d / shs
                half = 0.5 * (p - d)
                disc = csqrt_(half * half + q * rr)
                m1 = d + half + disc
                m2 = d + half - disc
                if cabs_(m1 - d) <= cabs_(m2 - d):
                    mu = shs * m1
                else:
                    mu = shs * m2

            for i in range(lo, hi + 1):
                h[i, i] = h[i, i] - mu
            for k in range(lo, hi):
                r = hypot(cabs_(h[k, k]), cabs_(h[k + 1, k]))
                if r == 0.0:
                    c = 1.0
                    sn = 0.0
                else:
                    c = h[k, k] / r
                    sn = h[k + 1, k] / r
                rots[k, 0] = c
                rots[k, 1] = sn
                cc = conj_(c)
                sc = conj_(sn)
                for j in range(k, n):
                    xv = h[k, j]
                    yv = h[k + 1, j]
                    h[k, j] = cc * xv + sc * yv
                    h[k + 1, j] = -sn * xv + c * yv
                h[k + 1, k] = 0.0
            for k in range(lo, hi):
                c = rots[k, 0]
                sn = rots[k, 1]
                cc = conj_(c)
                sc = conj_(sn)
                kk = k + 2 if k + 2 < hi else hi
                for i in range(kk + 1):
                    xv = h[i, k]
                    yv = h[i, k + 1]
                    h[i, k] = xv * c + yv * sn
                    h[i, k + 1] = -xv * sc + yv * cc
                for i in range(n):
                    xv = z[i, k]
                    yv = z[i, k + 1]
                    z[i, k] = xv * c + yv * sn
                    z[i, k + 1] = -xv * sc + yv * cc
            for i in range(lo, hi + 1):
                h[i, i] = h[i, i] + mu

    if hi > 0:
        return np.asarray(h), z_arr, -1
    for i in range(1, n):
        for j in range(i):
            h[i, j] = 0.0
    return np.asarray(h), z_arr, 0


def tri_eigvecs(t):
    cdef double complex[:, ::1] tt = np.ascontiguousarray(t, dtype=np.complex128)
    cdef Py_ssize_t n = tt.shape[0]
    x_arr = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] x = x_arr
    cdef Py_ssize_t i, j, k
    cdef double complex lam, s, d
    cdef double smin
    with nogil:
        smin = EPS * frob(tt)
        if smin < TINY:
            smin = TINY
        for k in range(n):
            lam = tt[k, k]
            x[k, k] = 1.0
            for i in range(k - 1, -1, -1):
                s = 0.0
                for j in range(i + 1, k + 1):
                    s = s + tt[i, j] * x[j, k]
                d = tt[i, i] - lam
                if cabs_(d) < smin:
                    d = smin
                x[i, k] = -s / d
    return x_arr


def lu_inverse(a, double pivot_tol):
    cdef Py_ssize_t n = np.shape(a)[0]
    aug_arr = np.zeros((n, 2 * n), dtype=np.complex128)
    aug_arr[:, :n] = a
    aug_arr[:, n:] = np.eye(n)
    cdef double complex[:, ::1] aug = aug_arr
    cdef Py_ssize_t i, j, k, p
    cdef double best, val
    cdef double complex f, inv_piv, tmp
    cdef int info = 0
    with nogil:
        for k in range(n):
            p = k
            best = cabs_(aug[k, k])
            for i in range(k + 1, n):
                val = cabs_(aug[i, k])
                if val > best:
                    best = val
                    p = i
            if best <= pivot_tol:
                info = <int>(k + 1)
                break
            if p != k:
                for j in range(2 * n):
                    tmp = aug[p, j]
                    aug[p, j] = aug[k, j]
                    aug[k, j] = tmp
            inv_piv = 1.0 / aug[k, k]
            for j in range(k, 2 * n):
                aug[k, j] = aug[k, j] * inv_piv
            for i in range(n):
                if i == k:
                    continue
                f = aug[i, k]
                if f != 0:
                    for j in range(k, 2 * n):
                        aug[i, j] = aug[i, j] - f * aug[k, j]
    if info:
        return None, info
    return aug_arr[:, n:].copy(), 0


def berkowitz(a):
    cdef double complex[:, ::1] m = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = m.shape[0]
    poly_arr = np.zeros(n + 1, dtype=np.complex128)
    new_arr = np.zeros(n + 1, dtype=np.complex128)
    t_arr = np.zeros(n + 1, dtype=np.complex128)
    vec_arr = np.zeros(n, dtype=np.complex128)
    tmp_arr = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] poly = poly_arr
    cdef double complex[::1] new = new_arr
    cdef double complex[::1] t = t_arr
    cdef double complex[::1] vec = vec_arr
    cdef double complex[::1] tmp = tmp_arr
    cdef Py_ssize_t r, i, j, step
    cdef double complex s
    with nogil:
        poly[0] = 1.0
        poly[1] = -m[0, 0]
        for r in range(1, n):
            t[0] = 1.0
            t[1] = -m[r, r]
            for i in range(r):
                vec[i] = m[i, r]
            for step in range(r):
                s = 0.0
                for i in range(r):
                    s = s + m[r, i] * vec[i]
                t[2 + step] = -s
                for i in range(r):
                    s = 0.0
                    for j in range(r):
                        s = s + m[i, j] * vec[j]
                    tmp[i] = s
                for i in range(r):
                    vec[i] = tmp[i]
            for i in range(r + 2):
                s = 0.0
                for j in range(r + 1):
                    if j <= i and i - j < r + 2:
                        s = s + t[i - j] * poly[j]
                new[i] = s
            for i in range(r + 2):
                poly[i] = new[i]
    return poly_arr


def aberth(coeffs, int max_iter=500):
    c_arr = np.array(coeffs, dtype=np.complex128)
    cdef Py_ssize_t deg = c_arr.shape[0] - 1
    if deg == 0:
        return np.zeros(0, dtype=np.complex128), 0
    c_arr = c_arr / c_arr[0]
    cdef double complex[::1] c = c_arr
    absc_arr = np.abs(c_arr)
    cdef double[::1] absc = absc_arr
    cdef double radius = 1.0 + float(np.max(absc_arr[1:]))
    cdef double fuji = 2.0 * max(absc_arr[k] ** (1.0 / k) for k in range(1, deg + 1))
    if fuji > 0:
        radius = min(radius, fuji)
    else:
        radius = 0.0
    if radius == 0.0:
        return np.zeros(deg, dtype=np.complex128), 0
    z_arr = np.array([radius * np.exp(1j * (2 * np.pi * k / deg + 0.4)) for k in range(deg)],
                     dtype=np.complex128)
    cdef double complex[::1] z = z_arr
    done_arr = np.zeros(deg, dtype=np.int32)
    cdef int[::1] done = done_arr
    cdef double scale = radius if radius > 1.0 else 1.0
    cdef Py_ssize_t i, j, k, it
    cdef double complex p, dp, ratio, s, diff, denom, w
    cdef double bound, az
    cdef int all_done
    with nogil:
        for it in range(max_iter):
            for i in range(deg):
                if done[i]:
                    continue
                p = c[0]
                dp = 0.0
                az = cabs_(z[i])
                bound = absc[0]
                for k in range(1, deg + 1):
                    dp = dp * z[i] + p
                    p = p * z[i] + c[k]
                    bound = bound * az + absc[k]
                if cabs_(p) <= 8 * EPS * bound:
                    done[i] = 1
                    continue
                if dp != 0:
                    ratio = p / dp
                else:
                    ratio = scale
                s = 0.0
                for j in range(deg):
                    if j != i:
                        diff = z[i] - z[j]
                        if diff != 0:
                            s = s + 1.0 / diff
                denom = 1.0 - ratio * s
                if denom != 0:
                    w = ratio / denom
                else:
                    w = ratio
                z[i] = z[i] - w
                az = cabs_(z[i])
                if cabs_(w) <= 4 * EPS * (az if az > scale * EPS else scale * EPS):
                    done[i] = 1
            all_done = 1
            for i in range(deg):
                if not done[i]:
                    all_done = 0
                    break
            if all_done:
                break
    if all_done:
        return z_arr, 0
    return z_arr, -1
