"""Pure-Python dense kernels.

Reference fallback for the compiled ``_ckernels`` module; both expose the
same five functions with identical semantics. Matrices travel as complex128
ndarrays at the boundary and as nested lists of Python ``complex`` inside,
which is markedly faster than indexing ndarrays element by element.
"""
import cmath
import math

import numpy as np

EPS = 2.220446049250313e-16
TINY = 1e-300

BACKEND = "python"


def _to_lists(a):
    return [[complex(x) for x in row] for row in np.asarray(a, dtype=complex).tolist()]


def _givens(a, b):
    r = math.hypot(abs(a), abs(b))
    if r == 0.0:
        return 1.0 + 0j, 0j, 0j
    return a / r, b / r, r


def schur(a, max_iter_per_eig=30):
    """Complex Schur form ``a = Z T Z^H`` by Hessenberg reduction + shifted QR.

    Returns ``(T, Z, info)``; ``info`` is 0 on success and -1 when the
    iteration budget ran out.
    """
    h = _to_lists(a)
    n = len(h)
    z = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]

    # Householder reduction to upper Hessenberg form
    for k in range(n - 2):
        xmax = max(abs(h[i][k]) for i in range(k + 1, n))
        if xmax == 0.0:
            continue
        # the reflector is scale invariant; normalising keeps the squares in range
        x = [h[i][k] / xmax for i in range(k + 1, n)]
        alpha = math.sqrt(sum(abs(v) ** 2 for v in x))
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0 + 0j
        v = x[:]
        v[0] = x0 + phase * alpha
        vnorm2 = sum(abs(t) ** 2 for t in v)
        if vnorm2 == 0.0:
            continue
        m = len(v)
        # rows k+1..n-1: H <- (I - 2 v v^H / |v|^2) H
        for j in range(n):
            s = 0j
            for i in range(m):
                s += v[i].conjugate() * h[k + 1 + i][j]
            s *= 2.0 / vnorm2
            if s != 0:
                for i in range(m):
                    h[k + 1 + i][j] -= v[i] * s
        # columns k+1..n-1: H <- H (I - 2 v v^H / |v|^2), same for Z
        for mat in (h, z):
            for row in mat:
                s = 0j
                for i in range(m):
                    s += row[k + 1 + i] * v[i]
                s *= 2.0 / vnorm2
                if s != 0:
                    for i in range(m):
                        row[k + 1 + i] -= s * v[i].conjugate()
        for i in range(k + 2, n):
            h[i][k] = 0j

    hnorm = math.sqrt(sum(abs(x) ** 2 for row in h for x in row))
    hi = n - 1
    its = 0
    total = 0
    budget = max_iter_per_eig * max(n, 1)
    while hi > 0:
        # find the start of the active unreduced block
        lo = hi
        while lo > 0:
            sub = abs(h[lo][lo - 1])
            tst = abs(h[lo][lo]) + abs(h[lo - 1][lo - 1])
            if tst == 0.0:
                tst = hnorm
            if sub <= EPS * tst or sub < TINY:
                h[lo][lo - 1] = 0j
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if total >= budget:
            return np.array(h), np.array(z), -1
        its += 1
        total += 1

        if its % 11 == 0:
            mu = h[hi][hi] + 0.75 * abs(h[hi][hi - 1].real)
        else:
            p, q = h[hi - 1][hi - 1], h[hi - 1][hi]
            r, d = h[hi][hi - 1], h[hi][hi]
            # scaled so that the products below cannot underflow
            sc = abs(p) + abs(q) + abs(r) + abs(d)
            p, q, r, d = p / sc, q / sc, r / sc, d / sc
            half = 0.5 * (p - d)
            disc = cmath.sqrt(half * half + q * r)
            m1 = d + half + disc
            m2 = d + half - disc
            # eigenvalue of the trailing 2x2 closest to its last diagonal entry
            mu = sc * (m1 if abs(m1 - d) <= abs(m2 - d) else m2)

        for i in range(lo, hi + 1):
            h[i][i] -= mu
        rots = []
        for k in range(lo, hi):
            c, s, rr = _givens(h[k][k], h[k + 1][k])
            rots.append((c, s))
            cc, sc = c.conjugate(), s.conjugate()
            rowk, rowk1 = h[k], h[k + 1]
            for j in range(k, n):
                x, y = rowk[j], rowk1[j]
                rowk[j] = cc * x + sc * y
                rowk1[j] = -s * x + c * y
            rowk1[k] = 0j
        for idx, k in enumerate(range(lo, hi)):
            c, s = rots[idx]
            sc, cc = s.conjugate(), c.conjugate()
            for i in range(0, min(k + 2, hi) + 1):
                row = h[i]
                x, y = row[k], row[k + 1]
                row[k] = x * c + y * s
                row[k + 1] = -x * sc + y * cc
            for row in z:
                x, y = row[k], row[k + 1]
                row[k] = x * c + y * s
                row[k + 1] = -x * sc + y * cc
        for i in range(lo, hi + 1):
            h[i][i] += mu

    for i in range(1, n):
        for j in range(i):
            h[i][j] = 0j
    return np.array(h, dtype=complex).reshape(n, n), np.array(z, dtype=complex).reshape(n, n), 0


def tri_eigvecs(t):
    """Eigenvectors of an upper-triangular matrix by back substitution.

    Column ``k`` of the result belongs to ``t[k, k]``; small denominators are
    clamped to ``EPS * ||t||`` so coincident diagonal entries stay finite.
    """
    t = _to_lists(t)
    n = len(t)
    tnorm = math.sqrt(sum(abs(x) ** 2 for row in t for x in row))
    smin = max(EPS * tnorm, TINY)
    x = [[0j] * n for _ in range(n)]
    for k in range(n):
        lam = t[k][k]
        col = [0j] * n
        col[k] = 1.0 + 0j
        for i in range(k - 1, -1, -1):
            s = 0j
            row = t[i]
            for j in range(i + 1, k + 1):
                s += row[j] * col[j]
            d = row[i] - lam
            if abs(d) < smin:
                d = smin
            col[i] = -s / d
        for i in range(n):
            x[i][k] = col[i]
    return np.array(x, dtype=complex).reshape(n, n)


def lu_inverse(a, pivot_tol):
    """Inverse by Gauss-Jordan elimination with partial pivoting.

    Returns ``(inv, info)``; ``info`` is ``k + 1`` when the pivot of column
    ``k`` falls below ``pivot_tol`` and 0 otherwise.
    """
    m = _to_lists(a)
    n = len(m)
    aug = [m[i] + [1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(aug[i][k]))
        if abs(aug[p][k]) <= pivot_tol:
            return None, k + 1
        if p != k:
            aug[p], aug[k] = aug[k], aug[p]
        rowk = aug[k]
        inv_piv = 1.0 / rowk[k]
        for j in range(k, 2 * n):
            rowk[j] *= inv_piv
        for i in range(n):
            if i == k:
                continue
            f = aug[i][k]
            if f != 0:
                rowi = aug[i]
                for j in range(k, 2 * n):
                    rowi[j] -= f * rowk[j]
    return np.array([row[n:] for row in aug], dtype=complex).reshape(n, n), 0


def berkowitz(a):
    """Coefficients of det(x I - a), highest degree first (division free)."""
    m = _to_lists(a)
    n = len(m)
    poly = [1.0 + 0j, -m[0][0]]
    for r in range(1, n):
        col = [m[i][r] for i in range(r)]
        row = m[r][:r]
        t = [1.0 + 0j, -m[r][r]]
        vec = col
        for _ in range(r):
            t.append(-sum(row[i] * vec[i] for i in range(r)))
            vec = [sum(m[i][j] * vec[j] for j in range(r)) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = 0j
            for j in range(min(i, r) + 1):
                if 0 <= i - j < len(t):
                    s += t[i - j] * poly[j]
            new.append(s)
        poly = new
    return np.array(poly, dtype=complex)


def _horner(coeffs, x):
    p = coeffs[0]
    dp = 0j
    for c in coeffs[1:]:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _abs_horner(absc, r):
    b = absc[0]
    for x in absc[1:]:
        b = b * r + x
    return b


def aberth(coeffs, max_iter=500):
    """All roots of a monic polynomial by Aberth-Ehrlich simultaneous iteration.

    Returns ``(roots, info)`` with ``info`` 0 on convergence, -1 otherwise.
    """
    c = [complex(x) for x in np.asarray(coeffs).tolist()]
    deg = len(c) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex), 0
    lead = c[0]
    c = [x / lead for x in c]
    radius = 1.0 + max(abs(x) for x in c[1:])
    # Fujiwara-type bound keeps the starting circle tight for small roots
    fuji = 2.0 * max(abs(c[k]) ** (1.0 / k) for k in range(1, deg + 1))
    radius = min(radius, fuji) if fuji > 0 else 0.0
    if radius == 0.0:
        return np.zeros(deg, dtype=complex), 0
    z = [radius * cmath.exp(1j * (2 * math.pi * k / deg + 0.4)) for k in range(deg)]
    scale = max(1.0, radius)
    absc = [abs(x) for x in c]
    done = [False] * deg
    for _ in range(max_iter):
        for i in range(deg):
            if done[i]:
                continue
            p, dp = _horner(c, z[i])
            if abs(p) <= 8 * EPS * _abs_horner(absc, abs(z[i])):
                done[i] = True
                continue
            ratio = p / dp if dp != 0 else complex(scale)
            s = 0j
            for j in range(deg):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            denom = 1.0 - ratio * s
            w = ratio / denom if denom != 0 else ratio
            z[i] -= w
            if abs(w) <= 4 * EPS * max(abs(z[i]), scale * EPS):
                done[i] = True
        if all(done):
            return np.array(z, dtype=complex), 0
    return np.array(z, dtype=complex), -1
