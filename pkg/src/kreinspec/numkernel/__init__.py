"""Dense complex linear algebra for small matrices.

Matrices are ``complex128`` ndarrays of shape ``(n, n)`` and vectors are
1-D ``complex128`` arrays. The heavy loops (Schur decomposition, inversion,
characteristic polynomial and its roots) live in a compiled extension,
``_ckernels``, with ``_pykernels`` as a drop-in pure-Python fallback. The
compiled module is picked at import when it is available and the
``KREINSPEC_PURE_PYTHON`` environment variable is unset.
"""
import math
import os
from fractions import Fraction

import numpy as np

from ..errors import (
    DimensionMismatch,
    DimensionTooLarge,
    NoConvergence,
    NonFiniteInput,
    SingularMatrix,
)
from . import _pykernels

try:
    if os.environ.get("KREINSPEC_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_kernels = _ckernels if _ckernels is not None else _pykernels

DEFAULT_RTOL = 1e-10
PIVOT_RTOL = 1e-14
ORACLE_MAX_DIM = 8

__all__ = [
    "DEFAULT_RTOL",
    "adjoint",
    "as_matrix",
    "as_vector",
    "available_backends",
    "backend",
    "charpoly",
    "charpoly_roots_oracle",
    "eig_right",
    "eigvals",
    "fix_phase",
    "frob",
    "inner",
    "mat_inverse",
    "schur",
    "set_backend",
]


def available_backends():
    return sorted(_BACKENDS)


def backend():
    """Name of the kernel backend currently in use."""
    return _kernels.BACKEND


def set_backend(name):
    """Switch kernel backend and return the previous backend name."""
    global _kernels
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    previous = _kernels.BACKEND
    _kernels = _BACKENDS[name]
    return previous


def as_matrix(m, square=True):
    """Validate and convert to a finite complex128 2-D array."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput("matrix contains NaN or Inf")
    return a


def as_vector(x, dim=None):
    v = np.array(x, dtype=np.complex128)
    if v.ndim != 1 or v.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"vector has dimension {v.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteInput("vector contains NaN or Inf")
    return v


def adjoint(m):
    return np.conj(m).T


def frob(m):
    return float(np.linalg.norm(m))


def inner(x, y):
    """Standard inner product, conjugate-linear in ``x``."""
    return complex(np.vdot(x, y))


def fix_phase(v):
    """Rotate ``v`` so its largest-magnitude entry (first on ties) is real positive."""
    k = int(np.argmax(np.abs(v)))
    if v[k] == 0:
        return v
    out = v * (abs(v[k]) / v[k])
    out[k] = abs(v[k])
    return out


def _pow2_scale(a):
    """Power of two near ``max|a_ij|``; dividing by it is exact and avoids under/overflow."""
    big = float(np.max(np.abs(a))) if a.size else 0.0
    if big == 0.0:
        return 1.0
    return math.ldexp(1.0, math.frexp(big)[1])


def mat_inverse(m):
    """Inverse by Gaussian elimination with partial pivoting.

    Raises SingularMatrix when a pivot falls below ``1e-14 * ||m||_F``.
    """
    a = as_matrix(m)
    inv, info = _kernels.lu_inverse(a, PIVOT_RTOL * frob(a))
    if info:
        raise SingularMatrix(f"pivot {info - 1} below {PIVOT_RTOL:g} * ||M||_F")
    return inv


def schur(m, max_iter_per_eig=30):
    """Complex Schur form ``m = Z T Z^H`` with ``T`` upper triangular."""
    a = as_matrix(m)
    s = _pow2_scale(a)
    t, z, info = _kernels.schur(a / s, max_iter_per_eig)
    if info:
        raise NoConvergence(
            f"shifted QR exceeded {max_iter_per_eig} iterations per eigenvalue"
        )
    return t * s, z


def eigvals(m):
    t, _ = schur(m)
    return np.diag(t).copy()


def eig_right(m, tol=DEFAULT_RTOL):
    """Right eigenpairs of a general square matrix.

    Returns ``(values, vectors)`` where column ``k`` of ``vectors`` is a unit
    eigenvector for ``values[k]``, phase-fixed by :func:`fix_phase`. Every
    pair satisfies ``||M v - lambda v|| <= tol * ||M||_F``; otherwise
    NoConvergence is raised.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    a = as_matrix(m)
    t, z = schur(a)
    x = _kernels.tri_eigvecs(t)
    vecs = z @ x
    vals = np.diag(t).copy()
    scale = frob(a)
    for k in range(a.shape[0]):
        v = vecs[:, k]
        v = fix_phase(v / np.linalg.norm(v))
        vecs[:, k] = v
        res = np.linalg.norm(a @ v - vals[k] * v)
        if res > tol * scale:
            raise NoConvergence(
                f"eigenpair {k} residual {res:.3e} exceeds {tol:g} * ||M||_F"
            )
    return vals, vecs


def charpoly(m):
    """Monic characteristic polynomial det(x I - m), highest degree first."""
    return _kernels.berkowitz(as_matrix(m))


def _poly_derivative(c):
    deg = len(c) - 1
    return np.array([c[i] * (deg - i) for i in range(deg)], dtype=np.complex128)


def _newton(c, dc, x, iters=8):
    for _ in range(iters):
        p = np.polyval(c, x)
        dp = np.polyval(dc, x)
        if dp == 0:
            break
        step = p / dp
        x = x - step
        if abs(step) <= 1e-17 * max(1.0, abs(x)):
            break
    return x


# a root of multiplicity m is split by about eps**(1/m); clusters are tried at
# growing radii and a merge is kept only if p vanishes to working precision
CLUSTER_RADII = (1e-6, 1e-4, 1e-2)


def _refine_multiple_roots(c, roots, radii=CLUSTER_RADII):
    """``c`` must be accurate to rounding in each coefficient."""
    coef_mag = np.abs(np.asarray(c))
    for radius in radii:
        roots = _merge_pass(c, roots, coef_mag, radius)
    return roots


def _merge_pass(c, roots, coef_mag, cluster_rtol):
    """Collapse root clusters that stem from a multiple root.

    A cluster of ``m`` Aberth roots around a root of multiplicity ``m`` is only
    accurate to ``eps**(1/m)``; Newton on the ``(m-1)``-th derivative
    converges to it at full precision. The merged value is kept only when the
    polynomial vanishes there to working precision.
    """
    scale = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    remaining = list(roots)
    out = []
    while remaining:
        cluster = [remaining.pop(0)]
        grown = True
        while grown:
            grown = False
            for r in remaining[:]:
                if min(abs(r - x) for x in cluster) <= cluster_rtol * scale:
                    cluster.append(r)
                    remaining.remove(r)
                    grown = True
        r0 = cluster[0]
        if len(cluster) == 1:
            out.append(r0)
            continue
        deriv = np.asarray(c, dtype=np.complex128)
        for _ in range(len(cluster) - 1):
            deriv = _poly_derivative(deriv)
        merged = _newton(deriv, _poly_derivative(deriv), np.mean(cluster))
        noise = 16 * np.finfo(float).eps * np.polyval(coef_mag, abs(merged))
        if abs(np.polyval(c, merged)) <= noise and abs(merged - np.mean(cluster)) <= cluster_rtol * scale:
            out.extend([merged] * len(cluster))
        else:
            out.extend(cluster)
    return np.array(out, dtype=np.complex128)


def _gauss_ints(a):
    """Entries of ``a`` as exact Gaussian integers ``(re, im)`` times ``2**e``."""
    parts = [x for x in np.concatenate([a.real.ravel(), a.imag.ravel()]) if x != 0]
    if not parts:
        return [[(0, 0)] * a.shape[1] for _ in range(a.shape[0])], 0
    e = min(math.frexp(x)[1] for x in parts) - 53
    unit = Fraction(2) ** -e

    def exact(x):
        return int(Fraction(float(x)) * unit)

    return [[(exact(z.real), exact(z.imag)) for z in row] for row in a], e


def _exact_charpoly(a):
    """det(x I - a) of the floating-point matrix ``a``, exact until the final rounding.

    Berkowitz is division free, so running it on Gaussian integers loses
    nothing; each returned coefficient is correctly rounded.
    """
    m, e = _gauss_ints(a)
    n = len(m)

    def mul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def neg(x):
        return (-x[0], -x[1])

    def dot(xs, ys):
        re = im = 0
        for x, y in zip(xs, ys):
            p = mul(x, y)
            re += p[0]
            im += p[1]
        return (re, im)

    poly = [(1, 0), neg(m[0][0])]
    for r in range(1, n):
        col = [m[i][r] for i in range(r)]
        row = m[r][:r]
        t = [(1, 0), neg(m[r][r])]
        vec = col
        for _ in range(r):
            t.append(neg(dot(row, vec)))
            vec = [dot(m[i][:r], vec) for i in range(r)]
        new = []
        for i in range(r + 2):
            terms = [(t[i - j], poly[j]) for j in range(min(i, r) + 1) if i - j < len(t)]
            new.append(dot([x for x, _ in terms], [y for _, y in terms]))
        poly = new
    out = np.empty(n + 1, dtype=np.complex128)
    for k, (re, im) in enumerate(poly):
        f = Fraction(2) ** (e * k)
        out[k] = complex(float(re * f), float(im * f))
    return out


def charpoly_roots_oracle(m):
    """Eigenvalues via the characteristic polynomial, independent of the QR path.

    Exact Berkowitz expansion gives the coefficients; Aberth-Ehrlich
    iteration plus Newton polishing gives the roots. Limited to ``n <= 8``.
    """
    a = as_matrix(m)
    n = a.shape[0]
    if n > ORACLE_MAX_DIM:
        raise DimensionTooLarge(f"oracle supports n <= {ORACLE_MAX_DIM}, got {n}")
    # roots of the scaled matrix, multiplied back; the scale is a power of two
    s = _pow2_scale(a)
    c = _exact_charpoly(a / s)
    roots, info = _kernels.aberth(c)
    if info:
        raise NoConvergence("Aberth iteration did not converge")
    dc = _poly_derivative(c)
    roots = np.array([_newton(c, dc, r) for r in roots], dtype=np.complex128)
    roots = _refine_multiple_roots(c, roots)
    roots = roots * s
    order = np.lexsort((roots.imag, roots.real))
    return [complex(r) for r in roots[order]]
