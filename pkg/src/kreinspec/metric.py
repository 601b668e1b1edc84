"""Metric operators: pseudo-Hermiticity, signature and eta inner products."""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NearSingular, NotHermitian
from .numkernel import DEFAULT_RTOL, as_matrix, as_vector, eig_right, frob, mat_inverse

HERMITIAN_TOL = 1e-12
SINGULAR_TOL = 1e-12


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class MetricReport:
    is_hermitian: bool
    is_invertible: bool
    signature: tuple
    definiteness: Definiteness
    eigenvalues: tuple = ()


def pseudo_hermiticity_residual(H, eta):
    """``||H^H - eta H eta^-1||_F / ||H||_F``."""
    H = as_matrix(H)
    eta = as_matrix(eta)
    if H.shape != eta.shape:
        raise DimensionMismatch(f"H is {H.shape}, eta is {eta.shape}")
    r = frob(H.conj().T - eta @ H @ mat_inverse(eta))
    return r / (frob(H) or 1.0)


def is_pseudo_hermitian(H, eta, tol=DEFAULT_RTOL):
    return pseudo_hermiticity_residual(H, eta) <= tol


def metric_signature(eta):
    """Count positive and negative eigenvalues of a Hermitian metric.

    Raises NotHermitian when an entry of ``eta - eta^H`` exceeds
    ``1e-12 * ||eta||_F`` and NearSingular when an eigenvalue is within
    ``1e-12 * ||eta||_F`` of zero.
    """
    eta = as_matrix(eta)
    scale = frob(eta)
    if scale == 0.0:
        raise NearSingular("zero metric")
    asym = float(np.max(np.abs(eta - eta.conj().T)))
    if asym > HERMITIAN_TOL * scale:
        raise NotHermitian(f"max |eta - eta^H| = {asym:.3e}")
    sym = 0.5 * (eta + eta.conj().T)
    vals, _ = eig_right(sym)
    vals = np.sort(vals.real)
    if np.min(np.abs(vals)) < SINGULAR_TOL * scale:
        raise NearSingular(f"eigenvalue {vals[np.argmin(np.abs(vals))]:.3e} too close to zero")
    n_plus = int(np.sum(vals > 0))
    n_minus = int(np.sum(vals < 0))
    if n_minus == 0:
        kind = Definiteness.POSITIVE_DEFINITE
    elif n_plus == 0:
        kind = Definiteness.NEGATIVE_DEFINITE
    else:
        kind = Definiteness.INDEFINITE
    return MetricReport(True, True, (n_plus, n_minus), kind, tuple(float(v) for v in vals))


def eta_inner(x, y, eta):
    """``<x | eta y>``, conjugate-linear in ``x``."""
    eta = as_matrix(eta)
    x = as_vector(x, eta.shape[0])
    y = as_vector(y, eta.shape[0])
    return complex(np.vdot(x, eta @ y))


def eta_norm(x, eta):
    """Real part of ``<x|x>_eta`` (the imaginary part vanishes for Hermitian eta)."""
    return eta_inner(x, x, eta).real
