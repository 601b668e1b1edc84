"""Antiunitary operators ``theta = U K`` and the even parity/time-reversal pair.

An antiunitary operator is stored through its unitary part ``U`` only;
complex conjugation ``K`` is applied when the operator acts. Composition and
squares follow from ``(U K)(V K) = U conj(V)``.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, OddDimension
from .numkernel import as_matrix, as_vector, frob
from .splitq import SIGMA_X

UNITARY_TOL = 1e-12
RELATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class AntilinearOp:
    U: np.ndarray

    def __post_init__(self):
        u = as_matrix(self.U)
        n = u.shape[0]
        dev = frob(u.conj().T @ u - np.eye(n))
        if dev > UNITARY_TOL * max(1.0, np.sqrt(n)):
            raise ValueError(f"U is not unitary (||U^H U - I||_F = {dev:.3e})")
        u.setflags(write=False)
        object.__setattr__(self, "U", u)

    @property
    def dim(self):
        return self.U.shape[0]

    def __call__(self, x):
        return apply(self, x)

    def squared(self):
        """The linear map ``theta^2 = U conj(U)``."""
        return self.U @ self.U.conj()

    def is_even(self, tol=UNITARY_TOL):
        """True when ``theta^2 = +1``."""
        return frob(self.squared() - np.eye(self.dim)) <= tol

    def then(self, other):
        """``other`` applied after ``self`` is linear: ``V conj(U)``."""
        return other.U @ self.U.conj()

    @classmethod
    def conjugation(cls, n):
        return cls(np.eye(n, dtype=np.complex128))


class Relation(enum.Enum):
    COMMUTE = "Commute"
    ANTICOMMUTE = "Anticommute"
    NEITHER = "Neither"


@dataclass(frozen=True)
class EtaPtRelation:
    value: Relation
    commute_residual: float
    anticommute_residual: float


def _half(n):
    if n <= 0 or n % 2:
        raise OddDimension(f"dimension must be a positive even integer, got {n}")
    return n // 2


def build_parity(n):
    """``S = diag(I, -I)`` with identity blocks of size ``n/2``."""
    h = _half(n)
    return np.diag(np.concatenate([np.ones(h), -np.ones(h)])).astype(np.complex128)


def build_timereversal(n):
    """Even time reversal ``T = Z K`` with ``Z = diag(sx, ..., sx)``."""
    _half(n)
    return AntilinearOp(np.kron(np.eye(n // 2), SIGMA_X))


def compose_pt(P, T):
    P = as_matrix(P)
    if P.shape[0] != T.dim:
        raise DimensionMismatch(f"P is {P.shape[0]}-dimensional, T is {T.dim}-dimensional")
    return AntilinearOp(P @ T.U)


def build_pt(n):
    """``PT`` with ``U = S Z``.

    ``S`` and ``Z`` commute only when ``n/2`` is even; for ``n = 2, 6, 10, ...``
    the middle ``sx`` block straddles the sign change of ``S`` and the
    product squares to ``-1`` on that block. Check
    :meth:`AntilinearOp.is_even` when that matters.
    """
    return compose_pt(build_parity(n), build_timereversal(n))


def apply(theta, x):
    x = as_vector(x) if np.ndim(x) == 1 else as_matrix(x, square=False)
    if x.shape[0] != theta.dim:
        raise DimensionMismatch(f"operator is {theta.dim}-dimensional, vector is {x.shape[0]}")
    return theta.U @ np.conj(x)


def commutator_residual(theta, H):
    """``||H U - U conj(H)||_F``, zero exactly when ``theta H = H theta``."""
    H = as_matrix(H)
    if H.shape[0] != theta.dim:
        raise DimensionMismatch(f"operator is {theta.dim}-dimensional, H is {H.shape[0]}")
    return frob(H @ theta.U - theta.U @ np.conj(H))


def commutes_with(theta, H, tol=RELATION_TOL):
    H = as_matrix(H)
    return commutator_residual(theta, H) <= tol * frob(H)


def eta_pt_relation(eta, theta, tol=RELATION_TOL):
    """Classify a metric as commuting or anticommuting with ``theta``.

    ``tol`` is an absolute bound on the Frobenius residuals.
    """
    eta = as_matrix(eta)
    if eta.shape[0] != theta.dim:
        raise DimensionMismatch(f"operator is {theta.dim}-dimensional, eta is {eta.shape[0]}")
    u = theta.U
    rc = frob(eta @ u - u @ np.conj(eta))
    ra = frob(eta @ u + u @ np.conj(eta))
    if rc <= tol:
        value = Relation.COMMUTE
    elif ra <= tol:
        value = Relation.ANTICOMMUTE
    else:
        value = Relation.NEITHER
    return EtaPtRelation(value, rc, ra)
