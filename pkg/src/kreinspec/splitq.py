"""Split-quaternions and quaternions through their 2x2 complex embeddings.

Both algebras are spanned by the 2x2 identity and three generator matrices:

* split-quaternions use the SU(1,1) set ``(-sx, -sy, i sz)``, whose squares
  are ``(+1, +1, -1)``;
* quaternions use the SU(2) set ``(i sx, i sy, i sz)``, all squaring to -1.

The multiplication table is not written down by hand. It is derived once per
basis by multiplying the generator matrices and decomposing the products
back onto the basis, so the component product agrees with the matrix
product by construction.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

SIGMA0 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class PauliBasis:
    sigma0: np.ndarray = SIGMA0
    sigmaX: np.ndarray = SIGMA_X
    sigmaY: np.ndarray = SIGMA_Y
    sigmaZ: np.ndarray = SIGMA_Z


PAULI = PauliBasis()


class Basis:
    """Generator set of a four-dimensional real algebra inside 2x2 matrices."""

    def __init__(self, name, generators):
        self.name = name
        self.matrices = (SIGMA0,) + tuple(np.asarray(g, dtype=np.complex128) for g in generators)

    def __repr__(self):
        return f"Basis({self.name!r})"

    @cached_property
    def _decomposer(self):
        # real 8x4 system: vec(M) = sum_k b_k vec(g_k)
        cols = [np.concatenate([g.real.ravel(), g.imag.ravel()]) for g in self.matrices]
        return np.linalg.pinv(np.array(cols).T)

    def decompose(self, m):
        """Real components of a 2x2 matrix lying in the span of the basis."""
        m = np.asarray(m, dtype=np.complex128)
        coords = self._decomposer @ np.concatenate([m.real.ravel(), m.imag.ravel()])
        return tuple(float(x) for x in np.round(coords, 12))

    @cached_property
    def table(self):
        """``table[i][j]`` holds the components of ``g_i g_j``.

        Entries are exact small integers for both supported bases, so they
        are rounded to remove pseudo-inverse noise.
        """
        out = []
        for gi in self.matrices:
            row = []
            for gj in self.matrices:
                row.append(tuple(int(round(x)) for x in self.decompose(gi @ gj)))
            out.append(tuple(row))
        return tuple(out)

    def squares(self):
        """Scalar part of each generator squared, e.g. ``(1, 1, -1)`` for split."""
        return tuple(self.table[k][k][0] for k in (1, 2, 3))


SPLIT = Basis("split", (-SIGMA_X, -SIGMA_Y, 1j * SIGMA_Z))
QUATERNION = Basis("quaternion", (1j * SIGMA_X, 1j * SIGMA_Y, 1j * SIGMA_Z))


@dataclass(frozen=True)
class SplitQuaternion:
    b0: float
    b1: float
    b2: float
    b3: float
    basis: Basis = SPLIT

    @property
    def components(self):
        return (self.b0, self.b1, self.b2, self.b3)

    def __mul__(self, other):
        return sq_mul(self, other)

    def norm(self):
        return sq_norm(self)

    def conj(self):
        return sq_conj(self)

    def embed(self):
        return sq_embed(self)


def _check_same_basis(p, q):
    if p.basis is not q.basis:
        raise ValueError(f"cannot multiply elements of {p.basis!r} and {q.basis!r}")


def sq_mul(p, q):
    _check_same_basis(p, q)
    table = p.basis.table
    out = [0, 0, 0, 0]
    pc, qc = p.components, q.components
    for i in range(4):
        if pc[i] == 0:
            continue
        for j in range(4):
            if qc[j] == 0:
                continue
            coef = pc[i] * qc[j]
            for k, t in enumerate(table[i][j]):
                if t:
                    out[k] += t * coef
    return SplitQuaternion(*out, basis=p.basis)


def sq_conj(q):
    return SplitQuaternion(q.b0, -q.b1, -q.b2, -q.b3, basis=q.basis)


def sq_norm(q):
    """Scalar part of ``q * conj(q)``; equals ``det(embed(q))``.

    For split-quaternions this is ``b0^2 + b3^2 - b1^2 - b2^2``.
    """
    return sq_mul(q, sq_conj(q)).b0


def sq_embed(q):
    """2x2 complex matrix ``b0 s0 + b1 g1 + b2 g2 + b3 g3``."""
    g = q.basis.matrices
    return q.b0 * g[0] + q.b1 * g[1] + q.b2 * g[2] + q.b3 * g[3]


def from_matrix(m, basis=SPLIT):
    return SplitQuaternion(*basis.decompose(m), basis=basis)
