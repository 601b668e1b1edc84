"""Biorthonormal eigensystems of diagonalizable non-Hermitian matrices.

For ``H`` with right eigenvectors ``psi_n`` and eigenvectors ``phi_n`` of
``H^H`` (eigenvalue ``conj(E_n)``), the pair is normalised so that
``<psi_n|phi_m> = delta_nm`` and ``sum_n |psi_n><phi_n| = 1``. Degenerate
eigenvalues are handled block-wise: each cluster gets an orthonormal basis of
its right eigenspace, and the matching left block is rescaled by the inverse
block Gram matrix.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ComplexSpectrum, Defective, NoConvergence
from .numkernel import DEFAULT_RTOL, as_matrix, eigvals, fix_phase, frob, mat_inverse

GROUP_TOL = 1e-8
GRAM_TOL = 1e-10
REAL_TOL = 1e-8
# near an exceptional point rounding splits a defective eigenvalue by about
# sqrt(eps * ||H||); clusters with a poor Gram matrix are regrouped at this radius
EP_MERGE_RTOL = 1e-6
ILL_GRAM = 1e-6
PAIR_RTOL = 1e-6


@dataclass(frozen=True)
class Level:
    E: complex
    psi: np.ndarray
    phi: np.ndarray


@dataclass(frozen=True)
class BiorthoSystem:
    H: np.ndarray
    levels: tuple
    blocks: tuple = ()
    residuals: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.H.shape[0]

    @property
    def energies(self):
        return np.array([lv.E for lv in self.levels], dtype=np.complex128)

    @property
    def psi(self):
        """Right eigenvectors as columns."""
        return np.column_stack([lv.psi for lv in self.levels])

    @property
    def phi(self):
        return np.column_stack([lv.phi for lv in self.levels])

    def without(self, index):
        """Copy with one level removed (useful for completeness checks)."""
        levels = tuple(lv for k, lv in enumerate(self.levels) if k != index)
        return BiorthoSystem(self.H, levels, (), {})

    def multiplicities(self):
        """``[(E, m), ...]`` per degenerate block."""
        return [(self.levels[b[0]].E, len(b)) for b in self.blocks]


def _pair_spectra(vals, left_vals, scale):
    """Greedy nearest match of ``E_n`` with ``conj(E'_m)``; returns the permutation."""
    targets = np.conj(left_vals)
    used = np.zeros(len(targets), dtype=bool)
    perm = []
    for e in vals:
        dist = np.abs(targets - e)
        dist[used] = np.inf
        m = int(np.argmin(dist))
        if not np.isfinite(dist[m]) or dist[m] > PAIR_RTOL * scale:
            raise NoConvergence(
                f"eigenvalue {e:.6g} of H has no partner in the spectrum of H^H"
            )
        used[m] = True
        perm.append(m)
    return perm


def _cluster(vals, radius):
    """Single-linkage clusters of eigenvalues closer than ``radius``."""
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = list(groups.values())
    out.sort(key=lambda g: (round(np.mean(vals[g]).real, 12), round(np.mean(vals[g]).imag, 12)))
    return out


def _null_basis(a, m):
    """Orthonormal basis of the ``m`` least-singular right directions of ``a``."""
    _, s, vh = np.linalg.svd(a)
    basis = vh[-m:].conj().T
    return basis, s[-m:]


def _block(H, lam, m, scale):
    n = H.shape[0]
    eye = np.eye(n)
    right, s_right = _null_basis(H - lam * eye, m)
    left, s_left = _null_basis(H.conj().T - np.conj(lam) * eye, m)
    gram = right.conj().T @ left
    gram_min = float(np.linalg.svd(gram, compute_uv=False)[-1])
    null_res = float(max(s_right[0], s_left[0])) / scale
    return right, left, gram, gram_min, null_res


def _merge_ill_groups(H, vals, groups, scale):
    """Join clusters whose block Gram matrix is ill conditioned with close neighbours."""
    ill = []
    for k, g in enumerate(groups):
        lam = complex(np.mean(vals[g]))
        if _block(H, lam, len(g), scale)[3] < ILL_GRAM:
            ill.append(k)
    if not ill:
        return groups
    owner = list(range(len(groups)))

    def find(k):
        while owner[k] != k:
            k = owner[k]
        return k

    radius = EP_MERGE_RTOL * scale
    for k in ill:
        lam = np.mean(vals[groups[k]])
        for j, other in enumerate(groups):
            if j != k and np.min(np.abs(vals[other] - lam)) <= radius:
                owner[find(j)] = find(k)
    merged = {}
    for k, g in enumerate(groups):
        merged.setdefault(find(k), []).extend(g)
    return [sorted(g) for g in merged.values()]


def build_biortho(H, group_tol=GROUP_TOL, resid_tol=DEFAULT_RTOL):
    """Complete biorthonormal eigensystem of a diagonalizable matrix.

    Raises Defective when some eigenvalue cluster has a singular block Gram
    matrix (no eigenvector basis, i.e. an exceptional point), and
    NoConvergence when the eigensolver or the final residual checks fail.
    """
    if not (group_tol > 0 and resid_tol > 0):
        raise ValueError("tolerances must be positive")
    H = as_matrix(H)
    n = H.shape[0]
    scale = frob(H) or 1.0

    vals = eigvals(H)
    left_vals = eigvals(H.conj().T)
    _pair_spectra(vals, left_vals, scale)

    groups = _cluster(vals, group_tol * scale)
    groups = _merge_ill_groups(H, vals, groups, scale)
    blocks = []
    for g in groups:
        lam = complex(np.mean(vals[g]))
        right, left, gram, gram_min, null_res = _block(H, lam, len(g), scale)
        if null_res > np.sqrt(group_tol) or gram_min < GRAM_TOL:
            raise Defective(
                f"eigenvalue {lam:.6g} (multiplicity {len(g)}): block Gram singular value "
                f"{gram_min:.3e}, eigenspace residual {null_res:.3e}"
            )
        blocks.append((lam, right, left))

    levels = []
    block_index = []
    for lam, right, left in blocks:
        psi = np.column_stack([fix_phase(right[:, k]) for k in range(right.shape[1])])
        phi = left @ mat_inverse(psi.conj().T @ left)
        start = len(levels)
        for k in range(psi.shape[1]):
            levels.append(Level(lam, psi[:, k], phi[:, k]))
        block_index.append(tuple(range(start, len(levels))))

    system = BiorthoSystem(H, tuple(levels), tuple(block_index))
    res = _residuals(system)
    object.__setattr__(system, "residuals", res)
    if (
        res["right"] > resid_tol
        or res["left"] > resid_tol
        or res["biorthonormality"] > resid_tol
        or res["completeness"] > resid_tol * np.sqrt(n)
    ):
        raise NoConvergence(f"biorthonormal system residuals exceed {resid_tol:g}: {res}")
    return system


def _residuals(system):
    H = system.H
    scale = frob(H) or 1.0
    Hh = H.conj().T
    right = max(np.linalg.norm(H @ lv.psi - lv.E * lv.psi) / np.linalg.norm(lv.psi) for lv in system.levels)
    left = max(
        np.linalg.norm(Hh @ lv.phi - np.conj(lv.E) * lv.phi) / np.linalg.norm(lv.phi)
        for lv in system.levels
    )
    psi, phi = system.psi, system.phi
    n = system.dim
    return {
        "right": float(right / scale),
        "left": float(left / scale),
        "biorthonormality": float(np.max(np.abs(psi.conj().T @ phi - np.eye(n)))),
        "completeness": completeness_residual(system),
        "spectral": spectral_residual(system),
    }


def completeness_residual(system):
    """``|| sum_n |psi_n><phi_n| - 1 ||_F``."""
    n = system.dim
    if not system.levels:
        return float(np.sqrt(n))
    return frob(system.psi @ system.phi.conj().T - np.eye(n))


def spectral_residual(system):
    """``|| sum_n E_n |psi_n><phi_n| - H ||_F / ||H||_F``."""
    recon = (system.psi * system.energies) @ system.phi.conj().T
    return frob(recon - system.H) / (frob(system.H) or 1.0)


def is_real_spectrum(system, tol=REAL_TOL):
    scale = frob(system.H) or 1.0
    return bool(np.all(np.abs(system.energies.imag) <= tol * scale))


def spectral_metric(system, tol=REAL_TOL):
    """Positive-definite metric ``sum_n |phi_n><phi_n|``.

    It satisfies ``H^H = eta H eta^-1`` and maps ``psi_n`` to ``phi_n``.
    Requires a real spectrum (``|Im E_n| <= tol * ||H||_F``).
    """
    scale = frob(system.H) or 1.0
    worst = float(np.max(np.abs(system.energies.imag)))
    if worst > tol * scale:
        raise ComplexSpectrum(f"max |Im E| = {worst:.3e} exceeds {tol:g} * ||H||_F")
    phi = system.phi
    eta = phi @ phi.conj().T
    return 0.5 * (eta + eta.conj().T)
