"""PT doublets, their Krein-space assembly, and PT phase classification.

When the metric ``eta`` anticommutes with an even antiunitary symmetry
``theta`` of ``H``, every real eigenvalue carries pairs ``(psi, theta psi)``
that are linearly independent, eta-orthogonal, and of eta-norm ``+1`` and
``-1``. The PT-invariant combinations ``chi = psi + theta psi`` span a space
whose eta-positive and eta-negative parts are orthogonal.
"""
import enum
from dataclasses import dataclass

import numpy as np

from . import antilinear
from .biortho import GROUP_TOL, REAL_TOL, build_biortho, is_real_spectrum
from .errors import DegenerateChi, Defective, KreinSpecError, PreconditionFailed
from .metric import pseudo_hermiticity_residual
from .numkernel import as_matrix, fix_phase, frob

DOUBLET_TOL = 1e-10


class PtPhase(enum.Enum):
    UNBROKEN = "Unbroken"
    BROKEN = "Broken"
    EXCEPTIONAL_POINT = "ExceptionalPoint"


@dataclass(frozen=True)
class PtDoublet:
    E: complex
    psi: np.ndarray
    pt_psi: np.ndarray
    phi: np.ndarray
    eta_norm_psi: float
    eta_norm_pt_psi: float
    orthogonality: float
    gram_det: float
    eig_residual: float


@dataclass(frozen=True)
class KreinDecomposition:
    chi_states: tuple
    h_plus_basis: tuple
    h_minus_basis: tuple
    energies: tuple
    residuals: dict


def _eta_split(basis, eta, theta, tol):
    """Split a theta-invariant eigenspace into eta-orthogonal doublets.

    Repeatedly takes the most eta-positive direction ``psi`` of the remaining
    space, pairs it with ``theta psi``, and continues in the eta-orthogonal
    complement of both (that complement is again theta-invariant).
    """
    pairs = []
    v = basis
    while v.shape[1] > 0:
        if v.shape[1] % 2:
            raise PreconditionFailed(
                "even eigenspace dimension", float(v.shape[1]),
                "an odd-dimensional eigenspace cannot split into PT doublets",
            )
        m = v.conj().T @ eta @ v
        m = 0.5 * (m + m.conj().T)
        w, c = np.linalg.eigh(m)
        if w[-1] <= tol:
            raise PreconditionFailed("eta-positive direction in eigenspace", float(w[-1]))
        psi = fix_phase(v @ c[:, -1]) / np.sqrt(w[-1])
        pt_psi = antilinear.apply(theta, psi)
        pairs.append((psi, pt_psi))
        # eta-orthogonal complement of span{psi, theta psi}; norms are +1 and -1
        proj = v - np.outer(psi, psi.conj() @ eta @ v) + np.outer(pt_psi, pt_psi.conj() @ eta @ v)
        u, s, _ = np.linalg.svd(proj, full_matrices=False)
        keep = v.shape[1] - 2
        v = u[:, :keep]
    return pairs


def find_pt_doublets(H, eta, theta, tol=DOUBLET_TOL, group_tol=GROUP_TOL):
    """PT doublets of every eigenvalue of ``H``.

    Preconditions (each raises PreconditionFailed naming itself): ``H`` is
    eta-pseudo-Hermitian, ``theta`` commutes with ``H``, ``eta``
    anticommutes with ``theta``, and the spectrum is real. Raises Defective
    at exceptional points.
    """
    H = as_matrix(H)
    eta = as_matrix(eta)
    scale = frob(H) or 1.0

    r = pseudo_hermiticity_residual(H, eta)
    if r > tol:
        raise PreconditionFailed("is_pseudo_hermitian", r)
    r = antilinear.commutator_residual(theta, H) / scale
    if r > tol:
        raise PreconditionFailed("commutes_with", r)
    rel = antilinear.eta_pt_relation(eta, theta, tol)
    if rel.value is not antilinear.Relation.ANTICOMMUTE:
        raise PreconditionFailed(
            "eta_pt_relation = Anticommute", rel.anticommute_residual, f"found {rel.value.value}"
        )

    system = build_biortho(H, group_tol=group_tol)
    if not is_real_spectrum(system):
        worst = float(np.max(np.abs(system.energies.imag))) / scale
        raise PreconditionFailed("real spectrum", worst)

    doublets = []
    for block in system.blocks:
        E = complex(system.levels[block[0]].E.real)
        basis = np.column_stack([system.levels[k].psi for k in block])
        for psi, pt_psi in _eta_split(basis, eta, theta, tol):
            doublets.append(_make_doublet(H, eta, E, psi, pt_psi, tol, scale))
    return doublets


def _make_doublet(H, eta, E, psi, pt_psi, tol, scale):
    phi = eta @ psi
    norm_psi = float(np.vdot(psi, eta @ psi).real)
    norm_pt = float(np.vdot(pt_psi, eta @ pt_psi).real)
    ortho = abs(np.vdot(phi, pt_psi))
    g = np.array([[np.vdot(psi, psi), np.vdot(psi, pt_psi)], [np.vdot(pt_psi, psi), np.vdot(pt_psi, pt_psi)]])
    gram_det = float(np.linalg.det(g).real)
    eig_res = max(
        np.linalg.norm(H @ psi - E * psi) / np.linalg.norm(psi),
        np.linalg.norm(H @ pt_psi - E * pt_psi) / np.linalg.norm(pt_psi),
    ) / scale
    failures = []
    if eig_res > tol:
        failures.append(f"eigen residual {eig_res:.3e}")
    if ortho > tol:
        failures.append(f"|<phi|PT psi>| = {ortho:.3e}")
    if gram_det < tol:
        failures.append(f"Gram determinant {gram_det:.3e}")
    if abs(norm_psi - 1) > tol or abs(norm_pt + 1) > tol:
        failures.append(f"eta-norms ({norm_psi:.6g}, {norm_pt:.6g})")
    if failures:
        raise KreinSpecError(f"doublet at E = {E:.6g} failed verification: " + "; ".join(failures))
    return PtDoublet(E, psi, pt_psi, phi, norm_psi, norm_pt, float(ortho), gram_det, float(eig_res))


def build_krein(doublets, theta, H=None, eta=None, tol=DOUBLET_TOL):
    """Assemble ``chi_n = psi_n + theta psi_n`` and the Krein splitting.

    ``H`` and ``eta`` are optional; when given, the eigen-equation of each
    chi and the eta-orthogonality of the two subspaces are checked as well.
    """
    if not doublets:
        raise ValueError("no doublets to assemble")
    chis = []
    plus = []
    minus = []
    for d in doublets:
        psi = d.psi
        chi = psi + antilinear.apply(theta, psi)
        if np.linalg.norm(chi) < tol * max(1.0, np.linalg.norm(psi)):
            # theta psi = -psi, hence theta(i psi) = i psi and chi = 2i psi
            psi = 1j * psi
            chi = psi + antilinear.apply(theta, psi)
            if np.linalg.norm(chi) < tol * max(1.0, np.linalg.norm(psi)):
                raise DegenerateChi(f"chi vanishes at E = {d.E:.6g} for psi and i psi")
        chis.append(chi)
        plus.append(psi)
        minus.append(antilinear.apply(theta, psi))

    res = {
        "pt_invariance": max(
            float(np.linalg.norm(antilinear.apply(theta, c) - c) / np.linalg.norm(c)) for c in chis
        )
    }
    stacked = np.column_stack(plus + minus)
    sv = np.linalg.svd(stacked, compute_uv=False)
    res["min_singular_value"] = float(sv[-1])
    res["full_rank"] = bool(len(plus + minus) == stacked.shape[0] and sv[-1] >= 1e-8)
    if H is not None:
        H = as_matrix(H)
        res["eigen"] = max(
            float(np.linalg.norm(H @ c - d.E * c) / np.linalg.norm(c)) for c, d in zip(chis, doublets)
        )
    if eta is not None:
        eta = as_matrix(eta)
        res["eta_cross"] = max(
            abs(complex(np.vdot(u, eta @ v))) for u in plus for v in minus
        )
    return KreinDecomposition(
        tuple(chis), tuple(plus), tuple(minus), tuple(d.E for d in doublets), res
    )


def pt_deviation(theta, v):
    """Distance of unit ``v`` from the ray of ``theta v``: zero iff ``theta v = e^{ia} v``."""
    u = v / np.linalg.norm(v)
    tu = antilinear.apply(theta, u)
    overlap = np.vdot(tu, u)
    # align the phase explicitly; sqrt(2 - 2|overlap|) would lose half the digits
    phase = overlap / abs(overlap) if overlap != 0 else 1.0
    return float(np.linalg.norm(u - phase * tu))


def classify_pt_phase(H, tol=REAL_TOL):
    """Unbroken (real spectrum), Broken (complex pairs) or ExceptionalPoint (defective)."""
    H = as_matrix(H)
    try:
        system = build_biortho(H)
    except Defective:
        return PtPhase.EXCEPTIONAL_POINT
    if is_real_spectrum(system, tol):
        return PtPhase.UNBROKEN
    return PtPhase.BROKEN
