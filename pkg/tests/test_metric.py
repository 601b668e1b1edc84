import numpy as np
import pytest

from kreinspec import biortho, fourlevel, metric
from kreinspec.errors import DimensionMismatch, NearSingular, NotHermitian
from kreinspec.metric import Definiteness

from conftest import MODEL, random_complex


def test_hermitian_with_identity():
    h = np.array([[2.0, 1 - 1j], [1 + 1j, -1.0]])
    assert metric.is_pseudo_hermitian(h, np.eye(2))


def test_four_level_with_indefinite_metric():
    H = fourlevel.build_hamiltonian(MODEL)
    assert metric.pseudo_hermiticity_residual(H, fourlevel.indefinite_metric()) == 0.0
    assert metric.is_pseudo_hermitian(H, fourlevel.indefinite_metric())


@pytest.mark.parametrize("A,B", [(0.5 + 0.3j, 0.2 - 0.1j), (0.0, 0.3j), (2.0, 1.0)])
def test_four_level_not_hermitian(A, B):
    H = fourlevel.build_hamiltonian(fourlevel.FourLevelParams(1.0, A, B))
    assert not metric.is_pseudo_hermitian(H, np.eye(4))


@pytest.mark.parametrize("A", [1.0, 0.5 + 0.3j, -2j])
def test_four_level_hermitian_without_b(A):
    # the iA* / -iA entries sit in Hermitian-conjugate positions; only B breaks Hermiticity
    H = fourlevel.build_hamiltonian(fourlevel.FourLevelParams(1.0, A, 0.0))
    np.testing.assert_array_equal(H, H.conj().T)
    assert metric.is_pseudo_hermitian(H, np.eye(4))


def test_two_metrics_coexist():
    H = fourlevel.build_hamiltonian(MODEL)
    eta_plus = biortho.spectral_metric(biortho.build_biortho(H))
    assert metric.is_pseudo_hermitian(H, eta_plus)
    assert metric.is_pseudo_hermitian(H, fourlevel.indefinite_metric())


def test_signature_identity():
    rep = metric.metric_signature(np.eye(4))
    assert rep.signature == (4, 0)
    assert rep.definiteness is Definiteness.POSITIVE_DEFINITE


def test_signature_indefinite_metric():
    rep = metric.metric_signature(fourlevel.indefinite_metric())
    assert rep.signature == (2, 2)
    assert rep.definiteness is Definiteness.INDEFINITE
    assert metric.metric_signature(-np.eye(3)).definiteness is Definiteness.NEGATIVE_DEFINITE


def test_signature_spectral_metric():
    H = fourlevel.build_hamiltonian(MODEL)
    eta_plus = biortho.spectral_metric(biortho.build_biortho(H))
    rep = metric.metric_signature(eta_plus)
    assert rep.definiteness is Definiteness.POSITIVE_DEFINITE
    # independent check of the eigenvalues
    assert np.all(np.linalg.eigvalsh(eta_plus) > 0)


def test_signature_errors():
    with pytest.raises(NotHermitian):
        metric.metric_signature(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(NearSingular):
        metric.metric_signature(np.diag([1.0, 0.0]))
    with pytest.raises(NearSingular):
        metric.metric_signature(np.zeros((2, 2)))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        metric.pseudo_hermiticity_residual(np.eye(2), np.eye(3))


def test_eta_inner_identity_is_standard(rng):
    x = rng.normal(size=3) + 1j * rng.normal(size=3)
    y = rng.normal(size=3) + 1j * rng.normal(size=3)
    assert metric.eta_inner(x, y, np.eye(3)) == pytest.approx(np.vdot(x, y), abs=1e-15)


def test_eta_norms_of_printed_doublet_vectors():
    # psi_{++} and psi_{+-} as printed, with 2 Omega (Omega + a0) k^2 = 1
    a0, A, B = MODEL.a0, MODEL.A, MODEL.B
    w = np.sqrt(a0 ** 2 + abs(A) ** 2 - abs(B) ** 2)
    k = 1 / np.sqrt(2 * w * (w + a0))
    psi_pp = k * np.array([w + a0, 0, 1j * B, -1j * A])
    psi_pm = k * np.array([0, w + a0, -1j * A.conjugate(), 1j * B.conjugate()])
    eta = fourlevel.indefinite_metric()
    assert metric.eta_norm(psi_pp, eta) == pytest.approx(1.0, abs=1e-14)
    assert metric.eta_norm(psi_pm, eta) == pytest.approx(-1.0, abs=1e-14)


def test_pseudo_hermitian_spectrum_closed_under_conjugation(rng):
    # H = eta^-1 K with K Hermitian is eta-pseudo-Hermitian for Hermitian eta
    eta = np.diag([1.0, -1.0, 2.0, -0.5])
    K = random_complex(rng, 4)
    K = K + K.conj().T
    H = np.linalg.inv(eta) @ K
    assert metric.is_pseudo_hermitian(H, eta)
    vals = np.linalg.eigvals(H)
    for v in vals:
        assert np.min(np.abs(vals - v.conjugate())) < 1e-10
