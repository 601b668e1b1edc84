import numpy as np
import pytest

from kreinspec import antilinear, fourlevel
from kreinspec.antilinear import AntilinearOp, Relation
from kreinspec.errors import OddDimension

from conftest import MODEL, random_complex

SX = np.array([[0, 1], [1, 0]])


def test_parity():
    np.testing.assert_array_equal(antilinear.build_parity(2), np.diag([1, -1]))
    np.testing.assert_array_equal(antilinear.build_parity(4), np.diag([1, 1, -1, -1]))
    np.testing.assert_array_equal(antilinear.build_parity(6), np.diag([1, 1, 1, -1, -1, -1]))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_odd_dimension_rejected(n):
    with pytest.raises(OddDimension):
        antilinear.build_parity(n)
    with pytest.raises(OddDimension):
        antilinear.build_timereversal(n)


def test_timereversal():
    np.testing.assert_array_equal(antilinear.build_timereversal(2).U, SX)
    # T = (sx + sx) K for four levels
    np.testing.assert_array_equal(antilinear.build_timereversal(4).U, np.kron(np.eye(2), SX))


def test_timereversal_involution_on_real_vector(rng):
    T = antilinear.build_timereversal(4)
    x = rng.normal(size=4)
    np.testing.assert_array_equal(antilinear.apply(T, antilinear.apply(T, x)), x)


def test_pt_four_level():
    pt = antilinear.build_pt(4)
    expected = np.block([[SX, np.zeros((2, 2))], [np.zeros((2, 2)), -SX]])
    np.testing.assert_array_equal(pt.U, expected)
    np.testing.assert_array_equal(pt.squared(), np.eye(4))
    np.testing.assert_array_equal(antilinear.apply(pt, [1, 0, 0, 0]), [0, 1, 0, 0])


def test_compose_matches_build():
    P = antilinear.build_parity(6)
    T = antilinear.build_timereversal(6)
    np.testing.assert_array_equal(antilinear.compose_pt(P, T).U, antilinear.build_pt(6).U)


@pytest.mark.parametrize("n", [4, 8, 12])
def test_pt_squared_is_identity_exactly(n, rng):
    pt = antilinear.build_pt(n)
    assert pt.is_even()
    np.testing.assert_array_equal(pt.squared(), np.eye(n))
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    np.testing.assert_allclose(pt(pt(x)), x, atol=1e-13)


@pytest.mark.parametrize("n", [2, 6, 10])
def test_pt_squares_to_minus_one_when_half_dim_is_odd(n):
    # S = diag(I, -I) and Z = diag(sx, ...) anticommute on the straddling block
    pt = antilinear.build_pt(n)
    assert not pt.is_even()
    expected = np.ones(n)
    expected[n // 2 - 1: n // 2 + 1] = -1
    np.testing.assert_array_equal(pt.squared(), np.diag(expected))
    assert antilinear.build_timereversal(n).is_even()


def test_apply_plain_conjugation():
    K = AntilinearOp.conjugation(2)
    np.testing.assert_array_equal(antilinear.apply(K, [1j, 0]), [-1j, 0])


def test_pt_maps_model_doublet_vectors():
    # psi_{-+} -> psi_{--} and psi_{++} -> psi_{+-} as printed for the four-level model
    A, B, a0 = MODEL.A, MODEL.B, MODEL.a0
    w = np.sqrt(a0 ** 2 + abs(A) ** 2 - abs(B) ** 2)
    wa = w + a0
    pt = fourlevel.pt_operator()
    psi_mp = np.array([1j * A.conjugate(), 1j * B, 0, -wa])
    psi_mm = np.array([-1j * B.conjugate(), -1j * A, wa, 0])
    psi_pp = np.array([wa, 0, 1j * B, -1j * A])
    psi_pm = np.array([0, wa, -1j * A.conjugate(), 1j * B.conjugate()])
    np.testing.assert_allclose(antilinear.apply(pt, psi_mp), psi_mm, atol=1e-15)
    np.testing.assert_allclose(antilinear.apply(pt, psi_pp), psi_pm, atol=1e-15)


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        AntilinearOp(np.diag([1.0, 2.0]))


def test_operator_is_read_only():
    pt = antilinear.build_pt(4)
    with pytest.raises(ValueError):
        pt.U[0, 0] = 5


def test_commutes_with():
    K = AntilinearOp.conjugation(3)
    assert antilinear.commutes_with(K, np.arange(9.0).reshape(3, 3))
    pt = fourlevel.pt_operator()
    assert antilinear.commutes_with(pt, fourlevel.build_hamiltonian(MODEL))
    assert not antilinear.commutes_with(pt, np.diag([1j, 1j, -1j, -1j]))
    # sx diag(-i, i) = diag(i, -i) sx, so this one does commute
    assert antilinear.commutes_with(pt, np.diag([1j, -1j, 1j, -1j]))


def test_commutes_dimension_mismatch():
    with pytest.raises(ValueError):
        antilinear.commutator_residual(antilinear.build_pt(4), np.eye(2))


def test_eta_pt_relation():
    pt = fourlevel.pt_operator()
    rel = antilinear.eta_pt_relation(np.eye(4), pt)
    assert rel.value is Relation.COMMUTE
    rel = antilinear.eta_pt_relation(fourlevel.indefinite_metric(), pt)
    assert rel.value is Relation.ANTICOMMUTE
    assert rel.anticommute_residual == 0.0
    rel = antilinear.eta_pt_relation(np.diag([1.0, 2, 3, 4]), pt)
    assert rel.value is Relation.NEITHER


def test_antiunitarity(rng):
    q, _ = np.linalg.qr(random_complex(rng, 5))
    theta = AntilinearOp(q)
    x = rng.normal(size=5) + 1j * rng.normal(size=5)
    y = rng.normal(size=5) + 1j * rng.normal(size=5)
    assert abs(np.vdot(theta(x), theta(y)) - np.vdot(y, x)) <= 1e-12
