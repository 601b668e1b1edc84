import numpy as np
import pytest

from kreinspec import splitq
from kreinspec.splitq import QUATERNION, SPLIT, SplitQuaternion, sq_conj, sq_embed, sq_mul, sq_norm

SX, SY, SZ = splitq.SIGMA_X, splitq.SIGMA_Y, splitq.SIGMA_Z
I2 = np.eye(2)


def test_unit_is_identity():
    q = SplitQuaternion(3, -1, 2, 5)
    assert sq_mul(SplitQuaternion(1, 0, 0, 0), q).components == q.components
    assert sq_mul(q, SplitQuaternion(1, 0, 0, 0)).components == q.components


def test_generator_squares():
    e1 = SplitQuaternion(0, 1, 0, 0)
    e3 = SplitQuaternion(0, 0, 0, 1)
    assert (e1 * e1).components == (1, 0, 0, 0)
    assert (e3 * e3).components == (-1, 0, 0, 0)


def test_basis_signatures():
    # split generators (-sx, -sy, i sz) vs quaternion generators (i sx, i sy, i sz)
    assert SPLIT.squares() == (1, 1, -1)
    assert QUATERNION.squares() == (-1, -1, -1)


@pytest.mark.parametrize("basis,expected", [(SPLIT, 1), (QUATERNION, -1)])
def test_first_generator_square_by_basis(basis, expected):
    e1 = SplitQuaternion(0, 1, 0, 0, basis=basis)
    assert (e1 * e1).components == (expected, 0, 0, 0)


def test_mixing_bases_rejected():
    with pytest.raises(ValueError):
        SplitQuaternion(1, 0, 0, 0) * SplitQuaternion(1, 0, 0, 0, basis=QUATERNION)


def test_conj_unit_and_norm_identity():
    assert sq_conj(SplitQuaternion(1, 0, 0, 0)).components == (1, 0, 0, 0)
    q = SplitQuaternion(2, 1, 1, 1)
    # N = 4 + 1 - 1 - 1
    assert sq_mul(q, sq_conj(q)).components == (3, 0, 0, 0)
    assert sq_norm(q) == 3


def test_conj_gives_c_from_b():
    # c = b0 s0 + b1 sx + b2 sy - i b3 sz when b = b0 s0 - b1 sx - b2 sy + i b3 sz
    b0, b1, b2, b3 = 0.7, -1.2, 0.4, 2.5
    c = sq_embed(sq_conj(SplitQuaternion(b0, b1, b2, b3)))
    np.testing.assert_array_equal(c, b0 * I2 + b1 * SX + b2 * SY - 1j * b3 * SZ)


def test_embed_basic():
    np.testing.assert_array_equal(sq_embed(SplitQuaternion(1, 0, 0, 0)), I2)
    np.testing.assert_array_equal(sq_embed(SplitQuaternion(0, 0, 0, 1)), [[1j, 0], [0, -1j]])


def test_embed_explicit_form_and_det():
    b0, b1, b2, b3 = 1.5, -0.5, 2.0, 0.25
    m = sq_embed(SplitQuaternion(b0, b1, b2, b3))
    hand = np.array([[b0 + 1j * b3, -b1 + 1j * b2], [-b1 - 1j * b2, b0 - 1j * b3]])
    np.testing.assert_array_equal(m, hand)
    assert np.linalg.det(m) == pytest.approx(b0 ** 2 + b3 ** 2 - b1 ** 2 - b2 ** 2, abs=1e-14)


def test_quaternion_norm_is_euclidean():
    q = SplitQuaternion(1, 2, 3, 4, basis=QUATERNION)
    assert sq_norm(q) == 30
    assert np.linalg.det(sq_embed(q)).real == pytest.approx(30)


def test_from_matrix_roundtrip():
    q = SplitQuaternion(1.0, -2.0, 0.5, 3.0)
    assert splitq.from_matrix(sq_embed(q)).components == q.components


def test_multiplication_table_matches_matrices():
    for basis in (SPLIT, QUATERNION):
        g = basis.matrices
        for i in range(4):
            for j in range(4):
                comps = basis.table[i][j]
                recon = sum(c * gk for c, gk in zip(comps, g))
                np.testing.assert_array_equal(recon, g[i] @ g[j])


def test_integer_products_stay_exact():
    p = SplitQuaternion(3, -7, 2, 9)
    q = SplitQuaternion(-4, 1, 8, -2)
    r = p * q
    assert all(isinstance(x, int) for x in r.components)
    np.testing.assert_array_equal(sq_embed(r), sq_embed(p) @ sq_embed(q))
