"""Property-based checks of the algebraic invariants."""
import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kreinspec import antilinear, biortho, fourlevel, kreindeg, metric, numkernel, splitq
from kreinspec.matrixio import format_matrix, parse_matrix

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
small_int = st.integers(-20, 20)


def complex_matrices(n):
    return st.builds(
        lambda re, im: re + 1j * im,
        arrays(np.float64, (n, n), elements=finite),
        arrays(np.float64, (n, n), elements=finite),
    )


def complex_vectors(n):
    return st.builds(
        lambda re, im: re + 1j * im,
        arrays(np.float64, n, elements=finite),
        arrays(np.float64, n, elements=finite),
    )


split_ints = st.builds(splitq.SplitQuaternion, small_int, small_int, small_int, small_int)
cfloat = st.builds(complex, st.floats(-2, 2), st.floats(-2, 2))
params = st.builds(fourlevel.FourLevelParams, st.floats(-2, 2), cfloat, cfloat)


@given(complex_matrices(4), complex_matrices(4))
def test_adjoint_reverses_products(a, b):
    lhs = numkernel.adjoint(a @ b)
    rhs = numkernel.adjoint(b) @ numkernel.adjoint(a)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * max(1.0, np.max(np.abs(lhs)))


@given(complex_matrices(4))
def test_double_inverse(m):
    assume(np.linalg.cond(m) < 1e4)
    back = numkernel.mat_inverse(numkernel.mat_inverse(m))
    assert numkernel.frob(back - m) <= 1e-10 * numkernel.frob(m)


@settings(max_examples=60)
@given(complex_matrices(4))
def test_eig_agrees_with_charpoly_oracle(m):
    assume(numkernel.frob(m) > 1e-3)
    vals, vecs = numkernel.eig_right(m)
    assume(np.linalg.cond(vecs) < 1e6)
    roots = numkernel.charpoly_roots_oracle(m)
    scale = max(1.0, numkernel.frob(m))
    remaining = list(roots)
    for v in sorted(vals, key=lambda z: (z.real, z.imag)):
        j = int(np.argmin([abs(v - r) for r in remaining]))
        assert abs(v - remaining.pop(j)) <= 1e-8 * scale


@given(complex_matrices(5))
def test_eigenvalue_sum_is_trace(m):
    vals = numkernel.eigvals(m)
    assert abs(np.sum(vals) - np.trace(m)) <= 1e-10 * max(1.0, numkernel.frob(m))


@given(split_ints, split_ints)
def test_split_embedding_homomorphism(p, q):
    assert np.array_equal(splitq.sq_embed(p * q), splitq.sq_embed(p) @ splitq.sq_embed(q))


@given(split_ints, split_ints)
def test_split_norm_multiplicative(p, q):
    assert splitq.sq_norm(p * q) == splitq.sq_norm(p) * splitq.sq_norm(q)


@given(split_ints)
def test_split_norm_is_determinant(q):
    b0, b1, b2, b3 = q.components
    assert splitq.sq_norm(q) == b0 ** 2 + b3 ** 2 - b1 ** 2 - b2 ** 2
    assert round(np.linalg.det(splitq.sq_embed(q)).real) == splitq.sq_norm(q)


@given(split_ints, split_ints)
def test_split_conj_anti_involution(p, q):
    assert splitq.sq_conj(p * q).components == (splitq.sq_conj(q) * splitq.sq_conj(p)).components


@given(small_int, small_int, small_int, small_int, small_int)
def test_block_assembly_exact(a0, a1, a2, b0, b3):
    p = fourlevel.FourLevelParams(a0, complex(a1, a2), complex(b0, b3))
    assert np.array_equal(fourlevel.build_hamiltonian_blocks(p), fourlevel.build_hamiltonian(p))


@given(complex_vectors(4), complex_vectors(4), complex_matrices(4))
def test_antiunitarity(x, y, m):
    q, _ = np.linalg.qr(m + 5 * np.eye(4))
    theta = antilinear.AntilinearOp(q)
    assert abs(np.vdot(theta(x), theta(y)) - np.vdot(y, x)) <= 1e-12 * max(1.0, np.linalg.norm(x) * np.linalg.norm(y))


@given(params)
def test_model_is_pt_symmetric_and_pseudo_hermitian(p):
    H = fourlevel.build_hamiltonian(p)
    assert antilinear.commutes_with(fourlevel.pt_operator(), H)
    assert metric.pseudo_hermiticity_residual(H, fourlevel.indefinite_metric()) == 0.0


@given(complex_vectors(4), complex_vectors(4), complex_vectors(4), cfloat)
def test_eta_inner_hermitian_and_sesquilinear(x, y, z, alpha):
    eta = fourlevel.indefinite_metric()
    assert metric.eta_inner(x, y, eta) == np.conj(metric.eta_inner(y, x, eta))
    lhs = metric.eta_inner(x, alpha * y + z, eta)
    rhs = alpha * metric.eta_inner(x, y, eta) + metric.eta_inner(x, z, eta)
    bound = 1e-12 * max(1.0, np.linalg.norm(x) * (abs(alpha) * np.linalg.norm(y) + np.linalg.norm(z)))
    assert abs(lhs - rhs) <= bound


@settings(max_examples=50, deadline=None)
@given(params)
def test_doublet_theorems(p):
    assume(p.discriminant > 0.1)
    H = fourlevel.build_hamiltonian(p)
    eta, pt = fourlevel.indefinite_metric(), fourlevel.pt_operator()
    doublets = kreindeg.find_pt_doublets(H, eta, pt)
    assert len(doublets) == 2
    for d in doublets:
        assert d.orthogonality <= 1e-10
        assert abs(d.eta_norm_psi - 1) <= 1e-10 and abs(d.eta_norm_pt_psi + 1) <= 1e-10
        assert d.gram_det >= 1e-8
    k = kreindeg.build_krein(doublets, pt, H, eta)
    assert k.residuals["pt_invariance"] <= 1e-10
    assert k.residuals["eta_cross"] <= 1e-10
    assert k.residuals["min_singular_value"] >= 1e-8


@settings(max_examples=50, deadline=None)
@given(params)
def test_numeric_spectrum_matches_omega(p):
    assume(p.discriminant > 0.1)
    system = biortho.build_biortho(fourlevel.build_hamiltonian(p))
    w = math.sqrt(p.discriminant)
    assert sorted(m for _, m in system.multiplicities()) == [2, 2]
    for E in system.energies:
        assert min(abs(E - w), abs(E + w)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([3, 4, 6]))
def test_biortho_contract_random_similarity(seed, n):
    rng = np.random.default_rng(seed)
    s = np.eye(n) + 0.3 * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(n)
    assume(np.linalg.cond(s) < 50)
    H = s @ np.diag(rng.uniform(-3, 3, n)) @ np.linalg.inv(s)
    system = biortho.build_biortho(H, resid_tol=1e-9)
    scale = numkernel.frob(H)
    for lv in system.levels:
        assert np.linalg.norm(H @ lv.psi - lv.E * lv.psi) <= 1e-9 * scale
        assert np.linalg.norm(H.conj().T @ lv.phi - np.conj(lv.E) * lv.phi) <= 1e-9 * scale
    assert np.max(np.abs(system.phi.conj().T @ system.psi - np.eye(n))) <= 1e-9
    assert biortho.completeness_residual(system) <= 1e-9 * math.sqrt(n)
    eta_plus = biortho.spectral_metric(system)
    for lv in system.levels:
        assert np.linalg.norm(eta_plus @ lv.psi - lv.phi) <= 1e-8


@given(complex_matrices(3))
def test_matrix_file_roundtrip(m):
    assert parse_matrix(format_matrix(m)).tobytes() == m.astype(np.complex128).tobytes()


@given(params, st.sampled_from(["argA", "argB"]), st.floats(-7, 7))
def test_discriminant_ignores_phases(p, axis, t):
    q = fourlevel.with_axis(p, axis, t)
    assert abs(q.discriminant - p.discriminant) <= 1e-12 * max(1.0, abs(p.discriminant))
