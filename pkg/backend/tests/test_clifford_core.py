import numpy as np
import pytest

from app.exceptions import InvalidArgumentError, NormalizationRequiredError, UnsupportedSizeError
from app.models.clifford import Signature
from app.services import clifford_core, momentum_fields, spinor_algebra
from app.utils.linalg import max_abs


@pytest.mark.parametrize("n", range(1, 7))
def test_euclidean_generators_anticommute(n):
    rep = clifford_core.build_gamma(n)
    report = clifford_core.representation_report(rep)
    assert rep.spinor_dim == 2 ** n
    assert report["clifford_relation"] <= 1e-12
    assert report["volume_anticommutation"] <= 1e-12
    assert report["chirality_square"] <= 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_lorentzian_generators_anticommute(n):
    rep = clifford_core.build_gamma(n, Signature.lorentzian(2 * n))
    report = clifford_core.representation_report(rep)
    assert report["clifford_relation"] <= 1e-12
    assert rep.timelike_index == 0
    assert np.allclose(rep.generators[1] @ rep.generators[1], -np.eye(rep.spinor_dim))


@pytest.mark.parametrize("n", range(1, 7))
def test_intertwiners_hold(n):
    report = clifford_core.representation_report(clifford_core.build_gamma(n))
    assert report["B_intertwining"] <= 1e-12
    assert report["B_minus_intertwining"] <= 1e-12
    assert report["C_intertwining"] <= 1e-12
    assert report["B_condition"] == pytest.approx(1.0)


def test_two_dimensional_antiautomorphism_is_minus_i_sigma2():
    rep = clifford_core.build_gamma(1)
    expected = -1j * clifford_core.SIGMA_2
    assert np.allclose(rep.B_minus, expected)
    B, dimension = clifford_core.solve_antiautomorphism(rep, sign=-1)
    assert dimension == 1
    assert np.allclose(B, expected)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("sign", [1, -1])
def test_solved_antiautomorphism_matches_constructed(n, sign):
    rep = clifford_core.build_gamma(n)
    B, dimension = clifford_core.solve_antiautomorphism(rep, sign)
    assert dimension == 1
    assert max_abs(B - rep.intertwiner(sign)) <= 1e-9


def test_minkowski_chirality_is_sigma3_block(minkowski_rep):
    J = clifford_core.chirality_operator(minkowski_rep)
    assert np.allclose(J, np.diag([1, 1, -1, -1]))
    assert minkowski_rep.volume_square == -1
    # 原始体积元需要乘以 i 才能得到 γ5
    assert np.allclose(1j * clifford_core.volume_element(minkowski_rep), J)


def test_unnormalized_projectors_require_unit_square(minkowski_rep):
    with pytest.raises(NormalizationRequiredError):
        clifford_core.weyl_projectors(minkowski_rep, normalize=False)
    p_plus, p_minus = clifford_core.weyl_projectors(clifford_core.build_gamma(2), normalize=False)
    assert np.allclose(p_plus + p_minus, np.eye(4))
    assert np.allclose(p_plus @ p_plus, p_plus)


@pytest.mark.parametrize("n", [0, 7])
def test_unsupported_sizes(n):
    with pytest.raises(UnsupportedSizeError):
        clifford_core.build_gamma(n)


def test_signature_dimension_must_match():
    with pytest.raises(InvalidArgumentError):
        clifford_core.build_gamma(2, Signature(2, 0))
    with pytest.raises(InvalidArgumentError):
        Signature.parse("1;3")
    with pytest.raises(InvalidArgumentError):
        Signature(-1, 3)


def test_odd_generators_extend_the_algebra():
    rep = clifford_core.build_gamma(3)
    gens = clifford_core.odd_generators(rep)
    assert gens.shape[0] == 7
    for a in range(7):
        for b in range(a + 1, 7):
            assert max_abs(gens[a] @ gens[b] + gens[b] @ gens[a]) <= 1e-12


def test_random_even_element_preserves_chirality(rng):
    rep = clifford_core.build_gamma(3)
    g = clifford_core.random_even_element(rep, rng)
    assert max_abs(g @ rep.chirality - rep.chirality @ g) <= 1e-10
    with pytest.raises(InvalidArgumentError):
        clifford_core.random_even_element(rep, rng, factors=3)


def test_unit_vector_element_squares_to_identity(rng, minkowski_rep):
    x = rng.standard_normal(4)
    x /= np.linalg.norm(x)
    v = clifford_core.unit_vector_element(minkowski_rep, x)
    assert np.allclose(v @ v, np.eye(4))
    assert np.allclose(v, v.conj().T)


def test_charge_conjugation_commutes_with_generators(rng):
    rep = clifford_core.build_gamma(3)
    psi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    for g in rep.generators:
        lhs = g @ clifford_core.conjugate_spinor(rep, psi)
        rhs = clifford_core.conjugate_spinor(rep, g @ psi)
        assert np.allclose(lhs, rhs)


def test_build_is_cached_and_read_only():
    rep = clifford_core.build_gamma(2)
    assert clifford_core.build_gamma(2) is rep
    with pytest.raises(ValueError):
        rep.generators[0, 0, 0] = 5


def test_basis_products_enumerate_the_whole_algebra():
    rep = clifford_core.build_gamma(2)
    products = list(clifford_core.basis_products(rep))
    assert len(products) == 16
    assert len({subset for subset, _ in products}) == 16
    for subset, product in products:
        assert np.allclose(product.conj().T @ product, np.eye(4))
        if len(subset) == 2:
            a, b = subset
            assert np.allclose(product, rep.generators[a] @ rep.generators[b])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bilinear_decomposition_reconstructs(n, rng):
    rep = clifford_core.build_gamma(n)
    phi = spinor_algebra.random_spinor(rep, rng).components
    psi = spinor_algebra.random_spinor(rep, rng).components
    result = clifford_core.bilinear_decomposition(rep, phi, psi)
    assert result.reconstruction_error <= 1e-12
    assert result.grades.shape == (2 * n + 1, 2 ** n, 2 ** n)
    assert np.allclose(result.vector_components, spinor_algebra.vector_from_spinors(rep, phi, psi).components)
    # 一阶部分 T_1 = Σ z_a γ_a / 2^n
    expected = np.tensordot(result.vector_components, rep.generators, axes=1) / rep.spinor_dim
    assert np.allclose(result.grades[1], expected)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_pure_spinor_square_is_middle_grade(n, rng):
    rep = clifford_core.build_gamma(n)
    psi = spinor_algebra.random_pure_spinor(rep, rng).components
    result = clifford_core.bilinear_decomposition(rep, psi, psi)
    relative = result.grade_norms / np.linalg.norm(result.matrix)
    assert result.dominant_grade == n
    assert np.all(np.delete(relative, n) <= 1e-10)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cartan_identity_for_pure_spinors(n, rng):
    rep = clifford_core.build_gamma(n)
    for _ in range(5):
        phi = spinor_algebra.random_spinor(rep, rng).components
        psi = spinor_algebra.random_pure_spinor(rep, rng).components
        assert clifford_core.bilinear_decomposition(rep, phi, psi).cartan_residual <= 1e-10


def test_cartan_identity_fails_for_generic_weyl_spinor(rng):
    rep = clifford_core.build_gamma(4)
    for _ in range(5):
        phi = spinor_algebra.random_spinor(rep, rng).components
        psi = spinor_algebra.random_chiral_spinor(rep, rng).components
        assert clifford_core.bilinear_decomposition(rep, phi, psi).cartan_residual > 1e-6


def test_two_dimensional_decomposition_matches_pauli_route(rng):
    rep = clifford_core.build_gamma(1)
    phi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    result = clifford_core.bilinear_decomposition(rep, phi, psi, sign=-1)
    assert np.allclose(result.matrix, momentum_fields.decomposition_matrix(phi, psi))
    z0 = momentum_fields.matrix_decomposition(phi, psi).components[0]
    assert np.allclose(result.grades[0], z0 * np.eye(2))


def test_bilinear_decomposition_rejects_bad_input():
    rep = clifford_core.build_gamma(2)
    with pytest.raises(InvalidArgumentError):
        clifford_core.bilinear_decomposition(rep, [1, 0, 0], [1, 0, 0, 0])
    with pytest.raises(InvalidArgumentError):
        clifford_core.bilinear_decomposition(rep, [1, 0, 0, 0], [0, 0, 0, 0])
    with pytest.raises(InvalidArgumentError):
        clifford_core.bilinear_decomposition(rep, [1, 0, 0, 0], [1, 0, 0, 0], sign=2)
