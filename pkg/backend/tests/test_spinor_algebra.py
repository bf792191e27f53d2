import numpy as np
import pytest

from app.exceptions import (
    ChiralityRequiredError,
    IndeterminateError,
    InvalidArgumentError,
    SignatureMismatchError,
)
from app.models.clifford import Signature
from app.services import clifford_core, spinor_algebra


def test_two_dimensional_example_vector():
    rep = clifford_core.build_gamma(1)
    z = spinor_algebra.vector_from_spinors(rep, [1, 0], [1, 0], sign=-1)
    assert np.allclose(z.components, [-1, -1j])
    assert z.square == pytest.approx(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pure_spinors_generate_null_vectors(n, rng):
    rep = clifford_core.build_gamma(n)
    for _ in range(20):
        phi = spinor_algebra.random_spinor(rep, rng)
        psi = spinor_algebra.random_pure_spinor(rep, rng)
        z = spinor_algebra.vector_from_spinors(rep, phi, psi)
        assert spinor_algebra.null_ratio(z) <= 1e-10


@pytest.mark.parametrize("chirality", ["plus", "minus"])
def test_basis_pure_spinors(chirality):
    rep = clifford_core.build_gamma(4)
    psi = spinor_algebra.basis_pure_spinor(rep, chirality)
    assert spinor_algebra.classify_chirality(rep, psi) == chirality
    assert spinor_algebra.is_pure(rep, psi).is_pure


def test_generic_weyl_spinor_is_not_pure_in_dimension_eight(rng):
    rep = clifford_core.build_gamma(4)
    for _ in range(10):
        psi = spinor_algebra.random_chiral_spinor(rep, rng)
        report = spinor_algebra.is_pure(rep, psi)
        assert not report.is_pure
        assert report.residual > 1e-6
        phi = spinor_algebra.random_spinor(rep, rng)
        z = spinor_algebra.vector_from_spinors(rep, phi, psi)
        assert spinor_algebra.null_ratio(z) > 1e-6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_weyl_spinor_is_pure_in_low_dimension(n, rng):
    rep = clifford_core.build_gamma(n)
    for chirality in ("plus", "minus"):
        psi = spinor_algebra.random_chiral_spinor(rep, rng, chirality)
        assert spinor_algebra.is_pure(rep, psi).is_pure


def test_purity_requires_chirality_and_nonzero_spinor():
    rep = clifford_core.build_gamma(2)
    with pytest.raises(ChiralityRequiredError):
        spinor_algebra.is_pure(rep, [1, 0, 1, 0])
    with pytest.raises(InvalidArgumentError):
        spinor_algebra.is_pure(rep, [0, 0, 0, 0])
    with pytest.raises(InvalidArgumentError):
        spinor_algebra.is_pure(rep, [1, 0, 0])


def test_purity_residual_is_scale_free():
    rep = clifford_core.build_gamma(4)
    psi = spinor_algebra.chiral_basis(rep) @ np.arange(1, 9)
    small = spinor_algebra.is_pure(rep, psi)
    large = spinor_algebra.is_pure(rep, 1e3 * psi)
    assert small.residual == pytest.approx(large.residual)


@pytest.mark.parametrize("n,expected", [(2, 0), (3, 0), (4, 1), (5, 5)])
def test_purity_codimension(n, expected, rng):
    rep = clifford_core.build_gamma(n)
    assert spinor_algebra.purity_codimension(rep, 3, rng) == expected


def test_codimension_details_echo_constraint_counts(rng):
    details = spinor_algebra.purity_codimension_details(clifford_core.build_gamma(5), 2, rng)
    assert details["constraint_equations"] == 10
    assert details["chiral_dimension"] == 16
    assert details["variety_dimension"] == 11


def test_null_plane_of_pure_spinor_is_maximal(rng):
    rep = clifford_core.build_gamma(3)
    psi = spinor_algebra.random_pure_spinor(rep, rng)
    plane = spinor_algebra.null_plane(rep, psi)
    assert plane.dimension == 3
    assert plane.is_maximal
    assert plane.max_pairing <= 1e-10
    for z in plane.basis:
        # z^a γ_a ψ = 0，z^a = η^{aa} z_a
        action = np.tensordot(rep.eta * z.components, rep.generators, axes=1) @ psi.components
        assert np.linalg.norm(action) <= 1e-10


def test_null_plane_of_generic_spinor_is_smaller(rng):
    rep = clifford_core.build_gamma(4)
    plane = spinor_algebra.null_plane(rep, spinor_algebra.random_chiral_spinor(rep, rng))
    assert plane.dimension < 4
    assert not plane.is_maximal


@pytest.mark.parametrize("n", [2, 3])
def test_real_null_vector_from_pure_spinor(n, rng):
    rep = clifford_core.build_gamma(n, Signature.lorentzian(2 * n))
    psi = spinor_algebra.random_pure_spinor(rep, rng)
    p = spinor_algebra.real_null_vector(rep, psi)
    assert np.isrealobj(p.components)
    assert spinor_algebra.null_ratio(p) <= 1e-10
    assert p.components[0] > 0


def test_real_null_vector_needs_lorentzian_signature():
    rep = clifford_core.build_gamma(2)
    with pytest.raises(SignatureMismatchError):
        spinor_algebra.real_null_vector(rep, spinor_algebra.basis_pure_spinor(rep))


def test_null_plane_in_ten_dimensions(rng):
    rep = clifford_core.build_gamma(5)
    pure = spinor_algebra.null_plane(rep, spinor_algebra.random_pure_spinor(rep, rng))
    assert pure.dimension == 5
    assert pure.is_maximal

    generic = spinor_algebra.random_chiral_spinor(rep, rng)
    # 一般 Weyl 旋量只剩下 ψγ^aψ 这一条零方向
    assert spinor_algebra.null_plane(rep, generic).dimension == 1
    assert not spinor_algebra.is_pure(rep, generic).is_pure


def test_null_plane_in_two_dimensions():
    rep = clifford_core.build_gamma(1)
    plane = spinor_algebra.null_plane(rep, spinor_algebra.basis_pure_spinor(rep))
    assert plane.dimension == 1
    z = plane.basis[0].components
    assert z[0] / z[1] == pytest.approx(-1j)


@pytest.mark.parametrize("n", [4, 5])
def test_purity_residual_separates_pure_from_generic(n, rng):
    rep = clifford_core.build_gamma(n)
    pure = [spinor_algebra.is_pure(rep, spinor_algebra.random_pure_spinor(rep, rng)).residual for _ in range(20)]
    generic = [spinor_algebra.is_pure(rep, spinor_algebra.random_chiral_spinor(rep, rng)).residual for _ in range(20)]
    assert max(pure) * 1e4 <= min(generic)


@pytest.mark.parametrize("n", [4, 5])
def test_purity_is_preserved_by_even_clifford_group(n, rng):
    rep = clifford_core.build_gamma(n)
    for chirality in ("plus", "minus"):
        psi = spinor_algebra.random_pure_spinor(rep, rng, chirality).components
        for _ in range(5):
            moved = clifford_core.random_even_element(rep, rng) @ psi
            moved = moved / np.linalg.norm(moved)
            assert spinor_algebra.classify_chirality(rep, moved) == chirality
            assert spinor_algebra.is_pure(rep, moved).is_pure


@pytest.mark.parametrize("n", [4, 5])
def test_slightly_perturbed_pure_spinor_is_indeterminate(n, rng):
    rep = clifford_core.build_gamma(n)
    psi = spinor_algebra.random_pure_spinor(rep, rng).components
    q = spinor_algebra.random_chiral_spinor(rep, rng).components
    with pytest.raises(IndeterminateError):
        spinor_algebra.is_pure(rep, psi + 1e-8 * q)
