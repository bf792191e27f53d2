import numpy as np
import pytest
from scipy import linalg as sla

from app.exceptions import AccuracyNotReachedError, ClusteringAmbiguousError, InvalidArgumentError
from app.services import fock_solver

TWO_PI_SQUARED = 2 * np.pi ** 2


def test_harmonic_degeneracy_is_n_squared():
    assert [fock_solver.harmonic_degeneracy(n) for n in range(1, 7)] == [1, 4, 9, 16, 25, 36]


def test_grid_integrates_sphere_volume_and_polynomials():
    grid = fock_solver.build_s3_grid(6, 6, 12)
    assert grid.size == 6 * 6 * 12
    assert np.allclose(np.linalg.norm(grid.nodes, axis=1), 1.0)
    assert fock_solver.integrate(grid, np.ones(grid.size)) == pytest.approx(TWO_PI_SQUARED)
    # ∫ u_0² dS = V(S³)/4
    assert fock_solver.integrate(grid, grid.nodes[:, 0] ** 2) == pytest.approx(TWO_PI_SQUARED / 4)
    with pytest.raises(InvalidArgumentError):
        fock_solver.build_s3_grid(1, 6, 12)


def test_funk_hecke_matches_closed_form():
    values = fock_solver.funk_hecke_eigenvalues(6)
    for n, lam in enumerate(values, start=1):
        assert lam == pytest.approx(TWO_PI_SQUARED / n, rel=1e-8)


def test_funk_hecke_reports_unconverged_quadrature():
    with pytest.raises(AccuracyNotReachedError):
        fock_solver.funk_hecke_eigenvalues(6, quad_order=2)


def test_funk_hecke_spectrum_degeneracies():
    spectrum = fock_solver.funk_hecke_spectrum(4)
    assert spectrum.route == "funk-hecke"
    assert [level.degeneracy for level in spectrum.levels] == [1, 4, 9, 16]


def test_parse_regularization():
    assert fock_solver.parse_regularization("subtract") == ("subtract", None)
    assert fock_solver.parse_regularization("mollify:0.05") == ("mollify", 0.05)
    for bad in ("mollify", "mollify:-1", "puncture:3", "smooth"):
        with pytest.raises(InvalidArgumentError):
            fock_solver.parse_regularization(bad)


@pytest.mark.parametrize("regularization", ["puncture", "subtract", "mollify:0.1"])
def test_kernel_matrix_is_symmetric(regularization):
    matrix = fock_solver.kernel_matrix(fock_solver.build_s3_grid(4, 4, 8), regularization)
    assert np.allclose(matrix, matrix.T)
    assert np.all(np.isfinite(matrix))


def test_block_circulant_path_matches_dense_matrix():
    grid = fock_solver.build_s3_grid(6, 6, 12)
    dense = np.sort(sla.eigvalsh(fock_solver.kernel_matrix(grid, "subtract")))[::-1]
    spectrum = fock_solver.nystrom_spectrum(grid, 1, "subtract", cluster_tol=0.01, method="circulant")
    count = len(spectrum.eigenvalues)
    assert np.allclose(spectrum.eigenvalues, dense[:count], rtol=1e-10, atol=1e-10)


def test_subtraction_keeps_constant_mode_exact():
    # 常数函数是 1/|u-u'|² 的精确本征函数，减奇异法后在离散层面也精确
    spectrum = fock_solver.nystrom_spectrum(fock_solver.build_s3_grid(8, 8, 16), 1, cluster_tol=0.01)
    assert spectrum.levels[0].kernel_eigenvalue == pytest.approx(TWO_PI_SQUARED, rel=1e-10)
    assert spectrum.levels[0].degeneracy == 1


def test_rotation_leaves_spectrum_unchanged(rng):
    grid = fock_solver.build_s3_grid(4, 4, 8)
    rotated = fock_solver.rotate_grid(grid, fock_solver.random_rotation(rng))
    assert not rotated.is_product
    base = sla.eigvalsh(fock_solver.kernel_matrix(grid))
    turned = sla.eigvalsh(fock_solver.kernel_matrix(rotated))
    assert np.allclose(base, turned, rtol=1e-10, atol=1e-10)
    with pytest.raises(InvalidArgumentError):
        fock_solver.nystrom_spectrum(rotated, 1, method="circulant")


def test_nystrom_reproduces_first_levels():
    grid = fock_solver.build_s3_grid(16, 16, 32)
    spectrum = fock_solver.nystrom_spectrum(grid, 3, "subtract")
    assert spectrum.params["cluster_tol"] == pytest.approx(1e-3)
    assert [level.degeneracy for level in spectrum.levels] == [1, 4, 9]
    for error in fock_solver.relative_errors(spectrum):
        assert error <= 1e-2


def test_nystrom_converges_with_grid_refinement():
    history = []
    for orders in [(16, 16, 32), (20, 20, 40), (24, 24, 48)]:
        spectrum = fock_solver.nystrom_spectrum(fock_solver.build_s3_grid(*orders), 3, "subtract")
        assert [level.degeneracy for level in spectrum.levels] == [1, 4, 9]
        history.append(fock_solver.relative_errors(spectrum))

    # 常数模在每个网格上都精确到舍入误差
    assert all(errors[0] <= 1e-12 for errors in history)
    for level in (1, 2):
        coarse, medium, fine = (errors[level] for errors in history)
        assert fine < medium < coarse


def test_puncture_regularization_is_biased():
    grid = fock_solver.build_s3_grid(8, 8, 16)
    spectrum = fock_solver.nystrom_spectrum(grid, 1, "puncture", cluster_tol=0.01)
    assert spectrum.params["regularization"] == "puncture"
    assert fock_solver.relative_errors(spectrum)[0] > 1e-6


def test_nystrom_rejects_too_many_levels():
    with pytest.raises(InvalidArgumentError):
        fock_solver.nystrom_spectrum(fock_solver.build_s3_grid(2, 2, 4), 3)
    with pytest.raises(InvalidArgumentError):
        fock_solver.nystrom_spectrum(fock_solver.build_s3_grid(2, 2, 4), 0)


def test_cluster_levels():
    values = [10.0, 5.0, 4.99, 4.98, 4.97, 3.0]
    levels = fock_solver.cluster_levels(values, 2, 0.01)
    assert [level.degeneracy for level in levels] == [1, 4]
    assert levels[1].kernel_eigenvalue == pytest.approx(4.985)


def test_cluster_levels_reports_ambiguity():
    with pytest.raises(ClusteringAmbiguousError) as info:
        fock_solver.cluster_levels([10.0, 9.85, 9.7, 1.0], 1, 0.01)
    assert "eigenvalues" in info.value.diagnostics


def test_hydrogen_levels_closed_form():
    spectrum = fock_solver.hydrogen_levels(7.2973525693e-3, 510998.95, 3)
    energies = [level.E_n for level in spectrum.levels]
    assert energies[0] == pytest.approx(-13.6057, abs=1e-3)
    assert energies[1] == pytest.approx(energies[0] / 4)
    assert energies[2] == pytest.approx(energies[0] / 9)
    assert spectrum.levels[0].p0 == pytest.approx(7.2973525693e-3)


def test_hydrogen_levels_from_eigenvalues():
    values = fock_solver.funk_hecke_eigenvalues(2)
    spectrum = fock_solver.hydrogen_levels(0.5, 2.0, 2, eigenvalues=values)
    assert spectrum.route == "eigenvalues"
    assert spectrum.levels[1].E_n == pytest.approx(-0.5 * 2.0 * 0.25 ** 2)
    with pytest.raises(InvalidArgumentError):
        fock_solver.hydrogen_levels(0.5, 2.0, 3, eigenvalues=values)
    with pytest.raises(InvalidArgumentError):
        fock_solver.hydrogen_levels(1.5, 2.0, 1)


def test_fock_condition_residual():
    alpha = 7.2973525693e-3
    assert fock_solver.fock_condition_residual(TWO_PI_SQUARED, alpha, 1 / alpha) == pytest.approx(0, abs=1e-12)
    assert fock_solver.fock_condition_residual(TWO_PI_SQUARED / 2, alpha, 1 / alpha) == pytest.approx(0.5)
    with pytest.raises(InvalidArgumentError):
        fock_solver.fock_condition_residual(-1.0, alpha, 1.0)
