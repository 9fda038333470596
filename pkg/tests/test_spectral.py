"""
Tests for Laplacian spectra, Lorentz densities, eps_gamma and the
normalizing widths.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import I1_SPECTRUM, I2_SPECTRUM, random_graph
from graphs.graph_model import complete_graph, directed_to_bipartite, empty_graph
from metrics.spectral import (
    LaplacianSpectrum, epsilon_gamma, epsilon_gamma_quadrature, extremal_epsilon,
    extremal_epsilon_directed, extremal_epsilon_undirected, extremal_spectrum, gamma_bar,
    gamma_bar_directed, graph_spectrum, im_distance, laplacian, lorentz_cross_integral,
    lorentz_density, spectrum,
)
from utils.errors import ContractError

# (N, gamma-bar, gamma-bar for directed graphs)
GAMMA_TABLE = [
    (5, 0.4272836, 0.3866861),
    (10, 0.4517012, 0.4300291),
    (50, 0.4752742, 0.4704579),
    (100, 0.4777976, 0.4753463),
    (500, 0.4787492, 0.4782538),
    (1000, 0.4785596, 0.4783119),
    (10000, 0.4779060, 0.4778813),
]


def _integrand_oracle(t, u, gamma):
    a, b = math.sqrt(t), math.sqrt(u)

    def integrand(w):
        return 1.0 / ((gamma ** 2 + (w - a) ** 2) * (gamma ** 2 + (w - b) ** 2))

    upper = max(a, b) + 50 * gamma
    peaks = sorted({p for p in (a, b) if 0 < p < upper})
    inner, _ = quad(integrand, 0, upper, points=peaks or None, epsabs=0, epsrel=1e-13, limit=500)
    tail, _ = quad(integrand, upper, np.inf, epsabs=0, epsrel=1e-13, limit=500)
    return inner + tail


class TestLaplacian:

    def test_example_laplacian(self, i1):
        lap = laplacian(i1)
        assert np.array_equal(np.diagonal(lap), [3, 3, 2, 2, 2, 2, 3, 3])
        assert lap[0, 1] == -1 and lap[0, 2] == 0
        assert np.allclose(lap.sum(axis=1), 0)
        assert np.array_equal(np.diagonal(lap), i1.degrees())

    def test_extremes(self):
        assert np.array_equal(laplacian(empty_graph(4)), np.zeros((4, 4)))
        n = 5
        assert np.array_equal(laplacian(complete_graph(n)), n * np.eye(n) - np.ones((n, n)))

    def test_directed_rejected(self, directed_example):
        with pytest.raises(ContractError):
            laplacian(directed_example)


class TestSpectrum:

    def test_example_spectra(self, i1, i2):
        assert np.allclose(graph_spectrum(i1).eigenvalues, I1_SPECTRUM, atol=1e-5)
        assert np.allclose(graph_spectrum(i2).eigenvalues, I2_SPECTRUM, atol=1e-5)

    def test_snapping_and_trace(self, rng):
        for _ in range(20):
            g = random_graph(12, rng, weighted=True, density=0.3)
            lap = laplacian(g)
            spec = spectrum(lap)
            assert spec.eigenvalues[0] == 0.0
            assert np.all(spec.eigenvalues >= 0)
            assert np.all(np.diff(spec.eigenvalues) >= 0)
            assert spec.eigenvalues.sum() == pytest.approx(np.trace(lap), rel=1e-8)

    def test_complete_graph_spectrum(self):
        n = 7
        spec = graph_spectrum(complete_graph(n))
        assert np.allclose(spec.eigenvalues, [0] + [n] * (n - 1), atol=1e-12)
        assert np.allclose(extremal_spectrum(n, full=True).eigenvalues, spec.eigenvalues, atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_full_directed_bipartite_spectrum(self, n):
        doubled = directed_to_bipartite(complete_graph(n, directed=True))
        computed = spectrum(laplacian(doubled)).eigenvalues
        expected = sorted([0] + [n - 2] * (n - 1) + [n] * (n - 1) + [2 * n - 2])
        assert np.allclose(computed, expected, atol=1e-10)
        assert np.allclose(extremal_spectrum(n, True, directed=True).eigenvalues, expected)

    def test_asymmetric_rejected(self):
        with pytest.raises(ContractError):
            spectrum(np.array([[1.0, -1.0], [0.0, 0.0]]))

    def test_directed_graph_uses_bipartite_double(self, directed_example):
        spec = graph_spectrum(directed_example)
        assert spec.source_directed
        assert spec.n == 6 and spec.original_n == 3


class TestLorentzDensity:

    def test_empty_graph_normalization(self):
        n = 8
        rho = lorentz_density(graph_spectrum(empty_graph(n)), 0.4)
        assert rho.k_norm == pytest.approx(2 / ((n - 1) * math.pi), rel=1e-14)

    def test_complete_graph_normalization(self):
        n, gamma = 8, 0.4450034
        rho = lorentz_density(extremal_spectrum(n, full=True), gamma)
        expected = 1 / ((n - 1) * (math.pi / 2 + math.atan(math.sqrt(n) / gamma)))
        assert rho.k_norm == pytest.approx(expected, rel=1e-12)

    def test_unit_mass(self, i1, i2):
        for g in (i1, i2, complete_graph(8)):
            rho = lorentz_density(graph_spectrum(g), 0.4450034)
            assert rho.total_mass() == pytest.approx(1.0, abs=1e-6)

    def test_density_values(self):
        rho = lorentz_density(extremal_spectrum(3, full=False), 0.5)
        # two peaks at 0, K = 1/pi
        assert rho(0.0) == pytest.approx(2 * 0.5 / 0.25 / math.pi, rel=1e-12)
        assert rho(np.array([0.0, 1.0])).shape == (2,)

    def test_invalid_inputs(self, i1):
        with pytest.raises(ContractError):
            lorentz_density(graph_spectrum(i1), 0.0)
        with pytest.raises(ContractError):
            lorentz_density(graph_spectrum(empty_graph(1)), 0.4)


class TestCrossIntegral:

    @pytest.mark.parametrize("gamma", [0.1, 0.4450034, 2.0])
    def test_equal_frequency_at_zero(self, gamma):
        value = lorentz_cross_integral(0, 0, gamma)
        assert value == pytest.approx(math.pi / (4 * gamma ** 3), rel=1e-12)
        assert value == pytest.approx(_integrand_oracle(0, 0, gamma), rel=1e-9)

    @pytest.mark.parametrize("t, u", [(0, 8), (2, 8), (8, 14), (0.5, 0.5), (4, 4 + 1e-9), (3, 3.000001)])
    def test_against_quadrature(self, t, u):
        gamma = 0.445
        assert lorentz_cross_integral(t, u, gamma) == pytest.approx(_integrand_oracle(t, u, gamma), rel=1e-9)

    def test_symmetry(self):
        for t, u in [(0, 3), (1.5, 7), (10, 11)]:
            assert lorentz_cross_integral(t, u, 0.3) == pytest.approx(lorentz_cross_integral(u, t, 0.3), rel=1e-13)

    def test_negative_argument_rejected(self):
        with pytest.raises(ContractError):
            lorentz_cross_integral(-1, 2, 0.4)


class TestEpsilon:

    def test_identical_spectra(self, i1):
        spec = graph_spectrum(i1)
        assert epsilon_gamma(spec, spec, 0.4) == 0.0

    def test_example_pair(self, i1, i2):
        value = epsilon_gamma(graph_spectrum(i1), graph_spectrum(i2), gamma_bar(8).value)
        assert value == pytest.approx(0.1004144, abs=1e-5)

    def test_closed_form_matches_quadrature(self, rng):
        for _ in range(20):
            n = int(rng.integers(3, 21))
            s1 = graph_spectrum(random_graph(n, rng, weighted=True))
            s2 = graph_spectrum(random_graph(n, rng, weighted=True))
            gamma = float(rng.uniform(0.2, 1.0))
            assert epsilon_gamma(s1, s2, gamma) == pytest.approx(
                epsilon_gamma_quadrature(s1, s2, gamma), abs=1e-7)

    @pytest.mark.slow
    def test_closed_form_matches_quadrature_many_pairs(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 21))
            s1 = graph_spectrum(random_graph(n, rng, weighted=True))
            s2 = graph_spectrum(random_graph(n, rng, weighted=True))
            gamma = gamma_bar(n).value
            assert epsilon_gamma(s1, s2, gamma) == pytest.approx(
                epsilon_gamma_quadrature(s1, s2, gamma), abs=1e-7)

    def test_pseudometric(self, rng):
        for _ in range(50):
            a, b, c = (graph_spectrum(random_graph(10, rng, weighted=True)) for _ in range(3))
            ab = epsilon_gamma(a, b, 0.45)
            assert ab == epsilon_gamma(b, a, 0.45)
            assert epsilon_gamma(a, c, 0.45) <= ab + epsilon_gamma(b, c, 0.45) + 1e-12

    def test_size_mismatch(self, i1):
        with pytest.raises(ContractError):
            epsilon_gamma(graph_spectrum(i1), graph_spectrum(empty_graph(5)), 0.4)


class TestGammaBar:

    def test_example_width(self):
        assert gamma_bar(8).value == pytest.approx(0.4450034, abs=1e-6)

    @pytest.mark.parametrize("n, undirected, directed", GAMMA_TABLE)
    def test_width_table(self, n, undirected, directed):
        assert gamma_bar(n).value == pytest.approx(undirected, abs=1e-5)
        assert gamma_bar_directed(n).value == pytest.approx(directed, abs=1e-5)

    @pytest.mark.parametrize("n", [2, 5, 10, 100])
    def test_defining_equation(self, n):
        assert extremal_epsilon(n, gamma_bar(n).value) == pytest.approx(1.0, abs=1e-9)
        assert extremal_epsilon(n, gamma_bar_directed(n).value, directed=True) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("n", [3, 5, 10, 50, 1000])
    def test_printed_expansions_agree_with_generic_path(self, n):
        for gamma in (0.2, 0.45, 1.3):
            assert extremal_epsilon_undirected(n, gamma) == pytest.approx(extremal_epsilon(n, gamma), abs=1e-9)
            assert extremal_epsilon_directed(n, gamma) == pytest.approx(
                extremal_epsilon(n, gamma, directed=True), abs=1e-9)

    @pytest.mark.parametrize("n", [5, 10, 100])
    def test_root_function_decreasing(self, n):
        values = [extremal_epsilon(n, g) for g in np.linspace(0.05, 5, 60)]
        assert np.all(np.diff(values) < 0)

    def test_cached_and_typed(self):
        first = gamma_bar(12)
        assert gamma_bar(12).value == first.value
        assert first.n == 12 and not first.directed
        assert gamma_bar_directed(12).directed

    def test_small_n_rejected(self):
        with pytest.raises(ContractError):
            gamma_bar(1)
        with pytest.raises(ContractError):
            gamma_bar_directed(1)
        with pytest.raises(ContractError):
            extremal_epsilon_directed(2, 0.4)


class TestImDistance:

    def test_example_pair(self, i1, i2):
        assert im_distance(i1, i2) == pytest.approx(0.1004144, abs=1e-5)

    @pytest.mark.parametrize("n", [5, 10, 50, 100])
    def test_extremes_normalized(self, n):
        assert im_distance(empty_graph(n), complete_graph(n)) == pytest.approx(1.0, abs=1e-9)
        assert im_distance(empty_graph(n, True), complete_graph(n, True)) == pytest.approx(1.0, abs=1e-9)

    def test_permutation_invariance(self, rng):
        for _ in range(20):
            g = random_graph(int(rng.integers(4, 25)), rng, weighted=bool(rng.integers(2)))
            assert im_distance(g, g.permuted(rng.permutation(g.n))) < 1e-9

    def test_bounded_by_extremes(self, rng):
        for n in (5, 10):
            for _ in range(100):
                g = random_graph(n, rng, density=float(rng.uniform()))
                h = random_graph(n, rng, density=float(rng.uniform()))
                assert 0.0 <= im_distance(g, h) <= 1 + 1e-6

    @pytest.mark.slow
    def test_bounded_by_extremes_many_pairs(self, rng):
        for n in (5, 10, 50):
            for _ in range(1000):
                g = random_graph(n, rng, density=float(rng.uniform()))
                h = random_graph(n, rng, density=float(rng.uniform()))
                assert im_distance(g, h) <= 1 + 1e-6

    def test_single_vertex_is_zero(self):
        assert im_distance(empty_graph(1), empty_graph(1)) == 0.0
