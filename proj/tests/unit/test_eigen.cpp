#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gclab/eigen.hpp"
#include "gclab/rng.hpp"
#include "gclab/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace gclab;

namespace {

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double x = rng.gaussian();
            a(i, j) = x;
            a(j, i) = x;
        }
    return a;
}

} // namespace

TEST_CASE("closed-form spectra of tiny graphs", "[eigen]") {
    SECTION("two-node path: {0, 1}") {
        const Spectrum s = eigendecompose(fixtures::path2(), PropagatorKind::aug_norm_adj);
        REQUIRE(s.eigenvalues.size() == 2);
        CHECK(s.eigenvalues[0] == Catch::Approx(0.0).margin(1e-12));
        CHECK(s.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("three isolated nodes: {1, 1, 1}") {
        const Spectrum s = eigendecompose(fixtures::edgeless(3), PropagatorKind::aug_norm_adj);
        for (const double v : s.eigenvalues) CHECK(v == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("two components give top multiplicity 2") {
        const Spectrum s = eigendecompose(fixtures::two_components(), PropagatorKind::aug_norm_adj);
        std::size_t top = 0;
        for (const double v : s.eigenvalues)
            if (std::fabs(v - 1.0) <= 1e-9) ++top;
        CHECK(top == 2);
    }
}

TEST_CASE("eigenvalues match the characteristic-polynomial oracle", "[eigen][oracle]") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Matrix a = random_symmetric(8, seed);
        const EigenResult got = symmetric_eigen(a);
        const std::vector<double> want = oracles::charpoly_eigenvalues(a);
        REQUIRE(want.size() == 8);
        for (std::size_t k = 0; k < 8; ++k)
            CHECK(got.values[k] == Catch::Approx(want[k]).margin(1e-8));
    }
}

TEST_CASE("eigendecomposition reconstructs the propagator", "[eigen]") {
    for (std::uint64_t seed : {3u, 11u, 25u}) {
        const Graph g = random_multi_component_graph(seed);
        const Propagator prop = build_propagator(g, PropagatorKind::aug_norm_adj);
        const Spectrum s = eigendecompose(g, prop);
        const std::size_t n = g.n_nodes();

        // ascending order
        for (std::size_t k = 1; k < n; ++k) CHECK(s.eigenvalues[k - 1] <= s.eigenvalues[k]);

        // A Q = Q diag(values)
        const Matrix aq = prop.matrix * s.eigenvectors;
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                worst = std::max(worst, std::fabs(aq(i, k) - s.eigenvalues[k] * s.eigenvectors(i, k)));
        CHECK(worst <= 1e-8 * static_cast<double>(n));

        // orthonormal columns
        const Matrix qtq = transpose(s.eigenvectors) * s.eigenvectors;
        CHECK(max_abs(qtq - Matrix::identity(n)) <= 1e-10);
    }
}

TEST_CASE("random-walk spectrum equals the symmetric one with rescaled vectors",
          "[eigen]") {
    const Graph g = fixtures::star_graph(4);
    const Propagator rw = build_propagator(g, PropagatorKind::aug_rwalk);
    const Spectrum s = eigendecompose(g, rw);
    const Spectrum sym = eigendecompose(g, PropagatorKind::aug_norm_adj);
    const std::size_t n = g.n_nodes();

    for (std::size_t k = 0; k < n; ++k)
        CHECK(s.eigenvalues[k] == Catch::Approx(sym.eigenvalues[k]).margin(1e-10));

    // columns really are eigenvectors of the non-symmetric matrix
    const Matrix pv = rw.matrix * s.eigenvectors;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            CHECK(pv(i, k) == Catch::Approx(s.eigenvalues[k] * s.eigenvectors(i, k)).margin(1e-9));
}

TEST_CASE("informative eigenvalue extraction", "[eigen]") {
    SECTION("two-node path: 0") {
        const Graph g = fixtures::path2();
        const auto sl = second_lambda(eigendecompose(g, PropagatorKind::aug_norm_adj),
                                      connected_components(g));
        CHECK(sl.lambda == Catch::Approx(0.0).margin(1e-12));
        CHECK(sl.multiplicity_top == 1);
    }
    SECTION("edgeless graph: 0 by convention") {
        const Graph g = fixtures::edgeless(3);
        const auto sl = second_lambda(eigendecompose(g, PropagatorKind::aug_norm_adj),
                                      connected_components(g));
        CHECK(sl.lambda == 0.0);
        CHECK(sl.multiplicity_top == 3);
    }
    SECTION("re-normalized path at p = 0.5: 1/3") {
        const Graph g = fixtures::path2();
        const auto sl = second_lambda(eigendecompose(g, PropagatorKind::aug_norm_adj, 0.5),
                                      connected_components(g));
        CHECK(sl.lambda == Catch::Approx(1.0 / 3.0).margin(1e-12));
    }
    SECTION("component-count mismatch is a consistency error") {
        const Graph path = fixtures::path2();
        const Graph lone = fixtures::edgeless(2);
        CHECK_THROWS_AS(second_lambda(eigendecompose(path, PropagatorKind::aug_norm_adj),
                                      connected_components(lone)),
                        ConsistencyError);
    }
    SECTION("only augmented normalized spectra are accepted") {
        const Graph g = fixtures::path2();
        CHECK_THROWS_AS(second_lambda(eigendecompose(g, PropagatorKind::bingge_norm_adj),
                                      connected_components(g)),
                        UnsupportedError);
    }
}

TEST_CASE("spectral structure theorem across a random population", "[eigen][property]") {
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        const Graph g = random_multi_component_graph(seed);
        const ComponentLabeling comp = connected_components(g);
        const Propagator prop = build_propagator(g, PropagatorKind::aug_norm_adj);
        const Spectrum s = eigendecompose(g, prop);
        const std::size_t n = g.n_nodes(), m = comp.m_components();

        // spectrum inside (-1, 1]
        CHECK(s.eigenvalues.front() > -1.0);
        CHECK(s.eigenvalues.back() <= 1.0 + 1e-9);

        // top eigenvalue 1 with multiplicity exactly m; everything else below
        std::size_t top = 0;
        for (const double v : s.eigenvalues)
            if (std::fabs(v - 1.0) <= 1e-9) ++top;
        REQUIRE(top == m);
        if (n > m) CHECK(s.eigenvalues[n - m - 1] < 1.0 - 1e-9);

        // scaled indicators are fixed points
        const std::vector<double> d = degrees(g);
        for (std::size_t c = 0; c < m; ++c) {
            const std::vector<double> u = comp.indicator(c);
            std::vector<double> x(n);
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = std::sqrt(d[i] + 1.0) * u[i];
                norm += x[i] * x[i];
            }
            norm = std::sqrt(norm);
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double px = 0.0;
                for (std::size_t j = 0; j < n; ++j) px += prop.matrix(i, j) * x[j];
                worst = std::max(worst, std::fabs(px - x[i]) / norm);
            }
            CHECK(worst <= 1e-9);
        }
    }
}
