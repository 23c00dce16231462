#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gclab/bounds.hpp"
#include "gclab/synth.hpp"
#include "support/fixtures.hpp"

using namespace gclab;

TEST_CASE("two-node path bounds are exact", "[bounds]") {
    const Graph g = fixtures::path2();
    SECTION("closed form lambda(p) = p / (2 - p) along a grid") {
        std::vector<double> grid;
        for (int k = 0; k <= 9; ++k) grid.push_back(0.1 * k);
        const BoundCurve c = dropedge_bounds(g, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double want = grid[k] / (2.0 - grid[k]);
            CHECK(c.lambda_p[k] == Catch::Approx(want).margin(1e-12));
        }
        // non-decreasing in p on this family
        for (std::size_t k = 1; k < grid.size(); ++k)
            CHECK(c.lambda_p[k] >= c.lambda_p[k - 1] - 1e-12);
    }
    SECTION("at p = 0.5 the Rayleigh sup vanishes and the sandwich pinches") {
        const BoundCurve c = dropedge_bounds(g, {0.5});
        CHECK(c.a_p[0] <= 1e-12);
        CHECK(c.mu_p[0] == Catch::Approx(1.0 / 3.0).margin(1e-12));
        CHECK(c.gamma_p[0] == Catch::Approx(1.0 / 3.0).margin(1e-12));
        CHECK(c.lambda_p[0] == Catch::Approx(1.0 / 3.0).margin(1e-12));
    }
}

TEST_CASE("p = 0 collapses the bounds to +-a", "[bounds]") {
    // at p = 0 all degree ratios are exactly 1, so gamma = a and mu = -a
    for (std::uint64_t seed : {2u, 9u, 33u}) {
        const Graph g = random_multi_component_graph(seed);
        const BoundCurve c = dropedge_bounds(g, {0.0});
        CHECK(c.gamma_p[0] == Catch::Approx(c.a_p[0]).margin(1e-12));
        CHECK(c.mu_p[0] == Catch::Approx(-c.a_p[0]).margin(1e-12));
        CHECK(c.lambda_p[0] <= c.a_p[0] + 1e-12); // a dominates every non-top magnitude
    }
}

TEST_CASE("regular graphs give the closed-form gap", "[bounds]") {
    const Graph g = fixtures::cycle_graph(6); // 2-regular
    const double d = 2.0;
    const BoundCurve c = dropedge_bounds(g, {0.5});
    const double want = 2.0 * c.a_p[0] * (d + 1.0) / (d + 2.0);
    CHECK(c.gamma_p[0] - c.mu_p[0] == Catch::Approx(want).margin(1e-12));
}

TEST_CASE("rates at or near 1 use the analytic limit", "[bounds]") {
    const Graph g = fixtures::path2();
    for (const double p : {1.0, 1.0 - 1e-10}) {
        const BoundCurve c = dropedge_bounds(g, {p});
        CHECK(c.lambda_p[0] == 1.0);
        CHECK(c.a_p[0] == 1.0);
        CHECK(c.mu_p[0] == 1.0);
        CHECK(c.gamma_p[0] == 1.0);
    }
}

TEST_CASE("rates outside [0, 1] are rejected", "[bounds]") {
    const Graph g = fixtures::path2();
    CHECK_THROWS_AS(dropedge_bounds(g, {-0.1}), DomainError);
    CHECK_THROWS_AS(dropedge_bounds(g, {1.1}), DomainError);
}

TEST_CASE("edgeless graphs still produce a curve", "[bounds]") {
    const Graph g = fixtures::edgeless(3);
    const BoundCurve c = dropedge_bounds(g, {0.0, 0.5});
    CHECK(c.lambda_p[0] == 0.0); // convention: no informative eigenvalue
    CHECK(c.a_p[1] == 0.0);
    // with d = 0 the ratio is 1 - p, so mu(p) = gamma(p) = p
    CHECK(c.mu_p[1] == Catch::Approx(0.5).margin(1e-12));
    CHECK(c.gamma_p[1] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("sandwich holds across a random population", "[bounds][property]") {
    std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8};
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
        const Graph g = random_multi_component_graph(seed);
        const BoundCurve c = dropedge_bounds(g, grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK(c.mu_p[k] <= c.lambda_p[k] + 1e-9);
            CHECK(c.lambda_p[k] <= c.gamma_p[k] + 1e-9);
        }
    }
}

TEST_CASE("frozen-a bounds are monotone and their gap shrinks", "[bounds][property]") {
    std::vector<double> grid;
    for (int k = 0; k <= 9; ++k) grid.push_back(0.1 * k);
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const Graph g = random_multi_component_graph(seed);
        const std::vector<double> d = degrees(g);
        const double a0 = dropedge_bounds(g, {0.0}).a_p[0];
        double prev_mu = 0.0, prev_gamma = 0.0, prev_gap = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const DegreeRatioExtrema r = degree_ratio_extrema(d, grid[k]);
            const double mu = mu_bound(a0, r);
            const double gamma = gamma_bound(a0, r);
            if (k > 0) {
                CHECK(mu >= prev_mu - 1e-12);
                CHECK(gamma >= prev_gamma - 1e-12);
                CHECK(gamma - mu <= prev_gap + 1e-12);
            }
            prev_mu = mu;
            prev_gamma = gamma;
            prev_gap = gamma - mu;
        }
    }
}
