#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gclab/rng.hpp"
#include "gclab/subspace.hpp"
#include "gclab/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace gclab;

namespace {

Matrix random_features(std::size_t n, std::size_t c, std::uint64_t seed) {
    Rng rng(seed);
    Matrix h(n, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) h(i, j) = rng.gaussian();
    return h;
}

SubspaceBasis basis_of(const Graph& g) { return build_subspace(g, connected_components(g)); }

} // namespace

TEST_CASE("basis columns hold square roots of augmented degrees", "[subspace]") {
    SECTION("single node") {
        const SubspaceBasis b = basis_of(fixtures::edgeless(1));
        REQUIRE(b.e_hat.rows() == 1);
        REQUIRE(b.e_hat.cols() == 1);
        CHECK(b.e_hat(0, 0) == Catch::Approx(1.0).margin(1e-15));
    }
    SECTION("two-node path: uniform") {
        const SubspaceBasis b = basis_of(fixtures::path2());
        CHECK(b.e_hat(0, 0) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
        CHECK(b.e_hat(1, 0) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
    }
    SECTION("star with 3 leaves: (2, sqrt2, sqrt2, sqrt2) / sqrt10") {
        const SubspaceBasis b = basis_of(fixtures::star_graph(3));
        const double s10 = std::sqrt(10.0), s2 = std::sqrt(2.0);
        CHECK(b.e_hat(0, 0) == Catch::Approx(2.0 / s10).margin(1e-12));
        for (std::size_t i = 1; i <= 3; ++i)
            CHECK(b.e_hat(i, 0) == Catch::Approx(s2 / s10).margin(1e-12));
    }
    SECTION("columns are orthonormal with disjoint support") {
        const SubspaceBasis b = basis_of(fixtures::two_components());
        const Matrix gram = transpose(b.e_hat) * b.e_hat;
        CHECK(max_abs(gram - Matrix::identity(2)) <= 1e-12);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t m = 0; m < 2; ++m)
                if (b.component_of[i] != m) CHECK(b.e_hat(i, m) == 0.0);
    }
}

TEST_CASE("distance to the subspace", "[subspace]") {
    SECTION("members of the span are at distance zero") {
        const Graph g = fixtures::two_components();
        const SubspaceBasis b = basis_of(g);
        Matrix coeff(2, 3);
        coeff(0, 0) = 1.5;
        coeff(0, 1) = -2.0;
        coeff(0, 2) = 0.25;
        coeff(1, 0) = 3.0;
        coeff(1, 1) = 0.0;
        coeff(1, 2) = -1.0;
        const Matrix h = b.e_hat * coeff;
        CHECK(distance_to_subspace(b, h) <= 1e-12);
        CHECK(distance_componentwise(b, h) <= 1e-12);
    }
    SECTION("odd vector on the path has distance sqrt 2") {
        const SubspaceBasis b = basis_of(fixtures::path2());
        Matrix h(2, 1);
        h(0, 0) = 1.0;
        h(1, 0) = -1.0;
        CHECK(distance_to_subspace(b, h) == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
        CHECK(distance_componentwise(b, h) == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    }
    SECTION("projection is idempotent") {
        const Graph g = random_multi_component_graph(5);
        const SubspaceBasis b = basis_of(g);
        const Matrix h = random_features(g.n_nodes(), 4, 17);
        const Matrix projected = b.e_hat * (transpose(b.e_hat) * h);
        CHECK(distance_to_subspace(b, projected) <= 1e-12);
    }
    SECTION("matches the least-squares oracle on random graphs") {
        for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
            const Graph g = random_multi_component_graph(seed);
            const SubspaceBasis b = basis_of(g);
            const Matrix h = random_features(g.n_nodes(), 3, seed + 100);
            const double got = distance_to_subspace(b, h);
            const double want = oracles::least_squares_distance(b.e_hat, h);
            CHECK(got == Catch::Approx(want).margin(1e-10));
            CHECK(distance_componentwise(b, h) == Catch::Approx(got).margin(1e-10));
        }
    }
    SECTION("row mismatch is a shape error") {
        const SubspaceBasis b = basis_of(fixtures::path2());
        CHECK_THROWS_AS(distance_to_subspace(b, Matrix(3, 1)), ShapeError);
        CHECK_THROWS_AS(distance_componentwise(b, Matrix(3, 1)), ShapeError);
    }
}

TEST_CASE("bias distance", "[subspace]") {
    SECTION("zero bias has zero distance") {
        const SubspaceBasis b = basis_of(fixtures::two_components());
        CHECK(distance_of_bias(b, {0.0}, 3) == 0.0);
    }
    SECTION("constant bias on a connected regular graph lies in the subspace") {
        const SubspaceBasis b = basis_of(fixtures::cycle_graph(6));
        CHECK(distance_of_bias(b, {0.7}, 2) <= 1e-12);
    }
    SECTION("constant bias on an irregular graph does not") {
        const Graph g = fixtures::star_graph(3);
        const SubspaceBasis b = basis_of(g);
        const double got = distance_of_bias(b, {1.0}, 1);
        const Matrix ones = broadcast_row({1.0}, 4);
        const double want = oracles::least_squares_distance(b.e_hat, ones);
        CHECK(got > 0.05);
        CHECK(got == Catch::Approx(want).margin(1e-12));
    }
    SECTION("per-channel rows must match the channel count") {
        const SubspaceBasis b = basis_of(fixtures::path2());
        CHECK_THROWS_AS(distance_of_bias(b, {1.0, 2.0}, 3), ShapeError);
        CHECK_NOTHROW(distance_of_bias(b, {1.0, 2.0, 3.0}, 3));
    }
}

TEST_CASE("componentwise decomposition agrees on multi-component graphs",
          "[subspace][property]") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        RandomGraphOptions opt;
        opt.min_components = 2;
        const Graph g = random_multi_component_graph(seed, opt);
        const SubspaceBasis b = basis_of(g);
        const Matrix h = random_features(g.n_nodes(), 2, seed);
        CHECK(distance_componentwise(b, h) ==
              Catch::Approx(distance_to_subspace(b, h)).margin(1e-10));
    }
}
