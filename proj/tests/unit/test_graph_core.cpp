#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "gclab/graph.hpp"
#include "gclab/io.hpp"
#include "gclab/rng.hpp"
#include "support/fixtures.hpp"

using namespace gclab;

TEST_CASE("graph constructor canonicalizes and validates", "[graph]") {
    SECTION("edges are stored with u < v, sorted") {
        Graph g(3, {Edge{2, 1, 1.0}, Edge{1, 0, 2.0}});
        REQUIRE(g.n_edges() == 2);
        CHECK(g.edges()[0].u == 0);
        CHECK(g.edges()[0].v == 1);
        CHECK(g.edges()[0].w == 2.0);
        CHECK(g.edges()[1].u == 1);
        CHECK(g.edges()[1].v == 2);
    }
    SECTION("rejects self-loops") {
        CHECK_THROWS_AS(Graph(2, {Edge{1, 1, 1.0}}), DomainError);
    }
    SECTION("rejects non-positive weights") {
        CHECK_THROWS_AS(Graph(2, {Edge{0, 1, 0.0}}), DomainError);
        CHECK_THROWS_AS(Graph(2, {Edge{0, 1, -2.0}}), DomainError);
    }
    SECTION("rejects out-of-range ids and duplicates") {
        CHECK_THROWS_AS(Graph(2, {Edge{0, 2, 1.0}}), DomainError);
        CHECK_THROWS_AS(Graph(2, {Edge{0, 1, 1.0}, Edge{1, 0, 1.0}}), DomainError);
    }
    SECTION("rejects an empty node set") {
        CHECK_THROWS_AS(Graph(0, {}), DomainError);
    }
}

TEST_CASE("weighted degrees", "[graph]") {
    Graph g(3, {Edge{0, 1, 2.0}, Edge{1, 2, 0.5}});
    const auto d = degrees(g);
    CHECK(d[0] == 2.0);
    CHECK(d[1] == 2.5);
    CHECK(d[2] == 0.5);
}

TEST_CASE("connected components", "[graph]") {
    SECTION("two-node path is one component") {
        const auto comp = connected_components(fixtures::path2());
        CHECK(comp.m_components() == 1);
        CHECK(comp.labels() == std::vector<std::uint32_t>{0, 0});
    }
    SECTION("edgeless graph has one component per node") {
        const auto comp = connected_components(fixtures::edgeless(3));
        CHECK(comp.m_components() == 3);
        CHECK(comp.labels() == std::vector<std::uint32_t>{0, 1, 2});
    }
    SECTION("triangle plus edge") {
        const auto comp = connected_components(fixtures::two_components());
        CHECK(comp.m_components() == 2);
        CHECK(comp.labels() == std::vector<std::uint32_t>{0, 0, 0, 1, 1});
        CHECK(comp.indicator(1) == std::vector<double>{0, 0, 0, 1, 1});
    }
}

TEST_CASE("edge list ingest", "[io]") {
    SECTION("single row, default weight") {
        std::istringstream in("0 1\n");
        const auto res = ingest_graph(in);
        REQUIRE(res.graph.n_nodes() == 2);
        REQUIRE(res.graph.n_edges() == 1);
        CHECK(res.graph.edges()[0].w == 1.0);
        CHECK(res.report.duplicate_edges_merged == 0);
        CHECK_FALSE(res.report.ids_remapped);
    }
    SECTION("empty edge file with a pinned node count gives isolated nodes") {
        std::istringstream in("# nothing here\n\n");
        IngestOptions opt;
        opt.n_nodes = 3;
        const auto res = ingest_graph(in, nullptr, opt);
        CHECK(res.graph.n_nodes() == 3);
        CHECK(res.graph.n_edges() == 0);
        CHECK(connected_components(res.graph).m_components() == 3);
    }
    SECTION("empty edge file without any node count is an error") {
        std::istringstream in("\n");
        CHECK_THROWS_AS(ingest_graph(in), DomainError);
    }
    SECTION("negative weight names the line") {
        std::istringstream in("0 1 1.0\n0 2 -2\n");
        CHECK_THROWS_WITH(ingest_graph(in), Catch::Matchers::ContainsSubstring("line 2"));
    }
    SECTION("self-loop rejected with its line") {
        std::istringstream in("3 3\n");
        CHECK_THROWS_WITH(ingest_graph(in), Catch::Matchers::ContainsSubstring("line 1"));
    }
    SECTION("malformed rows raise parse errors with line numbers") {
        std::istringstream one_token("0\n");
        CHECK_THROWS_AS(ingest_graph(one_token), ParseError);
        std::istringstream trailing("0 1 2.0 junk\n");
        CHECK_THROWS_AS(ingest_graph(trailing), ParseError);
        std::istringstream alpha("a b\n");
        CHECK_THROWS_AS(ingest_graph(alpha), ParseError);
        std::istringstream negative_id("-1 0\n");
        CHECK_THROWS_AS(ingest_graph(negative_id), ParseError);
        std::istringstream bad_weight("0 1 abc\n");
        CHECK_THROWS_AS(ingest_graph(bad_weight), ParseError);
    }
    SECTION("duplicate rows merge by summing, either orientation") {
        std::istringstream in("0 1 1.0\n1 0 2.5\n0 1 0.5\n");
        const auto res = ingest_graph(in);
        REQUIRE(res.graph.n_edges() == 1);
        CHECK(res.graph.edges()[0].w == 4.0);
        CHECK(res.report.duplicate_edges_merged == 2);
    }
    SECTION("non-dense ids are remapped in ascending order") {
        std::istringstream in("9 5\n5 7\n");
        const auto res = ingest_graph(in);
        REQUIRE(res.report.ids_remapped);
        CHECK(res.graph.n_nodes() == 3);
        CHECK(res.report.original_ids == std::vector<std::uint64_t>{5, 7, 9});
        // 5->0, 7->1, 9->2
        CHECK(res.graph.edges()[0].u == 0);
        CHECK(res.graph.edges()[0].v == 1);
        CHECK(res.graph.edges()[1].u == 0);
        CHECK(res.graph.edges()[1].v == 2);
    }
    SECTION("a gap in otherwise 0-based ids also remaps") {
        std::istringstream in("0 2\n");
        const auto res = ingest_graph(in);
        CHECK(res.report.ids_remapped);
        CHECK(res.graph.n_nodes() == 2);
    }
    SECTION("pinned node count keeps ids positional") {
        std::istringstream in("0 2\n");
        IngestOptions opt;
        opt.n_nodes = 4;
        const auto res = ingest_graph(in, nullptr, opt);
        CHECK_FALSE(res.report.ids_remapped);
        CHECK(res.graph.n_nodes() == 4);
    }
    SECTION("ids past the pinned node count are shape errors") {
        std::istringstream in("0 5\n");
        IngestOptions opt;
        opt.n_nodes = 3;
        CHECK_THROWS_AS(ingest_graph(in, nullptr, opt), ShapeError);
    }
}

TEST_CASE("feature csv ingest", "[io]") {
    SECTION("row count pins the node count") {
        std::istringstream edges("0 1\n");
        std::istringstream feats("0.5,1\n-1,2\n3,4\n");
        const auto res = ingest_graph(edges, &feats);
        CHECK(res.graph.n_nodes() == 3);
        REQUIRE(res.graph.features());
        CHECK(res.graph.features()->rows() == 3);
        CHECK(res.graph.features()->cols() == 2);
        CHECK((*res.graph.features())(0, 0) == 0.5);
        CHECK((*res.graph.features())(2, 1) == 4.0);
    }
    SECTION("edges referencing rows past the feature count fail") {
        std::istringstream edges("0 3\n");
        std::istringstream feats("1,2\n3,4\n");
        CHECK_THROWS_AS(ingest_graph(edges, &feats), ShapeError);
    }
    SECTION("comment lines and an optional header are skipped") {
        std::istringstream edges("0 1\n");
        std::istringstream feats("# config\nx,y\n1,2\n3,4\n");
        IngestOptions opt;
        opt.features_header = true;
        const auto res = ingest_graph(edges, &feats, opt);
        CHECK(res.graph.features()->rows() == 2);
    }
    SECTION("ragged rows are parse errors") {
        std::istringstream edges("0 1\n");
        std::istringstream feats("1,2\n3\n");
        CHECK_THROWS_AS(ingest_graph(edges, &feats), ParseError);
    }
    SECTION("non-numeric cells are parse errors") {
        std::istringstream edges("0 1\n");
        std::istringstream feats("1,2\n3,oops\n");
        CHECK_THROWS_AS(ingest_graph(edges, &feats), ParseError);
    }
}

TEST_CASE("writers round-trip through the readers", "[io]") {
    SECTION("edge list with weights") {
        Graph g(4, {Edge{0, 1, 0.25}, Edge{1, 2, 1.0 / 3.0}, Edge{2, 3, 7.0}});
        std::ostringstream out;
        write_edge_list(out, g, "roundtrip-test");
        std::istringstream in(out.str());
        IngestOptions opt;
        opt.n_nodes = 4;
        const auto back = ingest_graph(in, nullptr, opt);
        REQUIRE(back.graph.n_edges() == g.n_edges());
        for (std::size_t k = 0; k < g.n_edges(); ++k) {
            CHECK(back.graph.edges()[k].u == g.edges()[k].u);
            CHECK(back.graph.edges()[k].v == g.edges()[k].v);
            CHECK(back.graph.edges()[k].w == g.edges()[k].w); // bitwise via %.17g
        }
    }
    SECTION("feature matrix survives with full precision") {
        Matrix m(2, 3);
        m(0, 0) = 1.0 / 3.0;
        m(0, 1) = -2.5e-17;
        m(0, 2) = 4e300;
        m(1, 0) = 0.0;
        m(1, 1) = 123456.789;
        m(1, 2) = -1.0;
        std::ostringstream out;
        write_matrix_csv(out, m, "roundtrip-test");
        std::istringstream edges("0 1\n");
        std::istringstream feats(out.str());
        const auto back = ingest_graph(edges, &feats);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK((*back.graph.features())(i, j) == m(i, j));
    }
    SECTION("id map csv lists the mapping") {
        std::istringstream in("9 5\n");
        const auto res = ingest_graph(in);
        std::ostringstream out;
        write_id_map_csv(out, res.report, "map-test");
        CHECK(out.str() == "# map-test\nnew_id,original_id\n0,5\n1,9\n");
    }
}

TEST_CASE("format_double round-trips arbitrary doubles", "[io]") {
    Rng rng(99);
    for (int k = 0; k < 200; ++k) {
        const double x = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-30.0, 30.0));
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.0) == "0");
}
