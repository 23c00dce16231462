#ifndef GCLAB_TESTS_FIXTURES_HPP
#define GCLAB_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "gclab/graph.hpp"

namespace fixtures {

using gclab::Edge;
using gclab::Graph;

inline Graph path2() { return Graph(2, {Edge{0, 1, 1.0}}); }

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back(Edge{i, i + 1, 1.0});
    return Graph(n, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back(Edge{i, i + 1, 1.0});
    e.push_back(Edge{0, static_cast<std::uint32_t>(n - 1), 1.0});
    return Graph(n, std::move(e));
}

/// Hub node 0 with `leaves` spokes.
inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (std::uint32_t i = 1; i <= leaves; ++i) e.push_back(Edge{0, i, 1.0});
    return Graph(leaves + 1, std::move(e));
}

inline Graph edgeless(std::size_t n) { return Graph(n, {}); }

/// Triangle {0,1,2} plus a disjoint edge {3,4}: two components with unequal
/// degree profiles.
inline Graph two_components() {
    return Graph(5, {Edge{0, 1, 1.0}, Edge{1, 2, 1.0}, Edge{0, 2, 1.0}, Edge{3, 4, 1.0}});
}

} // namespace fixtures

#endif
