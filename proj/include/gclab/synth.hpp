#ifndef GCLAB_SYNTH_HPP
#define GCLAB_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"
#include "gclab/rng.hpp"

namespace gclab {

/// Multi-component random graph: each component is a uniform spanning tree
/// (Prufer decode) topped up with extra distinct edges until it holds
/// round(intra_edge_factor * size) edges. feature_dim 0 skips features.
struct SyntheticRecipe {
    std::vector<std::size_t> component_sizes;
    double intra_edge_factor = 2.0;
    std::size_t feature_dim = 2;
    std::uint64_t seed = 0;
};

namespace detail {

/// Decodes a uniform random Prufer sequence into a labeled tree on
/// 0..size-1 (local ids). Linear-time pointer scan.
inline std::vector<Edge> random_tree(std::size_t size, Rng& rng) {
    std::vector<Edge> edges;
    if (size < 2) return edges;
    if (size == 2) {
        edges.push_back(Edge{0, 1, 1.0});
        return edges;
    }
    std::vector<std::uint32_t> prufer(size - 2);
    for (auto& x : prufer) x = static_cast<std::uint32_t>(rng.below(size));

    std::vector<std::uint32_t> degree(size, 1);
    for (const auto x : prufer) ++degree[x];

    std::uint32_t ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    std::uint32_t leaf = ptr;
    for (const auto x : prufer) {
        edges.push_back(Edge{leaf, x, 1.0});
        if (--degree[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.push_back(Edge{leaf, static_cast<std::uint32_t>(size - 1), 1.0});
    return edges;
}

inline std::uint64_t pack_pair(std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

/// Adds distinct non-tree edges (rejection sampling) until the component has
/// `target` edges or the clique is full.
inline void top_up_edges(std::vector<Edge>& edges, std::size_t size, std::size_t target,
                         std::uint32_t offset, Rng& rng, double weight_lo, double weight_hi) {
    std::unordered_set<std::uint64_t> seen;
    for (const Edge& e : edges) seen.insert(pack_pair(e.u, e.v));
    const std::size_t max_edges = size * (size - 1) / 2;
    target = std::min(target, max_edges);
    while (seen.size() < target) {
        const auto u = static_cast<std::uint32_t>(rng.below(size));
        const auto v = static_cast<std::uint32_t>(rng.below(size));
        if (u == v) continue;
        if (!seen.insert(pack_pair(u, v)).second) continue;
        const double w = weight_lo == weight_hi ? weight_lo : rng.uniform(weight_lo, weight_hi);
        edges.push_back(Edge{u + offset, v + offset, w});
    }
}

} // namespace detail

inline Graph synthesize(const SyntheticRecipe& recipe) {
    if (recipe.component_sizes.empty()) throw DomainError("recipe needs at least one component");
    std::size_t n = 0;
    for (const std::size_t s : recipe.component_sizes) {
        if (s == 0) throw DomainError("component sizes must be >= 1");
        n += s;
    }

    std::vector<Edge> edges;
    std::uint32_t offset = 0;
    for (std::size_t m = 0; m < recipe.component_sizes.size(); ++m) {
        const std::size_t size = recipe.component_sizes[m];
        Rng rng(mix_seed(recipe.seed, 0xC0000000ULL + m));
        std::vector<Edge> local = detail::random_tree(size, rng);
        for (Edge& e : local) {
            e.u += offset;
            e.v += offset;
        }
        const auto target = static_cast<std::size_t>(
            std::llround(recipe.intra_edge_factor * static_cast<double>(size)));
        detail::top_up_edges(local, size, std::max(target, size == 1 ? 0 : size - 1), offset, rng,
                             1.0, 1.0);
        edges.insert(edges.end(), local.begin(), local.end());
        offset += static_cast<std::uint32_t>(size);
    }

    std::optional<Matrix> features;
    if (recipe.feature_dim > 0) {
        Rng rng(mix_seed(recipe.seed, 0xFEA70000ULL));
        Matrix f(n, recipe.feature_dim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < recipe.feature_dim; ++j) f(i, j) = rng.gaussian();
        features = std::move(f);
    }
    return Graph(n, std::move(edges), std::move(features));
}

/// Options for the seeded random populations the property suites draw from.
struct RandomGraphOptions {
    std::size_t max_nodes = 64;
    std::size_t min_components = 1;
    std::size_t max_components = 4;
    double min_edge_factor = 1.2;
    double max_edge_factor = 3.0;
    bool random_weights = true; // uniform in (0, 1]
    std::size_t feature_dim = 0;
};

/// Seeded random graph with a controlled component count: sizes are drawn so
/// they sum to at most max_nodes, each component is a spanning tree plus
/// extra edges, weights optionally uniform in (0, 1].
inline Graph random_multi_component_graph(std::uint64_t seed, const RandomGraphOptions& opt = {}) {
    Rng rng(mix_seed(seed, 0x6D6C7467ULL));
    const std::size_t m =
        opt.min_components + rng.below(opt.max_components - opt.min_components + 1);

    std::vector<std::size_t> sizes(m, 1);
    std::size_t budget = opt.max_nodes - m;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t take = budget == 0 ? 0 : rng.below(budget / (m - k) * 2 + 1);
        const std::size_t grant = std::min(take, budget);
        sizes[k] += grant;
        budget -= grant;
    }

    std::vector<Edge> edges;
    std::uint32_t offset = 0;
    const double lo = opt.random_weights ? 1e-3 : 1.0; // weights stay well above 0
    const double hi = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Edge> local = detail::random_tree(sizes[k], rng);
        for (Edge& e : local) {
            if (opt.random_weights) e.w = rng.uniform(lo, hi);
            e.u += offset;
            e.v += offset;
        }
        const double factor = rng.uniform(opt.min_edge_factor, opt.max_edge_factor);
        const auto target =
            static_cast<std::size_t>(std::llround(factor * static_cast<double>(sizes[k])));
        detail::top_up_edges(local, sizes[k], std::max(target, sizes[k] == 1 ? 0 : sizes[k] - 1),
                             offset, rng, lo, opt.random_weights ? hi : 1.0);
        edges.insert(edges.end(), local.begin(), local.end());
        offset += static_cast<std::uint32_t>(sizes[k]);
    }

    std::size_t n = 0;
    for (const std::size_t s : sizes) n += s;
    std::optional<Matrix> features;
    if (opt.feature_dim > 0) {
        Matrix f(n, opt.feature_dim);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < opt.feature_dim; ++j) f(i, j) = rng.gaussian();
        features = std::move(f);
    }
    return Graph(n, std::move(edges), std::move(features));
}

} // namespace gclab

#endif
