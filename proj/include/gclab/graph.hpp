#ifndef GCLAB_GRAPH_HPP
#define GCLAB_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/matrix.hpp"

namespace gclab {

/// Undirected weighted edge stored with u < v.
struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double w = 1.0;
};

/// Immutable undirected graph with positive edge weights and optional node
/// features (row i = features of node i). Duplicate merging and id remapping
/// happen at ingest time; the constructor enforces a canonical, validated
/// edge list.
class Graph {
public:
    Graph(std::size_t n_nodes, std::vector<Edge> edges,
          std::optional<Matrix> features = std::nullopt)
        : n_nodes_(n_nodes), edges_(std::move(edges)), features_(std::move(features)) {
        if (n_nodes_ == 0) throw DomainError("graph must have at least one node");
        for (Edge& e : edges_) {
            if (e.u == e.v)
                throw DomainError("self-loop at node " + std::to_string(e.u) +
                                  " (self-connections are added by the propagator, not the input)");
            if (e.u >= n_nodes_ || e.v >= n_nodes_)
                throw DomainError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") references a node >= " + std::to_string(n_nodes_));
            if (!(e.w > 0.0))
                throw DomainError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") has non-positive weight");
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return a.u < b.u || (a.u == b.u && a.v < b.v);
        });
        for (std::size_t k = 1; k < edges_.size(); ++k)
            if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v)
                throw DomainError("duplicate edge (" + std::to_string(edges_[k].u) + "," +
                                  std::to_string(edges_[k].v) + "); merge duplicates before construction");
        if (features_ && features_->rows() != n_nodes_)
            throw ShapeError("feature matrix has " + std::to_string(features_->rows()) +
                             " rows for " + std::to_string(n_nodes_) + " nodes");
    }

    std::size_t n_nodes() const { return n_nodes_; }
    std::size_t n_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::optional<Matrix>& features() const { return features_; }

    /// Returns a copy with the same nodes/features but a different edge set
    /// (used by the DropEdge sampler).
    Graph with_edges(std::vector<Edge> edges) const {
        return Graph(n_nodes_, std::move(edges), features_);
    }

private:
    std::size_t n_nodes_;
    std::vector<Edge> edges_;
    std::optional<Matrix> features_;
};

/// Weighted degrees d_i = sum of incident edge weights (no self-loop term).
inline std::vector<double> degrees(const Graph& g) {
    std::vector<double> d(g.n_nodes(), 0.0);
    for (const Edge& e : g.edges()) {
        d[e.u] += e.w;
        d[e.v] += e.w;
    }
    return d;
}

/// Connected-component labeling. Labels are assigned in order of first
/// appearance while scanning nodes 0..N-1, so node 0 always lives in
/// component 0 and the labeling is deterministic.
class ComponentLabeling {
public:
    explicit ComponentLabeling(const Graph& g) {
        const std::size_t n = g.n_nodes();
        std::vector<std::uint32_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0u);
        std::vector<std::uint32_t> size(n, 1u);

        auto find = [&](std::uint32_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const Edge& e : g.edges()) {
            std::uint32_t a = find(e.u), b = find(e.v);
            if (a == b) continue;
            if (size[a] < size[b]) std::swap(a, b);
            parent[b] = a;
            size[a] += size[b];
        }

        labels_.assign(n, UINT32_MAX);
        std::vector<std::uint32_t> root_label(n, UINT32_MAX);
        std::uint32_t next = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            const std::uint32_t r = find(i);
            if (root_label[r] == UINT32_MAX) root_label[r] = next++;
            labels_[i] = root_label[r];
        }
        m_components_ = next;
    }

    const std::vector<std::uint32_t>& labels() const { return labels_; }
    std::size_t m_components() const { return m_components_; }

    /// 0/1 indicator vector of component m.
    std::vector<double> indicator(std::size_t m) const {
        std::vector<double> u(labels_.size(), 0.0);
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == m) u[i] = 1.0;
        return u;
    }

private:
    std::vector<std::uint32_t> labels_;
    std::size_t m_components_ = 0;
};

inline ComponentLabeling connected_components(const Graph& g) {
    return ComponentLabeling(g);
}

} // namespace gclab

#endif
