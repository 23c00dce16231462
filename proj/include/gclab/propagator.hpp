#ifndef GCLAB_PROPAGATOR_HPP
#define GCLAB_PROPAGATOR_HPP

#include <cmath>
#include <string>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"

namespace gclab {

/// Largest node count for which dense N x N matrices are materialized.
inline constexpr std::size_t kDenseCapacity = 4096;

enum class PropagatorKind {
    aug_norm_adj,    // (D+I)^{-1/2} (A+I) (D+I)^{-1/2}, supports DropEdge rate p
    first_order_gcn, // I + D^{-1/2} A D^{-1/2}, un-augmented degrees
    bingge_norm_adj, // I + (D+I)^{-1/2} (A+I) (D+I)^{-1/2}
    aug_rwalk        // (D+I)^{-1} (A+I), row-stochastic, not symmetric
};

inline const char* propagator_name(PropagatorKind k) {
    switch (k) {
        case PropagatorKind::aug_norm_adj: return "AugNormAdj";
        case PropagatorKind::first_order_gcn: return "FirstOrderGCN";
        case PropagatorKind::bingge_norm_adj: return "BingGeNormAdj";
        case PropagatorKind::aug_rwalk: return "AugRWalk";
    }
    return "?";
}

struct Propagator {
    PropagatorKind variant = PropagatorKind::aug_norm_adj;
    double drop_rate = 0.0;
    Matrix matrix;
    bool symmetric = true;
};

namespace detail {

inline Matrix dense_adjacency(const Graph& g) {
    Matrix a(g.n_nodes(), g.n_nodes());
    for (const Edge& e : g.edges()) {
        a(e.u, e.v) = e.w;
        a(e.v, e.u) = e.w;
    }
    return a;
}

} // namespace detail

/// Builds the dense propagation operator for a variant. `p` is the DropEdge
/// rate; re-normalization A + I/(1-p), D + I/(1-p) is defined only for the
/// augmented normalized adjacency, so p > 0 with any other variant is
/// rejected. Symmetric variants are filled one unordered pair at a time, so
/// the stored matrix is symmetric to the bit.
inline Propagator build_propagator(const Graph& g, PropagatorKind variant, double p = 0.0) {
    const std::size_t n = g.n_nodes();
    if (n > kDenseCapacity)
        throw CapacityError("N = " + std::to_string(n) + " exceeds the dense capacity of " +
                            std::to_string(kDenseCapacity));
    if (!(p >= 0.0) || p >= 1.0)
        throw DomainError("drop rate p must lie in [0, 1); got " + std::to_string(p));
    if (p > 0.0 && variant != PropagatorKind::aug_norm_adj)
        throw UnsupportedError(std::string("DropEdge re-normalization is defined for AugNormAdj only, not ") +
                               propagator_name(variant));

    const std::vector<double> d = degrees(g);
    Propagator out;
    out.variant = variant;
    out.drop_rate = p;

    switch (variant) {
        case PropagatorKind::aug_norm_adj: {
            const double c = 1.0 / (1.0 - p); // self-loop mass; 1 when p = 0
            std::vector<double> inv_sqrt(n);
            for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(d[i] + c);
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i) m(i, i) = c * inv_sqrt[i] * inv_sqrt[i];
            for (const Edge& e : g.edges()) {
                const double x = e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
                m(e.u, e.v) = x;
                m(e.v, e.u) = x;
            }
            out.matrix = std::move(m);
            out.symmetric = true;
            break;
        }
        case PropagatorKind::first_order_gcn: {
            for (std::size_t i = 0; i < n; ++i)
                if (d[i] == 0.0)
                    throw UnsupportedError("FirstOrderGCN uses un-augmented degrees; node " +
                                           std::to_string(i) + " is isolated");
            std::vector<double> inv_sqrt(n);
            for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
            Matrix m = Matrix::identity(n);
            for (const Edge& e : g.edges()) {
                const double x = e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
                m(e.u, e.v) = x;
                m(e.v, e.u) = x;
            }
            out.matrix = std::move(m);
            out.symmetric = true;
            break;
        }
        case PropagatorKind::bingge_norm_adj: {
            Propagator base = build_propagator(g, PropagatorKind::aug_norm_adj, 0.0);
            Matrix m = std::move(base.matrix);
            for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0;
            out.matrix = std::move(m);
            out.symmetric = true;
            break;
        }
        case PropagatorKind::aug_rwalk: {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / (d[i] + 1.0);
            for (const Edge& e : g.edges()) {
                m(e.u, e.v) = e.w / (d[e.u] + 1.0);
                m(e.v, e.u) = e.w / (d[e.v] + 1.0);
            }
            out.matrix = std::move(m);
            out.symmetric = false;
            break;
        }
    }
    return out;
}

} // namespace gclab

#endif
