#ifndef GCLAB_SUBSPACE_HPP
#define GCLAB_SUBSPACE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"

namespace gclab {

/// Orthonormal basis of the invariant subspace: one column per component,
/// e_hat(i, m) = sqrt(d_i + 1) / sqrt(sum over component m of (d_j + 1)) on
/// the component's support, 0 elsewhere. Columns have disjoint support, so
/// orthonormality is exact by construction up to the norm rounding.
struct SubspaceBasis {
    Matrix e_hat;                          // N x M
    std::vector<std::uint32_t> component_of; // node -> component label
    std::size_t n_nodes() const { return component_of.size(); }
    std::size_t m_components() const { return e_hat.cols(); }
};

inline SubspaceBasis build_subspace(const Graph& g, const ComponentLabeling& comp) {
    const std::size_t n = g.n_nodes();
    const std::size_t m = comp.m_components();
    const std::vector<double> d = degrees(g);

    std::vector<double> mass(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) mass[comp.labels()[i]] += d[i] + 1.0;

    SubspaceBasis b;
    b.e_hat = Matrix(n, m);
    b.component_of = comp.labels();
    for (std::size_t i = 0; i < n; ++i)
        b.e_hat(i, comp.labels()[i]) = std::sqrt((d[i] + 1.0) / mass[comp.labels()[i]]);
    return b;
}

/// Frobenius distance from H to the subspace: ||H - E (E^T H)||_F.
/// Not squared.
inline double distance_to_subspace(const SubspaceBasis& b, const Matrix& h) {
    if (h.rows() != b.n_nodes())
        throw ShapeError("distance_to_subspace: H has " + std::to_string(h.rows()) +
                         " rows for " + std::to_string(b.n_nodes()) + " nodes");
    const Matrix coeff = transpose(b.e_hat) * h; // M x C
    const Matrix residual = h - b.e_hat * coeff;
    return frobenius_norm(residual);
}

/// Same distance via the per-component decomposition: for each component m
/// and channel c the squared distance contributes sum(h^2) - (sum(h * e))^2.
/// The subtraction can go a hair negative in floating point; clamped at 0.
inline double distance_componentwise(const SubspaceBasis& b, const Matrix& h) {
    if (h.rows() != b.n_nodes())
        throw ShapeError("distance_componentwise: H has " + std::to_string(h.rows()) +
                         " rows for " + std::to_string(b.n_nodes()) + " nodes");
    const std::size_t m = b.m_components();
    const std::size_t c = h.cols();
    std::vector<double> ss(m * c, 0.0); // sum of squares per (component, channel)
    std::vector<double> ip(m * c, 0.0); // inner product with the basis column
    for (std::size_t i = 0; i < h.rows(); ++i) {
        const std::size_t comp = b.component_of[i];
        const double e = b.e_hat(i, comp);
        for (std::size_t j = 0; j < c; ++j) {
            const double x = h(i, j);
            ss[comp * c + j] += x * x;
            ip[comp * c + j] += x * e;
        }
    }
    double total = 0.0;
    for (std::size_t k = 0; k < ss.size(); ++k) {
        const double part = ss[k] - ip[k] * ip[k];
        if (part > 0.0) total += part;
    }
    return std::sqrt(total);
}

/// Distance of a broadcast bias row: the bias matrix repeats one row, so this
/// is just the broadcast followed by the projector distance. The row must
/// have 1 entry (scalar broadcast across channels is resolved by the caller)
/// or match the channel count.
inline double distance_of_bias(const SubspaceBasis& b, const std::vector<double>& bias_row,
                               std::size_t n_channels) {
    std::vector<double> row;
    if (bias_row.size() == 1) {
        row.assign(n_channels, bias_row[0]);
    } else if (bias_row.size() == n_channels) {
        row = bias_row;
    } else {
        throw ShapeError("bias row has " + std::to_string(bias_row.size()) + " entries for " +
                         std::to_string(n_channels) + " channels");
    }
    return distance_to_subspace(b, broadcast_row(row, b.n_nodes()));
}

} // namespace gclab

#endif
