#ifndef GCLAB_SVD_HPP
#define GCLAB_SVD_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "gclab/eigen.hpp"
#include "gclab/errors.hpp"
#include "gclab/matrix.hpp"

namespace gclab {

/// Rank-k projection of N x C features for plotting: scores = X V_k type
/// output where V_k holds the top right singular vectors of X. Computed from
/// the C x C Gram matrix, which is exact enough at desk scale. Sign
/// convention: the largest-magnitude entry of each right vector is positive
/// (first such entry on ties). Columns past the numerical rank are zeroed and
/// flagged rather than filled with noise.
struct TruncatedSvd {
    Matrix scores;                       // N x k
    Matrix right_vectors;                // C x k
    std::vector<double> singular_values; // length k, non-increasing
    std::size_t effective_rank = 0;
    bool rank_deficient = false;
};

inline TruncatedSvd truncated_svd(const Matrix& x, std::size_t out_dim) {
    if (out_dim == 0) throw DomainError("out_dim must be >= 1");
    if (out_dim > x.cols())
        throw ShapeError("out_dim " + std::to_string(out_dim) + " exceeds channel count " +
                         std::to_string(x.cols()));

    const EigenResult gram = symmetric_eigen(transpose(x) * x); // ascending
    const std::size_t c = x.cols();

    const double top = std::max(0.0, gram.values.back());
    const double tol = std::sqrt(top) * 1e-12 + 1e-300;

    TruncatedSvd out;
    out.scores = Matrix(x.rows(), out_dim);
    out.right_vectors = Matrix(c, out_dim);
    out.singular_values.assign(out_dim, 0.0);

    for (std::size_t k = 0; k < out_dim; ++k) {
        const std::size_t src = c - 1 - k; // descending order
        const double sigma = std::sqrt(std::max(0.0, gram.values[src]));
        if (sigma <= tol) {
            out.rank_deficient = true;
            continue; // column stays zero
        }
        ++out.effective_rank;
        out.singular_values[k] = sigma;

        std::vector<double> v(c);
        for (std::size_t i = 0; i < c; ++i) v[i] = gram.vectors(i, src);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < c; ++i)
            if (std::fabs(v[i]) > std::fabs(v[arg])) arg = i;
        if (v[arg] < 0.0)
            for (double& vi : v) vi = -vi;

        for (std::size_t i = 0; i < c; ++i) out.right_vectors(i, k) = v[i];
        for (std::size_t i = 0; i < x.rows(); ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < c; ++j) dot += x(i, j) * v[j];
            out.scores(i, k) = dot;
        }
    }
    return out;
}

} // namespace gclab

#endif
