#ifndef GCLAB_EIGEN_HPP
#define GCLAB_EIGEN_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"
#include "gclab/propagator.hpp"

namespace gclab {

/// Raw symmetric eigendecomposition result: `values` ascending, `vectors`
/// orthonormal columns in matching order.
struct EigenResult {
    std::vector<double> values;
    Matrix vectors;
};

namespace detail {

/// Householder reduction of a symmetric matrix to tridiagonal form with
/// accumulated transformations (classic Handbook/EISPACK tred2 scheme).
/// On exit `v` holds the orthogonal Q, `d` the diagonal, `e` the
/// sub-diagonal with e[0] = 0.
inline void householder_tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = v.rows();
    for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::fabs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0.0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k) v(k, j) -= f * e[k] + g * d[k];
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL sweeps on the tridiagonal (d, e) with eigenvector
/// accumulation into `v`. Throws NumericalError if an eigenvalue needs more
/// than `max_sweeps` sweeps.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix& v,
                           std::size_t max_sweeps) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double shift_total = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
        std::size_t m = l;
        while (m < n && std::fabs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            std::size_t sweeps = 0;
            do {
                if (++sweeps > max_sweeps)
                    throw NumericalError("QL sweep cap (" + std::to_string(max_sweeps) +
                                         ") hit at eigenvalue " + std::to_string(l) +
                                         "; off-diagonal residual " + std::to_string(std::fabs(e[l])));
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0.0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                shift_total += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(m) - 1;
                     i >= static_cast<std::ptrdiff_t>(l); --i) {
                    const std::size_t iu = static_cast<std::size_t>(i);
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[iu];
                    h = c * p;
                    r = std::hypot(p, e[iu]);
                    e[iu + 1] = s * r;
                    s = e[iu] / r;
                    c = p / r;
                    p = c * d[iu] - s * g;
                    d[iu + 1] = h + s * (c * g + s * d[iu]);
                    for (std::size_t k = 0; k < n; ++k) {
                        h = v(k, iu + 1);
                        v(k, iu + 1) = s * v(k, iu) + c * h;
                        v(k, iu) = c * v(k, iu) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::fabs(e[l]) > eps * tst1);
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }

    // explicit ascending sort with matching column permutation
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t k = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            v.swap_columns(i, k);
        }
    }
}

} // namespace detail

/// Full eigendecomposition of a symmetric matrix by Householder
/// tridiagonalization followed by implicit-shift QL, capped at `max_sweeps`
/// sweeps per eigenvalue. Input symmetry is the caller's contract; only the
/// lower triangle would matter if it were violated slightly.
inline EigenResult symmetric_eigen(const Matrix& a, std::size_t max_sweeps = 64) {
    if (a.rows() != a.cols()) throw ShapeError("symmetric_eigen needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) throw DomainError("symmetric_eigen on an empty matrix");

    EigenResult r;
    r.values.assign(n, 0.0);
    r.vectors = a;
    if (n == 1) {
        r.values[0] = a(0, 0);
        r.vectors(0, 0) = 1.0;
        return r;
    }
    std::vector<double> e(n, 0.0);
    detail::householder_tridiagonalize(r.vectors, r.values, e);
    detail::tridiagonal_ql(r.values, e, r.vectors, max_sweeps);
    return r;
}

/// Eigendecomposition of a propagator with provenance attached. Eigenvalues
/// ascending. For the non-symmetric random-walk variant, the decomposition
/// is obtained from the similar symmetric matrix and the eigenvectors are
/// rescaled (they remain eigenvectors but are no longer orthonormal).
struct Spectrum {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    PropagatorKind variant = PropagatorKind::aug_norm_adj;
    double drop_rate = 0.0;
    bool symmetric = true;
};

inline Spectrum eigendecompose(const Graph& g, const Propagator& prop) {
    Spectrum s;
    s.variant = prop.variant;
    s.drop_rate = prop.drop_rate;
    s.symmetric = prop.symmetric;

    if (prop.symmetric) {
        EigenResult r = symmetric_eigen(prop.matrix);
        s.eigenvalues = std::move(r.values);
        s.eigenvectors = std::move(r.vectors);
    } else {
        // (D+I)^{-1} (A+I) is similar to (D+I)^{-1/2} (A+I) (D+I)^{-1/2}
        // via conjugation by (D+I)^{1/2}.
        Propagator sym = build_propagator(g, PropagatorKind::aug_norm_adj, 0.0);
        EigenResult r = symmetric_eigen(sym.matrix);
        const std::vector<double> d = degrees(g);
        for (std::size_t i = 0; i < g.n_nodes(); ++i) {
            const double scale = 1.0 / std::sqrt(d[i] + 1.0);
            for (std::size_t j = 0; j < g.n_nodes(); ++j) r.vectors(i, j) *= scale;
        }
        s.eigenvalues = std::move(r.values);
        s.eigenvectors = std::move(r.vectors);
    }

    if (prop.variant == PropagatorKind::aug_norm_adj) {
        // Theorem guarantee: spectrum lies in (-1, 1]. A solver escaping the
        // interval (beyond rounding) means something is broken upstream.
        const double lo = s.eigenvalues.front(), hi = s.eigenvalues.back();
        if (hi > 1.0 + 1e-9 || lo < -1.0 - 1e-9)
            throw ConsistencyError("AugNormAdj spectrum escaped (-1, 1]: [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return s;
}

inline Spectrum eigendecompose(const Graph& g, PropagatorKind variant, double p = 0.0) {
    return eigendecompose(g, build_propagator(g, variant, p));
}

/// Second-largest eigenvalue of an augmented normalized adjacency: the
/// largest eigenvalue outside the top eigenspace of 1s. With M components the
/// top eigenvalue 1 has multiplicity exactly M, so this is eigenvalue N-M-1
/// (ascending). Convention: 0 when every eigenvalue is a top one (edgeless).
struct SecondEigenvalue {
    double lambda = 0.0;
    std::size_t multiplicity_top = 0;
};

inline SecondEigenvalue second_lambda(const Spectrum& s, const ComponentLabeling& comp,
                                      double top_tol = 1e-6) {
    if (s.variant != PropagatorKind::aug_norm_adj)
        throw UnsupportedError(std::string("second_lambda is defined for AugNormAdj spectra, got ") +
                               propagator_name(s.variant));
    const std::size_t n = s.eigenvalues.size();
    std::size_t top = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(s.eigenvalues[i] - 1.0) <= top_tol) ++top;
    if (top != comp.m_components())
        throw ConsistencyError("top-eigenvalue multiplicity " + std::to_string(top) +
                               " != component count " + std::to_string(comp.m_components()));
    SecondEigenvalue out;
    out.multiplicity_top = top;
    out.lambda = (top < n) ? s.eigenvalues[n - top - 1] : 0.0;
    return out;
}

} // namespace gclab

#endif
