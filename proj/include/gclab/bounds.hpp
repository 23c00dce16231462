#ifndef GCLAB_BOUNDS_HPP
#define GCLAB_BOUNDS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "gclab/eigen.hpp"
#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/propagator.hpp"

namespace gclab {

/// Spectral quantities of the re-normalized propagator along a DropEdge-rate
/// grid: lambda_p is the informative (second-largest) eigenvalue, a_p the
/// Rayleigh-quotient sup used by the bounds, mu_p / gamma_p the lower / upper
/// bounds sandwiching lambda_p. Values are reported raw, never clipped; the
/// theorem checker turns violations into failing report rows.
struct BoundCurve {
    std::vector<double> p_grid;
    std::vector<double> lambda_p;
    std::vector<double> a_p;
    std::vector<double> mu_p;
    std::vector<double> gamma_p;
};

/// min/max over nodes of (d_i + 1) / (d_i + 1/(1-p)).
struct DegreeRatioExtrema {
    double min_ratio = 1.0;
    double max_ratio = 1.0;
};

inline DegreeRatioExtrema degree_ratio_extrema(const std::vector<double>& d, double p) {
    const double c = 1.0 / (1.0 - p);
    DegreeRatioExtrema r;
    r.min_ratio = r.max_ratio = (d[0] + 1.0) / (d[0] + c);
    for (std::size_t i = 1; i < d.size(); ++i) {
        const double x = (d[i] + 1.0) / (d[i] + c);
        if (x < r.min_ratio) r.min_ratio = x;
        if (x > r.max_ratio) r.max_ratio = x;
    }
    return r;
}

/// Bound formulas for a given Rayleigh sup `a` (exposed separately so the
/// frozen-a monotonicity property can re-evaluate the curve with `a` pinned
/// at its p = 0 value).
inline double gamma_bound(double a, const DegreeRatioExtrema& r) { return 1.0 - (1.0 - a) * r.min_ratio; }
inline double mu_bound(double a, const DegreeRatioExtrema& r) { return 1.0 - (1.0 + a) * r.max_ratio; }

/// Rates within this distance of 1 are treated as the analytic p -> 1 limit
/// (lambda = a = mu = gamma = 1) instead of materializing 1/(1-p).
inline constexpr double kUnitRateTol = 1e-9;

/// Evaluates lambda(p), a(p), mu(p), gamma(p) at a single rate. `a` maximizes
/// |y^T Ahat y| / ||y||^2 over y = Dhat^{1/2} Dp^{-1/2} x for the N - M
/// non-top eigenvectors x of the re-normalized propagator.
struct BoundPoint {
    double lambda = 1.0;
    double a = 1.0;
    double mu = 1.0;
    double gamma = 1.0;
};

inline BoundPoint bound_point(const Graph& g, const ComponentLabeling& comp,
                              const Matrix& ahat, const std::vector<double>& d, double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("drop rate outside [0, 1]");
    BoundPoint out;
    if (1.0 - p < kUnitRateTol) return out; // analytic limit: everything 1

    const std::size_t n = g.n_nodes();
    const std::size_t m = comp.m_components();
    const double c = 1.0 / (1.0 - p);

    const Spectrum sp = eigendecompose(g, build_propagator(g, PropagatorKind::aug_norm_adj, p));
    const SecondEigenvalue sl = second_lambda(sp, comp);
    out.lambda = sl.lambda;

    double a = 0.0;
    // ascending order: non-top eigenvectors are columns 0 .. n-m-1
    for (std::size_t k = 0; k + m < n; ++k) {
        std::vector<double> y(n);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = std::sqrt((d[i] + 1.0) / (d[i] + c)) * sp.eigenvectors(i, k);
            norm2 += y[i] * y[i];
        }
        double quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += ahat(i, j) * y[j];
            quad += y[i] * row;
        }
        a = std::max(a, std::fabs(quad) / norm2);
    }
    out.a = a;

    const DegreeRatioExtrema r = degree_ratio_extrema(d, p);
    out.gamma = gamma_bound(a, r);
    out.mu = mu_bound(a, r);
    return out;
}

/// Full curve over a rate grid. p = 1 entries take the analytic limit.
inline BoundCurve dropedge_bounds(const Graph& g, const std::vector<double>& p_grid) {
    const ComponentLabeling comp = connected_components(g);
    const Propagator base = build_propagator(g, PropagatorKind::aug_norm_adj, 0.0);
    const std::vector<double> d = degrees(g);

    BoundCurve curve;
    curve.p_grid = p_grid;
    for (const double p : p_grid) {
        const BoundPoint pt = bound_point(g, comp, base.matrix, d, p);
        curve.lambda_p.push_back(pt.lambda);
        curve.a_p.push_back(pt.a);
        curve.mu_p.push_back(pt.mu);
        curve.gamma_p.push_back(pt.gamma);
    }
    return curve;
}

} // namespace gclab

#endif
