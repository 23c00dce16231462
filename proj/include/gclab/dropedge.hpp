#ifndef GCLAB_DROPEDGE_HPP
#define GCLAB_DROPEDGE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"
#include "gclab/propagator.hpp"
#include "gclab/rng.hpp"

namespace gclab {

/// Edge-dropping schedule. one_shot draws a single subset; layer_wise draws
/// an independent subset per layer, each from stream mix(seed, layer).
struct DropPlan {
    enum class Mode { one_shot, layer_wise };
    double p = 0.0;
    Mode mode = Mode::one_shot;
    std::size_t depth = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(p >= 0.0) || p > 1.0) throw DomainError("drop rate must lie in [0, 1]");
        if (depth == 0) throw DomainError("depth must be >= 1");
    }
};

/// One sampled edge subset, tied to the graph it came from.
struct SampledGraph {
    std::vector<Edge> kept_edges;
    const Graph* parent = nullptr;

    Graph to_graph() const { return parent->with_edges(kept_edges); }
};

namespace detail {

/// Keeps exactly floor(E * (1 - p)) edges via a partial Fisher-Yates pass.
inline std::vector<Edge> keep_exact(const std::vector<Edge>& edges, double p, Rng& rng) {
    std::vector<Edge> pool = edges;
    const std::size_t keep =
        static_cast<std::size_t>(std::floor(static_cast<double>(pool.size()) * (1.0 - p)));
    for (std::size_t i = 0; i < keep; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(keep);
    std::sort(pool.begin(), pool.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    return pool;
}

} // namespace detail

/// Default sampler: exact subset size floor(E(1-p)) per draw.
inline std::vector<SampledGraph> sample(const Graph& g, const DropPlan& plan) {
    plan.validate();
    const std::size_t n_draws = plan.mode == DropPlan::Mode::one_shot ? 1 : plan.depth;
    std::vector<SampledGraph> out;
    for (std::size_t k = 0; k < n_draws; ++k) {
        Rng rng(mix_seed(plan.seed, k));
        out.push_back(SampledGraph{detail::keep_exact(g.edges(), plan.p, rng), &g});
    }
    return out;
}

/// Independent per-edge coin flips with keep probability 1 - p. This is the
/// semantics assumed by the unbiasedness bound (independent Bernoullis).
inline SampledGraph sample_bernoulli(const Graph& g, double p, std::uint64_t seed) {
    if (!(p >= 0.0) || p > 1.0) throw DomainError("drop rate must lie in [0, 1]");
    Rng rng(seed);
    SampledGraph s;
    s.parent = &g;
    for (const Edge& e : g.edges())
        if (rng.uniform() >= p) s.kept_edges.push_back(e);
    return s;
}

/// The deterministic stand-in for sampling: the re-normalized propagator
/// built from A + I/(1-p), D + I/(1-p).
inline Propagator expected_propagator(const Graph& g, double p) {
    return build_propagator(g, PropagatorKind::aug_norm_adj, p);
}

/// Monte-Carlo check that mean(A_drop H) matches (1-p) A H within standard
/// error. A_drop keeps each edge independently with probability 1 - p and
/// does not rescale, so E[A_drop] = (1-p) A entrywise and each entry of
/// A_drop H has variance p(1-p) sum_k A(i,k)^2 H(k,j)^2.
struct UnbiasednessReport {
    std::size_t trials = 0;
    double max_abs_dev = 0.0;   // worst |mean - expected| over entries
    double max_dev_in_se = 0.0; // same, in units of the entry's standard error
    bool pass = true;           // max_dev_in_se <= 4
};

inline UnbiasednessReport aggregation_unbiasedness(const Graph& g, double p, const Matrix& h,
                                                   std::size_t trials, std::uint64_t seed) {
    if (h.rows() != g.n_nodes()) throw ShapeError("H row count must match the node count");
    const std::size_t n = g.n_nodes(), c = h.cols();

    Matrix mean(n, c);
    for (std::size_t t = 0; t < trials; ++t) {
        const SampledGraph s = sample_bernoulli(g, p, mix_seed(seed, t));
        for (const Edge& e : s.kept_edges)
            for (std::size_t j = 0; j < c; ++j) {
                mean(e.u, j) += e.w * h(e.v, j);
                mean(e.v, j) += e.w * h(e.u, j);
            }
    }
    mean *= 1.0 / static_cast<double>(trials);

    const Matrix a = detail::dense_adjacency(g);
    const Matrix expected = (1.0 - p) * (a * h);

    Matrix var(n, c); // per-entry variance of one draw
    for (const Edge& e : g.edges())
        for (std::size_t j = 0; j < c; ++j) {
            var(e.u, j) += p * (1.0 - p) * e.w * e.w * h(e.v, j) * h(e.v, j);
            var(e.v, j) += p * (1.0 - p) * e.w * e.w * h(e.u, j) * h(e.u, j);
        }

    UnbiasednessReport rep;
    rep.trials = trials;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const double dev = std::fabs(mean(i, j) - expected(i, j));
            rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
            if (var(i, j) > 0.0) {
                const double se = std::sqrt(var(i, j) / static_cast<double>(trials));
                rep.max_dev_in_se = std::max(rep.max_dev_in_se, dev / se);
            } else if (dev != 0.0) {
                rep.pass = false; // zero-variance entry must match exactly
            }
        }
    if (rep.max_dev_in_se > 4.0) rep.pass = false;
    return rep;
}

/// Distribution of connected-component counts across repeated exact-size
/// draws. Dropping edges can only split components, so the count must never
/// fall below the parent's.
struct ComponentMonotonicityReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::size_t min_count = 0;
    std::size_t max_count = 0;
    std::map<std::size_t, std::size_t> histogram;
    bool pass = true;
};

inline ComponentMonotonicityReport component_monotonicity(const Graph& g, const DropPlan& plan,
                                                          std::size_t trials) {
    plan.validate();
    const std::size_t m_parent = connected_components(g).m_components();
    ComponentMonotonicityReport rep;
    rep.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(plan.seed, t));
        const Graph sampled = g.with_edges(detail::keep_exact(g.edges(), plan.p, rng));
        const std::size_t m = connected_components(sampled).m_components();
        ++rep.histogram[m];
        if (t == 0) rep.min_count = rep.max_count = m;
        rep.min_count = std::min(rep.min_count, m);
        rep.max_count = std::max(rep.max_count, m);
        if (m < m_parent) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

/// Diagnostic gap between the expected propagator and the mean of sampled,
/// per-sample re-normalized propagators. These differ (normalization is
/// nonlinear), so the report carries magnitudes only; nothing is asserted.
struct RenormalizationGapReport {
    std::size_t trials = 0;
    double max_abs_gap = 0.0;
    double mean_abs_gap = 0.0;
};

inline RenormalizationGapReport renormalization_gap(const Graph& g, double p, std::size_t trials,
                                                    std::uint64_t seed) {
    const std::size_t n = g.n_nodes();
    Matrix mean(n, n);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, t));
        const Graph sampled = g.with_edges(detail::keep_exact(g.edges(), p, rng));
        mean += build_propagator(sampled, PropagatorKind::aug_norm_adj, 0.0).matrix;
    }
    mean *= 1.0 / static_cast<double>(trials);

    const Matrix expected = expected_propagator(g, p).matrix;
    RenormalizationGapReport rep;
    rep.trials = trials;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double gap = std::fabs(mean(i, j) - expected(i, j));
            rep.max_abs_gap = std::max(rep.max_abs_gap, gap);
            total += gap;
        }
    rep.mean_abs_gap = total / static_cast<double>(n * n);
    return rep;
}

} // namespace gclab

#endif
