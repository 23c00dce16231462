#ifndef GCLAB_THEORY_HPP
#define GCLAB_THEORY_HPP

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "gclab/bounds.hpp"
#include "gclab/dropedge.hpp"
#include "gclab/dynamics.hpp"
#include "gclab/eigen.hpp"
#include "gclab/format.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"
#include "gclab/model.hpp"
#include "gclab/rng.hpp"
#include "gclab/subspace.hpp"

namespace gclab {

/// One checked inequality: pass iff lhs <= rhs + tolerance; slack = lhs - rhs.
struct CaseRecord {
    std::string case_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;
};

/// Aggregate of one theorem check. Deterministic given its inputs: the same
/// graph/seed/trials always reproduce every row bit-for-bit, and any failing
/// case can be regenerated from its case_id alone (ids encode the stream
/// index of the case's RNG).
struct TheoremReport {
    std::string theorem_id;
    std::size_t n_cases = 0;
    std::size_t n_violations = 0;
    double worst_slack = -std::numeric_limits<double>::infinity();
    std::vector<CaseRecord> details;

    bool passed() const { return n_violations == 0; }

    void add(std::string case_id, double lhs, double rhs, double tolerance) {
        CaseRecord rec;
        rec.case_id = std::move(case_id);
        rec.lhs = lhs;
        rec.rhs = rhs;
        rec.slack = lhs - rhs;
        rec.pass = rec.slack <= tolerance;
        ++n_cases;
        if (!rec.pass) ++n_violations;
        if (rec.slack > worst_slack) worst_slack = rec.slack;
        details.push_back(std::move(rec));
    }
};

inline void write_report_csv(std::ostream& os, const TheoremReport& rep,
                             const std::string& config_line) {
    os << "# " << config_line << "\n";
    os << "theorem_id,case_id,lhs,rhs,slack,pass\n";
    for (const CaseRecord& c : rep.details)
        os << rep.theorem_id << ',' << c.case_id << ',' << format_double(c.lhs) << ','
           << format_double(c.rhs) << ',' << format_double(c.slack) << ',' << (c.pass ? 1 : 0)
           << "\n";
}

inline void write_report_text(std::ostream& os, const TheoremReport& rep,
                              const std::string& config_line) {
    os << "# " << config_line << "\n";
    os << rep.theorem_id << ": cases=" << rep.n_cases << " violations=" << rep.n_violations
       << " worst_slack=" << format_double(rep.worst_slack) << " -> "
       << (rep.passed() ? "PASS" : "FAIL") << "\n";
    for (const CaseRecord& c : rep.details)
        if (!c.pass)
            os << "  VIOLATION " << c.case_id << " lhs=" << format_double(c.lhs)
               << " rhs=" << format_double(c.rhs) << " slack=" << format_double(c.slack) << "\n";
}

// ---------------------------------------------------------------------------
// Contraction inequalities for one random (H, W, B, alpha) tuple
// ---------------------------------------------------------------------------

/// Inputs of one random case, regenerated from (seed, index) alone so a
/// failing row can be replayed without rerunning the schedule.
struct Lemma1Case {
    Matrix h, w, b;
    double alpha1 = 0.0, alpha2 = 0.0;
};

inline Lemma1Case lemma1_case_inputs(std::size_t n_nodes, std::size_t n_channels,
                                     std::uint64_t seed, std::size_t index) {
    Rng rng(mix_seed(seed, index));
    Lemma1Case c;
    c.h = Matrix(n_nodes, n_channels);
    c.b = Matrix(n_nodes, n_channels);
    c.w = Matrix(n_channels, n_channels);
    for (std::size_t i = 0; i < n_nodes; ++i)
        for (std::size_t j = 0; j < n_channels; ++j) c.h(i, j) = rng.gaussian();
    for (std::size_t i = 0; i < n_channels; ++i)
        for (std::size_t j = 0; j < n_channels; ++j) c.w(i, j) = rng.gaussian();
    for (std::size_t i = 0; i < n_nodes; ++i)
        for (std::size_t j = 0; j < n_channels; ++j) c.b(i, j) = rng.gaussian();
    c.alpha1 = rng.uniform(0.0, 2.0);
    c.alpha2 = rng.uniform(0.0, 2.0);
    return c;
}

/// Checks the four one-step bounds on random inputs over one graph:
///   propagation   d(Ahat H) <= lambda d(H)
///   weight        d(H W)    <= s(W) d(H)
///   relu          d(relu H) <= d(H)
///   combination   d(a1 H + a2 B) <= a1 d(H) + a2 d(B)
/// Every case row is tagged t<index>/<name> and regenerated from
/// mix(seed, index).
inline TheoremReport check_lemma1(const Graph& g, std::size_t trials, std::uint64_t seed,
                                  std::size_t n_channels = 3, double tolerance = 1e-9) {
    const ComponentLabeling comp = connected_components(g);
    const SubspaceBasis basis = build_subspace(g, comp);
    const Propagator prop = build_propagator(g, PropagatorKind::aug_norm_adj, 0.0);
    const double lambda = second_lambda(eigendecompose(g, prop), comp).lambda;

    TheoremReport rep;
    rep.theorem_id = "lemma1";
    for (std::size_t t = 0; t < trials; ++t) {
        const Lemma1Case c = lemma1_case_inputs(g.n_nodes(), n_channels, seed, t);
        const double dh = distance_to_subspace(basis, c.h);
        const double db = distance_to_subspace(basis, c.b);
        const std::string tag = "t" + std::to_string(t) + "/";

        rep.add(tag + "propagation", distance_to_subspace(basis, prop.matrix * c.h), lambda * dh,
                tolerance);
        rep.add(tag + "weight", distance_to_subspace(basis, c.h * c.w),
                detail::operator_norm(c.w) * dh, tolerance);
        rep.add(tag + "relu", distance_to_subspace(basis, relu(c.h)), dh, tolerance);
        rep.add(tag + "combination",
                distance_to_subspace(basis, c.alpha1 * c.h + c.alpha2 * c.b),
                c.alpha1 * dh + c.alpha2 * db, tolerance);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Layer recursion along a trace
// ---------------------------------------------------------------------------

/// Verifies d(H_{l+1}) <= v d(H_l) + additive per layer (the additive form is
/// equivalent to the radius form when r is defined and remains valid when it
/// is not) and, when the radius is defined, the telescoped envelope
/// d(H_l) <= r + v^l |d(H_0) - r|.
inline TheoremReport check_theorem2(const DynamicsTrace& trace, const ConvergenceParams& params,
                                    double tolerance = 1e-7) {
    TheoremReport rep;
    rep.theorem_id = "theorem2";
    const std::size_t depth = trace.d_m.size() - 1;
    for (std::size_t l = 0; l < depth; ++l)
        rep.add("layer" + std::to_string(l + 1) + "/step", trace.d_m[l + 1],
                params.v * trace.d_m[l] + params.additive, tolerance);
    if (params.radius_defined)
        for (std::size_t l = 1; l <= depth; ++l)
            rep.add("layer" + std::to_string(l) + "/envelope", trace.d_m[l],
                    envelope_at(params, trace.d_m[0], l), tolerance);
    return rep;
}

// ---------------------------------------------------------------------------
// Bound curve: sandwich, frozen-a monotonicity, p -> 1 limit
// ---------------------------------------------------------------------------

/// Checks along a rate grid that mu(p) <= lambda(p) <= gamma(p), that with
/// `a` frozen at its p = 0 value both bounds are non-decreasing and their gap
/// non-increasing in p, and that the analytic p -> 1 limit is 1 across the
/// board. Sandwich rows are skipped (noted in the id) for edgeless graphs,
/// where there is no informative eigenvalue.
inline TheoremReport check_theorem3(const Graph& g, const std::vector<double>& p_grid,
                                    double tolerance = 1e-9) {
    TheoremReport rep;
    rep.theorem_id = "theorem3";

    const ComponentLabeling comp = connected_components(g);
    const bool has_informative = comp.m_components() < g.n_nodes();
    const std::vector<double> d = degrees(g);

    const BoundCurve curve = dropedge_bounds(g, p_grid);
    for (std::size_t k = 0; k < p_grid.size(); ++k) {
        const std::string tag = "p=" + format_double(p_grid[k]) + "/";
        if (has_informative) {
            rep.add(tag + "sandwich_lower", curve.mu_p[k], curve.lambda_p[k], tolerance);
            rep.add(tag + "sandwich_upper", curve.lambda_p[k], curve.gamma_p[k], tolerance);
        } else {
            rep.add(tag + "sandwich_skipped_edgeless", 0.0, 0.0, tolerance);
        }
    }

    // frozen-a curves: recompute mu/gamma with a pinned at its p = 0 value
    const double a0 = dropedge_bounds(g, {0.0}).a_p[0];
    std::vector<double> mu_frozen, gamma_frozen;
    for (const double p : p_grid) {
        if (1.0 - p < kUnitRateTol) {
            mu_frozen.push_back(1.0);
            gamma_frozen.push_back(1.0);
        } else {
            const DegreeRatioExtrema r = degree_ratio_extrema(d, p);
            mu_frozen.push_back(mu_bound(a0, r));
            gamma_frozen.push_back(gamma_bound(a0, r));
        }
    }
    for (std::size_t k = 0; k + 1 < p_grid.size(); ++k) {
        if (p_grid[k + 1] < p_grid[k]) throw DomainError("rate grid must be non-decreasing");
        const std::string tag =
            "p=" + format_double(p_grid[k]) + "..=" + format_double(p_grid[k + 1]) + "/";
        rep.add(tag + "frozen_mu_nondecreasing", mu_frozen[k], mu_frozen[k + 1], tolerance);
        rep.add(tag + "frozen_gamma_nondecreasing", gamma_frozen[k], gamma_frozen[k + 1], tolerance);
        rep.add(tag + "frozen_gap_nonincreasing", gamma_frozen[k + 1] - mu_frozen[k + 1],
                gamma_frozen[k] - mu_frozen[k], tolerance);
    }

    const BoundCurve limit = dropedge_bounds(g, {1.0});
    rep.add("p=1/limit_lambda", std::fabs(limit.lambda_p[0] - 1.0), 0.0, tolerance);
    rep.add("p=1/limit_mu", std::fabs(limit.mu_p[0] - 1.0), 0.0, tolerance);
    rep.add("p=1/limit_gamma", std::fabs(limit.gamma_p[0] - 1.0), 0.0, tolerance);
    return rep;
}

// ---------------------------------------------------------------------------
// Component count never drops under edge sampling
// ---------------------------------------------------------------------------

/// One row per draw: sampled component count must be >= the parent's
/// (lhs = M_parent - M_sampled <= 0). At p = 1 the count must equal N.
inline TheoremReport check_theorem4(const Graph& g, const DropPlan& plan, std::size_t trials) {
    plan.validate();
    const double m_parent = static_cast<double>(connected_components(g).m_components());

    TheoremReport rep;
    rep.theorem_id = "theorem4";
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(mix_seed(plan.seed, t));
        const Graph sampled = g.with_edges(detail::keep_exact(g.edges(), plan.p, rng));
        const double m = static_cast<double>(connected_components(sampled).m_components());
        rep.add("draw" + std::to_string(t), m_parent, m, 0.0);
        if (plan.p == 1.0)
            rep.add("draw" + std::to_string(t) + "/all_isolated",
                    std::fabs(m - static_cast<double>(g.n_nodes())), 0.0, 0.0);
    }
    return rep;
}

} // namespace gclab

#endif
