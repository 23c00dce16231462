#ifndef GCLAB_SUITES_HPP
#define GCLAB_SUITES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "gclab/dynamics.hpp"
#include "gclab/synth.hpp"
#include "gclab/theory.hpp"

namespace gclab {

/// Folds `src` into `dst`, prefixing every case id.
inline void merge_report(TheoremReport& dst, const TheoremReport& src, const std::string& prefix) {
    for (const CaseRecord& c : src.details) {
        CaseRecord copy = c;
        copy.case_id = prefix + c.case_id;
        ++dst.n_cases;
        if (!copy.pass) ++dst.n_violations;
        if (copy.slack > dst.worst_slack) dst.worst_slack = copy.slack;
        dst.details.push_back(std::move(copy));
    }
}

/// Built-in population: one-step contraction bounds on 5 seeded random
/// graphs, `trials` random (H, W, B, alpha) tuples split evenly across them.
inline TheoremReport lemma1_suite(std::uint64_t seed, std::size_t trials) {
    TheoremReport all;
    all.theorem_id = "lemma1";
    const std::size_t n_graphs = 5;
    for (std::size_t k = 0; k < n_graphs; ++k) {
        const Graph g = random_multi_component_graph(mix_seed(seed, 0x1E5 + k));
        const std::size_t share = trials / n_graphs + (k < trials % n_graphs ? 1 : 0);
        merge_report(all, check_lemma1(g, share, mix_seed(seed, 0x2E5 + k)),
                     "g" + std::to_string(k) + "/");
    }
    return all;
}

/// The experiment protocol a theorem-2 check runs on: a two-component
/// synthetic graph (654 + 26 nodes, edge factor 2), width 2, orthogonal
/// weights, bias 0.05, alpha 0.2, beta 0.5; depth 400 without activation and
/// 50 with it (the propagation-only model always runs without).
struct ProtocolConstants {
    std::vector<std::size_t> sizes{654, 26};
    double edge_factor = 2.0;
    std::size_t width = 2;
    std::size_t depth_linear = 400;
    std::size_t depth_relu = 50;
    double bias = 0.05;
    double alpha = 0.2;
    double beta = 0.5;
};

inline ModelSpec protocol_spec(ModelKind kind, bool use_relu, const ProtocolConstants& pc,
                               std::uint64_t seed) {
    ModelSpec spec;
    spec.kind = kind;
    spec.depth = use_relu ? pc.depth_relu : pc.depth_linear;
    spec.width = pc.width;
    spec.use_relu = use_relu;
    spec.seed = seed;
    if (kind == ModelKind::res_gcn) spec.alpha = pc.alpha;
    if (kind == ModelKind::appnp) spec.beta = pc.beta;
    if (kind == ModelKind::gcn_bias) spec.biases = {{pc.bias}};
    return spec;
}

inline TheoremReport theorem2_suite(std::uint64_t seed) {
    const ProtocolConstants pc;
    const Graph g = synthesize({pc.sizes, pc.edge_factor, pc.width, mix_seed(seed, 0x5107)});
    const ComponentLabeling comp = connected_components(g);
    const SubspaceBasis basis = build_subspace(g, comp);
    const Propagator prop = build_propagator(g, PropagatorKind::aug_norm_adj, 0.0);
    const double lambda = second_lambda(eigendecompose(g, prop), comp).lambda;
    const Matrix h0 = *g.features();

    TheoremReport all;
    all.theorem_id = "theorem2";
    const ModelKind kinds[] = {ModelKind::gcn, ModelKind::gcn_bias, ModelKind::res_gcn,
                               ModelKind::appnp};
    for (const bool use_relu : {false, true}) {
        for (const ModelKind kind : kinds) {
            if (use_relu && kind == ModelKind::appnp) continue; // appnp never activates
            const ModelSpec spec = protocol_spec(kind, use_relu, pc, mix_seed(seed, 0x3000));
            const LayerStack stack = init_stack(spec);
            const ConvergenceParams params = convergence_params(spec, stack, lambda, basis, &h0);
            const DynamicsTrace trace = run_dynamics_over(
                std::span<const Propagator>(&prop, 1), spec, h0, basis, {}, params, stack);
            merge_report(all, check_theorem2(trace, params),
                         std::string(model_name(kind)) + (use_relu ? "/relu/" : "/linear/"));
        }
    }
    return all;
}

/// Bound-curve checks on 20 seeded random graphs over a 0..0.9 grid, plus the
/// closed-form two-node path rows at 1e-12.
inline TheoremReport theorem3_suite(std::uint64_t seed) {
    std::vector<double> grid;
    for (int k = 0; k <= 9; ++k) grid.push_back(0.1 * k);

    TheoremReport all;
    all.theorem_id = "theorem3";
    for (std::size_t k = 0; k < 20; ++k) {
        const Graph g = random_multi_component_graph(mix_seed(seed, 0x3E5 + k));
        merge_report(all, check_theorem3(g, grid), "g" + std::to_string(k) + "/");
    }

    // two-node path: lambda(p) = p / (2 - p) exactly
    const Graph path(2, {Edge{0, 1, 1.0}});
    const BoundCurve curve = dropedge_bounds(path, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double expected = grid[k] / (2.0 - grid[k]);
        all.add("path2/p=" + format_double(grid[k]) + "/closed_form",
                std::fabs(curve.lambda_p[k] - expected), 0.0, 1e-12);
    }
    return all;
}

/// Component-count monotonicity under exact-size sampling: 10 seeded
/// multi-component graphs, 1000 draws at p in {0.25, 0.5, 0.75}, plus 100
/// draws at p = 1 where every node must end up isolated.
inline TheoremReport theorem4_suite(std::uint64_t seed) {
    TheoremReport all;
    all.theorem_id = "theorem4";
    RandomGraphOptions opt;
    opt.min_components = 2;
    for (std::size_t k = 0; k < 10; ++k) {
        const Graph g = random_multi_component_graph(mix_seed(seed, 0x4E5 + k), opt);
        for (const double p : {0.25, 0.5, 0.75}) {
            DropPlan plan;
            plan.p = p;
            plan.seed = mix_seed(seed, 0x5E5 + k);
            merge_report(all, check_theorem4(g, plan, 1000),
                         "g" + std::to_string(k) + "/p=" + format_double(p) + "/");
        }
        DropPlan full;
        full.p = 1.0;
        full.seed = mix_seed(seed, 0x6E5 + k);
        merge_report(all, check_theorem4(g, full, 100), "g" + std::to_string(k) + "/");
    }
    return all;
}

} // namespace gclab

#endif
