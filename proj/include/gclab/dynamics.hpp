#ifndef GCLAB_DYNAMICS_HPP
#define GCLAB_DYNAMICS_HPP

#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gclab/bounds.hpp"
#include "gclab/eigen.hpp"
#include "gclab/errors.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"
#include "gclab/model.hpp"
#include "gclab/propagator.hpp"
#include "gclab/subspace.hpp"

namespace gclab {

/// Contraction pair (v, r) of the per-layer inequality
///   d(H_{l+1}) - r <= v (d(H_l) - r),
/// equivalently d(H_{l+1}) <= v d(H_l) + additive with additive = (1 - v) r.
/// For v >= 1 on a radius-bearing model the radius is undefined
/// (radius_defined = false, r = NaN) but the additive form stays valid, so
/// traces remain checkable.
struct ConvergenceParams {
    ModelKind kind = ModelKind::gcn;
    double v = 0.0;
    double r = 0.0;
    bool radius_defined = true;
    double additive = 0.0; // d(b) for gcn-b, beta * d(H0) for appnp, else 0
    double s = 0.0;        // sup of layer operator norms actually used
    double lambda = 0.0;   // informative eigenvalue of the propagator used
};

/// Substitutes the model into the contraction table:
///   gcn       v = s lambda          r = 0
///   gcn-b     v = s lambda          r = sup_l d(b_l) / (1 - v)
///   resgcn    v = s lambda + alpha  r = 0
///   appnp     v = (1 - beta) lambda r = beta d(H0) / (1 - v)
///   gcn-self  v = s lambda + s_self r = 0
/// `h0` is required for appnp only.
inline ConvergenceParams convergence_params(const ModelSpec& spec, const LayerStack& stack,
                                            double lambda, const SubspaceBasis& basis,
                                            const Matrix* h0 = nullptr) {
    spec.validate();
    ConvergenceParams p;
    p.kind = spec.kind;
    p.s = stack.s_sup;
    p.lambda = lambda;

    switch (spec.kind) {
        case ModelKind::gcn:
            p.v = stack.s_sup * lambda;
            break;
        case ModelKind::gcn_bias: {
            p.v = stack.s_sup * lambda;
            double worst = 0.0;
            const std::size_t n_rows = spec.biases.size() == 1 ? 1 : spec.depth;
            for (std::size_t l = 0; l < n_rows; ++l)
                worst = std::max(worst, distance_of_bias(basis, spec.bias_row(l), spec.width));
            p.additive = worst;
            break;
        }
        case ModelKind::res_gcn:
            p.v = stack.s_sup * lambda + *spec.alpha;
            break;
        case ModelKind::appnp: {
            if (h0 == nullptr) throw DomainError("appnp convergence params need H0");
            p.v = (1.0 - *spec.beta) * lambda;
            p.additive = *spec.beta * distance_to_subspace(basis, *h0);
            break;
        }
        case ModelKind::gcn_self:
            p.v = stack.s_sup * lambda + stack.s_self_sup;
            break;
    }

    if (p.additive == 0.0) {
        p.r = 0.0; // r = 0 models keep a defined radius at any v
    } else if (p.v < 1.0) {
        p.r = p.additive / (1.0 - p.v);
    } else {
        p.r = std::numeric_limits<double>::quiet_NaN();
        p.radius_defined = false;
    }
    return p;
}

/// Envelope value r + v^l |d(H0) - r|; NaN when the radius is undefined.
inline double envelope_at(const ConvergenceParams& p, double d0, std::size_t layer) {
    if (!p.radius_defined) return std::numeric_limits<double>::quiet_NaN();
    return p.r + std::pow(p.v, static_cast<double>(layer)) * std::fabs(d0 - p.r);
}

struct DynamicsTrace {
    std::vector<double> d_m;               // distance per layer, index 0 = input
    std::map<std::size_t, Matrix> snapshots; // requested layers, 0 = input
    ConvergenceParams params;
    Matrix final_h;
};

/// Feature cap beyond which propagation is declared divergent.
inline constexpr double kDivergenceCap = 1e300;

/// Core loop. `layer_props` holds either one propagator shared by every layer
/// or one per layer (layer-wise DropEdge). Distances are measured against
/// `basis`, which always belongs to the un-dropped graph.
inline DynamicsTrace run_dynamics_over(std::span<const Propagator> layer_props,
                                       const ModelSpec& spec, const Matrix& h0,
                                       const SubspaceBasis& basis,
                                       std::span<const std::size_t> snapshot_layers,
                                       const ConvergenceParams& params,
                                       const LayerStack& stack) {
    spec.validate();
    if (layer_props.empty()) throw DomainError("need at least one propagator");
    if (layer_props.size() != 1 && layer_props.size() != spec.depth)
        throw ShapeError("layer propagator list must have size 1 or depth");

    DynamicsTrace trace;
    trace.params = params;

    auto want_snapshot = [&](std::size_t l) {
        for (const std::size_t s : snapshot_layers)
            if (s == l) return true;
        return false;
    };

    Matrix h = h0;
    trace.d_m.push_back(distance_to_subspace(basis, h));
    if (want_snapshot(0)) trace.snapshots.emplace(0, h);

    for (std::size_t l = 0; l < spec.depth; ++l) {
        const Propagator& prop = layer_props.size() == 1 ? layer_props[0] : layer_props[l];
        h = step(spec, prop, stack, l, h, &h0);
        if (!(max_abs(h) < kDivergenceCap))
            throw DivergenceError("features diverged at layer " + std::to_string(l + 1));
        trace.d_m.push_back(distance_to_subspace(basis, h));
        if (want_snapshot(l + 1)) trace.snapshots.emplace(l + 1, h);
    }
    trace.final_h = std::move(h);
    return trace;
}

/// Convenience wrapper: builds the (expected, re-normalized if drop_rate > 0)
/// augmented adjacency, draws the stack, computes lambda and the contraction
/// pair, then runs the trace.
inline DynamicsTrace run_dynamics(const Graph& g, const ModelSpec& spec, const Matrix& h0,
                                  const SubspaceBasis& basis,
                                  std::span<const std::size_t> snapshot_layers = {},
                                  double drop_rate = 0.0) {
    const Propagator prop = build_propagator(g, PropagatorKind::aug_norm_adj, drop_rate);
    const ComponentLabeling comp = connected_components(g);
    const SecondEigenvalue sl = second_lambda(eigendecompose(g, prop), comp);
    const LayerStack stack = init_stack(spec);
    const ConvergenceParams params = convergence_params(spec, stack, sl.lambda, basis, &h0);
    return run_dynamics_over(std::span<const Propagator>(&prop, 1), spec, h0, basis,
                             snapshot_layers, params, stack);
}

} // namespace gclab

#endif
