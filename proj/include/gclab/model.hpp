#ifndef GCLAB_MODEL_HPP
#define GCLAB_MODEL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gclab/eigen.hpp"
#include "gclab/errors.hpp"
#include "gclab/matrix.hpp"
#include "gclab/propagator.hpp"
#include "gclab/rng.hpp"

namespace gclab {

enum class ModelKind {
    gcn,      // H_{l+1} = sigma(P H W)
    gcn_bias, // H_{l+1} = sigma(P H W + b)
    res_gcn,  // H_{l+1} = sigma(P H W) + alpha H
    appnp,    // H_{l+1} = (1 - beta) P H + beta H0; no weights, no activation
    gcn_self  // H_{l+1} = sigma(P H W + H W_self)
};

inline const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::gcn: return "gcn";
        case ModelKind::gcn_bias: return "gcn-b";
        case ModelKind::res_gcn: return "resgcn";
        case ModelKind::appnp: return "appnp";
        case ModelKind::gcn_self: return "gcn-self";
    }
    return "?";
}

struct WeightInit {
    enum class Scheme { orthogonal, scaled_gaussian };
    Scheme scheme = Scheme::orthogonal;
    double scale = 1.0; // scaled_gaussian only: entries = scale * N(0,1) / sqrt(width)
};

/// Full experiment description. Per-kind parameters must be set exactly for
/// the kinds that use them; `biases` holds one shared entry or depth entries,
/// each of size 1 (scalar broadcast) or width (per channel).
struct ModelSpec {
    ModelKind kind = ModelKind::gcn;
    std::size_t depth = 1;
    std::size_t width = 2;
    std::optional<double> alpha;              // res_gcn
    std::optional<double> beta;               // appnp
    std::vector<std::vector<double>> biases;  // gcn_bias
    bool use_relu = false;
    WeightInit init;
    std::uint64_t seed = 0;

    void validate() const {
        if (depth == 0) throw DomainError("depth must be >= 1");
        if (width == 0) throw DomainError("width must be >= 1");
        const bool wants_alpha = kind == ModelKind::res_gcn;
        const bool wants_beta = kind == ModelKind::appnp;
        const bool wants_bias = kind == ModelKind::gcn_bias;
        if (alpha.has_value() != wants_alpha)
            throw DomainError(wants_alpha ? "resgcn requires alpha" : "alpha is only valid for resgcn");
        if (beta.has_value() != wants_beta)
            throw DomainError(wants_beta ? "appnp requires beta" : "beta is only valid for appnp");
        if (biases.empty() == wants_bias)
            throw DomainError(wants_bias ? "gcn-b requires a bias" : "bias is only valid for gcn-b");
        if (wants_alpha && !(*alpha >= 0.0)) throw DomainError("alpha must be >= 0");
        if (wants_beta && (!(*beta >= 0.0) || *beta > 1.0)) throw DomainError("beta must lie in [0, 1]");
        if (wants_bias) {
            if (biases.size() != 1 && biases.size() != depth)
                throw DomainError("bias list must have 1 entry or one per layer");
            for (const auto& row : biases)
                if (row.size() != 1 && row.size() != width)
                    throw ShapeError("each bias entry must be a scalar or have one value per channel");
        }
        if (kind == ModelKind::appnp && use_relu)
            throw UnsupportedError("appnp applies no activation; use_relu must stay off");
    }

    std::vector<double> bias_row(std::size_t layer) const {
        const std::vector<double>& raw = biases.size() == 1 ? biases[0] : biases[layer];
        if (raw.size() == 1) return std::vector<double>(width, raw[0]);
        return raw;
    }
};

/// Per-layer weights plus their supremum operator norms. APPNP stacks are
/// empty. s values are computed numerically from W^T W.
struct LayerStack {
    std::vector<Matrix> weights;
    std::vector<Matrix> self_weights; // gcn_self only
    double s_sup = 0.0;
    double s_self_sup = 0.0;
};

namespace detail {

/// Modified Gram-Schmidt with one re-orthogonalization pass; plenty for the
/// well-conditioned Gaussian matrices it is fed.
inline void orthonormalize_columns(Matrix& w) {
    const std::size_t n = w.rows(), c = w.cols();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < c; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += w(i, k) * w(i, j);
                for (std::size_t i = 0; i < n; ++i) w(i, j) -= dot * w(i, k);
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) norm += w(i, j) * w(i, j);
            norm = std::sqrt(norm);
            if (norm == 0.0) throw NumericalError("degenerate column during orthonormalization");
            for (std::size_t i = 0; i < n; ++i) w(i, j) /= norm;
        }
    }
}

inline Matrix draw_weight(const WeightInit& init, std::size_t width, std::uint64_t seed) {
    Rng rng(seed);
    Matrix w(width, width);
    for (std::size_t i = 0; i < width; ++i)
        for (std::size_t j = 0; j < width; ++j) w(i, j) = rng.gaussian();
    if (init.scheme == WeightInit::Scheme::orthogonal) {
        orthonormalize_columns(w);
    } else {
        const double s = init.scale / std::sqrt(static_cast<double>(width));
        w *= s;
    }
    return w;
}

inline double operator_norm(const Matrix& w) {
    const EigenResult gram = symmetric_eigen(transpose(w) * w);
    return std::sqrt(std::max(0.0, gram.values.back()));
}

} // namespace detail

/// Draws the per-layer weights. Layer l's weight stream is mix(seed, 2l) and
/// its self-weight stream mix(seed, 2l + 1), so any single layer can be
/// re-drawn in isolation.
inline LayerStack init_stack(const ModelSpec& spec) {
    spec.validate();
    LayerStack st;
    if (spec.kind == ModelKind::appnp) return st;
    for (std::size_t l = 0; l < spec.depth; ++l) {
        st.weights.push_back(detail::draw_weight(spec.init, spec.width, mix_seed(spec.seed, 2 * l)));
        st.s_sup = std::max(st.s_sup, detail::operator_norm(st.weights.back()));
        if (spec.kind == ModelKind::gcn_self) {
            st.self_weights.push_back(
                detail::draw_weight(spec.init, spec.width, mix_seed(spec.seed, 2 * l + 1)));
            st.s_self_sup = std::max(st.s_self_sup, detail::operator_norm(st.self_weights.back()));
        }
    }
    return st;
}

/// One propagation step. `h0` is only read by APPNP.
inline Matrix step(const ModelSpec& spec, const Propagator& prop, const LayerStack& stack,
                   std::size_t layer, const Matrix& h, const Matrix* h0 = nullptr) {
    if (layer >= spec.depth) throw DomainError("layer index past depth");
    if (h.rows() != prop.matrix.rows())
        throw ShapeError("H has " + std::to_string(h.rows()) + " rows; propagator expects " +
                         std::to_string(prop.matrix.rows()));
    if (h.cols() != spec.width)
        throw ShapeError("H has " + std::to_string(h.cols()) + " channels; spec.width is " +
                         std::to_string(spec.width));

    auto maybe_relu = [&](Matrix m) { return spec.use_relu ? relu(std::move(m)) : m; };

    switch (spec.kind) {
        case ModelKind::gcn:
            return maybe_relu(prop.matrix * h * stack.weights[layer]);
        case ModelKind::gcn_bias: {
            Matrix z = prop.matrix * h * stack.weights[layer];
            z += broadcast_row(spec.bias_row(layer), h.rows());
            return maybe_relu(std::move(z));
        }
        case ModelKind::res_gcn:
            return maybe_relu(prop.matrix * h * stack.weights[layer]) + *spec.alpha * h;
        case ModelKind::appnp: {
            if (h0 == nullptr) throw DomainError("appnp step needs H0");
            if (h0->rows() != h.rows() || h0->cols() != h.cols())
                throw ShapeError("H0 shape differs from H");
            return (1.0 - *spec.beta) * (prop.matrix * h) + *spec.beta * (*h0);
        }
        case ModelKind::gcn_self:
            return maybe_relu(prop.matrix * h * stack.weights[layer] + h * stack.self_weights[layer]);
    }
    throw DomainError("unknown model kind");
}

/// Maps raw features to the working width: identity when the channel counts
/// already agree, otherwise a seeded Gaussian lift X L with L ~ N(0, 1/C_in).
inline Matrix lift_features(const Matrix& x, std::size_t width, std::uint64_t seed) {
    if (x.cols() == width) return x;
    Rng rng(mix_seed(seed, 0xF17));
    Matrix l(x.cols(), width);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.cols()));
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) = s * rng.gaussian();
    return x * l;
}

} // namespace gclab

#endif
