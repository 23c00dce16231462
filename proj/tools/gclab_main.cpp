// gclab: command-line front end of the over-smoothing lab.
//
// Subcommands: gen, project-features, dynamics, bounds, check. Every output
// file starts with a '#' line holding the resolved semantic configuration
// (never timestamps or paths), so identical seeds give byte-identical files.
// Exit codes: 0 ok / check passed, 1 check failed, 2 operational error.

#include <clocale>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gclab/gclab.hpp"

namespace fs = std::filesystem;
using namespace gclab;

namespace {

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw Error("cannot write " + p.string());
    return f;
}

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError(std::string("bad ") + what + " entry '" + tok + "'");
        }
    }
    if (out.empty()) throw DomainError(std::string(what) + " list is empty");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv, const char* what) {
    std::vector<std::size_t> out;
    for (const double v : parse_double_list(csv, what)) {
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw DomainError(std::string("bad ") + what + " entry");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

ModelKind parse_model(const std::string& name) {
    if (name == "gcn") return ModelKind::gcn;
    if (name == "gcn-b") return ModelKind::gcn_bias;
    if (name == "resgcn") return ModelKind::res_gcn;
    if (name == "appnp") return ModelKind::appnp;
    if (name == "gcn-self") return ModelKind::gcn_self;
    throw DomainError("unknown model '" + name + "' (gcn, gcn-b, resgcn, appnp, gcn-self)");
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string sizes = "654,26";
    double factor = 2.0;
    std::size_t feature_dim = 2;
    std::uint64_t seed = 7;
    std::string out = "gclab-out";
};

int cmd_gen(const GenArgs& a) {
    SyntheticRecipe recipe{parse_size_list(a.sizes, "sizes"), a.factor, a.feature_dim, a.seed};
    const Graph g = synthesize(recipe);

    const std::string cfg = "gclab gen sizes=" + a.sizes + " factor=" + format_double(a.factor) +
                            " feature-dim=" + std::to_string(a.feature_dim) +
                            " seed=" + std::to_string(a.seed);
    auto ef = open_out(fs::path(a.out) / "edges.txt");
    write_edge_list(ef, g, cfg);
    if (g.features()) {
        auto ff = open_out(fs::path(a.out) / "features.csv");
        write_matrix_csv(ff, *g.features(), cfg);
    }
    std::cout << "gen: nodes=" << g.n_nodes() << " edges=" << g.n_edges()
              << " components=" << connected_components(g).m_components() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct ProjectArgs {
    std::string features;
    bool header = false;
    std::size_t out_dim = 2;
    std::string out = "projected.csv";
};

int cmd_project_features(const ProjectArgs& a) {
    std::ifstream ff(a.features);
    if (!ff) throw Error("cannot open feature file: " + a.features);
    // reuse the ingest parser by pairing with an empty edge stream
    std::istringstream no_edges;
    IngestOptions opt;
    opt.features_header = a.header;
    const IngestResult in = ingest_graph(no_edges, &ff, opt);
    const Matrix& x = *in.graph.features();

    const TruncatedSvd svd = truncated_svd(x, a.out_dim);
    if (svd.rank_deficient)
        std::cerr << "warning: feature rank " << svd.effective_rank << " < out-dim "
                  << a.out_dim << "; trailing columns zeroed\n";

    const std::string cfg = "gclab project-features out-dim=" + std::to_string(a.out_dim) +
                            " rank=" + std::to_string(svd.effective_rank);
    auto of = open_out(a.out);
    write_matrix_csv(of, svd.scores, cfg);
    std::cout << "project-features: rows=" << svd.scores.rows() << " out-dim=" << a.out_dim
              << " rank=" << svd.effective_rank << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct DynamicsArgs {
    std::string graph;
    std::string features;
    bool header = false;
    std::optional<std::size_t> n_nodes;
    std::string model = "gcn";
    std::size_t depth = 400;
    std::size_t width = 2;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::string bias;
    bool use_relu = false;
    double p = 0.0;
    bool oneshot = false;
    bool layerwise = false;
    std::uint64_t seed = 7;
    std::string snapshots;
    std::string out = "gclab-out";
    bool svg = false;
};

int cmd_dynamics(const DynamicsArgs& a) {
    IngestOptions opt;
    opt.n_nodes = a.n_nodes;
    opt.features_header = a.header;
    const IngestResult in = ingest_graph_files(
        a.graph, a.features.empty() ? std::nullopt : std::make_optional(a.features), opt);
    const Graph& g = in.graph;

    ModelSpec spec;
    spec.kind = parse_model(a.model);
    spec.depth = a.depth;
    spec.width = a.width;
    spec.alpha = a.alpha;
    spec.beta = a.beta;
    if (!a.bias.empty()) spec.biases = {parse_double_list(a.bias, "bias")};
    spec.use_relu = a.use_relu;
    spec.seed = a.seed;
    spec.validate();

    Matrix h0;
    if (g.features()) {
        h0 = lift_features(*g.features(), spec.width, a.seed);
    } else {
        Rng rng(mix_seed(a.seed, 0xA0)); // no features given: gaussian H0
        h0 = Matrix(g.n_nodes(), spec.width);
        for (std::size_t i = 0; i < h0.rows(); ++i)
            for (std::size_t j = 0; j < h0.cols(); ++j) h0(i, j) = rng.gaussian();
    }

    const ComponentLabeling comp = connected_components(g);
    const SubspaceBasis basis = build_subspace(g, comp);

    // expected (re-normalized) propagator defines lambda and the envelope
    const Propagator expected = build_propagator(g, PropagatorKind::aug_norm_adj, a.p);
    const double lambda = second_lambda(eigendecompose(g, expected), comp).lambda;
    const LayerStack stack = init_stack(spec);
    const ConvergenceParams params = convergence_params(spec, stack, lambda, basis, &h0);

    std::vector<Propagator> props;
    if (a.oneshot || a.layerwise) {
        DropPlan plan;
        plan.p = a.p;
        plan.mode = a.layerwise ? DropPlan::Mode::layer_wise : DropPlan::Mode::one_shot;
        plan.depth = spec.depth;
        plan.seed = mix_seed(a.seed, 0xD20);
        for (const SampledGraph& s : sample(g, plan))
            props.push_back(build_propagator(s.to_graph(), PropagatorKind::aug_norm_adj, 0.0));
    } else {
        props.push_back(expected);
    }

    std::vector<std::size_t> snapshot_layers;
    if (!a.snapshots.empty()) snapshot_layers = parse_size_list(a.snapshots, "snapshots");

    const DynamicsTrace trace =
        run_dynamics_over(props, spec, h0, basis, snapshot_layers, params, stack);

    std::string mode = "expected";
    if (a.oneshot) mode = "oneshot";
    if (a.layerwise) mode = "layerwise";
    const std::string cfg =
        "gclab dynamics model=" + a.model + " depth=" + std::to_string(a.depth) +
        " width=" + std::to_string(a.width) + " relu=" + (a.use_relu ? "1" : "0") +
        " p=" + format_double(a.p) + " mode=" + mode + " seed=" + std::to_string(a.seed) +
        " lambda=" + format_double(lambda) + " v=" + format_double(params.v) +
        " r=" + format_double(params.r);

    auto tf = open_out(fs::path(a.out) / "trace.csv");
    tf << "# " << cfg << "\n";
    tf << "layer,d_m,envelope\n";
    for (std::size_t l = 0; l < trace.d_m.size(); ++l)
        tf << l << ',' << format_double(trace.d_m[l]) << ','
           << format_double(envelope_at(params, trace.d_m[0], l)) << "\n";

    const std::vector<double> deg = degrees(g);
    for (const auto& [layer, h] : trace.snapshots) {
        const TruncatedSvd svd = truncated_svd(h, std::min<std::size_t>(2, h.cols()));
        auto sf = open_out(fs::path(a.out) / ("snapshot_" + std::to_string(layer) + ".csv"));
        sf << "# " << cfg << " layer=" << layer << "\n";
        sf << "node,x,y,degree,component\n";
        std::vector<ScatterPoint> pts;
        for (std::size_t i = 0; i < h.rows(); ++i) {
            const double x = svd.scores(i, 0);
            const double y = svd.scores.cols() > 1 ? svd.scores(i, 1) : 0.0;
            sf << i << ',' << format_double(x) << ',' << format_double(y) << ','
               << format_double(deg[i]) << ',' << comp.labels()[i] << "\n";
            pts.push_back(ScatterPoint{x, y, deg[i], comp.labels()[i]});
        }
        if (a.svg) {
            auto gf = open_out(fs::path(a.out) / ("snapshot_" + std::to_string(layer) + ".svg"));
            write_scatter_svg(gf, pts, "layer " + std::to_string(layer));
        }
    }

    std::cout << "dynamics: " << cfg << " d0=" << format_double(trace.d_m.front())
              << " final=" << format_double(trace.d_m.back()) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::string graph;
    std::optional<std::size_t> n_nodes;
    std::string grid = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::string out = "bounds.csv";
};

int cmd_bounds(const BoundsArgs& a) {
    IngestOptions opt;
    opt.n_nodes = a.n_nodes;
    const Graph g = ingest_graph_files(a.graph, std::nullopt, opt).graph;
    const std::vector<double> grid = parse_double_list(a.grid, "grid");
    const BoundCurve curve = dropedge_bounds(g, grid);

    const std::string cfg = "gclab bounds grid=" + a.grid + " nodes=" + std::to_string(g.n_nodes());
    auto of = open_out(a.out);
    of << "# " << cfg << "\n";
    of << "p,lambda,a,mu,gamma,gap,sandwich_ok\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const bool ok = curve.mu_p[k] <= curve.lambda_p[k] + 1e-9 &&
                        curve.lambda_p[k] <= curve.gamma_p[k] + 1e-9;
        of << format_double(curve.p_grid[k]) << ',' << format_double(curve.lambda_p[k]) << ','
           << format_double(curve.a_p[k]) << ',' << format_double(curve.mu_p[k]) << ','
           << format_double(curve.gamma_p[k]) << ','
           << format_double(curve.gamma_p[k] - curve.mu_p[k]) << ',' << (ok ? 1 : 0) << "\n";
    }
    std::cout << "bounds: " << cfg << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
    std::string suite = "all";
    std::size_t trials = 1000;
    std::optional<double> p;
    std::uint64_t seed = 7;
    std::string out = "gclab-reports";
};

int cmd_check(const CheckArgs& a) {
    std::vector<std::string> suites;
    if (a.suite == "all") {
        suites = {"lemma1", "theorem2", "theorem3", "theorem4"};
    } else if (a.suite == "lemma1" || a.suite == "theorem2" || a.suite == "theorem3" ||
               a.suite == "theorem4") {
        suites = {a.suite};
    } else {
        throw DomainError("unknown suite '" + a.suite +
                          "' (lemma1, theorem2, theorem3, theorem4, all)");
    }

    bool all_pass = true;
    for (const std::string& name : suites) {
        TheoremReport rep;
        if (name == "lemma1") {
            rep = lemma1_suite(a.seed, a.trials);
        } else if (name == "theorem2") {
            rep = theorem2_suite(a.seed);
        } else if (name == "theorem3") {
            rep = theorem3_suite(a.seed);
        } else {
            if (a.p) {
                // single-rate override: 10 graphs at exactly this rate
                rep.theorem_id = "theorem4";
                RandomGraphOptions opt;
                opt.min_components = 2;
                for (std::size_t k = 0; k < 10; ++k) {
                    const Graph g = random_multi_component_graph(mix_seed(a.seed, 0x4E5 + k), opt);
                    DropPlan plan;
                    plan.p = *a.p;
                    plan.seed = mix_seed(a.seed, 0x5E5 + k);
                    merge_report(rep, check_theorem4(g, plan, std::max<std::size_t>(1, a.trials / 10)),
                                 "g" + std::to_string(k) + "/");
                }
            } else {
                rep = theorem4_suite(a.seed);
            }
        }

        std::string cfg = "gclab check " + name + " seed=" + std::to_string(a.seed) +
                          " trials=" + std::to_string(a.trials);
        if (a.p) cfg += " p=" + format_double(*a.p);

        auto tf = open_out(fs::path(a.out) / (name + ".txt"));
        write_report_text(tf, rep, cfg);
        auto cf = open_out(fs::path(a.out) / (name + ".csv"));
        write_report_csv(cf, rep, cfg);

        std::cout << name << ": cases=" << rep.n_cases << " violations=" << rep.n_violations
                  << " worst_slack=" << format_double(rep.worst_slack) << " -> "
                  << (rep.passed() ? "PASS" : "FAIL") << "\n";
        all_pass = all_pass && rep.passed();
    }
    std::cout << "check: " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"over-smoothing lab for deep graph convolutions"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* sc_gen = app.add_subcommand("gen", "synthesize a multi-component random graph");
    sc_gen->add_option("--sizes", gen.sizes, "component sizes, comma-separated");
    sc_gen->add_option("--factor", gen.factor, "edges per node within each component");
    sc_gen->add_option("--feature-dim", gen.feature_dim, "gaussian feature channels (0 = none)");
    sc_gen->add_option("--seed", gen.seed, "rng seed");
    sc_gen->add_option("--out", gen.out, "output directory");

    ProjectArgs proj;
    auto* sc_proj = app.add_subcommand("project-features", "2-d spectral projection of features");
    sc_proj->add_option("--features", proj.features, "input feature csv")->required();
    sc_proj->add_flag("--header", proj.header, "skip one header line");
    sc_proj->add_option("--out-dim", proj.out_dim, "projection dimension");
    sc_proj->add_option("--out", proj.out, "output csv");

    DynamicsArgs dyn;
    auto* sc_dyn = app.add_subcommand("dynamics", "run layer dynamics and trace subspace distance");
    sc_dyn->add_option("--graph", dyn.graph, "edge list file")->required();
    sc_dyn->add_option("--features", dyn.features, "feature csv (H0; lifted if width differs)");
    sc_dyn->add_flag("--header", dyn.header, "feature csv has a header line");
    sc_dyn->add_option("--n", dyn.n_nodes, "pin the node count");
    sc_dyn->add_option("--model", dyn.model, "gcn | gcn-b | resgcn | appnp | gcn-self");
    sc_dyn->add_option("--depth", dyn.depth, "number of layers");
    sc_dyn->add_option("--width", dyn.width, "channel count");
    sc_dyn->add_option("--alpha", dyn.alpha, "residual mix (resgcn)");
    sc_dyn->add_option("--beta", dyn.beta, "restart weight (appnp)");
    sc_dyn->add_option("--bias", dyn.bias, "bias value or per-channel list (gcn-b)");
    sc_dyn->add_flag("--relu,!--no-relu", dyn.use_relu, "apply relu each layer");
    sc_dyn->add_option("--p", dyn.p, "DropEdge rate");
    sc_dyn->add_flag("--oneshot", dyn.oneshot, "propagate with one sampled edge subset");
    sc_dyn->add_flag("--layerwise", dyn.layerwise, "independent sampled subset per layer");
    sc_dyn->add_option("--seed", dyn.seed, "rng seed");
    sc_dyn->add_option("--snapshots", dyn.snapshots, "layers to snapshot, comma-separated");
    sc_dyn->add_option("--out", dyn.out, "output directory");
    sc_dyn->add_flag("--svg", dyn.svg, "write scatter svg per snapshot");

    BoundsArgs bnd;
    auto* sc_bnd = app.add_subcommand("bounds", "DropEdge spectral bound curve");
    sc_bnd->add_option("--graph", bnd.graph, "edge list file")->required();
    sc_bnd->add_option("--n", bnd.n_nodes, "pin the node count");
    sc_bnd->add_option("--grid", bnd.grid, "rates, comma-separated, non-decreasing");
    sc_bnd->add_option("--out", bnd.out, "output csv");

    CheckArgs chk;
    auto* sc_chk = app.add_subcommand("check", "run theorem suites and write reports");
    sc_chk->add_option("suite", chk.suite, "lemma1 | theorem2 | theorem3 | theorem4 | all");
    sc_chk->add_option("--trials", chk.trials, "random case budget");
    sc_chk->add_option("--p", chk.p, "single-rate override for theorem4");
    sc_chk->add_option("--seed", chk.seed, "rng seed");
    sc_chk->add_option("--out", chk.out, "report directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_gen->parsed()) return cmd_gen(gen);
        if (sc_proj->parsed()) return cmd_project_features(proj);
        if (sc_dyn->parsed()) return cmd_dynamics(dyn);
        if (sc_bnd->parsed()) return cmd_bounds(bnd);
        if (sc_chk->parsed()) return cmd_check(chk);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
