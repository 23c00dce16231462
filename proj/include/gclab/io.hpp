#ifndef GCLAB_IO_HPP
#define GCLAB_IO_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gclab/errors.hpp"
#include "gclab/format.hpp"
#include "gclab/graph.hpp"
#include "gclab/matrix.hpp"

namespace gclab {

struct IngestOptions {
    std::optional<std::size_t> n_nodes; // pins N; ids are then positional and must be < N
    bool features_header = false;       // skip one leading non-comment line of the feature CSV
};

struct IngestReport {
    std::size_t duplicate_edges_merged = 0;
    bool ids_remapped = false;
    std::vector<std::uint64_t> original_ids; // new id -> original id (when remapped)
};

struct IngestResult {
    Graph graph;
    IngestReport report;
};

namespace detail {

inline std::uint64_t parse_node_id(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok[0] == '-')
        throw ParseError(line, "node id must be a non-negative integer, got '" + tok + "'");
    std::uint64_t v = 0;
    for (const char ch : tok) {
        if (ch < '0' || ch > '9')
            throw ParseError(line, "node id must be a non-negative integer, got '" + tok + "'");
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return v;
}

inline double parse_number(const std::string& tok, std::size_t line, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

} // namespace detail

/// Reads a whitespace-separated edge list: `u v [w]`, default weight 1.
/// Blank lines and '#' comments are skipped. Duplicate rows (either
/// orientation) merge by summing weights. Ids: when options.n_nodes is set
/// (or a feature row count pins N) ids are positional; otherwise non-dense
/// ids are remapped to 0..N-1 in ascending order and the map is reported.
inline IngestResult ingest_graph(std::istream& edges_in, std::istream* features_in = nullptr,
                                 const IngestOptions& options = {}) {
    struct RawEdge {
        std::uint64_t u, v;
        double w;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    std::string line_buf;
    std::size_t line_no = 0;
    while (std::getline(edges_in, line_buf)) {
        ++line_no;
        std::istringstream ls(line_buf);
        std::string a, b, c, extra;
        if (!(ls >> a)) continue;          // blank
        if (a[0] == '#') continue;         // comment
        if (!(ls >> b)) throw ParseError(line_no, "expected 'u v [w]'");
        RawEdge e;
        e.u = detail::parse_node_id(a, line_no);
        e.v = detail::parse_node_id(b, line_no);
        e.w = 1.0;
        e.line = line_no;
        if (ls >> c) e.w = detail::parse_number(c, line_no, "edge weight");
        if (ls >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");
        if (e.u == e.v)
            throw DomainError("line " + std::to_string(line_no) + ": self-loop at node " +
                              std::to_string(e.u));
        if (!(e.w > 0.0))
            throw DomainError("line " + std::to_string(line_no) + ": edge weight must be positive");
        raw.push_back(e);
    }

    std::optional<Matrix> features;
    if (features_in != nullptr) {
        // parsed before sizing: the feature row count can pin N
        std::vector<std::vector<double>> rows;
        std::size_t fline = 0;
        bool header_pending = options.features_header;
        while (std::getline(*features_in, line_buf)) {
            ++fline;
            if (line_buf.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (line_buf[0] == '#') continue;
            if (header_pending) {
                header_pending = false;
                continue;
            }
            std::vector<double> row;
            std::size_t start = 0;
            while (start <= line_buf.size()) {
                std::size_t comma = line_buf.find(',', start);
                if (comma == std::string::npos) comma = line_buf.size();
                std::string tok = line_buf.substr(start, comma - start);
                const std::size_t l = tok.find_first_not_of(" \t\r");
                const std::size_t r = tok.find_last_not_of(" \t\r");
                tok = l == std::string::npos ? std::string() : tok.substr(l, r - l + 1);
                row.push_back(detail::parse_number(tok, fline, "feature value"));
                start = comma + 1;
            }
            if (!rows.empty() && row.size() != rows.front().size())
                throw ParseError(fline, "feature row has " + std::to_string(row.size()) +
                                            " values, expected " +
                                            std::to_string(rows.front().size()));
            rows.push_back(std::move(row));
        }
        if (rows.empty()) throw ParseError(fline, "feature file has no data rows");
        Matrix f(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) f(i, j) = rows[i][j];
        features = std::move(f);
    }

    IngestReport report;
    std::size_t n_nodes = 0;
    std::vector<Edge> edges;

    const std::optional<std::size_t> pinned =
        options.n_nodes                 ? options.n_nodes
        : features                      ? std::optional<std::size_t>(features->rows())
                                        : std::nullopt;
    if (pinned) {
        n_nodes = *pinned;
        for (const RawEdge& e : raw)
            if (e.u >= n_nodes || e.v >= n_nodes)
                throw ShapeError("line " + std::to_string(e.line) + ": node id " +
                                 std::to_string(std::max(e.u, e.v)) + " out of range for N = " +
                                 std::to_string(n_nodes));
        for (const RawEdge& e : raw)
            edges.push_back(Edge{static_cast<std::uint32_t>(e.u), static_cast<std::uint32_t>(e.v), e.w});
    } else {
        if (raw.empty()) throw DomainError("empty edge list and no node count to fall back on");
        std::vector<std::uint64_t> ids;
        for (const RawEdge& e : raw) {
            ids.push_back(e.u);
            ids.push_back(e.v);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        n_nodes = ids.size();
        const bool dense = ids.back() + 1 == ids.size();
        if (!dense) {
            report.ids_remapped = true;
            report.original_ids = ids;
            std::map<std::uint64_t, std::uint32_t> to_new;
            for (std::size_t k = 0; k < ids.size(); ++k)
                to_new[ids[k]] = static_cast<std::uint32_t>(k);
            for (const RawEdge& e : raw)
                edges.push_back(Edge{to_new[e.u], to_new[e.v], e.w});
        } else {
            for (const RawEdge& e : raw)
                edges.push_back(
                    Edge{static_cast<std::uint32_t>(e.u), static_cast<std::uint32_t>(e.v), e.w});
        }
    }

    // merge duplicates (either orientation) by summing weights
    for (Edge& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    std::vector<Edge> merged;
    for (const Edge& e : edges) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
            merged.back().w += e.w;
            ++report.duplicate_edges_merged;
        } else {
            merged.push_back(e);
        }
    }

    return IngestResult{Graph(n_nodes, std::move(merged), std::move(features)), report};
}

inline IngestResult ingest_graph_files(const std::string& edge_path,
                                       const std::optional<std::string>& feature_path = std::nullopt,
                                       const IngestOptions& options = {}) {
    std::ifstream ef(edge_path);
    if (!ef) throw Error("cannot open edge file: " + edge_path);
    if (feature_path) {
        std::ifstream ff(*feature_path);
        if (!ff) throw Error("cannot open feature file: " + *feature_path);
        return ingest_graph(ef, &ff, options);
    }
    return ingest_graph(ef, nullptr, options);
}

/// Writers. Every output begins with a '#' config line; the readers above
/// skip it, so generated files round-trip without flags.
inline void write_edge_list(std::ostream& os, const Graph& g, const std::string& config_line) {
    os << "# " << config_line << "\n";
    for (const Edge& e : g.edges())
        os << e.u << ' ' << e.v << ' ' << format_double(e.w) << "\n";
}

inline void write_matrix_csv(std::ostream& os, const Matrix& m, const std::string& config_line) {
    os << "# " << config_line << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << format_double(m(i, j));
        }
        os << "\n";
    }
}

inline void write_id_map_csv(std::ostream& os, const IngestReport& rep,
                             const std::string& config_line) {
    os << "# " << config_line << "\n";
    os << "new_id,original_id\n";
    for (std::size_t k = 0; k < rep.original_ids.size(); ++k)
        os << k << ',' << rep.original_ids[k] << "\n";
}

} // namespace gclab

#endif
