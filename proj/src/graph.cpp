#include "rsl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/rng.hpp"

namespace rsl {

bool AdjList::has_edge(std::size_t i, std::size_t j) const {
    auto b = indices.begin() + static_cast<std::ptrdiff_t>(indptr[i]);
    auto e = indices.begin() + static_cast<std::ptrdiff_t>(indptr[i + 1]);
    return std::binary_search(b, e, j);
}

AdjList build_adjacency(std::size_t n,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> rows(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw BoundsError("edge index out of range: (" + std::to_string(u) + ", " +
                              std::to_string(v) + ") with " + std::to_string(n) + " nodes");
        rows[u].push_back(v);
        rows[v].push_back(u);
    }
    AdjList adj;
    adj.n = n;
    adj.indptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = rows[i];
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        adj.indptr[i + 1] = adj.indptr[i] + r.size();
        adj.indices.insert(adj.indices.end(), r.begin(), r.end());
    }
    return adj;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> read_edge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open edge file: " + path);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u))
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed edge line");
        if (!(ss >> v))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected two indices");
        std::string extra;
        if (ss >> extra)
            throw ParseError(path + ":" + std::to_string(lineno) + ": trailing tokens");
        if (u < 0 || v < 0)
            throw ParseError(path + ":" + std::to_string(lineno) + ": negative index");
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    return edges;
}

DenseMatrix read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open feature file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                double v = std::stod(cell, &pos);
                while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
                    ++pos;
                if (pos != cell.size())
                    throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": inconsistent column count");
        rows.push_back(std::move(row));
    }
    DenseMatrix x(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < x.cols; ++j) {
            if (!std::isfinite(rows[i][j]))
                throw ValidationError(path + ": non-finite feature at row " + std::to_string(i));
            x(i, j) = rows[i][j];
        }
    return x;
}

}  // namespace

Graph load_graph(const std::string& edge_path, const std::string& feature_path) {
    Graph g;
    g.features = read_feature_csv(feature_path);
    g.num_nodes = g.features.rows;
    g.adj = build_adjacency(g.num_nodes, read_edge_file(edge_path));
    return g;
}

CsrMatrix normalize_adjacency(const AdjList& adj) {
    const std::size_t n = adj.n;
    // A + I with dedup
    std::vector<std::vector<std::size_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool seen_self = false;
        for (std::size_t p = adj.indptr[i]; p < adj.indptr[i + 1]; ++p) {
            std::size_t j = adj.indices[p];
            if (j == i) seen_self = true;
            rows[i].push_back(j);
        }
        if (!seen_self) rows[i].push_back(i);
        std::sort(rows[i].begin(), rows[i].end());
    }
    std::vector<double> deg(n);
    for (std::size_t i = 0; i < n; ++i)
        deg[i] = static_cast<double>(rows[i].size());

    CsrMatrix a;
    a.n = n;
    a.indptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        a.indptr[i + 1] = a.indptr[i] + rows[i].size();
        for (std::size_t j : rows[i]) {
            a.indices.push_back(j);
            a.values.push_back(1.0 / std::sqrt(deg[i] * deg[j]));
        }
    }
    return a;
}

CsrMatrix normalize_adjacency(const Graph& g) { return normalize_adjacency(g.adj); }

DenseMatrix spmm(const CsrMatrix& a, const DenseMatrix& x) {
    if (a.n != x.rows)
        throw DimensionError("spmm: row count mismatch");
    DenseMatrix y(a.n, x.cols);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t p = a.indptr[i]; p < a.indptr[i + 1]; ++p) {
            const std::size_t j = a.indices[p];
            const double v = a.values[p];
            for (std::size_t c = 0; c < x.cols; ++c)
                y(i, c) += v * x(j, c);
        }
    return y;
}

DenseMatrix propagate(const CsrMatrix& a_hat, const DenseMatrix& x, std::size_t hops) {
    DenseMatrix p = x;
    for (std::size_t h = 0; h < hops; ++h)
        p = spmm(a_hat, p);
    return p;
}

void stratified_split(SplitMasks& masks, const std::vector<int>& wild_ood_flags,
                      std::uint64_t seed) {
    if (masks.wild.empty())
        throw SplitError("wild set is empty");
    if (wild_ood_flags.size() != masks.wild.size())
        throw DimensionError("stratified_split: flag count != wild count");
    std::vector<std::size_t> in_nodes, out_nodes;
    for (std::size_t i = 0; i < masks.wild.size(); ++i)
        (wild_ood_flags[i] ? out_nodes : in_nodes).push_back(masks.wild[i]);
    if (in_nodes.empty() || out_nodes.empty())
        throw SplitError("both ID and OOD wild nodes are required");

    Rng rng(seed);
    auto assign = [&rng](std::vector<std::size_t>& nodes, std::vector<std::size_t>& val,
                         std::vector<std::size_t>& test) {
        rng.shuffle(nodes);
        const std::size_t n_val = (nodes.size() + 2) / 3;  // ceil(1/3)
        val.assign(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(n_val));
        test.assign(nodes.begin() + static_cast<std::ptrdiff_t>(n_val), nodes.end());
    };
    assign(in_nodes, masks.val_in, masks.test_in);
    assign(out_nodes, masks.val_out, masks.test_out);
}

}  // namespace rsl
