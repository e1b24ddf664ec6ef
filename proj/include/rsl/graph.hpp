#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rsl/dense.hpp"

namespace rsl {

/// Compressed-row adjacency pattern (no values).
struct AdjList {
    std::size_t n = 0;
    std::vector<std::size_t> indptr;   // length n+1
    std::vector<std::size_t> indices;  // column indices, sorted per row

    bool has_edge(std::size_t i, std::size_t j) const;
    std::size_t num_directed_edges() const { return indices.size(); }
};

/// Compressed-row sparse matrix with values.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> indptr;
    std::vector<std::size_t> indices;
    std::vector<double> values;
};

/// Immutable graph: symmetric deduplicated adjacency + node features.
struct Graph {
    std::size_t num_nodes = 0;
    AdjList adj;
    DenseMatrix features;  // row i = node i
};

struct SplitMasks {
    std::vector<std::size_t> known_id;
    std::vector<std::size_t> wild;
    std::vector<std::size_t> val_in, val_out, test_in, test_out;
};

/// Builds a symmetric, deduplicated adjacency from directed edge pairs.
/// Self-loops in the input are kept (deduplicated); indices must be < n.
AdjList build_adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Reads an edge list (whitespace-separated 0-indexed integer pairs) and a
/// headerless CSV feature file (one row per node).
Graph load_graph(const std::string& edge_path, const std::string& feature_path);

/// A_hat = D^{-1/2} (A + I) D^{-1/2}, self-loops always added.
CsrMatrix normalize_adjacency(const Graph& g);
CsrMatrix normalize_adjacency(const AdjList& adj);

/// P = A_hat^hops * X.
DenseMatrix propagate(const CsrMatrix& a_hat, const DenseMatrix& x, std::size_t hops);

DenseMatrix spmm(const CsrMatrix& a, const DenseMatrix& x);

/// Completes val/test masks from per-wild OOD flags: per-class seeded shuffle,
/// first ceil(1/3) of each class to validation, remainder to test.
void stratified_split(SplitMasks& masks, const std::vector<int>& wild_ood_flags, std::uint64_t seed);

}  // namespace rsl
