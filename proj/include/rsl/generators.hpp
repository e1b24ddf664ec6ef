#pragma once

#include <cstdint>
#include <vector>

#include "rsl/graph.hpp"

namespace rsl {

/// Edgeless clustered dataset: known ID + wild ID around id_center, wild OOD
/// around ood_center.
struct ToySpec {
    std::size_t n_known = 200;
    std::size_t n_wild_in = 200;
    std::size_t n_wild_out = 200;
    std::size_t dim = 8;
    std::vector<double> id_center;   // defaults set by default_toy_spec()
    std::vector<double> ood_center;
    double spread = 1.0;
    std::uint64_t seed = 0;
};

/// Default toy spec: dim 8, spread 1, centers orthogonal with separation
/// 4*spread (id along axis 0, ood along axis 1).
ToySpec default_toy_spec();

struct SbmBlock {
    std::size_t size = 0;
    bool is_ood = false;
    std::vector<double> center;
};

struct SbmSpec {
    std::vector<SbmBlock> blocks;
    std::size_t dim = 8;
    double p_in = 0.2;
    double p_out = 0.002;
    double spread = 1.0;
    /// In [0,1]; interpolates (p_in, p_out) toward the swapped pair, so 0 keeps
    /// the given homophilous setting and 1 is fully heterophilous.
    double homophily_shift = 0.0;
    std::uint64_t seed = 0;
};

/// Default SBM benchmark: 600 nodes, two ID blocks + one OOD block of 200,
/// homophilous (p_in 0.2, p_out 0.002); the ID block centers are close
/// together and the OOD center is orthogonal to both.
SbmSpec default_sbm_spec();

struct Dataset {
    Graph graph;
    SplitMasks masks;
    std::vector<int> ood_flags;  // per node, 1 = OOD
};

Dataset make_toy_dataset(const ToySpec& spec);
Dataset make_sbm_dataset(const SbmSpec& spec);

}  // namespace rsl
