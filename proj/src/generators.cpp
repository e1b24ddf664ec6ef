#include "rsl/generators.hpp"

#include <algorithm>
#include <cmath>

#include "rsl/errors.hpp"
#include "rsl/rng.hpp"

namespace rsl {

ToySpec default_toy_spec() {
    ToySpec s;
    // separation ||id_center - ood_center|| = 4 * spread
    const double a = 4.0 * s.spread / std::sqrt(2.0);
    s.id_center.assign(s.dim, 0.0);
    s.ood_center.assign(s.dim, 0.0);
    s.id_center[0] = a;
    s.ood_center[1] = a;
    return s;
}

SbmSpec default_sbm_spec() {
    SbmSpec s;
    s.dim = 8;
    s.p_in = 0.2;
    s.p_out = 0.002;
    // two nearby ID modes plus an orthogonal OOD mode: keeps ID energies
    // unimodal (no per-block margin gap) while OOD stays well separated
    auto block = [&s](double c0, double c1, double c2, bool ood) {
        SbmBlock b;
        b.size = 200;
        b.is_ood = ood;
        b.center.assign(s.dim, 0.0);
        b.center[0] = c0;
        b.center[1] = c1;
        b.center[2] = c2;
        return b;
    };
    s.blocks = {block(4.0, 1.0, 0.0, false), block(4.0, -1.0, 0.0, false),
                block(0.0, 0.0, 4.0, true)};
    return s;
}

namespace {

void check_center(const std::vector<double>& c, std::size_t dim) {
    if (c.size() != dim)
        throw DimensionError("center length " + std::to_string(c.size()) +
                             " != dim " + std::to_string(dim));
}

}  // namespace

Dataset make_toy_dataset(const ToySpec& spec) {
    if (spec.n_known == 0)
        throw ConfigError("toy dataset needs n_known >= 1");
    if (spec.spread < 0)
        throw ConfigError("spread must be nonnegative");
    if (spec.dim == 0)
        throw DimensionError("toy dataset needs dim >= 1");
    check_center(spec.id_center, spec.dim);
    check_center(spec.ood_center, spec.dim);

    const std::size_t n = spec.n_known + spec.n_wild_in + spec.n_wild_out;
    Dataset ds;
    ds.graph.num_nodes = n;
    ds.graph.adj = build_adjacency(n, {});
    ds.graph.features = DenseMatrix(n, spec.dim);
    ds.ood_flags.assign(n, 0);

    Rng rng(spec.seed);
    for (std::size_t i = 0; i < n; ++i) {
        const bool ood = i >= spec.n_known + spec.n_wild_in;
        const auto& c = ood ? spec.ood_center : spec.id_center;
        ds.ood_flags[i] = ood ? 1 : 0;
        for (std::size_t j = 0; j < spec.dim; ++j)
            ds.graph.features(i, j) = rng.normal(c[j], spec.spread);
    }

    for (std::size_t i = 0; i < spec.n_known; ++i)
        ds.masks.known_id.push_back(i);
    std::vector<int> wild_flags;
    for (std::size_t i = spec.n_known; i < n; ++i) {
        ds.masks.wild.push_back(i);
        wild_flags.push_back(ds.ood_flags[i]);
    }
    if (!ds.masks.wild.empty())
        stratified_split(ds.masks, wild_flags, spec.seed + 1);
    return ds;
}

Dataset make_sbm_dataset(const SbmSpec& spec) {
    if (spec.p_in < 0 || spec.p_in > 1 || spec.p_out < 0 || spec.p_out > 1)
        throw ConfigError("edge probabilities must be in [0,1]");
    if (spec.homophily_shift < 0 || spec.homophily_shift > 1)
        throw ConfigError("homophily_shift must be in [0,1]");
    if (spec.spread < 0)
        throw ConfigError("spread must be nonnegative");
    bool have_id = false, have_ood = false;
    std::size_t n = 0;
    for (const auto& b : spec.blocks) {
        check_center(b.center, spec.dim);
        (b.is_ood ? have_ood : have_id) = true;
        n += b.size;
    }
    if (!have_id || !have_ood)
        throw ConfigError("SBM needs at least one ID block and one OOD block");

    const double s = spec.homophily_shift;
    const double p_in_eff = (1.0 - s) * spec.p_in + s * spec.p_out;
    const double p_out_eff = (1.0 - s) * spec.p_out + s * spec.p_in;

    std::vector<std::size_t> block_of(n);
    {
        std::size_t node = 0;
        for (std::size_t b = 0; b < spec.blocks.size(); ++b)
            for (std::size_t k = 0; k < spec.blocks[b].size; ++k)
                block_of[node++] = b;
    }

    Dataset ds;
    ds.graph.num_nodes = n;
    ds.graph.features = DenseMatrix(n, spec.dim);
    ds.ood_flags.assign(n, 0);

    Rng rng(spec.seed);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& b = spec.blocks[block_of[i]];
        ds.ood_flags[i] = b.is_ood ? 1 : 0;
        for (std::size_t j = 0; j < spec.dim; ++j)
            ds.graph.features(i, j) = rng.normal(b.center[j], spec.spread);
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = block_of[i] == block_of[j] ? p_in_eff : p_out_eff;
            if (rng.uniform() < p)
                edges.emplace_back(i, j);
        }
    ds.graph.adj = build_adjacency(n, edges);

    // 40% of ID nodes become the labeled known set, the rest are wild.
    std::vector<std::size_t> id_nodes;
    for (std::size_t i = 0; i < n; ++i)
        if (!ds.ood_flags[i]) id_nodes.push_back(i);
    rng.shuffle(id_nodes);
    const std::size_t n_known = static_cast<std::size_t>(std::llround(0.4 * static_cast<double>(id_nodes.size())));
    if (n_known == 0)
        throw ConfigError("SBM has too few ID nodes for a known set");
    ds.masks.known_id.assign(id_nodes.begin(), id_nodes.begin() + static_cast<std::ptrdiff_t>(n_known));
    std::sort(ds.masks.known_id.begin(), ds.masks.known_id.end());

    std::vector<int> is_known(n, 0);
    for (std::size_t v : ds.masks.known_id) is_known[v] = 1;
    std::vector<int> wild_flags;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_known[i]) {
            ds.masks.wild.push_back(i);
            wild_flags.push_back(ds.ood_flags[i]);
        }
    stratified_split(ds.masks, wild_flags, spec.seed + 1);
    return ds;
}

}  // namespace rsl
