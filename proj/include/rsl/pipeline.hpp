#pragma once

#include <string>

#include "rsl/config.hpp"
#include "rsl/generators.hpp"

namespace rsl {

/// Dataset plus preprocessing shared by every stage: normalized adjacency,
/// (optionally) standardized features, and the head inputs P.
struct DataBundle {
    Dataset ds;
    CsrMatrix a_hat;
    DenseMatrix x_std;  // classifier/SGLD feature space
    DenseMatrix p;      // resonance head inputs
    bool has_edges = false;
    // positions of the validation/test nodes inside ds.masks.wild
    std::vector<std::size_t> val_in_pos, val_out_pos, test_in_pos, test_out_pos;
};

DataBundle prepare_data(const RunConfig& cfg);

/// Per-stage seeds derived from the top-level seed: dataset = seed (split =
/// seed+1 inside the generators), resonance = seed+2, energy-model init =
/// seed+3, SGLD = seed+4, classifier dropout = seed+5.
std::uint64_t stage_seed(const RunConfig& cfg, std::uint64_t stage);

// Stage commands; each reads prior-stage artifacts from cfg.out_dir, runs one
// phase, and writes its own artifacts. They throw on error.
void cmd_gen_toy(const RunConfig& cfg);
void cmd_gen_sbm(const RunConfig& cfg);
void cmd_resonance(const RunConfig& cfg);
void cmd_synthesize(const RunConfig& cfg);
void cmd_classify(const RunConfig& cfg);
void cmd_score(const RunConfig& cfg);
void cmd_eval(const RunConfig& cfg);

/// Full pipeline: config echo, then resonance -> synthesize -> classify ->
/// score -> eval. Writes a FAILED marker naming the stage on error.
void cmd_run(const RunConfig& cfg);

std::string out_path(const RunConfig& cfg, const std::string& name);

}  // namespace rsl
