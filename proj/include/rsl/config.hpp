#pragma once

#include <cstdint>
#include <string>

#include "rsl/baselines.hpp"
#include "rsl/generators.hpp"
#include "rsl/resonance.hpp"
#include "rsl/synth.hpp"

namespace rsl {

/// Flat key=value run configuration. Unknown keys are hard errors; every
/// default matches the reference hyperparameter table where one exists.
struct RunConfig {
    std::string dataset = "toy";  // toy | sbm | files
    std::uint64_t seed = 0;
    std::string out_dir = "out";

    // files source
    std::string edge_path, feature_path, flags_path, masks_path;
    double known_frac = 0.4;

    ToySpec toy = default_toy_spec();
    SbmSpec sbm = default_sbm_spec();

    // resonance
    double res_lr = 0.005;
    std::size_t res_epochs = 200;
    std::size_t res_head_dim = 16;
    std::string res_target_mode = "single_random";
    std::size_t res_num_targets = 1;
    std::size_t res_hops = 2;
    bool res_standardize = true;
    bool res_force_raw = false;  // forces raw (unpropagated) head inputs
    double res_target_id_tpr = 0.95;

    std::size_t cand_n = 2;

    SynthConfig synth;

    // classifier
    std::size_t clf_epochs = 200;
    double clf_lr = 0.005;
    double clf_dropout = 0.1;
    std::size_t clf_layers = 2;
    std::size_t clf_hidden = 16;
    double clf_target_id_tpr = 0.95;

    std::string baseline = "none";  // none | cosine | euclidean | mahalanobis
};

RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

/// Full echo: every key with its resolved value; feeding it back reproduces
/// the run.
std::string config_echo(const RunConfig& cfg);

void validate_config(const RunConfig& cfg);

TargetMode parse_target_mode(const std::string& name);

}  // namespace rsl
