#include <cstdio>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsl/errors.hpp"
#include "rsl/pipeline.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    std::string baseline;
    bool single_thread = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* c = cmd->add_option("--config", opts.config_path, "run configuration file");
    if (config_required)
        c->required();
    cmd->add_option("--out", opts.out_dir, "output directory (overrides out_dir)");
    cmd->add_option("--seed", opts.seed, "seed override");
    cmd->add_option("--baseline", opts.baseline, "prototype baseline: cosine|euclidean|mahalanobis")
        ->check(CLI::IsMember({"cosine", "euclidean", "mahalanobis", "none"}));
    // all computation is sequential already; accepted for interface stability
    cmd->add_flag("--single-thread", opts.single_thread, "force single-threaded execution");
}

rsl::RunConfig resolve(const CommonOpts& opts) {
    rsl::RunConfig cfg =
        opts.config_path.empty() ? rsl::RunConfig{} : rsl::load_config(opts.config_path);
    if (!opts.out_dir.empty())
        cfg.out_dir = opts.out_dir;
    if (opts.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.baseline.empty())
        cfg.baseline = opts.baseline;
    rsl::validate_config(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RSL: resonance-based OOD node detection pipeline"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        void (*fn)(const rsl::RunConfig&);
        bool config_required;
    };
    const Sub subs[] = {
        {"run", "full pipeline: resonance, synthesize, classify, score, eval", rsl::cmd_run, true},
        {"resonance", "alignment training + tau trace + epoch selection", rsl::cmd_resonance, true},
        {"synthesize", "candidate selection + SGLD synthetic nodes", rsl::cmd_synthesize, true},
        {"classify", "energy classifier training", rsl::cmd_classify, true},
        {"score", "per-node score report from a trained model", rsl::cmd_score, true},
        {"eval", "metrics from an existing scores.csv", rsl::cmd_eval, false},
        {"gen-toy", "write toy dataset files", rsl::cmd_gen_toy, false},
        {"gen-sbm", "write SBM dataset files", rsl::cmd_gen_sbm, false},
    };

    std::vector<CommonOpts> opts(std::size(subs));
    std::vector<CLI::App*> cmds;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* c = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(c, opts[i], subs[i].config_required);
        cmds.push_back(c);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(subs); ++i) {
        if (!cmds[i]->parsed())
            continue;
        try {
            subs[i].fn(resolve(opts[i]));
            return 0;
        } catch (const rsl::ConfigError& e) {
            std::fprintf(stderr, "[%s] %s\n", subs[i].name, e.what());
            return 2;
        } catch (const rsl::ParseError& e) {
            std::fprintf(stderr, "[%s] %s\n", subs[i].name, e.what());
            return 3;
        } catch (const rsl::DependencyError& e) {
            std::fprintf(stderr, "[%s] %s\n", subs[i].name, e.what());
            return 4;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "[%s] %s\n", subs[i].name, e.what());
            return 1;
        }
    }
    return 0;
}
