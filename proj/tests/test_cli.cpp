#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "rsl/config.hpp"
#include "rsl/errors.hpp"
#include "rsl/io.hpp"
#include "rsl/metrics.hpp"
#include "rsl/pipeline.hpp"

using namespace rsl;
namespace fs = std::filesystem;

namespace {

RunConfig small_cfg(const std::string& out_dir) {
    // small, fast toy pipeline
    std::string text =
        "dataset = toy\n"
        "seed = 3\n"
        "toy.n_known = 40\n"
        "toy.n_wild_in = 40\n"
        "toy.n_wild_out = 40\n"
        "res.epochs = 30\n"
        "res.standardize = false\n"
        "clf.epochs = 30\n"
        "cand.n = 5\n"
        "baseline = euclidean\n";
    auto cfg = parse_config_text(text, "inline");
    cfg.out_dir = out_dir;
    return cfg;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(RSL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cmd_run twice is byte-identical") {
    auto a = small_cfg("cli_out_a");
    auto b = small_cfg("cli_out_b");
    cmd_run(a);
    cmd_run(b);
    // config_echo.cfg differs only in its out_dir line, so skip it here
    for (const char* f : {"scores.csv", "summary.txt", "tau_star.csv", "candidates.csv",
                          "synthetic_features.csv", "model.txt"}) {
        CAPTURE(f);
        CHECK(read_text_file("cli_out_a/" + std::string(f)) ==
              read_text_file("cli_out_b/" + std::string(f)));
    }
    fs::remove_all("cli_out_b");
}

TEST_CASE("stage-wise execution matches cmd_run") {
    auto staged = small_cfg("cli_out_staged");
    cmd_resonance(staged);
    cmd_synthesize(staged);
    cmd_classify(staged);
    cmd_score(staged);
    cmd_eval(staged);
    for (const char* f : {"scores.csv", "summary.txt"}) {
        CAPTURE(f);
        CHECK(read_text_file("cli_out_staged/" + std::string(f)) ==
              read_text_file("cli_out_a/" + std::string(f)));
    }
    fs::remove_all("cli_out_staged");
}

TEST_CASE("config echo reproduces the run") {
    auto echoed = parse_config_text(read_text_file("cli_out_a/config_echo.cfg"),
                                    "cli_out_a/config_echo.cfg");
    echoed.out_dir = "cli_out_echo";
    cmd_run(echoed);
    auto orig = read_text_file("cli_out_a/scores.csv");
    CHECK(read_text_file("cli_out_echo/scores.csv") == orig);
    fs::remove_all("cli_out_echo");
    fs::remove_all("cli_out_a");
}

TEST_CASE("scores.csv schema") {
    auto cfg = small_cfg("cli_out_schema");
    cmd_run(cfg);
    auto rows = read_csv("cli_out_schema/scores.csv", false);
    REQUIRE(!rows.empty());
    REQUIRE(rows[0].size() == 8);
    CHECK(rows[0][0] == "node");
    CHECK(rows[0][1] == "split");
    CHECK(rows[0][2] == "is_ood");
    CHECK(rows[0][3] == "tau");
    CHECK(rows[0][4] == "energy");
    CHECK(rows[0][5] == "baseline");
    CHECK(rows[0][6] == "pred_tau");
    CHECK(rows[0][7] == "pred_energy");
    // 120 nodes + header
    CHECK(rows.size() == 121);
    std::size_t known = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 8);
        if (rows[i][1] == "known") {
            ++known;
            CHECK(rows[i][3].empty());  // known nodes carry no wild tau
        } else {
            CHECK(!rows[i][3].empty());
            CHECK(!rows[i][5].empty());  // baseline requested
        }
    }
    CHECK(known == 40);
    fs::remove_all("cli_out_schema");
}

TEST_CASE("cmd_eval matches a hand-checkable CSV") {
    fs::create_directories("cli_out_eval");
    // 2 test ID + 2 test OOD; tau separates perfectly, energy inverts one pair
    write_text_file("cli_out_eval/scores.csv",
                    "node,split,is_ood,tau,energy,baseline,pred_tau,pred_energy\n"
                    "0,test_in,0,0.9,1.0,,0,0\n"
                    "1,test_in,0,0.8,0.2,,0,0\n"
                    "2,test_out,1,0.1,0.5,,1,1\n"
                    "3,test_out,1,0.2,0.1,,1,1\n"
                    "4,val_in,0,0.7,0.9,,0,0\n");
    RunConfig cfg;
    cfg.out_dir = "cli_out_eval";
    cmd_eval(cfg);
    auto summary = read_text_file("cli_out_eval/summary.txt");
    CHECK(summary.find("tau_auroc = 1\n") != std::string::npos);
    // energy pairs: ood 0.5 vs id {1.0, 0.2} and ood 0.1 vs both -> 3/4
    CHECK(summary.find("energy_auroc = 0.75\n") != std::string::npos);
    fs::remove_all("cli_out_eval");
}

TEST_CASE("stage commands report missing artifacts") {
    auto cfg = small_cfg("cli_out_missing");
    CHECK_THROWS_AS(cmd_synthesize(cfg), DependencyError);
    CHECK_THROWS_AS(cmd_score(cfg), DependencyError);
    CHECK_THROWS_AS(cmd_eval(cfg), DependencyError);
    fs::remove_all("cli_out_missing");
}

TEST_CASE("unknown config key is a hard error with location") {
    try {
        parse_config_text("dataset = toy\nbogus.key = 1\n", "test.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("bogus.key") != std::string::npos);
        CHECK(msg.find("test.cfg:2") != std::string::npos);
    }
}

TEST_CASE("validate_config rejects bad values") {
    RunConfig cfg;
    cfg.dataset = "nope";
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    cfg = RunConfig{};
    cfg.synth.lambda = 2.0;
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("run with n > wild count fails and leaves a FAILED marker") {
    auto cfg = small_cfg("cli_out_toobig");
    cfg.cand_n = 1000;
    CHECK_THROWS_AS(cmd_run(cfg), ConfigError);
    CHECK(file_exists("cli_out_toobig/FAILED"));
    auto marker = read_text_file("cli_out_toobig/FAILED");
    CHECK(marker.find("synthesize") != std::string::npos);
    CHECK_FALSE(file_exists("cli_out_toobig/scores.csv"));
    fs::remove_all("cli_out_toobig");
}

TEST_CASE("CLI binary: exit codes") {
    write_text_file("cli_bin.cfg",
                    "dataset = toy\nseed = 1\ntoy.n_known = 20\ntoy.n_wild_in = 20\n"
                    "toy.n_wild_out = 20\nres.epochs = 5\nres.standardize = false\n"
                    "clf.epochs = 5\ncand.n = 3\nout_dir = cli_bin_out\n");
    CHECK(run_cli("run --config cli_bin.cfg") == 0);
    CHECK(file_exists("cli_bin_out/summary.txt"));

    // seed override changes outputs
    CHECK(run_cli("run --config cli_bin.cfg --seed 2 --out cli_bin_out2") == 0);
    CHECK(read_text_file("cli_bin_out/tau_star.csv") !=
          read_text_file("cli_bin_out2/tau_star.csv"));

    // unknown key -> config error exit 2
    write_text_file("cli_bad.cfg", "nonsense = 1\n");
    CHECK(run_cli("run --config cli_bad.cfg") == 2);

    // missing artifacts -> dependency error exit 4
    write_text_file("cli_dep.cfg",
                    "dataset = toy\nout_dir = cli_dep_out\nres.standardize = false\n");
    CHECK(run_cli("synthesize --config cli_dep.cfg") == 4);

    // missing subcommand is a usage error
    CHECK(run_cli("") != 0);

    fs::remove_all("cli_bin_out");
    fs::remove_all("cli_bin_out2");
    fs::remove_all("cli_dep_out");
    fs::remove("cli_bin.cfg");
    fs::remove("cli_bad.cfg");
    fs::remove("cli_dep.cfg");
}

TEST_CASE("gen-toy writes loadable dataset files") {
    RunConfig cfg;
    cfg.dataset = "toy";
    cfg.toy.n_known = 10;
    cfg.toy.n_wild_in = 10;
    cfg.toy.n_wild_out = 10;
    cfg.out_dir = "cli_gen_out";
    cmd_gen_toy(cfg);
    for (const char* f : {"edges.txt", "features.csv", "flags.txt", "masks.txt"})
        CHECK(file_exists("cli_gen_out/" + std::string(f)));
    // round-trip through the files dataset source
    RunConfig files_cfg;
    files_cfg.dataset = "files";
    files_cfg.edge_path = "cli_gen_out/edges.txt";
    files_cfg.feature_path = "cli_gen_out/features.csv";
    files_cfg.flags_path = "cli_gen_out/flags.txt";
    files_cfg.masks_path = "cli_gen_out/masks.txt";
    files_cfg.out_dir = "cli_gen_run";
    files_cfg.res_standardize = false;
    files_cfg.res_epochs = 5;
    files_cfg.clf_epochs = 5;
    files_cfg.cand_n = 2;
    cmd_run(files_cfg);
    CHECK(file_exists("cli_gen_run/summary.txt"));
    fs::remove_all("cli_gen_out");
    fs::remove_all("cli_gen_run");
}
