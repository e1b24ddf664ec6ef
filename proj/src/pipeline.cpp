#include "rsl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rsl/classifier.hpp"
#include "rsl/errors.hpp"
#include "rsl/io.hpp"
#include "rsl/metrics.hpp"
#include "rsl/synth.hpp"

namespace fs = std::filesystem;

namespace rsl {

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

std::uint64_t stage_seed(const RunConfig& cfg, std::uint64_t stage) {
    return cfg.seed + stage;
}

namespace {

void ensure_out_dir(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
}

std::vector<int> read_flag_file(const std::string& path, std::size_t expected) {
    std::ifstream in(path);
    if (!in)
        throw DependencyError("missing file: " + path);
    std::vector<int> flags;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos)
            continue;
        const long long v = parse_int(line, path + ":" + std::to_string(lineno));
        if (v != 0 && v != 1)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": flag must be 0 or 1");
        flags.push_back(static_cast<int>(v));
    }
    if (expected && flags.size() != expected)
        throw ValidationError(path + ": expected " + std::to_string(expected) + " flags, got " +
                              std::to_string(flags.size()));
    return flags;
}

Dataset load_file_dataset(const RunConfig& cfg) {
    Dataset ds;
    ds.graph = load_graph(cfg.edge_path, cfg.feature_path);
    ds.ood_flags = read_flag_file(cfg.flags_path, ds.graph.num_nodes);

    if (!cfg.masks_path.empty()) {
        std::ifstream in(cfg.masks_path);
        if (!in)
            throw DependencyError("missing file: " + cfg.masks_path);
        std::string role;
        std::size_t node = 0;
        while (in >> role) {
            if (node >= ds.graph.num_nodes)
                throw ValidationError(cfg.masks_path + ": more roles than nodes");
            if (role == "known") ds.masks.known_id.push_back(node);
            else if (role == "val_in") { ds.masks.wild.push_back(node); ds.masks.val_in.push_back(node); }
            else if (role == "val_out") { ds.masks.wild.push_back(node); ds.masks.val_out.push_back(node); }
            else if (role == "test_in") { ds.masks.wild.push_back(node); ds.masks.test_in.push_back(node); }
            else if (role == "test_out") { ds.masks.wild.push_back(node); ds.masks.test_out.push_back(node); }
            else throw ValidationError(cfg.masks_path + ": unknown role '" + role + "'");
            ++node;
        }
        if (node != ds.graph.num_nodes)
            throw ValidationError(cfg.masks_path + ": fewer roles than nodes");
        return ds;
    }

    // derive: known_frac of the ID nodes become known, the rest are wild
    std::vector<std::size_t> id_nodes;
    for (std::size_t i = 0; i < ds.graph.num_nodes; ++i)
        if (!ds.ood_flags[i]) id_nodes.push_back(i);
    if (id_nodes.empty())
        throw SplitError("file dataset has no ID nodes");
    Rng rng(cfg.seed);
    rng.shuffle(id_nodes);
    const auto n_known = static_cast<std::size_t>(
        std::llround(cfg.known_frac * static_cast<double>(id_nodes.size())));
    if (n_known == 0)
        throw SplitError("known_frac selects no known nodes");
    ds.masks.known_id.assign(id_nodes.begin(), id_nodes.begin() + static_cast<std::ptrdiff_t>(n_known));
    std::sort(ds.masks.known_id.begin(), ds.masks.known_id.end());
    std::vector<int> is_known(ds.graph.num_nodes, 0);
    for (std::size_t v : ds.masks.known_id) is_known[v] = 1;
    std::vector<int> wild_flags;
    for (std::size_t i = 0; i < ds.graph.num_nodes; ++i)
        if (!is_known[i]) {
            ds.masks.wild.push_back(i);
            wild_flags.push_back(ds.ood_flags[i]);
        }
    stratified_split(ds.masks, wild_flags, cfg.seed + 1);
    return ds;
}

Dataset build_dataset(const RunConfig& cfg) {
    if (cfg.dataset == "toy") {
        ToySpec s = cfg.toy;
        s.seed = cfg.seed;
        return make_toy_dataset(s);
    }
    if (cfg.dataset == "sbm") {
        SbmSpec s = cfg.sbm;
        s.seed = cfg.seed;
        return make_sbm_dataset(s);
    }
    return load_file_dataset(cfg);
}

std::vector<std::size_t> wild_positions(const SplitMasks& masks,
                                        const std::vector<std::size_t>& nodes) {
    std::map<std::size_t, std::size_t> pos_of;
    for (std::size_t i = 0; i < masks.wild.size(); ++i)
        pos_of[masks.wild[i]] = i;
    std::vector<std::size_t> out;
    for (std::size_t v : nodes)
        out.push_back(pos_of.at(v));
    return out;
}

}  // namespace

DataBundle prepare_data(const RunConfig& cfg) {
    DataBundle d;
    d.ds = build_dataset(cfg);
    d.a_hat = normalize_adjacency(d.ds.graph);
    d.has_edges = d.ds.graph.adj.num_directed_edges() > 0;

    d.x_std = d.ds.graph.features;
    if (cfg.res_standardize) {
        const std::size_t dim = d.x_std.cols;
        std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
        const auto& known = d.ds.masks.known_id;
        if (known.empty())
            throw SplitError("standardization needs known ID nodes");
        for (std::size_t v : known)
            for (std::size_t j = 0; j < dim; ++j)
                mean[j] += d.x_std(v, j);
        for (double& m : mean)
            m /= static_cast<double>(known.size());
        for (std::size_t v : known)
            for (std::size_t j = 0; j < dim; ++j) {
                const double dv = d.x_std(v, j) - mean[j];
                sd[j] += dv * dv;
            }
        for (double& s : sd) {
            s = std::sqrt(s / static_cast<double>(known.size()));
            if (s < 1e-12) s = 1.0;
        }
        for (std::size_t i = 0; i < d.x_std.rows; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                d.x_std(i, j) = (d.x_std(i, j) - mean[j]) / sd[j];
    }

    if (!cfg.res_force_raw && d.has_edges && cfg.res_hops > 0)
        d.p = propagate(d.a_hat, d.x_std, cfg.res_hops);
    else
        d.p = d.x_std;

    d.val_in_pos = wild_positions(d.ds.masks, d.ds.masks.val_in);
    d.val_out_pos = wild_positions(d.ds.masks, d.ds.masks.val_out);
    d.test_in_pos = wild_positions(d.ds.masks, d.ds.masks.test_in);
    d.test_out_pos = wild_positions(d.ds.masks, d.ds.masks.test_out);
    return d;
}

namespace {

DenseMatrix rows_of(const DenseMatrix& m, const std::vector<std::size_t>& idx) {
    DenseMatrix out(idx.size(), m.cols);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out(i, j) = m(idx[i], j);
    return out;
}

void write_dataset_files(const RunConfig& cfg, const Dataset& ds) {
    ensure_out_dir(cfg);
    std::ostringstream edges;
    for (std::size_t i = 0; i < ds.graph.adj.n; ++i)
        for (std::size_t p = ds.graph.adj.indptr[i]; p < ds.graph.adj.indptr[i + 1]; ++p)
            if (ds.graph.adj.indices[p] >= i)
                edges << i << ' ' << ds.graph.adj.indices[p] << '\n';
    write_text_file(out_path(cfg, "edges.txt"), edges.str());

    std::ostringstream feats;
    for (std::size_t i = 0; i < ds.graph.features.rows; ++i) {
        for (std::size_t j = 0; j < ds.graph.features.cols; ++j)
            feats << (j ? "," : "") << fmt_double(ds.graph.features(i, j));
        feats << '\n';
    }
    write_text_file(out_path(cfg, "features.csv"), feats.str());

    std::ostringstream flags;
    for (int f : ds.ood_flags)
        flags << f << '\n';
    write_text_file(out_path(cfg, "flags.txt"), flags.str());

    std::vector<std::string> role(ds.graph.num_nodes, "known");
    for (std::size_t v : ds.masks.val_in) role[v] = "val_in";
    for (std::size_t v : ds.masks.val_out) role[v] = "val_out";
    for (std::size_t v : ds.masks.test_in) role[v] = "test_in";
    for (std::size_t v : ds.masks.test_out) role[v] = "test_out";
    std::ostringstream masks;
    for (const auto& r : role)
        masks << r << '\n';
    write_text_file(out_path(cfg, "masks.txt"), masks.str());
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

struct TauStar {
    std::vector<std::size_t> nodes;  // wild node ids in wild order
    std::vector<double> taus;
};

TauStar read_tau_star(const RunConfig& cfg) {
    TauStar t;
    for (const auto& row : read_csv(out_path(cfg, "tau_star.csv"), true)) {
        if (row.size() != 2)
            throw ValidationError("tau_star.csv: expected node,tau rows");
        t.nodes.push_back(static_cast<std::size_t>(parse_int(row[0], "tau_star node")));
        t.taus.push_back(parse_double(row[1], "tau_star tau"));
    }
    if (t.nodes.empty())
        throw ValidationError("tau_star.csv: no rows");
    return t;
}

struct SynthFiles {
    std::vector<std::size_t> cand_nodes;
    DenseMatrix features;
    std::vector<std::pair<std::size_t, std::size_t>> wiring;
};

SynthFiles read_synth_files(const RunConfig& cfg, std::size_t feature_dim) {
    SynthFiles s;
    for (const auto& row : read_csv(out_path(cfg, "candidates.csv"), true)) {
        if (row.size() != 2)
            throw ValidationError("candidates.csv: expected node,tau rows");
        s.cand_nodes.push_back(static_cast<std::size_t>(parse_int(row[0], "candidate node")));
    }
    const auto feat_rows = read_csv(out_path(cfg, "synthetic_features.csv"), false);
    s.features = DenseMatrix(feat_rows.size(), feature_dim);
    for (std::size_t i = 0; i < feat_rows.size(); ++i) {
        if (feat_rows[i].size() != feature_dim)
            throw ValidationError("synthetic_features.csv: wrong column count");
        for (std::size_t j = 0; j < feature_dim; ++j)
            s.features(i, j) = parse_double(feat_rows[i][j], "synthetic feature");
    }
    for (const auto& row : read_csv(out_path(cfg, "synthetic_edges.csv"), true)) {
        if (row.size() != 2)
            throw ValidationError("synthetic_edges.csv: expected syn,node rows");
        s.wiring.emplace_back(static_cast<std::size_t>(parse_int(row[0], "syn index")),
                              static_cast<std::size_t>(parse_int(row[1], "wired node")));
    }
    return s;
}

}  // namespace

void cmd_gen_toy(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.dataset = "toy";
    write_dataset_files(c, build_dataset(c));
}

void cmd_gen_sbm(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.dataset = "sbm";
    write_dataset_files(c, build_dataset(c));
}

void cmd_resonance(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    DataBundle d = prepare_data(cfg);

    ResonanceOptions opts;
    opts.lr = cfg.res_lr;
    opts.epochs = cfg.res_epochs;
    opts.head_dim = cfg.res_head_dim;
    opts.target_mode = parse_target_mode(cfg.res_target_mode);
    opts.num_targets = cfg.res_num_targets;
    opts.seed = stage_seed(cfg, 2);

    DenseMatrix p_known = rows_of(d.p, d.ds.masks.known_id);
    DenseMatrix p_wild = rows_of(d.p, d.ds.masks.wild);
    ResonanceTrace trace = run_resonance(p_known, p_wild, d.val_in_pos, d.val_out_pos, opts);

    std::size_t t_star = 0;
    for (std::size_t t = 1; t < trace.val_auroc.size(); ++t)
        if (trace.val_auroc[t] > trace.val_auroc[t_star])
            t_star = t;

    std::vector<double> tau_star(trace.taus.cols);
    for (std::size_t i = 0; i < trace.taus.cols; ++i)
        tau_star[i] = trace.taus(t_star, i);

    std::vector<double> val_id_taus;
    for (std::size_t p : d.val_in_pos)
        val_id_taus.push_back(tau_star[p]);
    DetectorThreshold thr = tau_threshold(val_id_taus, cfg.res_target_id_tpr);

    std::ostringstream tau_csv;
    tau_csv << "epoch,node,tau\n";
    for (std::size_t t = 0; t < trace.taus.rows; ++t)
        for (std::size_t i = 0; i < trace.taus.cols; ++i)
            tau_csv << t << ',' << d.ds.masks.wild[i] << ',' << fmt_double(trace.taus(t, i)) << '\n';
    write_text_file(out_path(cfg, "trace_tau.csv"), tau_csv.str());

    std::ostringstream val_csv;
    val_csv << "epoch,val_auroc\n";
    for (std::size_t t = 0; t < trace.val_auroc.size(); ++t)
        val_csv << t << ',' << fmt_double(trace.val_auroc[t]) << '\n';
    write_text_file(out_path(cfg, "trace_val.csv"), val_csv.str());

    std::ostringstream star_csv;
    star_csv << "node,tau\n";
    for (std::size_t i = 0; i < tau_star.size(); ++i)
        star_csv << d.ds.masks.wild[i] << ',' << fmt_double(tau_star[i]) << '\n';
    write_text_file(out_path(cfg, "tau_star.csv"), star_csv.str());

    std::ostringstream summary;
    summary << "t_star = " << t_star << '\n'
            << "val_auroc_at_t_star = " << fmt_double(trace.val_auroc[t_star]) << '\n'
            << "gamma = " << fmt_double(thr.gamma) << '\n'
            << "target_id_tpr = " << fmt_double(thr.target_id_tpr) << '\n';
    write_text_file(out_path(cfg, "resonance.txt"), summary.str());
}

void cmd_synthesize(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    if (!file_exists(out_path(cfg, "tau_star.csv")))
        throw DependencyError("cmd_synthesize needs " + out_path(cfg, "tau_star.csv") +
                              " (run the resonance stage first)");
    DataBundle d = prepare_data(cfg);
    TauStar t = read_tau_star(cfg);
    if (t.nodes.size() != d.ds.masks.wild.size())
        throw ValidationError("tau_star.csv does not match the configured dataset");

    Candidates cand = select_candidates(t.taus, cfg.cand_n);
    std::ostringstream cand_csv;
    cand_csv << "node,tau\n";
    std::vector<std::size_t> cand_nodes;
    for (std::size_t p : cand.positions) {
        cand_nodes.push_back(t.nodes[p]);
        cand_csv << t.nodes[p] << ',' << fmt_double(t.taus[p]) << '\n';
    }
    write_text_file(out_path(cfg, "candidates.csv"), cand_csv.str());

    Rng init_rng(stage_seed(cfg, 3));
    EnergyModel model =
        init_energy_model(d.x_std.cols, cfg.clf_hidden, cfg.clf_layers, init_rng);
    save_energy_model(model, out_path(cfg, "model_init.txt"));

    SynthConfig scfg = cfg.synth;
    scfg.seed = stage_seed(cfg, 4);
    SynthResult syn = synthesize_nodes(model, d.ds.graph, d.x_std, cand_nodes, scfg);

    std::ostringstream feat_csv;
    for (std::size_t i = 0; i < syn.features.rows; ++i) {
        for (std::size_t j = 0; j < syn.features.cols; ++j)
            feat_csv << (j ? "," : "") << fmt_double(syn.features(i, j));
        feat_csv << '\n';
    }
    write_text_file(out_path(cfg, "synthetic_features.csv"), feat_csv.str());

    std::ostringstream edge_csv;
    edge_csv << "syn,node\n";
    for (const auto& [s, n] : syn.edges)
        edge_csv << s << ',' << n << '\n';
    write_text_file(out_path(cfg, "synthetic_edges.csv"), edge_csv.str());

    std::ostringstream summary;
    summary << "threshold_T = " << fmt_double(cand.threshold) << '\n'
            << "num_candidates = " << cand_nodes.size() << '\n'
            << "num_synthetic = " << syn.features.rows << '\n';
    write_text_file(out_path(cfg, "synth.txt"), summary.str());
}

void cmd_classify(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    for (const char* f : {"candidates.csv", "synthetic_features.csv", "synthetic_edges.csv",
                          "model_init.txt"})
        if (!file_exists(out_path(cfg, f)))
            throw DependencyError("cmd_classify needs " + out_path(cfg, f) +
                                  " (run the synthesize stage first)");
    DataBundle d = prepare_data(cfg);
    SynthFiles syn = read_synth_files(cfg, d.x_std.cols);
    EnergyModel init = load_energy_model(out_path(cfg, "model_init.txt"));

    AdjList aug = augment_adjacency(d.ds.graph.adj, syn.features.rows, syn.wiring);
    CsrMatrix a_hat = normalize_adjacency(aug);
    DenseMatrix x_aug = augment_features(d.x_std, syn.features);

    std::vector<std::size_t> train_nodes;
    std::vector<int> labels;
    for (std::size_t v : d.ds.masks.known_id) {
        train_nodes.push_back(v);
        labels.push_back(1);
    }
    for (std::size_t v : syn.cand_nodes) {
        train_nodes.push_back(v);
        labels.push_back(0);
    }
    for (std::size_t j = 0; j < syn.features.rows; ++j) {
        train_nodes.push_back(d.ds.graph.num_nodes + j);
        labels.push_back(0);
    }

    Rng rng(stage_seed(cfg, 5));
    TrainResult result =
        train_classifier(init, a_hat, x_aug, train_nodes, labels, d.ds.masks.val_in,
                         d.ds.masks.val_out, cfg.clf_epochs, cfg.clf_lr, cfg.clf_dropout, rng);
    save_energy_model(result.model, out_path(cfg, "model.txt"));

    std::vector<double> energies = energy_forward(result.model, a_hat, x_aug);
    std::vector<double> val_id_e;
    for (std::size_t v : d.ds.masks.val_in)
        val_id_e.push_back(energies[v]);
    const double gamma_prime = energy_threshold(val_id_e, cfg.clf_target_id_tpr);

    std::ostringstream summary;
    summary << "best_epoch = " << result.best_epoch << '\n'
            << "best_val_auroc = " << fmt_double(result.val_auroc_history[result.best_epoch]) << '\n'
            << "init_val_auroc = " << fmt_double(result.val_auroc_history.front()) << '\n'
            << "gamma_prime = " << fmt_double(gamma_prime) << '\n';
    write_text_file(out_path(cfg, "classifier.txt"), summary.str());
}

void cmd_score(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    for (const char* f : {"model.txt", "tau_star.csv", "resonance.txt", "classifier.txt",
                          "synthetic_features.csv", "synthetic_edges.csv", "candidates.csv"})
        if (!file_exists(out_path(cfg, f)))
            throw DependencyError("cmd_score needs " + out_path(cfg, f));
    DataBundle d = prepare_data(cfg);
    TauStar t = read_tau_star(cfg);
    if (t.nodes.size() != d.ds.masks.wild.size())
        throw ValidationError("tau_star.csv does not match the configured dataset");
    SynthFiles syn = read_synth_files(cfg, d.x_std.cols);
    EnergyModel model = load_energy_model(out_path(cfg, "model.txt"));

    auto res_kv = read_kv_file(out_path(cfg, "resonance.txt"));
    auto clf_kv = read_kv_file(out_path(cfg, "classifier.txt"));
    const double gamma = parse_double(res_kv.at("gamma"), "gamma");
    const double gamma_prime = parse_double(clf_kv.at("gamma_prime"), "gamma_prime");

    AdjList aug = augment_adjacency(d.ds.graph.adj, syn.features.rows, syn.wiring);
    CsrMatrix a_hat = normalize_adjacency(aug);
    DenseMatrix x_aug = augment_features(d.x_std, syn.features);
    std::vector<double> energies = energy_forward(model, a_hat, x_aug);

    std::vector<double> baseline;
    if (cfg.baseline != "none") {
        const BaselineMode mode = parse_baseline_mode(cfg.baseline);
        Prototype proto = fit_prototype(rows_of(d.p, d.ds.masks.known_id),
                                        mode == BaselineMode::mahalanobis);
        baseline = baseline_scores(mode, proto, d.p);
    }

    std::vector<std::string> split(d.ds.graph.num_nodes, "known");
    for (std::size_t v : d.ds.masks.val_in) split[v] = "val_in";
    for (std::size_t v : d.ds.masks.val_out) split[v] = "val_out";
    for (std::size_t v : d.ds.masks.test_in) split[v] = "test_in";
    for (std::size_t v : d.ds.masks.test_out) split[v] = "test_out";

    std::vector<double> tau_of(d.ds.graph.num_nodes, std::nan(""));
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        tau_of[t.nodes[i]] = t.taus[i];

    std::ostringstream csv;
    csv << "node,split,is_ood,tau,energy,baseline,pred_tau,pred_energy\n";
    for (std::size_t v = 0; v < d.ds.graph.num_nodes; ++v) {
        const bool wild = split[v] != "known";
        csv << v << ',' << split[v] << ',' << d.ds.ood_flags[v] << ',';
        if (wild) csv << fmt_double(tau_of[v]);
        csv << ',' << fmt_double(energies[v]) << ',';
        if (!baseline.empty()) csv << fmt_double(baseline[v]);
        csv << ',';
        if (wild) csv << (tau_of[v] <= gamma ? 1 : 0);
        csv << ',' << (energies[v] <= gamma_prime ? 1 : 0) << '\n';
    }
    write_text_file(out_path(cfg, "scores.csv"), csv.str());
}

void cmd_eval(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const std::string scores = out_path(cfg, "scores.csv");
    if (!file_exists(scores))
        throw DependencyError("cmd_eval needs " + scores);

    ScoredLabels tau_data, energy_data, baseline_data;
    bool have_baseline = false;
    for (const auto& row : read_csv(scores, true)) {
        if (row.size() != 8)
            throw ValidationError("scores.csv: expected 8 columns");
        const std::string& split = row[1];
        if (split != "test_in" && split != "test_out")
            continue;
        const int is_ood = static_cast<int>(parse_int(row[2], "is_ood"));
        if (!row[3].empty()) {
            tau_data.ood_score.push_back(-parse_double(row[3], "tau"));
            tau_data.is_ood.push_back(is_ood);
        }
        energy_data.ood_score.push_back(-parse_double(row[4], "energy"));
        energy_data.is_ood.push_back(is_ood);
        if (!row[5].empty()) {
            have_baseline = true;
            baseline_data.ood_score.push_back(parse_double(row[5], "baseline"));
            baseline_data.is_ood.push_back(is_ood);
        }
    }
    if (energy_data.ood_score.empty())
        throw ValidationError("scores.csv has no test rows");

    std::ostringstream summary;
    summary << "seed = " << cfg.seed << '\n';
    if (file_exists(out_path(cfg, "resonance.txt"))) {
        auto kv = read_kv_file(out_path(cfg, "resonance.txt"));
        summary << "t_star = " << kv.at("t_star") << '\n'
                << "gamma = " << kv.at("gamma") << '\n';
    }
    if (file_exists(out_path(cfg, "classifier.txt"))) {
        auto kv = read_kv_file(out_path(cfg, "classifier.txt"));
        summary << "gamma_prime = " << kv.at("gamma_prime") << '\n'
                << "best_epoch = " << kv.at("best_epoch") << '\n';
    }
    if (!tau_data.ood_score.empty())
        summary << "tau_auroc = " << fmt_double(auroc(tau_data)) << '\n'
                << "tau_aupr = " << fmt_double(aupr(tau_data)) << '\n'
                << "tau_fpr95 = " << fmt_double(fpr_at_95_tpr(tau_data)) << '\n';
    summary << "energy_auroc = " << fmt_double(auroc(energy_data)) << '\n'
            << "energy_aupr = " << fmt_double(aupr(energy_data)) << '\n'
            << "energy_fpr95 = " << fmt_double(fpr_at_95_tpr(energy_data)) << '\n';
    if (have_baseline)
        summary << "baseline = " << cfg.baseline << '\n'
                << "baseline_auroc = " << fmt_double(auroc(baseline_data)) << '\n'
                << "baseline_aupr = " << fmt_double(aupr(baseline_data)) << '\n'
                << "baseline_fpr95 = " << fmt_double(fpr_at_95_tpr(baseline_data)) << '\n';
    write_text_file(out_path(cfg, "summary.txt"), summary.str());
}

void cmd_run(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const std::string failed = out_path(cfg, "FAILED");
    if (fs::exists(failed))
        fs::remove(failed);
    write_text_file(out_path(cfg, "config_echo.cfg"), config_echo(cfg));

    const char* stage = "resonance";
    try {
        cmd_resonance(cfg);
        stage = "synthesize";
        cmd_synthesize(cfg);
        stage = "classify";
        cmd_classify(cfg);
        stage = "score";
        cmd_score(cfg);
        stage = "eval";
        cmd_eval(cfg);
    } catch (const std::exception& e) {
        write_text_file(failed, std::string(stage) + ": " + e.what() + "\n");
        throw;
    }
}

}  // namespace rsl
