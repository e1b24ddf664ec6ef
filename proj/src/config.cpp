#include "rsl/config.hpp"

#include <map>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/io.hpp"

namespace rsl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_vector(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const std::string& cell : split_csv_line(s))
        out.push_back(parse_double(trim(cell), what));
    return out;
}

bool parse_bool(const std::string& s, const std::string& what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("bad boolean for " + what + ": '" + s + "'");
}

std::string vec_str(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt_double(v[i]);
    return s;
}

std::vector<double> axis_center(std::size_t axis, std::size_t dim, double amplitude) {
    std::vector<double> c(dim, 0.0);
    c[axis % dim] = amplitude;
    return c;
}

}  // namespace

TargetMode parse_target_mode(const std::string& name) {
    if (name == "single_random") return TargetMode::single_random;
    if (name == "multi_random") return TargetMode::multi_random;
    if (name == "etf_by_label") return TargetMode::etf_by_label;
    throw ConfigError("unknown target mode: " + name);
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    bool toy_centers_set = false;
    bool sbm_centers_set = false;
    std::string sbm_blocks_str;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string at = origin + ":" + std::to_string(lineno) + " " + key;

        if (key == "dataset") cfg.dataset = val;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(val, at));
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "files.edge_path") cfg.edge_path = val;
        else if (key == "files.feature_path") cfg.feature_path = val;
        else if (key == "files.flags_path") cfg.flags_path = val;
        else if (key == "files.masks_path") cfg.masks_path = val;
        else if (key == "files.known_frac") cfg.known_frac = parse_double(val, at);
        else if (key == "toy.n_known") cfg.toy.n_known = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "toy.n_wild_in") cfg.toy.n_wild_in = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "toy.n_wild_out") cfg.toy.n_wild_out = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "toy.dim") cfg.toy.dim = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "toy.spread") cfg.toy.spread = parse_double(val, at);
        else if (key == "toy.id_center") { cfg.toy.id_center = parse_vector(val, at); toy_centers_set = true; }
        else if (key == "toy.ood_center") { cfg.toy.ood_center = parse_vector(val, at); toy_centers_set = true; }
        else if (key == "sbm.blocks") sbm_blocks_str = val;
        else if (key == "sbm.dim") cfg.sbm.dim = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "sbm.p_in") cfg.sbm.p_in = parse_double(val, at);
        else if (key == "sbm.p_out") cfg.sbm.p_out = parse_double(val, at);
        else if (key == "sbm.spread") cfg.sbm.spread = parse_double(val, at);
        else if (key == "sbm.homophily_shift") cfg.sbm.homophily_shift = parse_double(val, at);
        else if (key == "sbm.centers") {
            sbm_centers_set = true;
            std::vector<std::vector<double>> centers;
            std::stringstream ss(val);
            std::string part;
            while (std::getline(ss, part, ';'))
                centers.push_back(parse_vector(trim(part), at));
            // applied after blocks are known
            cfg.sbm.blocks.resize(std::max(cfg.sbm.blocks.size(), centers.size()));
            for (std::size_t i = 0; i < centers.size(); ++i)
                cfg.sbm.blocks[i].center = centers[i];
        }
        else if (key == "res.lr") cfg.res_lr = parse_double(val, at);
        else if (key == "res.epochs") cfg.res_epochs = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "res.head_dim") cfg.res_head_dim = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "res.target_mode") cfg.res_target_mode = val;
        else if (key == "res.num_targets") cfg.res_num_targets = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "res.hops") cfg.res_hops = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "res.standardize") cfg.res_standardize = parse_bool(val, at);
        else if (key == "res.force_raw_features") cfg.res_force_raw = parse_bool(val, at);
        else if (key == "res.target_id_tpr") cfg.res_target_id_tpr = parse_double(val, at);
        else if (key == "cand.n") cfg.cand_n = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "synth.count") cfg.synth.count = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "synth.steps") cfg.synth.steps = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "synth.step_size") cfg.synth.step_size = parse_double(val, at);
        else if (key == "synth.lambda") cfg.synth.lambda = parse_double(val, at);
        else if (key == "synth.noise_std") cfg.synth.noise_std = parse_double(val, at);
        else if (key == "synth.knn_k") cfg.synth.knn_k = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "clf.epochs") cfg.clf_epochs = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "clf.lr") cfg.clf_lr = parse_double(val, at);
        else if (key == "clf.dropout") cfg.clf_dropout = parse_double(val, at);
        else if (key == "clf.layers") cfg.clf_layers = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "clf.hidden") cfg.clf_hidden = static_cast<std::size_t>(parse_int(val, at));
        else if (key == "clf.target_id_tpr") cfg.clf_target_id_tpr = parse_double(val, at);
        else if (key == "baseline") cfg.baseline = val;
        else
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }

    if (!sbm_blocks_str.empty()) {
        std::vector<SbmBlock> blocks;
        std::stringstream ss(sbm_blocks_str);
        std::string part;
        std::size_t idx = 0;
        while (std::getline(ss, part, ',')) {
            part = trim(part);
            const auto colon = part.find(':');
            if (colon == std::string::npos)
                throw ConfigError("sbm.blocks entry needs size:tag, got '" + part + "'");
            SbmBlock b;
            b.size = static_cast<std::size_t>(parse_int(trim(part.substr(0, colon)), "sbm.blocks"));
            const std::string tag = trim(part.substr(colon + 1));
            if (tag == "id") b.is_ood = false;
            else if (tag == "ood") b.is_ood = true;
            else throw ConfigError("sbm.blocks tag must be id or ood, got '" + tag + "'");
            // keep any center already parsed from sbm.centers
            if (sbm_centers_set && idx < cfg.sbm.blocks.size() &&
                !cfg.sbm.blocks[idx].center.empty())
                b.center = cfg.sbm.blocks[idx].center;
            blocks.push_back(std::move(b));
            ++idx;
        }
        cfg.sbm.blocks = std::move(blocks);
    }

    // derived defaults: axis-aligned centers matching the configured dims
    if (!toy_centers_set) {
        ToySpec d;
        d.dim = cfg.toy.dim;
        d.spread = cfg.toy.spread;
        if (d.dim >= 2) {
            const double a = 4.0 * d.spread / std::sqrt(2.0);
            cfg.toy.id_center = axis_center(0, d.dim, a);
            cfg.toy.ood_center = axis_center(1, d.dim, a);
        } else {
            cfg.toy.id_center = {0.0};
            cfg.toy.ood_center = {4.0 * d.spread};
        }
    }
    if (!sbm_centers_set) {
        // default 3-block geometry if untouched, axis-aligned fallback for
        // custom block counts
        SbmSpec d = default_sbm_spec();
        if (cfg.sbm.blocks.size() == d.blocks.size() && cfg.sbm.dim == d.dim) {
            for (std::size_t b = 0; b < cfg.sbm.blocks.size(); ++b)
                cfg.sbm.blocks[b].center = d.blocks[b].center;
        } else {
            for (std::size_t b = 0; b < cfg.sbm.blocks.size(); ++b)
                cfg.sbm.blocks[b].center = axis_center(b, cfg.sbm.dim, 4.0);
        }
    }

    cfg.toy.seed = cfg.seed;
    cfg.sbm.seed = cfg.seed;
    cfg.synth.seed = cfg.seed + 2;
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return parse_config_text(read_text_file(path), path);
}

void validate_config(const RunConfig& cfg) {
    if (cfg.dataset != "toy" && cfg.dataset != "sbm" && cfg.dataset != "files")
        throw ConfigError("dataset must be toy, sbm, or files");
    if (cfg.dataset == "files" && (cfg.edge_path.empty() || cfg.feature_path.empty() ||
                                   cfg.flags_path.empty()))
        throw ConfigError("files dataset needs files.edge_path, files.feature_path, files.flags_path");
    if (cfg.known_frac <= 0.0 || cfg.known_frac >= 1.0)
        throw ConfigError("files.known_frac must be in (0,1)");
    if (cfg.res_lr <= 0.0 || cfg.clf_lr <= 0.0)
        throw ConfigError("learning rates must be positive");
    if (cfg.res_epochs < 1)
        throw ConfigError("res.epochs must be >= 1");
    if (cfg.res_head_dim < 1 || cfg.clf_hidden < 1 || cfg.clf_layers < 1)
        throw ConfigError("model widths and depths must be >= 1");
    if (cfg.res_target_id_tpr <= 0.0 || cfg.res_target_id_tpr > 1.0 ||
        cfg.clf_target_id_tpr <= 0.0 || cfg.clf_target_id_tpr > 1.0)
        throw ConfigError("target ID TPR must be in (0,1]");
    if (cfg.cand_n < 1)
        throw ConfigError("cand.n must be >= 1");
    if (cfg.synth.lambda < 0.0 || cfg.synth.lambda > 1.0)
        throw ConfigError("synth.lambda must be in [0,1]");
    if (cfg.synth.step_size <= 0.0)
        throw ConfigError("synth.step_size must be positive");
    if (cfg.synth.noise_std < 0.0)
        throw ConfigError("synth.noise_std must be nonnegative");
    if (cfg.synth.knn_k < 1)
        throw ConfigError("synth.knn_k must be >= 1");
    if (cfg.clf_dropout < 0.0 || cfg.clf_dropout >= 1.0)
        throw ConfigError("clf.dropout must be in [0,1)");
    parse_target_mode(cfg.res_target_mode);
    if (cfg.baseline != "none")
        parse_baseline_mode(cfg.baseline);
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream o;
    o << "dataset = " << cfg.dataset << '\n';
    o << "seed = " << cfg.seed << '\n';
    o << "out_dir = " << cfg.out_dir << '\n';
    if (!cfg.edge_path.empty()) o << "files.edge_path = " << cfg.edge_path << '\n';
    if (!cfg.feature_path.empty()) o << "files.feature_path = " << cfg.feature_path << '\n';
    if (!cfg.flags_path.empty()) o << "files.flags_path = " << cfg.flags_path << '\n';
    if (!cfg.masks_path.empty()) o << "files.masks_path = " << cfg.masks_path << '\n';
    o << "files.known_frac = " << fmt_double(cfg.known_frac) << '\n';
    o << "toy.n_known = " << cfg.toy.n_known << '\n';
    o << "toy.n_wild_in = " << cfg.toy.n_wild_in << '\n';
    o << "toy.n_wild_out = " << cfg.toy.n_wild_out << '\n';
    o << "toy.dim = " << cfg.toy.dim << '\n';
    o << "toy.spread = " << fmt_double(cfg.toy.spread) << '\n';
    o << "toy.id_center = " << vec_str(cfg.toy.id_center) << '\n';
    o << "toy.ood_center = " << vec_str(cfg.toy.ood_center) << '\n';
    o << "sbm.blocks = ";
    for (std::size_t b = 0; b < cfg.sbm.blocks.size(); ++b)
        o << (b ? "," : "") << cfg.sbm.blocks[b].size << ':'
          << (cfg.sbm.blocks[b].is_ood ? "ood" : "id");
    o << '\n';
    o << "sbm.dim = " << cfg.sbm.dim << '\n';
    o << "sbm.p_in = " << fmt_double(cfg.sbm.p_in) << '\n';
    o << "sbm.p_out = " << fmt_double(cfg.sbm.p_out) << '\n';
    o << "sbm.spread = " << fmt_double(cfg.sbm.spread) << '\n';
    o << "sbm.homophily_shift = " << fmt_double(cfg.sbm.homophily_shift) << '\n';
    o << "sbm.centers = ";
    for (std::size_t b = 0; b < cfg.sbm.blocks.size(); ++b)
        o << (b ? ";" : "") << vec_str(cfg.sbm.blocks[b].center);
    o << '\n';
    o << "res.lr = " << fmt_double(cfg.res_lr) << '\n';
    o << "res.epochs = " << cfg.res_epochs << '\n';
    o << "res.head_dim = " << cfg.res_head_dim << '\n';
    o << "res.target_mode = " << cfg.res_target_mode << '\n';
    o << "res.num_targets = " << cfg.res_num_targets << '\n';
    o << "res.hops = " << cfg.res_hops << '\n';
    o << "res.standardize = " << (cfg.res_standardize ? "true" : "false") << '\n';
    o << "res.force_raw_features = " << (cfg.res_force_raw ? "true" : "false") << '\n';
    o << "res.target_id_tpr = " << fmt_double(cfg.res_target_id_tpr) << '\n';
    o << "cand.n = " << cfg.cand_n << '\n';
    o << "synth.count = " << cfg.synth.count << '\n';
    o << "synth.steps = " << cfg.synth.steps << '\n';
    o << "synth.step_size = " << fmt_double(cfg.synth.step_size) << '\n';
    o << "synth.lambda = " << fmt_double(cfg.synth.lambda) << '\n';
    o << "synth.noise_std = " << fmt_double(cfg.synth.noise_std) << '\n';
    o << "synth.knn_k = " << cfg.synth.knn_k << '\n';
    o << "clf.epochs = " << cfg.clf_epochs << '\n';
    o << "clf.lr = " << fmt_double(cfg.clf_lr) << '\n';
    o << "clf.dropout = " << fmt_double(cfg.clf_dropout) << '\n';
    o << "clf.layers = " << cfg.clf_layers << '\n';
    o << "clf.hidden = " << cfg.clf_hidden << '\n';
    o << "clf.target_id_tpr = " << fmt_double(cfg.clf_target_id_tpr) << '\n';
    o << "baseline = " << cfg.baseline << '\n';
    return o.str();
}

}  // namespace rsl
