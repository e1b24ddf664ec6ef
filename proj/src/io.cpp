#include "rsl/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rsl/errors.hpp"

namespace rsl {

std::string fmt_double(double v) {
    char buf[40];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v)
            return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in)
        throw DependencyError("missing file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (first && skip_header) {
            first = false;
            continue;
        }
        first = false;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DependencyError("missing file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return static_cast<bool>(in);
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad number for " + what + ": '" + s + "'");
    }
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer for " + what + ": '" + s + "'");
    }
}

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void append_matrix(std::ostringstream& out, const std::string& name, const DenseMatrix& m) {
    out << name << ' ' << m.rows << ' ' << m.cols << '\n';
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j)
            out << (j ? " " : "") << fmt_double(m(i, j));
        out << '\n';
    }
}

DenseMatrix read_matrix(std::istringstream& in, const std::string& expect) {
    std::string name;
    std::size_t rows, cols;
    if (!(in >> name >> rows >> cols) || name != expect)
        throw ValidationError("model snapshot: expected '" + expect + "' section");
    DenseMatrix m(rows, cols);
    for (double& v : m.data)
        if (!(in >> v))
            throw ValidationError("model snapshot: truncated " + expect + " payload");
    return m;
}

}  // namespace

void save_energy_model(const EnergyModel& model, const std::string& path) {
    std::ostringstream payload;
    payload << "layers " << model.gcn.layer_weights.size() << '\n';
    for (std::size_t k = 0; k < model.gcn.layer_weights.size(); ++k)
        append_matrix(payload, "W" + std::to_string(k), model.gcn.layer_weights[k]);
    payload << "beta " << model.beta.size() << '\n';
    for (std::size_t k = 0; k < model.beta.size(); ++k)
        payload << (k ? " " : "") << fmt_double(model.beta[k]);
    payload << '\n';
    append_matrix(payload, "w_out", model.w_out);

    std::ostringstream out;
    out << "RSLMODEL v1\n" << payload.str();
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(payload.str())));
    out << "checksum " << hex << '\n';
    write_text_file(path, out.str());
}

EnergyModel load_energy_model(const std::string& path) {
    std::string text = read_text_file(path);
    const std::string magic = "RSLMODEL v1\n";
    if (text.rfind(magic, 0) != 0)
        throw ValidationError("model snapshot: bad magic in " + path);
    const std::size_t ck = text.rfind("checksum ");
    if (ck == std::string::npos)
        throw ValidationError("model snapshot: missing checksum in " + path);
    std::string payload = text.substr(magic.size(), ck - magic.size());
    std::string stored = text.substr(ck + 9);
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r'))
        stored.pop_back();
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(payload)));
    if (stored != hex)
        throw ValidationError("model snapshot: checksum mismatch in " + path);

    std::istringstream in(payload);
    std::string word;
    std::size_t layers;
    if (!(in >> word >> layers) || word != "layers")
        throw ValidationError("model snapshot: missing layer count");
    EnergyModel m;
    for (std::size_t k = 0; k < layers; ++k)
        m.gcn.layer_weights.push_back(read_matrix(in, "W" + std::to_string(k)));
    std::size_t nb;
    if (!(in >> word >> nb) || word != "beta")
        throw ValidationError("model snapshot: missing beta section");
    m.beta.resize(nb);
    for (double& b : m.beta)
        if (!(in >> b))
            throw ValidationError("model snapshot: truncated beta payload");
    m.w_out = read_matrix(in, "w_out");
    if (m.beta.size() != m.gcn.layer_weights.size())
        throw ValidationError("model snapshot: beta count != layer count");
    for (const auto& w : m.gcn.layer_weights)
        if (w.rows != m.w_out.cols)
            throw ValidationError("model snapshot: layer width != w_out width");
    return m;
}

}  // namespace rsl
