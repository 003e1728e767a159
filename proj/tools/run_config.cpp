#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinnet::cli {

namespace {

std::string trim(std::string s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number '" + v + "' for key '" + key + "'");
    }
}

long parse_long(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer '" + v + "' for key '" + key + "'");
    }
}

std::vector<std::complex<double>> parse_amplitudes(const std::string& v) {
    // comma-separated re:im entries, one per configuration
    std::vector<std::complex<double>> amps;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        double re = 0, im = 0;
        if (colon == std::string::npos) {
            re = parse_double(item, "initial");
        } else {
            re = parse_double(item.substr(0, colon), "initial");
            im = parse_double(item.substr(colon + 1), "initial");
        }
        amps.emplace_back(re, im);
    }
    if (amps.empty()) throw std::invalid_argument("config: empty amplitude list");
    return amps;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
    RunConfig c;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty value for '" + key + "'");

        if (key == "graph") {
            c.graph_source = value;
        } else if (key == "J") {
            c.coupling = parse_double(value, key);
        } else if (key == "h") {
            c.field = parse_double(value, key);
        } else if (key == "beta") {
            c.beta = parse_double(value, key);
        } else if (key == "eta") {
            c.eta = parse_double(value, key);
        } else if (key == "omega_c") {
            c.omega_c = parse_double(value, key);
        } else if (key == "cutoff") {
            if (value == "exponential")
                c.cutoff = CutoffKind::Exponential;
            else if (value == "drude-lorentz")
                c.cutoff = CutoffKind::DrudeLorentz;
            else
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": cutoff must be exponential or drude-lorentz");
        } else if (key == "initial") {
            if (value == "all-up")
                c.initial = InitialState::AllUp;
            else if (value == "all-down")
                c.initial = InitialState::AllDown;
            else if (value == "ghz")
                c.initial = InitialState::Ghz;
            else if (value.rfind("amplitudes:", 0) == 0) {
                c.initial = InitialState::Amplitudes;
                c.amplitudes = parse_amplitudes(value.substr(11));
            } else
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": initial must be all-up, all-down, ghz, or "
                                            "amplitudes:re:im,...");
        } else if (key == "t1") {
            c.t1 = parse_double(value, key);
            if (!(*c.t1 > 0))
                throw std::invalid_argument("config: t1 must be positive");
        } else if (key == "samples") {
            c.samples = static_cast<int>(parse_long(value, key));
            if (c.samples < 2) throw std::invalid_argument("config: samples must be >= 2");
        } else if (key == "tol") {
            c.tolerance = parse_double(value, key);
            if (!(c.tolerance > 0)) throw std::invalid_argument("config: tol must be positive");
        } else if (key == "pairs") {
            c.pairs = value;
        } else if (key == "n_traj") {
            c.n_trajectories = static_cast<int>(parse_long(value, key));
            if (c.n_trajectories < 1)
                throw std::invalid_argument("config: n_traj must be positive");
        } else if (key == "seed") {
            c.seed = static_cast<std::uint64_t>(parse_long(value, key));
        } else if (key == "n") {
            c.mf_nodes = static_cast<int>(parse_long(value, key));
        } else if (key == "z") {
            c.mf_z = parse_double(value, key);
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    return c;
}

RunConfig parse_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_run_config(in);
}

std::string cutoff_name(CutoffKind k) {
    return k == CutoffKind::Exponential ? "exponential" : "drude-lorentz";
}

std::string initial_name(const RunConfig& c) {
    switch (c.initial) {
        case InitialState::AllUp: return "all-up";
        case InitialState::AllDown: return "all-down";
        case InitialState::Ghz: return "ghz";
        case InitialState::Amplitudes: return "amplitudes";
    }
    return "?";
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c) {
    auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("graph", c.graph_source);
    e.emplace_back("J", num(c.coupling));
    e.emplace_back("h", num(c.field));
    e.emplace_back("beta", num(c.beta));
    e.emplace_back("eta", num(c.eta));
    e.emplace_back("omega_c", num(c.omega_c));
    e.emplace_back("cutoff", cutoff_name(c.cutoff));
    e.emplace_back("initial", initial_name(c));
    e.emplace_back("t1", c.t1 ? num(*c.t1) : std::string("auto"));
    e.emplace_back("samples", std::to_string(c.samples));
    e.emplace_back("tol", num(c.tolerance));
    e.emplace_back("pairs", c.pairs);
    e.emplace_back("n_traj", std::to_string(c.n_trajectories));
    e.emplace_back("seed", std::to_string(c.seed));
    if (c.mf_nodes) e.emplace_back("n", std::to_string(*c.mf_nodes));
    if (c.mf_z) e.emplace_back("z", num(*c.mf_z));
    return e;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& spec, int n_nodes) {
    std::vector<std::pair<int, int>> pairs;
    if (spec == "none") return pairs;
    if (spec.empty() || spec == "all") {
        for (int i = 0; i < n_nodes; ++i)
            for (int j = i + 1; j < n_nodes; ++j) pairs.push_back({i, j});
        return pairs;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("config: bad pair '" + item + "' (expected i-j)");
        const int i = static_cast<int>(parse_long(trim(item.substr(0, dash)), "pairs"));
        const int j = static_cast<int>(parse_long(trim(item.substr(dash + 1)), "pairs"));
        if (i == j || i < 0 || j < 0 || i >= n_nodes || j >= n_nodes)
            throw std::invalid_argument("config: pair " + item + " out of range");
        pairs.push_back({std::min(i, j), std::max(i, j)});
    }
    if (pairs.empty()) throw std::invalid_argument("config: empty pair list");
    return pairs;
}

}  // namespace spinnet::cli
