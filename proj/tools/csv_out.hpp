// csv_out.hpp — deterministic full-precision CSV emission

#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinnet::cli {

/// Format with 17 significant digits so re-parsing reproduces the double
/// exactly and repeated runs are byte-identical.
inline std::string full_precision(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
    }

    void header(const std::vector<std::string>& columns) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    void row(double t, std::span<const double> values) {
        out_ << full_precision(t);
        for (double v : values) out_ << ',' << full_precision(v);
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

/// Configuration-word label with node 0 leftmost: 'u' for spin-up bits.
inline std::string config_label(std::uint32_t cfg, int n_nodes) {
    std::string s(static_cast<std::size_t>(n_nodes), 'd');
    for (int i = 0; i < n_nodes; ++i)
        if ((cfg >> i) & 1u) s[static_cast<std::size_t>(i)] = 'u';
    return s;
}

}  // namespace spinnet::cli
