// run_config.hpp — flat key=value run configuration for the CLI

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "spinnet/bath.hpp"
#include "spinnet/graph.hpp"
#include "spinnet/spin_model.hpp"

namespace spinnet::cli {

enum class InitialState { AllUp, AllDown, Ghz, Amplitudes };

/// Resolved run configuration. Parsed from a flat key=value file; unknown
/// keys are errors. Defaults are the study profile J=0.4, h=0.1, beta=1.2,
/// eta=0.4, omega_c=1.2 with the exponential cutoff.
struct RunConfig {
    std::string graph_source;  // built-in name or edge-list path
    double coupling = 0.4;     // J
    double field = 0.1;        // h
    double beta = 1.2;
    double eta = 0.4;
    double omega_c = 1.2;
    CutoffKind cutoff = CutoffKind::Exponential;

    InitialState initial = InitialState::AllDown;
    std::vector<std::complex<double>> amplitudes;  // when initial = Amplitudes

    std::optional<double> t1;  // default: 5 * analytic decay time
    int samples = 400;
    double tolerance = 1e-10;

    // pair selection for correlation output: "all" or "i-j,k-l"; empty = all
    std::string pairs = "all";

    int n_trajectories = 10000;
    std::uint64_t seed = 20260808;

    // mean-field keys; n_nodes/z may replace the graph for abstract runs
    std::optional<int> mf_nodes;
    std::optional<double> mf_z;

    ModelParams model_params() const { return {coupling, field}; }
    BathSpec bath_spec() const { return {eta, omega_c, cutoff, beta}; }
};

/// Parse a config file. Lines: `key = value`; '#' starts a comment; blank
/// lines ignored. Throws std::invalid_argument with a line reference on any
/// unknown key or malformed value.
RunConfig parse_run_config_file(const std::string& path);
RunConfig parse_run_config(std::istream& in);

/// The resolved configuration as key=value text (defaults materialized),
/// embedded in summary files for provenance.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c);

std::string cutoff_name(CutoffKind k);
std::string initial_name(const RunConfig& c);

/// Parse "0-1,2-3" into node pairs; "all" yields every unordered pair.
std::vector<std::pair<int, int>> parse_pairs(const std::string& spec, int n_nodes);

}  // namespace spinnet::cli
