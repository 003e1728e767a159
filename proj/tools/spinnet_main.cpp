// spinnet_main.cpp — command-line driver; every run emits reproducible CSV/JSON

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "spinnet/analysis.hpp"
#include "spinnet/dynamics.hpp"
#include "spinnet/mean_field.hpp"
#include "spinnet/trajectories.hpp"

#include "csv_out.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace spinnet;
using namespace spinnet::cli;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

Graph resolve_graph(const std::string& source) {
    if (source.empty()) throw std::invalid_argument("no graph given (key 'graph')");
    if (is_builtin_graph(source)) return builtin_graph(source);
    if (fs::exists(source)) {
        std::vector<std::string> warnings;
        Graph g = load_edge_list_file(source, &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << source << ": " << w << "\n";
        return g;
    }
    std::string known;
    for (const auto& n : builtin_graph_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("graph '" + source +
                                "' is neither a built-in name nor a file; built-ins: " + known);
}

Eigen::VectorXcd initial_state(const RunConfig& cfg, int n_nodes) {
    switch (cfg.initial) {
        case InitialState::AllUp: return basis_state(SpinConfig::all_up(n_nodes));
        case InitialState::AllDown: return basis_state(SpinConfig::all_down(n_nodes));
        case InitialState::Ghz: return ghz_state(n_nodes);
        case InitialState::Amplitudes: {
            const auto dim = std::size_t(1) << n_nodes;
            if (cfg.amplitudes.size() != dim)
                throw std::invalid_argument("amplitude list must have 2^N = " +
                                            std::to_string(dim) + " entries");
            Eigen::VectorXcd psi(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) psi[static_cast<Eigen::Index>(i)] = cfg.amplitudes[i];
            const double norm = psi.norm();
            if (norm <= 0) throw std::invalid_argument("amplitude list has zero norm");
            return psi / norm;
        }
    }
    throw std::invalid_argument("unreachable initial state");
}

ordered_json graph_json(const Graph& g) {
    ordered_json j;
    j["n_nodes"] = g.n_nodes();
    j["n_edges"] = g.n_edges();
    j["mean_degree"] = mean_degree(g);
    j["degree_disparity"] = g.n_nodes() >= 2 ? degree_disparity(g) : 0.0;
    j["degrees"] = g.degrees();
    return j;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    for (const auto& [k, v] : resolved_entries(cfg)) j[k] = v;
    return j;
}

void write_summary(const fs::path& dir, const ordered_json& j) {
    std::ofstream out(dir / "summary.json");
    out << j.dump(2) << "\n";
}

int worker_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("SPINNET_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = parse_run_config_file(config_path);
    const Graph g = resolve_graph(cfg.graph_source);
    const auto model = LindbladModel::build(g, cfg.model_params(), cfg.bath_spec());
    const int n = g.n_nodes();
    const auto dim = model.dim();

    const Eigen::VectorXcd psi0 = initial_state(cfg, n);
    const Eigen::MatrixXcd rho0 = pure_density(psi0);
    const double horizon = cfg.t1.value_or(default_horizon(model));
    const TimeGrid grid = TimeGrid::uniform(0.0, horizon, cfg.samples);
    const auto pairs = parse_pairs(cfg.pairs, n);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    Timer timer;
    std::vector<Eigen::VectorXd> populations(grid.samples.size());
    std::vector<std::complex<double>> coherence(grid.samples.size());
    double final_trace = 0.0;

    const PropagationReport report =
        propagate_master(model, rho0, grid, cfg.tolerance,
                         [&](std::size_t idx, double, const Eigen::MatrixXcd& rho) {
                             populations[idx] = rho.diagonal().real();
                             coherence[idx] = rho(rho.rows() - 1, 0);
                             final_trace = rho.trace().real();
                         });

    {
        CsvWriter csv((dir / "populations.csv").string());
        std::vector<std::string> cols{"t"};
        for (std::uint32_t c = 0; c < dim; ++c) cols.push_back(config_label(c, n));
        csv.header(cols);
        for (std::size_t i = 0; i < grid.samples.size(); ++i)
            csv.row(grid.samples[i], {populations[i].data(), static_cast<std::size_t>(dim)});
    }
    if (!pairs.empty()) {
        CsvWriter csv((dir / "correlations.csv").string());
        std::vector<std::string> cols{"t"};
        std::vector<TimeSeries> series;
        for (auto [i, j] : pairs) {
            series.push_back(spin_spin_correlation(grid.samples, populations, n, i, j));
            cols.push_back(series.back().label);
        }
        csv.header(cols);
        std::vector<double> row(pairs.size());
        for (std::size_t s = 0; s < grid.samples.size(); ++s) {
            for (std::size_t p = 0; p < series.size(); ++p) row[p] = series[p].values[s];
            csv.row(grid.samples[s], row);
        }
    }
    {
        CsvWriter csv((dir / "coherence.csv").string());
        csv.header({"t", "re", "im", "abs"});
        for (std::size_t i = 0; i < grid.samples.size(); ++i) {
            const auto v = coherence[i];
            csv.row(grid.samples[i], {{v.real(), v.imag(), std::abs(v)}});
        }
    }

    ordered_json summary;
    summary["command"] = "simulate";
    summary["config"] = config_json(cfg);
    summary["graph"] = graph_json(g);
    summary["horizon"] = horizon;
    summary["analytic_decoherence_time"] = analytic_decoherence_time(model);
    summary["invariants"] = {{"final_trace", final_trace},
                             {"max_trace_drift", report.max_trace_drift},
                             {"max_hermiticity_defect", report.max_hermiticity_defect}};
    summary["runtime_seconds"] = timer.seconds();
    write_summary(dir, summary);
    return 0;
}

int cmd_trajectories(const std::string& config_path, const std::string& out_dir, int workers) {
    const RunConfig cfg = parse_run_config_file(config_path);
    const Graph g = resolve_graph(cfg.graph_source);
    const auto model = LindbladModel::build(g, cfg.model_params(), cfg.bath_spec());
    const int n = g.n_nodes();
    const auto dim = model.dim();

    const Eigen::VectorXcd psi0 = initial_state(cfg, n);
    const double horizon = cfg.t1.value_or(default_horizon(model));
    const TimeGrid grid = TimeGrid::uniform(0.0, horizon, cfg.samples);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    Timer timer;
    const TrajectoryPlan plan{cfg.n_trajectories, cfg.seed};
    const TrajectoryStats stats = run_trajectories(model, psi0, grid, plan, worker_count(workers));

    std::vector<std::string> cols{"t"};
    for (std::uint32_t c = 0; c < dim; ++c) cols.push_back(config_label(c, n));
    {
        CsvWriter csv((dir / "trajectory_populations.csv").string());
        csv.header(cols);
        std::vector<double> row(dim);
        for (std::size_t i = 0; i < stats.times.size(); ++i) {
            for (std::uint32_t c = 0; c < dim; ++c) row[c] = stats.mean(static_cast<Eigen::Index>(i), c);
            csv.row(stats.times[i], row);
        }
    }
    {
        CsvWriter csv((dir / "trajectory_std_error.csv").string());
        csv.header(cols);
        std::vector<double> row(dim);
        for (std::size_t i = 0; i < stats.times.size(); ++i) {
            for (std::uint32_t c = 0; c < dim; ++c)
                row[c] = stats.std_error(static_cast<Eigen::Index>(i), c);
            csv.row(stats.times[i], row);
        }
    }

    ordered_json summary;
    summary["command"] = "trajectories";
    summary["config"] = config_json(cfg);
    summary["graph"] = graph_json(g);
    summary["horizon"] = horizon;
    summary["n_trajectories"] = stats.n_trajectories;
    summary["total_jumps"] = stats.total_jumps;
    summary["runtime_seconds"] = timer.seconds();
    write_summary(dir, summary);
    return 0;
}

int cmd_meanfield(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = parse_run_config_file(config_path);

    MeanFieldModel mf;
    ordered_json graph_info;
    if (!cfg.graph_source.empty()) {
        const Graph g = resolve_graph(cfg.graph_source);
        mf = MeanFieldModel::for_graph(g, cfg.model_params(), cfg.bath_spec());
        if (cfg.mf_z) mf.z = *cfg.mf_z;
        graph_info = graph_json(g);
    } else {
        if (!cfg.mf_nodes || !cfg.mf_z)
            throw std::invalid_argument("meanfield needs either a graph or both n and z");
        mf = MeanFieldModel{*cfg.mf_nodes, *cfg.mf_z, cfg.model_params(), cfg.bath_spec()};
    }
    mf.validate();
    const int n = mf.n_nodes;

    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(n + 1);
    switch (cfg.initial) {
        case InitialState::AllDown: p0[0] = 1.0; break;
        case InitialState::AllUp: p0[n] = 1.0; break;
        default:
            throw std::invalid_argument(
                "meanfield initial state must be all-up or all-down (populations only)");
    }

    double horizon;
    if (cfg.t1) {
        horizon = *cfg.t1;
    } else {
        // slowest relaxation rate of the reduced chain sets the scale
        Eigen::EigenSolver<Eigen::MatrixXd> es(mf_generator(mf));
        double gap = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const double re = es.eigenvalues()[i].real();
            if (re < -1e-12) gap = gap == 0.0 ? -re : std::min(gap, -re);
        }
        horizon = gap > 0 ? 5.0 / gap : 10.0;
    }
    const TimeGrid grid = TimeGrid::uniform(0.0, horizon, cfg.samples);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    Timer timer;
    const auto dists = mf_propagate(mf, p0, grid, cfg.tolerance);
    const auto obs = mf_observables(mf, grid.samples, dists);

    {
        CsvWriter csv((dir / "reduced_populations.csv").string());
        std::vector<std::string> cols{"t"};
        for (int k = 0; k <= n; ++k) cols.push_back("P_" + std::to_string(k));
        csv.header(cols);
        for (std::size_t i = 0; i < grid.samples.size(); ++i)
            csv.row(grid.samples[i], {dists[i].data(), static_cast<std::size_t>(n + 1)});
    }
    {
        CsvWriter csv((dir / "fractions.csv").string());
        csv.header({"t", "up", "down", "uu", "dd", "ud", "magnetization"});
        for (std::size_t i = 0; i < grid.samples.size(); ++i)
            csv.row(grid.samples[i],
                    {{obs.up_fraction.values[i], obs.down_fraction.values[i],
                      obs.uu_fraction.values[i], obs.dd_fraction.values[i],
                      obs.ud_fraction.values[i], obs.magnetization.values[i]}});
    }

    const Eigen::VectorXd stat = mf_stationary(mf);
    ordered_json summary;
    summary["command"] = "meanfield";
    summary["config"] = config_json(cfg);
    if (!graph_info.is_null()) summary["graph"] = graph_info;
    summary["n"] = n;
    summary["z"] = mf.z;
    summary["horizon"] = horizon;
    summary["stationary"] = std::vector<double>(stat.data(), stat.data() + stat.size());
    summary["final_probability_sum"] = dists.back().sum();
    summary["runtime_seconds"] = timer.seconds();
    write_summary(dir, summary);
    return 0;
}

int cmd_fit(const std::string& csv_path, const std::string& out_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("cannot open " + csv_path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(csv_path + ": empty file");

    // locate t and abs columns in the header
    std::vector<std::string> cols;
    {
        std::istringstream hs(line);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    int t_col = -1, abs_col = -1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "t") t_col = static_cast<int>(i);
        if (cols[i] == "abs") abs_col = static_cast<int>(i);
    }
    if (t_col < 0 || abs_col < 0)
        throw std::invalid_argument(csv_path + ": need 't' and 'abs' columns");

    TimeSeries modulus;
    modulus.label = "abs";
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        int col = 0;
        double t = 0, y = 0;
        bool have_t = false, have_y = false;
        while (std::getline(ls, cell, ',')) {
            if (col == t_col) {
                t = std::stod(cell);
                have_t = true;
            }
            if (col == abs_col) {
                y = std::stod(cell);
                have_y = true;
            }
            ++col;
        }
        if (!have_t || !have_y)
            throw std::invalid_argument(csv_path + ": short row at line " +
                                        std::to_string(line_no));
        modulus.times.push_back(t);
        modulus.values.push_back(y);
    }

    const DecoherenceFit fit = fit_decoherence(modulus);
    ordered_json j;
    j["t_decoh"] = fit.t_decoh;
    j["sigma"] = fit.sigma;
    j["window"] = {fit.window_lo, fit.window_hi};
    j["residual"] = fit.residual_norm;
    j["n_points"] = fit.n_points;
    j["formatted"] = parenthetical(fit.t_decoh, fit.sigma);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_graph_stats(const std::string& source) {
    const Graph g = resolve_graph(source);
    ordered_json j = graph_json(g);
    j["source"] = source;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_spectral(double eta, double omega_c, double omega_min, double omega_max, int samples,
                 const std::string& out_path) {
    if (!(eta > 0) || !(omega_c > 0))
        throw std::invalid_argument("spectral-density: eta and omega-c must be positive");
    if (!(omega_max > omega_min) || samples < 2)
        throw std::invalid_argument("spectral-density: bad omega range or sample count");
    // beta is irrelevant for J(omega); any valid value satisfies the spec check
    const BathSpec exp_bath{eta, omega_c, CutoffKind::Exponential, 1.0};
    const BathSpec dl_bath{eta, omega_c, CutoffKind::DrudeLorentz, 1.0};

    std::ostringstream body;
    body << "omega,exponential,drude_lorentz\n";
    for (int i = 0; i < samples; ++i) {
        const double w = omega_min + (omega_max - omega_min) * i / (samples - 1);
        body << full_precision(w) << ',' << full_precision(spectral_density(exp_bath, w)) << ','
             << full_precision(spectral_density(dl_bath, w)) << '\n';
    }
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << body.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinnet — dissipative Ising-network dynamics"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", out_path, graph_source, csv_path;
    int workers = 0;

    auto* sim = app.add_subcommand("simulate", "integrate the master equation, emit CSV series");
    sim->add_option("--config", config_path, "run configuration file")->required();
    sim->add_option("--out", out_dir, "output directory (default .)");

    auto* traj = app.add_subcommand("trajectories", "quantum-jump sampling of the same dynamics");
    traj->add_option("--config", config_path, "run configuration file")->required();
    traj->add_option("--out", out_dir, "output directory (default .)");
    traj->add_option("--workers", workers, "worker threads (default: SPINNET_WORKERS or cores)");

    auto* mf = app.add_subcommand("meanfield", "reduced birth-death dynamics over the up-spin count");
    mf->add_option("--config", config_path, "run configuration file")->required();
    mf->add_option("--out", out_dir, "output directory (default .)");

    auto* fit = app.add_subcommand("fit-decoherence", "fit 0.5 exp(-t/tau) to a coherence CSV");
    fit->add_option("csv", csv_path, "coherence.csv with t and abs columns")->required();
    fit->add_option("--out", out_path, "write the JSON report here instead of stdout");

    auto* stats = app.add_subcommand("graph-stats", "topology metrics of a graph");
    stats->add_option("graph", graph_source, "built-in name or edge-list file")->required();

    double eta = 0.4, omega_c = 1.2, omega_min = -6.0, omega_max = 6.0;
    int samples = 241;
    auto* spec = app.add_subcommand("spectral-density", "tabulate J(omega) for both cutoffs");
    spec->add_option("--eta", eta, "spectral strength (default 0.4)");
    spec->add_option("--omega-c", omega_c, "cutoff frequency (default 1.2)");
    spec->add_option("--omega-min", omega_min, "grid start (default -6)");
    spec->add_option("--omega-max", omega_max, "grid end (default 6)");
    spec->add_option("--samples", samples, "grid size (default 241)");
    spec->add_option("--out", out_path, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir);
        if (traj->parsed()) return cmd_trajectories(config_path, out_dir, workers);
        if (mf->parsed()) return cmd_meanfield(config_path, out_dir);
        if (fit->parsed()) return cmd_fit(csv_path, out_path);
        if (stats->parsed()) return cmd_graph_stats(graph_source);
        if (spec->parsed())
            return cmd_spectral(eta, omega_c, omega_min, omega_max, samples, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IntegrationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
