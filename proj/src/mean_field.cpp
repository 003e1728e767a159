#include "spinnet/mean_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "spinnet/rk45.hpp"

namespace spinnet {

void MeanFieldModel::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("mean field: need at least one node");
    if (!(z > 0) || z > n_nodes - 1)
        throw std::invalid_argument("mean field: coordination number must satisfy 0 < z <= N-1");
    if (!std::isfinite(params.coupling) || !std::isfinite(params.field))
        throw std::invalid_argument("mean field: coupling and field must be finite");
    bath.validate();
}

MeanFieldModel MeanFieldModel::for_graph(const Graph& g, const ModelParams& p, const BathSpec& b) {
    MeanFieldModel m{g.n_nodes(), mean_degree(g), p, b};
    m.validate();
    return m;
}

namespace {

void check_level(const MeanFieldModel& m, int n_up, const char* who) {
    if (n_up < 0 || n_up > m.n_nodes)
        throw std::invalid_argument(std::string(who) + ": n_up = " + std::to_string(n_up) +
                                    " outside [0, " + std::to_string(m.n_nodes) + "]");
}

}  // namespace

double mf_energy(const MeanFieldModel& m, int n_up) {
    check_level(m, n_up, "mf_energy");
    const double mag = 2.0 * n_up - m.n_nodes;
    return -(m.z * m.params.coupling / (2.0 * m.n_nodes)) * mag * mag - m.params.field * mag;
}

MfPairCounts mf_pair_counts(const MeanFieldModel& m, int n_up) {
    check_level(m, n_up, "mf_pair_counts");
    const double n = m.n_nodes;
    const double u = n_up;
    const double d = n - u;
    return {m.z * u * u / (2.0 * n), m.z * d * d / (2.0 * n), m.z * u * d / n};
}

MfRates mf_rates(const MeanFieldModel& m) {
    m.validate();
    const int n = m.n_nodes;
    MfRates r;
    r.up.assign(static_cast<std::size_t>(n) + 1, 0.0);
    r.down.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int level = 0; level < n; ++level) {
        const double gap = mf_energy(m, level + 1) - mf_energy(m, level);
        r.up[static_cast<std::size_t>(level)] = flip_rate_or_limit(m.bath, gap);
        r.down[static_cast<std::size_t>(level) + 1] = flip_rate_or_limit(m.bath, -gap);
    }
    return r;
}

Eigen::MatrixXd mf_generator(const MeanFieldModel& m) {
    const int n = m.n_nodes;
    const MfRates r = mf_rates(m);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int level = 0; level < n; ++level) {
        const double birth = (n - level) * r.up[static_cast<std::size_t>(level)];
        const double death = (level + 1) * r.down[static_cast<std::size_t>(level) + 1];
        q(level + 1, level) += birth;
        q(level, level) -= birth;
        q(level, level + 1) += death;
        q(level + 1, level + 1) -= death;
    }
    return q;
}

void mf_propagate(const MeanFieldModel& m, const Eigen::VectorXd& P0, const TimeGrid& grid,
                  double tol, const MfSink& sink) {
    grid.validate();
    if (P0.size() != m.n_nodes + 1)
        throw std::invalid_argument("mf_propagate: distribution must have N+1 entries");
    if (P0.minCoeff() < 0 || std::abs(P0.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("mf_propagate: not a probability distribution");

    const Eigen::MatrixXd q = mf_generator(m);
    Eigen::VectorXd y = P0;
    auto rhs = [&](const Eigen::VectorXd& p, Eigen::VectorXd& dp) { dp = q * p; };
    Rk45Options opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol;
    integrate_rk45(
        rhs, y, grid.t0, grid.t1, grid.samples,
        [&](std::size_t idx, double t, const Eigen::VectorXd& p) { sink(idx, t, p); }, opt);
}

std::vector<Eigen::VectorXd> mf_propagate(const MeanFieldModel& m, const Eigen::VectorXd& P0,
                                          const TimeGrid& grid, double tol) {
    std::vector<Eigen::VectorXd> out(grid.samples.size());
    mf_propagate(m, P0, grid, tol,
                 [&](std::size_t idx, double, const Eigen::VectorXd& p) { out[idx] = p; });
    return out;
}

Eigen::VectorXd mf_stationary(const MeanFieldModel& m) {
    const int dim = m.n_nodes + 1;
    Eigen::MatrixXd a = mf_generator(m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    // replace one balance row by the normalization constraint
    a.row(dim - 1).setOnes();
    b[dim - 1] = 1.0;
    Eigen::VectorXd p = a.fullPivLu().solve(b);
    return p;
}

MfObservables mf_observables(const MeanFieldModel& m, const std::vector<double>& times,
                             const std::vector<Eigen::VectorXd>& distributions) {
    if (times.size() != distributions.size())
        throw std::invalid_argument("mf_observables: times and distributions differ in length");
    const int n = m.n_nodes;
    const double edge_total = m.z * n / 2.0;

    MfObservables out;
    out.up_fraction.label = "up_fraction";
    out.down_fraction.label = "down_fraction";
    out.uu_fraction.label = "uu_fraction";
    out.dd_fraction.label = "dd_fraction";
    out.ud_fraction.label = "ud_fraction";
    out.magnetization.label = "magnetization";
    for (auto* s : {&out.up_fraction, &out.down_fraction, &out.uu_fraction, &out.dd_fraction,
                    &out.ud_fraction, &out.magnetization})
        s->times = times;

    for (const auto& p : distributions) {
        double up = 0, uu = 0, dd = 0, ud = 0, mag = 0;
        for (int level = 0; level <= n; ++level) {
            const double w = p[level];
            const auto pc = mf_pair_counts(m, level);
            up += w * level;
            uu += w * pc.up_up;
            dd += w * pc.down_down;
            ud += w * pc.up_down;
            mag += w * (2.0 * level - n);
        }
        out.up_fraction.values.push_back(up / n);
        out.down_fraction.values.push_back(1.0 - up / n);
        out.uu_fraction.values.push_back(uu / edge_total);
        out.dd_fraction.values.push_back(dd / edge_total);
        out.ud_fraction.values.push_back(ud / edge_total);
        out.magnetization.values.push_back(mag);
    }
    return out;
}

LocalMagnetization local_magnetization(const std::vector<double>& times,
                                       const std::vector<Eigen::VectorXd>& populations,
                                       const Graph& g) {
    if (times.size() != populations.size())
        throw std::invalid_argument("local_magnetization: times and populations differ in length");
    const int n = g.n_nodes();
    for (int i = 0; i < n; ++i)
        if (g.degree(i) == 0)
            throw std::invalid_argument("local_magnetization: node " + std::to_string(i) +
                                        " is isolated");

    LocalMagnetization out;
    out.times = times;
    out.per_node = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(times.size()), n);
    out.global.reserve(times.size());

    // per-config neighbor averages, reused across samples
    const std::uint32_t dim = 1u << n;
    Eigen::MatrixXd sbar(dim, n);
    Eigen::VectorXd mag(dim);
    for (std::uint32_t c = 0; c < dim; ++c) {
        SpinConfig s{c, n};
        for (int i = 0; i < n; ++i) {
            int acc = 0;
            for (int j = 0; j < n; ++j)
                if (g.adjacent(i, j)) acc += s.spin(j);
            sbar(c, i) = static_cast<double>(acc) / g.degree(i);
        }
        mag[c] = magnetization(s);
    }

    for (std::size_t k = 0; k < populations.size(); ++k) {
        const auto& p = populations[k];
        if (p.size() != static_cast<Eigen::Index>(dim))
            throw std::invalid_argument("local_magnetization: population size mismatch");
        out.per_node.row(static_cast<Eigen::Index>(k)) = p.transpose() * sbar;
        out.global.push_back(p.dot(mag) / n);
    }
    return out;
}

}  // namespace spinnet
