#include "spinnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "spinnet/analysis.hpp"
#include "spinnet/rk45.hpp"

namespace spinnet {

TimeGrid TimeGrid::uniform(double t0, double t1, int n_samples) {
    if (n_samples < 1) throw std::invalid_argument("TimeGrid: need at least one sample");
    TimeGrid g{t0, t1, {}};
    g.samples.reserve(static_cast<std::size_t>(n_samples));
    if (n_samples == 1) {
        g.samples.push_back(t1);
    } else {
        for (int i = 0; i < n_samples; ++i)
            g.samples.push_back(t0 + (t1 - t0) * i / (n_samples - 1));
        g.samples.back() = t1;
    }
    g.validate();
    return g;
}

void TimeGrid::validate() const {
    if (!(t0 < t1)) throw std::invalid_argument("TimeGrid: t0 must be < t1");
    double prev = t0;
    bool first = true;
    for (double t : samples) {
        if (t < t0 || t > t1) throw std::invalid_argument("TimeGrid: sample outside [t0, t1]");
        if (!first && t <= prev) throw std::invalid_argument("TimeGrid: samples must increase");
        prev = t;
        first = false;
    }
}

Eigen::VectorXcd basis_state(SpinConfig s) {
    const Eigen::Index dim = Eigen::Index(1) << s.n_nodes;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[s.bits] = 1.0;
    return psi;
}

Eigen::VectorXcd ghz_state(int n_nodes) {
    if (n_nodes < 2) throw std::invalid_argument("ghz_state: need at least two nodes");
    const Eigen::Index dim = Eigen::Index(1) << n_nodes;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    const double amp = 1.0 / std::sqrt(2.0);
    psi[0] = amp;
    psi[dim - 1] = amp;
    return psi;
}

Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi) {
    return psi * psi.adjoint();
}

double default_horizon(const LindbladModel& m) {
    const double tau = analytic_decoherence_time(m);
    if (!std::isfinite(tau)) return 200.0;
    return std::clamp(5.0 * tau, 1.0, 200.0);
}

namespace {

void check_density(const LindbladModel& m, const Eigen::MatrixXcd& rho) {
    const auto d = static_cast<Eigen::Index>(m.dim());
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("propagate_master: state dimension mismatch");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("propagate_master: initial state is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-12)
        throw std::invalid_argument("propagate_master: initial state trace is not 1");
}

}  // namespace

PropagationReport propagate_master(const LindbladModel& m, const Eigen::MatrixXcd& rho0,
                                   const TimeGrid& grid, double tol, const SampleSink& sink) {
    grid.validate();
    check_density(m, rho0);
    const auto d = static_cast<Eigen::Index>(m.dim());

    Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
    Eigen::MatrixXcd scratch(d, d);
    auto rhs = [&](const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        dv.resize(v.size());
        Eigen::Map<const Eigen::MatrixXcd> rho(v.data(), d, d);
        Eigen::Map<Eigen::MatrixXcd> out(dv.data(), d, d);
        m.apply_generator(rho, scratch);
        out = scratch;
    };

    Rk45Options opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol;
    PropagationReport report;
    Eigen::MatrixXcd sample(d, d);
    integrate_rk45(
        rhs, y, grid.t0, grid.t1, grid.samples,
        [&](std::size_t idx, double t, const Eigen::VectorXcd& v) {
            Eigen::Map<const Eigen::MatrixXcd> rho(v.data(), d, d);
            report.max_trace_drift =
                std::max(report.max_trace_drift, std::abs(rho.trace() - 1.0));
            report.max_hermiticity_defect = std::max(
                report.max_hermiticity_defect, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
            sample = 0.5 * (rho + rho.adjoint());
            sink(idx, t, sample);
        },
        opt);
    return report;
}

std::vector<Eigen::MatrixXcd> propagate_master(const LindbladModel& m, const Eigen::MatrixXcd& rho0,
                                               const TimeGrid& grid, double tol) {
    std::vector<Eigen::MatrixXcd> states(grid.samples.size());
    propagate_master(m, rho0, grid, tol,
                     [&](std::size_t idx, double, const Eigen::MatrixXcd& rho) { states[idx] = rho; });
    return states;
}

}  // namespace spinnet
