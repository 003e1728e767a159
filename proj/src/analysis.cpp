#include "spinnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace spinnet {

TimeSeries ComplexSeries::real_part() const {
    TimeSeries s{times, {}, label.empty() ? "re" : label + ".re"};
    s.values.reserve(values.size());
    for (auto v : values) s.values.push_back(v.real());
    return s;
}

TimeSeries ComplexSeries::imag_part() const {
    TimeSeries s{times, {}, label.empty() ? "im" : label + ".im"};
    s.values.reserve(values.size());
    for (auto v : values) s.values.push_back(v.imag());
    return s;
}

TimeSeries ComplexSeries::modulus() const {
    TimeSeries s{times, {}, label.empty() ? "abs" : label + ".abs"};
    s.values.reserve(values.size());
    for (auto v : values) s.values.push_back(std::abs(v));
    return s;
}

TimeSeries expectation(const std::vector<double>& times,
                       const std::vector<Eigen::VectorXd>& populations, int n_nodes,
                       const std::function<double(SpinConfig)>& observable, std::string label) {
    if (times.size() != populations.size())
        throw std::invalid_argument("expectation: times and populations differ in length");
    TimeSeries out{times, {}, std::move(label)};
    out.values.reserve(times.size());
    for (const auto& p : populations) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < p.size(); ++c)
            acc += p[c] * observable({static_cast<std::uint32_t>(c), n_nodes});
        out.values.push_back(acc);
    }
    return out;
}

TimeSeries spin_spin_correlation(const std::vector<double>& times,
                                 const std::vector<Eigen::VectorXd>& populations, int n_nodes,
                                 int node_i, int node_j) {
    if (node_i == node_j)
        throw std::invalid_argument("spin_spin_correlation: i = j is identically 1");
    if (node_i < 0 || node_j < 0 || node_i >= n_nodes || node_j >= n_nodes)
        throw std::invalid_argument("spin_spin_correlation: node index out of range");
    auto series = expectation(
        times, populations, n_nodes,
        [=](SpinConfig s) { return static_cast<double>(s.spin(node_i) * s.spin(node_j)); });
    series.label = "corr_" + std::to_string(node_i) + "_" + std::to_string(node_j);
    return series;
}

ComplexSeries coherence_element(const std::vector<double>& times,
                                const std::vector<Eigen::MatrixXcd>& states) {
    if (times.size() != states.size())
        throw std::invalid_argument("coherence_element: times and states differ in length");
    ComplexSeries out{times, {}, "coherence"};
    out.values.reserve(states.size());
    for (const auto& rho : states) out.values.push_back(rho(rho.rows() - 1, 0));
    return out;
}

std::vector<Eigen::VectorXd> diagonals(const std::vector<Eigen::MatrixXcd>& states) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(states.size());
    for (const auto& rho : states) out.push_back(rho.diagonal().real());
    return out;
}

DecoherenceFit fit_decoherence(const TimeSeries& modulus) {
    const auto& t = modulus.times;
    const auto& y = modulus.values;
    if (t.size() != y.size())
        throw std::invalid_argument("fit_decoherence: malformed series");

    // window: [start, first drop below 0.5 e^-3], shrunk before any
    // non-positive value
    const double floor_level = 0.5 * std::exp(-3.0);
    std::size_t end = y.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] <= 0.0 || y[i] < floor_level) {
            end = i;
            break;
        }
    }
    if (end < 10)
        throw std::invalid_argument("fit_decoherence: fewer than 10 usable points in the window");

    // initial guess from the log-linear slope
    double st2 = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < end; ++i) {
        const double dt = t[i] - t[0];
        st2 += dt * dt;
        sty += dt * (std::log(0.5) - std::log(y[i]));
    }
    double tau = (sty > 0 && st2 > 0) ? st2 / sty : (t[end - 1] - t[0] + 1.0);
    if (!(tau > 0) || !std::isfinite(tau)) tau = t[end - 1] - t[0] + 1.0;

    // Gauss-Newton on the single parameter
    double ssr = 0.0, sjj = 0.0;
    for (int it = 0; it < 100; ++it) {
        double sjr = 0.0;
        sjj = 0.0;
        ssr = 0.0;
        for (std::size_t i = 0; i < end; ++i) {
            const double model = 0.5 * std::exp(-t[i] / tau);
            const double r = y[i] - model;
            const double jac = model * t[i] / (tau * tau);
            sjr += jac * r;
            sjj += jac * jac;
            ssr += r * r;
        }
        if (sjj == 0.0) break;
        const double step = sjr / sjj;
        tau += step;
        if (!(tau > 0) || !std::isfinite(tau))
            throw std::invalid_argument("fit_decoherence: fit diverged");
        if (std::abs(step) <= 1e-14 * tau) break;
    }

    DecoherenceFit fit;
    fit.t_decoh = tau;
    fit.window_lo = t[0];
    fit.window_hi = t[end - 1];
    fit.n_points = static_cast<int>(end);
    fit.residual_norm = std::sqrt(ssr);
    const double dof = static_cast<double>(end) - 1.0;
    fit.sigma = sjj > 0 ? std::sqrt((ssr / dof) / sjj) : 0.0;
    return fit;
}

double analytic_decoherence_time(const LindbladModel& m) {
    const double total = m.outflow(0) + m.outflow(m.dim() - 1);
    if (total <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 / total;
}

std::string parenthetical(double value, double sigma) {
    char buf[96];
    if (!(sigma > 0) || sigma < std::abs(value) * 1e-13) {
        std::snprintf(buf, sizeof buf, "%.6g(0)", value);
        return buf;
    }
    // two significant digits of sigma attached to the matching decimals
    const int exp10 = static_cast<int>(std::floor(std::log10(sigma)));
    const int decimals = std::max(0, 1 - exp10);
    const double scale = std::pow(10.0, decimals);
    const long digits = std::lround(sigma * scale);
    std::snprintf(buf, sizeof buf, "%.*f(%ld)", decimals, value, digits);
    return buf;
}

}  // namespace spinnet
