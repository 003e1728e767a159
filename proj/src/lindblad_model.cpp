#include "spinnet/lindblad_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinnet {

LindbladModel::LindbladModel(Graph g, ModelParams p, BathSpec b)
    : graph_(std::move(g)), params_(p), bath_(b) {}

LindbladModel LindbladModel::build(const Graph& g, const ModelParams& p, const BathSpec& b) {
    b.validate();
    if (!std::isfinite(p.coupling) || !std::isfinite(p.field))
        throw std::invalid_argument("LindbladModel: coupling and field must be finite");
    const int n = g.n_nodes();
    if (n > kMaxEnumerationNodes)
        throw std::invalid_argument(
            "LindbladModel: " + std::to_string(n) + " nodes exceeds the enumeration cap of " +
            std::to_string(kMaxEnumerationNodes) + "; use the mean-field reduction");

    LindbladModel m(g, p, b);
    m.n_ = n;
    m.dim_ = 1u << n;

    m.energy_.resize(m.dim_);
    for (std::uint32_t c = 0; c < m.dim_; ++c) m.energy_[c] = config_energy(g, p, {c, n});

    m.channels_.reserve(std::size_t(m.dim_) * n);
    m.outflow_.assign(m.dim_, 0.0);
    m.out_rate_.assign(std::size_t(m.dim_) * n, 0.0);
    m.in_amp_.assign(std::size_t(m.dim_) * n, 0.0);

    for (std::uint32_t from = 0; from < m.dim_; ++from) {
        for (int node = 0; node < n; ++node) {
            const std::uint32_t to = from ^ (1u << node);
            const double gap = m.energy_[to] - m.energy_[from];
            const double rate = flip_rate_or_limit(b, gap);
            m.channels_.push_back({from, to, node, rate});
            m.outflow_[from] += rate;
            m.out_rate_[std::size_t(from) * n + node] = rate;
            m.in_amp_[std::size_t(to) * n + node] = std::sqrt(rate);
        }
    }
    return m;
}

void LindbladModel::apply_generator(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("apply_generator: density matrix has dimension " +
                                    std::to_string(rho.rows()) + ", model expects " +
                                    std::to_string(d));
    out.resize(d, d);
    for (std::uint32_t b = 0; b < dim_; ++b) {
        const double* amp_b = &in_amp_[std::size_t(b) * n_];
        for (std::uint32_t a = 0; a < dim_; ++a) {
            const double* amp_a = &in_amp_[std::size_t(a) * n_];
            std::complex<double> acc =
                std::complex<double>(-0.5 * (outflow_[a] + outflow_[b]),
                                     -(energy_[a] - energy_[b])) *
                rho(a, b);
            const std::uint32_t same = ~(a ^ b);
            for (int node = 0; node < n_; ++node) {
                if (!((same >> node) & 1u)) continue;
                const double w = amp_a[node] * amp_b[node];
                if (w != 0.0) acc += w * rho(a ^ (1u << node), b ^ (1u << node));
            }
            out(a, b) = acc;
        }
    }
}

Eigen::MatrixXcd LindbladModel::apply_generator(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out;
    apply_generator(rho, out);
    return out;
}

Eigen::MatrixXd LindbladModel::pauli_rate_matrix() const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
    for (const auto& ch : channels_) w(ch.to, ch.from) += ch.rate;
    for (std::uint32_t c = 0; c < dim_; ++c) w(c, c) = -outflow_[c];
    return w;
}

}  // namespace spinnet
