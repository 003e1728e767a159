#include "spinnet/spin_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinnet {

namespace {

void check_size(const Graph& g, SpinConfig s, const char* who) {
    if (s.n_nodes != g.n_nodes())
        throw std::invalid_argument(std::string(who) + ": configuration has " +
                                    std::to_string(s.n_nodes) + " nodes, graph has " +
                                    std::to_string(g.n_nodes()));
}

}  // namespace

double config_energy(const Graph& g, const ModelParams& p, SpinConfig s) {
    check_size(g, s, "config_energy");
    long pair_sum = 0;
    for (auto [i, j] : g.edges()) pair_sum += s.spin(i) * s.spin(j);
    return -p.coupling * static_cast<double>(pair_sum) -
           p.field * static_cast<double>(magnetization(s));
}

NodeCounts node_counts(SpinConfig s) {
    const int up = s.popcount();
    return {up, s.n_nodes - up};
}

EdgeCounts edge_counts(const Graph& g, SpinConfig s) {
    check_size(g, s, "edge_counts");
    EdgeCounts c;
    for (auto [i, j] : g.edges()) {
        const bool ui = s.spin(i) > 0;
        const bool uj = s.spin(j) > 0;
        if (ui && uj)
            ++c.up_up;
        else if (!ui && !uj)
            ++c.down_down;
        else
            ++c.up_down;
    }
    return c;
}

int magnetization(SpinConfig s) {
    return 2 * s.popcount() - s.n_nodes;
}

Eigen::VectorXd gibbs_distribution(const Graph& g, const ModelParams& p, double beta) {
    if (!(beta > 0)) throw std::invalid_argument("gibbs_distribution: beta must be positive");
    if (!std::isfinite(p.coupling) || !std::isfinite(p.field))
        throw std::invalid_argument("gibbs_distribution: coupling and field must be finite");
    const int n = g.n_nodes();
    if (n > kMaxEnumerationNodes)
        throw std::invalid_argument(
            "gibbs_distribution: " + std::to_string(n) + " nodes exceeds the enumeration cap of " +
            std::to_string(kMaxEnumerationNodes) + "; use the mean-field reduction");
    const std::uint32_t dim = 1u << n;
    Eigen::VectorXd energy(dim);
    double e_min = std::numeric_limits<double>::infinity();
    for (std::uint32_t c = 0; c < dim; ++c) {
        energy[c] = config_energy(g, p, {c, n});
        e_min = std::min(e_min, energy[c]);
    }
    Eigen::VectorXd w(dim);
    for (std::uint32_t c = 0; c < dim; ++c) w[c] = std::exp(-beta * (energy[c] - e_min));
    return w / w.sum();
}

}  // namespace spinnet
