// lindblad_model.hpp — the dissipative generator assembled from graph, spins, and bath

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "spinnet/bath.hpp"
#include "spinnet/graph.hpp"
#include "spinnet/spin_model.hpp"

namespace spinnet {

/// One bath-induced transition: a single spin flip at `node` taking the
/// configuration `from` to `to` (Hamming distance 1). The rate is the bath
/// flip rate evaluated at the energy change E(to) - E(from); forward and
/// reverse channels satisfy detailed balance.
struct TransitionChannel {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    int node = 0;
    double rate = 0.0;
};

/// Immutable dissipative model over the 2^N configuration basis. The system
/// Hamiltonian is diagonal (the Ising energies); dissipation is one weighted
/// jump operator per node and flip direction, so the populations follow the
/// classical Pauli master equation and every coherence decays at half the sum
/// of the two connected outflow rates, plus mirror-flip feed terms.
class LindbladModel {
public:
    static LindbladModel build(const Graph& g, const ModelParams& p, const BathSpec& b);

    int n_nodes() const { return n_; }
    std::uint32_t dim() const { return dim_; }
    const Graph& graph() const { return graph_; }
    const ModelParams& params() const { return params_; }
    const BathSpec& bath() const { return bath_; }

    /// E(sigma) for every configuration word sigma.
    const std::vector<double>& energies() const { return energy_; }
    double energy(std::uint32_t cfg) const { return energy_[cfg]; }

    /// All N * 2^N channels, sorted by `from`, then node.
    const std::vector<TransitionChannel>& channels() const { return channels_; }

    /// Total outflow Gamma_sigma = sum of rates of channels leaving sigma.
    const std::vector<double>& outflows() const { return outflow_; }
    double outflow(std::uint32_t cfg) const { return outflow_[cfg]; }

    /// Rate of the channel leaving `cfg` by flipping `node`.
    double out_rate(std::uint32_t cfg, int node) const {
        return out_rate_[std::size_t(cfg) * n_ + std::size_t(node)];
    }

    /// sqrt of the rate of the channel arriving at `cfg` by flipping `node`.
    double in_amplitude(std::uint32_t cfg, int node) const {
        return in_amp_[std::size_t(cfg) * n_ + std::size_t(node)];
    }

    /// Action of the full generator on a density matrix:
    ///   d rho / dt = -i [H, rho] + sum_c rate_c (L_c rho L_c^+ - 1/2 {L_c^+ L_c, rho})
    /// evaluated matrix-free in the configuration basis:
    ///   d rho_ab = [-i (E_a - E_b) - (Gamma_a + Gamma_b) / 2] rho_ab
    ///            + sum_{n : a_n == b_n} sqrt(r(a xor n -> a) r(b xor n -> b)) rho_{a xor n, b xor n}
    void apply_generator(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const;
    Eigen::MatrixXcd apply_generator(const Eigen::MatrixXcd& rho) const;

    /// Classical rate matrix on the diagonal sector: W(to, from) = channel
    /// rate, W(s, s) = -Gamma_s. Columns sum to zero; the stationary vector is
    /// proportional to the Gibbs weights.
    Eigen::MatrixXd pauli_rate_matrix() const;

private:
    LindbladModel(Graph g, ModelParams p, BathSpec b);

    Graph graph_;
    ModelParams params_;
    BathSpec bath_;
    int n_ = 0;
    std::uint32_t dim_ = 0;
    std::vector<double> energy_;
    std::vector<TransitionChannel> channels_;
    std::vector<double> outflow_;
    std::vector<double> out_rate_;  // [cfg * N + node]
    std::vector<double> in_amp_;    // [cfg * N + node]
};

}  // namespace spinnet
