// spin_model.hpp — Ising configurations on a graph: energies, counts, Gibbs weights

#pragma once

#include <bit>
#include <cstdint>

#include <Eigen/Core>

#include "spinnet/graph.hpp"

namespace spinnet {

/// Operations that materialize all 2^N configurations refuse larger N; use
/// the mean-field reduction instead.
inline constexpr int kMaxEnumerationNodes = 20;

/// One of the 2^N basis configurations, encoded as an N-bit word.
/// Bit i set means node i is spin-up (+1); clear means spin-down (-1).
/// The word doubles as the basis index of the configuration everywhere
/// downstream, so flips are XORs and Hamming distances are popcounts.
struct SpinConfig {
    std::uint32_t bits = 0;
    int n_nodes = 0;

    int spin(int node) const { return (bits >> node) & 1u ? +1 : -1; }
    SpinConfig flipped(int node) const { return {bits ^ (1u << node), n_nodes}; }
    SpinConfig complement() const {
        const std::uint32_t mask = (n_nodes >= 32) ? ~0u : ((1u << n_nodes) - 1u);
        return {bits ^ mask, n_nodes};
    }
    int popcount() const { return std::popcount(bits); }

    static SpinConfig all_down(int n) { return {0u, n}; }
    static SpinConfig all_up(int n) {
        const std::uint32_t mask = (n >= 32) ? ~0u : ((1u << n) - 1u);
        return {mask, n};
    }
};

/// Uniform coupling and field, in the same energy units as bath frequencies.
struct ModelParams {
    double coupling = 0.0;  // J, edge coupling; positive favors alignment
    double field = 0.0;     // h, uniform external field along z
};

struct NodeCounts {
    int up = 0;
    int down = 0;
};

struct EdgeCounts {
    int up_up = 0;
    int down_down = 0;
    int up_down = 0;
};

/// Ising energy of a configuration:
///   E = -J * sum_{edges (i,j)} s_i s_j - h * sum_i s_i,   s_i in {+1,-1}.
double config_energy(const Graph& g, const ModelParams& p, SpinConfig s);

/// (N_up, N_down); N_up + N_down = N.
NodeCounts node_counts(SpinConfig s);

/// Edge counts by endpoint spins; up_up + down_down + up_down = L, and
///   E = -J (N_uu + N_dd - N_ud) - h (N_up - N_down)
/// reproduces config_energy exactly.
EdgeCounts edge_counts(const Graph& g, SpinConfig s);

/// m = N_up - N_down.
int magnetization(SpinConfig s);

/// Thermal weights pi(sigma) = exp(-beta E(sigma)) / Z over all 2^N
/// configurations, indexed by configuration word. The minimum energy is
/// subtracted before exponentiation so large beta cannot overflow.
Eigen::VectorXd gibbs_distribution(const Graph& g, const ModelParams& p, double beta);

}  // namespace spinnet
