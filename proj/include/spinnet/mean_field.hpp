// mean_field.hpp — reduced (N+1)-state birth-death dynamics over the up-spin count

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "spinnet/analysis.hpp"
#include "spinnet/bath.hpp"
#include "spinnet/dynamics.hpp"
#include "spinnet/graph.hpp"
#include "spinnet/spin_model.hpp"

namespace spinnet {

/// Reduced model: N spins with an effective coordination number z standing in
/// for the network. z defaults to the mean degree of a reference graph and
/// must satisfy 0 < z <= N - 1.
struct MeanFieldModel {
    int n_nodes = 0;
    double z = 0.0;
    ModelParams params;
    BathSpec bath;

    void validate() const;

    static MeanFieldModel for_graph(const Graph& g, const ModelParams& p, const BathSpec& b);
};

/// Level energy E_n = -(z J / 2N) (N_up - N_down)^2 - h (N_up - N_down).
double mf_energy(const MeanFieldModel& m, int n_up);

struct MfPairCounts {
    double up_up = 0.0;
    double down_down = 0.0;
    double up_down = 0.0;
};

/// Closure pair counts: N_uu = z n^2 / 2N, N_dd = z (N-n)^2 / 2N,
/// N_ud = z n (N-n) / N; they sum to z N / 2 (the effective edge count).
/// Real-valued by construction; no rounding.
MfPairCounts mf_pair_counts(const MeanFieldModel& m, int n_up);

/// Per-spin transfer rates between adjacent levels. up[n] is the rate of one
/// down spin flipping up at level n (n = 0..N-1); down[n] is the rate of one
/// up spin flipping down at level n (n = 1..N). Both follow the bath
/// convention on the level energy gaps, so detailed balance carries over.
struct MfRates {
    std::vector<double> up;
    std::vector<double> down;
};

MfRates mf_rates(const MeanFieldModel& m);

/// Generator of the reduced chain: Q(n', n) with combinatorial multiplicities
///   Pdot_n = (N-n+1) W(n, n-1) P_{n-1} + (n+1) W(n, n+1) P_{n+1}
///          - [n W(n-1, n) + (N-n) W(n+1, n)] P_n
Eigen::MatrixXd mf_generator(const MeanFieldModel& m);

using MfSink = std::function<void(std::size_t index, double t, const Eigen::VectorXd& P)>;

/// Integrate the reduced master equation with the adaptive integrator.
void mf_propagate(const MeanFieldModel& m, const Eigen::VectorXd& P0, const TimeGrid& grid,
                  double tol, const MfSink& sink);
std::vector<Eigen::VectorXd> mf_propagate(const MeanFieldModel& m, const Eigen::VectorXd& P0,
                                          const TimeGrid& grid, double tol = kDefaultTolerance);

/// Stationary distribution of the reduced chain by a null-space solve of the
/// generator (not the closed form, so the two can be cross-checked).
Eigen::VectorXd mf_stationary(const MeanFieldModel& m);

struct MfObservables {
    TimeSeries up_fraction;
    TimeSeries down_fraction;
    TimeSeries uu_fraction;   // pair fractions normalized by z N / 2
    TimeSeries dd_fraction;
    TimeSeries ud_fraction;
    TimeSeries magnetization;  // mean (N_up - N_down)
};

MfObservables mf_observables(const MeanFieldModel& m, const std::vector<double>& times,
                             const std::vector<Eigen::VectorXd>& distributions);

/// Per-node local spin average from an exact run:
///   sbar_i(t) = sum_sigma p_sigma(t) (1/k_i) sum_j A_ij s_j
/// plus the global magnetization M(t)/N for comparison. Rejects isolated
/// nodes (k_i = 0).
struct LocalMagnetization {
    std::vector<double> times;
    Eigen::MatrixXd per_node;  // n_samples x N
    std::vector<double> global;
};

LocalMagnetization local_magnetization(const std::vector<double>& times,
                                       const std::vector<Eigen::VectorXd>& populations,
                                       const Graph& g);

}  // namespace spinnet
