// trajectories.hpp — Monte Carlo wave-function unraveling of the master equation

#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "spinnet/dynamics.hpp"
#include "spinnet/lindblad_model.hpp"

namespace spinnet {

/// Number of trajectories and the seed of the RNG-stream family. Stream i is
/// derived deterministically from (seed, i), so the same plan on the same
/// grid yields bitwise-identical aggregates, independent of worker count.
struct TrajectoryPlan {
    int n_trajectories = 0;
    std::uint64_t seed = 0;
};

struct TrajectoryStats {
    std::vector<double> times;
    Eigen::MatrixXd mean;       // n_samples x 2^N population estimates
    Eigen::MatrixXd std_error;  // matching sample standard errors of the mean
    int n_trajectories = 0;
    std::uint64_t total_jumps = 0;
};

/// Quantum-jump sampling. The effective Hamiltonian is diagonal
/// (E_sigma - i Gamma_sigma / 2), so no-jump evolution is closed-form
/// branch-amplitude decay, jump times are drawn by exact inversion of the
/// survival function (a finite mixture of exponentials), and jump channels
/// are drawn proportionally to rate times source population. A trajectory
/// started in a basis state is exactly a continuous-time Markov chain path
/// over configurations.
TrajectoryStats run_trajectories(const LindbladModel& m, const Eigen::VectorXcd& psi0,
                                 const TimeGrid& grid, const TrajectoryPlan& plan,
                                 int n_workers = 1);

}  // namespace spinnet
