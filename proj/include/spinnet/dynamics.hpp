// dynamics.hpp — initial states and deterministic master-equation propagation

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "spinnet/lindblad_model.hpp"
#include "spinnet/rk45.hpp"

namespace spinnet {

/// Propagation window with explicit sample times.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<double> samples;

    static TimeGrid uniform(double t0, double t1, int n_samples);
    void validate() const;
};

Eigen::VectorXcd basis_state(SpinConfig s);

/// (|all-up> + |all-down>) / sqrt(2) on N >= 2 nodes. Its density matrix has
/// four entries of modulus 1/2; the surviving off-diagonal pair is the
/// tracked coherence.
Eigen::VectorXcd ghz_state(int n_nodes);

Eigen::MatrixXcd pure_density(const Eigen::VectorXcd& psi);

/// Default horizon for decoherence runs: five analytic decay times (capped to
/// [1, 200] to keep degenerate cases usable), 400 samples.
double default_horizon(const LindbladModel& m);
inline constexpr int kDefaultSampleCount = 400;
inline constexpr double kDefaultTolerance = 1e-10;

using SampleSink = std::function<void(std::size_t index, double t, const Eigen::MatrixXcd& rho)>;

/// Invariant drift over one propagation, measured on the raw integrator state
/// before output symmetrization.
struct PropagationReport {
    double max_trace_drift = 0.0;
    double max_hermiticity_defect = 0.0;
};

/// Integrate d rho/dt = L[rho] with adaptive error control `tol` (used as both
/// absolute and relative tolerance) and hand each sampled state to `sink`.
/// Sampled states are re-Hermitized, (rho + rho^+)/2, at output only.
/// Throws IntegrationError on step failure.
PropagationReport propagate_master(const LindbladModel& m, const Eigen::MatrixXcd& rho0,
                                   const TimeGrid& grid, double tol, const SampleSink& sink);

/// Convenience overload collecting the sampled states.
std::vector<Eigen::MatrixXcd> propagate_master(const LindbladModel& m, const Eigen::MatrixXcd& rho0,
                                               const TimeGrid& grid,
                                               double tol = kDefaultTolerance);

}  // namespace spinnet
