// analysis.hpp — observables over sampled states and decoherence-time fits

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spinnet/lindblad_model.hpp"

namespace spinnet {

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;
};

struct ComplexSeries {
    std::vector<double> times;
    std::vector<std::complex<double>> values;
    std::string label;

    TimeSeries real_part() const;
    TimeSeries imag_part() const;
    TimeSeries modulus() const;
};

/// <O>(t) = sum_sigma p_sigma(t) O(sigma) for a diagonal observable.
/// `populations` holds the diagonal of the density matrix at each time.
TimeSeries expectation(const std::vector<double>& times,
                       const std::vector<Eigen::VectorXd>& populations, int n_nodes,
                       const std::function<double(SpinConfig)>& observable,
                       std::string label = {});

/// <s_i s_j>(t) between two distinct nodes.
TimeSeries spin_spin_correlation(const std::vector<double>& times,
                                 const std::vector<Eigen::VectorXd>& populations, int n_nodes,
                                 int node_i, int node_j);

/// The GHZ coherence rho_{all-up, all-down}(t).
ComplexSeries coherence_element(const std::vector<double>& times,
                                const std::vector<Eigen::MatrixXcd>& states);

/// Extract populations (real diagonals) from sampled states.
std::vector<Eigen::VectorXd> diagonals(const std::vector<Eigen::MatrixXcd>& states);

struct DecoherenceFit {
    double t_decoh = 0.0;
    double sigma = 0.0;   // 1-sigma uncertainty from the linearized covariance
    double window_lo = 0.0;
    double window_hi = 0.0;
    double residual_norm = 0.0;
    int n_points = 0;
};

/// Least-squares fit of 0.5 exp(-t / tau) to a coherence-modulus series.
/// The fit window is [start, first drop below 0.5 e^-3] (whole series if the
/// level is never reached) and shrinks before any non-positive value. Needs
/// at least 10 points in the window.
DecoherenceFit fit_decoherence(const TimeSeries& modulus);

/// Closed-form decay time of the GHZ coherence, tau = 2 / (Gamma_up + Gamma_down),
/// from the channel outflows of the two aligned configurations. Infinite when
/// both outflows vanish.
double analytic_decoherence_time(const LindbladModel& m);

/// "1.9083(51)"-style formatting: 1-sigma uncertainty on the last digits.
std::string parenthetical(double value, double sigma);

}  // namespace spinnet
