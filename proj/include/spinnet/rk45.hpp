// rk45.hpp — adaptive Dormand-Prince 5(4) integrator over Eigen vectors

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace spinnet {

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rk45Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 100'000'000;
};

/// Integrate y' = rhs(y) from t0 to t1 with embedded 4th/5th order error
/// control. `rhs(y, dy)` must write the derivative of y into dy. Sample times
/// must be increasing and lie in [t0, t1]; each is hit exactly by clamping the
/// step, and `on_sample(index, t, y)` is invoked there. Autonomous form is all
/// the callers need; time never enters the right-hand sides here.
template <class Vec, class Rhs, class Sampler>
void integrate_rk45(Rhs&& rhs, Vec& y, double t0, double t1,
                    std::span<const double> sample_times, Sampler&& on_sample,
                    const Rk45Options& opt = {}) {
    // Dormand-Prince coefficients (FSAL pair).
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // y5 - y4 error weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (!(t1 >= t0)) throw std::invalid_argument("integrate_rk45: t1 < t0");
    double t = t0;
    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
        on_sample(next_sample, t0, y);
        ++next_sample;
    }
    if (t1 == t0) return;

    Vec k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()), k6(y.size()),
        k7(y.size()), y_new(y.size()), err(y.size());
    rhs(y, k1);

    // initial step from the scale of y and y'
    const double span = t1 - t0;
    double h;
    {
        const double ny = y.cwiseAbs().maxCoeff() + opt.abs_tol;
        const double nf = k1.cwiseAbs().maxCoeff();
        h = nf > 0 ? 0.01 * ny / nf : 1e-3 * span;
        h = std::min({h, span, opt.max_step});
    }

    const double h_floor = span * 1e-14;
    long steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps)
            throw IntegrationError("integrate_rk45: exceeded " + std::to_string(opt.max_steps) +
                                   " steps at t = " + std::to_string(t));
        h = std::min({h, opt.max_step, t1 - t});
        if (next_sample < sample_times.size())
            h = std::min(h, sample_times[next_sample] - t);
        if (!(h > h_floor))
            throw IntegrationError("integrate_rk45: step size underflow at t = " +
                                   std::to_string(t));

        y_new = y + (h * a21) * k1;
        rhs(y_new, k2);
        y_new = y + h * (a31 * k1 + a32 * k2);
        rhs(y_new, k3);
        y_new = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(y_new, k4);
        y_new = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(y_new, k5);
        y_new = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(y_new, k6);
        y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(y_new, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        // scaled max-norm error against mixed absolute/relative tolerance;
        // the max norm keeps every component honest even when most of the
        // state sits near zero
        double err_norm = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale =
                opt.abs_tol +
                opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err_norm = std::max(err_norm, std::abs(err[i]) / scale);
        }

        if (err_norm <= 1.0) {
            t += h;
            y.swap(y_new);
            k1.swap(k7);  // FSAL
            while (next_sample < sample_times.size() &&
                   sample_times[next_sample] <= t + h_floor) {
                on_sample(next_sample, sample_times[next_sample], y);
                ++next_sample;
            }
        }
        const double factor =
            err_norm > 0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    while (next_sample < sample_times.size()) {  // samples at t1 within rounding
        on_sample(next_sample, sample_times[next_sample], y);
        ++next_sample;
    }
}

}  // namespace spinnet
