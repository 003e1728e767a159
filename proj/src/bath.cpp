#include "spinnet/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinnet {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void BathSpec::validate() const {
    if (!(eta > 0)) throw std::invalid_argument("bath: eta must be positive");
    if (!(omega_c > 0)) throw std::invalid_argument("bath: omega_c must be positive");
    if (!(beta > 0)) throw std::invalid_argument("bath: beta must be positive");
}

double spectral_density(const BathSpec& b, double omega) {
    const double w = std::abs(omega);
    double j = 0.0;
    switch (b.cutoff) {
        case CutoffKind::Exponential:
            j = b.eta * w * std::exp(-w / b.omega_c);
            break;
        case CutoffKind::DrudeLorentz:
            j = b.eta * w * b.omega_c / (w * w + b.omega_c * b.omega_c);
            break;
    }
    return omega < 0 ? -j : j;
}

double bose_occupation(double beta, double omega) {
    if (omega == 0.0) throw std::invalid_argument("bose_occupation: diverges at omega = 0");
    // expm1 keeps precision for small beta*omega and the identity
    // nbar(-w) = -(nbar(w) + 1) exact to rounding.
    return 1.0 / std::expm1(beta * omega);
}

double flip_rate(const BathSpec& b, double omega) {
    if (omega == 0.0)
        throw std::invalid_argument("flip_rate: omega = 0 is degenerate; use zero_frequency_rate");
    if (omega > 0) return kTwoPi * spectral_density(b, omega) * bose_occupation(b.beta, omega);
    const double w = -omega;
    return kTwoPi * spectral_density(b, w) * (bose_occupation(b.beta, w) + 1.0);
}

double zero_frequency_rate(const BathSpec& b) {
    switch (b.cutoff) {
        case CutoffKind::Exponential:
            return kTwoPi * b.eta / b.beta;
        case CutoffKind::DrudeLorentz:
            return kTwoPi * b.eta / (b.beta * b.omega_c);
    }
    return 0.0;  // unreachable
}

double flip_rate_or_limit(const BathSpec& b, double omega) {
    return omega == 0.0 ? zero_frequency_rate(b) : flip_rate(b, omega);
}

}  // namespace spinnet
