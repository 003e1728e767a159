// bath.hpp — Ohmic bath spectral densities and the thermal spin-flip rate

#pragma once

namespace spinnet {

enum class CutoffKind { Exponential, DrudeLorentz };

/// Bosonic bath parameters. All three scales are strictly positive.
struct BathSpec {
    double eta = 0.0;      // spectral strength (dimensionless damping)
    double omega_c = 0.0;  // high-frequency cutoff
    CutoffKind cutoff = CutoffKind::Exponential;
    double beta = 0.0;     // inverse temperature

    void validate() const;
};

/// Ohmic spectral density with the chosen high-frequency cutoff, extended to
/// negative frequencies as an odd function:
///   Exponential:   J(w) = eta * w * exp(-w / omega_c)        for w >= 0
///   Drude-Lorentz: J(w) = eta * w * omega_c / (w^2 + omega_c^2)
double spectral_density(const BathSpec& b, double omega);

/// Bose-Einstein occupation 1 / (exp(beta * omega) - 1). Rejects omega == 0.
double bose_occupation(double beta, double omega);

/// Bath-induced flip rate for a transition with system energy change
/// omega = E(final) - E(initial):
///   omega > 0 (absorption): 2 pi J(omega) nbar(omega)
///   omega < 0 (emission):   2 pi J(|omega|) (nbar(|omega|) + 1)
/// These satisfy detailed balance, rate(w) = exp(-beta w) rate(-w), and drive
/// the chain to the Gibbs distribution. Rejects omega == 0; degenerate flips
/// take zero_frequency_rate instead.
double flip_rate(const BathSpec& b, double omega);

/// Continuous omega -> 0 limit of the flip rate, used for degenerate flips
/// (possible at h = 0 on balanced neighborhoods). Both directions share the
/// limit 2 pi J'(0) / beta: 2 pi eta / beta for the exponential cutoff,
/// 2 pi eta / (beta omega_c) for Drude-Lorentz.
double zero_frequency_rate(const BathSpec& b);

/// flip_rate with the omega == 0 case resolved by zero_frequency_rate.
double flip_rate_or_limit(const BathSpec& b, double omega);

}  // namespace spinnet
