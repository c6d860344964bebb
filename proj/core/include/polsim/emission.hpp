// emission.hpp — First-order coherence: total g1 assembly, coherent-scattering
// fraction, and the ZPL/sideband decomposition of the incoherent spectrum.

#pragma once

#include <span>
#include <vector>

#include "polsim/dynamics.hpp"
#include "polsim/phonon.hpp"
#include "polsim/series.hpp"

namespace polsim::emission {

struct Spectrum {
    std::vector<double> delta_omega_grid; // ps^-1, relative to the drive frequency
    std::vector<double> total;            // = zpl + sideband pointwise
    std::vector<double> zpl;
    std::vector<double> sideband;
    double coherent_weight{0.0}; // delta-function weight at delta_omega = 0, kept off the grid
};

// The sideband transform normally uses the short-time simplification
// g0(tau) ~ g0(0); exact_product transforms the full conj(G) * g0 product
// instead (numeric on the phonon window plus the analytic exponential tail)
// and reports the difference inside the sideband column, keeping
// total = zpl + sideband intact.
enum class SpectrumMethod { simplified, exact_product };

// g1(tau) = conj(G(tau)) * g0(tau), with G held at B^2 beyond the sampled
// phonon window; Markovian mode replaces conj(G) by B^2 throughout
CorrelationSeries g1_total(const CorrelationSeries& g0,
                           const phonon::PhononCorrelations& pc,
                           bool markovian);

// long-delay plateau of g1 over its zero-delay value:
// non-Markovian B^2 |<s>|^2 / <s^dag s>, Markovian |<s>|^2 / <s^dag s>
double coherent_fraction(const dynamics::Liouvillian& liouvillian,
                         const dynamics::DensityOperator& rho_ss,
                         const phonon::PhononCorrelations& pc,
                         bool markovian);

// zpl      = B^2 Re[half-line Fourier of (g0(tau) - |<s>|^2)]
// sideband = Re[g0(0) int_0^inf (conj(G(tau)) - B^2) e^{i dw tau} dtau]
// Markovian mode zeroes the sideband. The coherent component is returned as
// a scalar weight, never binned onto the grid.
Spectrum incoherent_spectrum(const dynamics::Liouvillian& liouvillian,
                             const dynamics::DensityOperator& rho_ss,
                             const phonon::PhononCorrelations& pc,
                             bool markovian,
                             std::span<const double> delta_omega_grid,
                             SpectrumMethod method = SpectrumMethod::simplified);

// fraction of emitted power routed through the phonon sideband, 1 - B^2
double sideband_power_fraction(const phonon::PhononEnvironment& env);

} // namespace polsim::emission
