// phonon.hpp — Phonon environment: spectral density, displacement factor B,
// short-time bath correlation functions, and the polaron master-equation
// rates they induce.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "polsim/numerics.hpp"

namespace polsim::phonon {

// k_B/hbar in ps^-1 per kelvin; converts temperature to an inverse
// correlation time beta = 1/(k_over_hbar * T)
inline constexpr double k_over_hbar = 0.1309;

struct PhononEnvironment {
    double alpha{0.03};      // coupling strength, ps^2
    double nu_c{2.2};        // cutoff frequency, ps^-1
    double temperature{4.0}; // kelvin
};

struct PolaronQuantities {
    double B{1.0};                        // displacement factor, in (0, 1]
    double omega_r{0.0};                  // renormalized Rabi frequency omega * B, ps^-1
    std::complex<double> gamma_x{0.0, 0.0}; // ps^-1
    std::complex<double> chi_y{0.0, 0.0};   // ps^-1
    std::complex<double> chi_z{0.0, 0.0};   // ps^-1
};

struct PhononCorrelations {
    std::vector<double> tau_grid;            // ps, uniform, starting at 0
    std::vector<std::complex<double>> phi;
    std::vector<std::complex<double>> G;     // B^2 exp(+phi)
    std::vector<std::complex<double>> C;     // B^2 exp(-phi)
    std::vector<std::complex<double>> Gcal;  // exp(phi - phi*), unit modulus
};

// J(nu) = alpha nu^3 exp(-nu^2/nu_c^2); negative nu is a domain error
double spectral_density(double nu, const PhononEnvironment& env);

// B = exp[-1/2 integral_0^inf J(nu)/nu^2 coth(beta nu/2) dnu]; exactly 1 for
// alpha = 0, and coth == 1 exactly at T = 0
double displacement_factor(const PhononEnvironment& env);

// uniform grid [0, tau_max] used for the short-time correlation functions
std::vector<double> default_phonon_grid(double tau_max = 20.0, double step = 0.005);

// Samples phi(tau) = integral J/nu^2 (coth(beta nu/2) cos(nu tau) - i sin(nu tau)) dnu
// on the given grid and derives G, C and Gcal from it. The grid must be
// uniform with spacing <= 0.01 ps and span >= 20/nu_c.
PhononCorrelations phonon_correlations(const PhononEnvironment& env,
                                       std::span<const double> tau_grid);

// B^2 consistent with the sampled correlations: exp(-Re phi(0)), so that
// G(0) == 1 holds to machine precision
double b_squared(const PhononCorrelations& pc);

// Cached integrand samples for the rate integrals. The Lambda functions are
// drive-independent, so a sweep over Omega can reuse one kernel.
struct RateKernel {
    double tau_step{0.0};
    double B{1.0};
    std::vector<std::complex<double>> lambda_xx; // B^2 (e^{phi} + e^{-phi} - 2)/2
    std::vector<std::complex<double>> lambda_yy; // B^2 (e^{phi} - e^{-phi})/2
};

RateKernel make_rate_kernel(const PhononEnvironment& env);

// gamma_x = (W/2)^2 int Lambda_xx dtau
// chi_y   = (W/2)^2 int cos(omega_r tau) Lambda_yy dtau
// chi_z   = (W/2)^2 int sin(omega_r tau) Lambda_yy dtau
// with W the bare Rabi frequency and omega_r = W * B
PolaronQuantities rates_from_kernel(const RateKernel& kernel, double omega);

PolaronQuantities polaron_rates(const PhononEnvironment& env, double omega);

} // namespace polsim::phonon
