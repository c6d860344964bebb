// dynamics.hpp — Polaron-frame Liouvillian assembly, steady state, time
// evolution, and quantum-regression correlators for the driven two-level
// emitter.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polsim/numerics.hpp"
#include "polsim/phonon.hpp"
#include "polsim/series.hpp"

namespace polsim::dynamics {

struct DriveConfig {
    double omega{0.01};         // bare Rabi frequency, ps^-1
    double gamma{1.0 / 700.0};  // spontaneous emission rate, ps^-1
    double detuning_tilde{0.0}; // polaron-shifted detuning, ps^-1; 0 on every standard path
};

// 2x2 complex matrix in the basis {|0>, |X>}; Hermitian, unit trace, PSD
using DensityOperator = Eigen::Matrix2cd;

// 4x4 generator acting on column-stacked density operators with the fixed
// vectorization order (rho_00, rho_X0, rho_0X, rho_XX)
using Liouvillian = Eigen::Matrix4cd;

// -------------------------- operator conventions ----------------------------
// sigma = |0><X|, sigma_x = sigma + sigma^dag, sigma_y = i(sigma - sigma^dag),
// sigma_z = sigma^dag sigma - sigma sigma^dag = diag(-1, +1)

Eigen::Matrix2cd sigma();
Eigen::Matrix2cd sigma_dag();
Eigen::Matrix2cd sigma_x();
Eigen::Matrix2cd sigma_y();
Eigen::Matrix2cd sigma_z();
Eigen::Matrix2cd identity2();

Eigen::Vector4cd vec(const Eigen::Matrix2cd& m);
Eigen::Matrix2cd unvec(const Eigen::Vector4cd& v);

// superoperators for left/right multiplication on vectorized operators
Eigen::Matrix4cd lmul(const Eigen::Matrix2cd& a); // vec(a rho)
Eigen::Matrix4cd rmul(const Eigen::Matrix2cd& b); // vec(rho b)

// ------------------------------- operations ---------------------------------

// L = L_coh + L_PH + L_EM with
//   L_coh = -i [dt sigma^dag sigma + (omega_r/2) sigma_x, .]
//   L_PH  = -([sx, sx .] Gx + [sy, sy .] chi_y + [sy, sz .] chi_z + h.c.)
//   L_EM  = (gamma/2)(2 sigma . sigma^dag - {sigma^dag sigma, .})
// The (omega/2)^2 interaction prefactor is already folded into the rates.
// Rejects pq inconsistent with the drive (pq.omega_r != omega * B) and
// nonzero detuning unless explicitly allowed.
Liouvillian build_liouvillian(const DriveConfig& drive,
                              const phonon::PolaronQuantities& pq,
                              bool allow_nonzero_detuning = false);

// Unique kernel element with unit trace, Hermitized and verified PSD.
// Throws if the kernel is not one-dimensional (gamma = 0 edge).
DensityOperator steady_state(const Liouvillian& liouvillian);

// rho(t) = e^{Lt} rho0 on an ascending time grid via the spectral form, or a
// dense matrix exponential when the generator is defective
std::vector<DensityOperator> evolve_density(const Liouvillian& liouvillian,
                                            const DensityOperator& rho0,
                                            std::span<const double> t_grid);

// f(tau) = tr(observable e^{L tau}[pre_op rho_ss post_op]) as a closed-form
// exponential sum over the Liouvillian eigenvalues. Covers both regression
// shapes: <A(t)B(t+tau)> with pre = 1, post = A, and <A(t)B(t+tau)C(t)> with
// pre = C, post = A. Requires a diagonalizable generator.
numerics::ExponentialSum regression_exponential_sum(const Liouvillian& liouvillian,
                                                    const DensityOperator& rho_ss,
                                                    const Eigen::Matrix2cd& pre_op,
                                                    const Eigen::Matrix2cd& post_op,
                                                    const Eigen::Matrix2cd& observable);

// same correlator sampled on a grid; falls back to dense exponentials for a
// defective generator
CorrelationSeries regression_correlator(const Liouvillian& liouvillian,
                                        const DensityOperator& rho_ss,
                                        const Eigen::Matrix2cd& pre_op,
                                        const Eigen::Matrix2cd& post_op,
                                        const Eigen::Matrix2cd& observable,
                                        std::span<const double> tau_grid);

// ---------------------------------- grids -----------------------------------

// {0} followed by geometric spacing from 0.001 ps out to 10/gamma
std::vector<double> default_optical_grid(double gamma, std::size_t points = 2000);

// sorted union, collapsing near-duplicates
std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b);

} // namespace polsim::dynamics
