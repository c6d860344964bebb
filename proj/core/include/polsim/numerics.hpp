// numerics.hpp — Shared numerical kernels: adaptive semi-infinite quadrature,
// Liouvillian eigendecomposition, half-line Fourier transforms of exponential
// sums, and Gaussian detector convolution.

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace polsim::numerics {

// ------------------------------- quadrature ---------------------------------

struct QuadratureSpec {
    double relative_tolerance{1e-9};
    double absolute_tolerance{1e-13};
    double truncation_multiplier{8.0}; // upper limit as multiple of the integrand decay scale
};

// Integrates a complex-valued integrand over (0, inf), truncated at
// truncation_multiplier * decay_scale. Adaptive bisection with an embedded
// Gauss 7/15 pair for the per-interval error estimate. Throws
// std::invalid_argument on bad arguments and std::runtime_error (carrying the
// achieved error estimate) if the refinement budget is exhausted.
std::complex<double> integrate_semi_infinite(
    const std::function<std::complex<double>(double)>& integrand,
    double decay_scale,
    const QuadratureSpec& spec = {});

// --------------------------- eigendecomposition -----------------------------

struct EigenSystem {
    Eigen::Vector4cd eigenvalues;
    Eigen::Matrix4cd right_vectors; // columns r_i with L r_i = lambda_i r_i
    Eigen::Matrix4cd left_vectors;  // rows l_i with left_vectors * right_vectors = 1
    bool diagonalizable{true};      // false: caller must fall back to direct exponentials
};

// Spectral decomposition of a 4x4 generator. Never throws on a defective
// matrix; it clears `diagonalizable` instead (the spectral form is an
// optimization, not a correctness requirement).
EigenSystem eig_decompose(const Eigen::Matrix4cd& generator);

// ------------------------- exponential-sum transforms -----------------------

struct ExpTerm {
    std::complex<double> coefficient{0.0, 0.0};
    std::complex<double> exponent{0.0, 0.0}; // ps^-1; Re <= 0 for decaying correlators
};
using ExponentialSum = std::vector<ExpTerm>;

// sum_k c_k exp(lambda_k tau)
std::complex<double> evaluate(const ExponentialSum& sum, double tau);

// Closed form of integral_0^inf sum_k c_k e^{lambda_k tau} e^{i dw tau} dtau,
// i.e. sum_k c_k * (-1)/(lambda_k + i dw). Terms with exactly zero coefficient
// are skipped; an exponent with positive real part is a domain error
// (non-decaying correlator). Zero-exponent terms must be excluded by the
// caller (they are the coherent delta contribution, handled elsewhere).
std::complex<double> half_line_fourier(const ExponentialSum& sum, double delta_omega);

// ------------------------------- convolution --------------------------------

// Convolves uniformly sampled real data with the Gaussian detector response
// R(x) = (2/fwhm) sqrt(ln2/pi) exp(-4 ln2 x^2 / fwhm^2), discretized so its
// samples sum to 1/spacing (constants are preserved exactly). The series is
// extended beyond both ends by its edge values. A fwhm below spacing/100 is
// treated as a delta (input returned unchanged); spacing coarser than fwhm/40
// is a resolution error.
std::vector<double> convolve_gaussian(std::span<const double> series,
                                      double spacing,
                                      double fwhm);

} // namespace polsim::numerics
