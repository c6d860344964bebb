// numerics.cpp — Quadrature, eigendecomposition, exponential-sum transforms,
// Gaussian convolution.

#include "polsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gauss_nodes.hpp"

namespace polsim::numerics {

namespace {

// the Gauss 7/15 pair gives an embedded error estimate per interval
// (the 15-point value is kept)
using detail::kGauss7;
using detail::kNodes7;
using detail::kWeights7;
using detail::kGauss15;
using detail::kNodes15;
using detail::kWeights15;

struct Interval {
    double a{0.0};
    double b{0.0};
    std::complex<double> value{0.0, 0.0};
    double error{0.0};
};

Interval evaluate_interval(const std::function<std::complex<double>(double)>& f,
                           double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::complex<double> coarse{0.0, 0.0};
    for (int i = 0; i < kGauss7; ++i) {
        coarse += kWeights7[i] * f(mid + half * kNodes7[i]);
    }
    std::complex<double> fine{0.0, 0.0};
    for (int i = 0; i < kGauss15; ++i) {
        fine += kWeights15[i] * f(mid + half * kNodes15[i]);
    }
    coarse *= half;
    fine *= half;
    return Interval{a, b, fine, std::abs(fine - coarse)};
}

} // namespace

std::complex<double> integrate_semi_infinite(
    const std::function<std::complex<double>(double)>& integrand,
    double decay_scale,
    const QuadratureSpec& spec) {
    if (!integrand) {
        throw std::invalid_argument("integrate_semi_infinite: null integrand");
    }
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale)) {
        throw std::invalid_argument("integrate_semi_infinite: decay_scale must be positive");
    }
    if (!(spec.relative_tolerance > 0.0) || !(spec.absolute_tolerance > 0.0)) {
        throw std::invalid_argument("integrate_semi_infinite: tolerances must be positive");
    }
    if (!(spec.truncation_multiplier >= 8.0)) {
        throw std::invalid_argument("integrate_semi_infinite: truncation_multiplier must be >= 8");
    }

    const double upper = spec.truncation_multiplier * decay_scale;

    // seed with a handful of equal panels so the first global estimate is sane
    constexpr int kSeedIntervals = 8;
    constexpr std::size_t kMaxIntervals = 4000;
    std::vector<Interval> intervals;
    intervals.reserve(256);
    for (int i = 0; i < kSeedIntervals; ++i) {
        const double a = upper * static_cast<double>(i) / kSeedIntervals;
        const double b = upper * static_cast<double>(i + 1) / kSeedIntervals;
        intervals.push_back(evaluate_interval(integrand, a, b));
    }

    auto totals = [&intervals]() {
        std::complex<double> value{0.0, 0.0};
        double error = 0.0;
        for (const Interval& iv : intervals) {
            value += iv.value;
            error += iv.error;
        }
        return std::pair<std::complex<double>, double>{value, error};
    };

    for (;;) {
        auto [value, error] = totals();
        const double goal = std::max(spec.absolute_tolerance,
                                     spec.relative_tolerance * std::abs(value));
        if (error <= goal) {
            return value;
        }
        if (intervals.size() >= kMaxIntervals) {
            std::ostringstream msg;
            msg << "integrate_semi_infinite: no convergence after " << intervals.size()
                << " intervals, achieved error estimate " << error << " (goal " << goal << ")";
            throw std::runtime_error(msg.str());
        }
        auto worst = std::max_element(intervals.begin(), intervals.end(),
                                      [](const Interval& x, const Interval& y) {
                                          return x.error < y.error;
                                      });
        const double a = worst->a;
        const double b = worst->b;
        const double mid = 0.5 * (a + b);
        *worst = evaluate_interval(integrand, a, mid);
        intervals.push_back(evaluate_interval(integrand, mid, b));
    }
}

EigenSystem eig_decompose(const Eigen::Matrix4cd& generator) {
    EigenSystem sys;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(generator, true);
    if (solver.info() != Eigen::Success) {
        sys.eigenvalues.setZero();
        sys.right_vectors.setIdentity();
        sys.left_vectors.setIdentity();
        sys.diagonalizable = false;
        return sys;
    }
    sys.eigenvalues = solver.eigenvalues();
    sys.right_vectors = solver.eigenvectors();

    Eigen::FullPivLU<Eigen::Matrix4cd> lu(sys.right_vectors);
    if (!lu.isInvertible()) {
        sys.left_vectors.setIdentity();
        sys.diagonalizable = false;
        return sys;
    }
    sys.left_vectors = lu.inverse();

    // reconstruction check; a near-defective matrix shows up here
    const Eigen::Matrix4cd rebuilt =
        sys.right_vectors * sys.eigenvalues.asDiagonal() * sys.left_vectors;
    const double scale = std::max(generator.norm(), 1e-30);
    sys.diagonalizable = ((rebuilt - generator).norm() <= 1e-10 * scale);
    return sys;
}

std::complex<double> evaluate(const ExponentialSum& sum, double tau) {
    std::complex<double> acc{0.0, 0.0};
    for (const ExpTerm& term : sum) {
        acc += term.coefficient * std::exp(term.exponent * tau);
    }
    return acc;
}

std::complex<double> half_line_fourier(const ExponentialSum& sum, double delta_omega) {
    std::complex<double> acc{0.0, 0.0};
    for (const ExpTerm& term : sum) {
        if (term.coefficient == std::complex<double>{0.0, 0.0}) {
            continue;
        }
        if (term.exponent.real() > 0.0) {
            throw std::domain_error(
                "half_line_fourier: exponent with positive real part (non-decaying correlator)");
        }
        const std::complex<double> denom =
            term.exponent + std::complex<double>{0.0, delta_omega};
        if (std::abs(denom) < 1e-300) {
            throw std::domain_error(
                "half_line_fourier: exponent resonant with delta_omega (divergent integral)");
        }
        acc -= term.coefficient / denom;
    }
    return acc;
}

std::vector<double> convolve_gaussian(std::span<const double> series,
                                      double spacing,
                                      double fwhm) {
    if (series.empty()) {
        throw std::invalid_argument("convolve_gaussian: empty series");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("convolve_gaussian: spacing must be positive");
    }
    if (!(fwhm >= 0.0) || !std::isfinite(fwhm)) {
        throw std::invalid_argument("convolve_gaussian: fwhm must be nonnegative");
    }
    // delta-function limit first: a response much narrower than one grid cell
    // is an identity, no matter how coarse the grid looks next to it
    if (fwhm <= spacing / 100.0) {
        return std::vector<double>(series.begin(), series.end());
    }
    if (spacing > fwhm / 40.0) {
        throw std::invalid_argument(
            "convolve_gaussian: grid spacing coarser than fwhm/40 (insufficient resolution)");
    }

    const double ln2 = std::log(2.0);
    // exp(-4 ln2 * 16) ~ 5e-20, well below double noise on the sum
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(4.0 * fwhm / spacing));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double norm = 0.0;
    for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
        const double x = static_cast<double>(j) * spacing;
        const double v = std::exp(-4.0 * ln2 * x * x / (fwhm * fwhm));
        kernel[static_cast<std::size_t>(j + radius)] = v;
        norm += v;
    }
    for (double& v : kernel) {
        v /= norm; // kernel now sums to 1 == (1/spacing) * spacing
    }

    const auto n = static_cast<std::ptrdiff_t>(series.size());
    std::vector<double> out(series.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
            std::ptrdiff_t k = i - j;
            if (k < 0) k = 0;             // extend by edge values: the series
            if (k >= n) k = n - 1;        // has plateaued at both ends
            acc += kernel[static_cast<std::size_t>(j + radius)] * series[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

} // namespace polsim::numerics
