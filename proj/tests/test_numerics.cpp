// test_numerics.cpp — quadrature, eigendecomposition, Fourier, convolution.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "polsim/dynamics.hpp"
#include "polsim/numerics.hpp"
#include "polsim/phonon.hpp"

using oracles::complexd;
namespace numerics = polsim::numerics;

// ------- integrate_semi_infinite -------

TEST_CASE("quadrature: standard Gaussian integral") {
    const complexd val = numerics::integrate_semi_infinite(
        [](double nu) { return complexd{std::exp(-nu * nu), 0.0}; }, 1.0);
    CHECK(val.real() == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-9));
    CHECK(std::abs(val.imag()) < 1e-12);
}

TEST_CASE("quadrature: zero integrand") {
    const complexd val = numerics::integrate_semi_infinite(
        [](double) { return complexd{0.0, 0.0}; }, 1.0);
    CHECK(std::abs(val) == 0.0);
}

TEST_CASE("quadrature: Gaussian moments against closed forms") {
    const double nu_c = 2.2;
    const complexd m1 = numerics::integrate_semi_infinite(
        [nu_c](double nu) { return complexd{nu * std::exp(-nu * nu / (nu_c * nu_c)), 0.0}; },
        nu_c);
    const complexd m3 = numerics::integrate_semi_infinite(
        [nu_c](double nu) {
            return complexd{nu * nu * nu * std::exp(-nu * nu / (nu_c * nu_c)), 0.0};
        },
        nu_c);
    CHECK(m1.real() == doctest::Approx(nu_c * nu_c / 2.0).epsilon(1e-9));
    CHECK(m3.real() == doctest::Approx(nu_c * nu_c * nu_c * nu_c / 2.0).epsilon(1e-9));
}

TEST_CASE("quadrature: thermal phi integrand against trapezoid oracle") {
    const double alpha = 0.03;
    const double nu_c = 2.2;
    const double temperature = 4.0;
    const complexd val = numerics::integrate_semi_infinite(
        [&](double nu) {
            return complexd{oracles::phi_integrand(nu, alpha, nu_c, temperature), 0.0};
        },
        nu_c);
    const double oracle =
        -2.0 * std::log(oracles::displacement_factor(alpha, nu_c, temperature));
    CHECK(val.real() == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("quadrature: argument validation") {
    const auto f = [](double) { return complexd{1.0, 0.0}; };
    CHECK_THROWS_AS(numerics::integrate_semi_infinite({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(numerics::integrate_semi_infinite(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(numerics::integrate_semi_infinite(f, -1.0), std::invalid_argument);
    numerics::QuadratureSpec bad_rel;
    bad_rel.relative_tolerance = 0.0;
    CHECK_THROWS_AS(numerics::integrate_semi_infinite(f, 1.0, bad_rel), std::invalid_argument);
    numerics::QuadratureSpec bad_mult;
    bad_mult.truncation_multiplier = 4.0;
    CHECK_THROWS_AS(numerics::integrate_semi_infinite(f, 1.0, bad_mult), std::invalid_argument);
}

TEST_CASE("quadrature: refinement budget exhaustion reports the achieved error") {
    const auto nasty = [](double nu) {
        return complexd{std::cos(1.0e6 * nu) * std::exp(-nu), 0.0};
    };
    CHECK_THROWS_AS(numerics::integrate_semi_infinite(nasty, 1.0), std::runtime_error);
}

// ------- eig_decompose -------

TEST_CASE("eig: zero matrix") {
    const numerics::EigenSystem sys = numerics::eig_decompose(Eigen::Matrix4cd::Zero());
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(sys.eigenvalues(i)) < 1e-14);
    }
}

TEST_CASE("eig: diagonal decay generator") {
    const double gamma = 1.0 / 700.0;
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(1, 1) = -gamma / 2.0;
    m(2, 2) = -gamma / 2.0;
    m(3, 3) = -gamma;
    const numerics::EigenSystem sys = numerics::eig_decompose(m);
    REQUIRE(sys.diagonalizable);
    std::vector<double> got;
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(sys.eigenvalues(i).imag()) < 1e-14);
        got.push_back(sys.eigenvalues(i).real());
    }
    std::sort(got.begin(), got.end());
    const std::vector<double> want{-gamma, -gamma / 2.0, -gamma / 2.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("eig: left and right vectors are mutually inverse and reconstruct") {
    const double gamma = 1.0 / 700.0;
    polsim::dynamics::DriveConfig drive;
    drive.omega = 0.01;
    drive.gamma = gamma;
    const polsim::phonon::PolaronQuantities pq =
        polsim::phonon::polaron_rates({0.0, 2.2, 4.0}, drive.omega);
    const Eigen::Matrix4cd l = polsim::dynamics::build_liouvillian(drive, pq);
    const numerics::EigenSystem sys = numerics::eig_decompose(l);
    REQUIRE(sys.diagonalizable);

    CHECK((sys.left_vectors * sys.right_vectors - Eigen::Matrix4cd::Identity()).norm() < 1e-10);
    Eigen::Matrix4cd rebuilt = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) {
        rebuilt += sys.eigenvalues(i) * sys.right_vectors.col(i)
                   * sys.left_vectors.row(i);
    }
    CHECK((rebuilt - l).norm() < 1e-10 * std::max(1.0, l.norm()));
}

TEST_CASE("eig: optical Bloch relaxation exponents at alpha = 0") {
    const double gamma = 1.0 / 700.0;
    const double omega = 0.01;
    polsim::dynamics::DriveConfig drive;
    drive.omega = omega;
    drive.gamma = gamma;
    const polsim::phonon::PolaronQuantities pq =
        polsim::phonon::polaron_rates({0.0, 2.2, 4.0}, omega);
    const Eigen::Matrix4cd l = polsim::dynamics::build_liouvillian(drive, pq);
    const numerics::EigenSystem sys = numerics::eig_decompose(l);
    REQUIRE(sys.diagonalizable);

    const double mu = std::sqrt(omega * omega - gamma * gamma / 16.0);
    std::vector<complexd> want{complexd{0.0, 0.0}, complexd{-gamma / 2.0, 0.0},
                               complexd{-0.75 * gamma, mu}, complexd{-0.75 * gamma, -mu}};
    for (int i = 0; i < 4; ++i) {
        double best = 1e9;
        for (const complexd& w : want) {
            best = std::min(best, std::abs(sys.eigenvalues(i) - w));
        }
        CHECK(best < 1e-10);
    }
    // exactly one stationary mode, all others strictly decaying
    int stationary = 0;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(sys.eigenvalues(i)) < 1e-12) {
            ++stationary;
        } else {
            CHECK(sys.eigenvalues(i).real() < 0.0);
        }
    }
    CHECK(stationary == 1);
}

TEST_CASE("eig: defective generator is flagged for the time-stepping fallback") {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 1) = 1.0; // Jordan block
    const numerics::EigenSystem sys = numerics::eig_decompose(m);
    CHECK_FALSE(sys.diagonalizable);
}

// ------- exponential sums and the half-line Fourier transform -------

TEST_CASE("half_line_fourier: unit Lorentzian values") {
    const numerics::ExponentialSum sum{{complexd{1.0, 0.0}, complexd{-1.0, 0.0}}};
    const complexd at0 = numerics::half_line_fourier(sum, 0.0);
    CHECK(at0.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(at0.imag()) < 1e-14);

    // int_0^inf e^{-tau} e^{i tau} dtau = 1/(1 - i) = (1 + i)/2; real part 1/2
    const complexd at1 = numerics::half_line_fourier(sum, 1.0);
    CHECK(at1.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(at1.imag() - 0.5) < 1e-14);
}

TEST_CASE("half_line_fourier: rejects non-decaying terms") {
    const numerics::ExponentialSum bad{{complexd{1.0, 0.0}, complexd{0.5, 0.0}}};
    CHECK_THROWS_AS(numerics::half_line_fourier(bad, 0.0), std::domain_error);
}

TEST_CASE("half_line_fourier: matches brute-force quadrature for the g0 sum") {
    const double gamma = 1.0 / 700.0;
    polsim::dynamics::DriveConfig drive;
    drive.omega = 0.01;
    drive.gamma = gamma;
    const polsim::phonon::PolaronQuantities pq =
        polsim::phonon::polaron_rates({0.03, 2.2, 4.0}, drive.omega);
    const Eigen::Matrix4cd l = polsim::dynamics::build_liouvillian(drive, pq);
    const polsim::dynamics::DensityOperator rho = polsim::dynamics::steady_state(l);
    const numerics::ExponentialSum g0_sum = polsim::dynamics::regression_exponential_sum(
        l, rho, polsim::dynamics::identity2(), polsim::dynamics::sigma_dag(),
        polsim::dynamics::sigma());

    numerics::ExponentialSum decaying;
    for (const auto& term : g0_sum) {
        if (std::abs(term.exponent) > 1e-9) {
            decaying.push_back(term);
        }
    }
    REQUIRE(decaying.size() == 3);

    for (const double dw : {0.0, 0.002, 0.05, 1.0}) {
        const complexd closed = numerics::half_line_fourier(decaying, dw);
        complexd numeric{0.0, 0.0};
        for (const auto& term : decaying) {
            numeric += oracles::half_line_fourier_numeric(term.coefficient, term.exponent, dw);
        }
        CHECK(std::abs(closed - numeric) < 1e-6 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("evaluate: exponential sum sampling") {
    const numerics::ExponentialSum sum{{complexd{2.0, 0.0}, complexd{-0.5, 0.0}},
                                       {complexd{0.0, 1.0}, complexd{-1.0, 2.0}}};
    const double tau = 0.7;
    const complexd want = 2.0 * std::exp(-0.5 * tau)
                          + complexd{0.0, 1.0} * std::exp(complexd{-1.0, 2.0} * tau);
    CHECK(std::abs(numerics::evaluate(sum, tau) - want) < 1e-14);
}

// ------- convolve_gaussian -------

TEST_CASE("convolution: constant series is preserved") {
    const std::vector<double> ones(501, 1.0);
    const std::vector<double> out = numerics::convolve_gaussian(ones, 8.0, 400.0);
    REQUIRE(out.size() == ones.size());
    for (const double v : out) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("convolution: delta limit returns the input") {
    std::vector<double> series(101);
    for (std::size_t i = 0; i < series.size(); ++i) {
        series[i] = std::sin(0.1 * static_cast<double>(i));
    }
    const std::vector<double> out = numerics::convolve_gaussian(series, 1.0, 0.01);
    for (std::size_t i = 0; i < series.size(); ++i) {
        CHECK(std::abs(out[i] - series[i]) < 1e-9);
    }
}

TEST_CASE("convolution: rejects a grid too coarse for the response") {
    const std::vector<double> series(64, 1.0);
    CHECK_THROWS_AS(numerics::convolve_gaussian(series, 11.0, 400.0), std::invalid_argument);
}

TEST_CASE("convolution: unit impulse reproduces the response peak") {
    const double fwhm = 400.0;
    const double h = 8.0;
    std::vector<double> impulse(501, 0.0);
    impulse[250] = 1.0 / h; // discrete unit-weight impulse
    const std::vector<double> out = numerics::convolve_gaussian(impulse, h, fwhm);
    CHECK(out[250] == doctest::Approx(oracles::detector_response(0.0, fwhm)).epsilon(1e-9));
    // symmetric response
    CHECK(out[250 - 10] == doctest::Approx(out[250 + 10]).epsilon(1e-12));
    CHECK(out[250 - 10] == doctest::Approx(oracles::detector_response(10.0 * h, fwhm))
                                .epsilon(1e-9));
}

TEST_CASE("convolution: preserves the integral of an interior bump") {
    const double h = 8.0;
    const double fwhm = 400.0;
    std::vector<double> series(1001, 0.0);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double x = (static_cast<double>(i) - 500.0) * h;
        series[i] = std::exp(-x * x / (2.0 * 150.0 * 150.0));
    }
    const std::vector<double> out = numerics::convolve_gaussian(series, h, fwhm);
    double in_sum = 0.0;
    double out_sum = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        in_sum += series[i] * h;
        out_sum += out[i] * h;
    }
    CHECK(out_sum == doctest::Approx(in_sum).epsilon(1e-6));
}

TEST_CASE("convolution: argument validation") {
    const std::vector<double> series(64, 1.0);
    CHECK_THROWS_AS(numerics::convolve_gaussian({}, 1.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(numerics::convolve_gaussian(series, 0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(numerics::convolve_gaussian(series, 1.0, -1.0), std::invalid_argument);

    // zero width is the ideal-detector limit, not an error: identity pass-through
    std::vector<double> ramp(64);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = 0.1 * static_cast<double>(i);
    }
    const auto out = numerics::convolve_gaussian(ramp, 1.0, 0.0);
    REQUIRE(out.size() == ramp.size());
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        CHECK(out[i] == ramp[i]);
    }
}
