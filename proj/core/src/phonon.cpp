// phonon.cpp — Displacement factor, correlation-function sampling, and the
// phonon-induced master-equation rates.

#include "polsim/phonon.hpp"

#include <cmath>
#include <stdexcept>

#include "gauss_nodes.hpp"

namespace polsim::phonon {

namespace {

void validate_env(const PhononEnvironment& env, const char* where) {
    if (!(env.alpha >= 0.0) || !std::isfinite(env.alpha)) {
        throw std::invalid_argument(std::string(where) + ": alpha must be >= 0");
    }
    if (!(env.nu_c > 0.0) || !std::isfinite(env.nu_c)) {
        throw std::invalid_argument(std::string(where) + ": nu_c must be > 0");
    }
    if (!(env.temperature >= 0.0) || !std::isfinite(env.temperature)) {
        throw std::invalid_argument(std::string(where) + ": temperature must be >= 0");
    }
}

// alpha nu coth(beta nu/2), with the removable nu -> 0 limit 2 alpha/beta
// below 1e-4 nu_c; coth is replaced by 1 exactly at T = 0 (not a large-beta
// limit, which would overflow)
double nu_coth(const PhononEnvironment& env, double nu) {
    if (env.temperature == 0.0) {
        return env.alpha * nu;
    }
    const double beta = 1.0 / (k_over_hbar * env.temperature);
    if (nu < 1e-4 * env.nu_c) {
        return 2.0 * env.alpha / beta;
    }
    return env.alpha * nu / std::tanh(0.5 * beta * nu);
}

// Fixed composite Gauss-15 panels over nu in [0, 8 nu_c], with the nu-only
// factors cached per node. phi at a given tau is then a weighted sum of
// cos/sin terms over the nodes. The panel count scales with nu_c * tau_max so
// each panel sees at most a few radians of the oscillatory phase.
struct PhiNode {
    double nu{0.0};
    double cos_coeff{0.0}; // weight * alpha nu e^{-nu^2/nu_c^2} coth(beta nu/2)
    double sin_coeff{0.0}; // weight * alpha nu e^{-nu^2/nu_c^2}
};

std::vector<PhiNode> make_phi_nodes(const PhononEnvironment& env, double tau_max) {
    const double upper = 8.0 * env.nu_c;
    const int panels = std::max(64, static_cast<int>(std::ceil(2.0 * env.nu_c * tau_max)));
    std::vector<PhiNode> nodes;
    nodes.reserve(static_cast<std::size_t>(panels) * detail::kGauss15);
    const double width = upper / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * width;
        const double half = 0.5 * width;
        for (int i = 0; i < detail::kGauss15; ++i) {
            const double nu = mid + half * detail::kNodes15[i];
            const double w = half * detail::kWeights15[i];
            const double gauss = std::exp(-nu * nu / (env.nu_c * env.nu_c));
            nodes.push_back(PhiNode{nu,
                                    w * nu_coth(env, nu) * gauss,
                                    w * env.alpha * nu * gauss});
        }
    }
    return nodes;
}

std::complex<double> phi_at(const std::vector<PhiNode>& nodes, double tau) {
    double re = 0.0;
    double im = 0.0;
    for (const PhiNode& n : nodes) {
        re += n.cos_coeff * std::cos(n.nu * tau);
        im -= n.sin_coeff * std::sin(n.nu * tau);
    }
    return {re, im};
}

std::complex<double> simpson(const std::vector<std::complex<double>>& samples, double h) {
    const std::size_t n = samples.size();
    if (n < 3 || (n - 1) % 2 != 0) {
        throw std::invalid_argument("simpson: need an odd number of samples (even interval count)");
    }
    std::complex<double> acc = samples.front() + samples.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        acc += samples[i] * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return acc * (h / 3.0);
}

// rate integrals are truncated here; the Lambda functions decay on ~1/nu_c
// and are far below 1e-10 of their tau=0 value by 50 ps
constexpr double kRateTauMax = 50.0;
constexpr double kRateTauStep = 0.005;

} // namespace

double spectral_density(double nu, const PhononEnvironment& env) {
    validate_env(env, "spectral_density");
    if (nu < 0.0) {
        throw std::domain_error("spectral_density: nu must be >= 0");
    }
    return env.alpha * nu * nu * nu * std::exp(-nu * nu / (env.nu_c * env.nu_c));
}

double displacement_factor(const PhononEnvironment& env) {
    validate_env(env, "displacement_factor");
    if (env.alpha == 0.0) {
        return 1.0;
    }
    auto integrand = [&env](double nu) -> std::complex<double> {
        const double gauss = std::exp(-nu * nu / (env.nu_c * env.nu_c));
        return {nu_coth(env, nu) * gauss, 0.0};
    };
    const std::complex<double> integral =
        numerics::integrate_semi_infinite(integrand, env.nu_c);
    return std::exp(-0.5 * integral.real());
}

std::vector<double> default_phonon_grid(double tau_max, double step) {
    if (!(tau_max > 0.0) || !(step > 0.0)) {
        throw std::invalid_argument("default_phonon_grid: tau_max and step must be > 0");
    }
    const auto n = static_cast<std::size_t>(std::llround(tau_max / step));
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        grid[i] = static_cast<double>(i) * step;
    }
    return grid;
}

PhononCorrelations phonon_correlations(const PhononEnvironment& env,
                                       std::span<const double> tau_grid) {
    validate_env(env, "phonon_correlations");
    if (tau_grid.size() < 2) {
        throw std::invalid_argument("phonon_correlations: grid needs at least two points");
    }
    if (std::abs(tau_grid.front()) > 1e-12) {
        throw std::invalid_argument("phonon_correlations: grid must start at tau = 0");
    }
    const double step = tau_grid[1] - tau_grid[0];
    if (!(step > 0.0) || step > 0.01 * (1.0 + 1e-9)) {
        throw std::invalid_argument("phonon_correlations: grid spacing must be in (0, 0.01] ps");
    }
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (std::abs((tau_grid[i] - tau_grid[i - 1]) - step) > 1e-6 * step) {
            throw std::invalid_argument("phonon_correlations: grid must be uniform");
        }
    }
    if (tau_grid.back() < 20.0 / env.nu_c * (1.0 - 1e-12)) {
        throw std::invalid_argument("phonon_correlations: grid span must be >= 20/nu_c");
    }

    PhononCorrelations pc;
    pc.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    const std::size_t n = tau_grid.size();
    pc.phi.resize(n);
    pc.G.resize(n);
    pc.C.resize(n);
    pc.Gcal.resize(n);

    if (env.alpha == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            pc.phi[i] = {0.0, 0.0};
            pc.G[i] = {1.0, 0.0};
            pc.C[i] = {1.0, 0.0};
            pc.Gcal[i] = {1.0, 0.0};
        }
        return pc;
    }

    const auto nodes = make_phi_nodes(env, tau_grid.back());
    for (std::size_t i = 0; i < n; ++i) {
        pc.phi[i] = phi_at(nodes, tau_grid[i]);
    }
    // phi(0) is real (sin(0) = 0 termwise); using exp(-phi(0)) as B^2 keeps
    // G(0) = 1 to machine precision and is consistent with
    // displacement_factor to the quadrature tolerance
    const double b2 = std::exp(-pc.phi[0].real());
    for (std::size_t i = 0; i < n; ++i) {
        pc.G[i] = b2 * std::exp(pc.phi[i]);
        pc.C[i] = b2 * std::exp(-pc.phi[i]);
        pc.Gcal[i] = std::polar(1.0, 2.0 * pc.phi[i].imag());
    }
    return pc;
}

double b_squared(const PhononCorrelations& pc) {
    if (pc.phi.empty()) {
        throw std::invalid_argument("b_squared: empty correlations");
    }
    return std::exp(-pc.phi.front().real());
}

RateKernel make_rate_kernel(const PhononEnvironment& env) {
    validate_env(env, "make_rate_kernel");
    RateKernel kernel;
    kernel.tau_step = kRateTauStep;
    const auto n = static_cast<std::size_t>(std::llround(kRateTauMax / kRateTauStep)) + 1;
    kernel.lambda_xx.assign(n, {0.0, 0.0});
    kernel.lambda_yy.assign(n, {0.0, 0.0});
    if (env.alpha == 0.0) {
        kernel.B = 1.0;
        return kernel;
    }
    const auto nodes = make_phi_nodes(env, kRateTauMax);
    const double b2 = std::exp(-phi_at(nodes, 0.0).real());
    kernel.B = std::sqrt(b2);
    for (std::size_t i = 0; i < n; ++i) {
        const std::complex<double> phi = phi_at(nodes, static_cast<double>(i) * kRateTauStep);
        const std::complex<double> ep = std::exp(phi);
        const std::complex<double> em = std::exp(-phi);
        kernel.lambda_xx[i] = 0.5 * b2 * (ep + em - 2.0);
        kernel.lambda_yy[i] = 0.5 * b2 * (ep - em);
    }
    return kernel;
}

PolaronQuantities rates_from_kernel(const RateKernel& kernel, double omega) {
    if (kernel.lambda_xx.size() != kernel.lambda_yy.size() || kernel.lambda_xx.size() < 3) {
        throw std::invalid_argument("rates_from_kernel: malformed kernel");
    }
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("rates_from_kernel: omega must be >= 0");
    }
    PolaronQuantities pq;
    pq.B = kernel.B;
    pq.omega_r = omega * kernel.B;
    if (omega == 0.0) {
        return pq; // (omega/2)^2 prefactor kills all three rates
    }
    const std::size_t n = kernel.lambda_xx.size();
    std::vector<std::complex<double>> cos_yy(n);
    std::vector<std::complex<double>> sin_yy(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i) * kernel.tau_step;
        cos_yy[i] = std::cos(pq.omega_r * tau) * kernel.lambda_yy[i];
        sin_yy[i] = std::sin(pq.omega_r * tau) * kernel.lambda_yy[i];
    }
    // the interaction is (omega/2)(sigma_x B_x + sigma_y B_y); second order
    // brings the (omega/2)^2 prefactor into every rate
    const double pref = 0.25 * omega * omega;
    pq.gamma_x = pref * simpson(kernel.lambda_xx, kernel.tau_step);
    pq.chi_y = pref * simpson(cos_yy, kernel.tau_step);
    pq.chi_z = pref * simpson(sin_yy, kernel.tau_step);
    return pq;
}

PolaronQuantities polaron_rates(const PhononEnvironment& env, double omega) {
    return rates_from_kernel(make_rate_kernel(env), omega);
}

} // namespace polsim::phonon
