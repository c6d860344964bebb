// emission.cpp — g1 assembly, coherent fraction, spectrum decomposition.

#include "polsim/emission.hpp"

#include <cmath>
#include <stdexcept>

#include "uniform_interp.hpp"

namespace polsim::emission {

namespace {

using complexd = std::complex<double>;

void check_phonon_coverage(const phonon::PhononCorrelations& pc, double b2, const char* where) {
    if (pc.tau_grid.size() < 2 || std::abs(pc.tau_grid.front()) > 1e-12) {
        throw std::invalid_argument(std::string(where) + ": phonon grid must start at tau = 0");
    }
    if (std::abs(pc.G.back() - complexd{b2, 0.0}) > 1e-3 * b2) {
        throw std::invalid_argument(
            std::string(where) + ": phonon window too short, G has not reached its plateau");
    }
}

void check_stationary(const dynamics::Liouvillian& liouvillian,
                      const dynamics::DensityOperator& rho_ss,
                      const char* where) {
    if ((liouvillian * dynamics::vec(rho_ss)).cwiseAbs().maxCoeff() > 1e-8) {
        throw std::invalid_argument(std::string(where) + ": rho_ss is not stationary under L");
    }
}

// Simpson weights over a uniform grid with an even interval count
std::vector<double> simpson_weights(std::size_t n, double h) {
    if (n < 3 || (n - 1) % 2 != 0) {
        throw std::invalid_argument("incoherent_spectrum: phonon grid needs an even interval count");
    }
    std::vector<double> w(n, 0.0);
    w.front() = h / 3.0;
    w.back() = h / 3.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        w[i] = (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
    }
    return w;
}

// sum_i w_i f_i e^{i dw tau_i} on a uniform grid, phases by rotation recurrence
complexd phased_sum(const std::vector<complexd>& f,
                    const std::vector<double>& weights,
                    double step,
                    double delta_omega) {
    const complexd rot = std::polar(1.0, delta_omega * step);
    complexd phase{1.0, 0.0};
    complexd acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc += weights[i] * f[i] * phase;
        phase *= rot;
    }
    return acc;
}

} // namespace

CorrelationSeries g1_total(const CorrelationSeries& g0,
                           const phonon::PhononCorrelations& pc,
                           bool markovian) {
    if (g0.tau_grid.empty() || std::abs(g0.tau_grid.front()) > 1e-12) {
        throw std::invalid_argument("g1_total: g0 grid must start at tau = 0");
    }
    const double b2 = phonon::b_squared(pc);
    check_phonon_coverage(pc, b2, "g1_total");

    CorrelationSeries out;
    out.tau_grid = g0.tau_grid;
    out.values.reserve(g0.values.size());
    out.kind = SeriesKind::g1_total;

    if (markovian) {
        for (const complexd& v : g0.values) {
            out.values.push_back(b2 * v);
        }
        return out;
    }
    const detail::UniformInterp g_fun(pc.tau_grid, pc.G, {b2, 0.0});
    for (std::size_t i = 0; i < g0.values.size(); ++i) {
        out.values.push_back(std::conj(g_fun(g0.tau_grid[i])) * g0.values[i]);
    }
    return out;
}

double coherent_fraction(const dynamics::Liouvillian& liouvillian,
                         const dynamics::DensityOperator& rho_ss,
                         const phonon::PhononCorrelations& pc,
                         bool markovian) {
    check_stationary(liouvillian, rho_ss, "coherent_fraction");
    const double population = rho_ss(1, 1).real(); // <s^dag s>
    if (population <= 1e-14) {
        throw std::runtime_error(
            "coherent_fraction: undefined at zero excited population (omega = 0?)");
    }
    const double coh = std::norm(rho_ss(1, 0)); // |<s>|^2
    // the B^2 field factor multiplies numerator and denominator alike in the
    // Markovian reduction, so it cancels there
    return markovian ? coh / population : phonon::b_squared(pc) * coh / population;
}

Spectrum incoherent_spectrum(const dynamics::Liouvillian& liouvillian,
                             const dynamics::DensityOperator& rho_ss,
                             const phonon::PhononCorrelations& pc,
                             bool markovian,
                             std::span<const double> delta_omega_grid,
                             SpectrumMethod method) {
    if (delta_omega_grid.empty()) {
        throw std::invalid_argument("incoherent_spectrum: empty frequency grid");
    }
    for (std::size_t i = 1; i < delta_omega_grid.size(); ++i) {
        if (!(delta_omega_grid[i] > delta_omega_grid[i - 1])) {
            throw std::invalid_argument("incoherent_spectrum: frequency grid must be ascending");
        }
    }
    check_stationary(liouvillian, rho_ss, "incoherent_spectrum");
    const double b2 = phonon::b_squared(pc);
    check_phonon_coverage(pc, b2, "incoherent_spectrum");

    const Eigen::Matrix2cd id = dynamics::identity2();
    const numerics::ExponentialSum g0_sum = dynamics::regression_exponential_sum(
        liouvillian, rho_ss, id, dynamics::sigma_dag(), dynamics::sigma());

    // split off the stationary term; it is the coherent delta contribution and
    // is reported as a scalar weight instead of entering the transform
    double scale = 0.0;
    for (const auto& term : g0_sum) {
        scale = std::max(scale, std::abs(term.exponent));
    }
    numerics::ExponentialSum decaying;
    bool found_stationary = false;
    for (const auto& term : g0_sum) {
        if (std::abs(term.exponent) <= 1e-9 * scale) {
            found_stationary = true;
            continue;
        }
        decaying.push_back(term);
    }
    if (!found_stationary) {
        throw std::runtime_error("incoherent_spectrum: no stationary mode in the Liouvillian");
    }

    const double population = rho_ss(1, 1).real();
    const double coh = std::norm(rho_ss(1, 0));

    Spectrum spec;
    spec.delta_omega_grid.assign(delta_omega_grid.begin(), delta_omega_grid.end());
    const std::size_t nf = delta_omega_grid.size();
    spec.zpl.resize(nf);
    spec.sideband.assign(nf, 0.0);
    spec.total.resize(nf);
    spec.coherent_weight = b2 * coh;

    for (std::size_t j = 0; j < nf; ++j) {
        spec.zpl[j] = b2 * numerics::half_line_fourier(decaying, delta_omega_grid[j]).real();
    }

    const double step = pc.tau_grid[1] - pc.tau_grid[0];
    const std::size_t np = pc.tau_grid.size();

    if (!markovian && method == SpectrumMethod::simplified) {
        std::vector<complexd> f(np);
        for (std::size_t i = 0; i < np; ++i) {
            f[i] = std::conj(pc.G[i]) - b2;
        }
        const std::vector<double> w = simpson_weights(np, step);
        for (std::size_t j = 0; j < nf; ++j) {
            spec.sideband[j] =
                (population * phased_sum(f, w, step, delta_omega_grid[j])).real();
        }
    } else if (!markovian && method == SpectrumMethod::exact_product) {
        // numeric transform of conj(G) g0 - coherent over the phonon window,
        // then the analytic exponential tail where G has flattened to B^2
        std::vector<complexd> f(np);
        for (std::size_t i = 0; i < np; ++i) {
            f[i] = std::conj(pc.G[i]) * numerics::evaluate(g0_sum, pc.tau_grid[i]) - b2 * coh;
        }
        const std::vector<double> w = simpson_weights(np, step);
        const double a = pc.tau_grid.back();
        for (std::size_t j = 0; j < nf; ++j) {
            const double dw = delta_omega_grid[j];
            complexd acc = phased_sum(f, w, step, dw);
            for (const auto& term : decaying) {
                const complexd lam = term.exponent + complexd{0.0, dw};
                acc -= b2 * term.coefficient * std::exp(lam * a) / lam;
            }
            spec.sideband[j] = acc.real() - spec.zpl[j];
        }
    }

    for (std::size_t j = 0; j < nf; ++j) {
        spec.total[j] = spec.zpl[j] + spec.sideband[j];
    }
    return spec;
}

double sideband_power_fraction(const phonon::PhononEnvironment& env) {
    const double b = phonon::displacement_factor(env);
    return 1.0 - b * b;
}

} // namespace polsim::emission
