// acceptance_main.cpp — acceptance gate: checks the headline physics numbers
// and runtime budgets, printing one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "polsim/dynamics.hpp"
#include "polsim/emission.hpp"
#include "polsim/hom.hpp"
#include "polsim/numerics.hpp"
#include "polsim/phonon.hpp"

using oracles::complexd;
namespace dyn = polsim::dynamics;
namespace phonon = polsim::phonon;
namespace emission = polsim::emission;
namespace hom = polsim::hom;
namespace numerics = polsim::numerics;

namespace {

constexpr double kGamma = 1.0 / 700.0;
constexpr double kAlpha = 0.03;
constexpr double kNuC = 2.2;

struct Criterion {
    bool pass{true};
    std::string detail;
};

struct Setup {
    phonon::PhononCorrelations pc;
    dyn::Liouvillian liouvillian;
    dyn::DensityOperator rho_ss;
};

Setup make_setup(const phonon::PhononEnvironment& env, double omega, double gamma = kGamma) {
    Setup s{phonon::phonon_correlations(env, phonon::default_phonon_grid()),
            dyn::Liouvillian::Zero(), dyn::DensityOperator::Zero()};
    dyn::DriveConfig drive;
    drive.omega = omega;
    drive.gamma = gamma;
    s.liouvillian = dyn::build_liouvillian(drive, phonon::polaron_rates(env, omega));
    s.rho_ss = dyn::steady_state(s.liouvillian);
    return s;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

double trapz(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    return acc;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// ------- 1: sideband power fractions -------

Criterion sideband_fractions() {
    Criterion c;
    const struct {
        double temperature, target, tolerance;
    } cases[] = {{0.0, 0.070, 0.005}, {4.0, 0.091, 0.005}, {15.0, 0.225, 0.010}};
    std::ostringstream detail;
    for (const auto& k : cases) {
        const double frac = emission::sideband_power_fraction({kAlpha, kNuC, k.temperature});
        const bool ok = std::abs(frac - k.target) <= k.tolerance;
        c.pass = c.pass && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << k.temperature << " K: " << fmt(frac)
               << " vs " << fmt(k.target) << " +- " << fmt(k.tolerance)
               << (ok ? "" : " <- out of window");
    }
    c.detail = detail.str();
    return c;
}

// ------- 2: spectral-integral identity -------

Criterion spectral_identity() {
    Criterion c;
    const std::vector<double> grid = linspace(-11.0, 11.0, 2201);
    std::ostringstream detail;
    for (const double t : {0.0, 4.0, 15.0}) {
        const Setup s = make_setup({kAlpha, kNuC, t}, 0.01);
        const double b2 = phonon::b_squared(s.pc);
        const double want = std::numbers::pi * (1.0 - b2) * s.rho_ss(1, 1).real();
        const auto spec =
            emission::incoherent_spectrum(s.liouvillian, s.rho_ss, s.pc, false, grid);
        const double got = trapz(grid, spec.sideband);
        const double rel = std::abs(got - want) / std::abs(want);
        const bool ok = rel <= 1e-3;
        c.pass = c.pass && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << t << " K: rel err " << fmt(rel)
               << (ok ? "" : " <- above 1e-3");
    }
    c.detail = detail.str();
    return c;
}

// ------- 3: coherent-fraction limits -------

Criterion coherent_fraction_limits() {
    Criterion c;
    const double omega = 1.0e-4;
    std::ostringstream detail;
    for (const double t : {0.0, 4.0, 15.0}) {
        const Setup s = make_setup({kAlpha, kNuC, t}, omega);
        const double b2 = phonon::b_squared(s.pc);
        const double f_nm = emission::coherent_fraction(s.liouvillian, s.rho_ss, s.pc, false);
        const bool ok_nm = std::abs(f_nm - b2) <= 0.01;
        c.pass = c.pass && ok_nm;
        detail << (detail.tellp() > 0 ? "; " : "") << t << " K: non-Markovian " << fmt(f_nm)
               << " vs B^2 " << fmt(b2) << (ok_nm ? "" : " <- outside 0.01");
        if (t == 4.0) {
            const double f_m = emission::coherent_fraction(s.liouvillian, s.rho_ss, s.pc, true);
            const bool ok_m = f_m >= 0.999;
            c.pass = c.pass && ok_m;
            detail << "; Markovian " << fmt(f_m) << " vs >= 0.999"
                   << (ok_m ? "" : " <- below threshold");
        }
    }
    c.detail = detail.str();
    return c;
}

// ------- 4: free-environment closed-form agreement -------

Criterion atomic_limit() {
    Criterion c;
    std::ostringstream detail;
    const phonon::PhononEnvironment free_env{0.0, kNuC, 4.0};

    // steady state and coherent fraction
    {
        const Setup s = make_setup(free_env, 0.01);
        const double pop_err = std::abs(s.rho_ss(1, 1).real()
                                        - oracles::obe::excited_population(0.01, kGamma));
        const double frac = emission::coherent_fraction(s.liouvillian, s.rho_ss, s.pc, false);
        const double frac_err =
            std::abs(frac - oracles::obe::coherent_fraction(0.01, kGamma))
            / oracles::obe::coherent_fraction(0.01, kGamma);
        const bool ok = pop_err < 1e-6 && frac_err < 1e-6;
        c.pass = c.pass && ok;
        detail << "population err " << fmt(pop_err) << ", fraction rel err " << fmt(frac_err);
    }

    // two-time coherence against the closed form
    {
        const Setup s = make_setup(free_env, 0.01);
        double worst = 0.0;
        for (const double tau : {0.0, 50.0, 200.0, 700.0, 3000.0, 10000.0}) {
            const auto series =
                dyn::regression_correlator(s.liouvillian, s.rho_ss, dyn::identity2(),
                                           dyn::sigma_dag(), dyn::sigma(),
                                           std::vector<double>{tau});
            worst = std::max(worst, std::abs(series.values.front()
                                             - oracles::obe::g0(0.01, kGamma, tau)));
        }
        const double rel = worst / oracles::obe::excited_population(0.01, kGamma);
        const bool ok = rel < 1e-6;
        c.pass = c.pass && ok;
        detail << "; g0 rel err " << fmt(rel);
    }

    // spectrum versus brute-force transform of the closed-form coherence,
    // including the side-peak positions at +-Omega for Omega = 10 gamma
    {
        const double omega = 10.0 * kGamma;
        const Setup s = make_setup(free_env, omega);
        std::vector<double> grid;
        for (double x = -0.022; x <= 0.0221; x += 5.0e-4) {
            grid.push_back(x);
        }
        const auto spec =
            emission::incoherent_spectrum(s.liouvillian, s.rho_ss, s.pc, false, grid);

        const complexd q = s.rho_ss(1, 0);
        const double plateau = std::norm(q);
        const double tau_hi = 40.0 / kGamma;
        const std::size_t n = 112000; // even
        const double h = tau_hi / static_cast<double>(n);
        std::vector<complexd> g0s(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            g0s[i] = oracles::obe::g0(omega, kGamma, static_cast<double>(i) * h) - plateau;
        }
        double worst = 0.0;
        double peak = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const complexd rot = std::polar(1.0, grid[j] * h);
            complexd z{1.0, 0.0};
            complexd acc{0.0, 0.0};
            for (std::size_t i = 0; i <= n; ++i) {
                const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                acc += w * g0s[i] * z;
                z *= rot;
            }
            const double oracle = (acc * h / 3.0).real();
            worst = std::max(worst, std::abs(spec.total[j] - oracle));
            peak = std::max(peak, std::abs(oracle));
        }
        const double rel = worst / peak;
        const bool ok_val = rel < 1e-6;

        std::size_t left = 0;
        std::size_t right = 0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (grid[j] < -5.0 * kGamma && spec.total[j] > spec.total[left]) {
                left = j;
            }
            if (grid[j] > 5.0 * kGamma && (right == 0 || spec.total[j] > spec.total[right])) {
                right = j;
            }
        }
        const bool ok_peaks = std::abs(grid[left] + omega) <= 5.0e-4 + 1e-12
                              && std::abs(grid[right] - omega) <= 5.0e-4 + 1e-12;
        c.pass = c.pass && ok_val && ok_peaks;
        detail << "; spectrum rel err " << fmt(rel) << (ok_val ? "" : " <- above 1e-6")
               << "; side peaks at " << fmt(grid[left]) << ", " << fmt(grid[right])
               << " vs +-" << fmt(omega) << (ok_peaks ? "" : " <- misplaced");
    }

    c.detail = detail.str();
    return c;
}

// ------- 5: zero-delay coalescence -------

Criterion coalescence() {
    Criterion c;
    const phonon::PhononEnvironment env{kAlpha, kNuC, 4.0};
    const auto pc = phonon::phonon_correlations(env, phonon::default_phonon_grid());
    const auto kernel = phonon::make_rate_kernel(env);
    const std::vector<double> grid = hom::default_g2_grid(kGamma, 400.0);
    std::ostringstream detail;
    for (const double s_param : {0.1, 1.0, 10.0}) {
        dyn::DriveConfig drive;
        drive.omega = s_param * kGamma / std::sqrt(2.0);
        drive.gamma = kGamma;
        const auto l = dyn::build_liouvillian(drive, phonon::rates_from_kernel(kernel,
                                                                               drive.omega));
        const auto rho = dyn::steady_state(l);
        for (const bool markovian : {false, true}) {
            const auto raw = hom::g2_hom(l, rho, pc, grid, markovian);
            const double zero = std::abs(raw.values.front());
            const bool ok = zero <= 1e-6;
            c.pass = c.pass && ok;
            detail << (detail.tellp() > 0 ? "; " : "") << "s=" << fmt(s_param)
                   << (markovian ? " M" : " NM") << ": " << fmt(zero)
                   << (ok ? "" : " <- above 1e-6");
        }
    }
    c.detail = detail.str();
    return c;
}

// ------- 6: convolved dip at weak drive -------

Criterion weak_drive_dip() {
    Criterion c;
    const phonon::PhononEnvironment env{kAlpha, kNuC, 4.0};
    dyn::DriveConfig drive;
    drive.omega = 0.1 * kGamma / std::sqrt(2.0);
    drive.gamma = kGamma;
    const hom::HomResult nm = hom::compute_hom(env, drive, {400.0}, false);
    const hom::HomResult m = hom::compute_hom(env, drive, {400.0}, true);
    const bool ok_nm = std::abs(nm.dip_depth - 0.5) <= 0.1;
    const bool ok_m = m.dip_depth >= 0.9;
    c.pass = ok_nm && ok_m;
    c.detail = "non-Markovian dip " + fmt(nm.dip_depth) + " vs 0.5 +- 0.1"
               + (ok_nm ? "" : " <- out of window") + "; Markovian dip " + fmt(m.dip_depth)
               + " vs >= 0.9" + (ok_m ? "" : " <- below threshold");
    return c;
}

// ------- 7: sweep non-monotonicity -------

Criterion sweep_interior_maximum() {
    Criterion c;
    const phonon::PhononEnvironment env{kAlpha, kNuC, 4.0};
    std::vector<double> s_values(30);
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        s_values[i] = 0.05 * std::pow(20.0 / 0.05, static_cast<double>(i) / 29.0);
    }
    dyn::DriveConfig drive;
    drive.gamma = kGamma;
    const auto points = hom::dip_depth_sweep(env, drive, {400.0}, s_values, false);

    std::size_t best = 0;
    std::size_t near_01 = 0;
    std::size_t near_10 = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].ok) {
            c.pass = false;
            c.detail = "sweep point s=" + fmt(points[i].s) + " failed: " + points[i].error;
            return c;
        }
        if (points[i].dip_depth > points[best].dip_depth) {
            best = i;
        }
        if (std::abs(points[i].s - 0.1) < std::abs(points[near_01].s - 0.1)) {
            near_01 = i;
        }
        if (std::abs(points[i].s - 10.0) < std::abs(points[near_10].s - 10.0)) {
            near_10 = i;
        }
    }
    const bool interior = best > 0 && best + 1 < points.size();
    const bool near_one = points[best].s > 0.3 && points[best].s < 3.0;
    const bool exceeds = points[best].dip_depth > points[near_01].dip_depth
                         && points[best].dip_depth > points[near_10].dip_depth;
    c.pass = interior && near_one && exceeds;
    c.detail = "max dip " + fmt(points[best].dip_depth) + " at s=" + fmt(points[best].s)
               + "; dip(s~0.1)=" + fmt(points[near_01].dip_depth)
               + "; dip(s~10)=" + fmt(points[near_10].dip_depth);
    if (!c.pass) {
        c.detail += " <- no interior maximum near s=1";
    }
    return c;
}

// ------- 8: property suite -------

Criterion property_suite() {
    Criterion c;
    std::ostringstream detail;
    const phonon::PhononEnvironment env{kAlpha, kNuC, 4.0};
    const Setup s = make_setup(env, 0.01);

    // trace preservation and steady-state positivity
    {
        std::mt19937 rng(2026u);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const Eigen::Matrix2cd rho = oracles::random_density(rng);
            worst = std::max(worst, std::abs(dyn::unvec(s.liouvillian * dyn::vec(rho)).trace()));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
            0.5 * (s.rho_ss + s.rho_ss.adjoint()));
        const bool ok = worst < 1e-12 && es.eigenvalues().minCoeff() > -1e-10;
        c.pass = c.pass && ok;
        detail << "trace residual " << fmt(worst) << ", min eigenvalue "
               << fmt(es.eigenvalues().minCoeff()) << (ok ? "" : " <- violated");
    }

    // phonon-factor identities
    {
        const double b4 = std::pow(phonon::b_squared(s.pc), 2);
        double worst_gc = 0.0;
        double worst_gcal = 0.0;
        for (std::size_t i = 0; i < s.pc.tau_grid.size(); ++i) {
            worst_gc = std::max(worst_gc, std::abs(s.pc.G[i] * s.pc.C[i] - b4));
            worst_gcal = std::max(worst_gcal, std::abs(std::abs(s.pc.Gcal[i]) - 1.0));
        }
        const double g0_err = std::abs(s.pc.G[0] - 1.0);
        const bool ok = worst_gc <= 1e-12 && worst_gcal <= 1e-10 && g0_err <= 1e-12;
        c.pass = c.pass && ok;
        detail << "; G*C=B^4 dev " << fmt(worst_gc) << ", |Gcal|-1 dev " << fmt(worst_gcal)
               << ", G(0)-1 dev " << fmt(g0_err) << (ok ? "" : " <- violated");
    }

    // regression versus direct time stepping
    {
        const Eigen::Matrix2cd x0 = dyn::sigma() * s.rho_ss * dyn::sigma_dag();
        std::vector<double> taus{0.0, 3.0, 70.0, 900.0, 6000.0};
        const auto series = dyn::regression_correlator(
            s.liouvillian, s.rho_ss, dyn::sigma(), dyn::sigma_dag(),
            dyn::sigma_dag() * dyn::sigma(), taus);
        double worst = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const auto evolved =
                dyn::evolve_density(s.liouvillian, x0, std::vector<double>{taus[i]});
            const complexd direct = (dyn::sigma_dag() * dyn::sigma() * evolved.front()).trace();
            worst = std::max(worst, std::abs(series.values[i] - direct));
        }
        const bool ok = worst < 1e-8;
        c.pass = c.pass && ok;
        detail << "; regression vs stepping " << fmt(worst) << (ok ? "" : " <- above 1e-8");
    }

    // Fourier closed form versus quadrature
    {
        const auto sum = dyn::regression_exponential_sum(
            s.liouvillian, s.rho_ss, dyn::identity2(), dyn::sigma_dag(), dyn::sigma());
        double worst = 0.0;
        for (const auto& term : sum) {
            if (std::abs(term.exponent) < 1e-9) {
                continue;
            }
            for (const double dw : {0.0, 0.01, 0.5}) {
                const complexd closed =
                    numerics::half_line_fourier({term}, dw);
                const complexd brute =
                    oracles::half_line_fourier_numeric(term.coefficient, term.exponent, dw);
                worst = std::max(worst, std::abs(closed - brute)
                                            / std::max(1.0, std::abs(closed)));
            }
        }
        const bool ok = worst < 1e-6;
        c.pass = c.pass && ok;
        detail << "; Fourier closed vs quadrature " << fmt(worst) << (ok ? "" : " <- above 1e-6");
    }

    // convolution normalization
    {
        const std::vector<double> ones(401, 1.0);
        const auto flat = numerics::convolve_gaussian(ones, 8.0, 400.0);
        double worst = 0.0;
        for (const double v : flat) {
            worst = std::max(worst, std::abs(v - 1.0));
        }
        std::vector<double> bump(1001, 0.0);
        for (std::size_t i = 0; i < bump.size(); ++i) {
            const double x = (static_cast<double>(i) - 500.0) * 8.0;
            bump[i] = std::exp(-x * x / (2.0 * 150.0 * 150.0));
        }
        const auto conv = numerics::convolve_gaussian(bump, 8.0, 400.0);
        double in_sum = 0.0;
        double out_sum = 0.0;
        for (std::size_t i = 0; i < bump.size(); ++i) {
            in_sum += bump[i];
            out_sum += conv[i];
        }
        const double int_err = std::abs(out_sum - in_sum) / in_sum;
        const bool ok = worst < 1e-12 && int_err < 1e-6;
        c.pass = c.pass && ok;
        detail << "; convolution flat dev " << fmt(worst) << ", integral rel dev "
               << fmt(int_err) << (ok ? "" : " <- violated");
    }

    c.detail = detail.str();
    return c;
}

} // namespace

int main() {
    const struct {
        const char* name;
        std::function<Criterion()> run;
    } criteria[] = {
        {"sideband power fractions at 0/4/15 K", sideband_fractions},
        {"spectral-integral identity", spectral_identity},
        {"coherent-fraction limits at weak drive", coherent_fraction_limits},
        {"free-environment closed-form agreement", atomic_limit},
        {"zero-delay coalescence, s in {0.1, 1, 10}", coalescence},
        {"convolved dip depths at s = 0.1", weak_drive_dip},
        {"dip-depth sweep interior maximum", sweep_interior_maximum},
        {"property suite", property_suite},
    };

    int failures = 0;
    int index = 0;
    for (const auto& entry : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Criterion result;
        try {
            result = entry.run();
        } catch (const std::exception& ex) {
            result.pass = false;
            result.detail = std::string("exception: ") + ex.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %d. %s [%s] (%.2f s)\n", result.pass ? "PASS" : "FAIL", index,
                    entry.name, result.detail.c_str(), elapsed);
        if (!result.pass) {
            ++failures;
        }
    }
    if (failures > 0) {
        std::printf("%d of 8 criteria failing\n", failures);
        return 1;
    }
    std::printf("all 8 criteria passing\n");
    return 0;
}
