// bench_core.cpp — throughput of the hot paths: phonon quadratures, rate
// kernels, steady states, correlators, spectra, and detector convolution.

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "polsim/dynamics.hpp"
#include "polsim/emission.hpp"
#include "polsim/hom.hpp"
#include "polsim/numerics.hpp"
#include "polsim/phonon.hpp"

namespace {

namespace dyn = polsim::dynamics;
namespace phonon = polsim::phonon;
namespace emission = polsim::emission;
namespace hom = polsim::hom;
namespace numerics = polsim::numerics;

constexpr double kGamma = 1.0 / 700.0;
const phonon::PhononEnvironment kEnv{0.03, 2.2, 4.0};

struct Fixture {
    phonon::PhononCorrelations pc;
    phonon::RateKernel kernel;
    dyn::Liouvillian liouvillian;
    dyn::DensityOperator rho_ss;

    Fixture()
        : pc(phonon::phonon_correlations(kEnv, phonon::default_phonon_grid())),
          kernel(phonon::make_rate_kernel(kEnv)) {
        dyn::DriveConfig drive;
        drive.omega = 0.01;
        drive.gamma = kGamma;
        liouvillian = dyn::build_liouvillian(drive, phonon::rates_from_kernel(kernel, 0.01));
        rho_ss = dyn::steady_state(liouvillian);
    }
};

const Fixture& fixture() {
    static const Fixture fx;
    return fx;
}

void bm_displacement_factor(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(phonon::displacement_factor(kEnv));
    }
}
BENCHMARK(bm_displacement_factor);

void bm_phonon_correlations(benchmark::State& state) {
    const std::vector<double> grid = phonon::default_phonon_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(phonon::phonon_correlations(kEnv, grid));
    }
}
BENCHMARK(bm_phonon_correlations)->Unit(benchmark::kMillisecond);

void bm_make_rate_kernel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(phonon::make_rate_kernel(kEnv));
    }
}
BENCHMARK(bm_make_rate_kernel)->Unit(benchmark::kMillisecond);

void bm_rates_from_kernel(benchmark::State& state) {
    const phonon::RateKernel kernel = phonon::make_rate_kernel(kEnv);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phonon::rates_from_kernel(kernel, 0.01));
    }
}
BENCHMARK(bm_rates_from_kernel);

void bm_steady_state(benchmark::State& state) {
    const auto& fx = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(dyn::steady_state(fx.liouvillian));
    }
}
BENCHMARK(bm_steady_state);

void bm_regression_sum(benchmark::State& state) {
    const auto& fx = fixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(dyn::regression_exponential_sum(
            fx.liouvillian, fx.rho_ss, dyn::identity2(), dyn::sigma_dag(), dyn::sigma()));
    }
}
BENCHMARK(bm_regression_sum);

void bm_regression_series(benchmark::State& state) {
    const auto& fx = fixture();
    const std::vector<double> grid = hom::default_g2_grid(kGamma, 400.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dyn::regression_correlator(fx.liouvillian, fx.rho_ss,
                                                            dyn::sigma(), dyn::sigma_dag(),
                                                            dyn::sigma_dag() * dyn::sigma(),
                                                            grid));
    }
}
BENCHMARK(bm_regression_series)->Unit(benchmark::kMillisecond);

void bm_incoherent_spectrum(benchmark::State& state) {
    const auto& fx = fixture();
    std::vector<double> grid(2201);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = -11.0 + 0.01 * static_cast<double>(i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(emission::incoherent_spectrum(fx.liouvillian, fx.rho_ss,
                                                               fx.pc, false, grid));
    }
}
BENCHMARK(bm_incoherent_spectrum)->Unit(benchmark::kMillisecond);

void bm_g2_hom(benchmark::State& state) {
    const auto& fx = fixture();
    const std::vector<double> grid = hom::default_g2_grid(kGamma, 400.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hom::g2_hom(fx.liouvillian, fx.rho_ss, fx.pc, grid, false));
    }
}
BENCHMARK(bm_g2_hom)->Unit(benchmark::kMillisecond);

void bm_convolve_gaussian(benchmark::State& state) {
    std::vector<double> series(4001);
    for (std::size_t i = 0; i < series.size(); ++i) {
        series[i] = 1.0 - std::exp(-static_cast<double>(i) * 8.0 * kGamma);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(numerics::convolve_gaussian(series, 8.0, 400.0));
    }
}
BENCHMARK(bm_convolve_gaussian)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
