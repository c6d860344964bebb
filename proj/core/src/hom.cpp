// hom.cpp — HOM correlation assembly, detector convolution, dip-depth sweep.

#include "polsim/hom.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "polsim/numerics.hpp"
#include "uniform_interp.hpp"

namespace polsim::hom {

namespace {

using complexd = std::complex<double>;

void check_detector(const DetectorModel& det, const char* where) {
    if (!(det.fwhm > 0.0) || !std::isfinite(det.fwhm)) {
        throw std::invalid_argument(std::string(where) + ": detector fwhm must be positive");
    }
}

// the g2 assembly leans on the exponential-of-phi structure; re-assert the
// two identities it needs at the point of use
void check_phonon_identities(const phonon::PhononCorrelations& pc, double b2) {
    const double b4 = b2 * b2;
    for (std::size_t i = 0; i < pc.tau_grid.size(); ++i) {
        if (std::abs(std::abs(pc.Gcal[i]) - 1.0) > 1e-10) {
            throw std::invalid_argument("g2_hom: phonon correlations violate |Gcal| = 1");
        }
        if (std::abs(pc.G[i] * pc.C[i] - b4) > 1e-10 * b4) {
            throw std::invalid_argument("g2_hom: phonon correlations violate G*C = B^4");
        }
    }
}

double min_spacing(std::span<const double> grid) {
    double m = grid.back() - grid.front();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        m = std::min(m, grid[i] - grid[i - 1]);
    }
    return m;
}

// linear interpolation of a real series on an ascending (nonuniform) grid
double interp_at(std::span<const double> grid, const std::vector<complexd>& values,
                 double x, std::size_t& cursor) {
    while (cursor + 2 < grid.size() && grid[cursor + 1] <= x) {
        ++cursor;
    }
    const double lo = grid[cursor];
    const double hi = grid[cursor + 1];
    const double frac = (x <= lo) ? 0.0 : (x >= hi ? 1.0 : (x - lo) / (hi - lo));
    return (1.0 - frac) * values[cursor].real() + frac * values[cursor + 1].real();
}

// phonon window long enough for the plateau even when nu_c is small
std::vector<double> pipeline_phonon_grid(const phonon::PhononEnvironment& env) {
    return phonon::default_phonon_grid(std::max(20.0, 20.0 / env.nu_c));
}

} // namespace

CorrelationSeries g2_hom(const dynamics::Liouvillian& liouvillian,
                         const dynamics::DensityOperator& rho_ss,
                         const phonon::PhononCorrelations& pc,
                         std::span<const double> tau_grid,
                         bool markovian,
                         double* pre_rescale_asymptote,
                         double* scale_factor) {
    if (tau_grid.size() < 2 || std::abs(tau_grid.front()) > 1e-12) {
        throw std::invalid_argument("g2_hom: tau grid must start at 0 with at least two points");
    }
    const double b2 = phonon::b_squared(pc);
    check_phonon_identities(pc, b2);

    const double n_ss = rho_ss(1, 1).real();       // <sigma^dag sigma>
    const complexd s_ss = rho_ss(1, 0);            // <sigma>
    const double q2 = std::norm(s_ss);
    const double field_b2 = markovian ? 1.0 : b2;  // emitted-field dressing factor
    const double denom = n_ss * n_ss - field_b2 * field_b2 * q2 * q2;
    if (denom < 1e-14) {
        throw std::runtime_error("g2_hom: correlation undefined at vanishing drive");
    }

    const Eigen::Matrix2cd s = dynamics::sigma();
    const Eigen::Matrix2cd sd = dynamics::sigma_dag();
    const Eigen::Matrix2cd n_op = sd * s;
    const Eigen::Matrix2cd id = dynamics::identity2();

    // two-time pieces entering the beam-splitter reduction of G2_HOM
    const CorrelationSeries t1 =
        dynamics::regression_correlator(liouvillian, rho_ss, s, sd, n_op, tau_grid);
    const CorrelationSeries t2 =
        dynamics::regression_correlator(liouvillian, rho_ss, id, sd, n_op, tau_grid);
    const CorrelationSeries t3 =
        dynamics::regression_correlator(liouvillian, rho_ss, s, sd, sd, tau_grid);
    const CorrelationSeries t4 =
        dynamics::regression_correlator(liouvillian, rho_ss, s, id, sd, tau_grid);
    const CorrelationSeries t5 =
        dynamics::regression_correlator(liouvillian, rho_ss, s, id, s, tau_grid);

    const detail::UniformInterp g_fun(pc.tau_grid, pc.G, {b2, 0.0});
    const detail::UniformInterp c_fun(pc.tau_grid, pc.C, {b2, 0.0});
    const detail::UniformInterp gcal_fun(pc.tau_grid, pc.Gcal, {1.0, 0.0});

    CorrelationSeries out;
    out.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    out.values.resize(tau_grid.size());
    out.kind = SeriesKind::g2_raw;

    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const double tau = tau_grid[i];
        const complexd g = markovian ? complexd{1.0, 0.0} : g_fun(tau);
        const complexd c = markovian ? complexd{1.0, 0.0} : c_fun(tau);
        const complexd gcal = markovian ? complexd{1.0, 0.0} : gcal_fun(tau);
        const complexd cross = field_b2 * s_ss * (t2.values[i] - gcal * t3.values[i]);
        const double val = 0.5 * (t1.values[i].real() + 2.0 * cross.real()
                                  - std::norm(g) * std::norm(t4.values[i])
                                  - std::norm(c) * std::norm(t5.values[i])
                                  + n_ss * n_ss);
        out.values[i] = val / denom;
    }

    const double asymptote = out.values.back().real();
    if (std::abs(asymptote) < 1e-12) {
        throw std::runtime_error("g2_hom: vanishing long-delay asymptote, cannot rescale");
    }
    const double scale = 1.0 / asymptote;
    for (complexd& v : out.values) {
        v *= scale;
    }
    if (pre_rescale_asymptote != nullptr) {
        *pre_rescale_asymptote = asymptote;
    }
    if (scale_factor != nullptr) {
        *scale_factor = scale;
    }
    return out;
}

CorrelationSeries detector_convolved_g2(const CorrelationSeries& raw, const DetectorModel& det) {
    check_detector(det, "detector_convolved_g2");
    if (raw.tau_grid.size() < 2 || std::abs(raw.tau_grid.front()) > 1e-12) {
        throw std::invalid_argument(
            "detector_convolved_g2: series must start at tau = 0 with at least two points");
    }
    for (std::size_t i = 1; i < raw.tau_grid.size(); ++i) {
        if (!(raw.tau_grid[i] > raw.tau_grid[i - 1])) {
            throw std::invalid_argument("detector_convolved_g2: tau grid must be ascending");
        }
    }

    CorrelationSeries out;
    out.kind = SeriesKind::g2_convolved;

    // detector far faster than the sampling: response acts as a delta
    if (det.fwhm <= min_spacing(raw.tau_grid) / 100.0) {
        out.tau_grid = raw.tau_grid;
        out.values = raw.values;
        return out;
    }

    const double span = raw.tau_grid.back();
    if (span < 5.0 * det.fwhm) {
        throw std::invalid_argument(
            "detector_convolved_g2: series span must reach at least 5 detector widths");
    }

    const double h = det.fwhm / 50.0;
    const auto half = static_cast<std::size_t>(std::floor(span / h));
    if (half > 10'000'000) {
        throw std::invalid_argument(
            "detector_convolved_g2: resampling grid too large, increase fwhm or shrink span");
    }

    // uniform resample of the tau >= 0 half, then even extension about 0
    std::vector<double> half_grid(half + 1);
    std::vector<double> half_vals(half + 1);
    std::size_t cursor = 0;
    for (std::size_t i = 0; i <= half; ++i) {
        half_grid[i] = static_cast<double>(i) * h;
        half_vals[i] = interp_at(raw.tau_grid, raw.values, half_grid[i], cursor);
    }
    std::vector<double> extended(2 * half + 1);
    for (std::size_t i = 0; i <= half; ++i) {
        extended[half + i] = half_vals[i];
        extended[half - i] = half_vals[i];
    }

    const std::vector<double> smoothed = numerics::convolve_gaussian(extended, h, det.fwhm);

    out.tau_grid = std::move(half_grid);
    out.values.resize(half + 1);
    for (std::size_t i = 0; i <= half; ++i) {
        out.values[i] = complexd{smoothed[half + i], 0.0};
    }
    return out;
}

std::vector<double> default_g2_grid(double gamma, double fwhm) {
    if (!(gamma > 0.0) || !(fwhm > 0.0)) {
        throw std::invalid_argument("default_g2_grid: gamma and fwhm must be positive");
    }
    const std::vector<double> phonon_part = phonon::default_phonon_grid();
    const double hi = 10.0 / gamma + 5.0 * fwhm;
    const double lo = 0.001;
    const std::size_t points = 1500;
    std::vector<double> optical_part;
    optical_part.reserve(points);
    const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        optical_part.push_back(lo * std::exp(ratio * static_cast<double>(i)));
    }
    optical_part.back() = hi;
    return dynamics::merge_grids(phonon_part, optical_part);
}

HomResult compute_hom(const phonon::PhononEnvironment& env,
                      const dynamics::DriveConfig& drive,
                      const DetectorModel& det,
                      bool markovian) {
    const std::vector<double> phonon_grid = pipeline_phonon_grid(env);
    const phonon::PhononCorrelations pc = phonon::phonon_correlations(env, phonon_grid);
    const phonon::RateKernel kernel = phonon::make_rate_kernel(env);
    return compute_hom(pc, kernel, drive, det, markovian);
}

HomResult compute_hom(const phonon::PhononCorrelations& pc,
                      const phonon::RateKernel& kernel,
                      const dynamics::DriveConfig& drive,
                      const DetectorModel& det,
                      bool markovian) {
    check_detector(det, "compute_hom");
    const phonon::PolaronQuantities pq = phonon::rates_from_kernel(kernel, drive.omega);
    const dynamics::Liouvillian liouvillian = dynamics::build_liouvillian(drive, pq);
    const dynamics::DensityOperator rho_ss = dynamics::steady_state(liouvillian);
    const std::vector<double> grid = default_g2_grid(drive.gamma, det.fwhm);

    HomResult result;
    result.raw = g2_hom(liouvillian, rho_ss, pc, grid, markovian,
                        &result.asymptote, &result.scale_factor);
    result.convolved = detector_convolved_g2(result.raw, det);
    result.dip_depth = 1.0 - result.convolved.values.front().real();
    return result;
}

std::vector<DipPoint> dip_depth_sweep(const phonon::PhononEnvironment& env,
                                      const dynamics::DriveConfig& drive_template,
                                      const DetectorModel& det,
                                      std::span<const double> s_values,
                                      bool markovian) {
    check_detector(det, "dip_depth_sweep");
    if (s_values.empty()) {
        throw std::invalid_argument("dip_depth_sweep: empty s list");
    }
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] > 0.0)) {
            throw std::invalid_argument("dip_depth_sweep: s values must be positive");
        }
        if (i > 0 && !(s_values[i] > s_values[i - 1])) {
            throw std::invalid_argument("dip_depth_sweep: s values must be ascending");
        }
    }

    const std::vector<double> phonon_grid = pipeline_phonon_grid(env);
    const phonon::PhononCorrelations pc = phonon::phonon_correlations(env, phonon_grid);
    const phonon::RateKernel kernel = phonon::make_rate_kernel(env);

    std::vector<DipPoint> sweep;
    sweep.reserve(s_values.size());
    for (const double s : s_values) {
        DipPoint point;
        point.s = s;
        dynamics::DriveConfig drive = drive_template;
        drive.omega = s * drive.gamma / std::sqrt(2.0);
        try {
            point.dip_depth = compute_hom(pc, kernel, drive, det, markovian).dip_depth;
            point.ok = true;
        } catch (const std::exception& ex) {
            point.error = ex.what();
        }
        sweep.push_back(point);
    }
    return sweep;
}

} // namespace polsim::hom
