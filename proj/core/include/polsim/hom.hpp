// hom.hpp — Hong-Ou-Mandel two-photon correlations with detector response.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "polsim/dynamics.hpp"
#include "polsim/phonon.hpp"
#include "polsim/series.hpp"

namespace polsim::hom {

// ------- domain types -------

struct DetectorModel {
    double fwhm{400.0}; // Gaussian response FWHM delta-tau [ps]
};

struct HomResult {
    CorrelationSeries raw;        // g2 before detector response, tau >= 0
    CorrelationSeries convolved;  // even-extended, convolved, tau >= 0 half
    double dip_depth{0.0};        // 1 - convolved(0)
    double asymptote{0.0};        // raw series value at grid end before rescale
    double scale_factor{1.0};     // rescale applied so raw -> 1 at grid end
};

struct DipPoint {
    double s{0.0};         // saturation parameter, Omega = s * gamma / sqrt(2)
    double dip_depth{0.0}; // valid only when ok
    bool ok{false};        //
    std::string error;     // failure diagnostic when !ok
};

// ------- operations -------

// Unbalanced Mach-Zehnder HOM correlation, normalized and rescaled to 1 at the
// grid end. Optional out-parameters report the pre-rescale asymptote and the
// scale factor applied.
CorrelationSeries g2_hom(const dynamics::Liouvillian& liouvillian,
                         const dynamics::DensityOperator& rho_ss,
                         const phonon::PhononCorrelations& pc,
                         std::span<const double> tau_grid,
                         bool markovian,
                         double* pre_rescale_asymptote = nullptr,
                         double* scale_factor = nullptr);

// Even extension g2(-tau) = g2(tau), Gaussian detector convolution on a
// uniform resampling of the two-scale grid, returning the tau >= 0 half.
CorrelationSeries detector_convolved_g2(const CorrelationSeries& raw, const DetectorModel& det);

// Two-scale grid for g2: [0, 20 ps] at 0.005 ps union geometric spacing out
// to 10/gamma + 5*fwhm.
std::vector<double> default_g2_grid(double gamma, double fwhm);

// Full pipeline at fixed drive: correlations, raw g2, detector convolution,
// dip depth.
HomResult compute_hom(const phonon::PhononEnvironment& env,
                      const dynamics::DriveConfig& drive,
                      const DetectorModel& det,
                      bool markovian);

// Same pipeline reusing precomputed phonon correlations and rate kernel
// (shared across sweep points or custom grids).
HomResult compute_hom(const phonon::PhononCorrelations& pc,
                      const phonon::RateKernel& kernel,
                      const dynamics::DriveConfig& drive,
                      const DetectorModel& det,
                      bool markovian);

// Dip depth across drive strengths s (ascending, positive); per-point failures
// are captured in the result list and the sweep continues.
std::vector<DipPoint> dip_depth_sweep(const phonon::PhononEnvironment& env,
                                      const dynamics::DriveConfig& drive_template,
                                      const DetectorModel& det,
                                      std::span<const double> s_values,
                                      bool markovian);

} // namespace polsim::hom
