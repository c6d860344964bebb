// config.hpp — flat key=value configuration for the simulation CLI.

#pragma once

#include <string>

#include "polsim/dynamics.hpp"
#include "polsim/hom.hpp"
#include "polsim/phonon.hpp"

namespace polsim::config {

struct SimConfig {
    phonon::PhononEnvironment phonon{};   // alpha = 0.03 ps^2, nu_c = 2.2 ps^-1, T = 4 K
    dynamics::DriveConfig drive{};        // Omega = 0.01 ps^-1, gamma = 1/700 ps^-1
    hom::DetectorModel detector{};        // fwhm = 400 ps
    double phonon_tau_max{20.0};          // ps
    double phonon_tau_step{0.005};        // ps
    double optical_tau_max{0.0};          // ps; 0 means derive 10/gamma
    double freq_min{-11.0};               // ps^-1
    double freq_max{11.0};                // ps^-1
    std::size_t freq_points{2201};        //
    bool markovian{false};                //
    std::string output_path;              // empty means per-command default
};

// Parses a flat key=value document ('#' starts a comment, one pair per line);
// unknown keys, malformed numbers, and invariant violations raise errors
// naming the key and line.
SimConfig parse_config(const std::string& text);

// Same, reading the document from a file.
SimConfig parse_config_file(const std::string& path);

// Echo of the fully resolved configuration, suitable for a run sidecar and
// re-parseable by parse_config.
std::string resolved_config_text(const SimConfig& cfg);

// 10/gamma when optical_tau_max is left at auto.
double effective_optical_tau_max(const SimConfig& cfg);

} // namespace polsim::config
