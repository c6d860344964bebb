// config.cpp — key=value parsing, validation, and resolved-config echo.

#include "polsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polsim::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = 0;
    std::size_t hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) {
        ++lo;
    }
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) {
        --hi;
    }
    return s.substr(lo, hi - lo);
}

[[noreturn]] void fail(const std::string& key, std::size_t line, const std::string& what) {
    throw std::invalid_argument("parse_config: " + what + " for key '" + key + "' on line "
                                + std::to_string(line));
}

double parse_double(const std::string& key, const std::string& value, std::size_t line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(x)) {
            fail(key, line, "unparseable number '" + value + "'");
        }
        return x;
    } catch (const std::invalid_argument&) {
        fail(key, line, "unparseable number '" + value + "'");
    } catch (const std::out_of_range&) {
        fail(key, line, "out-of-range number '" + value + "'");
    }
}

std::size_t parse_count(const std::string& key, const std::string& value, std::size_t line) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(value, &used);
        if (used != value.size() || x <= 0) {
            fail(key, line, "expected a positive integer, got '" + value + "'");
        }
        return static_cast<std::size_t>(x);
    } catch (const std::invalid_argument&) {
        fail(key, line, "expected a positive integer, got '" + value + "'");
    } catch (const std::out_of_range&) {
        fail(key, line, "out-of-range integer '" + value + "'");
    }
}

bool parse_flag(const std::string& key, const std::string& value, std::size_t line) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    fail(key, line, "expected true/false/1/0, got '" + value + "'");
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) {
        throw std::invalid_argument("parse_config: invariant violation for key '" + key + "': "
                                    + what);
    }
}

std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

SimConfig parse_config(const std::string& text) {
    SimConfig cfg;
    std::istringstream stream(text);
    std::string raw_line;
    std::size_t line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const std::size_t hash = raw_line.find('#');
        const std::string line = trim(hash == std::string::npos ? raw_line
                                                                : raw_line.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("parse_config: expected key=value on line "
                                        + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("parse_config: empty key on line "
                                        + std::to_string(line_no));
        }

        if (key == "alpha_ps2") {
            cfg.phonon.alpha = parse_double(key, value, line_no);
        } else if (key == "nu_c_psinv") {
            cfg.phonon.nu_c = parse_double(key, value, line_no);
        } else if (key == "temperature_K") {
            cfg.phonon.temperature = parse_double(key, value, line_no);
        } else if (key == "omega_psinv") {
            cfg.drive.omega = parse_double(key, value, line_no);
        } else if (key == "gamma_psinv") {
            cfg.drive.gamma = parse_double(key, value, line_no);
        } else if (key == "detuning_psinv") {
            cfg.drive.detuning_tilde = parse_double(key, value, line_no);
        } else if (key == "detector_fwhm_ps") {
            cfg.detector.fwhm = parse_double(key, value, line_no);
        } else if (key == "phonon_tau_max_ps") {
            cfg.phonon_tau_max = parse_double(key, value, line_no);
        } else if (key == "phonon_tau_step_ps") {
            cfg.phonon_tau_step = parse_double(key, value, line_no);
        } else if (key == "optical_tau_max_ps") {
            cfg.optical_tau_max = parse_double(key, value, line_no);
        } else if (key == "freq_min_psinv") {
            cfg.freq_min = parse_double(key, value, line_no);
        } else if (key == "freq_max_psinv") {
            cfg.freq_max = parse_double(key, value, line_no);
        } else if (key == "freq_points") {
            cfg.freq_points = parse_count(key, value, line_no);
        } else if (key == "markovian") {
            cfg.markovian = parse_flag(key, value, line_no);
        } else if (key == "output_path") {
            cfg.output_path = value;
        } else {
            throw std::invalid_argument("parse_config: unknown key '" + key + "' on line "
                                        + std::to_string(line_no));
        }
    }

    require(cfg.phonon.alpha >= 0.0 && std::isfinite(cfg.phonon.alpha), "alpha_ps2",
            "must be >= 0");
    require(cfg.phonon.nu_c > 0.0, "nu_c_psinv", "must be > 0");
    require(cfg.phonon.temperature >= 0.0, "temperature_K", "must be >= 0");
    require(cfg.drive.omega >= 0.0, "omega_psinv", "must be >= 0");
    require(cfg.drive.gamma > 0.0, "gamma_psinv", "must be > 0");
    require(std::isfinite(cfg.drive.detuning_tilde), "detuning_psinv", "must be finite");
    require(cfg.detector.fwhm > 0.0, "detector_fwhm_ps", "must be > 0");
    require(cfg.phonon_tau_step > 0.0 && cfg.phonon_tau_step <= 0.01, "phonon_tau_step_ps",
            "must be in (0, 0.01]");
    require(cfg.phonon_tau_max >= 20.0 / cfg.phonon.nu_c, "phonon_tau_max_ps",
            "must cover 20/nu_c");
    require(cfg.optical_tau_max >= 0.0, "optical_tau_max_ps", "must be >= 0 (0 = auto)");
    require(cfg.freq_max > cfg.freq_min, "freq_max_psinv", "must exceed freq_min_psinv");
    require(cfg.freq_points >= 2, "freq_points", "must be >= 2");
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("parse_config_file: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string resolved_config_text(const SimConfig& cfg) {
    std::ostringstream out;
    out << "alpha_ps2 = " << format_value(cfg.phonon.alpha) << "\n";
    out << "nu_c_psinv = " << format_value(cfg.phonon.nu_c) << "\n";
    out << "temperature_K = " << format_value(cfg.phonon.temperature) << "\n";
    out << "omega_psinv = " << format_value(cfg.drive.omega) << "\n";
    out << "gamma_psinv = " << format_value(cfg.drive.gamma) << "\n";
    out << "detuning_psinv = " << format_value(cfg.drive.detuning_tilde) << "\n";
    out << "detector_fwhm_ps = " << format_value(cfg.detector.fwhm) << "\n";
    out << "phonon_tau_max_ps = " << format_value(cfg.phonon_tau_max) << "\n";
    out << "phonon_tau_step_ps = " << format_value(cfg.phonon_tau_step) << "\n";
    out << "optical_tau_max_ps = " << format_value(cfg.optical_tau_max) << "\n";
    out << "freq_min_psinv = " << format_value(cfg.freq_min) << "\n";
    out << "freq_max_psinv = " << format_value(cfg.freq_max) << "\n";
    out << "freq_points = " << cfg.freq_points << "\n";
    out << "markovian = " << (cfg.markovian ? "true" : "false") << "\n";
    if (!cfg.output_path.empty()) {
        out << "output_path = " << cfg.output_path << "\n";
    }
    return out.str();
}

double effective_optical_tau_max(const SimConfig& cfg) {
    return cfg.optical_tau_max > 0.0 ? cfg.optical_tau_max : 10.0 / cfg.drive.gamma;
}

} // namespace polsim::config
