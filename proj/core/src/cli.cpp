// cli.cpp — subcommand implementations and output plumbing.

#include "polsim/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polsim/config.hpp"
#include "polsim/csv.hpp"
#include "polsim/dynamics.hpp"
#include "polsim/emission.hpp"
#include "polsim/hom.hpp"
#include "polsim/phonon.hpp"

namespace polsim::cli {

namespace {

struct CommonFlags {
    std::string config_path; //
    std::string out_path;    //
    bool markovian{false};   //
};

config::SimConfig load_config(const CommonFlags& flags) {
    config::SimConfig cfg = flags.config_path.empty()
                                ? config::SimConfig{}
                                : config::parse_config_file(flags.config_path);
    if (flags.markovian) {
        cfg.markovian = true;
    }
    if (!flags.out_path.empty()) {
        cfg.output_path = flags.out_path;
    }
    return cfg;
}

std::string out_path_or(const config::SimConfig& cfg, const std::string& fallback) {
    return cfg.output_path.empty() ? fallback : cfg.output_path;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    xs.back() = hi;
    return xs;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw std::invalid_argument("geomspace: need 0 < lo < hi and at least two points");
    }
    std::vector<double> xs(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo * std::exp(step * static_cast<double>(i));
    }
    xs.back() = hi;
    return xs;
}

double trapz(const std::vector<double>& xs, const std::vector<double>& ys) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        acc += 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
    }
    return acc;
}

std::string format_temperature(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

std::string with_temp_suffix(const std::string& path, double t) {
    const std::string tag = "_T" + format_temperature(t) + "K";
    const std::size_t dot = path.rfind('.');
    const std::size_t slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + tag;
    }
    return path.substr(0, dot) + tag + path.substr(dot);
}

void write_sidecars(const std::string& path, const config::SimConfig& cfg,
                    const std::string& summary) {
    csv::write_text(config::resolved_config_text(cfg), path + ".config.txt");
    if (!summary.empty()) {
        csv::write_text(summary, path + ".summary.txt");
    }
}

// value of an ascending-grid series at x, linear, clamped at the ends
double series_at(const CorrelationSeries& series, double x, std::size_t& cursor) {
    const auto& grid = series.tau_grid;
    while (cursor + 2 < grid.size() && grid[cursor + 1] <= x) {
        ++cursor;
    }
    const double lo = grid[cursor];
    const double hi = grid[cursor + 1];
    const double frac = (x <= lo) ? 0.0 : (x >= hi ? 1.0 : (x - lo) / (hi - lo));
    return (1.0 - frac) * series.values[cursor].real()
           + frac * series.values[cursor + 1].real();
}

struct DriveContext {
    phonon::PolaronQuantities pq;     //
    dynamics::Liouvillian liouvillian; //
    dynamics::DensityOperator rho_ss;  //
};

DriveContext make_drive_context(const config::SimConfig& cfg,
                                const phonon::RateKernel& kernel,
                                double omega) {
    DriveContext ctx;
    dynamics::DriveConfig drive = cfg.drive;
    drive.omega = omega;
    ctx.pq = phonon::rates_from_kernel(kernel, omega);
    ctx.liouvillian =
        dynamics::build_liouvillian(drive, ctx.pq, drive.detuning_tilde != 0.0);
    ctx.rho_ss = dynamics::steady_state(ctx.liouvillian);
    return ctx;
}

// ------- subcommands -------

int run_spectrum(const config::SimConfig& cfg, std::ostream& out) {
    const std::vector<double> tau_grid =
        phonon::default_phonon_grid(cfg.phonon_tau_max, cfg.phonon_tau_step);
    const phonon::PhononCorrelations pc = phonon::phonon_correlations(cfg.phonon, tau_grid);
    const phonon::RateKernel kernel = phonon::make_rate_kernel(cfg.phonon);
    const DriveContext ctx = make_drive_context(cfg, kernel, cfg.drive.omega);

    const std::vector<double> freqs = linspace(cfg.freq_min, cfg.freq_max, cfg.freq_points);
    const emission::Spectrum spec = emission::incoherent_spectrum(
        ctx.liouvillian, ctx.rho_ss, pc, cfg.markovian, freqs);

    csv::Dataset data;
    data.header = {"delta_omega_psinv", "S_total", "S_zpl", "S_sideband"};
    data.rows.reserve(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        data.rows.push_back({freqs[i], spec.total[i], spec.zpl[i], spec.sideband[i]});
    }
    const std::string path = out_path_or(cfg, "spectrum.csv");
    csv::write_csv(data, path);

    // total emitted power via Wiener-Khinchin, pi * g1(0); the ZPL is far
    // narrower than any reasonable frequency grid, so its grid integral is
    // resolution-limited and must not enter the fraction
    const double b2 = phonon::b_squared(pc);
    const double g0_zero = ctx.rho_ss(1, 1).real();
    const double g1_zero = (cfg.markovian ? b2 : 1.0) * g0_zero;
    const double total_power = std::numbers::pi * g1_zero;
    const double int_sideband = trapz(freqs, spec.sideband);
    const double sideband_fraction = total_power > 0.0 ? int_sideband / total_power : 0.0;

    std::ostringstream summary;
    summary << "coherent_weight = " << csv::format_sci(spec.coherent_weight) << "\n";
    summary << "sideband_fraction = " << csv::format_sci(sideband_fraction) << "\n";
    summary << "integral_S_sideband = " << csv::format_sci(int_sideband) << "\n";
    summary << "total_power = " << csv::format_sci(total_power) << "\n";
    summary << "g0_zero = " << csv::format_sci(g0_zero) << "\n";
    summary << "b_squared = " << csv::format_sci(b2) << "\n";
    write_sidecars(path, cfg, summary.str());

    out << "wrote " << path << " (" << data.rows.size() << " rows)\n";
    out << "coherent_weight = " << csv::format_sci(spec.coherent_weight) << "\n";
    out << "sideband_fraction = " << csv::format_sci(sideband_fraction) << "\n";
    return 0;
}

int run_coherent_fraction(const config::SimConfig& cfg, const std::vector<double>& temps,
                          double s_min, double s_max, std::size_t s_points,
                          std::ostream& out) {
    if (temps.empty()) {
        throw std::invalid_argument("coherent-fraction: empty temperature list");
    }
    const std::vector<double> s_values = geomspace(s_min, s_max, s_points);
    const std::string base = out_path_or(cfg, "coherent_fraction.csv");
    const std::vector<double> tau_grid =
        phonon::default_phonon_grid(cfg.phonon_tau_max, cfg.phonon_tau_step);

    bool sidecar_written = false;
    for (const double t : temps) {
        phonon::PhononEnvironment env = cfg.phonon;
        env.temperature = t;
        const phonon::PhononCorrelations pc = phonon::phonon_correlations(env, tau_grid);
        const phonon::RateKernel kernel = phonon::make_rate_kernel(env);

        csv::Dataset data;
        data.header = {"omega_psinv", "s", "fraction"};
        data.rows.reserve(s_values.size());
        for (const double s : s_values) {
            const double omega = s * cfg.drive.gamma / std::sqrt(2.0);
            const DriveContext ctx = make_drive_context(cfg, kernel, omega);
            const double fraction =
                emission::coherent_fraction(ctx.liouvillian, ctx.rho_ss, pc, cfg.markovian);
            data.rows.push_back({omega, s, fraction});
        }
        const std::string path = with_temp_suffix(base, t);
        csv::write_csv(data, path);
        if (!sidecar_written) {
            write_sidecars(base, cfg, "");
            sidecar_written = true;
        }
        out << "wrote " << path << " (" << data.rows.size() << " rows, T = "
            << format_temperature(t) << " K)\n";
    }
    return 0;
}

int run_hom(const config::SimConfig& cfg, bool s_given, double s_value, std::ostream& out) {
    dynamics::DriveConfig drive = cfg.drive;
    if (s_given) {
        if (!(s_value > 0.0)) {
            throw std::invalid_argument("hom: --s must be positive");
        }
        drive.omega = s_value * drive.gamma / std::sqrt(2.0);
    }
    const std::vector<double> tau_grid =
        phonon::default_phonon_grid(cfg.phonon_tau_max, cfg.phonon_tau_step);
    const phonon::PhononCorrelations pc = phonon::phonon_correlations(cfg.phonon, tau_grid);
    const phonon::RateKernel kernel = phonon::make_rate_kernel(cfg.phonon);
    const hom::HomResult result =
        hom::compute_hom(pc, kernel, drive, cfg.detector, cfg.markovian);

    csv::Dataset data;
    data.header = {"tau_ps", "g2_raw", "g2_convolved"};
    data.rows.reserve(result.raw.tau_grid.size());
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < result.raw.tau_grid.size(); ++i) {
        const double tau = result.raw.tau_grid[i];
        data.rows.push_back(
            {tau, result.raw.values[i].real(), series_at(result.convolved, tau, cursor)});
    }
    const std::string path = out_path_or(cfg, "hom.csv");
    csv::write_csv(data, path);

    const double s_effective = drive.omega * std::sqrt(2.0) / drive.gamma;
    std::ostringstream summary;
    summary << "dip_depth = " << csv::format_sci(result.dip_depth) << "\n";
    summary << "asymptote_pre_rescale = " << csv::format_sci(result.asymptote) << "\n";
    summary << "scale_factor = " << csv::format_sci(result.scale_factor) << "\n";
    summary << "omega_psinv = " << csv::format_sci(drive.omega) << "\n";
    summary << "s = " << csv::format_sci(s_effective) << "\n";
    write_sidecars(path, cfg, summary.str());

    out << "wrote " << path << " (" << data.rows.size() << " rows)\n";
    out << "dip_depth = " << csv::format_sci(result.dip_depth) << "\n";
    return 0;
}

int run_sweep_dip(const config::SimConfig& cfg, double s_min, double s_max,
                  std::size_t s_points, std::ostream& out, std::ostream& err) {
    const std::vector<double> s_values = geomspace(s_min, s_max, s_points);
    const std::vector<hom::DipPoint> sweep = hom::dip_depth_sweep(
        cfg.phonon, cfg.drive, cfg.detector, s_values, cfg.markovian);

    csv::Dataset data;
    data.header = {"s", "dip_depth"};
    std::size_t failures = 0;
    double best_s = 0.0;
    double best_dip = -1.0;
    for (const hom::DipPoint& point : sweep) {
        if (!point.ok) {
            ++failures;
            err << "sweep-dip: s = " << point.s << " failed: " << point.error << "\n";
            continue;
        }
        data.rows.push_back({point.s, point.dip_depth});
        if (point.dip_depth > best_dip) {
            best_dip = point.dip_depth;
            best_s = point.s;
        }
    }
    if (data.rows.empty()) {
        throw std::runtime_error("sweep-dip: every sweep point failed");
    }
    const std::string path = out_path_or(cfg, "sweep_dip.csv");
    csv::write_csv(data, path);

    std::ostringstream summary;
    summary << "points = " << data.rows.size() << "\n";
    summary << "failures = " << failures << "\n";
    summary << "best_s = " << csv::format_sci(best_s) << "\n";
    summary << "best_dip_depth = " << csv::format_sci(best_dip) << "\n";
    write_sidecars(path, cfg, summary.str());

    out << "wrote " << path << " (" << data.rows.size() << " rows, " << failures
        << " failures)\n";
    out << "best dip depth " << csv::format_sci(best_dip) << " at s = "
        << csv::format_sci(best_s) << "\n";
    return 0;
}

int run_phonon_info(const config::SimConfig& cfg, std::ostream& out) {
    const phonon::PolaronQuantities pq =
        phonon::polaron_rates(cfg.phonon, cfg.drive.omega);
    const double b2 = pq.B * pq.B;

    std::ostringstream text;
    text << "B = " << csv::format_sci(pq.B) << "\n";
    text << "B_squared = " << csv::format_sci(b2) << "\n";
    text << "one_minus_B_squared = " << csv::format_sci(1.0 - b2) << "\n";
    text << "omega_r_psinv = " << csv::format_sci(pq.omega_r) << "\n";
    text << "gamma_x_re_psinv = " << csv::format_sci(pq.gamma_x.real()) << "\n";
    text << "gamma_x_im_psinv = " << csv::format_sci(pq.gamma_x.imag()) << "\n";
    text << "chi_y_re_psinv = " << csv::format_sci(pq.chi_y.real()) << "\n";
    text << "chi_y_im_psinv = " << csv::format_sci(pq.chi_y.imag()) << "\n";
    text << "chi_z_re_psinv = " << csv::format_sci(pq.chi_z.real()) << "\n";
    text << "chi_z_im_psinv = " << csv::format_sci(pq.chi_z.imag()) << "\n";

    out << text.str();
    if (!cfg.output_path.empty()) {
        csv::write_text(text.str(), cfg.output_path);
        write_sidecars(cfg.output_path, cfg, "");
    }
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polaron master equation emission simulator"};
    app.name("polsim");
    app.require_subcommand(1);

    CommonFlags spectrum_flags;
    CommonFlags cf_flags;
    CommonFlags hom_flags;
    CommonFlags sweep_flags;
    CommonFlags info_flags;

    const auto add_common = [](CLI::App* cmd, CommonFlags& flags) {
        cmd->add_option("--config", flags.config_path, "configuration file, key=value lines");
        cmd->add_option("--out", flags.out_path, "output path for the primary artifact");
        cmd->add_flag("--markovian", flags.markovian, "drop the non-Markovian phonon dressing");
    };

    CLI::App* spectrum_cmd = app.add_subcommand(
        "spectrum", "incoherent emission spectrum with ZPL and sideband split");
    add_common(spectrum_cmd, spectrum_flags);

    CLI::App* cf_cmd = app.add_subcommand(
        "coherent-fraction", "coherent scattering fraction across drive strengths");
    add_common(cf_cmd, cf_flags);
    std::vector<double> temps{0.0, 4.0, 15.0};
    cf_cmd->add_option("--temps", temps, "temperature list in K")->delimiter(',');
    double cf_s_min = 0.01;
    double cf_s_max = 10.0;
    std::size_t cf_s_points = 40;
    cf_cmd->add_option("--s-min", cf_s_min, "lowest saturation parameter");
    cf_cmd->add_option("--s-max", cf_s_max, "highest saturation parameter");
    cf_cmd->add_option("--s-points", cf_s_points, "sweep point count");

    CLI::App* hom_cmd = app.add_subcommand(
        "hom", "HOM two-photon correlation with detector response");
    add_common(hom_cmd, hom_flags);
    double hom_s = 0.0;
    hom_cmd->add_option("--s", hom_s, "saturation parameter, overrides omega_psinv");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep-dip", "HOM dip depth across drive strengths");
    add_common(sweep_cmd, sweep_flags);
    double sw_s_min = 0.05;
    double sw_s_max = 20.0;
    std::size_t sw_s_points = 30;
    sweep_cmd->add_option("--s-min", sw_s_min, "lowest saturation parameter");
    sweep_cmd->add_option("--s-max", sw_s_max, "highest saturation parameter");
    sweep_cmd->add_option("--s-points", sw_s_points, "sweep point count");

    CLI::App* info_cmd = app.add_subcommand(
        "phonon-info", "Franck-Condon factor, renormalized drive, phonon rates");
    add_common(info_cmd, info_flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (spectrum_cmd->parsed()) {
            return run_spectrum(load_config(spectrum_flags), out);
        }
        if (cf_cmd->parsed()) {
            return run_coherent_fraction(load_config(cf_flags), temps, cf_s_min, cf_s_max,
                                         cf_s_points, out);
        }
        if (hom_cmd->parsed()) {
            return run_hom(load_config(hom_flags), hom_cmd->count("--s") > 0, hom_s, out);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep_dip(load_config(sweep_flags), sw_s_min, sw_s_max, sw_s_points,
                                 out, err);
        }
        if (info_cmd->parsed()) {
            return run_phonon_info(load_config(info_flags), out);
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand selected\n";
    return 2;
}

} // namespace polsim::cli
