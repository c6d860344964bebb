// dynamics.cpp — Liouvillian assembly, steady state, evolution, regression.

#include "polsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace polsim::dynamics {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

void check_tau_grid(std::span<const double> grid, const char* where) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string(where) + ": empty grid");
    }
    if (grid.front() < 0.0) {
        throw std::invalid_argument(std::string(where) + ": grid must start at >= 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(std::string(where) + ": grid must be strictly ascending");
        }
    }
}

} // namespace

Eigen::Matrix2cd sigma() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0; // |0><X|
    return m;
}

Eigen::Matrix2cd sigma_dag() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 0) = 1.0;
    return m;
}

Eigen::Matrix2cd sigma_x() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Eigen::Matrix2cd sigma_y() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = kI;
    m(1, 0) = -kI;
    return m;
}

Eigen::Matrix2cd sigma_z() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Eigen::Matrix2cd identity2() {
    return Eigen::Matrix2cd::Identity();
}

Eigen::Vector4cd vec(const Eigen::Matrix2cd& m) {
    return Eigen::Vector4cd{m(0, 0), m(1, 0), m(0, 1), m(1, 1)};
}

Eigen::Matrix2cd unvec(const Eigen::Vector4cd& v) {
    Eigen::Matrix2cd m;
    m(0, 0) = v(0);
    m(1, 0) = v(1);
    m(0, 1) = v(2);
    m(1, 1) = v(3);
    return m;
}

Eigen::Matrix4cd lmul(const Eigen::Matrix2cd& a) {
    return kron(Eigen::Matrix2cd::Identity(), a);
}

Eigen::Matrix4cd rmul(const Eigen::Matrix2cd& b) {
    return kron(b.transpose(), Eigen::Matrix2cd::Identity());
}

Liouvillian build_liouvillian(const DriveConfig& drive,
                              const phonon::PolaronQuantities& pq,
                              bool allow_nonzero_detuning) {
    if (!(drive.omega >= 0.0) || !std::isfinite(drive.omega)) {
        throw std::invalid_argument("build_liouvillian: omega must be >= 0");
    }
    if (!(drive.gamma > 0.0) || !std::isfinite(drive.gamma)) {
        throw std::invalid_argument("build_liouvillian: gamma must be > 0");
    }
    if (drive.detuning_tilde != 0.0 && !allow_nonzero_detuning) {
        throw std::invalid_argument(
            "build_liouvillian: nonzero detuning_tilde requires the explicit override flag");
    }
    if (!(pq.B > 0.0) || pq.B > 1.0) {
        throw std::invalid_argument("build_liouvillian: B must be in (0, 1]");
    }
    if (std::abs(pq.omega_r - drive.omega * pq.B) > 1e-12 * std::max(1.0, drive.omega)) {
        throw std::invalid_argument(
            "build_liouvillian: polaron quantities inconsistent with drive (omega_r != omega * B)");
    }

    const Eigen::Matrix2cd s = sigma();
    const Eigen::Matrix2cd sd = sigma_dag();
    const Eigen::Matrix2cd sx = sigma_x();
    const Eigen::Matrix2cd sy = sigma_y();
    const Eigen::Matrix2cd sz = sigma_z();
    const Eigen::Matrix2cd n_op = sd * s;

    const Eigen::Matrix2cd h =
        drive.detuning_tilde * n_op + 0.5 * pq.omega_r * sx;
    Eigen::Matrix4cd liou = -kI * (lmul(h) - rmul(h));

    // spontaneous emission, gamma (2 s . s^dag - {s^dag s, .}) / 2
    liou += drive.gamma * (rmul(sd) * lmul(s)) -
            0.5 * drive.gamma * (lmul(n_op) + rmul(n_op));

    // phonon dissipator: -([sx, sx .]Gx + [sy, sy .]chi_y + [sy, sz .]chi_z + h.c.)
    // with [A, B rho] -> (lmul(A) - rmul(A)) lmul(B) and the h.c. partner
    // [rho B, A] -> (rmul(A) - lmul(A)) rmul(B)
    const Eigen::Matrix4cd comm_x = lmul(sx) - rmul(sx);
    const Eigen::Matrix4cd comm_y = lmul(sy) - rmul(sy);
    liou -= comm_x * (pq.gamma_x * lmul(sx) - std::conj(pq.gamma_x) * rmul(sx));
    liou -= comm_y * (pq.chi_y * lmul(sy) - std::conj(pq.chi_y) * rmul(sy));
    liou -= comm_y * (pq.chi_z * lmul(sz) - std::conj(pq.chi_z) * rmul(sz));

    return liou;
}

DensityOperator steady_state(const Liouvillian& liouvillian) {
    // the kernel must be one-dimensional: second-smallest singular value
    // bounded away from zero
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(liouvillian);
    const auto& sv = svd.singularValues();
    if (sv(2) <= 1e-10 * std::max(sv(0), 1e-300)) {
        throw std::runtime_error(
            "steady_state: Liouvillian kernel is not one-dimensional, no unique steady state "
            "(is gamma zero?)");
    }

    Eigen::Matrix<complexd, 5, 4> a;
    a.topRows<4>() = liouvillian;
    a.row(4) << 1.0, 0.0, 0.0, 1.0; // unit trace
    Eigen::Matrix<complexd, 5, 1> b;
    b << 0.0, 0.0, 0.0, 0.0, 1.0;
    const Eigen::Vector4cd x = a.colPivHouseholderQr().solve(b);

    DensityOperator rho = unvec(x);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();

    if ((liouvillian * vec(rho)).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::runtime_error("steady_state: residual above tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::runtime_error("steady_state: result not positive semidefinite");
    }
    return rho;
}

std::vector<DensityOperator> evolve_density(const Liouvillian& liouvillian,
                                            const DensityOperator& rho0,
                                            std::span<const double> t_grid) {
    check_tau_grid(t_grid, "evolve_density");

    std::vector<DensityOperator> out;
    out.reserve(t_grid.size());

    const numerics::EigenSystem es = numerics::eig_decompose(liouvillian);
    if (es.diagonalizable) {
        const Eigen::Vector4cd coeffs = es.left_vectors * vec(rho0);
        for (double t : t_grid) {
            Eigen::Vector4cd scaled;
            for (int k = 0; k < 4; ++k) {
                scaled(k) = coeffs(k) * std::exp(es.eigenvalues(k) * t);
            }
            out.push_back(unvec(es.right_vectors * scaled));
        }
    } else {
        // defective generator: dense scaling-and-squaring exponential per point
        for (double t : t_grid) {
            const Eigen::Matrix4cd propagator = (liouvillian * t).exp();
            out.push_back(unvec(propagator * vec(rho0)));
        }
    }
    return out;
}

numerics::ExponentialSum regression_exponential_sum(const Liouvillian& liouvillian,
                                                    const DensityOperator& rho_ss,
                                                    const Eigen::Matrix2cd& pre_op,
                                                    const Eigen::Matrix2cd& post_op,
                                                    const Eigen::Matrix2cd& observable) {
    const numerics::EigenSystem es = numerics::eig_decompose(liouvillian);
    if (!es.diagonalizable) {
        throw std::runtime_error(
            "regression_exponential_sum: defective Liouvillian, spectral form unavailable");
    }
    const Eigen::Vector4cd x0 = vec(pre_op * rho_ss * post_op);
    const Eigen::Vector4cd amplitudes = es.left_vectors * x0;

    numerics::ExponentialSum sum;
    sum.reserve(4);
    for (int k = 0; k < 4; ++k) {
        const complexd weight =
            (observable * unvec(es.right_vectors.col(k))).trace();
        sum.push_back({weight * amplitudes(k), es.eigenvalues(k)});
    }
    return sum;
}

CorrelationSeries regression_correlator(const Liouvillian& liouvillian,
                                        const DensityOperator& rho_ss,
                                        const Eigen::Matrix2cd& pre_op,
                                        const Eigen::Matrix2cd& post_op,
                                        const Eigen::Matrix2cd& observable,
                                        std::span<const double> tau_grid) {
    check_tau_grid(tau_grid, "regression_correlator");

    CorrelationSeries series;
    series.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    series.values.reserve(tau_grid.size());
    series.kind = SeriesKind::g0;

    const numerics::EigenSystem es = numerics::eig_decompose(liouvillian);
    if (es.diagonalizable) {
        const numerics::ExponentialSum sum =
            regression_exponential_sum(liouvillian, rho_ss, pre_op, post_op, observable);
        for (double tau : tau_grid) {
            series.values.push_back(numerics::evaluate(sum, tau));
        }
    } else {
        const Eigen::Vector4cd x0 = vec(pre_op * rho_ss * post_op);
        for (double tau : tau_grid) {
            const Eigen::Matrix4cd propagator = (liouvillian * tau).exp();
            series.values.push_back((observable * unvec(propagator * x0)).trace());
        }
    }
    return series;
}

std::vector<double> default_optical_grid(double gamma, std::size_t points) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("default_optical_grid: gamma must be > 0");
    }
    if (points < 2) {
        throw std::invalid_argument("default_optical_grid: need at least 2 points");
    }
    const double lo = 1e-3;
    const double hi = 10.0 / gamma;
    const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(points - 1));
    std::vector<double> grid;
    grid.reserve(points + 1);
    grid.push_back(0.0);
    double x = lo;
    for (std::size_t i = 0; i < points; ++i) {
        grid.push_back(x);
        x *= ratio;
    }
    grid.back() = hi; // avoid drift from repeated multiplication
    return grid;
}

std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b) {
    std::vector<double> merged;
    merged.reserve(a.size() + b.size());
    merged.insert(merged.end(), a.begin(), a.end());
    merged.insert(merged.end(), b.begin(), b.end());
    std::sort(merged.begin(), merged.end());
    std::vector<double> out;
    out.reserve(merged.size());
    for (double x : merged) {
        if (out.empty() || x - out.back() > 1e-9 * std::max(1.0, std::abs(x))) {
            out.push_back(x);
        }
    }
    return out;
}

} // namespace polsim::dynamics
