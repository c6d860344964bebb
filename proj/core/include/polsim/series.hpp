// series.hpp — Tau-domain correlation series shared by the dynamics, emission
// and hom modules.

#pragma once

#include <complex>
#include <vector>

namespace polsim {

enum class SeriesKind { g0, g1_total, g2_raw, g2_convolved };

struct CorrelationSeries {
    std::vector<double> tau_grid;             // ps, strictly ascending from 0
    std::vector<std::complex<double>> values;
    SeriesKind kind{SeriesKind::g0};
};

} // namespace polsim
