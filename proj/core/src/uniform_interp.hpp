// uniform_interp.hpp — linear interpolation on a uniform grid with plateau hold.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polsim::detail {

// Linear interpolation of a function sampled on a uniform grid starting at 0,
// held at a fixed plateau value beyond the sampled window. Used for the
// phonon correlation functions, which flatten once the bath has decohered.
class UniformInterp {
  public:
    UniformInterp(const std::vector<double>& grid,
                  const std::vector<std::complex<double>>& values,
                  std::complex<double> plateau)
        : values_(values), plateau_(plateau),
          step_(grid.size() > 1 ? grid[1] - grid[0] : 1.0),
          back_(grid.empty() ? 0.0 : grid.back()) {}

    std::complex<double> operator()(double tau) const {
        if (tau >= back_) {
            return plateau_;
        }
        const double pos = tau / step_;
        auto idx = static_cast<std::size_t>(pos);
        if (idx + 1 >= values_.size()) {
            idx = values_.size() - 2;
        }
        const double frac = pos - static_cast<double>(idx);
        return (1.0 - frac) * values_[idx] + frac * values_[idx + 1];
    }

  private:
    const std::vector<std::complex<double>>& values_;
    std::complex<double> plateau_;
    double step_;
    double back_;
};

} // namespace polsim::detail
