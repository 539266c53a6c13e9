#include "trianneal/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trianneal {

Sample observe(const SpinConfig& config, const Couplings& reference, const Lattice& lattice,
               std::int64_t mcs, double window_value) {
  Sample s;
  s.mcs = mcs;
  s.window_value = window_value;
  s.energy = energy(config, reference, lattice);
  s.spinons = triangle_violations(config, lattice);
  s.sector = sector_label(config, lattice);
  return s;
}

SampleClock::SampleClock(std::int64_t total_mcs, std::span<const std::int64_t> window_ends,
                         int points_per_decade) {
  if (total_mcs < 1) throw std::invalid_argument("sample clock needs a positive MCS total");
  if (points_per_decade < 1) throw std::invalid_argument("points per decade must be positive");
  const int ppd = std::min(points_per_decade, 200);
  for (int k = 0;; ++k) {
    const auto p = static_cast<std::int64_t>(std::llround(std::pow(10.0, static_cast<double>(k) / ppd)));
    if (p > total_mcs) break;
    points_.push_back(p);
  }
  for (std::int64_t e : window_ends) {
    if (e >= 1 && e <= total_mcs) points_.push_back(e);
  }
  points_.push_back(total_mcs);
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

}  // namespace trianneal
