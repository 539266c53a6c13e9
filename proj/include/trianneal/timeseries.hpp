#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"
#include "trianneal/topology.hpp"

namespace trianneal {

struct Sample {
  std::int64_t mcs = 0;       // cumulative Monte Carlo steps
  double window_value = 0.0;  // temperature (TA) or field (QA family)
  double energy = 0.0;        // classical energy under the unmodified couplings
  int spinons = 0;
  SectorLabel sector;
};

struct TimeSeries {
  std::vector<Sample> samples;

  const Sample& final() const { return samples.back(); }
};

Sample observe(const SpinConfig& config, const Couplings& reference, const Lattice& lattice,
               std::int64_t mcs, double window_value);

// Cumulative-MCS points at which a run is sampled: a logarithmic grid with
// `points_per_decade` points per decade (capped at 200) merged with every
// window boundary. Sorted, unique, all in [1, total].
class SampleClock {
 public:
  SampleClock(std::int64_t total_mcs, std::span<const std::int64_t> window_ends,
              int points_per_decade);

  const std::vector<std::int64_t>& points() const { return points_; }
  bool due(std::int64_t mcs) const { return next_ < points_.size() && points_[next_] == mcs; }
  void advance() { ++next_; }

 private:
  std::vector<std::int64_t> points_;
  std::size_t next_ = 0;
};

}  // namespace trianneal
