#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"
#include "trianneal/rng.hpp"
#include "trianneal/timeseries.hpp"

namespace trianneal {

struct ThermalState {
  SpinConfig config;
  double temperature = 1.0;
  Rng rng{0};
  std::int64_t mcs = 0;
};

inline double acceptance_probability(double delta_e, double temperature) {
  return delta_e <= 0.0 ? 1.0 : std::exp(-delta_e / temperature);
}

// One Metropolis attempt on a uniformly chosen site. Returns the flipped
// site, or -1 when the move is rejected.
inline int metropolis_attempt(ThermalState& state, const Couplings& couplings, const Lattice& lattice) {
  const auto site = static_cast<int>(state.rng.below(static_cast<std::uint32_t>(lattice.num_sites())));
  const std::span<const double> j = couplings.effective();
  double local = 0.0;
  for (const Neighbor& nb : lattice.neighbors(site)) {
    local += j[static_cast<std::size_t>(nb.bond)] * state.config[static_cast<std::size_t>(nb.site)];
  }
  const double delta = -2.0 * state.config[static_cast<std::size_t>(site)] * local;
  if (delta <= 0.0 || state.rng.uniform() < std::exp(-delta / state.temperature)) {
    state.config.flip(static_cast<std::size_t>(site));
    return site;
  }
  return -1;
}

// N attempts (one MCS).
void metropolis_sweep(ThermalState& state, const Couplings& couplings, const Lattice& lattice);

// Linear cooling T_max, T_max - dT, ..., T_min with a fixed number of MCS per window.
struct TaSchedule {
  double t_max = 5.0;
  double t_min = 0.05;
  double dt = 0.05;
  int steps_per_window = 1000;

  void validate() const;
  int num_windows() const;
  double temperature(int window) const;
  std::int64_t total_mcs() const {
    return static_cast<std::int64_t>(num_windows()) * steps_per_window;
  }
};

SpinConfig random_config(int num_sites, Rng& rng);

// Visit frequencies of every configuration (indexed by SpinConfig::to_bits)
// over `attempts` single-flip attempts at fixed T, after `burn_in` attempts.
std::vector<double> empirical_distribution(const Lattice& lattice, const Couplings& couplings,
                                           double temperature, std::int64_t attempts,
                                           std::int64_t burn_in, std::uint64_t seed);

// Exact single-flip kernel of metropolis_attempt: entry [c * N + i] is the
// probability that state c (to_bits indexing) moves to c ^ (1 << i).
std::vector<double> metropolis_kernel(const Lattice& lattice, const Couplings& couplings, double temperature);

TimeSeries run_ta(const Lattice& lattice, const Couplings& couplings, const TaSchedule& schedule,
                  std::uint64_t seed, int points_per_decade = 20);

}  // namespace trianneal
