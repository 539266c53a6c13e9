#include "trianneal/classical_mc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace trianneal {

void metropolis_sweep(ThermalState& state, const Couplings& couplings, const Lattice& lattice) {
  if (!(state.temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const int n = lattice.num_sites();
  for (int k = 0; k < n; ++k) metropolis_attempt(state, couplings, lattice);
  ++state.mcs;
}

void TaSchedule::validate() const {
  if (!(t_min > 0.0) || t_max < t_min) throw std::invalid_argument("TA schedule needs T_max >= T_min > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("TA schedule needs dT > 0");
  if (steps_per_window < 1) throw std::invalid_argument("TA schedule needs steps_per_window >= 1");
  const double windows = (t_max - t_min) / dt;
  if (std::abs(windows - std::round(windows)) > 1e-6) {
    throw std::invalid_argument("TA schedule span must be a whole number of dT steps");
  }
}

int TaSchedule::num_windows() const {
  return static_cast<int>(std::llround((t_max - t_min) / dt)) + 1;
}

double TaSchedule::temperature(int window) const {
  if (window == num_windows() - 1) return t_min;
  return t_max - window * dt;
}

SpinConfig random_config(int num_sites, Rng& rng) {
  SpinConfig config(static_cast<std::size_t>(num_sites));
  for (int i = 0; i < num_sites; ++i) {
    config[static_cast<std::size_t>(i)] = rng.coin() ? 1 : -1;
  }
  return config;
}

std::vector<double> empirical_distribution(const Lattice& lattice, const Couplings& couplings,
                                           double temperature, std::int64_t attempts,
                                           std::int64_t burn_in, std::uint64_t seed) {
  if (lattice.num_sites() > 24) throw std::length_error("state histogram limited to 24 sites");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  ThermalState state{SpinConfig{}, temperature, Rng(seed), 0};
  state.config = random_config(lattice.num_sites(), state.rng);
  for (std::int64_t k = 0; k < burn_in; ++k) metropolis_attempt(state, couplings, lattice);

  std::vector<std::uint64_t> counts(std::size_t{1} << lattice.num_sites(), 0);
  std::uint64_t bits = state.config.to_bits();
  for (std::int64_t k = 0; k < attempts; ++k) {
    const int flipped = metropolis_attempt(state, couplings, lattice);
    if (flipped >= 0) bits ^= std::uint64_t{1} << flipped;
    ++counts[bits];
  }
  std::vector<double> p(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    p[c] = static_cast<double>(counts[c]) / static_cast<double>(attempts);
  }
  return p;
}

std::vector<double> metropolis_kernel(const Lattice& lattice, const Couplings& couplings, double temperature) {
  const int n = lattice.num_sites();
  if (n > 24) throw std::length_error("transition kernel limited to 24 sites");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> kernel(states * static_cast<std::uint64_t>(n));
  for (std::uint64_t c = 0; c < states; ++c) {
    const SpinConfig config = SpinConfig::from_bits(c, static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double delta = delta_energy_flip(config, i, couplings, lattice);
      kernel[c * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i)] =
          acceptance_probability(delta, temperature) / n;
    }
  }
  return kernel;
}

TimeSeries run_ta(const Lattice& lattice, const Couplings& couplings, const TaSchedule& schedule,
                  std::uint64_t seed, int points_per_decade) {
  schedule.validate();
  ThermalState state{SpinConfig{}, schedule.t_max, Rng(seed), 0};
  state.config = random_config(lattice.num_sites(), state.rng);

  const int windows = schedule.num_windows();
  std::vector<std::int64_t> ends;
  for (int w = 1; w <= windows; ++w) ends.push_back(static_cast<std::int64_t>(w) * schedule.steps_per_window);
  SampleClock clock(schedule.total_mcs(), ends, points_per_decade);

  TimeSeries series;
  series.samples.reserve(clock.points().size());
  for (int w = 0; w < windows; ++w) {
    state.temperature = schedule.temperature(w);
    for (int step = 0; step < schedule.steps_per_window; ++step) {
      metropolis_sweep(state, couplings, lattice);
      if (clock.due(state.mcs)) {
        series.samples.push_back(observe(state.config, couplings, lattice, state.mcs, state.temperature));
        clock.advance();
      }
    }
  }
  return series;
}

}  // namespace trianneal
