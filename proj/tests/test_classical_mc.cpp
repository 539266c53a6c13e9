#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "trianneal/classical_mc.hpp"
#include "trianneal/oracle.hpp"

namespace {

using namespace trianneal;

TEST(Metropolis, AcceptanceProbability) {
  EXPECT_EQ(acceptance_probability(-1.0, 0.5), 1.0);
  EXPECT_EQ(acceptance_probability(0.0, 0.5), 1.0);
  EXPECT_NEAR(acceptance_probability(1.0, 0.5), std::exp(-2.0), 1e-15);
}

TEST(Metropolis, KernelSatisfiesDetailedBalanceOn3x3) {
  const Lattice lat(3, 3);
  const Couplings c(lat, 1.0, 0.9);
  for (double t : {0.3, 1.0, 2.0}) {
    const auto pi = exact_boltzmann(lat, c, t);
    const auto kernel = metropolis_kernel(lat, c, t);
    const std::uint64_t n = 9;
    for (std::uint64_t a = 0; a < pi.size(); ++a) {
      for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t b = a ^ (std::uint64_t{1} << i);
        const double forward = pi[a] * kernel[a * n + i];
        const double backward = pi[b] * kernel[b * n + i];
        EXPECT_NEAR(forward, backward, 1e-12 * std::max(forward, backward)) << "T=" << t << " a=" << a;
      }
    }
  }
}

TEST(Metropolis, KernelRowsAreSubStochastic) {
  const Lattice lat(3, 3);
  const Couplings c(lat, 1.0, 0.9);
  const auto kernel = metropolis_kernel(lat, c, 0.7);
  for (std::size_t a = 0; a < 512; ++a) {
    double out = 0.0;
    for (std::size_t i = 0; i < 9; ++i) out += kernel[a * 9 + i];
    EXPECT_LE(out, 1.0 + 1e-15);
  }
}

TEST(Metropolis, EmpiricalDistributionApproachesBoltzmann) {
  const Lattice lat(3, 3);
  const Couplings c(lat, 1.0, 0.9);
  const auto exact = exact_boltzmann(lat, c, 1.5);
  const auto sampled = empirical_distribution(lat, c, 1.5, 4'000'000, 10'000, 21);
  double tv = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) tv += std::abs(exact[k] - sampled[k]);
  EXPECT_LT(tv / 2.0, 0.02);
}

TEST(Metropolis, SweepIsNAttempts) {
  const Lattice lat(4, 4);
  const Couplings c(lat, 1.0, 0.9);
  ThermalState state{SpinConfig(16, 1), 1.0, Rng(1), 0};
  metropolis_sweep(state, c, lat);
  EXPECT_EQ(state.mcs, 1);
  state.temperature = 0.0;
  EXPECT_THROW(metropolis_sweep(state, c, lat), std::invalid_argument);
}

TEST(Metropolis, ZeroTemperatureLimitNeverClimbs) {
  const Lattice lat(6, 6);
  const Couplings c(lat, 1.0, 0.9);
  ThermalState state{stripe_config(lat), 1e-3, Rng(4), 0};
  for (int k = 0; k < 200; ++k) metropolis_sweep(state, c, lat);
  EXPECT_EQ(state.config, stripe_config(lat));
}

TEST(TaSchedule, DefaultHasOneHundredWindows) {
  const TaSchedule s;
  s.validate();
  EXPECT_EQ(s.num_windows(), 100);
  EXPECT_DOUBLE_EQ(s.temperature(0), 5.0);
  EXPECT_EQ(s.temperature(99), 0.05);
  EXPECT_NEAR(s.temperature(50), 2.5, 1e-12);
  EXPECT_EQ(s.total_mcs(), 100'000);
}

TEST(TaSchedule, RejectsBadParameters) {
  EXPECT_THROW((TaSchedule{5.0, 0.0, 0.05, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((TaSchedule{5.0, 0.05, 0.0, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((TaSchedule{5.0, 0.05, 0.05, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((TaSchedule{5.0, 0.05, 0.07, 10}.validate()), std::invalid_argument);
}

TEST(Ta, DeterministicAndEndsAtTmin) {
  const Lattice lat(6, 6);
  const Couplings c(lat, 1.0, 0.9);
  const TaSchedule s{5.0, 0.05, 0.05, 20};
  const TimeSeries a = run_ta(lat, c, s, 77);
  const TimeSeries b = run_ta(lat, c, s, 77);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    EXPECT_EQ(a.samples[k].energy, b.samples[k].energy);
    EXPECT_EQ(a.samples[k].sector, b.samples[k].sector);
  }
  EXPECT_EQ(a.final().mcs, 2000);
  EXPECT_EQ(a.final().window_value, 0.05);
  EXPECT_GE(a.final().energy, -39.6 - 1e-12);
}

}  // namespace
