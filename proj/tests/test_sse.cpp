#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "trianneal/classical_mc.hpp"
#include "trianneal/oracle.hpp"
#include "trianneal/sse.hpp"

namespace {

using namespace trianneal;

Couplings with_field(const Lattice& lat, double h) {
  Couplings c(lat, 1.0, 0.9);
  c.set_uniform_field(h);
  return c;
}

TEST(Vertex, Encoding) {
  const Vertex v(Vertex::Kind::BondDiag, 107);
  EXPECT_EQ(v.kind(), Vertex::Kind::BondDiag);
  EXPECT_EQ(v.index(), 107);
  EXPECT_FALSE(v.is_site());
  EXPECT_TRUE(Vertex{}.is_null());
  const Vertex s(Vertex::Kind::SiteDiag, 3);
  EXPECT_EQ(s.site_toggled(true).kind(), Vertex::Kind::SiteOffdiag);
  EXPECT_EQ(s.site_toggled(true).index(), 3);
  EXPECT_EQ(s.site_toggled(false), s);
  EXPECT_EQ(s.site_toggled(true).site_toggled(true), s);
}

TEST(Sse, StaysPeriodicUnderUpdates) {
  const Lattice lat(6, 6);
  for (double h : {0.001, 0.5, 3.0}) {
    const Couplings c = with_field(lat, h);
    Rng rng(3);
    SseSampler s(lat, c, random_config(36, rng));
    for (int k = 0; k < 300; ++k) {
      s.sweep(10.0, rng);
      ASSERT_TRUE(s.consistent()) << "h=" << h << " sweep " << k;
    }
    EXPECT_EQ(s.mcs(), 300);
  }
}

TEST(Sse, ConsistencyDetectsBrokenPeriodicity) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1.0);
  SseSampler s(lat, c, SpinConfig(9, 1));
  OperatorString ok;
  ok.slots = {Vertex(Vertex::Kind::SiteOffdiag, 4), Vertex{}, Vertex(Vertex::Kind::SiteOffdiag, 4), Vertex{}};
  s.set_operators(ok);
  EXPECT_EQ(s.operators().n, 2);
  EXPECT_TRUE(s.consistent());
  OperatorString broken;
  broken.slots = {Vertex(Vertex::Kind::SiteOffdiag, 4), Vertex{}, Vertex{}, Vertex{}};
  s.set_operators(broken);
  EXPECT_FALSE(s.consistent());
  // a bond vertex on a parallel pair has zero weight
  OperatorString parallel;
  parallel.slots = {Vertex(Vertex::Kind::BondDiag, 0), Vertex{}};
  s.set_operators(parallel);
  EXPECT_FALSE(s.consistent());
}

TEST(Sse, CutoffGrowsPastThreeQuarters) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1.0);
  SseSampler s(lat, c, SpinConfig(9, 1), 8);
  OperatorString str;
  str.slots.assign(8, Vertex{});
  for (int k = 0; k < 6; ++k) str.slots[static_cast<std::size_t>(k)] = Vertex(Vertex::Kind::SiteDiag, k);
  s.set_operators(str);
  EXPECT_FALSE(s.adjust_cutoff());  // n = 6 = 3M/4
  str.slots[6] = Vertex(Vertex::Kind::SiteDiag, 6);
  s.set_operators(str);
  EXPECT_TRUE(s.adjust_cutoff());
  EXPECT_EQ(s.operators().cutoff(), 10U + 8U);  // ceil(4 * 7 / 3) + 8
  EXPECT_TRUE(s.consistent());
}

TEST(Sse, EnergyEstimator) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 0.5);
  SseSampler s(lat, c, SpinConfig(9, 1));
  EXPECT_NEAR(s.constant_shift(), 27 * 1.0 - 9 * 0.1 + 9 * 0.5, 1e-12);
  EXPECT_NEAR(s.energy_estimate(2.0), s.constant_shift(), 1e-12);
  EXPECT_NEAR(s.total_weight(), 9 * 0.5 + 2.0 * (18 * 1.0 + 9 * 0.9), 1e-12);
}

TEST(Sse, PurgesVerticesOfSwitchedOffBonds) {
  const Lattice lat(4, 4);
  Couplings c = with_field(lat, 1.0);
  Rng rng(8);
  SseSampler s(lat, c, random_config(16, rng));
  for (int k = 0; k < 50; ++k) s.sweep(4.0, rng);
  const int b = lat.horizontal_bond(1, 1);
  c.set_override(b, 0.0);
  s.set_hamiltonian(c);
  for (const Vertex v : s.operators().slots) {
    if (v.kind() == Vertex::Kind::BondDiag) EXPECT_NE(v.index(), b);
  }
  EXPECT_TRUE(s.consistent());
  for (int k = 0; k < 50; ++k) s.sweep(4.0, rng);
  EXPECT_TRUE(s.consistent());
}

TEST(Sse, RefusesToDropFieldUnderOffdiagonalVertices) {
  const Lattice lat(4, 4);
  Couplings c = with_field(lat, 2.0);
  Rng rng(2);
  SseSampler s(lat, c, random_config(16, rng));
  for (int k = 0; k < 50; ++k) s.sweep(4.0, rng);
  int site = -1;
  for (const Vertex v : s.operators().slots) {
    if (v.kind() == Vertex::Kind::SiteOffdiag) site = v.index();
  }
  ASSERT_GE(site, 0);
  c.set_field(site, 0.0);
  EXPECT_THROW(s.set_hamiltonian(c), std::logic_error);
}

TEST(Sse, RejectsMismatchedInputs) {
  const Lattice lat(4, 4);
  const Lattice other(3, 3);
  const Couplings c = with_field(lat, 1.0);
  EXPECT_THROW(SseSampler(lat, c, SpinConfig(9, 1)), std::invalid_argument);
  SseSampler s(lat, c, SpinConfig(16, 1));
  EXPECT_THROW(s.set_hamiltonian(with_field(other, 1.0)), std::invalid_argument);
  Rng rng(1);
  EXPECT_THROW(s.diagonal_update(0.0, rng), std::invalid_argument);
}

TEST(Sse, MatchesExactEnergyOn3x3) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1.0);
  const double exact = exact_quantum_energy(lat, c, 1.0);
  const SseMeasurement m = measure_thermal(lat, c, 1.0, 200'000, 5'000, 17);
  EXPECT_LT(std::abs(m.energy - exact), 4.0 * m.energy_error) << m.energy << " vs " << exact;
}

TEST(Sse, TinyFieldReducesToClassicalThermalEnergy) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1e-4);
  const auto pi = exact_boltzmann(lat, c, 1.0);
  double classical = 0.0;
  for (std::uint64_t k = 0; k < pi.size(); ++k) {
    classical += pi[k] * energy(SpinConfig::from_bits(k, 9), c, lat);
  }
  const SseMeasurement m = measure_thermal(lat, c, 1.0, 100'000, 5'000, 23);
  EXPECT_LT(std::abs(m.energy - classical), 4.0 * m.energy_error + 1e-3);
}

// |d F / d h| = <sum_i sigma^x_i> = <n_offdiag> / (beta h) for a uniform field.
TEST(Sse, TransverseMagnetizationMatchesFreeEnergyDerivative) {
  const Lattice lat(3, 3);
  const double h = 0.8;
  const double t = 0.5;
  const double dh = 1e-5;
  const double f_plus = free_energy(quantum_spectrum(lat, with_field(lat, h + dh)), t);
  const double f_minus = free_energy(quantum_spectrum(lat, with_field(lat, h - dh)), t);
  const double exact = std::abs((f_plus - f_minus) / (2.0 * dh));
  const SseMeasurement m = measure_thermal(lat, with_field(lat, h), t, 200'000, 5'000, 31);
  const double sampled = m.mean_offdiagonal * t / h;
  const double err = m.offdiagonal_error * t / h;
  EXPECT_LT(std::abs(sampled - exact), 4.0 * err + 1e-4) << sampled << " vs " << exact;
}

// The tau = 0 basis state is distributed as the diagonal of exp(-beta H) / Z.
TEST(Sse, BasisStateFollowsDensityMatrixDiagonal) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1.5);
  const double t = 1.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(quantum_hamiltonian(lat, c));
  const Eigen::VectorXd e = solver.eigenvalues();
  const Eigen::ArrayXd w = (-(e.array() - e.minCoeff()) / t).exp();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd diag = (v.array().square().matrix() * w.matrix()) / w.sum();

  const std::int64_t sweeps = 256'000;
  const SseMeasurement m = measure_thermal(lat, c, t, sweeps, 2'000, 5, 64, true);
  ASSERT_EQ(m.basis_visits.size(), 512U);
  double tv = 0.0;
  for (std::size_t k = 0; k < 512; ++k) {
    const double p = diag(static_cast<Eigen::Index>(k));
    tv += std::abs(static_cast<double>(m.basis_visits[k]) / sweeps - p);
    // every state expected more than ~25 times is reached
    if (p > 1e-4) EXPECT_GT(m.basis_visits[k], 0U) << "state " << k;
  }
  EXPECT_LT(tv / 2.0, 0.03);
}

TEST(Sse, MeasureThermalValidatesArguments) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1.0);
  EXPECT_THROW(measure_thermal(lat, c, 0.0, 100, 0, 1), std::invalid_argument);
  EXPECT_THROW(measure_thermal(lat, c, 1.0, 10, 0, 1, 64), std::invalid_argument);
}

TEST(Sse, SseEnergyHelper) {
  const Lattice lat(3, 3);
  const Couplings c = with_field(lat, 1.0);
  EXPECT_NEAR(sse_energy(10.0, c, 2.0), -5.0 + 27.0 - 0.9 + 9.0, 1e-12);
}

}  // namespace
