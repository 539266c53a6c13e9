#include "trianneal/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trianneal {

namespace {

void require_sites(const Lattice& lattice, int limit, const char* what) {
  if (lattice.num_sites() > limit) {
    throw std::length_error(std::string(what) + " supports at most " + std::to_string(limit) +
                            " sites, lattice has " + std::to_string(lattice.num_sites()));
  }
}

struct BitBond {
  std::uint64_t a;
  std::uint64_t b;
  double j;
};

std::vector<BitBond> bit_bonds(const Lattice& lattice, const Couplings& couplings) {
  std::vector<BitBond> out;
  out.reserve(static_cast<std::size_t>(lattice.num_bonds()));
  for (int b = 0; b < lattice.num_bonds(); ++b) {
    const Bond& bond = lattice.bond(b);
    out.push_back({static_cast<std::uint64_t>(bond.a), static_cast<std::uint64_t>(bond.b),
                   couplings.effective(b)});
  }
  return out;
}

// Bit i set means spin i down, so a bond is parallel iff its bits agree.
double bits_energy(std::uint64_t c, const std::vector<BitBond>& bonds) {
  double e = 0.0;
  for (const BitBond& b : bonds) {
    e += (((c >> b.a) ^ (c >> b.b)) & 1U) ? -b.j : b.j;
  }
  return e;
}

class BitSectors {
 public:
  explicit BitSectors(const Lattice& lattice) : lx_(lattice.lx()), ly_(lattice.ly()) {
    for (const Triangle& t : lattice.triangles()) {
      triangles_.push_back((std::uint64_t{1} << t.sites[0]) | (std::uint64_t{1} << t.sites[1]) |
                           (std::uint64_t{1} << t.sites[2]));
    }
  }

  SectorLabel operator()(std::uint64_t c) const {
    for (std::uint64_t mask : triangles_) {
      const std::uint64_t m = c & mask;
      if (m == 0 || m == mask) return SectorLabel::spinons();
    }
    const std::uint64_t row_mask = (std::uint64_t{1} << lx_) - 1;
    int first = -1;
    for (int y = 0; y < ly_; ++y) {
      const std::uint64_t row = (c >> (y * lx_)) & row_mask;
      const std::uint64_t rotated = ((row >> 1) | (row << (lx_ - 1))) & row_mask;
      const int dw = std::popcount(row ^ rotated);
      if (first < 0) {
        first = dw;
      } else if (dw != first) {
        return SectorLabel::rows_inconsistent();
      }
    }
    return SectorLabel::defined(first);
  }

 private:
  int lx_;
  int ly_;
  std::vector<std::uint64_t> triangles_;
};

}  // namespace

EnumerationReport enumerate_classical(const Lattice& lattice, const Couplings& couplings) {
  require_sites(lattice, kMaxEnumerationSites, "classical enumeration");
  const int n = lattice.num_sites();
  const auto bonds = bit_bonds(lattice, couplings);
  const BitSectors sectors(lattice);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  EnumerationReport report;
  report.ground_energy = std::numeric_limits<double>::infinity();
  // Z2: visit configurations with the last spin up, count each with its negation.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  for (std::uint64_t c = 0; c < half; ++c) {
    const double e = bits_energy(c, bonds);
    if (e < report.ground_energy - kDegeneracyTolerance) {
      report.ground_energy = e;
      report.degeneracy = 0;
      report.ground_states.clear();
    }
    if (std::abs(e - report.ground_energy) <= kDegeneracyTolerance) {
      report.degeneracy += 2;
      if (report.ground_states.size() + 2 <= EnumerationReport::kMaxStored) {
        report.ground_states.push_back(c);
        report.ground_states.push_back(c ^ full);
      }
    }
    report.sector_counts[sectors(c)] += 2;
  }
  report.total = half * 2;
  std::sort(report.ground_states.begin(), report.ground_states.end());
  return report;
}

std::vector<double> exact_boltzmann(const Lattice& lattice, const Couplings& couplings, double temperature) {
  require_sites(lattice, kMaxBoltzmannSites, "exact Boltzmann distribution");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const auto bonds = bit_bonds(lattice, couplings);
  const std::uint64_t states = std::uint64_t{1} << lattice.num_sites();
  std::vector<double> p(states);
  double e_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t c = 0; c < states; ++c) {
    p[c] = bits_energy(c, bonds);
    e_min = std::min(e_min, p[c]);
  }
  double z = 0.0;
  for (double& w : p) {
    w = std::exp(-(w - e_min) / temperature);
    z += w;
  }
  for (double& w : p) w /= z;
  return p;
}

Eigen::MatrixXd quantum_hamiltonian(const Lattice& lattice, const Couplings& couplings) {
  require_sites(lattice, kMaxQuantumSites, "exact quantum solver");
  const int n = lattice.num_sites();
  const auto bonds = bit_bonds(lattice, couplings);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    h(c, c) = bits_energy(static_cast<std::uint64_t>(c), bonds);
    for (int i = 0; i < n; ++i) {
      h(c ^ (Eigen::Index{1} << i), c) += couplings.field(i);
    }
  }
  return h;
}

Eigen::VectorXd quantum_spectrum(const Lattice& lattice, const Couplings& couplings) {
  const Eigen::MatrixXd h = quantum_hamiltonian(lattice, couplings);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen-decomposition failed");
  return solver.eigenvalues();
}

double thermal_energy(const Eigen::VectorXd& spectrum, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const double e0 = spectrum.minCoeff();
  const Eigen::ArrayXd w = (-(spectrum.array() - e0) / temperature).exp();
  return (w * spectrum.array()).sum() / w.sum();
}

double free_energy(const Eigen::VectorXd& spectrum, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const double e0 = spectrum.minCoeff();
  const double z = (-(spectrum.array() - e0) / temperature).exp().sum();
  return e0 - temperature * std::log(z);
}

double exact_quantum_energy(const Lattice& lattice, const Couplings& couplings, double temperature) {
  return thermal_energy(quantum_spectrum(lattice, couplings), temperature);
}

}  // namespace trianneal
