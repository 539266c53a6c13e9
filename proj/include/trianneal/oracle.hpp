#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"
#include "trianneal/topology.hpp"

namespace trianneal {

// Exhaustive ground truth over all 2^N classical configurations.
struct EnumerationReport {
  double ground_energy = 0.0;
  std::uint64_t degeneracy = 0;
  std::vector<std::uint64_t> ground_states;  // bit masks (SpinConfig::to_bits), first kMaxStored
  std::map<SectorLabel, std::uint64_t> sector_counts;
  std::uint64_t total = 0;

  static constexpr std::size_t kMaxStored = 4096;
};

inline constexpr int kMaxEnumerationSites = 24;
inline constexpr int kMaxBoltzmannSites = 16;
inline constexpr int kMaxQuantumSites = 12;

// Energies within this distance of the minimum count as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

EnumerationReport enumerate_classical(const Lattice& lattice, const Couplings& couplings);

// exp(-E(C)/T) / Z indexed by SpinConfig::to_bits().
std::vector<double> exact_boltzmann(const Lattice& lattice, const Couplings& couplings, double temperature);

// Dense matrix of H = sum_b J_b s_a s_b + sum_i h_i sigma^x_i in the sigma^z basis.
Eigen::MatrixXd quantum_hamiltonian(const Lattice& lattice, const Couplings& couplings);

// Eigenvalues of quantum_hamiltonian, ascending.
Eigen::VectorXd quantum_spectrum(const Lattice& lattice, const Couplings& couplings);

double thermal_energy(const Eigen::VectorXd& spectrum, double temperature);
double free_energy(const Eigen::VectorXd& spectrum, double temperature);

// Tr(H e^{-H/T}) / Tr(e^{-H/T}) by full diagonalization.
double exact_quantum_energy(const Lattice& lattice, const Couplings& couplings, double temperature);

}  // namespace trianneal
