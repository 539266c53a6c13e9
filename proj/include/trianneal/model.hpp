#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trianneal/lattice.hpp"

namespace trianneal {

// Ising configuration, one entry of +1 / -1 per site.
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(std::size_t n, std::int8_t value = 1) : spins_(n, value) {}
  explicit SpinConfig(std::vector<std::int8_t> spins);

  std::size_t size() const { return spins_.size(); }
  std::int8_t operator[](std::size_t i) const { return spins_[i]; }
  std::int8_t& operator[](std::size_t i) { return spins_[i]; }
  void flip(std::size_t i) { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }

  std::span<const std::int8_t> spins() const { return spins_; }
  std::span<std::int8_t> spins() { return spins_; }

  SpinConfig negated() const;

  // Bit i set <=> spin i is down. Only meaningful for size() <= 64.
  std::uint64_t to_bits() const;
  static SpinConfig from_bits(std::uint64_t bits, std::size_t n);

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

// Antiferromagnetic couplings J (interchain) and Jx (horizontal), optional
// per-bond overrides and per-site transverse fields.
class Couplings {
 public:
  Couplings(const Lattice& lattice, double j, double jx);

  double j() const { return j_; }
  double jx() const { return jx_; }

  double base(int bond) const { return base_[static_cast<std::size_t>(bond)]; }
  double effective(int bond) const { return effective_[static_cast<std::size_t>(bond)]; }
  std::span<const double> effective() const { return effective_; }

  void set_override(int bond, double value);
  void clear_override(int bond);
  void clear_overrides();
  bool has_override(int bond) const { return overrides_[static_cast<std::size_t>(bond)].has_value(); }
  bool any_override() const;

  std::span<const double> fields() const { return fields_; }
  double field(int site) const { return fields_[static_cast<std::size_t>(site)]; }
  void set_field(int site, double h);
  void set_uniform_field(double h);

  int num_bonds() const { return static_cast<int>(base_.size()); }
  int num_sites() const { return static_cast<int>(fields_.size()); }

  friend bool operator==(const Couplings&, const Couplings&) = default;

 private:
  double j_;
  double jx_;
  std::vector<double> base_;
  std::vector<std::optional<double>> overrides_;
  std::vector<double> effective_;
  std::vector<double> fields_;
};

// Classical (sigma^z) energy: sum over bonds of J_b s_a s_b.
double energy(const SpinConfig& config, const Couplings& couplings, const Lattice& lattice);

// E(config with `site` flipped) - E(config), from the six local bonds.
double delta_energy_flip(const SpinConfig& config, int site, const Couplings& couplings,
                         const Lattice& lattice);

// Number of triangles whose three spins are equal.
int triangle_violations(const SpinConfig& config, const Lattice& lattice);

// Uniform rows with sign (-1)^y. Requires even Ly.
SpinConfig stripe_config(const Lattice& lattice);

}  // namespace trianneal
