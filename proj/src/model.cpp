#include "trianneal/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace trianneal {

namespace {

void check_size(const SpinConfig& config, const Lattice& lattice) {
  if (config.size() != static_cast<std::size_t>(lattice.num_sites())) {
    throw std::invalid_argument("configuration has " + std::to_string(config.size()) +
                                " spins, lattice has " + std::to_string(lattice.num_sites()));
  }
}

}  // namespace

SpinConfig::SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (std::int8_t s : spins_) {
    if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
  }
}

SpinConfig SpinConfig::negated() const {
  SpinConfig out = *this;
  for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
  return out;
}

std::uint64_t SpinConfig::to_bits() const {
  if (spins_.size() > 64) throw std::length_error("configuration too large for a bit mask");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] < 0) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

SpinConfig SpinConfig::from_bits(std::uint64_t bits, std::size_t n) {
  if (n > 64) throw std::length_error("configuration too large for a bit mask");
  SpinConfig out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((bits >> i) & 1U) out.spins_[i] = -1;
  }
  return out;
}

Couplings::Couplings(const Lattice& lattice, double j, double jx) : j_(j), jx_(jx) {
  if (j < 0.0 || jx < 0.0) throw std::invalid_argument("couplings must be non-negative");
  base_.reserve(static_cast<std::size_t>(lattice.num_bonds()));
  for (const Bond& bond : lattice.bonds()) {
    base_.push_back(bond.cls == BondClass::Horizontal ? jx : j);
  }
  overrides_.assign(base_.size(), std::nullopt);
  effective_ = base_;
  fields_.assign(static_cast<std::size_t>(lattice.num_sites()), 0.0);
}

void Couplings::set_override(int bond, double value) {
  if (value < 0.0) throw std::invalid_argument("coupling override must be non-negative");
  overrides_.at(static_cast<std::size_t>(bond)) = value;
  effective_[static_cast<std::size_t>(bond)] = value;
}

void Couplings::clear_override(int bond) {
  overrides_.at(static_cast<std::size_t>(bond)).reset();
  effective_[static_cast<std::size_t>(bond)] = base_[static_cast<std::size_t>(bond)];
}

void Couplings::clear_overrides() {
  std::fill(overrides_.begin(), overrides_.end(), std::nullopt);
  effective_ = base_;
}

bool Couplings::any_override() const {
  return std::any_of(overrides_.begin(), overrides_.end(),
                     [](const std::optional<double>& o) { return o.has_value(); });
}

void Couplings::set_field(int site, double h) {
  if (h < 0.0) throw std::invalid_argument("transverse field must be non-negative");
  fields_.at(static_cast<std::size_t>(site)) = h;
}

void Couplings::set_uniform_field(double h) {
  if (h < 0.0) throw std::invalid_argument("transverse field must be non-negative");
  std::fill(fields_.begin(), fields_.end(), h);
}

double energy(const SpinConfig& config, const Couplings& couplings, const Lattice& lattice) {
  check_size(config, lattice);
  // Neumaier summation keeps sums of decimal couplings correctly rounded
  double sum = 0.0;
  double carry = 0.0;
  const auto& bonds = lattice.bonds();
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    const int prod = config[static_cast<std::size_t>(bonds[b].a)] *
                     config[static_cast<std::size_t>(bonds[b].b)];
    const double term = couplings.effective(static_cast<int>(b)) * prod;
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + carry;
}

double delta_energy_flip(const SpinConfig& config, int site, const Couplings& couplings,
                         const Lattice& lattice) {
  if (site < 0 || site >= lattice.num_sites()) throw std::out_of_range("site index out of range");
  double local = 0.0;
  for (const Neighbor& nb : lattice.neighbors(site)) {
    local += couplings.effective(nb.bond) * config[static_cast<std::size_t>(nb.site)];
  }
  return -2.0 * config[static_cast<std::size_t>(site)] * local;
}

int triangle_violations(const SpinConfig& config, const Lattice& lattice) {
  check_size(config, lattice);
  int count = 0;
  for (const Triangle& t : lattice.triangles()) {
    const auto s0 = config[static_cast<std::size_t>(t.sites[0])];
    if (s0 == config[static_cast<std::size_t>(t.sites[1])] &&
        s0 == config[static_cast<std::size_t>(t.sites[2])]) {
      ++count;
    }
  }
  return count;
}

SpinConfig stripe_config(const Lattice& lattice) {
  if (lattice.ly() % 2 != 0) {
    throw std::invalid_argument("stripe state needs an even number of rows");
  }
  SpinConfig config(static_cast<std::size_t>(lattice.num_sites()));
  for (int s = 0; s < lattice.num_sites(); ++s) {
    config[static_cast<std::size_t>(s)] = (lattice.y_of(s) % 2 == 0) ? 1 : -1;
  }
  return config;
}

}  // namespace trianneal
