#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"
#include "trianneal/rng.hpp"

namespace trianneal {

// Operator slot of the series expansion. The low two bits hold the kind, the
// remaining bits the site or bond index.
class Vertex {
 public:
  enum class Kind : std::uint32_t { Null = 0, SiteDiag = 1, SiteOffdiag = 2, BondDiag = 3 };

  constexpr Vertex() = default;
  constexpr Vertex(Kind kind, int index)
      : code_((static_cast<std::uint32_t>(index) << 2) | static_cast<std::uint32_t>(kind)) {}

  constexpr Kind kind() const { return static_cast<Kind>(code_ & 3U); }
  constexpr int index() const { return static_cast<int>(code_ >> 2); }
  constexpr bool is_null() const { return code_ == 0; }
  constexpr bool is_site() const { return kind() == Kind::SiteDiag || kind() == Kind::SiteOffdiag; }
  // Swaps SiteDiag and SiteOffdiag when `toggle` is set (site vertices only).
  constexpr Vertex site_toggled(bool toggle) const {
    Vertex v = *this;
    v.code_ ^= 3U * static_cast<std::uint32_t>(toggle);
    return v;
  }

  friend constexpr bool operator==(Vertex, Vertex) = default;

 private:
  std::uint32_t code_ = 0;
};

// Fixed-length operator sequence of M slots, n of them non-null.
struct OperatorString {
  std::vector<Vertex> slots;
  int n = 0;

  std::size_t cutoff() const { return slots.size(); }
};

// Stochastic series expansion sampler for
//   H = sum_b J_b s_a s_b + sum_i h_i sigma^x_i
// with bond vertices of weight J_b - J_b s_a s_b (zero on parallel bonds) and
// site vertices of weight h_i. The sign of the transverse term is irrelevant
// for energies (a sigma^z rotation maps h -> -h).
class SseSampler {
 public:
  SseSampler(const Lattice& lattice, const Couplings& couplings, SpinConfig alpha,
             std::size_t initial_cutoff = 16);

  // Caches couplings and fields. Vertices whose weight dropped to zero are
  // removed; throws std::logic_error if a site carrying off-diagonal vertices
  // loses its field.
  void set_hamiltonian(const Couplings& couplings);

  void diagonal_update(double beta, Rng& rng);
  void cluster_update(Rng& rng);
  // Grows M to ceil(4n/3) + padding when n > 3M/4. Returns true if grown.
  bool adjust_cutoff();

  // One MCS: diagonal pass, cluster pass, cutoff check.
  void sweep(double beta, Rng& rng);

  // Single-sample estimator -n/beta + sum_b J_b + sum_i h_i.
  double energy_estimate(double beta) const;
  int count_offdiagonal() const;

  const SpinConfig& basis_state() const { return alpha_; }
  const OperatorString& operators() const { return string_; }
  std::int64_t mcs() const { return mcs_; }
  double total_weight() const { return total_weight_; }
  double constant_shift() const { return constant_shift_; }

  // Imaginary-time periodicity and positive weights of every vertex.
  bool consistent() const;

  void set_operators(OperatorString string);  // test hook; validated by consistent()

 private:
  void build_alias();

  const Lattice* lattice_;
  int num_sites_;
  int num_bonds_;
  SpinConfig alpha_;
  OperatorString string_;
  std::int64_t mcs_ = 0;

  std::vector<int> bond_a_;
  std::vector<int> bond_b_;
  std::vector<double> bond_j_;
  std::vector<double> field_;
  double total_weight_ = 0.0;
  double constant_shift_ = 0.0;

  // Walker alias table over sites then bonds.
  std::vector<double> alias_prob_;
  std::vector<int> alias_index_;

  // scratch for the updates
  std::vector<std::int8_t> spins_;
  std::vector<int> vertex_pos_;
  std::vector<std::uint8_t> vertex_is_bond_;
  std::vector<int> site_vertices_;
  std::vector<int> bond_vertices_;
  std::vector<int> links_;
  std::vector<std::uint8_t> marks_;
  std::vector<int> first_;
  std::vector<int> last_;
  std::vector<int> stack_;
};

// -<n>/beta + sum_b J_b + sum_i h_i for an externally averaged <n>.
double sse_energy(double mean_n, const Couplings& couplings, double beta);

struct SseMeasurement {
  double energy = 0.0;
  double energy_error = 0.0;  // standard error from bin averages
  double mean_n = 0.0;
  double mean_offdiagonal = 0.0;
  double offdiagonal_error = 0.0;
  int max_n = 0;
  std::size_t final_cutoff = 0;
  std::vector<std::uint64_t> basis_visits;  // per to_bits() state, when requested
};

// Equilibrium run at fixed couplings and temperature: `burn_in` sweeps, then
// `sweeps` measured sweeps split into `bins` bins.
SseMeasurement measure_thermal(const Lattice& lattice, const Couplings& couplings, double temperature,
                               std::int64_t sweeps, std::int64_t burn_in, std::uint64_t seed,
                               int bins = 64, bool record_visits = false);

}  // namespace trianneal
