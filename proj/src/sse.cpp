#include "trianneal/sse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace trianneal {

namespace {

constexpr std::uint8_t kUnvisited = 0;
constexpr std::uint8_t kKeep = 1;
constexpr std::uint8_t kFlip = 2;
constexpr std::size_t kCutoffPadding = 8;

}  // namespace

SseSampler::SseSampler(const Lattice& lattice, const Couplings& couplings, SpinConfig alpha,
                       std::size_t initial_cutoff)
    : lattice_(&lattice),
      num_sites_(lattice.num_sites()),
      num_bonds_(lattice.num_bonds()),
      alpha_(std::move(alpha)) {
  if (alpha_.size() != static_cast<std::size_t>(num_sites_)) {
    throw std::invalid_argument("basis state size does not match the lattice");
  }
  string_.slots.assign(std::max<std::size_t>(initial_cutoff, 4), Vertex{});
  for (const Bond& b : lattice.bonds()) {
    bond_a_.push_back(b.a);
    bond_b_.push_back(b.b);
  }
  first_.resize(static_cast<std::size_t>(num_sites_));
  last_.resize(static_cast<std::size_t>(num_sites_));
  set_hamiltonian(couplings);
}

void SseSampler::set_hamiltonian(const Couplings& couplings) {
  if (couplings.num_bonds() != num_bonds_ || couplings.num_sites() != num_sites_) {
    throw std::invalid_argument("couplings do not match the lattice");
  }
  const auto j = couplings.effective();
  const auto h = couplings.fields();
  // only a weight that drops to zero can invalidate existing vertices
  bool dropped = bond_j_.empty();
  for (std::size_t b = 0; b < j.size() && !dropped; ++b) dropped = j[b] <= 0.0 && bond_j_[b] > 0.0;
  for (std::size_t i = 0; i < h.size() && !dropped; ++i) dropped = h[i] <= 0.0 && field_[i] > 0.0;
  bond_j_.assign(j.begin(), j.end());
  field_.assign(h.begin(), h.end());

  bool purge = false;
  for (const Vertex v : string_.slots) {
    if (!dropped) break;
    if (v.is_null()) continue;
    const double w = v.is_site() ? field_[static_cast<std::size_t>(v.index())]
                                 : bond_j_[static_cast<std::size_t>(v.index())];
    if (w <= 0.0) {
      if (v.kind() == Vertex::Kind::SiteOffdiag) {
        throw std::logic_error("cannot switch off the field on a site with off-diagonal vertices");
      }
      purge = true;
    }
  }
  if (purge) {
    for (Vertex& v : string_.slots) {
      if (v.is_null()) continue;
      const double w = v.is_site() ? field_[static_cast<std::size_t>(v.index())]
                                   : bond_j_[static_cast<std::size_t>(v.index())];
      if (w <= 0.0) {
        v = Vertex{};
        --string_.n;
      }
    }
  }

  double shift = 0.0;
  for (double x : bond_j_) shift += x;
  for (double x : field_) shift += x;
  constant_shift_ = shift;
  build_alias();
}

void SseSampler::build_alias() {
  const std::size_t k = static_cast<std::size_t>(num_sites_ + num_bonds_);
  std::vector<double> w(k);
  for (int i = 0; i < num_sites_; ++i) w[static_cast<std::size_t>(i)] = field_[static_cast<std::size_t>(i)];
  for (int b = 0; b < num_bonds_; ++b) {
    w[static_cast<std::size_t>(num_sites_ + b)] = 2.0 * bond_j_[static_cast<std::size_t>(b)];
  }
  total_weight_ = std::accumulate(w.begin(), w.end(), 0.0);

  alias_prob_.assign(k, 1.0);
  alias_index_.resize(k);
  std::iota(alias_index_.begin(), alias_index_.end(), 0);
  if (total_weight_ <= 0.0) return;

  // Vose's construction
  std::vector<double> scaled(k);
  std::vector<int> small;
  std::vector<int> large;
  for (std::size_t i = 0; i < k; ++i) {
    scaled[i] = w[i] * static_cast<double>(k) / total_weight_;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));
  }
  while (!small.empty() && !large.empty()) {
    const int s = small.back();
    small.pop_back();
    const int l = large.back();
    alias_prob_[static_cast<std::size_t>(s)] = scaled[static_cast<std::size_t>(s)];
    alias_index_[static_cast<std::size_t>(s)] = l;
    scaled[static_cast<std::size_t>(l)] -= 1.0 - scaled[static_cast<std::size_t>(s)];
    if (scaled[static_cast<std::size_t>(l)] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (int i : large) alias_prob_[static_cast<std::size_t>(i)] = 1.0;
  for (int i : small) alias_prob_[static_cast<std::size_t>(i)] = 1.0;
}

void SseSampler::diagonal_update(double beta, Rng& rng) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  spins_.assign(alpha_.spins().begin(), alpha_.spins().end());
  const double bw = beta * total_weight_;
  const auto m = static_cast<double>(string_.slots.size());
  const auto k = static_cast<double>(num_sites_ + num_bonds_);
  int n = string_.n;

  for (Vertex& v : string_.slots) {
    switch (v.kind()) {
      case Vertex::Kind::Null: {
        // insertion: P = min(1, beta W / (M - n)), vertex drawn from the weights
        if (bw <= 0.0 || rng.uniform() * (m - n) >= bw) break;
        const double u = rng.uniform() * k;
        auto pick = static_cast<std::size_t>(u);
        if (u - static_cast<double>(pick) >= alias_prob_[pick]) {
          pick = static_cast<std::size_t>(alias_index_[pick]);
        }
        if (pick < static_cast<std::size_t>(num_sites_)) {
          v = Vertex(Vertex::Kind::SiteDiag, static_cast<int>(pick));
          ++n;
        } else {
          const std::size_t b = pick - static_cast<std::size_t>(num_sites_);
          if (spins_[static_cast<std::size_t>(bond_a_[b])] != spins_[static_cast<std::size_t>(bond_b_[b])]) {
            v = Vertex(Vertex::Kind::BondDiag, static_cast<int>(b));
            ++n;
          }
        }
        break;
      }
      case Vertex::Kind::SiteOffdiag: {
        auto& s = spins_[static_cast<std::size_t>(v.index())];
        s = static_cast<std::int8_t>(-s);
        break;
      }
      default:
        // removal: P = min(1, (M - n + 1) / (beta W))
        if (rng.uniform() * bw < m - n + 1) {
          v = Vertex{};
          --n;
        }
        break;
    }
  }
  string_.n = n;
}

void SseSampler::cluster_update(Rng& rng) {
  const std::size_t nv = static_cast<std::size_t>(string_.n);
  vertex_pos_.resize(nv);
  vertex_is_bond_.resize(nv);
  site_vertices_.clear();
  bond_vertices_.clear();
  links_.resize(4 * nv);
  marks_.assign(4 * nv, kUnvisited);
  std::fill(first_.begin(), first_.end(), -1);
  std::fill(last_.begin(), last_.end(), -1);

  auto attach = [this](int site, int lower, int upper) {
    int& prev = last_[static_cast<std::size_t>(site)];
    if (prev >= 0) {
      links_[static_cast<std::size_t>(lower)] = prev;
      links_[static_cast<std::size_t>(prev)] = lower;
    } else {
      first_[static_cast<std::size_t>(site)] = lower;
    }
    prev = upper;
  };

  // legs 4v, 4v+1 below and 4v+2, 4v+3 above a bond vertex; 4v / 4v+1 below / above a site vertex
  int v = 0;
  for (std::size_t p = 0; p < string_.slots.size(); ++p) {
    const Vertex op = string_.slots[p];
    if (op.is_null()) continue;
    vertex_pos_[static_cast<std::size_t>(v)] = static_cast<int>(p);
    const int leg = 4 * v;
    if (op.kind() == Vertex::Kind::BondDiag) {
      vertex_is_bond_[static_cast<std::size_t>(v)] = 1;
      bond_vertices_.push_back(v);
      const auto b = static_cast<std::size_t>(op.index());
      attach(bond_a_[b], leg, leg + 2);
      attach(bond_b_[b], leg + 1, leg + 3);
    } else {
      vertex_is_bond_[static_cast<std::size_t>(v)] = 0;
      site_vertices_.push_back(v);
      attach(op.index(), leg, leg + 1);
    }
    ++v;
  }
  for (int i = 0; i < num_sites_; ++i) {
    const int f = first_[static_cast<std::size_t>(i)];
    if (f < 0) continue;
    const int l = last_[static_cast<std::size_t>(i)];
    links_[static_cast<std::size_t>(f)] = l;
    links_[static_cast<std::size_t>(l)] = f;
  }

  // Clusters grow through bond vertices and end on site vertices.
  for (const int u : bond_vertices_) {
    const auto base = static_cast<std::size_t>(4 * u);
    if (marks_[base] != kUnvisited) continue;
    const auto flag = static_cast<std::uint8_t>(kKeep + (rng() >> 63));
    stack_.clear();
    for (int l = 0; l < 4; ++l) {
      marks_[base + static_cast<std::size_t>(l)] = flag;
      stack_.push_back(4 * u + l);
    }
    while (!stack_.empty()) {
      const int leg = stack_.back();
      stack_.pop_back();
      const int other = links_[static_cast<std::size_t>(leg)];
      if (marks_[static_cast<std::size_t>(other)] != kUnvisited) continue;
      marks_[static_cast<std::size_t>(other)] = flag;
      const int ov = other >> 2;
      if (!vertex_is_bond_[static_cast<std::size_t>(ov)]) continue;
      for (int l = 4 * ov; l < 4 * ov + 4; ++l) {
        if (marks_[static_cast<std::size_t>(l)] != kUnvisited) continue;
        marks_[static_cast<std::size_t>(l)] = flag;
        stack_.push_back(l);
      }
    }
  }

  // Segments bounded by site vertices on both ends get their own coin. A
  // marked leg always shares its flag with its partner, so the writes below
  // are idempotent for legs already reached by a bond cluster.
  for (const int u : site_vertices_) {
    const auto base = static_cast<std::size_t>(4 * u);
    const std::uint64_t r = rng();
    for (std::size_t l = 0; l < 2; ++l) {
      const std::uint8_t seen = marks_[base + l];
      const auto fresh = static_cast<std::uint8_t>(kKeep + ((r >> (63 - l)) & 1U));
      const std::uint8_t flag = seen != kUnvisited ? seen : fresh;
      marks_[base + l] = flag;
      marks_[static_cast<std::size_t>(links_[base + l])] = flag;
    }
    // SiteDiag <-> SiteOffdiag when the two legs disagree
    Vertex& op = string_.slots[static_cast<std::size_t>(vertex_pos_[static_cast<std::size_t>(u)])];
    op = op.site_toggled(marks_[base] != marks_[base + 1]);
  }

  for (int i = 0; i < num_sites_; ++i) {
    const int f = first_[static_cast<std::size_t>(i)];
    const bool flip = f >= 0 ? marks_[static_cast<std::size_t>(f)] == kFlip : rng.coin();
    if (flip) alpha_.flip(static_cast<std::size_t>(i));
  }
}

bool SseSampler::adjust_cutoff() {
  const std::size_t m = string_.slots.size();
  const auto n = static_cast<std::size_t>(string_.n);
  if (4 * n <= 3 * m) return false;
  const std::size_t grown = (4 * n + 2) / 3 + kCutoffPadding;
  string_.slots.resize(grown, Vertex{});
  return true;
}

void SseSampler::sweep(double beta, Rng& rng) {
  diagonal_update(beta, rng);
  cluster_update(rng);
  adjust_cutoff();
  ++mcs_;
}

double SseSampler::energy_estimate(double beta) const {
  return -static_cast<double>(string_.n) / beta + constant_shift_;
}

int SseSampler::count_offdiagonal() const {
  return static_cast<int>(std::count_if(string_.slots.begin(), string_.slots.end(),
                                        [](Vertex v) { return v.kind() == Vertex::Kind::SiteOffdiag; }));
}

bool SseSampler::consistent() const {
  std::vector<std::int8_t> s(alpha_.spins().begin(), alpha_.spins().end());
  int n = 0;
  for (const Vertex v : string_.slots) {
    if (v.is_null()) continue;
    ++n;
    const auto idx = static_cast<std::size_t>(v.index());
    switch (v.kind()) {
      case Vertex::Kind::SiteDiag:
        if (idx >= field_.size() || field_[idx] <= 0.0) return false;
        break;
      case Vertex::Kind::SiteOffdiag:
        if (idx >= field_.size() || field_[idx] <= 0.0) return false;
        s[idx] = static_cast<std::int8_t>(-s[idx]);
        break;
      case Vertex::Kind::BondDiag:
        if (idx >= bond_j_.size() || bond_j_[idx] <= 0.0) return false;
        if (s[static_cast<std::size_t>(bond_a_[idx])] == s[static_cast<std::size_t>(bond_b_[idx])]) return false;
        break;
      case Vertex::Kind::Null:
        break;
    }
  }
  if (n != string_.n) return false;
  return std::equal(s.begin(), s.end(), alpha_.spins().begin());
}

void SseSampler::set_operators(OperatorString string) {
  string_ = std::move(string);
  string_.n = static_cast<int>(std::count_if(string_.slots.begin(), string_.slots.end(),
                                             [](Vertex v) { return !v.is_null(); }));
}

double sse_energy(double mean_n, const Couplings& couplings, double beta) {
  double shift = 0.0;
  for (double j : couplings.effective()) shift += j;
  for (double h : couplings.fields()) shift += h;
  return -mean_n / beta + shift;
}

SseMeasurement measure_thermal(const Lattice& lattice, const Couplings& couplings, double temperature,
                               std::int64_t sweeps, std::int64_t burn_in, std::uint64_t seed, int bins,
                               bool record_visits) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (bins < 2 || sweeps < bins) throw std::invalid_argument("need at least two bins of sweeps");
  const double beta = 1.0 / temperature;
  Rng rng(seed);
  SpinConfig start(static_cast<std::size_t>(lattice.num_sites()));
  for (int i = 0; i < lattice.num_sites(); ++i) start[static_cast<std::size_t>(i)] = rng.coin() ? 1 : -1;
  SseSampler sampler(lattice, couplings, std::move(start));
  for (std::int64_t k = 0; k < burn_in; ++k) sampler.sweep(beta, rng);

  SseMeasurement out;
  if (record_visits) out.basis_visits.assign(std::size_t{1} << lattice.num_sites(), 0);
  const std::int64_t per_bin = sweeps / bins;
  std::vector<double> bin_n(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> bin_off(static_cast<std::size_t>(bins), 0.0);
  for (int b = 0; b < bins; ++b) {
    double sum_n = 0.0;
    double sum_off = 0.0;
    for (std::int64_t k = 0; k < per_bin; ++k) {
      sampler.sweep(beta, rng);
      const int n = sampler.operators().n;
      sum_n += n;
      sum_off += sampler.count_offdiagonal();
      out.max_n = std::max(out.max_n, n);
      if (record_visits) ++out.basis_visits[sampler.basis_state().to_bits()];
    }
    bin_n[static_cast<std::size_t>(b)] = sum_n / static_cast<double>(per_bin);
    bin_off[static_cast<std::size_t>(b)] = sum_off / static_cast<double>(per_bin);
  }
  auto mean_and_error = [bins](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / bins;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= (bins - 1);
    return std::pair{mean, std::sqrt(var / bins)};
  };
  const auto [mean_n, err_n] = mean_and_error(bin_n);
  const auto [mean_off, err_off] = mean_and_error(bin_off);
  out.mean_n = mean_n;
  out.energy = sse_energy(mean_n, couplings, beta);
  out.energy_error = err_n / beta;
  out.mean_offdiagonal = mean_off;
  out.offdiagonal_error = err_off;
  out.final_cutoff = sampler.operators().cutoff();
  return out;
}

}  // namespace trianneal
