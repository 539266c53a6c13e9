#include "trianneal/topology.hpp"

#include <numeric>
#include <stdexcept>

namespace trianneal {

std::string SectorLabel::to_string() const {
  switch (kind) {
    case Kind::Defined:
      return std::to_string(domain_walls);
    case Kind::SpinonsPresent:
      return "U:spinons";
    case Kind::RowsInconsistent:
      return "U:rows";
  }
  return "U:?";
}

SectorLabel SectorLabel::parse(const std::string& text) {
  if (text == "U:spinons") return spinons();
  if (text == "U:rows") return rows_inconsistent();
  std::size_t used = 0;
  const int n = std::stoi(text, &used);
  if (used != text.size() || n < 0) throw std::invalid_argument("bad sector label: " + text);
  return defined(n);
}

int row_dw_count(const SpinConfig& config, int row, const Lattice& lattice) {
  if (row < 0 || row >= lattice.ly()) throw std::out_of_range("row index out of range");
  int count = 0;
  for (int x = 0; x < lattice.lx(); ++x) {
    if (config[static_cast<std::size_t>(lattice.site(x, row))] !=
        config[static_cast<std::size_t>(lattice.site(x + 1, row))]) {
      ++count;
    }
  }
  return count;
}

SectorLabel sector_label(const SpinConfig& config, const Lattice& lattice) {
  if (triangle_violations(config, lattice) > 0) return SectorLabel::spinons();
  const int first = row_dw_count(config, 0, lattice);
  for (int y = 1; y < lattice.ly(); ++y) {
    if (row_dw_count(config, y, lattice) != first) return SectorLabel::rows_inconsistent();
  }
  return SectorLabel::defined(first);
}

std::vector<int> spinon_triangles(const SpinConfig& config, const Lattice& lattice) {
  std::vector<int> out;
  const auto& triangles = lattice.triangles();
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& s = triangles[t].sites;
    const auto s0 = config[static_cast<std::size_t>(s[0])];
    if (s0 == config[static_cast<std::size_t>(s[1])] && s0 == config[static_cast<std::size_t>(s[2])]) {
      out.push_back(static_cast<int>(t));
    }
  }
  return out;
}

int DimerConfig::num_dimers() const {
  return std::accumulate(occupied.begin(), occupied.end(), 0);
}

DimerConfig dimer_mapping(const SpinConfig& config, const Lattice& lattice) {
  DimerConfig out;
  out.occupied.assign(static_cast<std::size_t>(lattice.num_bonds()), 0);
  for (int b = 0; b < lattice.num_bonds(); ++b) {
    const Bond& bond = lattice.bond(b);
    if (config[static_cast<std::size_t>(bond.a)] == config[static_cast<std::size_t>(bond.b)]) {
      out.occupied[static_cast<std::size_t>(b)] = 1;
    }
  }
  out.coverage.assign(static_cast<std::size_t>(lattice.num_triangles()), 0);
  out.perfect_matching = true;
  const auto& triangles = lattice.triangles();
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    int c = 0;
    for (int b : triangles[t].bonds) c += out.occupied[static_cast<std::size_t>(b)];
    out.coverage[t] = c;
    if (c != 1) out.perfect_matching = false;
  }
  return out;
}

double SectorHistogram::proportion(int domain_walls) const {
  const auto it = defined.find(domain_walls);
  return it == defined.end() ? 0.0 : it->second;
}

double SectorHistogram::total() const {
  double sum = undefined;
  for (const auto& [nd, p] : defined) sum += p;
  return sum;
}

SectorHistogram sector_histogram(std::span<const SectorLabel> labels) {
  if (labels.empty()) throw std::invalid_argument("sector histogram of an empty sample");
  SectorHistogram hist;
  hist.samples = labels.size();
  std::map<int, std::size_t> counts;
  std::size_t undefined = 0;
  for (const SectorLabel& label : labels) {
    if (label.is_defined()) {
      ++counts[label.domain_walls];
    } else {
      ++undefined;
    }
  }
  const double norm = static_cast<double>(labels.size());
  for (const auto& [nd, c] : counts) hist.defined[nd] = static_cast<double>(c) / norm;
  hist.undefined = static_cast<double>(undefined) / norm;
  return hist;
}

}  // namespace trianneal
