#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"

namespace trianneal {

// Topological sector of a configuration: the per-row domain-wall count N_D
// when the triangle rule holds and all rows agree, otherwise undefined.
struct SectorLabel {
  enum class Kind : std::uint8_t { Defined, SpinonsPresent, RowsInconsistent };

  Kind kind = Kind::Defined;
  int domain_walls = 0;  // meaningful only when kind == Defined

  static SectorLabel defined(int n) { return {Kind::Defined, n}; }
  static SectorLabel spinons() { return {Kind::SpinonsPresent, 0}; }
  static SectorLabel rows_inconsistent() { return {Kind::RowsInconsistent, 0}; }

  bool is_defined() const { return kind == Kind::Defined; }

  // "4", "U:spinons" or "U:rows".
  std::string to_string() const;
  static SectorLabel parse(const std::string& text);

  friend auto operator<=>(const SectorLabel&, const SectorLabel&) = default;
};

int row_dw_count(const SpinConfig& config, int row, const Lattice& lattice);

SectorLabel sector_label(const SpinConfig& config, const Lattice& lattice);

std::vector<int> spinon_triangles(const SpinConfig& config, const Lattice& lattice);

// Dimers live on the honeycomb lattice dual to the triangles: dual sites are
// triangles and each direct bond is crossed by exactly one dual bond, so dual
// bonds share the direct bond indexing.
struct DimerConfig {
  std::vector<std::uint8_t> occupied;  // per direct bond
  std::vector<int> coverage;           // dimers touching each triangle
  bool perfect_matching = false;

  int num_dimers() const;
};

DimerConfig dimer_mapping(const SpinConfig& config, const Lattice& lattice);

struct SectorHistogram {
  std::map<int, double> defined;  // N_D -> proportion
  double undefined = 0.0;
  std::size_t samples = 0;

  double proportion(int domain_walls) const;
  double total() const;
};

// Throws on empty input.
SectorHistogram sector_histogram(std::span<const SectorLabel> labels);

}  // namespace trianneal
