#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trianneal {

enum class BondClass : std::uint8_t { Horizontal, Interchain };

struct Bond {
  int a = 0;  // a < b
  int b = 0;
  BondClass cls = BondClass::Horizontal;

  friend bool operator==(const Bond&, const Bond&) = default;
};

struct Triangle {
  std::array<int, 3> sites{};
  std::array<int, 3> bonds{};
};

struct Neighbor {
  int site = 0;
  int bond = 0;
};

// A vertical cut between column `column` and `column + 1` (periodic).
struct Seam {
  int column = 0;
  std::vector<int> severed;   // horizontal bonds crossing the cut, one per row
  std::vector<int> softened;  // interchain bonds touching either edge column
};

// Periodic triangular lattice of Lx * Ly sites. Site (x, y) has index
// y * Lx + x and the six neighbours (x +- 1, y), (x, y +- 1), (x + 1, y + 1),
// (x - 1, y - 1). Horizontal bonds run along rows, the other four are
// interchain bonds.
class Lattice {
 public:
  Lattice(int lx, int ly);

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  int num_sites() const { return lx_ * ly_; }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  int site(int x, int y) const;
  int x_of(int site) const { return site % lx_; }
  int y_of(int site) const { return site / lx_; }

  const std::vector<Bond>& bonds() const { return bonds_; }
  const Bond& bond(int index) const { return bonds_[static_cast<std::size_t>(index)]; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  // Six neighbours with the connecting bond index.
  std::span<const Neighbor, 6> neighbors(int site) const {
    return std::span<const Neighbor, 6>(neighbors_.data() + 6 * static_cast<std::size_t>(site), 6);
  }
  // Triangles containing `site` (always six).
  std::span<const int, 6> triangles_of(int site) const {
    return std::span<const int, 6>(site_triangles_.data() + 6 * static_cast<std::size_t>(site), 6);
  }

  // Bond index of the horizontal bond (x, y)-(x + 1, y).
  int horizontal_bond(int x, int y) const;
  int bond_between(int a, int b) const;  // -1 when not adjacent

 private:
  int add_bond(int a, int b, BondClass cls);

  int lx_;
  int ly_;
  std::vector<Bond> bonds_;
  std::vector<Triangle> triangles_;
  std::vector<Neighbor> neighbors_;
  std::vector<int> site_triangles_;
  std::vector<int> horizontal_;
};

// `n` equally spaced seams at columns k * (Lx / n). Throws unless n divides Lx.
std::vector<Seam> make_seams(const Lattice& lattice, int n);

}  // namespace trianneal
