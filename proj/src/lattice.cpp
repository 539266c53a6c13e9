#include "trianneal/lattice.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace trianneal {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

}  // namespace

Lattice::Lattice(int lx, int ly) : lx_(lx), ly_(ly) {
  if (lx < 3 || ly < 3) {
    throw std::invalid_argument("lattice dimensions must be at least 3x3, got " +
                                std::to_string(lx) + "x" + std::to_string(ly));
  }
  const int n = num_sites();
  bonds_.reserve(3 * static_cast<std::size_t>(n));
  horizontal_.resize(static_cast<std::size_t>(n));

  // bonds 3s, 3s+1, 3s+2 leave site s to the right, up and up-right
  for (int y = 0; y < ly_; ++y) {
    for (int x = 0; x < lx_; ++x) {
      const int s = site(x, y);
      horizontal_[static_cast<std::size_t>(s)] = add_bond(s, site(x + 1, y), BondClass::Horizontal);
      add_bond(s, site(x, y + 1), BondClass::Interchain);
      add_bond(s, site(x + 1, y + 1), BondClass::Interchain);
    }
  }

  neighbors_.resize(6 * static_cast<std::size_t>(n));
  for (int y = 0; y < ly_; ++y) {
    for (int x = 0; x < lx_; ++x) {
      const int s = site(x, y);
      Neighbor* out = neighbors_.data() + 6 * s;
      out[0] = {site(x + 1, y), 3 * s};
      out[1] = {site(x - 1, y), 3 * site(x - 1, y)};
      out[2] = {site(x, y + 1), 3 * s + 1};
      out[3] = {site(x, y - 1), 3 * site(x, y - 1) + 1};
      out[4] = {site(x + 1, y + 1), 3 * s + 2};
      out[5] = {site(x - 1, y - 1), 3 * site(x - 1, y - 1) + 2};
    }
  }

  triangles_.reserve(2 * static_cast<std::size_t>(n));
  for (int y = 0; y < ly_; ++y) {
    for (int x = 0; x < lx_; ++x) {
      const int s = site(x, y);
      Triangle up;
      up.sites = {s, site(x + 1, y), site(x + 1, y + 1)};
      up.bonds = {3 * s, 3 * site(x + 1, y) + 1, 3 * s + 2};
      triangles_.push_back(up);
      Triangle down;
      down.sites = {s, site(x, y + 1), site(x + 1, y + 1)};
      down.bonds = {3 * s + 1, 3 * site(x, y + 1), 3 * s + 2};
      triangles_.push_back(down);
    }
  }

  site_triangles_.assign(6 * static_cast<std::size_t>(n), -1);
  std::vector<int> fill(static_cast<std::size_t>(n), 0);
  for (int t = 0; t < num_triangles(); ++t) {
    for (int s : triangles_[static_cast<std::size_t>(t)].sites) {
      site_triangles_[6 * static_cast<std::size_t>(s) + static_cast<std::size_t>(fill[s]++)] = t;
    }
  }
}

int Lattice::site(int x, int y) const { return wrap(y, ly_) * lx_ + wrap(x, lx_); }

int Lattice::horizontal_bond(int x, int y) const {
  return horizontal_[static_cast<std::size_t>(site(x, y))];
}

int Lattice::bond_between(int a, int b) const {
  for (const Neighbor& nb : neighbors(a)) {
    if (nb.site == b) return nb.bond;
  }
  return -1;
}

int Lattice::add_bond(int a, int b, BondClass cls) {
  if (a > b) std::swap(a, b);
  bonds_.push_back({a, b, cls});
  return static_cast<int>(bonds_.size()) - 1;
}

std::vector<Seam> make_seams(const Lattice& lattice, int n) {
  const int lx = lattice.lx();
  if (n < 1 || n > lx || lx % n != 0) {
    throw std::invalid_argument("seam count " + std::to_string(n) + " must divide lattice width " +
                                std::to_string(lx));
  }
  const int spacing = lx / n;
  std::vector<Seam> seams;
  seams.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Seam seam;
    seam.column = k * spacing;
    const int left = seam.column;
    const int right = (seam.column + 1) % lx;
    for (int y = 0; y < lattice.ly(); ++y) {
      seam.severed.push_back(lattice.horizontal_bond(left, y));
    }
    for (int b = 0; b < lattice.num_bonds(); ++b) {
      const Bond& bond = lattice.bond(b);
      if (bond.cls != BondClass::Interchain) continue;
      const int xa = lattice.x_of(bond.a);
      const int xb = lattice.x_of(bond.b);
      if (xa == left || xa == right || xb == left || xb == right) seam.softened.push_back(b);
    }
    seams.push_back(std::move(seam));
  }
  return seams;
}

}  // namespace trianneal
