#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "trianneal/lattice.hpp"

namespace {

using trianneal::BondClass;
using trianneal::Lattice;

TEST(Lattice, CountsOn6x6) {
  const Lattice lat(6, 6);
  EXPECT_EQ(lat.num_sites(), 36);
  EXPECT_EQ(lat.num_bonds(), 108);
  EXPECT_EQ(lat.num_triangles(), 72);
  const auto horizontal = std::count_if(lat.bonds().begin(), lat.bonds().end(),
                                        [](const auto& b) { return b.cls == BondClass::Horizontal; });
  EXPECT_EQ(horizontal, 36);
}

TEST(Lattice, RejectsTinyDimensions) {
  EXPECT_THROW(Lattice(2, 6), std::invalid_argument);
  EXPECT_THROW(Lattice(6, 2), std::invalid_argument);
  EXPECT_NO_THROW(Lattice(3, 3));
}

TEST(Lattice, SiteIndexWrapsPeriodically) {
  const Lattice lat(6, 4);
  EXPECT_EQ(lat.site(0, 0), 0);
  EXPECT_EQ(lat.site(5, 3), 23);
  EXPECT_EQ(lat.site(6, 0), 0);
  EXPECT_EQ(lat.site(-1, 0), 5);
  EXPECT_EQ(lat.site(0, -1), 18);
  EXPECT_EQ(lat.x_of(23), 5);
  EXPECT_EQ(lat.y_of(23), 3);
}

TEST(Lattice, EverySiteHasSixDistinctNeighbours) {
  for (auto [lx, ly] : {std::pair{3, 3}, std::pair{4, 4}, std::pair{6, 6}, std::pair{5, 4}}) {
    const Lattice lat(lx, ly);
    for (int s = 0; s < lat.num_sites(); ++s) {
      std::set<int> sites;
      std::set<int> bonds;
      for (const auto& nb : lat.neighbors(s)) {
        sites.insert(nb.site);
        bonds.insert(nb.bond);
        const auto& b = lat.bond(nb.bond);
        EXPECT_TRUE((b.a == s && b.b == nb.site) || (b.b == s && b.a == nb.site));
      }
      EXPECT_EQ(sites.size(), 6U) << lx << "x" << ly << " site " << s;
      EXPECT_EQ(bonds.size(), 6U);
      EXPECT_EQ(sites.count(s), 0U);
    }
  }
}

TEST(Lattice, NeighbourOffsets) {
  const Lattice lat(6, 6);
  const int s = lat.site(2, 3);
  std::set<int> expected = {lat.site(3, 3), lat.site(1, 3), lat.site(2, 4),
                            lat.site(2, 2), lat.site(3, 4), lat.site(1, 2)};
  std::set<int> got;
  for (const auto& nb : lat.neighbors(s)) got.insert(nb.site);
  EXPECT_EQ(got, expected);
}

TEST(Lattice, BondsAreOrderedAndUnique) {
  const Lattice lat(4, 4);
  std::set<std::pair<int, int>> seen;
  for (const auto& b : lat.bonds()) {
    EXPECT_LT(b.a, b.b);
    EXPECT_TRUE(seen.insert({b.a, b.b}).second);
  }
}

TEST(Lattice, TrianglesUseTheirOwnBonds) {
  const Lattice lat(6, 6);
  std::vector<int> per_bond(static_cast<std::size_t>(lat.num_bonds()), 0);
  for (const auto& t : lat.triangles()) {
    for (int b : t.bonds) {
      ++per_bond[static_cast<std::size_t>(b)];
      const auto& bond = lat.bond(b);
      EXPECT_TRUE(std::find(t.sites.begin(), t.sites.end(), bond.a) != t.sites.end());
      EXPECT_TRUE(std::find(t.sites.begin(), t.sites.end(), bond.b) != t.sites.end());
    }
  }
  // every bond borders exactly two triangles
  for (int c : per_bond) EXPECT_EQ(c, 2);
  for (int s = 0; s < lat.num_sites(); ++s) {
    for (int t : lat.triangles_of(s)) {
      const auto& sites = lat.triangles()[static_cast<std::size_t>(t)].sites;
      EXPECT_TRUE(std::find(sites.begin(), sites.end(), s) != sites.end());
    }
  }
}

TEST(Lattice, HorizontalBondLookup) {
  const Lattice lat(6, 6);
  const int b = lat.horizontal_bond(5, 2);
  EXPECT_EQ(lat.bond(b).cls, BondClass::Horizontal);
  EXPECT_EQ(lat.bond_between(lat.site(5, 2), lat.site(0, 2)), b);
  EXPECT_EQ(lat.bond_between(lat.site(0, 0), lat.site(3, 3)), -1);
}

TEST(Seams, SixCutsOn6x6) {
  const Lattice lat(6, 6);
  const auto seams = trianneal::make_seams(lat, 6);
  ASSERT_EQ(seams.size(), 6U);
  for (int k = 0; k < 6; ++k) {
    const auto& seam = seams[static_cast<std::size_t>(k)];
    EXPECT_EQ(seam.column, k);
    EXPECT_EQ(seam.severed.size(), 6U);
    EXPECT_EQ(seam.softened.size(), 30U);
    for (int b : seam.severed) {
      const auto& bond = lat.bond(b);
      EXPECT_EQ(bond.cls, BondClass::Horizontal);
      const std::set<int> xs = {lat.x_of(bond.a), lat.x_of(bond.b)};
      EXPECT_EQ(xs, (std::set<int>{k, (k + 1) % 6}));
    }
    for (int b : seam.softened) {
      const auto& bond = lat.bond(b);
      EXPECT_EQ(bond.cls, BondClass::Interchain);
      const bool touches = lat.x_of(bond.a) == k || lat.x_of(bond.b) == k ||
                           lat.x_of(bond.a) == (k + 1) % 6 || lat.x_of(bond.b) == (k + 1) % 6;
      EXPECT_TRUE(touches);
    }
  }
}

TEST(Seams, SingleCutAtColumnZero) {
  const Lattice lat(6, 6);
  const auto seams = trianneal::make_seams(lat, 1);
  ASSERT_EQ(seams.size(), 1U);
  EXPECT_EQ(seams[0].column, 0);
}

TEST(Seams, SpacingFollowsLx) {
  const Lattice lat(6, 6);
  const auto seams = trianneal::make_seams(lat, 3);
  ASSERT_EQ(seams.size(), 3U);
  EXPECT_EQ(seams[1].column, 2);
  EXPECT_EQ(seams[2].column, 4);
}

TEST(Seams, CountMustDivideLx) {
  const Lattice lat(6, 6);
  EXPECT_THROW(trianneal::make_seams(lat, 4), std::invalid_argument);
  EXPECT_THROW(trianneal::make_seams(lat, 0), std::invalid_argument);
}

}  // namespace
