#include <set>

#include "doctest.h"
#include "glob/error.hpp"
#include "glob/generators.hpp"
#include "glob/globular_set.hpp"
#include "glob/globular_sum.hpp"

using namespace glob;

namespace {

// Brute force: every assignment of cells, filtered by the morphism laws.
std::size_t brute_force_homs(const GlobularSet& a, const GlobularSet& x, bool reflexive) {
  std::vector<CellRef> cells;
  for (int k = 0; k <= a.dim_bound(); ++k)
    for (CellId c = 0; c < a.count(k); ++c) cells.push_back({k, c});
  GlobMap f;
  f.components.resize(a.counts.size());
  for (std::size_t k = 0; k < a.counts.size(); ++k) f.components[k].assign(a.counts[k], 0);
  std::size_t n = 0;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == cells.size()) {
      if (is_morphism(a, x, f, reflexive)) ++n;
      return;
    }
    auto c = cells[i];
    for (CellId v = 0; v < x.count(c.dim); ++v) {
      f.components[static_cast<std::size_t>(c.dim)][c.index] = v;
      go(i + 1);
    }
  };
  go(0);
  return n;
}

std::size_t parallel_pair_oracle(const GlobularSet& x, int k) {
  if (k == 0) return 1;
  std::size_t n = 0;
  for (CellId a = 0; a < x.count(k - 1); ++a)
    for (CellId b = 0; b < x.count(k - 1); ++b) {
      if (k == 1) {
        ++n;
        continue;
      }
      if (x.source({k - 1, a}) == x.source({k - 1, b}) && x.target({k - 1, a}) == x.target({k - 1, b})) ++n;
    }
  return n;
}

GlobularSet point() {
  auto x = GlobularSet::empty(1);
  x.add_point();
  return x;
}

}  // namespace

TEST_CASE("globes and spheres") {
  CHECK(disk(0).counts == std::vector<std::size_t>{1});
  CHECK(disk(2).counts == std::vector<std::size_t>{2, 2, 1});
  CHECK(sphere(0).total_cells() == 0);
  CHECK(sphere(2).counts == std::vector<std::size_t>{2, 2});
  for (int k = 0; k <= 4; ++k) {
    CHECK(validate_globular(disk(k)).empty());
    CHECK(validate_globular(sphere(k)).empty());
    CHECK(is_morphism(sphere(k), disk(k), sphere_inclusion(k)));
    CHECK(is_injective(sphere(k), sphere_inclusion(k)));
  }
}

TEST_CASE("a broken globularity relation is reported once") {
  auto x = GlobularSet::empty(2);
  x.counts[0] = 3;
  x.add_cell(1, 0, 1);
  x.add_cell(1, 2, 1);
  x.add_cell(2, 0, 1);
  auto report = validate_globular(x);
  REQUIRE(report.size() == 1);
  CHECK(report[0].cell == CellRef{2, 0});
}

TEST_CASE("out of range references and bad reflexivities are reported") {
  auto x = disk(1);
  x.src[1][0] = 7;
  CHECK(validate_globular(x).size() == 1);
  auto r = free_reflexive(disk(1), 1);
  CHECK(validate_globular(r).empty());
  (*r.refl)[0][0] = 0;  // the top cell is not a loop
  CHECK_FALSE(validate_globular(r).empty());
}

TEST_CASE("randomly attached globes are always valid") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto x = random_globular_set(rng, static_cast<int>(rng.uniform(0, 4)), 6);
    CHECK(validate_globular(x).empty());
  }
}

TEST_CASE("iterated boundaries") {
  auto d3 = disk(3);
  CHECK(iterated_boundary(d3, {3, 0}, 0, Side::Source) == 0);
  CHECK(iterated_boundary(d3, {3, 0}, 0, Side::Target) == 1);
  CHECK_THROWS_AS(iterated_boundary(d3, {2, 0}, 2, Side::Source), DimensionError);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto x = random_globular_set(rng, 4, 4);
    for (int k = 2; k <= x.dim_bound(); ++k)
      for (CellId c = 0; c < x.count(k); ++c) {
        if (k == 3)
          CHECK(iterated_boundary(x, {k, c}, 0, Side::Source) == x.source({1, x.source({2, x.source({k, c})})}));
        for (int j = 0; j < k - 1; ++j)
          for (auto side : {Side::Source, Side::Target}) {
            CHECK(iterated_boundary(x, {k, c}, j, side) ==
                  iterated_boundary(x, {k - 1, x.boundary({k, c}, side)}, j, side));
            // Globularity: the path through the other side gives the same cell.
            CHECK(iterated_boundary(x, {k, c}, j, side) ==
                  iterated_boundary(x, {k - 1, x.boundary({k, c}, side == Side::Source ? Side::Target : Side::Source)},
                                    j, side));
          }
      }
  }
}

TEST_CASE("parallelism") {
  auto x = GlobularSet::empty(1);
  x.counts[0] = 3;
  x.add_cell(1, 0, 1);
  x.add_cell(1, 2, 1);
  CHECK(parallel(x, {0, 0}, {0, 2}));
  CHECK_FALSE(parallel(x, {1, 0}, {1, 1}));
  for (int k = 1; k <= 4; ++k) CHECK(parallel(sphere(k), {k - 1, 0}, {k - 1, 1}));
}

TEST_CASE("hom sets agree with brute force and representability") {
  Rng rng(3);
  for (int i = 0; i < 25; ++i) {
    auto x = random_globular_set(rng, 2, 3);
    CHECK(count_homs(disk(0), x) == x.count(0));
    for (int k = 0; k <= 3; ++k) CHECK(count_homs(sphere(k), x) == parallel_pair_oracle(x, k));
    CHECK(count_homs(disk(1), x) == brute_force_homs(disk(1), x, false));
    CHECK(count_homs(sphere(2), x) == brute_force_homs(sphere(2), x, false));
  }
}

TEST_CASE("hom(D1, D1) in the plain and reflexive variants") {
  CHECK(count_homs(disk(1), disk(1)) == 1);
  auto r = free_reflexive(disk(1), 1);
  CHECK(count_homs(r, r) == 3);
  CHECK(brute_force_homs(r, r, true) == 3);
}

TEST_CASE("hom enumeration is lexicographic and duplicate free") {
  auto x = free_reflexive(disk(1), 2);
  auto homs = hom_set(sphere(2), underlying(x));
  CHECK(std::is_sorted(homs.begin(), homs.end()));
  CHECK(std::set<GlobMap>(homs.begin(), homs.end()).size() == homs.size());
}

TEST_CASE("pushouts") {
  SUBCASE("along an identity") {
    auto a = disk(2);
    auto x = free_reflexive(disk(1), 2);
    auto g = hom_set(a, underlying(x)).back();
    auto p = pushout(a, a, underlying(x), identity_map(a), g);
    CHECK(p.object == underlying(x));
  }
  SUBCASE("a loop") {
    auto pt = point();
    GlobMap to_point{{{0, 0}}};
    auto p = pushout(sphere(1), disk(1), with_dim_bound(pt, 0), sphere_inclusion(1), to_point);
    CHECK(p.object.counts == std::vector<std::size_t>{1, 1});
    CHECK(is_injective(with_dim_bound(pt, 0), p.from_b));
  }
  SUBCASE("non-injective first leg") {
    GlobMap to_point{{{0, 0}}};
    CHECK_THROWS_AS(pushout(sphere(1), with_dim_bound(point(), 0), disk(1), to_point, sphere_inclusion(1)),
                    MonomorphismError);
  }
  SUBCASE("two attachments in either order") {
    // Attach two 1-cells to a pair of points, one at a time or both together.
    auto base = GlobularSet::empty(1);
    base.counts[0] = 2;
    GlobMap pair_ab{{{0, 1}}};
    auto first = pushout(sphere(1), disk(1), base, sphere_inclusion(1), pair_ab);
    auto second = pushout(sphere(1), disk(1), first.object, sphere_inclusion(1), pair_ab);
    auto both = GlobularSet::empty(1);
    both.counts[0] = 4;
    both.add_cell(1, 0, 1);
    both.add_cell(1, 2, 3);
    auto two_spheres = GlobularSet::empty(0);
    two_spheres.counts[0] = 4;
    GlobMap incl{{{0, 1, 2, 3}}};
    GlobMap glue{{{0, 1, 0, 1}}};
    auto combined = pushout(two_spheres, both, base, incl, glue);
    CHECK(isomorphic(second.object, combined.object));
  }
}

TEST_CASE("pushout universal property on small instances") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto b = random_globular_set(rng, 1, 2);
    auto maps = hom_set(sphere(1), b);
    if (maps.empty()) continue;
    const auto& g = maps[rng.uniform(0, maps.size() - 1)];
    auto p = pushout(sphere(1), disk(1), b, sphere_inclusion(1), g);
    CHECK(compose(p.from_a, sphere_inclusion(1)) == compose(p.from_b, g));
    // For every cocone into a small target there is exactly one mediating map.
    auto z = random_globular_set(rng, 1, 3);
    for (const auto& u : hom_set(disk(1), z))
      for (const auto& v : hom_set(b, z)) {
        if (compose(u, sphere_inclusion(1)) != compose(v, g)) continue;
        std::size_t mediating = 0;
        for (const auto& m : hom_set(p.object, z))
          if (compose(m, p.from_a) == u && compose(m, p.from_b) == v) ++mediating;
        CHECK(mediating == 1);
      }
  }
}

TEST_CASE("globular sums") {
  CHECK(realize_globular_sum({{1}, {}}).shape == disk(1));
  CHECK(realize_globular_sum({{1, 1}, {0}}).shape.counts == std::vector<std::size_t>{3, 2});
  CHECK_THROWS_AS(realize_globular_sum({{2, 1, 2}, {1, 0}}), TableError);
  CHECK_THROWS_AS(realize_globular_sum({{1, 1}, {1}}), TableError);
  for (const auto& t : enumerate_tables(9, 3)) {
    auto r = realize_globular_sum(t);
    CHECK(validate_globular(r.shape).empty());
    CHECK(r.shape.total_cells() == t.cell_count());
    CHECK(r.shape == realize_globular_sum(t).shape);
    for (std::size_t j = 0; j < t.peaks.size(); ++j) {
      CHECK(is_morphism(disk(t.peaks[j]), r.shape, r.inclusions[j]));
      CHECK(is_injective(disk(t.peaks[j]), r.inclusions[j]));
    }
    for (std::size_t j = 0; j < t.valleys.size(); ++j) {
      int v = t.valleys[j];
      CHECK(compose(r.inclusions[j], globe_face(v, t.peaks[j], Side::Target)) ==
            compose(r.inclusions[j + 1], globe_face(v, t.peaks[j + 1], Side::Source)));
    }
  }
  // Height and per-dimension counts of sum(2,1,2,0,1) by an explicit colimit count.
  auto r = realize_globular_sum({{2, 2, 1}, {1, 0}});
  CHECK(r.table.height() == 2);
  CHECK(r.shape.counts == std::vector<std::size_t>{3, 4, 2});
}
