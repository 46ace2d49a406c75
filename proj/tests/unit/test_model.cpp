#include <set>

#include "doctest.h"
#include "glob/error.hpp"
#include "glob/model.hpp"
#include "glob/strict_models.hpp"

using namespace glob;

namespace {

const GlobularSumTable kTwo{{1, 1}, {0}};

TheoryPresentation composition_only() {
  auto t = globe_theory(std::nullopt);
  return extend_theory(t, {{"comp0", 0, kTwo, make_cell(0, 0), make_cell(0, 2)}});
}

// Two points, every ordered pair joined by exactly one 1-cell.
GlobularSet codiscrete_pair() {
  auto x = GlobularSet::empty(1);
  x.counts[0] = 2;
  for (CellId a = 0; a < 2; ++a)
    for (CellId b = 0; b < 2; ++b) x.add_cell(1, a, b);
  return x;
}

// Two points, two parallel 1-cells f, g and one 2-cell f -> g.
GlobularSet bigon() {
  auto x = GlobularSet::empty(2);
  x.counts[0] = 2;
  x.add_cell(1, 0, 1);
  x.add_cell(1, 0, 1);
  x.add_cell(2, 0, 1);
  return x;
}

// Closure oracle for classes of k-cells: repeated merging until stable.
std::size_t class_count_oracle(const GlobularSet& x, int k, CellId a, CellId b) {
  std::vector<CellId> cells;
  for (CellId c = 0; c < x.count(k); ++c)
    if (k == 0 || (x.source({k, c}) == a && x.target({k, c}) == b)) cells.push_back(c);
  std::vector<CellId> label(x.count(k));
  for (CellId c = 0; c < x.count(k); ++c) label[c] = c;
  bool changed = true;
  while (changed) {
    changed = false;
    for (CellId h = 0; h < x.count(k + 1); ++h) {
      auto s = x.source({k + 1, h}), t = x.target({k + 1, h});
      auto lo = std::min(label[s], label[t]);
      for (auto& l : label)
        if ((l == label[s] || l == label[t]) && l != lo) {
          l = lo;
          changed = true;
        }
    }
  }
  std::set<CellId> classes;
  for (auto c : cells) classes.insert(label[c]);
  return classes.size();
}

}  // namespace

TEST_CASE("terminal model and a corrupted table") {
  auto t = groupoid_test_theory();
  for (int d = 0; d <= 4; ++d) CHECK(check_model(terminal_model(t, d)).empty());

  ExplicitModel m{composition_only(), codiscrete_pair(), {}};
  fill_forced_tables(m, 1);
  REQUIRE(check_model(m).empty());
  auto cfg = configurations(kTwo, m.carrier);
  // Configuration 0 composes two loops on point 0; point it at the cell 0 -> 1 instead.
  REQUIRE(m.carrier.target({1, m.tables["comp0"][0]}) == cfg->maps[0]({0, 2}));
  m.tables["comp0"][0] = 1;
  auto report = check_model(m);
  REQUIRE(report.size() == 1);
  CHECK(report[0].law == "target");
  CHECK(report[0].configuration == 0);
}

TEST_CASE("evaluation") {
  Rng rng(2);
  auto t = groupoid_test_theory();
  auto lm = random_labeled_model(t, {{0}, 2, 1}, 1, rng);
  const auto& m = lm.model;
  ModelEvaluator ev(m);
  for (const auto* g : t.generators()) {
    if (!m.interprets(*g)) continue;
    const auto& cfg = ev.configs(*g);
    for (std::size_t i = 0; i < cfg.maps.size() && i < 20; ++i) {
      CellId v = eval_term(m, g->arity, generic_term(*g), cfg.maps[i]);
      CHECK(v == m.tables.at(g->name)[i]);
      CHECK(m.carrier.source({g->output_dim(), v}) == eval_term(m, g->arity, g->h1, cfg.maps[i]));
      CHECK(eval_term(m, g->arity, make_cell(0, 0), cfg.maps[i]) == cfg.maps[i]({0, 0}));
    }
  }
  const auto& x0 = ev.configs(*t.find("comp0")).maps[0];
  CHECK_THROWS_AS(eval_term(m, kTwo, make_op("nope", 1, {make_cell(1, 0)}), x0), TypeError);
  CHECK_THROWS_AS(eval_term(m, kTwo, make_op("comp0", 1, {make_cell(1, 0)}), x0), TypeError);
  CHECK_THROWS_AS(eval_term(m, kTwo, make_cell(1, 7), x0), TypeError);
}

TEST_CASE("labelled models are valid and coskeletal") {
  auto t = groupoid_test_theory();
  Rng rng(9);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 4; ++i) {
      auto inst = random_model_pair(t, n, rng);
      const auto& y = inst.target.model;
      const auto& x = inst.over.source.model;
      CHECK(check_model(y).empty());
      CHECK(check_model(x).empty());
      CHECK(is_coskeletal(y, n + 1));
      CHECK(is_coskeletal(x, n + 1));
      CHECK(is_model_morphism(x, y, inst.over.map));
    }
}

TEST_CASE("truncation of models") {
  auto t = groupoid_test_theory();
  Rng rng(4);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 4; ++i) {
      auto inst = random_model_pair(t, n, rng);
      const auto& x = inst.over.source.model;
      const auto& y = inst.target.model;
      auto tx = trunc_lower(x, n);
      auto ty = trunc_lower(y, n);
      CHECK(check_model(tx.model).empty());
      CHECK(is_truncated(tx.model, n));
      CHECK(is_model_morphism(x, tx.model, tx.unit));
      CHECK(is_weak_equivalence(x, tx.model, tx.unit));
      auto tf = trunc_lower_map(x, y, inst.over.map, n);
      CHECK(is_model_morphism(tx.model, ty.model, tf));
      bool we = is_weak_equivalence(x, y, inst.over.map);
      CHECK(we == inst.strict_iso);
      CHECK(we == is_weak_equivalence(tx.model, ty.model, tf));
      // Truncated models are models of the truncated theory and come back unchanged.
      auto r = restrict_to_truncation(tx.model, n);
      CHECK(check_model(r).empty());
      auto back = trunc_upper(r, t, x.dim_bound());
      CHECK(back.carrier == tx.model.carrier);
      CHECK(back.tables == tx.model.tables);
      // pi_{n+1} is trivial at every base.
      for (const auto& [a, b] : parallel_pairs(x.carrier, n + 1)) {
        auto cls = homotopy_group(x, n + 1, std::make_pair(a, b));
        CHECK(cls.size() <= 1);
      }
      // pi_k agrees with the closure oracle.
      for (int k = 1; k <= n; ++k)
        for (const auto& [a, b] : parallel_pairs(x.carrier, k))
          CHECK(homotopy_group(x, k, std::make_pair(a, b)).size() == class_count_oracle(x.carrier, k, a, b));
    }
  CHECK_THROWS_AS(trunc_lower(ExplicitModel{globe_theory(std::nullopt), coskeleton(bigon(), 3), {}}, 0),
                  PreconditionError);
}

TEST_CASE("one higher cell merges two classes") {
  ExplicitModel x{globe_theory(std::nullopt), bigon(), {}};
  auto tx = trunc_lower(x, 1);
  CHECK(tx.model.carrier.count(1) == 1);
  CHECK(homotopy_group(x, 1, std::make_pair(CellId{0}, CellId{1})).size() == 1);
  // Without identity 2-cells pi_2(f, f) is empty in X but not in its truncation.
  CHECK_FALSE(is_weak_equivalence(x, tx.model, tx.unit));
  // Already truncated: the unit is an isomorphism.
  auto again = trunc_lower(tx.model, 1);
  CHECK(is_bijective(tx.model.carrier, again.model.carrier, again.unit));
}

TEST_CASE("coskeleta of models") {
  auto t = groupoid_test_theory();
  Rng rng(5);
  for (int n = 1; n <= 2; ++n) {
    auto inst = random_model_pair(t, n, rng);
    const auto& x = inst.target.model;
    auto low = cosk_lower(x, n + 1);
    CHECK(low.carrier.counts == std::vector<std::size_t>(x.carrier.counts.begin(), x.carrier.counts.end() - 1));
    auto up = cosk_upper(low, x.dim_bound());
    CHECK(check_model(up).empty());
    CHECK(is_coskeletal(up, n + 1));
    CHECK(isomorphic(up.carrier, x.carrier));
    CHECK(cosk_lower(up, n + 1).carrier == low.carrier);
    CHECK(cosk_lower(up, n + 1).tables == low.tables);
    auto ext = attach_to_coskeletal(x, n, n + 2, 0, 0);
    CHECK(isomorphic(ext.carrier, x.carrier));
  }
  auto term = terminal_model(t, 2);
  CHECK(cosk_upper(term, 4).carrier == terminal(4));
  CHECK(cosk_lower(term, 1).carrier == terminal(1));
}

TEST_CASE("homotopy sets and weak equivalences on small carriers") {
  auto term = terminal(3);
  for (int k = 0; k <= 3; ++k)
    CHECK(homotopy_group(term, k, k == 0 ? std::nullopt : std::optional(std::make_pair(CellId{0}, CellId{0}))).size() == 1);
  CHECK_THROWS_AS(homotopy_group(with_dim_bound(codiscrete_pair(), 2), 2, std::make_pair(CellId{0}, CellId{1})), PreconditionError);
  auto b = bigon();
  CHECK(is_weak_equivalence(b, b, identity_map(b)));
  auto two = GlobularSet::empty(0);
  two.counts[0] = 2;
  auto one = GlobularSet::empty(0);
  one.counts[0] = 1;
  CHECK_FALSE(is_weak_equivalence(two, one, GlobMap{{{0, 0}}}));
  CHECK_THROWS_AS(is_weak_equivalence(two, one, GlobMap{{{0, 3}}}), PreconditionError);
}

TEST_CASE("presentations") {
  Presentation p;
  p = attach_cell(p, 0);
  CHECK(p.to_globular_set(0) == disk(0));
  // Two points, then two arrows attached in either order.
  Presentation base = attach_cell(attach_cell(p, 0), 0);
  auto ab = attach_cell(attach_cell(base, 1, 0, 1), 1, 1, 0);
  auto ba = attach_cell(attach_cell(base, 1, 1, 0), 1, 0, 1);
  CHECK(isomorphic(ab.to_globular_set(1), ba.to_globular_set(1)));
  CHECK_THROWS_AS(attach_cell(ab, 2, 0, 1), PreconditionError);
  CHECK_THROWS_AS(attach_cell(base, 1, 0, 5), PreconditionError);
}
