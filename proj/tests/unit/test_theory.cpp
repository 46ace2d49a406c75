#include <set>

#include "doctest.h"
#include "glob/error.hpp"
#include "glob/theory.hpp"

using namespace glob;

namespace {

const GlobularSumTable kComposable{{1, 1}, {0}};

Pair composition_pair() { return {"comp", 0, kComposable, make_cell(0, 0), make_cell(0, 2)}; }

// Independent count of the depth-0 pairs at dimension k: pairs of parallel k-cells over
// every sum of bounded size and height, read directly off the realized shapes.
std::size_t structural_pair_oracle(std::size_t max_cells, int k, int max_height, bool distinct) {
  std::size_t n = 0;
  for (const auto& t : enumerate_tables(max_cells, max_height)) {
    auto shape = realize_globular_sum(t).shape;
    for (CellId a = 0; a < shape.count(k); ++a)
      for (CellId b = 0; b < shape.count(k); ++b) {
        if (distinct && a == b) continue;
        if (k == 0 || (shape.source({k, a}) == shape.source({k, b}) && shape.target({k, a}) == shape.target({k, b})))
          ++n;
      }
  }
  return n;
}

}  // namespace

TEST_CASE("admissibility") {
  auto theta1 = globe_theory(1);
  CHECK(check_admissible(theta1, composition_pair()));
  CHECK_FALSE(check_admissible(theta1, {"", 0, globe_table(2), make_cell(0, 0), make_cell(0, 1)}));
  CHECK(check_admissible(theta1, {"", 1, globe_table(1), make_cell(1, 0), make_cell(1, 0)}));
  CHECK_FALSE(check_admissible(globe_theory(2), {"", 1, kComposable, make_cell(1, 0), make_cell(1, 1)}));
  CHECK_THROWS_AS(check_admissible(theta1, {"", 1, globe_table(1), make_cell(1, 9), make_cell(1, 0)}), TypeError);
}

TEST_CASE("extension") {
  auto theta1 = globe_theory(1);
  auto t = extend_theory(theta1, {composition_pair()});
  REQUIRE(t.generator_count() == 1);
  CHECK(t.generators()[0]->output_dim() == 1);
  CHECK(extend_theory(t, {}).generator_count() == 1);
  CHECK(extend_theory(t, {}).stages.size() == t.stages.size());

  auto theta3 = globe_theory(3);
  auto e = extend_theory(theta3, {{"", 3, globe_table(3), make_cell(3, 0), make_cell(3, 0)}});
  CHECK(e.generator_count() == 0);
  CHECK(e.equation_count() == 1);

  CHECK_THROWS_AS(extend_theory(theta1, {{"", 0, globe_table(2), make_cell(0, 0), make_cell(0, 1)}}),
                  AdmissibilityError);
  CHECK_THROWS_AS(extend_theory(theta1, {{"", 2, globe_table(2), make_cell(2, 0), make_cell(2, 0)}}),
                  AdmissibilityError);
}

TEST_CASE("boundary laws of generators") {
  auto t = extend_theory(globe_theory(std::nullopt), {composition_pair()});
  t = extend_theory(t, {{"unit", 0, globe_table(0), make_cell(0, 0), make_cell(0, 0)}});
  TheoryIndex idx(t);
  // Associativity pair over three composable arrows, using the composition filler.
  GlobularSumTable three{{1, 1, 1}, {0, 0}};
  auto ab = make_op("comp", 1, {make_cell(1, 0), make_cell(1, 1)});
  auto bc = make_op("comp", 1, {make_cell(1, 1), make_cell(1, 2)});
  auto lhs = make_op("comp", 1, {ab, make_cell(1, 2)});
  auto rhs = make_op("comp", 1, {make_cell(1, 0), bc});
  type_check(idx, three, lhs);
  type_check(idx, three, rhs);
  CHECK(parallel_terms(idx, three, lhs, rhs));
  auto t2 = extend_theory(t, {{"assoc", 1, three, lhs, rhs}});
  TheoryIndex idx2(t2);
  for (const auto* g : t2.generators()) {
    auto x = generic_term(*g);
    CHECK(term_equal(t2, g->arity, boundary(idx2, g->arity, x, Side::Source), g->h1) == Tri::True);
    CHECK(term_equal(t2, g->arity, boundary(idx2, g->arity, x, Side::Target), g->h2) == Tri::True);
  }
  // Ill-typed tuples are rejected with the failing sub-term.
  auto bad = make_op("comp", 1, {make_cell(1, 1), make_cell(1, 0)});
  CHECK_THROWS_AS(type_check(idx, three, bad), TypeError);
}

TEST_CASE("term equality") {
  auto t = extend_theory(globe_theory(std::nullopt), {composition_pair()});
  t = extend_theory(t, {{"comp2", 0, kComposable, make_cell(0, 0), make_cell(0, 2)}});
  auto f = generic_term(*t.find("comp"));
  auto g = generic_term(*t.find("comp2"));
  CHECK(term_equal(t, kComposable, f, f) == Tri::True);
  CHECK(term_equal(t, kComposable, f, g) == Tri::False);
  // The source and target points of D1 mapped into D0 collapse to the same cell.
  TheoryIndex idx(t);
  auto d0 = globe_table(0);
  CHECK(term_equal(t, d0, make_cell(0, 0), make_cell(0, 0)) == Tri::True);

  // In a 1-truncated theory an equation identifies the two composites.
  auto t1 = extend_theory(globe_theory(1), {composition_pair()});
  t1 = extend_theory(t1, {{"comp2", 0, kComposable, make_cell(0, 0), make_cell(0, 2)}});
  auto f1 = generic_term(*t1.find("comp"));
  auto g1 = generic_term(*t1.find("comp2"));
  CHECK(term_equal(t1, kComposable, f1, g1) == Tri::False);
  auto eq = extend_theory(t1, {{"", 1, kComposable, f1, g1}});
  CHECK(term_equal(eq, kComposable, f1, g1) == Tri::True);
  CHECK(term_equal(eq, kComposable, g1, f1) == Tri::True);
  // Equations apply under a context: instantiate at three composable arrows.
  GlobularSumTable three{{1, 1, 1}, {0, 0}};
  auto inner_f = make_op("comp", 1, {make_cell(1, 0), make_cell(1, 1)});
  auto inner_g = make_op("comp2", 1, {make_cell(1, 0), make_cell(1, 1)});
  CHECK(term_equal(eq, three, make_op("comp", 1, {inner_f, make_cell(1, 2)}),
                   make_op("comp2", 1, {inner_g, make_cell(1, 2)})) == Tri::True);
}

TEST_CASE("canonical stage") {
  auto theta1 = globe_theory(1);
  CanonicalBounds tiny{0, 0, 1};
  CHECK(canonical_stage(theta1, tiny).generator_count() == 0);

  CanonicalBounds b{5, 0, 1};
  auto t = canonical_stage(theta1, b);
  CHECK(t.generator_count() == structural_pair_oracle(5, 0, 1, false));
  CHECK(t.generator_count() == 14);
  CHECK(t.equation_count() == structural_pair_oracle(5, 1, 1, true));
  bool has_comp = false, has_unit = false;
  std::set<std::string> keys;
  for (const auto* g : t.generators()) {
    CHECK(check_admissible(t, {"", g->k, g->arity, g->h1, g->h2}));
    keys.insert(g->arity.to_string() + to_string(g->h1) + to_string(g->h2));
    if (g->arity == kComposable && to_string(g->h1) == "(cell 0 0)" && to_string(g->h2) == "(cell 0 2)") has_comp = true;
    if (g->arity == globe_table(0)) has_unit = true;
  }
  CHECK(keys.size() == t.generator_count());
  CHECK(has_comp);
  CHECK(has_unit);
  auto again = canonical_stage(t, b);
  CHECK(again.generator_count() == t.generator_count());
  CHECK(again.equation_count() == t.equation_count());
  CHECK(again.stages.size() == t.stages.size());
}

TEST_CASE("canonical stage with composite terms") {
  CanonicalBounds b{5, 1, 1};
  auto t = canonical_stage(globe_theory(1), b);
  CHECK(t.generator_count() == 14);
  // Composite 1-dimensional terms now exist, so distinct parallel ones are equated.
  CHECK(t.equation_count() > 0);
  for (const auto* e : t.equations()) CHECK(e->k == 1);
  auto again = canonical_stage(t, b);
  CHECK(again.equation_count() == t.equation_count());
}

TEST_CASE("truncation of theories") {
  auto base = canonical_stage(globe_theory(std::nullopt), {5, 0, 1});
  int top = base.max_output_dim();
  CHECK(top == 2);
  auto same = truncate_theory(base, 2);
  CHECK(same.generator_count() == base.generator_count());
  CHECK(same.equation_count() == 0);

  auto t1 = truncate_theory(base, 1);
  std::size_t dim1 = 0, dim2_low = 0;
  for (const auto* g : base.generators()) {
    if (g->output_dim() == 1) ++dim1;
    if (g->output_dim() == 2 && g->arity.height() <= 1) ++dim2_low;
  }
  CHECK(t1.generator_count() == dim1);
  CHECK(t1.equation_count() == dim2_low);
  for (const auto* g : t1.generators()) CHECK(g->output_dim() <= 1);
  for (const auto* e : t1.equations()) CHECK(e->k == 1);

  auto mixed = base;
  mixed.stages[0].generators.push_back(*base.stages[1].generators.begin());
  CHECK_THROWS_AS(truncate_theory(mixed, 1), NormalizationError);
}

TEST_CASE("surface syntax of terms") {
  auto t = extend_theory(globe_theory(std::nullopt), {composition_pair()});
  TheoryIndex idx(t);
  auto x = parse_term(idx, kComposable, "(comp (cell 1 0) (cell 1 1))");
  CHECK(to_string(x) == "(comp (cell 1 0) (cell 1 1))");
  CHECK(to_string(parse_term(idx, kComposable, "(src (comp (cell 1 0) (cell 1 1)))")) == "(cell 0 0)");
  CHECK(to_string(parse_term(idx, kComposable, "(tgt (cell 1 1))")) == "(cell 0 2)");
  CHECK_THROWS_AS(parse_term(idx, kComposable, "(comp (cell 1 1) (cell 1 0))"), ParseError);
  CHECK_THROWS_AS(parse_term(idx, kComposable, "(cell 1 0"), ParseError);
  CHECK_THROWS_AS(parse_term(idx, kComposable, "(nope (cell 1 0))"), ParseError);
}
