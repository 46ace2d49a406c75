#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glob/globular_sum.hpp"

namespace glob {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// A morphism D_dim -> A of a freely generated theory, in normal form.
///
/// Either a structural map (a dim-cell of the realized context A), or a generator
/// applied to a tuple of terms, one per peak of the generator's arity. Valley
/// compatibility of the tuple is a typing condition.
struct Term {
  enum class Kind { Cell, Op };
  Kind kind = Kind::Cell;
  int dim = 0;
  CellId cell = 0;
  std::string op;
  std::vector<TermPtr> args;
};

TermPtr make_cell(int dim, CellId cell);
TermPtr make_op(std::string name, int dim, std::vector<TermPtr> args);

bool structurally_equal(const TermPtr& a, const TermPtr& b);
std::string to_string(const TermPtr& t);
std::size_t term_size(const TermPtr& t);
std::size_t term_depth(const TermPtr& t);
/// Order by (size, printed form).
bool term_less(const TermPtr& a, const TermPtr& b);

struct FillerGenerator {
  std::string name;
  int k = 0;
  GlobularSumTable arity;
  TermPtr h1, h2;
  int output_dim() const { return k + 1; }
};

/// Two parallel top-dimensional morphisms declared equal.
struct Equation {
  std::string name;
  int k = 0;
  GlobularSumTable arity;
  TermPtr lhs, rhs;
};

struct Stage {
  std::vector<FillerGenerator> generators;
  std::vector<Equation> equations;
};

struct TheoryPresentation {
  std::optional<int> trunc_dim;
  std::vector<Stage> stages;

  std::size_t generator_count() const;
  std::size_t equation_count() const;
  std::vector<const FillerGenerator*> generators() const;
  std::vector<const Equation*> equations() const;
  const FillerGenerator* find(const std::string& name) const;
  int max_output_dim() const;  ///< -1 without generators
};

/// The presentation of Theta_n (or Theta_0 when unbounded): no generators.
TheoryPresentation globe_theory(std::optional<int> trunc_dim);

/// The cached realization of a table (thread-safe, stable references).
const RealizedSum& realized(const GlobularSumTable& t);

/// Read-only name index over a presentation.
class TheoryIndex {
 public:
  explicit TheoryIndex(const TheoryPresentation& t);
  const TheoryPresentation& theory() const { return *theory_; }
  const FillerGenerator& generator(const std::string& name) const;
  bool has(const std::string& name) const { return by_name_.count(name) > 0; }

 private:
  const TheoryPresentation* theory_;
  std::map<std::string, const FillerGenerator*> by_name_;
};

/// Throws TypeError naming the failing sub-term.
void type_check(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& t);

/// src / tgt of a term of dimension >= 1, in normal form.
TermPtr boundary(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& t, Side side);
TermPtr iterated_boundary(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& t, int i,
                          Side side);
/// Precomposition with a tuple B -> A: `t` lives in context `b`, `args` in context `a`.
TermPtr substitute(const TheoryIndex& idx, const GlobularSumTable& b, const TermPtr& t,
                   const std::vector<TermPtr>& args, const GlobularSumTable& a);
/// The tuple of a valley-compatible family; throws TypeError on mismatch.
void check_tuple(const TheoryIndex& idx, const GlobularSumTable& b, const std::vector<TermPtr>& args,
                 const GlobularSumTable& a);

/// The identity tuple of a sum: one top-cell term per peak.
std::vector<TermPtr> identity_tuple(const GlobularSumTable& t);
/// The generator applied to the identity tuple of its own arity.
TermPtr generic_term(const FillerGenerator& g);

/// Parallel terms, or dimension 0.
bool parallel_terms(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& f, const TermPtr& g);

struct Pair {
  std::string name;  ///< optional; generated when empty
  int k = 0;
  GlobularSumTable arity;
  TermPtr h1, h2;
};

bool check_admissible(const TheoryPresentation& t, const Pair& pair);
TheoryPresentation extend_theory(const TheoryPresentation& t, const std::vector<Pair>& pairs);

struct CanonicalBounds {
  std::size_t max_sum_size = 5;
  std::size_t max_term_depth = 0;
  int max_dim = 2;  ///< largest pair dimension considered
};

/// All k-dimensional terms in context ctx of depth at most `depth`, sorted by term_less.
std::vector<TermPtr> enumerate_terms(const TheoryIndex& idx, const GlobularSumTable& ctx, int k,
                                     std::size_t depth);

/// All admissible pairs within bounds not already filled by a generator or equation, in
/// canonical order: (pair dimension, arity cell count, arity table, term size, term).
std::vector<Pair> enumerate_unfilled_pairs(const TheoryPresentation& t, const CanonicalBounds& bounds);
TheoryPresentation canonical_stage(const TheoryPresentation& t, const CanonicalBounds& bounds);

TheoryPresentation truncate_theory(const TheoryPresentation& t, int n);

enum class Tri { True, False, Unknown };
const char* to_string(Tri v);

struct EqualityOptions {
  std::size_t budget = 1000;
};

Tri term_equal(const TheoryPresentation& t, const GlobularSumTable& ctx, const TermPtr& f, const TermPtr& g,
               const EqualityOptions& options = {});

/// Surface syntax: (cell d i), (src t), (tgt t), (NAME t1 ... tm). Normalizes src/tgt.
TermPtr parse_term(const TheoryIndex& idx, const GlobularSumTable& ctx, const std::string& text);

}  // namespace glob
