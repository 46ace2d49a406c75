#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glob/globular_set.hpp"
#include "glob/rng.hpp"

namespace glob {

/// A generating operator of a directed shape: sends cells of level `from` to level `to`.
struct ShapeOp {
  std::string name;
  int from = 0;
  int to = 0;
};

/// Finite sets, (reflexive) globular sets and semi-simplicial sets, each truncated at `top`.
struct PresheafShape {
  enum class Kind { Sets, Globular, ReflexiveGlobular, SemiSimplicial };
  Kind kind = Kind::Sets;
  int top = 0;
  std::vector<ShapeOp> ops;

  static PresheafShape sets();
  /// Operators s_k, t_k (k = 1..d) then, when reflexive, r_k (k = 0..d-1).
  static PresheafShape globular(int d, bool reflexive);
  /// Face operators d_i on k-simplices (k = 1..d, i = 0..k), ordered by (k, i).
  static PresheafShape semisimplicial(int d);

  std::string name() const;
  /// Index of the operator with the given name, or -1.
  int op_index(const std::string& name) const;
  bool operator==(const PresheafShape& o) const { return kind == o.kind && top == o.top; }
};

struct Presheaf {
  std::vector<std::size_t> counts;
  std::vector<std::vector<CellId>> act;  ///< act[op][cell of level from] = cell of level to

  std::size_t total_cells() const;
  bool operator==(const Presheaf&) const = default;
};

struct PresheafMap {
  std::vector<std::vector<CellId>> comp;  ///< per level
  bool operator==(const PresheafMap&) const = default;
  auto operator<=>(const PresheafMap&) const = default;
};

Presheaf empty_presheaf(const PresheafShape& s);
/// Relation violations (globularity, reflexivity, simplicial identities, ranges).
std::vector<std::string> validate_presheaf(const PresheafShape& s, const Presheaf& p);

PresheafMap identity_map(const Presheaf& p);
/// g after f.
PresheafMap compose(const PresheafMap& g, const PresheafMap& f);
bool is_morphism(const PresheafShape& s, const Presheaf& a, const Presheaf& x, const PresheafMap& f);
bool is_mono(const PresheafMap& f);
std::vector<CellId> flatten(const PresheafMap& f);

struct PresheafHomOptions {
  bool injective = false;
  /// Prescribed images per level; empty means unconstrained.
  const std::vector<std::vector<std::optional<CellId>>>* fixed = nullptr;
  std::function<bool(int level, CellId cell, CellId image)> admissible;
  std::size_t limit = 0;
};

/// Every morphism a -> x in lexicographic order of the flattened components.
void for_each_hom(const PresheafShape& s, const Presheaf& a, const Presheaf& x,
                  const std::function<bool(const PresheafMap&)>& visit, const PresheafHomOptions& o = {});
std::vector<PresheafMap> hom_set(const PresheafShape& s, const Presheaf& a, const Presheaf& x,
                                 const PresheafHomOptions& o = {});
std::size_t count_homs(const PresheafShape& s, const Presheaf& a, const Presheaf& x,
                       const PresheafHomOptions& o = {});

/// Pushout of b <-f- a -g-> c with f mono: cells of c first, then the cells of b outside f(a).
struct PresheafPushout {
  Presheaf object;
  PresheafMap from_b;
  PresheafMap from_c;
};
PresheafPushout pushout(const PresheafShape& s, const Presheaf& a, const Presheaf& b, const Presheaf& c,
                        const PresheafMap& f, const PresheafMap& g);

std::optional<PresheafMap> find_isomorphism(const PresheafShape& s, const Presheaf& a, const Presheaf& b);
/// Isomorphism invariant used to bucket candidates before an isomorphism search.
std::uint64_t invariant_hash(const Presheaf& p);

Presheaf from_globular(const GlobularSet& x);
GlobularSet to_globular(const PresheafShape& s, const Presheaf& p);
PresheafMap from_glob_map(const GlobMap& f);
GlobMap to_glob_map(const PresheafMap& f);

/// The representable semi-simplicial set: k-simplices are the (k+1)-subsets of {0..n}
/// in lexicographic order; d_i drops the i-th vertex.
Presheaf simplex(int n, int top);
/// Vertex set of a simplex of simplex(n, top).
std::vector<int> simplex_vertices(int n, int k, CellId cell);

struct SubPresheaf {
  Presheaf object;
  PresheafMap inclusion;
};
/// The horn missing the top simplex and its k-th face; throws DimensionError if k > n.
SubPresheaf horn(int n, int k, int top);
/// Everything but the top simplex.
SubPresheaf boundary_ss(int n, int top);

/// All objects with at most `max_cells` cells, one per isomorphism class, ordered by
/// (total cells, counts, generation order). Throws ResourceError past `max_objects`.
std::vector<Presheaf> enumerate_objects(const PresheafShape& s, std::size_t max_cells,
                                        std::size_t max_objects = 5000);

/// A random semi-simplicial set: 1..max points, then up to max simplices per level with
/// boundaries drawn uniformly among compatible face tuples.
Presheaf random_semisimplicial(Rng& rng, int top, std::size_t max_per_level);

/// The terminal object truncated at the shape's top level (every level one cell).
Presheaf terminal_presheaf(const PresheafShape& s);

}  // namespace glob
