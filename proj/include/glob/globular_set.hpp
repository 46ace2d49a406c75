#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace glob {

using CellId = std::uint32_t;

enum class Side { Source, Target };

struct CellRef {
  int dim = 0;
  CellId index = 0;
  auto operator<=>(const CellRef&) const = default;
};

/// A finite globular set truncated at `dim_bound()`, optionally reflexive.
///
/// Cells are dense indices per dimension. `src[k][x]` and `tgt[k][x]` are the
/// (k-1)-dimensional boundary cells of the k-cell x (k >= 1; `src[0]` is empty).
/// When present, `refl[k][x]` is the chosen (k+1)-cell with source and target x,
/// defined for every k < dim_bound.
struct GlobularSet {
  std::vector<std::size_t> counts{0};
  std::vector<std::vector<CellId>> src{{}};
  std::vector<std::vector<CellId>> tgt{{}};
  std::optional<std::vector<std::vector<CellId>>> refl;

  /// The empty globular set with the given dimension bound.
  static GlobularSet empty(int dim_bound);

  int dim_bound() const { return static_cast<int>(counts.size()) - 1; }
  /// Number of k-cells; zero above the dimension bound.
  std::size_t count(int k) const {
    return k >= 0 && k <= dim_bound() ? counts[static_cast<std::size_t>(k)] : 0;
  }
  std::size_t total_cells() const;
  bool is_reflexive() const { return refl.has_value(); }

  CellId add_point();
  CellId add_cell(int k, CellId source, CellId target);

  CellId source(CellRef x) const { return src[static_cast<std::size_t>(x.dim)][x.index]; }
  CellId target(CellRef x) const { return tgt[static_cast<std::size_t>(x.dim)][x.index]; }
  CellId boundary(CellRef x, Side side) const {
    return side == Side::Source ? source(x) : target(x);
  }

  bool operator==(const GlobularSet&) const = default;
};

/// A morphism of globular sets given by its per-dimension component maps.
/// The domain and codomain are carried by the caller.
struct GlobMap {
  std::vector<std::vector<CellId>> components;

  CellId operator()(CellRef x) const { return components[static_cast<std::size_t>(x.dim)][x.index]; }
  bool operator==(const GlobMap&) const = default;
  auto operator<=>(const GlobMap&) const = default;
};

struct Violation {
  std::string relation;
  CellRef cell;
  std::string detail;
};

using ValidationReport = std::vector<Violation>;

/// Checks index ranges, totality, globularity and (if present) reflexivity laws.
ValidationReport validate_globular(const GlobularSet& x);

/// The representable globe: two cells in each dimension below k, one k-cell.
/// In dimension d < k, index 0 is the source side and index 1 the target side.
GlobularSet disk(int k);
/// The free globular set on a parallel pair of (k-1)-cells; sphere(0) is empty.
GlobularSet sphere(int k);
/// The inclusion sphere(k) -> disk(k).
GlobMap sphere_inclusion(int k);
/// One cell in every dimension up to `dim_bound`.
GlobularSet terminal(int dim_bound, bool reflexive = false);

/// Adds a chosen degenerate cell r(x) for every cell x below `dim_bound`.
GlobularSet free_reflexive(const GlobularSet& x, int dim_bound);
/// Drops the reflexivity table.
GlobularSet underlying(const GlobularSet& x);
/// Same cells up to min(d, dim_bound), empty dimensions above.
GlobularSet with_dim_bound(const GlobularSet& x, int d);

/// The i-dimensional iterated source or target of x (i < x.dim).
CellId iterated_boundary(const GlobularSet& x, CellRef cell, int i, Side side);
bool parallel(const GlobularSet& x, CellRef a, CellRef b);

GlobMap identity_map(const GlobularSet& x);
/// g after f.
GlobMap compose(const GlobMap& g, const GlobMap& f);
bool is_morphism(const GlobularSet& a, const GlobularSet& x, const GlobMap& f,
                 bool respect_reflexivity = true);
bool is_injective(const GlobularSet& a, const GlobMap& f);
bool is_bijective(const GlobularSet& a, const GlobularSet& x, const GlobMap& f);

/// Partially prescribed images, indexed like `GlobMap::components`.
using PartialMap = std::vector<std::vector<std::optional<CellId>>>;

struct HomOptions {
  /// When both sides are reflexive, only reflexivity-preserving maps are produced.
  bool respect_reflexivity = true;
  /// Prescribed images (lifting problems); empty means unconstrained.
  const PartialMap* fixed = nullptr;
  /// Maximum number of maps to visit; 0 means unbounded.
  std::size_t limit = 0;
  /// Only injective maps.
  bool injective = false;
  /// Extra per-cell filter on candidate images.
  std::function<bool(CellRef, CellId)> admissible;
};

/// Visits every morphism a -> x in lexicographic order of the flattened
/// components. The visitor may return false to stop early.
void for_each_hom(const GlobularSet& a, const GlobularSet& x,
                  const std::function<bool(const GlobMap&)>& visit,
                  const HomOptions& options = {});
std::vector<GlobMap> hom_set(const GlobularSet& a, const GlobularSet& x,
                             const HomOptions& options = {});
std::size_t count_homs(const GlobularSet& a, const GlobularSet& x, const HomOptions& options = {});

struct Pushout {
  GlobularSet object;
  GlobMap from_a;  ///< leg out of the codomain of the monomorphism
  GlobMap from_b;  ///< leg out of the codomain of g; always injective
};

/// Pushout of b <-g- c -f-> a with f injective. Cells of b come first, then the
/// cells of a outside the image of f, in index order.
Pushout pushout(const GlobularSet& c, const GlobularSet& a, const GlobularSet& b,
                const GlobMap& f, const GlobMap& g);

/// An isomorphism a -> b if one exists.
std::optional<GlobMap> find_isomorphism(const GlobularSet& a, const GlobularSet& b);
bool isomorphic(const GlobularSet& a, const GlobularSet& b);

std::uint64_t structural_hash(const GlobularSet& x);

/// Number of diagonal fillers d : b -> x with d∘i = top and p∘d = bottom.
std::size_t count_lifts(const GlobularSet& a, const GlobularSet& b, const GlobMap& i,
                        const GlobularSet& x, const GlobularSet& y, const GlobMap& p,
                        const GlobMap& top, const GlobMap& bottom, std::size_t limit = 0);

/// Parallel pairs of (k-1)-cells (a, b), lexicographic; for k = 0 a single empty pair is
/// not meaningful, so k must be >= 1.
std::vector<std::pair<CellId, CellId>> parallel_pairs(const GlobularSet& x, int dim);

std::vector<std::size_t> cell_counts(const GlobularSet& x);

}  // namespace glob
