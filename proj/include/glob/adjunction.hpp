#pragma once

#include <optional>
#include <vector>

#include "glob/globular_set.hpp"

namespace glob {

/// Equivalence classes of n-cells under "there is an (n+1)-cell between them",
/// closed into an equivalence relation; representatives are minimal indices.
struct CellQuotient {
  std::vector<CellId> class_of;        ///< n-cell -> class index
  std::vector<CellId> representative;  ///< class index -> minimal n-cell
};

CellQuotient connected_classes(const GlobularSet& x, int n);

/// The n-truncation t_n X: an n-dimensional globular set with X_n replaced by its classes.
struct Truncated {
  GlobularSet object;  ///< dim_bound n
  GlobMap quotient;    ///< X restricted to dims <= n -> object
};
Truncated truncate(const GlobularSet& x, int n);

/// t_n^*: an n-dimensional Y extended to dimension d, constant above n with identity boundaries.
GlobularSet constant_extension(const GlobularSet& y, int d);

/// Unit X -> t_n^* t_n X (same dimension bound as X).
GlobMap truncation_unit(const GlobularSet& x, int n);
/// Counit t_n t_n^* Y -> Y for an n-dimensional Y.
GlobMap truncation_counit(const GlobularSet& y, int n, int d);
/// t_n applied to f : X -> X'.
GlobMap truncate_map(const GlobularSet& x, const GlobularSet& x2, const GlobMap& f, int n);
/// t_n^* applied to g : Y -> Y' between n-dimensional sets.
GlobMap constant_extension_map(const GlobularSet& y, const GlobMap& g, int n, int d);

/// iota_n^*: the cells of dimension <= n.
GlobularSet skeleton(const GlobularSet& x, int n);
GlobMap skeleton_map(const GlobMap& f, int n);

/// iota_n_*: above n the k-cells are the parallel pairs of (k-1)-cells, in lexicographic order.
GlobularSet coskeleton(const GlobularSet& y, int d);
/// Index of the pair (a, b) among the k-cells of coskeleton(y, d), k > y.dim_bound().
CellId coskeleton_cell(const GlobularSet& cosk, int k, CellId a, CellId b);
GlobMap coskeleton_map(const GlobularSet& y, const GlobularSet& y2, const GlobMap& g, int d);

/// Unit X -> iota_* iota^* X.
GlobMap coskeleton_unit(const GlobularSet& x, int n);
/// Counit iota^* iota_* Y -> Y (the identity on cells).
GlobMap coskeleton_counit(const GlobularSet& y);

/// The unique cell with the given boundary, if exactly one exists.
std::optional<CellId> unique_filler(const GlobularSet& x, int k, CellId src, CellId tgt);

enum class Method { CellCounting, Lifting };

bool is_truncated(const GlobularSet& x, int n, Method m);
bool is_coskeletal(const GlobularSet& x, int n, Method m);
/// Both methods; throws ConsistencyError on disagreement.
bool is_truncated(const GlobularSet& x, int n);
bool is_coskeletal(const GlobularSet& x, int n);

}  // namespace glob
