#pragma once

#include <compare>
#include <string>
#include <vector>

#include "glob/globular_set.hpp"

namespace glob {

/// A zigzag table (i1, i'1, i2, ..., im) presenting a globular sum.
struct GlobularSumTable {
  std::vector<int> peaks;
  std::vector<int> valleys;

  int height() const;
  /// Total number of cells of the realization.
  std::size_t cell_count() const;
  /// Empty when valid, otherwise a description of the failing inequality.
  std::string check() const;
  void validate() const;  ///< throws TableError
  std::string to_string() const;  ///< "sum(1,0,1)"

  /// (i1, i'1, i2, ..., im)
  std::vector<int> interleaved() const;

  bool operator==(const GlobularSumTable&) const = default;
  /// Lexicographic on the interleaved sequence.
  std::strong_ordering operator<=>(const GlobularSumTable& o) const { return interleaved() <=> o.interleaved(); }
};

/// A single-peak table, i.e. the globe D_k.
GlobularSumTable globe_table(int k);

/// The face maps D_j -> D_k (j < k) onto the source or target side.
GlobMap globe_face(int j, int k, Side side);

/// Where a cell of a realized sum comes from.
struct CellOrigin {
  std::size_t peak = 0;  ///< smallest peak whose inclusion hits the cell
  CellId disk_cell = 0;  ///< the cell of disk(peaks[peak]) it is the image of
};

struct RealizedSum {
  GlobularSumTable table;
  GlobularSet shape;
  /// inclusions[j] : disk(peaks[j]) -> shape
  std::vector<GlobMap> inclusions;
  /// origin[d][c] for every cell of the shape
  std::vector<std::vector<CellOrigin>> origin;

  /// The image of the top cell of peak j.
  CellRef peak_cell(std::size_t j) const;
};

RealizedSum realize_globular_sum(const GlobularSumTable& t);

/// All valid tables whose realization has at most `max_cells` cells and height at most
/// `max_height`, ordered by (cell count, table).
std::vector<GlobularSumTable> enumerate_tables(std::size_t max_cells, int max_height);

}  // namespace glob
