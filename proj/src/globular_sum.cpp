#include "glob/globular_sum.hpp"

#include <algorithm>
#include <functional>

#include "glob/error.hpp"

namespace glob {

int GlobularSumTable::height() const {
  return peaks.empty() ? -1 : *std::max_element(peaks.begin(), peaks.end());
}

std::size_t GlobularSumTable::cell_count() const {
  long n = 0;
  for (int p : peaks) n += 2L * p + 1;
  for (int v : valleys) n -= 2L * v + 1;
  return static_cast<std::size_t>(n);
}

std::vector<int> GlobularSumTable::interleaved() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < peaks.size(); ++j) {
    out.push_back(peaks[j]);
    if (j < valleys.size()) out.push_back(valleys[j]);
  }
  return out;
}

std::string GlobularSumTable::check() const {
  if (peaks.empty()) return "a globular sum needs at least one peak";
  if (valleys.size() + 1 != peaks.size())
    return "expected " + std::to_string(peaks.size() - 1) + " valleys, got " + std::to_string(valleys.size());
  for (int p : peaks)
    if (p < 0) return "negative peak dimension";
  for (std::size_t j = 0; j < valleys.size(); ++j) {
    auto n = std::to_string(j + 1);
    if (valleys[j] < 0) return "negative valley dimension";
    if (!(valleys[j] < peaks[j]))
      return "i'_" + n + " < i_" + n + " fails (" + std::to_string(valleys[j]) + " >= " + std::to_string(peaks[j]) + ")";
    if (!(valleys[j] < peaks[j + 1]))
      return "i'_" + n + " < i_" + std::to_string(j + 2) + " fails (" + std::to_string(valleys[j]) +
             " >= " + std::to_string(peaks[j + 1]) + ")";
  }
  return {};
}

void GlobularSumTable::validate() const {
  auto msg = check();
  if (!msg.empty()) throw TableError(msg);
}

std::string GlobularSumTable::to_string() const {
  std::string s = "sum(";
  auto seq = interleaved();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(seq[i]);
  }
  return s + ")";
}

GlobularSumTable globe_table(int k) { return {{k}, {}}; }

GlobMap globe_face(int j, int k, Side side) {
  if (!(j < k)) throw DimensionError("globe face needs j < k");
  GlobMap f;
  f.components.resize(static_cast<std::size_t>(j) + 1);
  for (int d = 0; d < j; ++d) f.components[static_cast<std::size_t>(d)] = {0, 1};
  f.components[static_cast<std::size_t>(j)] = {side == Side::Source ? 0u : 1u};
  return f;
}

CellRef RealizedSum::peak_cell(std::size_t j) const {
  int k = table.peaks[j];
  return {k, inclusions[j]({k, 0})};
}

RealizedSum realize_globular_sum(const GlobularSumTable& t) {
  t.validate();
  RealizedSum r;
  r.table = t;
  r.shape = disk(t.peaks[0]);
  r.inclusions.push_back(identity_map(r.shape));
  for (std::size_t j = 0; j < t.valleys.size(); ++j) {
    int v = t.valleys[j];
    int next = t.peaks[j + 1];
    auto glue_left = compose(r.inclusions[j], globe_face(v, t.peaks[j], Side::Target));
    auto glue_right = globe_face(v, next, Side::Source);
    auto p = pushout(disk(v), disk(next), r.shape, glue_right, glue_left);
    // from_b is the identity embedding, so earlier inclusions need only a larger codomain.
    r.shape = std::move(p.object);
    r.inclusions.push_back(std::move(p.from_a));
  }
  auto h = r.shape.dim_bound();
  r.origin.resize(static_cast<std::size_t>(h) + 1);
  for (int d = 0; d <= h; ++d) {
    auto dd = static_cast<std::size_t>(d);
    r.origin[dd].assign(r.shape.count(d), CellOrigin{static_cast<std::size_t>(-1), 0});
    for (std::size_t j = 0; j < t.peaks.size(); ++j) {
      if (d > t.peaks[j]) continue;
      const auto& comp = r.inclusions[j].components[dd];
      for (CellId c = 0; c < comp.size(); ++c)
        if (r.origin[dd][comp[c]].peak == static_cast<std::size_t>(-1)) r.origin[dd][comp[c]] = {j, c};
    }
  }
  return r;
}

std::vector<GlobularSumTable> enumerate_tables(std::size_t max_cells, int max_height) {
  std::vector<GlobularSumTable> out;
  std::function<void(GlobularSumTable&)> grow = [&](GlobularSumTable& t) {
    if (t.cell_count() <= max_cells) out.push_back(t);
    for (int v = 0; v < t.peaks.back(); ++v)
      for (int p = v + 1; p <= max_height; ++p) {
        // Each extra peak adds 2(p - v) cells, so the count only grows.
        if (t.cell_count() + static_cast<std::size_t>(2 * (p - v)) > max_cells) continue;
        t.valleys.push_back(v);
        t.peaks.push_back(p);
        grow(t);
        t.peaks.pop_back();
        t.valleys.pop_back();
      }
  };
  for (int k = 0; k <= max_height; ++k) {
    if (static_cast<std::size_t>(2 * k + 1) > max_cells) break;
    GlobularSumTable t{{k}, {}};
    grow(t);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.cell_count() != b.cell_count()) return a.cell_count() < b.cell_count();
    return a < b;
  });
  return out;
}

}  // namespace glob
