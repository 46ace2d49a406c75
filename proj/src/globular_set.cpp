#include "glob/globular_set.hpp"

#include <algorithm>
#include <unordered_map>

#include "glob/error.hpp"

namespace glob {

namespace {

std::uint64_t pair_key(CellId a, CellId b) { return (std::uint64_t{a} << 32) | b; }

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace

GlobularSet GlobularSet::empty(int dim_bound) {
  if (dim_bound < 0) throw DimensionError("negative dimension bound");
  GlobularSet x;
  auto n = static_cast<std::size_t>(dim_bound) + 1;
  x.counts.assign(n, 0);
  x.src.assign(n, {});
  x.tgt.assign(n, {});
  return x;
}

std::size_t GlobularSet::total_cells() const {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

CellId GlobularSet::add_point() {
  if (refl) throw PreconditionError("add_point on a reflexive globular set");
  return static_cast<CellId>(counts[0]++);
}

CellId GlobularSet::add_cell(int k, CellId source, CellId target) {
  if (k == 0) return add_point();
  if (refl) throw PreconditionError("add_cell on a reflexive globular set");
  if (k < 0) throw DimensionError("negative dimension");
  while (dim_bound() < k) {
    counts.push_back(0);
    src.emplace_back();
    tgt.emplace_back();
  }
  auto kk = static_cast<std::size_t>(k);
  src[kk].push_back(source);
  tgt[kk].push_back(target);
  return static_cast<CellId>(counts[kk]++);
}

ValidationReport validate_globular(const GlobularSet& x) {
  ValidationReport report;
  auto d = x.dim_bound();
  if (x.src.size() != x.counts.size() || x.tgt.size() != x.counts.size()) {
    report.push_back({"shape", {0, 0}, "source/target tables do not match the dimension bound"});
    return report;
  }
  for (int k = 1; k <= d; ++k) {
    auto kk = static_cast<std::size_t>(k);
    if (x.src[kk].size() != x.counts[kk] || x.tgt[kk].size() != x.counts[kk]) {
      report.push_back({"totality", {k, 0}, "boundary maps are not total in dimension " + std::to_string(k)});
      continue;
    }
    for (CellId c = 0; c < x.counts[kk]; ++c) {
      bool in_range = true;
      for (auto side : {Side::Source, Side::Target}) {
        auto b = x.boundary({k, c}, side);
        if (b >= x.counts[kk - 1]) {
          report.push_back({side == Side::Source ? "src-range" : "tgt-range", {k, c},
                            "boundary index " + std::to_string(b) + " out of range"});
          in_range = false;
        }
      }
      if (!in_range || k < 2) continue;
      auto s = x.source({k, c});
      auto t = x.target({k, c});
      bool lower_ok = s < x.src[kk - 1].size() && t < x.src[kk - 1].size();
      if (!lower_ok) continue;
      if (x.src[kk - 1][s] != x.src[kk - 1][t])
        report.push_back({"src∘src = src∘tgt", {k, c},
                          "src(src) = " + std::to_string(x.src[kk - 1][s]) +
                              ", src(tgt) = " + std::to_string(x.src[kk - 1][t])});
      if (x.tgt[kk - 1][s] != x.tgt[kk - 1][t])
        report.push_back({"tgt∘src = tgt∘tgt", {k, c},
                          "tgt(src) = " + std::to_string(x.tgt[kk - 1][s]) +
                              ", tgt(tgt) = " + std::to_string(x.tgt[kk - 1][t])});
    }
  }
  if (x.refl) {
    const auto& r = *x.refl;
    if (r.size() != static_cast<std::size_t>(d)) {
      report.push_back({"refl-shape", {0, 0}, "reflexivity table must cover every dimension below the bound"});
      return report;
    }
    for (int k = 0; k < d; ++k) {
      auto kk = static_cast<std::size_t>(k);
      if (r[kk].size() != x.counts[kk]) {
        report.push_back({"refl-totality", {k, 0}, "reflexivity not total in dimension " + std::to_string(k)});
        continue;
      }
      for (CellId c = 0; c < x.counts[kk]; ++c) {
        auto rc = r[kk][c];
        if (rc >= x.counts[kk + 1]) {
          report.push_back({"refl-range", {k, c}, "reflexivity index out of range"});
          continue;
        }
        if (x.src[kk + 1].size() <= rc || x.tgt[kk + 1].size() <= rc) continue;
        if (x.src[kk + 1][rc] != c || x.tgt[kk + 1][rc] != c)
          report.push_back({"src∘r = tgt∘r = id", {k, c}, "degenerate cell " + std::to_string(rc) +
                                                           " does not have this cell as boundary"});
      }
    }
  }
  return report;
}

GlobularSet disk(int k) {
  if (k < 0) throw DimensionError("disk of negative dimension");
  auto x = GlobularSet::empty(k);
  for (int d = 0; d <= k; ++d) {
    auto n = d < k ? 2u : 1u;
    auto dd = static_cast<std::size_t>(d);
    x.counts[dd] = n;
    if (d > 0) {
      x.src[dd].assign(n, 0);
      x.tgt[dd].assign(n, 1);
    }
  }
  return x;
}

GlobularSet sphere(int k) {
  if (k < 0) throw DimensionError("sphere of negative dimension");
  if (k == 0) return GlobularSet::empty(0);
  auto x = GlobularSet::empty(k - 1);
  for (int d = 0; d < k; ++d) {
    auto dd = static_cast<std::size_t>(d);
    x.counts[dd] = 2;
    if (d > 0) {
      x.src[dd].assign(2, 0);
      x.tgt[dd].assign(2, 1);
    }
  }
  return x;
}

GlobMap sphere_inclusion(int k) {
  GlobMap f;
  auto s = sphere(k);
  f.components.resize(static_cast<std::size_t>(s.dim_bound()) + 1);
  for (int d = 0; d <= s.dim_bound(); ++d)
    for (CellId c = 0; c < s.count(d); ++c) f.components[static_cast<std::size_t>(d)].push_back(c);
  return f;
}

GlobularSet terminal(int dim_bound, bool reflexive) {
  auto x = GlobularSet::empty(dim_bound);
  for (int d = 0; d <= dim_bound; ++d) {
    auto dd = static_cast<std::size_t>(d);
    x.counts[dd] = 1;
    if (d > 0) {
      x.src[dd] = {0};
      x.tgt[dd] = {0};
    }
  }
  if (reflexive) x.refl = std::vector<std::vector<CellId>>(static_cast<std::size_t>(dim_bound), {0});
  return x;
}

GlobularSet underlying(const GlobularSet& x) {
  auto y = x;
  y.refl.reset();
  return y;
}

GlobularSet free_reflexive(const GlobularSet& x, int dim_bound) {
  auto base = with_dim_bound(underlying(x), dim_bound);
  auto y = base;
  std::vector<std::vector<CellId>> r(static_cast<std::size_t>(dim_bound));
  for (int k = 1; k <= dim_bound; ++k) {
    auto kk = static_cast<std::size_t>(k);
    auto below = y.counts[kk - 1];
    for (CellId c = 0; c < below; ++c) {
      r[kk - 1].push_back(static_cast<CellId>(y.counts[kk]));
      y.src[kk].push_back(c);
      y.tgt[kk].push_back(c);
      ++y.counts[kk];
    }
  }
  y.refl = std::move(r);
  return y;
}

GlobularSet with_dim_bound(const GlobularSet& x, int d) {
  auto y = GlobularSet::empty(d);
  for (int k = 0; k <= std::min(d, x.dim_bound()); ++k) {
    auto kk = static_cast<std::size_t>(k);
    y.counts[kk] = x.counts[kk];
    y.src[kk] = x.src[kk];
    y.tgt[kk] = x.tgt[kk];
  }
  if (x.refl && d <= x.dim_bound()) {
    y.refl = *x.refl;
    y.refl->resize(static_cast<std::size_t>(d));
  }
  return y;
}

CellId iterated_boundary(const GlobularSet& x, CellRef cell, int i, Side side) {
  if (i >= cell.dim || i < 0)
    throw DimensionError("iterated boundary needs 0 <= i < " + std::to_string(cell.dim) + ", got " +
                         std::to_string(i));
  auto c = cell.index;
  for (int d = cell.dim; d > i; --d) c = x.boundary({d, c}, side);
  return c;
}

bool parallel(const GlobularSet& x, CellRef a, CellRef b) {
  if (a.dim != b.dim) return false;
  if (a.dim == 0) return true;
  return x.source(a) == x.source(b) && x.target(a) == x.target(b);
}

GlobMap identity_map(const GlobularSet& x) {
  GlobMap f;
  f.components.resize(x.counts.size());
  for (std::size_t k = 0; k < x.counts.size(); ++k)
    for (CellId c = 0; c < x.counts[k]; ++c) f.components[k].push_back(c);
  return f;
}

GlobMap compose(const GlobMap& g, const GlobMap& f) {
  GlobMap h;
  h.components.resize(f.components.size());
  for (std::size_t k = 0; k < f.components.size(); ++k)
    for (auto c : f.components[k]) h.components[k].push_back(g.components[k][c]);
  return h;
}

bool is_morphism(const GlobularSet& a, const GlobularSet& x, const GlobMap& f, bool respect_reflexivity) {
  if (f.components.size() != a.counts.size()) return false;
  for (int k = 0; k <= a.dim_bound(); ++k) {
    auto kk = static_cast<std::size_t>(k);
    if (f.components[kk].size() != a.counts[kk]) return false;
    for (CellId c = 0; c < a.counts[kk]; ++c) {
      auto img = f.components[kk][c];
      if (img >= x.count(k)) return false;
      if (k > 0) {
        if (x.source({k, img}) != f({k - 1, a.source({k, c})})) return false;
        if (x.target({k, img}) != f({k - 1, a.target({k, c})})) return false;
      }
    }
  }
  if (respect_reflexivity && a.refl && x.refl) {
    for (int k = 0; k < a.dim_bound(); ++k)
      for (CellId c = 0; c < a.count(k); ++c) {
        auto kk = static_cast<std::size_t>(k);
        if (k >= x.dim_bound()) return false;
        if (f({k + 1, (*a.refl)[kk][c]}) != (*x.refl)[kk][f({k, c})]) return false;
      }
  }
  return true;
}

bool is_injective(const GlobularSet& a, const GlobMap& f) {
  for (int k = 0; k <= a.dim_bound(); ++k) {
    auto comp = f.components[static_cast<std::size_t>(k)];
    std::sort(comp.begin(), comp.end());
    if (std::adjacent_find(comp.begin(), comp.end()) != comp.end()) return false;
  }
  return true;
}

bool is_bijective(const GlobularSet& a, const GlobularSet& x, const GlobMap& f) {
  auto top = std::max(a.dim_bound(), x.dim_bound());
  for (int k = 0; k <= top; ++k)
    if (a.count(k) != x.count(k)) return false;
  return is_injective(a, f);
}

namespace {

class HomSearch {
 public:
  HomSearch(const GlobularSet& a, const GlobularSet& x, const HomOptions& opt,
            const std::function<bool(const GlobMap&)>& visit)
      : a_(a), x_(x), opt_(opt), visit_(visit) {
    auto n = a.counts.size();
    map_.components.resize(n);
    for (std::size_t k = 0; k < n; ++k) map_.components[k].assign(a.counts[k], 0);
    for (int k = 0; k <= a.dim_bound(); ++k)
      for (CellId c = 0; c < a.count(k); ++c) order_.push_back({k, c});
    buckets_.resize(static_cast<std::size_t>(x.dim_bound()) + 1);
    for (int k = 1; k <= x.dim_bound(); ++k)
      for (CellId c = 0; c < x.count(k); ++c)
        buckets_[static_cast<std::size_t>(k)][pair_key(x.source({k, c}), x.target({k, c}))].push_back(c);
    reflexive_ = opt.respect_reflexivity && a.refl && x.refl;
    if (reflexive_) {
      degenerate_of_.resize(n);
      for (std::size_t k = 0; k < n; ++k) degenerate_of_[k].assign(a.counts[k], kNone);
      for (int k = 0; k < a.dim_bound(); ++k)
        for (CellId c = 0; c < a.count(k); ++c)
          degenerate_of_[static_cast<std::size_t>(k) + 1][(*a.refl)[static_cast<std::size_t>(k)][c]] = c;
    }
    if (opt.injective) {
      used_.resize(x.counts.size());
      for (std::size_t k = 0; k < x.counts.size(); ++k) used_[k].assign(x.counts[k], false);
    }
  }

  void run() { step(0); }

 private:
  static constexpr CellId kNone = static_cast<CellId>(-1);

  bool fits(CellRef cell, CellId img) const {
    if (cell.dim > 0) {
      if (x_.source({cell.dim, img}) != map_({cell.dim - 1, a_.source(cell)})) return false;
      if (x_.target({cell.dim, img}) != map_({cell.dim - 1, a_.target(cell)})) return false;
    }
    if (opt_.injective && used_[static_cast<std::size_t>(cell.dim)][img]) return false;
    if (opt_.admissible && !opt_.admissible(cell, img)) return false;
    return true;
  }

  bool place(std::size_t pos, CellRef cell, CellId img) {
    if (!fits(cell, img)) return true;
    map_.components[static_cast<std::size_t>(cell.dim)][cell.index] = img;
    if (opt_.injective) used_[static_cast<std::size_t>(cell.dim)][img] = true;
    bool go_on = step(pos + 1);
    if (opt_.injective) used_[static_cast<std::size_t>(cell.dim)][img] = false;
    return go_on;
  }

  // Returns false once the search must stop.
  bool step(std::size_t pos) {
    if (pos == order_.size()) {
      ++visited_;
      if (!visit_(map_)) return false;
      return opt_.limit == 0 || visited_ < opt_.limit;
    }
    auto cell = order_[pos];
    auto kk = static_cast<std::size_t>(cell.dim);
    if (cell.dim > x_.dim_bound()) return true;
    std::optional<CellId> forced;
    if (opt_.fixed && kk < opt_.fixed->size() && cell.index < (*opt_.fixed)[kk].size())
      forced = (*opt_.fixed)[kk][cell.index];
    if (reflexive_ && cell.dim > 0 && degenerate_of_[kk][cell.index] != kNone) {
      if (cell.dim - 1 >= x_.dim_bound()) return true;
      auto below = map_({cell.dim - 1, degenerate_of_[kk][cell.index]});
      auto img = (*x_.refl)[kk - 1][below];
      if (forced && *forced != img) return true;
      forced = img;
    }
    if (forced) {
      if (*forced >= x_.count(cell.dim)) return true;
      return place(pos, cell, *forced);
    }
    if (cell.dim == 0) {
      for (CellId c = 0; c < x_.count(0); ++c)
        if (!place(pos, cell, c)) return false;
      return true;
    }
    auto key = pair_key(map_({cell.dim - 1, a_.source(cell)}), map_({cell.dim - 1, a_.target(cell)}));
    auto it = buckets_[kk].find(key);
    if (it == buckets_[kk].end()) return true;
    for (auto c : it->second)
      if (!place(pos, cell, c)) return false;
    return true;
  }

  const GlobularSet& a_;
  const GlobularSet& x_;
  const HomOptions& opt_;
  const std::function<bool(const GlobMap&)>& visit_;
  GlobMap map_;
  std::vector<CellRef> order_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<CellId>>> buckets_;
  bool reflexive_ = false;
  std::vector<std::vector<CellId>> degenerate_of_;
  std::vector<std::vector<bool>> used_;
  std::size_t visited_ = 0;
};

}  // namespace

void for_each_hom(const GlobularSet& a, const GlobularSet& x, const std::function<bool(const GlobMap&)>& visit,
                  const HomOptions& options) {
  HomSearch(a, x, options, visit).run();
}

std::vector<GlobMap> hom_set(const GlobularSet& a, const GlobularSet& x, const HomOptions& options) {
  std::vector<GlobMap> out;
  for_each_hom(a, x, [&](const GlobMap& f) {
    out.push_back(f);
    return true;
  }, options);
  return out;
}

std::size_t count_homs(const GlobularSet& a, const GlobularSet& x, const HomOptions& options) {
  std::size_t n = 0;
  for_each_hom(a, x, [&](const GlobMap&) {
    ++n;
    return true;
  }, options);
  return n;
}

Pushout pushout(const GlobularSet& c, const GlobularSet& a, const GlobularSet& b, const GlobMap& f,
                const GlobMap& g) {
  if (!is_morphism(c, a, f, false) || !is_morphism(c, b, g, false))
    throw PreconditionError("pushout legs are not morphisms out of a common source");
  if (!is_injective(c, f)) throw MonomorphismError("pushout: the first map is not injective");
  auto d = std::max(a.dim_bound(), b.dim_bound());
  Pushout p;
  p.object = GlobularSet::empty(d);
  auto& y = p.object;
  p.from_a.components.resize(a.counts.size());
  p.from_b = identity_map(b);
  for (int k = 0; k <= d; ++k) {
    auto kk = static_cast<std::size_t>(k);
    y.counts[kk] = b.count(k);
    if (k > 0 && k <= b.dim_bound()) {
      y.src[kk] = b.src[kk];
      y.tgt[kk] = b.tgt[kk];
    }
    if (k > a.dim_bound()) continue;
    std::vector<CellId> preimage(a.counts[kk], static_cast<CellId>(-1));
    if (k <= c.dim_bound())
      for (CellId z = 0; z < c.counts[kk]; ++z) preimage[f({k, z})] = z;
    auto& comp = p.from_a.components[kk];
    comp.resize(a.counts[kk]);
    for (CellId z = 0; z < a.counts[kk]; ++z) {
      if (preimage[z] != static_cast<CellId>(-1)) {
        comp[z] = g({k, preimage[z]});
        continue;
      }
      comp[z] = static_cast<CellId>(y.counts[kk]++);
      if (k > 0) {
        y.src[kk].push_back(p.from_a({k - 1, a.source({k, z})}));
        y.tgt[kk].push_back(p.from_a({k - 1, a.target({k, z})}));
      }
    }
  }
  if (a.refl && b.refl && a.dim_bound() == b.dim_bound()) {
    std::vector<std::vector<CellId>> r(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      auto kk = static_cast<std::size_t>(k);
      r[kk] = (*b.refl)[kk];
      r[kk].resize(y.counts[kk]);
      for (CellId z = 0; z < a.counts[kk]; ++z) r[kk][p.from_a({k, z})] = p.from_a({k + 1, (*a.refl)[kk][z]});
    }
    y.refl = std::move(r);
  }
  return p;
}

std::optional<GlobMap> find_isomorphism(const GlobularSet& a, const GlobularSet& b) {
  auto top = std::max(a.dim_bound(), b.dim_bound());
  for (int k = 0; k <= top; ++k)
    if (a.count(k) != b.count(k)) return std::nullopt;
  if (a.is_reflexive() != b.is_reflexive()) return std::nullopt;
  HomOptions opt;
  opt.injective = true;
  opt.limit = 1;
  std::optional<GlobMap> iso;
  for_each_hom(a, b, [&](const GlobMap& f) {
    iso = f;
    return false;
  }, opt);
  return iso;
}

bool isomorphic(const GlobularSet& a, const GlobularSet& b) { return find_isomorphism(a, b).has_value(); }

std::uint64_t structural_hash(const GlobularSet& x) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  hash_mix(h, x.counts.size());
  for (std::size_t k = 0; k < x.counts.size(); ++k) {
    hash_mix(h, x.counts[k]);
    for (auto v : x.src[k]) hash_mix(h, v);
    for (auto v : x.tgt[k]) hash_mix(h, v);
  }
  hash_mix(h, x.refl ? 1 : 0);
  if (x.refl)
    for (const auto& row : *x.refl)
      for (auto v : row) hash_mix(h, v);
  return h;
}

std::size_t count_lifts(const GlobularSet& a, const GlobularSet& b, const GlobMap& i, const GlobularSet& x,
                        const GlobularSet& y, const GlobMap& p, const GlobMap& top, const GlobMap& bottom,
                        std::size_t limit) {
  (void)y;
  PartialMap fixed(b.counts.size());
  for (std::size_t k = 0; k < b.counts.size(); ++k) fixed[k].assign(b.counts[k], std::nullopt);
  for (int k = 0; k <= a.dim_bound(); ++k)
    for (CellId c = 0; c < a.count(k); ++c) {
      auto& slot = fixed[static_cast<std::size_t>(k)][i({k, c})];
      auto want = top({k, c});
      if (slot && *slot != want) return 0;
      slot = want;
    }
  HomOptions opt;
  opt.fixed = &fixed;
  opt.limit = limit;
  opt.admissible = [&](CellRef cell, CellId img) { return p({cell.dim, img}) == bottom(cell); };
  return count_homs(b, x, opt);
}

std::vector<std::pair<CellId, CellId>> parallel_pairs(const GlobularSet& x, int dim) {
  if (dim < 1) throw DimensionError("parallel pairs are indexed by the dimension of their filler (>= 1)");
  std::vector<std::pair<CellId, CellId>> out;
  auto n = x.count(dim - 1);
  for (CellId p = 0; p < n; ++p)
    for (CellId q = 0; q < n; ++q)
      if (parallel(x, {dim - 1, p}, {dim - 1, q})) out.emplace_back(p, q);
  return out;
}

std::vector<std::size_t> cell_counts(const GlobularSet& x) { return x.counts; }

}  // namespace glob
