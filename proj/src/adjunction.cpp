#include "glob/adjunction.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "glob/error.hpp"

namespace glob {

namespace {

struct UnionFind {
  std::vector<CellId> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), CellId{0}); }
  CellId find(CellId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // The smaller index always becomes the root, so roots are class minima.
  void unite(CellId a, CellId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

GlobMap identity_up_to(const GlobularSet& x, int n) {
  GlobMap f;
  f.components.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    for (CellId c = 0; c < x.count(k); ++c) f.components[static_cast<std::size_t>(k)].push_back(c);
  return f;
}

}  // namespace

CellQuotient connected_classes(const GlobularSet& x, int n) {
  UnionFind uf(x.count(n));
  for (CellId c = 0; c < x.count(n + 1); ++c) uf.unite(x.source({n + 1, c}), x.target({n + 1, c}));
  CellQuotient q;
  q.class_of.resize(x.count(n));
  std::map<CellId, CellId> root_class;
  for (CellId c = 0; c < x.count(n); ++c) {
    auto r = uf.find(c);
    auto it = root_class.find(r);
    if (it == root_class.end()) {
      it = root_class.emplace(r, static_cast<CellId>(q.representative.size())).first;
      q.representative.push_back(r);
    }
    q.class_of[c] = it->second;
  }
  return q;
}

Truncated truncate(const GlobularSet& x, int n) {
  if (n < 0) throw DimensionError("negative truncation dimension");
  auto q = connected_classes(x, n);
  Truncated t;
  t.object = GlobularSet::empty(n);
  for (int k = 0; k < n; ++k) {
    auto kk = static_cast<std::size_t>(k);
    t.object.counts[kk] = x.count(k);
    if (k > 0) {
      t.object.src[kk] = x.src[kk];
      t.object.tgt[kk] = x.tgt[kk];
    }
  }
  auto nn = static_cast<std::size_t>(n);
  t.object.counts[nn] = q.representative.size();
  if (n > 0)
    for (auto r : q.representative) {
      t.object.src[nn].push_back(x.source({n, r}));
      t.object.tgt[nn].push_back(x.target({n, r}));
    }
  t.quotient = identity_up_to(x, n);
  t.quotient.components[nn] = q.class_of;
  return t;
}

GlobularSet constant_extension(const GlobularSet& y, int d) {
  int n = y.dim_bound();
  auto out = with_dim_bound(underlying(y), std::max(d, n));
  for (int k = n + 1; k <= d; ++k) {
    auto kk = static_cast<std::size_t>(k);
    out.counts[kk] = y.count(n);
    out.src[kk].resize(y.count(n));
    std::iota(out.src[kk].begin(), out.src[kk].end(), CellId{0});
    out.tgt[kk] = out.src[kk];
  }
  return with_dim_bound(out, d);
}

GlobMap truncation_unit(const GlobularSet& x, int n) {
  auto q = connected_classes(x, n);
  auto f = identity_up_to(x, std::min(n, x.dim_bound()));
  f.components.resize(x.counts.size());
  if (n > x.dim_bound()) return f;
  f.components[static_cast<std::size_t>(n)] = q.class_of;
  for (int k = n + 1; k <= x.dim_bound(); ++k)
    for (CellId c = 0; c < x.count(k); ++c)
      f.components[static_cast<std::size_t>(k)].push_back(q.class_of[iterated_boundary(x, {k, c}, n, Side::Source)]);
  return f;
}

GlobMap truncation_counit(const GlobularSet& y, int n, int d) {
  auto f = identity_up_to(y, n);
  f.components[static_cast<std::size_t>(n)] = connected_classes(constant_extension(y, d), n).representative;
  return f;
}

GlobMap truncate_map(const GlobularSet& x, const GlobularSet& x2, const GlobMap& f, int n) {
  auto q = connected_classes(x, n);
  auto q2 = connected_classes(x2, n);
  GlobMap g;
  g.components.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) g.components[static_cast<std::size_t>(k)] = f.components[static_cast<std::size_t>(k)];
  for (auto r : q.representative) g.components[static_cast<std::size_t>(n)].push_back(q2.class_of[f({n, r})]);
  return g;
}

GlobMap constant_extension_map(const GlobularSet& y, const GlobMap& g, int n, int d) {
  (void)y;
  GlobMap h;
  h.components.resize(static_cast<std::size_t>(std::max(n, d)) + 1);
  for (int k = 0; k <= std::max(n, d); ++k)
    h.components[static_cast<std::size_t>(k)] = g.components[static_cast<std::size_t>(std::min(k, n))];
  h.components.resize(static_cast<std::size_t>(d) + 1);
  return h;
}

GlobularSet skeleton(const GlobularSet& x, int n) { return with_dim_bound(x, n); }

GlobMap skeleton_map(const GlobMap& f, int n) {
  auto g = f;
  g.components.resize(static_cast<std::size_t>(n) + 1);
  return g;
}

GlobularSet coskeleton(const GlobularSet& y, int d) {
  int n = y.dim_bound();
  auto out = with_dim_bound(underlying(y), std::max(d, n));
  for (int k = n + 1; k <= d; ++k) {
    auto kk = static_cast<std::size_t>(k);
    for (auto [a, b] : parallel_pairs(out, k)) {
      out.src[kk].push_back(a);
      out.tgt[kk].push_back(b);
    }
    out.counts[kk] = out.src[kk].size();
  }
  return with_dim_bound(out, d);
}

CellId coskeleton_cell(const GlobularSet& cosk, int k, CellId a, CellId b) {
  auto kk = static_cast<std::size_t>(k);
  const auto& s = cosk.src[kk];
  const auto& t = cosk.tgt[kk];
  // Cells above the skeleton are sorted by (src, tgt).
  std::size_t lo = 0, hi = s.size();
  while (lo < hi) {
    auto mid = (lo + hi) / 2;
    if (std::make_pair(s[mid], t[mid]) < std::make_pair(a, b))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == s.size() || s[lo] != a || t[lo] != b)
    throw PreconditionError("no coskeleton cell over a non-parallel pair");
  return static_cast<CellId>(lo);
}

GlobMap coskeleton_map(const GlobularSet& y, const GlobularSet& y2, const GlobMap& g, int d) {
  int n = y.dim_bound();
  auto c1 = coskeleton(y, d);
  auto c2 = coskeleton(y2, d);
  GlobMap h;
  h.components.resize(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= std::min(n, d); ++k) h.components[static_cast<std::size_t>(k)] = g.components[static_cast<std::size_t>(k)];
  for (int k = n + 1; k <= d; ++k)
    for (CellId c = 0; c < c1.count(k); ++c)
      h.components[static_cast<std::size_t>(k)].push_back(
          coskeleton_cell(c2, k, h({k - 1, c1.source({k, c})}), h({k - 1, c1.target({k, c})})));
  return h;
}

GlobMap coskeleton_unit(const GlobularSet& x, int n) {
  auto target = coskeleton(skeleton(x, n), x.dim_bound());
  auto f = identity_up_to(x, std::min(n, x.dim_bound()));
  f.components.resize(x.counts.size());
  for (int k = n + 1; k <= x.dim_bound(); ++k)
    for (CellId c = 0; c < x.count(k); ++c)
      f.components[static_cast<std::size_t>(k)].push_back(
          coskeleton_cell(target, k, f({k - 1, x.source({k, c})}), f({k - 1, x.target({k, c})})));
  return f;
}

GlobMap coskeleton_counit(const GlobularSet& y) { return identity_map(underlying(y)); }

std::optional<CellId> unique_filler(const GlobularSet& x, int k, CellId src, CellId tgt) {
  std::optional<CellId> found;
  for (CellId c = 0; c < x.count(k); ++c)
    if (x.source({k, c}) == src && x.target({k, c}) == tgt) {
      if (found) return std::nullopt;
      found = c;
    }
  return found;
}

namespace {

// Number of (k+1)-cells between each pair of k-cells, keyed by (src, tgt).
std::map<std::pair<CellId, CellId>, std::size_t> fillers_by_boundary(const GlobularSet& x, int k) {
  std::map<std::pair<CellId, CellId>, std::size_t> m;
  for (CellId c = 0; c < x.count(k + 1); ++c) ++m[{x.source({k + 1, c}), x.target({k + 1, c})}];
  return m;
}

// Calls check(k, a, b, lifts) for every sphere(k) -> X, k in [from, dim_bound].
template <class F>
bool all_sphere_lifts(const GlobularSet& x, int from, F check) {
  for (int k = std::max(from, 0); k <= x.dim_bound(); ++k) {
    auto s = sphere(k);
    auto d = disk(k);
    auto incl = sphere_inclusion(k);
    auto term = terminal(x.dim_bound());
    GlobMap to_term;
    to_term.components.resize(x.counts.size());
    for (std::size_t j = 0; j < x.counts.size(); ++j) to_term.components[j].assign(x.counts[j], 0);
    GlobMap disk_to_term;
    disk_to_term.components.resize(d.counts.size());
    for (std::size_t j = 0; j < d.counts.size(); ++j) disk_to_term.components[j].assign(d.counts[j], 0);
    HomOptions plain;
    plain.respect_reflexivity = false;
    bool ok = true;
    for_each_hom(s, x, [&](const GlobMap& top) {
      auto lifts = count_lifts(s, d, incl, x, term, to_term, top, disk_to_term, 2);
      std::optional<std::pair<CellId, CellId>> ends;
      if (k > 0) ends = std::make_pair(top({k - 1, 0}), top({k - 1, 1}));
      if (!check(k, ends, lifts)) ok = false;
      return ok;
    }, plain);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_truncated(const GlobularSet& x, int n, Method m) {
  if (n < 0) throw DimensionError("truncation level must be a natural number");
  if (m == Method::CellCounting) {
    for (int k = std::max(n, 0); k < x.dim_bound(); ++k) {
      auto fill = fillers_by_boundary(x, k);
      for (auto [a, b] : parallel_pairs(x, k + 1)) {
        auto it = fill.find({a, b});
        std::size_t cnt = it == fill.end() ? 0 : it->second;
        if (cnt != (a == b ? 1u : 0u)) return false;
      }
    }
    return true;
  }
  return all_sphere_lifts(x, n + 1, [&](int k, std::optional<std::pair<CellId, CellId>> ends, std::size_t lifts) {
    if (k == n + 1 && ends && ends->first != ends->second) return lifts == 0;
    return lifts == 1;
  });
}

bool is_coskeletal(const GlobularSet& x, int n, Method m) {
  if (m == Method::CellCounting) {
    for (int k = std::max(n, 0); k < x.dim_bound(); ++k) {
      auto fill = fillers_by_boundary(x, k);
      for (auto [a, b] : parallel_pairs(x, k + 1)) {
        auto it = fill.find({a, b});
        if (it == fill.end() || it->second != 1) return false;
      }
    }
    // n < 0: the 0-cells are themselves constrained, exactly one point.
    if (n < 0 && x.count(0) != 1) return false;
    return true;
  }
  return all_sphere_lifts(x, n + 1, [](int, std::optional<std::pair<CellId, CellId>>, std::size_t lifts) {
    return lifts == 1;
  });
}

bool is_truncated(const GlobularSet& x, int n) {
  bool a = is_truncated(x, n, Method::CellCounting);
  bool b = is_truncated(x, n, Method::Lifting);
  if (a != b) throw ConsistencyError("is_truncated: cell counting and lifting disagree");
  return a;
}

bool is_coskeletal(const GlobularSet& x, int n) {
  bool a = is_coskeletal(x, n, Method::CellCounting);
  bool b = is_coskeletal(x, n, Method::Lifting);
  if (a != b) throw ConsistencyError("is_coskeletal: cell counting and lifting disagree");
  return a;
}

}  // namespace glob
