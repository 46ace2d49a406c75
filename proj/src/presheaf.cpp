#include "glob/presheaf.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "glob/error.hpp"

namespace glob {

namespace {

constexpr CellId kUnset = static_cast<CellId>(-1);

void hash_mix(std::uint64_t& h, std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

std::size_t face_op(int k, int i) {
  // Faces of level j occupy j+1 slots; level 1 starts at 0.
  std::size_t off = 0;
  for (int j = 1; j < k; ++j) off += static_cast<std::size_t>(j + 1);
  return off + static_cast<std::size_t>(i);
}

std::size_t lvl(int l) { return static_cast<std::size_t>(l); }

}  // namespace

PresheafShape PresheafShape::sets() { return {Kind::Sets, 0, {}}; }

PresheafShape PresheafShape::globular(int d, bool reflexive) {
  if (d < 0) throw DimensionError("negative dimension bound");
  PresheafShape s{reflexive ? Kind::ReflexiveGlobular : Kind::Globular, d, {}};
  for (int k = 1; k <= d; ++k) {
    s.ops.push_back({"s" + std::to_string(k), k, k - 1});
    s.ops.push_back({"t" + std::to_string(k), k, k - 1});
  }
  if (reflexive)
    for (int k = 0; k < d; ++k) s.ops.push_back({"r" + std::to_string(k), k, k + 1});
  return s;
}

PresheafShape PresheafShape::semisimplicial(int d) {
  if (d < 0) throw DimensionError("negative dimension bound");
  PresheafShape s{Kind::SemiSimplicial, d, {}};
  for (int k = 1; k <= d; ++k)
    for (int i = 0; i <= k; ++i) s.ops.push_back({"d" + std::to_string(k) + "_" + std::to_string(i), k, k - 1});
  return s;
}

std::string PresheafShape::name() const {
  switch (kind) {
    case Kind::Sets: return "sets";
    case Kind::Globular: return "glob" + std::to_string(top);
    case Kind::ReflexiveGlobular: return "rglob" + std::to_string(top);
    case Kind::SemiSimplicial: return "ssimp" + std::to_string(top);
  }
  return "?";
}

int PresheafShape::op_index(const std::string& n) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].name == n) return static_cast<int>(i);
  return -1;
}

std::size_t Presheaf::total_cells() const {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

Presheaf empty_presheaf(const PresheafShape& s) {
  Presheaf p;
  p.counts.assign(lvl(s.top + 1), 0);
  p.act.assign(s.ops.size(), {});
  return p;
}

std::vector<std::string> validate_presheaf(const PresheafShape& s, const Presheaf& p) {
  std::vector<std::string> out;
  if (p.counts.size() != lvl(s.top + 1) || p.act.size() != s.ops.size()) {
    out.push_back("shape mismatch");
    return out;
  }
  for (std::size_t o = 0; o < s.ops.size(); ++o) {
    const auto& op = s.ops[o];
    if (p.act[o].size() != p.counts[lvl(op.from)]) {
      out.push_back(op.name + ": table size");
      return out;
    }
    for (auto v : p.act[o])
      if (v >= p.counts[lvl(op.to)]) {
        out.push_back(op.name + ": out of range");
        return out;
      }
  }
  auto at = [&](std::size_t o, CellId c) { return p.act[o][c]; };
  switch (s.kind) {
    case PresheafShape::Kind::Sets: break;
    case PresheafShape::Kind::Globular:
    case PresheafShape::Kind::ReflexiveGlobular:
      for (int k = 2; k <= s.top; ++k) {
        auto sk = lvl(2 * (k - 1)), tk = sk + 1, sl = lvl(2 * (k - 2)), tl = sl + 1;
        for (CellId c = 0; c < p.counts[lvl(k)]; ++c) {
          if (at(sl, at(sk, c)) != at(sl, at(tk, c)) || at(tl, at(sk, c)) != at(tl, at(tk, c)))
            out.push_back("globularity at " + std::to_string(k) + ":" + std::to_string(c));
        }
      }
      if (s.kind == PresheafShape::Kind::ReflexiveGlobular)
        for (int k = 0; k < s.top; ++k) {
          auto r = lvl(2 * s.top + k), sk = lvl(2 * k), tk = sk + 1;
          for (CellId c = 0; c < p.counts[lvl(k)]; ++c)
            if (at(sk, at(r, c)) != c || at(tk, at(r, c)) != c)
              out.push_back("reflexivity at " + std::to_string(k) + ":" + std::to_string(c));
        }
      break;
    case PresheafShape::Kind::SemiSimplicial:
      for (int k = 2; k <= s.top; ++k)
        for (CellId c = 0; c < p.counts[lvl(k)]; ++c)
          for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i)
              if (at(face_op(k - 1, i), at(face_op(k, j), c)) != at(face_op(k - 1, j - 1), at(face_op(k, i), c)))
                out.push_back("simplicial identity at " + std::to_string(k) + ":" + std::to_string(c));
      break;
  }
  return out;
}

PresheafMap identity_map(const Presheaf& p) {
  PresheafMap f;
  for (auto n : p.counts) {
    std::vector<CellId> row(n);
    for (CellId i = 0; i < n; ++i) row[i] = i;
    f.comp.push_back(std::move(row));
  }
  return f;
}

PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
  PresheafMap h;
  h.comp.resize(f.comp.size());
  for (std::size_t l = 0; l < f.comp.size(); ++l) {
    h.comp[l].reserve(f.comp[l].size());
    for (auto v : f.comp[l]) h.comp[l].push_back(g.comp[l][v]);
  }
  return h;
}

bool is_morphism(const PresheafShape& s, const Presheaf& a, const Presheaf& x, const PresheafMap& f) {
  if (f.comp.size() != a.counts.size() || x.counts.size() != a.counts.size()) return false;
  for (std::size_t l = 0; l < a.counts.size(); ++l) {
    if (f.comp[l].size() != a.counts[l]) return false;
    for (auto v : f.comp[l])
      if (v >= x.counts[l]) return false;
  }
  for (std::size_t o = 0; o < s.ops.size(); ++o) {
    auto from = lvl(s.ops[o].from), to = lvl(s.ops[o].to);
    for (CellId c = 0; c < a.counts[from]; ++c)
      if (f.comp[to][a.act[o][c]] != x.act[o][f.comp[from][c]]) return false;
  }
  return true;
}

bool is_mono(const PresheafMap& f) {
  for (const auto& row : f.comp) {
    std::vector<CellId> r = row;
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) return false;
  }
  return true;
}

std::vector<CellId> flatten(const PresheafMap& f) {
  std::vector<CellId> out;
  for (const auto& row : f.comp) {
    out.push_back(static_cast<CellId>(row.size()));
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

namespace {

class PresheafHomSearch {
 public:
  PresheafHomSearch(const PresheafShape& s, const Presheaf& a, const Presheaf& x, const PresheafHomOptions& o,
                    const std::function<bool(const PresheafMap&)>& visit)
      : s_(s), a_(a), x_(x), o_(o), visit_(visit) {
    auto levels = a.counts.size();
    if (x.counts.size() != levels) throw DimensionError("presheaves over different truncations");
    down_.resize(levels);
    up_.resize(levels);
    for (std::size_t o2 = 0; o2 < s.ops.size(); ++o2) {
      const auto& op = s.ops[o2];
      if (op.to < op.from)
        down_[lvl(op.from)].push_back(o2);
      else
        up_[lvl(op.to)].push_back(o2);
    }
    // Preimages of each cell under the raising operators.
    pre_.resize(levels);
    for (std::size_t l = 0; l < levels; ++l) pre_[l].assign(a.counts[l], {});
    for (std::size_t l = 0; l < levels; ++l)
      for (auto o2 : up_[l])
        for (CellId y = 0; y < a.counts[lvl(s.ops[o2].from)]; ++y) pre_[l][a.act[o2][y]].push_back({o2, y});
    f_.comp.resize(levels);
    for (std::size_t l = 0; l < levels; ++l) f_.comp[l].assign(a.counts[l], kUnset);
    used_.resize(levels);
    for (std::size_t l = 0; l < levels; ++l) used_[l].assign(x.counts[l], 0);
  }

  void run() { go(0, 0); }

 private:
  bool go(std::size_t l, CellId c) {
    while (l < a_.counts.size() && c >= a_.counts[l]) {
      ++l;
      c = 0;
    }
    if (l == a_.counts.size()) {
      ++found_;
      if (!visit_(f_)) return false;
      return !(o_.limit && found_ >= o_.limit);
    }
    std::optional<CellId> fixed;
    if (o_.fixed && l < o_.fixed->size() && c < (*o_.fixed)[l].size()) fixed = (*o_.fixed)[l][c];
    CellId lo = fixed ? *fixed : 0, hi = fixed ? *fixed + 1 : static_cast<CellId>(x_.counts[l]);
    if (fixed && *fixed >= x_.counts[l]) return true;
    for (CellId v = lo; v < hi; ++v) {
      if (o_.injective && used_[l][v]) continue;
      bool ok = true;
      for (auto o2 : down_[l]) {
        auto to = lvl(s_.ops[o2].to);
        if (x_.act[o2][v] != f_.comp[to][a_.act[o2][c]]) {
          ok = false;
          break;
        }
      }
      if (ok)
        for (const auto& [o2, y] : pre_[l][c]) {
          auto from = lvl(s_.ops[o2].from);
          if (x_.act[o2][f_.comp[from][y]] != v) {
            ok = false;
            break;
          }
        }
      if (!ok) continue;
      if (o_.admissible && !o_.admissible(static_cast<int>(l), c, v)) continue;
      f_.comp[l][c] = v;
      used_[l][v] = 1;
      bool cont = go(l, c + 1);
      used_[l][v] = 0;
      f_.comp[l][c] = kUnset;
      if (!cont) return false;
    }
    return true;
  }

  const PresheafShape& s_;
  const Presheaf& a_;
  const Presheaf& x_;
  const PresheafHomOptions& o_;
  const std::function<bool(const PresheafMap&)>& visit_;
  std::vector<std::vector<std::size_t>> down_, up_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, CellId>>>> pre_;
  PresheafMap f_;
  std::vector<std::vector<char>> used_;
  std::size_t found_ = 0;
};

}  // namespace

void for_each_hom(const PresheafShape& s, const Presheaf& a, const Presheaf& x,
                  const std::function<bool(const PresheafMap&)>& visit, const PresheafHomOptions& o) {
  PresheafHomSearch(s, a, x, o, visit).run();
}

std::vector<PresheafMap> hom_set(const PresheafShape& s, const Presheaf& a, const Presheaf& x,
                                 const PresheafHomOptions& o) {
  std::vector<PresheafMap> out;
  for_each_hom(s, a, x, [&](const PresheafMap& f) {
    out.push_back(f);
    return true;
  }, o);
  return out;
}

std::size_t count_homs(const PresheafShape& s, const Presheaf& a, const Presheaf& x, const PresheafHomOptions& o) {
  std::size_t n = 0;
  for_each_hom(s, a, x, [&](const PresheafMap&) {
    ++n;
    return true;
  }, o);
  return n;
}

PresheafPushout pushout(const PresheafShape& s, const Presheaf& a, const Presheaf& b, const Presheaf& c,
                        const PresheafMap& f, const PresheafMap& g) {
  if (!is_morphism(s, a, b, f) || !is_morphism(s, a, c, g))
    throw PreconditionError("pushout legs are not morphisms out of a common source");
  if (!is_mono(f)) throw MonomorphismError("pushout: the first map is not injective");
  PresheafPushout r;
  r.object = c;
  r.from_c = identity_map(c);
  r.from_b.comp.resize(b.counts.size());
  auto levels = b.counts.size();
  for (std::size_t l = 0; l < levels; ++l) {
    std::vector<CellId> pre(b.counts[l], kUnset);
    for (CellId z = 0; z < a.counts[l]; ++z) pre[f.comp[l][z]] = z;
    auto& u = r.from_b.comp[l];
    u.resize(b.counts[l]);
    for (CellId z = 0; z < b.counts[l]; ++z)
      u[z] = pre[z] != kUnset ? g.comp[l][pre[z]] : static_cast<CellId>(r.object.counts[l]++);
  }
  // Operator tables on the new cells; targets may sit at any level so fill after all maps exist.
  for (std::size_t o = 0; o < s.ops.size(); ++o) {
    auto from = lvl(s.ops[o].from), to = lvl(s.ops[o].to);
    auto& row = r.object.act[o];
    row.resize(r.object.counts[from]);
    for (CellId z = 0; z < b.counts[from]; ++z) {
      auto img = r.from_b.comp[from][z];
      if (img >= c.counts[from]) row[img] = r.from_b.comp[to][b.act[o][z]];
    }
  }
  return r;
}

std::uint64_t invariant_hash(const Presheaf& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto n : p.counts) hash_mix(h, n);
  for (const auto& row : p.act) {
    std::unordered_map<CellId, std::uint32_t> fib;
    for (auto v : row) ++fib[v];
    std::vector<std::uint32_t> sizes;
    for (const auto& [k, n] : fib) sizes.push_back(n);
    std::sort(sizes.begin(), sizes.end());
    hash_mix(h, row.size());
    for (auto n : sizes) hash_mix(h, n);
  }
  return h;
}

std::optional<PresheafMap> find_isomorphism(const PresheafShape& s, const Presheaf& a, const Presheaf& b) {
  if (a.counts != b.counts) return std::nullopt;
  PresheafHomOptions o;
  o.injective = true;
  o.limit = 1;
  std::optional<PresheafMap> iso;
  for_each_hom(s, a, b, [&](const PresheafMap& f) {
    iso = f;
    return false;
  }, o);
  return iso;
}

Presheaf from_globular(const GlobularSet& x) {
  int d = x.dim_bound();
  auto s = PresheafShape::globular(d, x.is_reflexive());
  Presheaf p = empty_presheaf(s);
  p.counts = x.counts;
  for (int k = 1; k <= d; ++k) {
    p.act[lvl(2 * (k - 1))] = x.src[lvl(k)];
    p.act[lvl(2 * (k - 1) + 1)] = x.tgt[lvl(k)];
  }
  if (x.refl)
    for (int k = 0; k < d; ++k) p.act[lvl(2 * d + k)] = (*x.refl)[lvl(k)];
  return p;
}

GlobularSet to_globular(const PresheafShape& s, const Presheaf& p) {
  if (s.kind != PresheafShape::Kind::Globular && s.kind != PresheafShape::Kind::ReflexiveGlobular)
    throw PreconditionError("not a globular shape");
  auto x = GlobularSet::empty(s.top);
  x.counts = p.counts;
  for (int k = 1; k <= s.top; ++k) {
    x.src[lvl(k)] = p.act[lvl(2 * (k - 1))];
    x.tgt[lvl(k)] = p.act[lvl(2 * (k - 1) + 1)];
  }
  if (s.kind == PresheafShape::Kind::ReflexiveGlobular) {
    std::vector<std::vector<CellId>> r;
    for (int k = 0; k < s.top; ++k) r.push_back(p.act[lvl(2 * s.top + k)]);
    x.refl = std::move(r);
  }
  return x;
}

PresheafMap from_glob_map(const GlobMap& f) { return {f.components}; }
GlobMap to_glob_map(const PresheafMap& f) { return {f.comp}; }

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

SubPresheaf restrict_simplex(int n, int top, const std::function<bool(const std::vector<int>&)>& keep) {
  auto s = PresheafShape::semisimplicial(top);
  auto full = simplex(n, top);
  SubPresheaf r;
  r.object = empty_presheaf(s);
  r.inclusion.comp.resize(lvl(top + 1));
  std::vector<std::vector<CellId>> newidx(lvl(top + 1));
  for (int k = 0; k <= top; ++k) {
    newidx[lvl(k)].assign(full.counts[lvl(k)], kUnset);
    for (CellId c = 0; c < full.counts[lvl(k)]; ++c)
      if (keep(simplex_vertices(n, k, c))) {
        newidx[lvl(k)][c] = static_cast<CellId>(r.inclusion.comp[lvl(k)].size());
        r.inclusion.comp[lvl(k)].push_back(c);
      }
    r.object.counts[lvl(k)] = r.inclusion.comp[lvl(k)].size();
  }
  for (std::size_t o = 0; o < s.ops.size(); ++o) {
    auto from = lvl(s.ops[o].from), to = lvl(s.ops[o].to);
    for (auto c : r.inclusion.comp[from]) r.object.act[o].push_back(newidx[to][full.act[o][c]]);
  }
  return r;
}

}  // namespace

std::vector<int> simplex_vertices(int n, int k, CellId cell) {
  auto subs = subsets_of_size(n, k + 1);
  if (cell >= subs.size()) throw DimensionError("simplex index out of range");
  return subs[cell];
}

Presheaf simplex(int n, int top) {
  if (n < 0 || n > top) throw DimensionError("simplex dimension outside the truncation");
  auto s = PresheafShape::semisimplicial(top);
  Presheaf p = empty_presheaf(s);
  std::vector<std::map<std::vector<int>, CellId>> index(lvl(top + 1));
  std::vector<std::vector<std::vector<int>>> subs(lvl(top + 1));
  for (int k = 0; k <= top; ++k) {
    subs[lvl(k)] = k <= n ? subsets_of_size(n, k + 1) : std::vector<std::vector<int>>{};
    p.counts[lvl(k)] = subs[lvl(k)].size();
    for (CellId c = 0; c < subs[lvl(k)].size(); ++c) index[lvl(k)][subs[lvl(k)][c]] = c;
  }
  for (int k = 1; k <= top; ++k)
    for (int i = 0; i <= k; ++i) {
      auto& row = p.act[face_op(k, i)];
      for (const auto& v : subs[lvl(k)]) {
        auto w = v;
        w.erase(w.begin() + i);
        row.push_back(index[lvl(k - 1)].at(w));
      }
    }
  return p;
}

SubPresheaf horn(int n, int k, int top) {
  if (n < 1 || k < 0 || k > n) throw DimensionError("horn index out of range");
  return restrict_simplex(n, top, [&](const std::vector<int>& v) {
    if (static_cast<int>(v.size()) == n + 1) return false;
    if (static_cast<int>(v.size()) == n && std::find(v.begin(), v.end(), k) == v.end()) return false;
    return true;
  });
}

SubPresheaf boundary_ss(int n, int top) {
  if (n < 0) throw DimensionError("negative simplex dimension");
  return restrict_simplex(n, top, [&](const std::vector<int>& v) { return static_cast<int>(v.size()) != n + 1; });
}

Presheaf terminal_presheaf(const PresheafShape& s) {
  Presheaf p = empty_presheaf(s);
  for (auto& c : p.counts) c = 1;
  for (auto& row : p.act) row.assign(1, 0);
  return p;
}

namespace {

std::vector<std::vector<CellId>> boundary_candidates(const PresheafShape& s_, const Presheaf& p, int k) {
  std::vector<std::vector<CellId>> out;
  const auto lower = p.counts[lvl(k - 1)];
  switch (s_.kind) {
    case PresheafShape::Kind::Sets: break;
    case PresheafShape::Kind::Globular:
    case PresheafShape::Kind::ReflexiveGlobular:
      for (CellId a = 0; a < lower; ++a)
        for (CellId b = 0; b < lower; ++b) {
          if (k >= 2) {
            auto sl = lvl(2 * (k - 2)), tl = sl + 1;
            if (p.act[sl][a] != p.act[sl][b] || p.act[tl][a] != p.act[tl][b]) continue;
          }
          out.push_back({a, b});
        }
      break;
    case PresheafShape::Kind::SemiSimplicial: {
      std::vector<CellId> t(lvl(k + 1));
      std::function<void(int)> rec = [&](int i) {
        if (i > k) {
          out.push_back(t);
          return;
        }
        for (CellId e = 0; e < lower; ++e) {
          bool ok = true;
          // d_j e_i = d_{i-1} e_j for j < i.
          if (k >= 2)
            for (int j = 0; j < i && ok; ++j)
              ok = p.act[face_op(k - 1, j)][e] == p.act[face_op(k - 1, i - 1)][t[lvl(j)]];
          if (!ok) continue;
          t[lvl(i)] = e;
          rec(i + 1);
        }
      };
      rec(0);
      break;
    }
  }
  return out;
}


class ObjectEnumerator {
 public:
  ObjectEnumerator(const PresheafShape& s, std::size_t cap, std::size_t max_objects)
      : s_(s), cap_(cap), max_(max_objects) {}

  std::vector<Presheaf> run() {
    Presheaf p = empty_presheaf(s_);
    level(p, 0, 0);
    std::stable_sort(out_.begin(), out_.end(), [](const Presheaf& a, const Presheaf& b) {
      auto ta = a.total_cells(), tb = b.total_cells();
      if (ta != tb) return ta < tb;
      return a.counts < b.counts;
    });
    return out_;
  }

 private:
  using Tuple = std::vector<CellId>;

  std::vector<Tuple> candidates(const Presheaf& p, int k) const { return boundary_candidates(s_, p, k); }

  void append(Presheaf& p, int k, const Tuple& t) const {
    CellId id = static_cast<CellId>(p.counts[lvl(k)]++);
    (void)id;
    if (s_.kind == PresheafShape::Kind::SemiSimplicial) {
      for (int i = 0; i <= k; ++i) p.act[face_op(k, i)].push_back(t[lvl(i)]);
    } else {
      p.act[lvl(2 * (k - 1))].push_back(t[0]);
      p.act[lvl(2 * (k - 1) + 1)].push_back(t[1]);
    }
  }

  void level(Presheaf& p, int k, std::size_t used) {
    if (k > s_.top) {
      record(p);
      return;
    }
    Presheaf q = p;
    std::size_t forced = 0;
    if (k > 0 && s_.kind == PresheafShape::Kind::ReflexiveGlobular) {
      auto below = q.counts[lvl(k - 1)];
      if (used + below > cap_) return;
      auto& r = q.act[lvl(2 * s_.top + k - 1)];
      for (CellId x = 0; x < below; ++x) {
        r.push_back(static_cast<CellId>(q.counts[lvl(k)]));
        append(q, k, {x, x});
      }
      forced = below;
    }
    used += forced;
    if (k == 0) {
      for (std::size_t m = 0; used + m <= cap_; ++m) {
        Presheaf r = q;
        r.counts[0] = m;
        level(r, 1, used + m);
      }
      return;
    }
    auto cand = candidates(q, k);
    Tuple dummy;
    std::function<void(Presheaf&, std::size_t, std::size_t)> rec = [&](Presheaf& cur, std::size_t from,
                                                                       std::size_t u) {
      level(cur, k + 1, u);
      if (u >= cap_) return;
      for (std::size_t i = from; i < cand.size(); ++i) {
        Presheaf nxt = cur;
        append(nxt, k, cand[i]);
        rec(nxt, i, u + 1);
      }
    };
    rec(q, 0, used);
  }

  void record(const Presheaf& p) {
    auto h = invariant_hash(p);
    auto& bucket = buckets_[h];
    for (auto idx : bucket)
      if (find_isomorphism(s_, p, out_[idx])) return;
    if (out_.size() >= max_) throw ResourceError("object enumeration exceeds " + std::to_string(max_) + " objects");
    bucket.push_back(out_.size());
    out_.push_back(p);
  }

  const PresheafShape& s_;
  std::size_t cap_;
  std::size_t max_;
  std::vector<Presheaf> out_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

Presheaf random_semisimplicial(Rng& rng, int top, std::size_t max_per_level) {
  auto s = PresheafShape::semisimplicial(top);
  Presheaf p = empty_presheaf(s);
  p.counts[0] = rng.uniform(1, max_per_level);
  for (int k = 1; k <= top; ++k) {
    auto cand = boundary_candidates(s, p, k);
    if (cand.empty()) break;
    auto m = rng.uniform(0, max_per_level);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& t = cand[rng.uniform(0, cand.size() - 1)];
      ++p.counts[lvl(k)];
      for (int j = 0; j <= k; ++j) p.act[face_op(k, j)].push_back(t[lvl(j)]);
    }
  }
  return p;
}

std::vector<Presheaf> enumerate_objects(const PresheafShape& s, std::size_t max_cells, std::size_t max_objects) {
  return ObjectEnumerator(s, max_cells, max_objects).run();
}

}  // namespace glob
