#include "glob/model.hpp"

#include <algorithm>
#include <list>
#include <mutex>
#include <set>
#include <unordered_map>

#include "glob/error.hpp"

namespace glob {

namespace {

std::vector<CellId> flatten(const GlobMap& x) {
  std::vector<CellId> out;
  for (const auto& c : x.components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

struct CacheEntry {
  GlobularSumTable arity;
  GlobularSet carrier;
  std::shared_ptr<const Configurations> configs;
};

constexpr std::size_t kCacheCapacity = 256;

std::mutex cache_mutex;
std::unordered_map<std::uint64_t, std::list<CacheEntry>> cache;
std::size_t cache_size = 0;

std::uint64_t cache_key(const GlobularSumTable& arity, const GlobularSet& carrier) {
  std::uint64_t h = structural_hash(carrier);
  for (int v : arity.interleaved()) h = (h ^ static_cast<std::uint64_t>(v + 1)) * 0x100000001b3ULL;
  return h;
}

bool interpreted(const FillerGenerator& g, int dim_bound) {
  return g.output_dim() <= dim_bound && g.arity.height() <= dim_bound;
}

std::vector<const FillerGenerator*> by_output_dim(const TheoryPresentation& t) {
  auto gens = t.generators();
  std::stable_sort(gens.begin(), gens.end(),
                   [](const auto* a, const auto* b) { return a->output_dim() < b->output_dim(); });
  return gens;
}

// (src, tgt) -> cells of dimension k.
std::map<std::pair<CellId, CellId>, std::vector<CellId>> fillers_by_boundary(const GlobularSet& x, int k) {
  std::map<std::pair<CellId, CellId>, std::vector<CellId>> out;
  for (CellId c = 0; c < x.count(k); ++c) out[{x.source({k, c}), x.target({k, c})}].push_back(c);
  return out;
}

void copy_tables(const ExplicitModel& from, ExplicitModel& to, int max_output) {
  for (const auto* g : to.theory.generators()) {
    if (g->output_dim() > max_output || !to.interprets(*g)) continue;
    auto it = from.tables.find(g->name);
    if (it == from.tables.end()) throw PreconditionError("missing table for " + g->name);
    to.tables[g->name] = it->second;
  }
}

}  // namespace

ModelEvaluator::ModelEvaluator(const ExplicitModel& m) : m_(m) {
  for (const auto* g : m.theory.generators()) gens_[g->name] = g;
}

CellId ModelEvaluator::eval(const GlobularSumTable& ctx, const TermPtr& t, const GlobMap& x) {
  if (t->kind == Term::Kind::Cell) {
    if (static_cast<std::size_t>(t->dim) >= x.components.size() ||
        t->cell >= x.components[static_cast<std::size_t>(t->dim)].size())
      throw TypeError("cell " + to_string(t) + " is not in the configuration's shape");
    return x({t->dim, t->cell});
  }
  auto it = gens_.find(t->op);
  if (it == gens_.end()) throw TypeError("unknown generator " + t->op);
  const auto& g = *it->second;
  if (t->args.size() != g.arity.peaks.size()) throw TypeError("wrong number of arguments in " + to_string(t));
  std::vector<CellId> peaks;
  for (std::size_t p = 0; p < t->args.size(); ++p) {
    if (t->args[p]->dim != g.arity.peaks[p]) throw TypeError("argument dimension mismatch in " + to_string(t));
    peaks.push_back(eval(ctx, t->args[p], x));
  }
  return apply(g, peaks, t);
}

CellId ModelEvaluator::apply(const FillerGenerator& g, const std::vector<CellId>& peaks, const TermPtr& witness) {
  if (!interpreted(g, m_.dim_bound())) throw DimensionError("generator " + g.name + " is not interpreted");
  auto tab = m_.tables.find(g.name);
  if (tab == m_.tables.end()) throw TableError("no table for generator " + g.name);
  auto y = config_from_peaks(g, peaks);
  auto idx = configs(g).find(y);
  if (!idx) throw TypeError("ill-typed tuple for " + g.name + (witness ? " in " + to_string(witness) : ""));
  if (*idx >= tab->second.size()) throw TableError("table of " + g.name + " is not total");
  return tab->second[*idx];
}

const Configurations& ModelEvaluator::configs(const FillerGenerator& g) {
  auto it = configs_.find(g.name);
  if (it == configs_.end()) it = configs_.emplace(g.name, configurations(g.arity, m_.carrier)).first;
  return *it->second;
}

GlobMap ModelEvaluator::config_from_peaks(const FillerGenerator& g, const std::vector<CellId>& peaks) const {
  const auto& r = realized(g.arity);
  GlobMap y;
  y.components.resize(r.shape.counts.size());
  for (std::size_t d = 0; d < r.shape.counts.size(); ++d) {
    y.components[d].resize(r.shape.counts[d]);
    for (CellId c = 0; c < r.shape.counts[d]; ++c) {
      const auto& o = r.origin[d][c];
      int p = g.arity.peaks[o.peak];
      CellId v = peaks[o.peak];
      if (v >= m_.carrier.count(p)) throw TypeError("cell index out of range in a tuple for " + g.name);
      if (static_cast<int>(d) == p)
        y.components[d][c] = v;
      else
        y.components[d][c] = iterated_boundary(m_.carrier, {p, v}, static_cast<int>(d),
                                               o.disk_cell == 0 ? Side::Source : Side::Target);
    }
  }
  return y;
}

std::optional<std::size_t> Configurations::find(const GlobMap& x) const {
  auto it = index.find(flatten(x));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::shared_ptr<const Configurations> configurations(const GlobularSumTable& arity, const GlobularSet& carrier) {
  auto key = cache_key(arity, carrier);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end())
      for (const auto& e : it->second)
        if (e.arity == arity && e.carrier == carrier) return e.configs;
  }
  auto c = std::make_shared<Configurations>();
  HomOptions plain;
  plain.respect_reflexivity = false;
  c->maps = hom_set(realized(arity).shape, underlying(carrier), plain);
  for (std::size_t i = 0; i < c->maps.size(); ++i) c->index.emplace(flatten(c->maps[i]), i);
  std::shared_ptr<const Configurations> out = c;
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache_size >= kCacheCapacity) {
    cache.clear();
    cache_size = 0;
  }
  cache[key].push_back({arity, carrier, out});
  ++cache_size;
  return out;
}

bool ExplicitModel::interprets(const FillerGenerator& g) const { return interpreted(g, dim_bound()); }

CellId eval_term(const ExplicitModel& m, const GlobularSumTable& ctx, const TermPtr& t, const GlobMap& x) {
  ModelEvaluator ev(m);
  return ev.eval(ctx, t, x);
}

ModelReport check_model(const ExplicitModel& m) {
  ModelReport report;
  for (const auto& v : validate_globular(m.carrier))
    report.push_back({"carrier", v.relation, 0, v.detail});
  if (!report.empty()) return report;
  ModelEvaluator ev(m);
  std::set<std::string> known;
  for (const auto* g : m.theory.generators()) {
    known.insert(g->name);
    if (!m.interprets(*g)) continue;
    auto tab = m.tables.find(g->name);
    const auto& cfg = ev.configs(*g);
    if (tab == m.tables.end() || tab->second.size() != cfg.maps.size()) {
      report.push_back({"table", g->name, 0, "table is not total"});
      continue;
    }
    int out = g->output_dim();
    for (std::size_t i = 0; i < cfg.maps.size(); ++i) {
      CellId v = tab->second[i];
      if (v >= m.carrier.count(out)) {
        report.push_back({"table", g->name, i, "value out of range"});
        continue;
      }
      for (auto side : {Side::Source, Side::Target}) {
        const auto& h = side == Side::Source ? g->h1 : g->h2;
        try {
          CellId expected = ev.eval(g->arity, h, cfg.maps[i]);
          CellId actual = m.carrier.boundary({out, v}, side);
          if (expected != actual)
            report.push_back({side == Side::Source ? "source" : "target", g->name, i,
                              "boundary is " + std::to_string(actual) + ", expected " + std::to_string(expected)});
        } catch (const Error& e) {
          report.push_back({side == Side::Source ? "source" : "target", g->name, i, e.what()});
        }
      }
    }
  }
  for (const auto& [name, tab] : m.tables)
    if (!known.count(name)) report.push_back({"table", name, 0, "no such generator"});
  for (const auto* e : m.theory.equations()) {
    if (e->k > m.dim_bound() || e->arity.height() > m.dim_bound()) continue;
    auto cfg = configurations(e->arity, m.carrier);
    for (std::size_t i = 0; i < cfg->maps.size(); ++i) {
      try {
        CellId a = ev.eval(e->arity, e->lhs, cfg->maps[i]);
        CellId b = ev.eval(e->arity, e->rhs, cfg->maps[i]);
        if (a != b)
          report.push_back({"equation", e->name, i, std::to_string(a) + " != " + std::to_string(b)});
      } catch (const Error& err) {
        report.push_back({"equation", e->name, i, err.what()});
      }
    }
  }
  return report;
}

void fill_forced_tables(ExplicitModel& m, int from_dim) {
  std::map<int, std::map<std::pair<CellId, CellId>, std::vector<CellId>>> fillers;
  for (const auto* g : by_output_dim(m.theory)) {
    int out = g->output_dim();
    if (out < from_dim || !m.interprets(*g) || m.tables.count(g->name)) continue;
    if (!fillers.count(out)) fillers[out] = fillers_by_boundary(m.carrier, out);
    const auto& fill = fillers[out];
    ModelEvaluator ev(m);
    const auto& cfg = ev.configs(*g);
    std::vector<CellId> table(cfg.maps.size());
    for (std::size_t i = 0; i < cfg.maps.size(); ++i) {
      CellId s = ev.eval(g->arity, g->h1, cfg.maps[i]);
      CellId t = ev.eval(g->arity, g->h2, cfg.maps[i]);
      auto it = fill.find({s, t});
      std::size_t n = it == fill.end() ? 0 : it->second.size();
      if (n != 1)
        throw SoundnessError("generator " + g->name + " at configuration " + std::to_string(i) + " has " +
                             std::to_string(n) + " candidate fillers");
      table[i] = it->second.front();
    }
    m.tables[g->name] = std::move(table);
  }
}

ExplicitModel terminal_model(const TheoryPresentation& t, int dim_bound) {
  ExplicitModel m{t, terminal(dim_bound), {}};
  fill_forced_tables(m, 0);
  return m;
}

bool is_model_morphism(const ExplicitModel& x, const ExplicitModel& y, const GlobMap& f) {
  if (x.dim_bound() != y.dim_bound()) return false;
  if (!is_morphism(underlying(x.carrier), underlying(y.carrier), f, false)) return false;
  ModelEvaluator ex(x), ey(y);
  for (const auto* g : x.theory.generators()) {
    if (!x.interprets(*g) || !y.theory.find(g->name)) continue;
    auto tx = x.tables.find(g->name);
    auto ty = y.tables.find(g->name);
    if (tx == x.tables.end() || ty == y.tables.end()) return false;
    const auto& cx = ex.configs(*g);
    const auto& cy = ey.configs(*g);
    int out = g->output_dim();
    for (std::size_t i = 0; i < cx.maps.size(); ++i) {
      auto j = cy.find(compose(f, cx.maps[i]));
      if (!j) return false;
      if (f({out, tx->second[i]}) != ty->second[*j]) return false;
    }
  }
  return true;
}

ModelUnit trunc_lower(const ExplicitModel& x, int n) {
  int d = x.dim_bound();
  if (n < 0 || n > d) throw DimensionError("truncation dimension " + std::to_string(n) + " outside 0.." + std::to_string(d));
  if (!is_coskeletal(x.carrier, n + 1)) throw PreconditionError("model is not " + std::to_string(n + 1) + "-coskeletal");
  auto tr = truncate(x.carrier, n);
  ModelUnit out{{x.theory, constant_extension(tr.object, d), {}}, truncation_unit(x.carrier, n)};
  auto& m = out.model;
  ModelEvaluator ex(x), em(m);
  for (const auto* g : x.theory.generators()) {
    int k = g->output_dim();
    if (k > n || !x.interprets(*g)) continue;
    const auto& src_table = x.tables.at(g->name);
    const auto& cx = ex.configs(*g);
    const auto& cm = em.configs(*g);
    std::vector<std::optional<CellId>> induced(cm.maps.size());
    for (std::size_t i = 0; i < cx.maps.size(); ++i) {
      auto j = cm.find(compose(out.unit, cx.maps[i]));
      if (!j) throw SoundnessError("quotient of a configuration of " + g->name + " is not a configuration");
      CellId v = out.unit({k, src_table[i]});
      if (induced[*j] && *induced[*j] != v)
        throw SoundnessError("induced table of " + g->name + " is ill-defined at configuration " + std::to_string(*j));
      induced[*j] = v;
    }
    std::vector<CellId> table;
    for (std::size_t j = 0; j < induced.size(); ++j) {
      if (!induced[j]) throw SoundnessError("induced table of " + g->name + " misses configuration " + std::to_string(j));
      table.push_back(*induced[j]);
    }
    m.tables[g->name] = std::move(table);
  }
  fill_forced_tables(m, n + 1);
  return out;
}

GlobMap trunc_lower_map(const ExplicitModel& x, const ExplicitModel& y, const GlobMap& f, int n) {
  auto tx = truncate(x.carrier, n).object;
  return constant_extension_map(tx, truncate_map(x.carrier, y.carrier, f, n), n, x.dim_bound());
}

ExplicitModel restrict_to_truncation(const ExplicitModel& x, int n) {
  if (!is_truncated(x.carrier, n)) throw PreconditionError("model is not " + std::to_string(n) + "-truncated");
  ExplicitModel m{truncate_theory(x.theory, n), skeleton(x.carrier, n), {}};
  copy_tables(x, m, n);
  return m;
}

ExplicitModel trunc_upper(const ExplicitModel& y, const TheoryPresentation& c, int d) {
  int n = y.dim_bound();
  if (d < n) throw DimensionError("extension bound below the model's dimension");
  ExplicitModel m{c, constant_extension(y.carrier, d), {}};
  copy_tables(y, m, n);
  fill_forced_tables(m, n + 1);
  return m;
}

ExplicitModel cosk_lower(const ExplicitModel& x, int n) {
  if (n < 0) throw DimensionError("negative dimension");
  ExplicitModel m{x.theory, skeleton(x.carrier, std::min(n, x.dim_bound())), {}};
  copy_tables(x, m, n);
  return m;
}

ExplicitModel cosk_upper(const ExplicitModel& x, int d) {
  int n = x.dim_bound();
  if (d < n) throw DimensionError("coskeleton bound below the model's dimension");
  ExplicitModel m{x.theory, coskeleton(x.carrier, d), {}};
  copy_tables(x, m, n);
  fill_forced_tables(m, n + 1);
  return m;
}

bool is_truncated(const ExplicitModel& m, int n) { return is_truncated(m.carrier, n); }
bool is_coskeletal(const ExplicitModel& m, int n) { return is_coskeletal(m.carrier, n); }

std::vector<std::vector<CellId>> homotopy_group(const GlobularSet& x, int k,
                                                std::optional<std::pair<CellId, CellId>> base) {
  if (k < 0 || k > x.dim_bound()) throw DimensionError("homotopy dimension outside the dimension bound");
  std::vector<CellId> cells;
  if (k == 0) {
    for (CellId c = 0; c < x.count(0); ++c) cells.push_back(c);
  } else {
    if (!base) throw PreconditionError("a base pair is required for k >= 1");
    auto [a, b] = *base;
    if (a >= x.count(k - 1) || b >= x.count(k - 1) || !parallel(x, {k - 1, a}, {k - 1, b}))
      throw PreconditionError("base cells are not parallel");
    for (CellId c = 0; c < x.count(k); ++c)
      if (x.source({k, c}) == a && x.target({k, c}) == b) cells.push_back(c);
  }
  auto q = connected_classes(x, k);
  std::map<CellId, std::vector<CellId>> groups;
  for (auto c : cells) groups[q.class_of[c]].push_back(c);
  std::vector<std::vector<CellId>> out;
  for (auto& [cls, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<CellId>> homotopy_group(const ExplicitModel& m, int k,
                                                std::optional<std::pair<CellId, CellId>> base) {
  return homotopy_group(m.carrier, k, base);
}

bool is_weak_equivalence(const GlobularSet& x, const GlobularSet& y, const GlobMap& f) {
  if (x.dim_bound() != y.dim_bound() || !is_morphism(underlying(x), underlying(y), f, false))
    throw PreconditionError("not a morphism of carriers");
  for (int k = 0; k <= x.dim_bound(); ++k) {
    auto qx = connected_classes(x, k);
    auto qy = connected_classes(y, k);
    // Classes of X and Y grouped by their base pair (k >= 1) or all together (k = 0).
    using Base = std::pair<CellId, CellId>;
    auto base_of = [&](const GlobularSet& s, CellId c) -> Base {
      return k == 0 ? Base{0, 0} : Base{s.source({k, c}), s.target({k, c})};
    };
    std::map<Base, std::set<CellId>> by_base_x, by_base_y;
    std::map<CellId, CellId> image;  // X class -> Y class
    for (CellId c = 0; c < x.count(k); ++c) {
      by_base_x[base_of(x, c)].insert(qx.class_of[c]);
      image[qx.class_of[c]] = qy.class_of[f({k, c})];
    }
    for (CellId c = 0; c < y.count(k); ++c) by_base_y[base_of(y, c)].insert(qy.class_of[c]);
    std::vector<Base> bases;
    if (k == 0)
      bases.push_back({0, 0});
    else
      bases = parallel_pairs(x, k);
    for (const auto& [a, b] : bases) {
      Base fb = k == 0 ? Base{0, 0} : Base{f({k - 1, a}), f({k - 1, b})};
      std::set<CellId> xs, img;
      if (auto it = by_base_x.find({a, b}); it != by_base_x.end()) xs = it->second;
      for (auto c : xs) img.insert(image[c]);
      if (img.size() != xs.size()) return false;
      std::set<CellId> ys;
      if (auto it = by_base_y.find(fb); it != by_base_y.end()) ys = it->second;
      if (img != ys) return false;
    }
  }
  return true;
}

bool is_weak_equivalence(const ExplicitModel& x, const ExplicitModel& y, const GlobMap& f) {
  if (!is_model_morphism(x, y, f)) throw PreconditionError("not a model morphism");
  return is_weak_equivalence(x.carrier, y.carrier, f);
}

int Presentation::dim() const {
  int d = -1;
  for (const auto& c : cells) d = std::max(d, c.dim);
  return d;
}

std::size_t Presentation::count(int k) const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [k](const auto& c) { return c.dim == k; }));
}

GlobularSet Presentation::to_globular_set(int dim_bound) const {
  auto x = GlobularSet::empty(dim_bound);
  for (const auto& c : cells) {
    if (c.dim > dim_bound) continue;
    if (c.dim == 0)
      x.add_point();
    else
      x.add_cell(c.dim, c.src, c.tgt);
  }
  return x;
}

Presentation attach_cell(const Presentation& p, int dim, CellId src, CellId tgt) {
  if (dim < 0) throw PreconditionError("negative cell dimension");
  if (dim > 0) {
    auto x = p.to_globular_set(std::max(p.dim(), dim));
    if (src >= x.count(dim - 1) || tgt >= x.count(dim - 1))
      throw PreconditionError("boundary refers to an undeclared cell");
    if (!parallel(x, {dim - 1, src}, {dim - 1, tgt})) throw PreconditionError("boundary cells are not parallel");
  }
  auto out = p;
  out.cells.push_back({dim, dim == 0 ? 0 : src, dim == 0 ? 0 : tgt});
  return out;
}

ExplicitModel attach_to_coskeletal(const ExplicitModel& m, int n, int dim, CellId src, CellId tgt) {
  if (dim <= n + 1) throw PreconditionError("only cells above the coskeletal threshold are reflected");
  if (!is_coskeletal(m.carrier, n + 1)) throw PreconditionError("model is not " + std::to_string(n + 1) + "-coskeletal");
  if (dim <= m.dim_bound()) {
    if (src >= m.carrier.count(dim - 1) || tgt >= m.carrier.count(dim - 1) ||
        !parallel(m.carrier, {dim - 1, src}, {dim - 1, tgt}))
      throw PreconditionError("boundary cells are not parallel");
  }
  return cosk_upper(cosk_lower(m, n + 1), m.dim_bound());
}

}  // namespace glob
