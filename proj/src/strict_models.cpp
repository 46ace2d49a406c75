#include "glob/strict_models.hpp"

#include <map>
#include <tuple>

#include "glob/error.hpp"

namespace glob {

namespace {

int reduce(int a, int m) { return ((a % m) + m) % m; }

// The strict value of a generator on the labels of its peak cells.
int strict_label(const std::string& name, const std::vector<int>& in) {
  if (name == "comp0" || name == "comp1" || name == "hcomp") return in[0] + in[1];
  if (name == "inv0" || name == "inv1") return -in[0];
  return 0;
}

struct PairSpec {
  const char* name;
  int k;
  GlobularSumTable arity;
  const char* h1;
  const char* h2;
};

TheoryPresentation add_stage(const TheoryPresentation& t, const std::vector<PairSpec>& specs) {
  TheoryIndex idx(t);
  std::vector<Pair> pairs;
  for (const auto& s : specs)
    pairs.push_back({s.name, s.k, s.arity, parse_term(idx, s.arity, s.h1), parse_term(idx, s.arity, s.h2)});
  return extend_theory(t, pairs);
}

using Key = std::tuple<CellId, CellId, int>;

class Builder {
 public:
  Builder(const TheoryPresentation& t, const StrictStructure& s, int n, Rng& rng, const LabeledModel* over,
          const StrictMap* phi)
      : t_(t), s_(s), n_(n), rng_(rng), over_(over), phi_(phi) {
    if (n < 1 || n > 2) throw PreconditionError("labelled models are built for n = 1 or 2");
    if (over && over->n != n) throw PreconditionError("target model has a different level");
    out_.model.theory = t;
    out_.model.carrier = GlobularSet::empty(n + 2);
    out_.strict = s;
    out_.n = n;
    out_.labels.assign(static_cast<std::size_t>(n) + 3, {});
    map_.components.assign(static_cast<std::size_t>(n) + 3, {});
  }

  LabeledMorphism run() {
    build_cells();
    build_tables();
    return {std::move(out_), std::move(map_)};
  }

 private:
  int copies() { return rng_.coin(0.3) ? 2 : 1; }
  int modulus(int k) const { return k == 1 ? s_.g : s_.m; }

  int image_label(int k, int l) const {
    if (k == 0) return phi_->objects[static_cast<std::size_t>(l)];
    return reduce(l, k == 1 ? over_->strict.g : over_->strict.m);
  }

  void add(int k, CellId a, CellId b, int label, std::optional<CellId> image) {
    auto& x = out_.model.carrier;
    if (k == 0)
      x.add_point();
    else
      x.add_cell(k, a, b);
    out_.labels[static_cast<std::size_t>(k)].push_back(label);
    if (image) map_.components[static_cast<std::size_t>(k)].push_back(*image);
  }

  // Target cells of dimension k indexed by (src, tgt, label); points use (0, 0, object).
  std::map<Key, std::vector<CellId>> target_index(int k) const {
    std::map<Key, std::vector<CellId>> idx;
    const auto& y = over_->model.carrier;
    for (CellId c = 0; c < y.count(k); ++c) {
      int l = over_->labels[static_cast<std::size_t>(k)][c];
      if (k == 0)
        idx[{0, 0, l}].push_back(c);
      else
        idx[{y.source({k, c}), y.target({k, c}), l}].push_back(c);
    }
    return idx;
  }

  void attach_labelled(int k, CellId a, CellId b, int label) {
    if (!over_) {
      for (int i = copies(); i > 0; --i) add(k, a, b, label, std::nullopt);
      return;
    }
    CellId fa = k == 0 ? 0 : map_(CellRef{k - 1, a});
    CellId fb = k == 0 ? 0 : map_(CellRef{k - 1, b});
    auto it = target_.find({fa, fb, image_label(k, label)});
    if (it == target_.end()) throw SoundnessError("strict map has no image cell");
    for (auto y : it->second)
      for (int i = copies(); i > 0; --i) add(k, a, b, label, y);
  }

  void build_cells() {
    auto& x = out_.model.carrier;
    if (over_) target_ = target_index(0);
    for (std::size_t o = 0; o < s_.component.size(); ++o) attach_labelled(0, 0, 0, static_cast<int>(o));
    for (int k = 1; k <= n_; ++k) {
      if (over_) target_ = target_index(k);
      auto prev = x.count(k - 1);
      const auto& pl = out_.labels[static_cast<std::size_t>(k - 1)];
      for (CellId a = 0; a < prev; ++a)
        for (CellId b = 0; b < prev; ++b) {
          bool allowed = k == 1 ? s_.component[static_cast<std::size_t>(pl[a])] ==
                                      s_.component[static_cast<std::size_t>(pl[b])]
                                : pl[a] == pl[b] && parallel(x, {k - 1, a}, {k - 1, b});
          if (!allowed) continue;
          for (int l = 0; l < modulus(k); ++l) attach_labelled(k, a, b, l);
        }
    }
    // Exactly one (n+1)-cell between equally labelled parallel n-cells, then a loop on each.
    int top = n_ + 1;
    std::map<Key, std::vector<CellId>> groups;
    for (CellId c = 0; c < x.count(n_); ++c)
      groups[{x.source({n_, c}), x.target({n_, c}), out_.labels[static_cast<std::size_t>(n_)][c]}].push_back(c);
    for (const auto& [key, cells] : groups)
      for (auto a : cells)
        for (auto b : cells) {
          std::optional<CellId> image;
          if (over_) image = unique_filler(over_->model.carrier, top, map_(CellRef{n_, a}), map_(CellRef{n_, b}));
          if (over_ && !image) throw SoundnessError("no unique image cell above the labelled dimensions");
          add(top, a, b, -1, image);
        }
    for (CellId c = 0; c < x.count(top); ++c) {
      std::optional<CellId> image;
      if (over_) image = unique_filler(over_->model.carrier, top + 1, map_(CellRef{top, c}), map_(CellRef{top, c}));
      add(top + 1, c, c, -1, image);
    }
  }

  void build_tables() {
    auto& m = out_.model;
    auto gens = t_.generators();
    std::stable_sort(gens.begin(), gens.end(),
                     [](const auto* a, const auto* b) { return a->output_dim() < b->output_dim(); });
    ModelEvaluator ev(m);
    std::optional<ModelEvaluator> ey;
    if (over_) ey.emplace(over_->model);
    for (const auto* g : gens) {
      int k = g->output_dim();
      if (k > n_ || !m.interprets(*g)) continue;
      std::map<Key, std::vector<CellId>> cands;
      for (CellId c = 0; c < m.carrier.count(k); ++c)
        cands[{m.carrier.source({k, c}), m.carrier.target({k, c}), out_.labels[static_cast<std::size_t>(k)][c]}]
            .push_back(c);
      const auto& r = realized(g->arity);
      const auto& cfg = ev.configs(*g);
      std::vector<CellId> table;
      for (const auto& x : cfg.maps) {
        std::vector<int> in;
        for (std::size_t p = 0; p < g->arity.peaks.size(); ++p) {
          auto cell = r.peak_cell(p);
          in.push_back(out_.labels[static_cast<std::size_t>(cell.dim)][x(cell)]);
        }
        int label = reduce(strict_label(g->name, in), modulus(k));
        CellId s = ev.eval(g->arity, g->h1, x);
        CellId t = ev.eval(g->arity, g->h2, x);
        std::vector<CellId> options;
        if (auto it = cands.find({s, t, label}); it != cands.end()) options = it->second;
        if (over_) {
          auto j = ey->configs(*g).find(compose(map_, x));
          if (!j) throw SoundnessError("image of a configuration is not a configuration");
          CellId want = over_->model.tables.at(g->name)[*j];
          std::erase_if(options, [&](CellId c) { return map_(CellRef{k, c}) != want; });
        }
        if (options.empty()) throw SoundnessError("no labelled candidate for " + g->name);
        table.push_back(options[rng_.uniform(0, options.size() - 1)]);
      }
      m.tables[g->name] = std::move(table);
    }
    fill_forced_tables(m, n_ + 1);
  }

  const TheoryPresentation& t_;
  const StrictStructure& s_;
  int n_;
  Rng& rng_;
  const LabeledModel* over_;
  const StrictMap* phi_;
  LabeledModel out_;
  GlobMap map_;
  std::map<Key, std::vector<CellId>> target_;
};

StrictStructure random_structure(Rng& rng, int n) {
  StrictStructure s;
  std::size_t objects = rng.uniform(1, 2);
  for (std::size_t o = 0; o < objects; ++o) s.component.push_back(o == 0 ? 0 : static_cast<int>(rng.uniform(0, 1)));
  s.g = static_cast<int>(rng.uniform(1, 2));
  s.m = n >= 2 ? static_cast<int>(rng.uniform(1, 2)) : 1;
  return s;
}

}  // namespace

TheoryPresentation groupoid_test_theory() {
  const GlobularSumTable d0 = globe_table(0), d1 = globe_table(1), d2 = globe_table(2), d3 = globe_table(3);
  const GlobularSumTable two{{1, 1}, {0}}, three{{1, 1, 1}, {0, 0}};
  const GlobularSumTable vert{{2, 2}, {1}}, vert3{{2, 2, 2}, {1, 1}}, horiz{{2, 2}, {0}};
  auto t = globe_theory(std::nullopt);
  t = add_stage(t, {
                       {"comp0", 0, two, "(cell 0 0)", "(cell 0 2)"},
                       {"unit0", 0, d0, "(cell 0 0)", "(cell 0 0)"},
                       {"inv0", 0, d1, "(cell 0 1)", "(cell 0 0)"},
                   });
  t = add_stage(t, {
                       {"comp1", 1, vert, "(src (cell 2 0))", "(tgt (cell 2 1))"},
                       {"unit1", 1, d1, "(cell 1 0)", "(cell 1 0)"},
                       {"inv1", 1, d2, "(tgt (cell 2 0))", "(src (cell 2 0))"},
                       {"hcomp", 1, horiz, "(comp0 (src (cell 2 0)) (src (cell 2 1)))",
                        "(comp0 (tgt (cell 2 0)) (tgt (cell 2 1)))"},
                       {"assoc0", 1, three, "(comp0 (comp0 (cell 1 0) (cell 1 1)) (cell 1 2))",
                        "(comp0 (cell 1 0) (comp0 (cell 1 1) (cell 1 2)))"},
                       {"lunit0", 1, d1, "(comp0 (unit0 (src (cell 1 0))) (cell 1 0))", "(cell 1 0)"},
                       {"runit0", 1, d1, "(comp0 (cell 1 0) (unit0 (tgt (cell 1 0))))", "(cell 1 0)"},
                       {"linv0", 1, d1, "(comp0 (inv0 (cell 1 0)) (cell 1 0))", "(unit0 (tgt (cell 1 0)))"},
                       {"rinv0", 1, d1, "(comp0 (cell 1 0) (inv0 (cell 1 0)))", "(unit0 (src (cell 1 0)))"},
                   });
  t = add_stage(t, {
                       {"unit2", 2, d2, "(cell 2 0)", "(cell 2 0)"},
                       {"assoc1", 2, vert3, "(comp1 (comp1 (cell 2 0) (cell 2 1)) (cell 2 2))",
                        "(comp1 (cell 2 0) (comp1 (cell 2 1) (cell 2 2)))"},
                   });
  t = add_stage(t, {{"unit3", 3, d3, "(cell 3 0)", "(cell 3 0)"}});
  return t;
}

LabeledModel random_labeled_model(const TheoryPresentation& t, const StrictStructure& s, int n, Rng& rng) {
  return Builder(t, s, n, rng, nullptr, nullptr).run().source;
}

LabeledMorphism random_model_over(const LabeledModel& target, const StrictStructure& s, const StrictMap& phi,
                                  Rng& rng) {
  if (phi.objects.size() != s.component.size()) throw PreconditionError("object map has the wrong size");
  if (target.strict.g == 0 || s.g % target.strict.g != 0 || s.m % target.strict.m != 0)
    throw PreconditionError("label moduli are not compatible");
  return Builder(target.model.theory, s, target.n, rng, &target, &phi).run();
}

ModelPairInstance random_model_pair(const TheoryPresentation& t, int n, Rng& rng) {
  auto sy = random_structure(rng, n);
  StrictStructure sx = sy;
  StrictMap phi;
  for (std::size_t o = 0; o < sy.component.size(); ++o) phi.objects.push_back(static_cast<int>(o));
  bool iso = false;
  switch (rng.uniform(0, 4)) {
    case 0:
      iso = true;
      break;
    case 1:  // labels of 1-cells collapse
      sx.g = 2 * sy.g;
      break;
    case 2:  // labels of 2-cells collapse, or an extra component collapses at level 1
      if (n >= 2) {
        sx.m = 2 * sy.m;
      } else {
        sx.component.push_back(sy.component.back() + 1);
        phi.objects.push_back(0);
      }
      break;
    case 3:  // a new component is glued onto object 0
      sx.component.push_back(*std::max_element(sy.component.begin(), sy.component.end()) + 1);
      phi.objects.push_back(0);
      break;
    default:  // the target has a component the source misses
      sy.component.push_back(*std::max_element(sy.component.begin(), sy.component.end()) + 1);
      break;
  }
  ModelPairInstance out;
  out.target = random_labeled_model(t, sy, n, rng);
  out.over = random_model_over(out.target, sx, phi, rng);
  out.strict_iso = iso;
  return out;
}

}  // namespace glob
