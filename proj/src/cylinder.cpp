#include "glob/cylinder.hpp"

#include "glob/error.hpp"
#include "glob/globular_sum.hpp"

namespace glob {

namespace {

std::size_t lvl(int k) { return static_cast<std::size_t>(k); }

Presentation disk_presentation(int k) {
  Presentation p;
  for (int d = 0; d <= k; ++d) {
    int copies = d < k ? 2 : 1;
    for (int i = 0; i < copies; ++i) p = attach_cell(p, d, 0, d == 0 ? 0 : 1);
  }
  return p;
}

Presentation sphere_presentation(int k) {
  Presentation p;
  for (int d = 0; d < k; ++d)
    for (int i = 0; i < 2; ++i) p = attach_cell(p, d, 0, d == 0 ? 0 : 1);
  return p;
}

GlobularSet lift(const GlobularSet& x, int d) { return with_dim_bound(x, d); }

GlobMap pad(GlobMap f, int d) {
  f.components.resize(lvl(d + 1));
  return f;
}

// Identity below `top`, every top cell sent to cell 0.
GlobMap fold_map(int top) {
  GlobMap f;
  for (int d = 0; d < top; ++d) f.components.push_back({0, 1});
  f.components.push_back({0, 0});
  return f;
}

}  // namespace

TermPtr find_unit(const TheoryPresentation& t, int k, std::size_t depth) {
  auto ctx = globe_table(k);
  auto id = make_cell(k, 0);
  for (const auto* g : t.generators())
    if (g->k == k && g->arity == ctx && structurally_equal(g->h1, id) && structurally_equal(g->h2, id))
      return generic_term(*g);
  TheoryIndex idx(t);
  for (const auto& term : enumerate_terms(idx, ctx, k + 1, depth))
    if (structurally_equal(boundary(idx, ctx, term, Side::Source), id) &&
        structurally_equal(boundary(idx, ctx, term, Side::Target), id))
      return term;
  throw SearchFailure("no unit: the pair ((cell " + std::to_string(k) + " 0), (cell " + std::to_string(k) +
                      " 0)) on D" + std::to_string(k) + " has no filler within bounds");
}

std::size_t generator_count(const GlobularSet& x) {
  auto n = x.total_cells();
  if (!x.is_reflexive()) return n;
  for (int k = 0; k < x.dim_bound(); ++k) n -= x.count(k);
  return n;
}

MorId GroupoidUniverse::morphism(ObjId a, ObjId b, const GlobMap& on_generators) const {
  const auto& u = universe;
  std::vector<std::vector<std::optional<CellId>>> fixed(u.objects[a].counts.size());
  for (std::size_t l = 0; l < fixed.size(); ++l) {
    fixed[l].assign(u.objects[a].counts[l], std::nullopt);
    if (l < on_generators.components.size())
      for (CellId c = 0; c < on_generators.components[l].size(); ++c) fixed[l][c] = on_generators.components[l][c];
  }
  PresheafHomOptions o;
  o.fixed = &fixed;
  o.limit = 1;
  auto found = hom_set(u.shape, u.objects[a], u.objects[b], o);
  if (found.empty()) throw PreconditionError("no morphism with the prescribed generator images");
  return *u.find_morphism(a, b, found[0]);
}

GroupoidUniverse groupoid_precyl(const TheoryPresentation& t, int n, bool homotopical, const GroupoidBounds& b) {
  if (n < 0) throw DimensionError("negative level");
  if (!t.trunc_dim || *t.trunc_dim != n + 1)
    throw PreconditionError("the theory must be truncated at " + std::to_string(n + 1));
  for (int k = 0; k <= n; ++k) find_unit(t, k);
  const int d = n + 1;
  auto shape = PresheafShape::globular(d, true);
  GroupoidUniverse g;
  g.n = n;
  g.homotopical = homotopical;

  auto add = [&](std::optional<Presentation> p, const GlobularSet& carrier) -> ObjId {
    auto ps = from_globular(carrier);
    for (ObjId i = 0; i < g.objects.size(); ++i)
      if (find_isomorphism(shape, ps, from_globular(g.objects[i].carrier))) return i;
    g.objects.push_back({std::move(p), carrier});
    return static_cast<ObjId>(g.objects.size() - 1);
  };
  for (int k = 0; k <= d + 1; ++k) g.spheres.push_back(add(sphere_presentation(k), free_reflexive(sphere(k), d)));
  for (int k = 0; k <= d; ++k) g.disks.push_back(add(disk_presentation(k), free_reflexive(disk(k), d)));

  auto cap = b.max_generators ? b.max_generators : generator_count(g.objects[g.spheres.back()].carrier);
  auto build = [&] {
    std::vector<Presheaf> objs;
    for (const auto& o : g.objects) objs.push_back(from_globular(o.carrier));
    g.universe = build_universe(shape, objs);
    for (ObjId i = 0; i < g.objects.size(); ++i)
      g.universe.cat.object_names[i] = "G" + std::to_string(i);
    for (int k = 0; k <= d; ++k) g.universe.cat.object_names[g.disks[lvl(k)]] = "D" + std::to_string(k);
    for (int k = 1; k <= d + 1; ++k) g.universe.cat.object_names[g.spheres[lvl(k)]] = "S" + std::to_string(k);
    g.universe.cat.object_names[g.spheres[0]] = "empty";
  };
  build();
  for (int round = 0; round < b.closure_rounds; ++round) {
    auto before = g.objects.size();
    const auto& u = g.universe;
    const auto& c = u.cat;
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (!c.cofib[f]) continue;
      for (auto h : c.out(c.src[f])) {
        if (c.pushout(f, h)) continue;
        auto po = pushout(shape, u.objects[c.src[f]], u.objects[c.tgt[f]], u.objects[c.tgt[h]], u.maps[f], u.maps[h]);
        auto carrier = to_globular(shape, po.object);
        if (generator_count(carrier) <= cap) add(std::nullopt, carrier);
      }
    }
    if (g.objects.size() == before) break;
    build();
  }
  if (homotopical) {
    for (int k = 0; k < d; ++k)
      g.seeds.push_back(g.morphism(g.disks[lvl(k)], g.disks[lvl(k + 1)], globe_face(k, k + 1, Side::Source)));
    g.seeds.push_back(g.morphism(g.disks[lvl(d)], g.spheres[lvl(d + 1)], identity_map(disk(d))));
    g.universe.cat = saturate_equivalences(g.universe.cat, g.seeds);
  }
  return g;
}

bool RelativeCylinder::verified() const {
  return pushout_identity && next_pushout_identity && retraction_source == Tri::True &&
         retraction_target == Tri::True;
}

namespace {

bool codiagonal_identity(int k) {
  int d = k + 1;
  auto po = pushout(lift(sphere(k), d), lift(disk(k), d), lift(disk(k), d), pad(sphere_inclusion(k), d),
                    pad(sphere_inclusion(k), d));
  return isomorphic(po.object, lift(sphere(k + 1), d));
}

}  // namespace

RelativeCylinder relative_cylinder(int k, const TheoryPresentation& t) {
  if (!t.trunc_dim) throw PreconditionError("relative cylinders need a truncated theory");
  int top = *t.trunc_dim;
  if (k < 0 || k > top) throw DimensionError("relative cylinder index outside 0.." + std::to_string(top));
  RelativeCylinder r;
  r.k = k;
  r.top = k == top;
  r.boundary = sphere(k + 1);
  r.base = disk(k);
  r.pushout_identity = codiagonal_identity(k);
  r.next_pushout_identity = codiagonal_identity(k + 1);
  if (!r.top) {
    r.cylinder = disk(k + 1);
    r.cofibration = sphere_inclusion(k + 1);
    r.unit = find_unit(t, k);
    TheoryIndex idx(t);
    auto ctx = globe_table(k);
    auto id = make_cell(k, 0);
    r.retraction_source = term_equal(t, ctx, boundary(idx, ctx, r.unit, Side::Source), id);
    r.retraction_target = term_equal(t, ctx, boundary(idx, ctx, r.unit, Side::Target), id);
  } else {
    r.cylinder = r.boundary;
    r.cofibration = identity_map(r.boundary);
    r.fold = fold_map(k);
    GlobMap sigma = identity_map(disk(k));
    GlobMap tau = sigma;
    tau.components[lvl(k)] = {1};
    auto id = identity_map(disk(k));
    r.retraction_source = compose(r.fold, sigma) == id ? Tri::True : Tri::False;
    r.retraction_target = compose(r.fold, tau) == id ? Tri::True : Tri::False;
  }
  return r;
}

CylinderChain standard_chain(const GroupoidUniverse& g) {
  const auto& c = g.cat();
  int n = g.n, d = n + 1;
  CylinderChain ch;
  ch.n = n;
  for (int k = 0; k <= d; ++k) ch.objects.push_back(g.disks[lvl(k)]);
  ch.objects.push_back(g.spheres[lvl(d + 1)]);
  ch.cofibrations.push_back(c.hom(c.initial, g.disks[0]).at(0));
  for (int k = 1; k <= d; ++k)
    ch.cofibrations.push_back(g.morphism(g.spheres[lvl(k)], g.disks[lvl(k)], sphere_inclusion(k)));
  ch.cofibrations.push_back(c.identity[g.spheres[lvl(d + 1)]]);
  for (int k = 1; k <= d; ++k) {
    // Lower cells fixed, the two (k-1)-cells folded; the top cell has a unique degenerate image.
    GlobMap on = fold_map(k - 1);
    ch.retractions.push_back(g.morphism(g.disks[lvl(k)], g.disks[lvl(k - 1)], on));
  }
  ch.retractions.push_back(g.morphism(g.spheres[lvl(d + 1)], g.disks[lvl(d)], fold_map(d)));
  return ch;
}

bool cotruncation_test(const FinitePreCylCat& c, const CylinderChain& ch) {
  auto stages = static_cast<std::size_t>(ch.n + 3);
  if (ch.objects.size() != stages || ch.cofibrations.size() != stages || ch.retractions.size() != stages - 1)
    throw ValidationError("cylinder chain has " + std::to_string(ch.objects.size()) + " stages, expected I^0 .. I^" +
                          std::to_string(ch.n + 2));
  auto m = c.morphism_count();
  for (auto f : ch.cofibrations)
    if (f >= m) throw ValidationError("unknown morphism in the chain");
  for (auto f : ch.retractions)
    if (f >= m) throw ValidationError("unknown morphism in the chain");
  auto c0 = ch.cofibrations[0];
  if (c.src[c0] != c.initial || c.tgt[c0] != ch.objects[0] || !c.cofib[c0])
    throw ValidationError("stage 0 is not a cofibration from the initial object");
  bool all_marked = true;
  const PushoutEntry* last = nullptr;
  for (std::size_t k = 1; k < stages; ++k) {
    auto prev = ch.cofibrations[k - 1];
    const auto* e = c.pushout(prev, prev);
    if (!e) throw ValidationError("no chosen pushout for the codiagonal at stage " + std::to_string(k));
    auto ck = ch.cofibrations[k], rk = ch.retractions[k - 1];
    if (c.src[ck] != e->object || c.tgt[ck] != ch.objects[k])
      throw ValidationError("stage " + std::to_string(k) + " cofibration has the wrong endpoints");
    if (!c.cofib[ck]) throw ValidationError("stage " + std::to_string(k) + " first map is not a cofibration");
    if (c.src[rk] != ch.objects[k] || c.tgt[rk] != ch.objects[k - 1])
      throw ValidationError("stage " + std::to_string(k) + " retraction has the wrong endpoints");
    auto codiag = c.compose(rk, ck);
    auto id = c.identity[ch.objects[k - 1]];
    if (c.compose(codiag, e->u) != id || c.compose(codiag, e->v) != id)
      throw ValidationError("stage " + std::to_string(k) + " does not factor the codiagonal");
    // An unmarked retraction means the chain carries no weak equivalences here; the
    // co-truncation condition then fails rather than the chain being malformed.
    if (!c.weq[rk]) all_marked = false;
    last = e;
  }
  return all_marked && c.weq[last->u];
}

}  // namespace glob
