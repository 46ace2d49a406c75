#include "glob/precyl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "glob/error.hpp"

namespace glob {

namespace {

constexpr MorId kNone = static_cast<MorId>(-1);

std::uint64_t key2(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

std::string map_key(ObjId a, ObjId b, const PresheafMap& f) {
  std::string k;
  auto put = [&](std::uint32_t v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
  put(a);
  put(b);
  for (auto v : flatten(f)) put(v);
  return k;
}

}  // namespace

// ---- FinitePreCylCat ----

ObjId FinitePreCylCat::add_object(std::string name) {
  object_names.push_back(std::move(name));
  identity.push_back(kNone);
  return static_cast<ObjId>(object_names.size() - 1);
}

MorId FinitePreCylCat::add_morphism(ObjId s, ObjId t, std::string name) {
  if (s >= object_count() || t >= object_count()) throw TableError("morphism endpoint out of range");
  src.push_back(s);
  tgt.push_back(t);
  if (name.empty()) name = "m" + std::to_string(src.size() - 1);
  morphism_names.push_back(std::move(name));
  cofib.push_back(0);
  weq.push_back(0);
  return static_cast<MorId>(src.size() - 1);
}

void FinitePreCylCat::set_identity(ObjId x, MorId id) {
  if (x >= object_count() || id >= morphism_count() || src[id] != x || tgt[id] != x)
    throw TableError("identity has the wrong endpoints");
  identity[x] = id;
}

void FinitePreCylCat::set_composite(MorId f, MorId g, MorId fg) {
  if (f >= morphism_count() || g >= morphism_count() || fg >= morphism_count())
    throw TableError("composite references an unknown morphism");
  if (tgt[g] != src[f] || src[fg] != src[g] || tgt[fg] != tgt[f])
    throw TableError("composite " + morphism_names[f] + " . " + morphism_names[g] + " is ill-typed");
  pending_.push_back({f, g, fg});
}

void FinitePreCylCat::add_pushout(const PushoutEntry& e) { pushouts.push_back(e); }

void FinitePreCylCat::finalize() {
  auto n = object_count();
  auto m = morphism_count();
  for (ObjId x = 0; x < n; ++x)
    if (identity[x] == kNone) throw TableError("object " + object_names[x] + " has no identity");
  hom_.assign(n * n, {});
  out_.assign(n, {});
  in_.assign(n, {});
  pos_in_out_.assign(m, 0);
  for (MorId f = 0; f < m; ++f) {
    hom_[src[f] * n + tgt[f]].push_back(f);
    pos_in_out_[f] = static_cast<std::uint32_t>(out_[src[f]].size());
    out_[src[f]].push_back(f);
    in_[tgt[f]].push_back(f);
  }
  // Keep composites already finalized when re-finalizing.
  if (comp_after_.size() == m) {
    for (MorId g = 0; g < m; ++g)
      for (std::size_t p = 0; p < comp_after_[g].size(); ++p)
        if (comp_after_[g][p] != kNone) pending_.push_back({out_[tgt[g]][p], g, comp_after_[g][p]});
  }
  comp_after_.assign(m, {});
  for (MorId g = 0; g < m; ++g) comp_after_[g].assign(out_[tgt[g]].size(), kNone);
  for (const auto& [f, g, fg] : pending_) comp_after_[g][pos_in_out_[f]] = fg;
  pending_.clear();
  for (MorId g = 0; g < m; ++g)
    for (std::size_t p = 0; p < comp_after_[g].size(); ++p)
      if (comp_after_[g][p] == kNone)
        throw TableError("missing composite " + morphism_names[out_[tgt[g]][p]] + " . " + morphism_names[g]);
  iso_.assign(m, 0);
  for (MorId f = 0; f < m; ++f)
    for (auto g : hom(tgt[f], src[f]))
      if (compose(g, f) == identity[src[f]] && compose(f, g) == identity[tgt[f]]) {
        iso_[f] = 1;
        break;
      }
  pushout_index_.clear();
  for (std::size_t i = 0; i < pushouts.size(); ++i) {
    const auto& e = pushouts[i];
    if (e.f >= m || e.g >= m || e.u >= m || e.v >= m || e.object >= n) throw TableError("pushout entry out of range");
    if (src[e.f] != src[e.g] || src[e.u] != tgt[e.f] || src[e.v] != tgt[e.g] || tgt[e.u] != e.object ||
        tgt[e.v] != e.object)
      throw TableError("pushout entry is ill-typed");
    pushout_index_[key2(e.f, e.g)] = i;
  }
}

MorId FinitePreCylCat::compose(MorId f, MorId g) const {
  if (tgt[g] != src[f]) throw TableError("composing non-composable morphisms");
  return comp_after_[g][pos_in_out_[f]];
}

const PushoutEntry* FinitePreCylCat::pushout(MorId f, MorId g) const {
  auto i = pushout_index(f, g);
  return i ? &pushouts[*i] : nullptr;
}

std::optional<std::size_t> FinitePreCylCat::pushout_index(MorId f, MorId g) const {
  auto it = pushout_index_.find(key2(f, g));
  if (it == pushout_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjId> FinitePreCylCat::find_object(const std::string& name) const {
  for (ObjId i = 0; i < object_count(); ++i)
    if (object_names[i] == name) return i;
  return std::nullopt;
}

std::optional<MorId> FinitePreCylCat::find_morphism(const std::string& name) const {
  for (MorId i = 0; i < morphism_count(); ++i)
    if (morphism_names[i] == name) return i;
  return std::nullopt;
}

std::vector<std::string> FinitePreCylCat::check_category() const {
  std::vector<std::string> out;
  for (MorId f = 0; f < morphism_count(); ++f) {
    if (compose(f, identity[src[f]]) != f || compose(identity[tgt[f]], f) != f)
      out.push_back("identity law fails at " + morphism_names[f]);
    for (auto g : out_[tgt[f]])
      for (auto h : out_[tgt[g]])
        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
          out.push_back("associativity fails at " + morphism_names[h] + "," + morphism_names[g] + "," +
                        morphism_names[f]);
  }
  return out;
}

// ---- axioms and saturation ----

bool AxiomReport::ok() const {
  for (auto c : counts)
    if (c) return false;
  return true;
}

std::vector<int> AxiomReport::failed_axioms() const {
  std::vector<int> out;
  for (int a = 1; a <= 5; ++a)
    if (failed(a)) out.push_back(a);
  return out;
}

std::optional<MorId> induced_pushout_map(const FinitePreCylCat& c, const PushoutEntry& e, const PushoutEntry& e2,
                                         MorId b, MorId cc) {
  auto want_u = c.compose(e2.u, b), want_v = c.compose(e2.v, cc);
  for (auto m : c.hom(e.object, e2.object))
    if (c.compose(m, e.u) == want_u && c.compose(m, e.v) == want_v) return m;
  return std::nullopt;
}

namespace {

/// Instances of the gluing hypothesis under the weak equivalences `w`, up to reindexing by
/// isomorphisms: each vertical map is either an identity or a non-invertible equivalence.
/// Composing an instance with isomorphisms changes the induced map by isomorphisms, so this
/// loses nothing as long as isomorphisms are marked and marks compose.
/// The callback gets the two entries, the vertical maps and the induced map (if any).
void for_each_gluing(const FinitePreCylCat& c, const std::vector<char>& w,
                     const std::function<void(const PushoutEntry&, const PushoutEntry&, MorId, MorId, MorId,
                                              std::optional<MorId>)>& visit) {
  auto n = c.object_count();
  std::vector<std::vector<MorId>> verticals(n);
  for (ObjId x = 0; x < n; ++x) verticals[x].push_back(c.identity[x]);
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (w[f] && !c.is_iso(f)) verticals[c.src[f]].push_back(f);
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> groups;
  auto triple = [&](std::uint64_t a, std::uint64_t b, std::uint64_t cc) { return (a * n + b) * n + cc; };
  bool need_groups = false;
  for (ObjId x = 0; x < n && !need_groups; ++x) need_groups = verticals[x].size() > 1;
  if (need_groups)
    for (std::size_t i = 0; i < c.pushouts.size(); ++i) {
      const auto& e = c.pushouts[i];
      groups[triple(c.src[e.f], c.tgt[e.f], c.tgt[e.g])].push_back(i);
    }
  auto induced = [&](const PushoutEntry& e, const PushoutEntry& e2, MorId vb, MorId vc) {
    return induced_pushout_map(c, e, e2, vb, vc);
  };
  for (const auto& e : c.pushouts) {
    if (!c.cofib[e.f]) continue;
    ObjId a = c.src[e.f], bo = c.tgt[e.f], co = c.tgt[e.g];
    for (auto va : verticals[a]) {
      if (va == c.identity[a]) {
        // The lower span is determined: (vb f, vc g).
        for (auto vb : verticals[bo]) {
          auto f2 = c.compose(vb, e.f);
          if (!c.cofib[f2]) continue;
          for (auto vc : verticals[co]) {
            if (vb == c.identity[bo] && vc == c.identity[co]) continue;
            const auto* e2 = c.pushout(f2, c.compose(vc, e.g));
            if (!e2) continue;
            visit(e, *e2, va, vb, vc, induced(e, *e2, vb, vc));
          }
        }
        continue;
      }
      ObjId a2 = c.tgt[va];
      for (auto vb : verticals[bo])
        for (auto vc : verticals[co]) {
          auto git = groups.find(triple(a2, c.tgt[vb], c.tgt[vc]));
          if (git == groups.end()) continue;
          auto fb = c.compose(vb, e.f), gc = c.compose(vc, e.g);
          for (auto i2 : git->second) {
            const auto& e2 = c.pushouts[i2];
            if (!c.cofib[e2.f] || c.compose(e2.f, va) != fb || c.compose(e2.g, va) != gc) continue;
            visit(e, e2, va, vb, vc, induced(e, e2, vb, vc));
          }
        }
    }
  }
}

constexpr std::size_t kWitnessesPerAxiom = 5;

}  // namespace

AxiomReport check_precyl_axioms(const FinitePreCylCat& c) {
  AxiomReport r;
  auto fail = [&](int axiom, const std::string& detail) {
    auto& n = r.counts[static_cast<std::size_t>(axiom)];
    if (n++ < kWitnessesPerAxiom) r.witnesses.push_back({axiom, detail});
  };
  const auto& name = c.morphism_names;
  // (1) isomorphisms marked, marks closed under composition.
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (c.is_iso(f) && !c.cofib[f]) fail(1, "isomorphism " + name[f] + " is not a cofibration");
    if (c.is_iso(f) && !c.weq[f]) fail(1, "isomorphism " + name[f] + " is not a weak equivalence");
    for (auto g : c.out(c.tgt[f])) {
      auto gf = c.compose(g, f);
      if (c.cofib[f] && c.cofib[g] && !c.cofib[gf]) fail(1, "cofibrations " + name[g] + " . " + name[f] + " compose to an unmarked map");
      if (c.weq[f] && c.weq[g] && !c.weq[gf]) fail(1, "equivalences " + name[g] + " . " + name[f] + " compose to an unmarked map");
    }
  }
  // (2) 2-out-of-6.
  for (MorId g = 0; g < c.morphism_count(); ++g) {
    std::vector<MorId> fs, hs;
    for (auto f : c.in(c.src[g]))
      if (c.weq[c.compose(g, f)]) fs.push_back(f);
    if (fs.empty()) continue;
    for (auto h : c.out(c.tgt[g]))
      if (c.weq[c.compose(h, g)]) hs.push_back(h);
    if (hs.empty()) continue;
    auto witness = [&](MorId f, MorId h) { return "(" + name[f] + ", " + name[g] + ", " + name[h] + ")"; };
    if (!c.weq[g]) fail(2, "middle map unmarked in " + witness(fs[0], hs[0]));
    for (auto f : fs)
      if (!c.weq[f]) fail(2, "first map unmarked in " + witness(f, hs[0]));
    for (auto h : hs)
      if (!c.weq[h]) fail(2, "last map unmarked in " + witness(fs[0], h));
    for (auto f : fs)
      for (auto h : hs)
        if (!c.weq[c.compose(h, c.compose(g, f))]) fail(2, "total composite unmarked in " + witness(f, h));
  }
  // (3) initial object, every object cofibrant.
  if (c.initial >= c.object_count()) {
    fail(3, "no initial object");
  } else {
    for (ObjId x = 0; x < c.object_count(); ++x) {
      const auto& h = c.hom(c.initial, x);
      if (h.size() != 1)
        fail(3, std::to_string(h.size()) + " maps from the initial object to " + c.object_names[x]);
      else if (!c.cofib[h[0]])
        fail(3, c.object_names[x] + " is not cofibrant");
    }
  }
  // (4) pushouts along cofibrations exist and their opposite legs are cofibrations.
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (!c.cofib[f]) continue;
    for (auto g : c.out(c.src[f])) {
      const auto* e = c.pushout(f, g);
      if (!e) {
        if (c.bounded) continue;
        throw CompletenessError("no pushout entry for the span (" + name[f] + ", " + name[g] + ")");
      }
      if (c.compose(e->u, f) != c.compose(e->v, g)) fail(4, "pushout square of (" + name[f] + ", " + name[g] + ") does not commute");
      if (!c.cofib[e->v]) fail(4, "pushout of " + name[f] + " along " + name[g] + " is not a cofibration");
    }
  }
  // (5) gluing.
  for_each_gluing(c, c.weq, [&](const PushoutEntry& e, const PushoutEntry& e2, MorId a, MorId b, MorId cc,
                                std::optional<MorId> m) {
    auto where = "spans (" + name[e.f] + ", " + name[e.g] + ") -> (" + name[e2.f] + ", " + name[e2.g] + ") via " +
                 name[a] + ", " + name[b] + ", " + name[cc];
    if (!m)
      fail(4, "chosen pushout lacks an induced map for " + where);
    else if (!c.weq[*m])
      fail(5, "induced map " + name[*m] + " unmarked for " + where);
  });
  return r;
}

FinitePreCylCat saturate_equivalences(const FinitePreCylCat& c, const std::vector<MorId>& seeds,
                                      const SaturationOptions& o) {
  FinitePreCylCat out = c;
  auto& w = out.weq;
  w.assign(c.morphism_count(), 0);
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (c.is_iso(f)) w[f] = 1;
  for (auto s : seeds) {
    if (s >= c.morphism_count()) throw PreconditionError("seed is not a morphism");
    w[s] = 1;
  }
  bool changed = true;
  auto mark = [&](MorId f) {
    if (!w[f]) {
      w[f] = 1;
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    for (MorId f = 0; f < c.morphism_count(); ++f) {
      if (!w[f]) continue;
      for (auto g : c.out(c.tgt[f]))
        if (w[g]) mark(c.compose(g, f));
    }
    for (MorId g = 0; g < c.morphism_count(); ++g) {
      std::vector<MorId> fs, hs;
      for (auto f : c.in(c.src[g]))
        if (w[c.compose(g, f)]) fs.push_back(f);
      if (fs.empty()) continue;
      for (auto h : c.out(c.tgt[g]))
        if (w[c.compose(h, g)]) hs.push_back(h);
      if (hs.empty()) continue;
      mark(g);
      for (auto f : fs) mark(f);
      for (auto h : hs) mark(h);
      for (auto f : fs)
        for (auto h : hs) mark(c.compose(h, c.compose(g, f)));
    }
    if (o.gluing && !changed)
      for_each_gluing(c, w, [&](const PushoutEntry&, const PushoutEntry&, MorId, MorId, MorId,
                                std::optional<MorId> m) {
        if (m) mark(*m);
      });
  }
  return out;
}

// ---- universes ----

std::optional<ObjId> PresheafUniverse::find_object(const Presheaf& p) const {
  auto it = buckets.find(invariant_hash(p));
  if (it == buckets.end()) return std::nullopt;
  for (auto id : it->second)
    if (find_isomorphism(shape, p, objects[id])) return id;
  return std::nullopt;
}

std::optional<MorId> PresheafUniverse::find_morphism(ObjId a, ObjId b, const PresheafMap& f) const {
  auto it = index.find(map_key(a, b, f));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

PresheafUniverse build_universe(const PresheafShape& s, std::vector<Presheaf> objects, const UniverseLimits& lim) {
  PresheafUniverse u;
  u.shape = s;
  u.objects = std::move(objects);
  auto& c = u.cat;
  std::optional<ObjId> initial;
  for (ObjId i = 0; i < u.objects.size(); ++i) {
    const auto& p = u.objects[i];
    if (!validate_presheaf(s, p).empty()) throw PreconditionError("universe object " + std::to_string(i) + " is invalid");
    c.add_object("X" + std::to_string(i));
    u.buckets[invariant_hash(p)].push_back(i);
    if (p.total_cells() == 0 && !initial) initial = i;
  }
  if (!initial) throw PreconditionError("the universe needs the empty object");
  c.initial = *initial;
  auto n = static_cast<ObjId>(u.objects.size());
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for_each_hom(s, u.objects[a], u.objects[b], [&](const PresheafMap& f) {
        if (u.maps.size() >= lim.max_morphisms)
          throw ResourceError("universe exceeds " + std::to_string(lim.max_morphisms) + " morphisms");
        auto id = c.add_morphism(a, b);
        u.index.emplace(map_key(a, b, f), id);
        u.maps.push_back(f);
        c.cofib[id] = is_mono(f) ? 1 : 0;
        return true;
      });
  for (ObjId a = 0; a < n; ++a) c.set_identity(a, *u.find_morphism(a, a, identity_map(u.objects[a])));
  std::vector<std::vector<MorId>> out(n);
  for (MorId f = 0; f < u.maps.size(); ++f) out[c.src[f]].push_back(f);
  for (MorId g = 0; g < u.maps.size(); ++g)
    for (auto f : out[c.tgt[g]]) {
      auto fg = u.find_morphism(c.src[g], c.tgt[f], compose(u.maps[f], u.maps[g]));
      if (!fg) throw SoundnessError("composite of two maps is not a map");
      c.set_composite(f, g, *fg);
    }
  c.finalize();
  for (MorId f = 0; f < u.maps.size(); ++f) c.weq[f] = c.is_iso(f) ? 1 : 0;
  for (MorId f = 0; f < u.maps.size(); ++f) {
    if (!c.cofib[f]) continue;
    ObjId a = c.src[f], b = c.tgt[f];
    for (auto g : out[a]) {
      ObjId cc = c.tgt[g];
      auto po = pushout(s, u.objects[a], u.objects[b], u.objects[cc], u.maps[f], u.maps[g]);
      std::optional<ObjId> target;
      std::optional<PresheafMap> iso;
      auto it = u.buckets.find(invariant_hash(po.object));
      if (it != u.buckets.end())
        for (auto id : it->second)
          if ((iso = find_isomorphism(s, po.object, u.objects[id]))) {
            target = id;
            break;
          }
      if (!target) {
        c.bounded = true;
        continue;
      }
      auto uu = u.find_morphism(b, *target, compose(*iso, po.from_b));
      auto vv = u.find_morphism(cc, *target, compose(*iso, po.from_c));
      if (!uu || !vv) throw SoundnessError("pushout legs are not universe morphisms");
      c.add_pushout({f, g, *target, *uu, *vv});
    }
  }
  c.finalize();
  return u;
}

std::vector<MorId> maps_between(const FinitePreCylCat& c, const std::vector<ObjId>& objs) {
  std::vector<MorId> out;
  for (auto a : objs)
    for (auto b : objs)
      for (auto f : c.hom(a, b)) out.push_back(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PresheafUniverse finite_sets_precyl(std::size_t size_bound) {
  auto s = PresheafShape::sets();
  std::vector<Presheaf> objs;
  for (std::size_t k = 0; k <= size_bound; ++k) {
    auto p = empty_presheaf(s);
    p.counts[0] = k;
    objs.push_back(p);
  }
  auto u = build_universe(s, objs);
  for (ObjId i = 0; i < u.objects.size(); ++i) u.cat.object_names[i] = std::to_string(i);
  return u;
}

namespace {

void name_objects(PresheafUniverse& u, const std::vector<std::pair<ObjId, std::string>>& names) {
  for (const auto& [id, n] : names) u.cat.object_names[id] = n;
}

}  // namespace

PresheafUniverse rglob_precyl(int n, std::size_t size_bound) {
  auto s = PresheafShape::globular(n, true);
  auto u = build_universe(s, enumerate_objects(s, size_bound));
  std::vector<ObjId> disks;
  std::vector<std::pair<ObjId, std::string>> names;
  for (int k = 0; k <= n; ++k) {
    auto id = u.find_object(from_globular(free_reflexive(disk(k), n)));
    if (!id) throw PreconditionError("size bound too small for D" + std::to_string(k));
    disks.push_back(*id);
    names.push_back({*id, "D" + std::to_string(k)});
  }
  name_objects(u, names);
  u.cat = saturate_equivalences(u.cat, maps_between(u.cat, disks));
  return u;
}

PresheafUniverse semisimplicial_precyl(int dim_bound, std::size_t size_bound) {
  auto s = PresheafShape::semisimplicial(dim_bound);
  auto u = build_universe(s, enumerate_objects(s, size_bound));
  std::vector<ObjId> reps;
  std::vector<std::pair<ObjId, std::string>> names;
  for (int k = 0; k <= dim_bound; ++k) {
    auto p = simplex(k, dim_bound);
    if (p.total_cells() > size_bound) break;
    auto id = u.find_object(p);
    if (!id) throw SoundnessError("representable missing from the universe");
    reps.push_back(*id);
    names.push_back({*id, "Delta" + std::to_string(k)});
  }
  name_objects(u, names);
  u.cat = saturate_equivalences(u.cat, maps_between(u.cat, reps));
  return u;
}

FinitePreCylCat targeted_mutation(const PresheafUniverse& u, int axiom) {
  if (u.shape.kind != PresheafShape::Kind::Sets) throw PreconditionError("mutations are defined on finite sets");
  const auto& c0 = u.cat;
  auto size = [&](ObjId x) { return u.objects[x].counts[0]; };
  auto object_of_size = [&](std::size_t k) -> ObjId {
    for (ObjId x = 0; x < c0.object_count(); ++x)
      if (size(x) == k) return x;
    throw PreconditionError("size bound too small for the mutation");
  };
  FinitePreCylCat c = c0;
  switch (axiom) {
    case 1: {
      auto two = object_of_size(2);
      for (auto f : c.hom(two, two))
        if (!c.is_identity(f)) c.cofib[f] = 0;
      break;
    }
    case 2:
      for (MorId f = 0; f < c.morphism_count(); ++f) {
        std::vector<char> hit(size(c.tgt[f]), 0);
        for (auto v : u.maps[f].comp[0]) hit[v] = 1;
        c.weq[f] = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; }) ? 1 : 0;
      }
      break;
    case 3: c.initial = object_of_size(1); break;
    case 4:
      for (MorId f = 0; f < c.morphism_count(); ++f) c.cofib[f] = c.is_iso(f) || c.src[f] == c0.initial ? 1 : 0;
      break;
    case 5: {
      auto two = object_of_size(2), one = object_of_size(1);
      c = saturate_equivalences(c0, c0.hom(two, one), {false});
      break;
    }
    default: throw PreconditionError("axioms are numbered 1 to 5");
  }
  return c;
}

// ---- C^eq ----

std::optional<std::size_t> coproduct_entry(const FinitePreCylCat& c, ObjId x, ObjId y) {
  const auto& hx = c.hom(c.initial, x);
  const auto& hy = c.hom(c.initial, y);
  if (hx.size() != 1 || hy.size() != 1) return std::nullopt;
  return c.pushout_index(hx[0], hy[0]);
}

bool reedy_cofibration(const FinitePreCylCat& c, const EqTriple& a, const EqTriple& b, MorId f1, MorId f2,
                       MorId fi) {
  if (!c.cofib[f1] || !c.cofib[f2]) return false;
  const auto& pa = c.pushouts[a.coproduct];
  const auto& pb = c.pushouts[b.coproduct];
  auto m = induced_pushout_map(c, pa, pb, f1, f2);
  if (!m) throw CompletenessError("coproduct entry lacks the induced map");
  const auto* q = c.pushout(a.j, *m);
  if (!q) {
    if (!c.bounded) throw CompletenessError("no pushout entry for the latching object");
    // Every object up to the size bound is present, so the latching object is larger
    // than the target and cannot embed into it.
    return false;
  }
  for (auto l : c.hom(q->object, b.xi))
    if (c.compose(l, q->u) == fi && c.compose(l, q->v) == b.j) return c.cofib[l] != 0;
  throw CompletenessError("latching object lacks the induced map");
}

EqCategory ceq_build(const FinitePreCylCat& c, std::size_t max_morphisms) {
  EqCategory out;
  for (ObjId x1 = 0; x1 < c.object_count(); ++x1)
    for (ObjId x2 = 0; x2 < c.object_count(); ++x2) {
      auto e = coproduct_entry(c, x1, x2);
      if (!e) continue;
      const auto& p = c.pushouts[*e];
      for (auto j : c.out(p.object)) {
        if (!c.cofib[j]) continue;
        auto ju = c.compose(j, p.u), jv = c.compose(j, p.v);
        if (c.cofib[ju] && c.weq[ju] && c.cofib[jv] && c.weq[jv]) out.objects.push_back({x1, x2, c.tgt[j], *e, j});
      }
    }
  for (std::size_t s = 0; s < out.objects.size(); ++s)
    for (std::size_t t = 0; t < out.objects.size(); ++t) {
      const auto& a = out.objects[s];
      const auto& b = out.objects[t];
      const auto& pa = c.pushouts[a.coproduct];
      const auto& pb = c.pushouts[b.coproduct];
      auto au = c.compose(a.j, pa.u), av = c.compose(a.j, pa.v);
      auto bu = c.compose(b.j, pb.u), bv = c.compose(b.j, pb.v);
      for (auto fi : c.hom(a.xi, b.xi)) {
        auto lhs1 = c.compose(fi, au), lhs2 = c.compose(fi, av);
        for (auto f1 : c.hom(a.x1, b.x1)) {
          if (c.compose(bu, f1) != lhs1) continue;
          for (auto f2 : c.hom(a.x2, b.x2)) {
            if (c.compose(bv, f2) != lhs2) continue;
            if (out.morphisms.size() >= max_morphisms) throw ResourceError("C^eq exceeds the morphism bound");
            EqMorphism m{s, t, f1, f2, fi, reedy_cofibration(c, a, b, f1, f2, fi),
                         c.weq[f1] && c.weq[f2] && c.weq[fi]};
            out.morphisms.push_back(m);
          }
        }
      }
    }
  return out;
}

// ---- homotopy slices ----

SliceCategory hslice_build(const FinitePreCylCat& c, ObjId x, std::size_t max_morphisms) {
  SliceCategory out;
  out.x = x;
  for (ObjId a = 0; a < c.object_count(); ++a) {
    auto e = coproduct_entry(c, a, x);
    if (!e) continue;
    const auto& p = c.pushouts[*e];
    for (auto j : c.out(p.object)) {
      if (!c.cofib[j]) continue;
      auto jv = c.compose(j, p.v);
      if (c.cofib[jv] && c.weq[jv]) out.objects.push_back({a, c.tgt[j], *e, j});
    }
  }
  for (std::size_t s = 0; s < out.objects.size(); ++s)
    for (std::size_t t = 0; t < out.objects.size(); ++t) {
      const auto& a = out.objects[s];
      const auto& b = out.objects[t];
      const auto& pa = c.pushouts[a.coproduct];
      const auto& pb = c.pushouts[b.coproduct];
      auto au = c.compose(a.j, pa.u), av = c.compose(a.j, pa.v);
      auto bu = c.compose(b.j, pb.u), bv = c.compose(b.j, pb.v);
      for (auto fi : c.hom(a.i, b.i)) {
        if (c.compose(fi, av) != bv) continue;
        auto lhs = c.compose(fi, au);
        for (auto fa : c.hom(a.a, b.a)) {
          if (c.compose(bu, fa) != lhs) continue;
          if (out.morphisms.size() >= max_morphisms) throw ResourceError("slice exceeds the morphism bound");
          out.morphisms.push_back({s, t, fa, fi});
        }
      }
    }
  return out;
}

bool h_terminal(const FinitePreCylCat& c, ObjId x) {
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (!c.cofib[f]) continue;
    for (auto g : c.hom(c.src[f], x)) {
      bool found = false;
      for (auto h : c.hom(c.tgt[f], x))
        if (c.compose(h, f) == g) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

// ---- lifting ----

namespace {

std::string describe_square(std::size_t gen, const PresheafMap& top, const PresheafMap& bottom) {
  auto show = [](const PresheafMap& m) {
    std::string s = "[";
    for (const auto& row : m.comp) {
      s += "(";
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + std::to_string(row[i]);
      s += ")";
    }
    return s + "]";
  };
  return "generator " + std::to_string(gen) + " top " + show(top) + " bottom " + show(bottom);
}

}  // namespace

RlpResult rlp_check(const PresheafShape& s, const Presheaf& x, const Presheaf& y, const PresheafMap& f,
                    const std::vector<Generator>& gens, bool unique) {
  RlpResult r;
  for (std::size_t gi = 0; gi < gens.size() && r.holds; ++gi) {
    const auto& g = gens[gi];
    for_each_hom(s, g.a, x, [&](const PresheafMap& top) {
      std::vector<std::vector<std::optional<CellId>>> fixed_bottom(g.b.counts.size()), fixed_lift(g.b.counts.size());
      for (std::size_t l = 0; l < g.b.counts.size(); ++l) {
        fixed_bottom[l].assign(g.b.counts[l], std::nullopt);
        fixed_lift[l].assign(g.b.counts[l], std::nullopt);
        for (CellId c = 0; c < g.a.counts[l]; ++c) {
          fixed_lift[l][g.i.comp[l][c]] = top.comp[l][c];
          fixed_bottom[l][g.i.comp[l][c]] = f.comp[l][top.comp[l][c]];
        }
      }
      PresheafHomOptions ob;
      ob.fixed = &fixed_bottom;
      for_each_hom(s, g.b, y, [&](const PresheafMap& bottom) {
        ++r.squares;
        PresheafHomOptions ol;
        ol.fixed = &fixed_lift;
        ol.limit = unique ? 2 : 1;
        ol.admissible = [&](int l, CellId c, CellId v) { return f.comp[static_cast<std::size_t>(l)][v] == bottom.comp[static_cast<std::size_t>(l)][c]; };
        auto n = count_homs(s, g.b, x, ol);
        if (n == 0 || (unique && n > 1)) {
          r.holds = false;
          r.witness = describe_square(gi, top, bottom) + (n == 0 ? ": no diagonal" : ": several diagonals");
          return false;
        }
        return true;
      }, ob);
      return r.holds;
    });
  }
  return r;
}

RlpResult rlp_check_exhaustive(const PresheafShape& s, const Presheaf& x, const Presheaf& y, const PresheafMap& f,
                               const std::vector<Generator>& gens, bool unique) {
  RlpResult r;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const auto& g = gens[gi];
    auto tops = hom_set(s, g.a, x);
    auto bottoms = hom_set(s, g.b, y);
    auto diagonals = hom_set(s, g.b, x);
    for (const auto& top : tops)
      for (const auto& bottom : bottoms) {
        if (compose(f, top) != compose(bottom, g.i)) continue;
        ++r.squares;
        std::size_t n = 0;
        for (const auto& d : diagonals)
          if (compose(d, g.i) == top && compose(f, d) == bottom) ++n;
        if (r.holds && (n == 0 || (unique && n > 1))) {
          r.holds = false;
          r.witness = describe_square(gi, top, bottom) + (n == 0 ? ": no diagonal" : ": several diagonals");
        }
      }
  }
  return r;
}

namespace {

GlobMap truncate_map(const GlobMap& f, int d) {
  GlobMap g = f;
  g.components.resize(static_cast<std::size_t>(d + 1));
  return g;
}

}  // namespace

RlpResult rlp_check(const GlobularSet& x, const GlobularSet& y, const GlobMap& f,
                    const std::vector<GlobGenerator>& gens, bool unique) {
  int d = x.dim_bound();
  auto s = PresheafShape::globular(d, false);
  auto px = from_globular(underlying(x));
  auto py = from_globular(with_dim_bound(underlying(y), d));
  std::vector<Generator> pg;
  for (const auto& g : gens)
    pg.push_back({from_globular(with_dim_bound(underlying(g.a), d)), from_globular(with_dim_bound(underlying(g.b), d)),
                  from_glob_map(truncate_map(g.i, d))});
  return rlp_check(s, px, py, from_glob_map(truncate_map(f, d)), pg, unique);
}

std::vector<GlobGenerator> sphere_generators(int lo, int hi) {
  std::vector<GlobGenerator> out;
  for (int k = lo; k <= hi; ++k) out.push_back({sphere(k), disk(k), sphere_inclusion(k)});
  return out;
}

}  // namespace glob
