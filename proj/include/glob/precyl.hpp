#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "glob/presheaf.hpp"

namespace glob {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

/// A chosen pushout of the span B <-f- A -g-> C with f a cofibration.
struct PushoutEntry {
  MorId f = 0;
  MorId g = 0;
  ObjId object = 0;
  MorId u = 0;  ///< B -> object
  MorId v = 0;  ///< C -> object
};

/// A finite category with cofibration and weak-equivalence marks, an initial object and a
/// table of chosen pushouts along cofibrations.
///
/// Build with add_object / add_morphism / set_identity / set_composite, then call finalize().
class FinitePreCylCat {
 public:
  std::vector<std::string> object_names;
  std::vector<std::string> morphism_names;
  std::vector<ObjId> src;
  std::vector<ObjId> tgt;
  std::vector<MorId> identity;  ///< per object
  std::vector<char> cofib;
  std::vector<char> weq;
  ObjId initial = 0;
  std::vector<PushoutEntry> pushouts;
  /// Spans whose pushout falls outside the materialized universe are skipped instead of
  /// being reported as missing.
  bool bounded = false;

  ObjId add_object(std::string name);
  MorId add_morphism(ObjId s, ObjId t, std::string name = {});
  void set_identity(ObjId x, MorId id);
  /// Records f∘g = fg (g first).
  void set_composite(MorId f, MorId g, MorId fg);
  void add_pushout(const PushoutEntry& e);
  /// Builds the indices; throws TableError on missing composites or identities.
  void finalize();

  std::size_t object_count() const { return object_names.size(); }
  std::size_t morphism_count() const { return src.size(); }
  /// f∘g; requires tgt(g) == src(f).
  MorId compose(MorId f, MorId g) const;
  const std::vector<MorId>& hom(ObjId a, ObjId b) const { return hom_[a * object_count() + b]; }
  const std::vector<MorId>& out(ObjId a) const { return out_[a]; }
  const std::vector<MorId>& in(ObjId b) const { return in_[b]; }
  bool is_iso(MorId f) const { return iso_[f] != 0; }
  bool is_identity(MorId f) const { return identity[src[f]] == f; }
  const PushoutEntry* pushout(MorId f, MorId g) const;
  std::optional<std::size_t> pushout_index(MorId f, MorId g) const;
  std::optional<ObjId> find_object(const std::string& name) const;
  std::optional<MorId> find_morphism(const std::string& name) const;
  /// Associativity and identity violations (empty when the table is a category).
  std::vector<std::string> check_category() const;

 private:
  std::vector<std::array<MorId, 3>> pending_;
  std::vector<std::vector<MorId>> comp_after_;  ///< comp_after_[g][pos of f in out(tgt g)]
  std::vector<std::uint32_t> pos_in_out_;
  std::vector<std::vector<MorId>> hom_, out_, in_;
  std::vector<char> iso_;
  std::unordered_map<std::uint64_t, std::size_t> pushout_index_;
};

struct AxiomViolation {
  int axiom = 0;
  std::string detail;
};

struct AxiomReport {
  std::array<std::size_t, 6> counts{};  ///< index 1..5
  std::vector<AxiomViolation> witnesses;  ///< at most a few per axiom
  bool ok() const;
  bool failed(int axiom) const { return counts[static_cast<std::size_t>(axiom)] > 0; }
  std::vector<int> failed_axioms() const;
};

/// Exhaustive check of the five pre-cylinder axioms. Throws CompletenessError when an
/// unbounded category lacks a pushout entry.
AxiomReport check_precyl_axioms(const FinitePreCylCat& c);

struct SaturationOptions {
  bool gluing = true;
};

/// Least class of weak equivalences containing isomorphisms and seeds, closed under
/// composition, 2-out-of-6 and (optionally) gluing along the pushout table.
FinitePreCylCat saturate_equivalences(const FinitePreCylCat& c, const std::vector<MorId>& seeds,
                                      const SaturationOptions& o = {});

/// The induced map between chosen pushouts: m with m∘u = u'∘b and m∘v = v'∘c.
std::optional<MorId> induced_pushout_map(const FinitePreCylCat& c, const PushoutEntry& e, const PushoutEntry& e2,
                                         MorId b, MorId cc);

/// A pre-cylinder category materialized from concrete presheaves.
struct PresheafUniverse {
  PresheafShape shape;
  std::vector<Presheaf> objects;
  std::vector<PresheafMap> maps;  ///< per morphism
  FinitePreCylCat cat;

  std::optional<ObjId> find_object(const Presheaf& p) const;  ///< up to isomorphism
  std::optional<MorId> find_morphism(ObjId a, ObjId b, const PresheafMap& f) const;

  std::unordered_map<std::uint64_t, std::vector<ObjId>> buckets;
  std::unordered_map<std::string, MorId> index;
};

struct UniverseLimits {
  std::size_t max_morphisms = 2'000'000;
};

/// All morphisms between the given objects, monos as cofibrations, isos as equivalences,
/// pushouts that land (up to iso) in the object list. `objects` must contain the empty presheaf.
PresheafUniverse build_universe(const PresheafShape& s, std::vector<Presheaf> objects,
                                const UniverseLimits& lim = {});

PresheafUniverse finite_sets_precyl(std::size_t size_bound);
/// Saturated from the maps between the reflexive disks D_k, k <= n.
PresheafUniverse rglob_precyl(int n, std::size_t size_bound);
/// Saturated from the maps between the representables of dimension <= dim_bound that fit.
PresheafUniverse semisimplicial_precyl(int dim_bound, std::size_t size_bound);

/// A copy of a finite-set universe (size bound at least 2) with one change aimed at a
/// single axiom: 1 unmarks a swap as cofibration, 2 marks the surjections as equivalences,
/// 3 moves the initial object to a singleton, 4 keeps only isomorphisms and maps out of the
/// empty set as cofibrations, 5 saturates {2 -> 1} without the gluing rule.
FinitePreCylCat targeted_mutation(const PresheafUniverse& sets_universe, int axiom);

/// Maps between the listed objects, the seeds used by the two saturated universes.
std::vector<MorId> maps_between(const FinitePreCylCat& c, const std::vector<ObjId>& objs);

// ---- C^eq ----

struct EqTriple {
  ObjId x1 = 0, x2 = 0, xi = 0;
  std::size_t coproduct = 0;  ///< pushout entry x1 ⊔ x2 with its two legs
  MorId j = 0;                             ///< coproduct -> xi
};

struct EqMorphism {
  std::size_t from = 0, to = 0;
  MorId f1 = 0, f2 = 0, fi = 0;
  bool reedy_cofibration = false;
  bool weak_equivalence = false;
};

struct EqCategory {
  std::vector<EqTriple> objects;
  std::vector<EqMorphism> morphisms;
};

/// The coproduct entry x ⊔ y, if the table has it.
std::optional<std::size_t> coproduct_entry(const FinitePreCylCat& c, ObjId x, ObjId y);
EqCategory ceq_build(const FinitePreCylCat& c, std::size_t max_morphisms = 5'000'000);
/// Latching-map predicate for one candidate morphism of triples.
bool reedy_cofibration(const FinitePreCylCat& c, const EqTriple& a, const EqTriple& b, MorId f1, MorId f2, MorId fi);

// ---- homotopy slices ----

struct SliceObject {
  ObjId a = 0, i = 0;
  std::size_t coproduct = 0;  ///< pushout entry a ⊔ X
  MorId j = 0;
};
struct SliceMorphism {
  std::size_t from = 0, to = 0;
  MorId fa = 0, fi = 0;
};
struct SliceCategory {
  ObjId x = 0;
  std::vector<SliceObject> objects;
  std::vector<SliceMorphism> morphisms;
};
SliceCategory hslice_build(const FinitePreCylCat& c, ObjId x, std::size_t max_morphisms = 5'000'000);
bool h_terminal(const FinitePreCylCat& c, ObjId x);

// ---- lifting ----

struct Generator {
  Presheaf a, b;
  PresheafMap i;
};
struct RlpResult {
  bool holds = true;
  std::size_t squares = 0;
  std::string witness;  ///< the first failing square
};
/// For every commuting square of a generator against f: x -> y, a diagonal (unique if asked).
RlpResult rlp_check(const PresheafShape& s, const Presheaf& x, const Presheaf& y, const PresheafMap& f,
                    const std::vector<Generator>& gens, bool unique);
struct GlobGenerator {
  GlobularSet a, b;
  GlobMap i;
};
/// Same on globular sets. Everything is truncated to the dimension bound of x and the
/// reflexivity tables are ignored.
RlpResult rlp_check(const GlobularSet& x, const GlobularSet& y, const GlobMap& f,
                    const std::vector<GlobGenerator>& gens, bool unique);
/// Sphere inclusions sphere(k) -> disk(k) for k in [lo, hi].
std::vector<GlobGenerator> sphere_generators(int lo, int hi);
/// Brute force reference: enumerates every pair of square sides and every candidate diagonal.
RlpResult rlp_check_exhaustive(const PresheafShape& s, const Presheaf& x, const Presheaf& y, const PresheafMap& f,
                               const std::vector<Generator>& gens, bool unique);

}  // namespace glob
