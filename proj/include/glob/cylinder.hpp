#pragma once

#include <optional>
#include <vector>

#include "glob/model.hpp"
#include "glob/precyl.hpp"
#include "glob/theory.hpp"

namespace glob {

/// The least term u : D_{k+1} -> D_k of the theory with both boundaries the identity, i.e. a
/// unit filler for the pair ((cell k 0), (cell k 0)). Throws SearchFailure when none exists
/// among generators and terms of depth at most `depth`.
TermPtr find_unit(const TheoryPresentation& t, int k, std::size_t depth = 1);

/// An object of the groupoidal universes: a polygraphic presentation (when the object is one
/// of the seeds) and the reflexive (n+1)-globular set it generates, units as degeneracies.
struct GroupoidPreCylObject {
  std::optional<Presentation> presentation;
  GlobularSet carrier;
};

struct GroupoidBounds {
  /// Largest number of non-degenerate cells of an object added by pushout closure;
  /// 0 means the size of the sphere bounding D_{n+2}.
  std::size_t max_generators = 0;
  /// Rounds of closure under pushouts of cofibrations.
  int closure_rounds = 0;
};

/// C^{n+1}_a (homotopical = false) or C^{n+1}_h over a theory truncated at n+1.
struct GroupoidUniverse {
  int n = 1;
  bool homotopical = false;
  std::vector<GroupoidPreCylObject> objects;
  PresheafUniverse universe;
  std::vector<ObjId> disks;    ///< D_0 .. D_{n+1}
  std::vector<ObjId> spheres;  ///< boundary of D_0 .. boundary of D_{n+2}
  std::vector<MorId> seeds;    ///< sigma_k (k <= n) and i_0; empty for the _a variant

  const FinitePreCylCat& cat() const { return universe.cat; }
  /// A morphism of the universe given on the non-degenerate cells of its source.
  MorId morphism(ObjId a, ObjId b, const GlobMap& on_generators) const;
};

GroupoidUniverse groupoid_precyl(const TheoryPresentation& t, int n, bool homotopical, const GroupoidBounds& b = {});

/// Number of non-degenerate cells of a reflexive globular set.
std::size_t generator_count(const GlobularSet& x);

/// The factorization of the codiagonal of the sphere inclusion of D_k:
/// D_k ⊔ D_k (over its boundary) = boundary of D_{k+1} -> D_{k+1} -> D_k. In the top case
/// k = n+1 the middle object is the boundary itself and the retraction is the fold.
struct RelativeCylinder {
  int k = 0;
  bool top = false;
  GlobularSet boundary;  ///< boundary of D_{k+1}
  GlobularSet cylinder;  ///< D_{k+1}, or the boundary in the top case
  GlobularSet base;      ///< D_k
  GlobMap cofibration;   ///< boundary -> cylinder
  TermPtr unit;          ///< the retraction as a term D_{k+1} -> D_k (below the top)
  GlobMap fold;          ///< the retraction as a map (top case)
  bool pushout_identity = false;       ///< D_k ⊔ D_k over its boundary ≅ boundary of D_{k+1}
  bool next_pushout_identity = false;  ///< same one level up
  Tri retraction_source = Tri::Unknown;  ///< u∘sigma = id
  Tri retraction_target = Tri::Unknown;  ///< u∘tau = id
  bool verified() const;
};

/// Requires a theory truncated at some N and k <= N; the top case is k = N.
RelativeCylinder relative_cylinder(int k, const TheoryPresentation& t);

/// Iterated relative cylinders I^0 X .. I^{n+2} X of X = D_0 inside a pre-cylinder category.
/// Stage k factors the codiagonal of the chosen pushout of (c_{k-1}, c_{k-1}) as
/// c_k followed by r_k.
struct CylinderChain {
  int n = 1;
  std::vector<ObjId> objects;          ///< I^0 .. I^{n+2}
  std::vector<MorId> cofibrations;     ///< c_0 : initial -> I^0, c_k : I(boundary D_k) -> I^k
  std::vector<MorId> retractions;      ///< r_k : I^k -> I^{k-1} for k >= 1 (index k-1)
};

/// The chain D_0, .., D_{n+1}, boundary of D_{n+2} with sphere inclusions, degeneracies and
/// the final fold.
CylinderChain standard_chain(const GroupoidUniverse& g);

/// Throws ValidationError when the chain is not a chain of factorizations of iterated
/// codiagonals with cofibrations c_k. Returns true iff every r_k and the map
/// I(D_{n+1}) -> I(boundary D_{n+2}) are weak equivalences.
bool cotruncation_test(const FinitePreCylCat& c, const CylinderChain& chain);

}  // namespace glob
