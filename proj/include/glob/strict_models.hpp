#pragma once

#include <optional>
#include <vector>

#include "glob/model.hpp"
#include "glob/rng.hpp"

namespace glob {

/// Composition, unit and inverse fillers for 1- and 2-cells, the coherence cells between
/// them, and units up to output dimension 4.
TheoryPresentation groupoid_test_theory();

/// A strict groupoid used as a label source: objects in components, 1-cells between
/// objects of one component labelled in Z_g, 2-cells between equally labelled 1-cells
/// labelled in Z_m.
struct StrictStructure {
  std::vector<int> component;
  int g = 1;
  int m = 1;
};

/// Objects map along `objects`; labels reduce modulo the target moduli.
struct StrictMap {
  std::vector<int> objects;
};

/// An (n+1)-coskeletal model of dimension bound n+2 whose cells up to n carry labels
/// of a strict structure. Cells above n are unique between equally labelled parallel pairs.
struct LabeledModel {
  ExplicitModel model;
  StrictStructure strict;
  int n = 1;
  std::vector<std::vector<int>> labels;  ///< per dimension; objects at 0, -1 above n
};

/// A random labelled model; n is 1 or 2.
LabeledModel random_labeled_model(const TheoryPresentation& t, const StrictStructure& s, int n, Rng& rng);

struct LabeledMorphism {
  LabeledModel source;
  GlobMap map;  ///< source.model -> target.model
};

/// A random labelled model over `target` along phi, with a model morphism into it.
/// The morphism is a weak equivalence exactly when phi is bijective on objects and labels.
LabeledMorphism random_model_over(const LabeledModel& target, const StrictStructure& s, const StrictMap& phi,
                                  Rng& rng);

/// One seeded instance for the weak-equivalence experiments: a model, a morphism into a
/// second model, and whether phi was an isomorphism of strict structures.
struct ModelPairInstance {
  LabeledModel target;
  LabeledMorphism over;
  bool strict_iso = false;
};

ModelPairInstance random_model_pair(const TheoryPresentation& t, int n, Rng& rng);

}  // namespace glob
