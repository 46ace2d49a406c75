#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glob/adjunction.hpp"
#include "glob/theory.hpp"

namespace glob {

/// The morphisms realize(arity) -> carrier in hom_set order, with an index lookup.
struct Configurations {
  std::vector<GlobMap> maps;
  std::map<std::vector<CellId>, std::size_t> index;

  std::optional<std::size_t> find(const GlobMap& x) const;
};

/// Shared, thread-safe cache keyed by (arity, carrier).
std::shared_ptr<const Configurations> configurations(const GlobularSumTable& arity, const GlobularSet& carrier);

/// A finite model: a carrier and one table per interpreted generator, indexed by
/// configuration. A generator is interpreted when its output dimension and arity
/// height fit under the carrier's dimension bound.
struct ExplicitModel {
  TheoryPresentation theory;
  GlobularSet carrier;
  std::map<std::string, std::vector<CellId>> tables;

  int dim_bound() const { return carrier.dim_bound(); }
  bool interprets(const FillerGenerator& g) const;
};

struct ModelViolation {
  std::string law;  ///< "carrier", "table", "source", "target", "equation"
  std::string name;
  std::size_t configuration = 0;
  std::string detail;
};
using ModelReport = std::vector<ModelViolation>;

ModelReport check_model(const ExplicitModel& m);

/// Term evaluation against a model whose tables may still be growing. Keeps the
/// configuration sets of the generators it has touched.
class ModelEvaluator {
 public:
  explicit ModelEvaluator(const ExplicitModel& m);
  CellId eval(const GlobularSumTable& ctx, const TermPtr& t, const GlobMap& x);
  /// The generator's table entry at the configuration with the given peak cells.
  CellId apply(const FillerGenerator& g, const std::vector<CellId>& peaks, const TermPtr& witness = nullptr);
  const Configurations& configs(const FillerGenerator& g);

 private:
  GlobMap config_from_peaks(const FillerGenerator& g, const std::vector<CellId>& peaks) const;

  const ExplicitModel& m_;
  std::map<std::string, const FillerGenerator*> gens_;
  std::map<std::string, std::shared_ptr<const Configurations>> configs_;
};

/// Value of a term of context `ctx` at the configuration x : realize(ctx) -> carrier.
CellId eval_term(const ExplicitModel& m, const GlobularSumTable& ctx, const TermPtr& t, const GlobMap& x);

/// Fills the table of every interpreted generator of output dimension >= from_dim that
/// has no table yet with the unique cell between the evaluated boundary; throws
/// SoundnessError when a boundary pair has no filler or several.
void fill_forced_tables(ExplicitModel& m, int from_dim);

/// The terminal model: one cell per dimension, every table forced.
ExplicitModel terminal_model(const TheoryPresentation& t, int dim_bound);

/// Commutes with the carriers' structure and every table interpreted on both sides.
bool is_model_morphism(const ExplicitModel& x, const ExplicitModel& y, const GlobMap& f);

struct ModelUnit {
  ExplicitModel model;
  GlobMap unit;  ///< the input model -> model
};

/// i_n t_n X as a model of the same theory: X_n quotiented by (n+1)-cells, constant above n.
/// Requires X to be (n+1)-coskeletal. Induced tables are checked for well-definedness.
ModelUnit trunc_lower(const ExplicitModel& x, int n);
/// t_n f : t_n X -> t_n Y on the carriers of trunc_lower.
GlobMap trunc_lower_map(const ExplicitModel& x, const ExplicitModel& y, const GlobMap& f, int n);
/// An n-truncated model of the theory viewed as a model of its truncation.
ExplicitModel restrict_to_truncation(const ExplicitModel& x, int n);
/// t_n^* Y for a model Y of truncate_theory(C, n): constant above n up to dimension d.
ExplicitModel trunc_upper(const ExplicitModel& y, const TheoryPresentation& c, int d);

/// iota_n^*: cells and tables up to dimension n.
ExplicitModel cosk_lower(const ExplicitModel& x, int n);
/// iota_n_*: parallel pairs above n up to dimension d, forced tables above n.
ExplicitModel cosk_upper(const ExplicitModel& x, int d);

bool is_truncated(const ExplicitModel& m, int n);
bool is_coskeletal(const ExplicitModel& m, int n);

/// Classes of k-cells over the base, each class sorted, classes ordered by least cell.
/// For k = 0 the base is ignored; for k >= 1 it is a parallel pair of (k-1)-cells.
std::vector<std::vector<CellId>> homotopy_group(const GlobularSet& x, int k,
                                                std::optional<std::pair<CellId, CellId>> base = std::nullopt);
std::vector<std::vector<CellId>> homotopy_group(const ExplicitModel& m, int k,
                                                std::optional<std::pair<CellId, CellId>> base = std::nullopt);

/// Bijective on pi_0 and on every pi_k(-, a, b), k <= dim bound. Throws PreconditionError
/// if f is not a model morphism.
bool is_weak_equivalence(const ExplicitModel& x, const ExplicitModel& y, const GlobMap& f);
/// Carrier-level version (no table check).
bool is_weak_equivalence(const GlobularSet& x, const GlobularSet& y, const GlobMap& f);

/// A polygraphic presentation: cells attached one at a time along parallel boundaries.
struct Attachment {
  int dim = 0;
  CellId src = 0, tgt = 0;  ///< ignored for points
};

struct Presentation {
  std::vector<Attachment> cells;

  int dim() const;
  std::size_t count(int k) const;
  GlobularSet to_globular_set(int dim_bound) const;
};

/// Appends one generator; the boundary must be a parallel pair of existing cells.
Presentation attach_cell(const Presentation& p, int dim, CellId src = 0, CellId tgt = 0);

/// Reflection of "m with one more cell" into (n+1)-coskeletal models, for a cell of
/// dimension above n+1. The new cell is identified with the existing forced filler.
ExplicitModel attach_to_coskeletal(const ExplicitModel& m, int n, int dim, CellId src, CellId tgt);

}  // namespace glob
