#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glob/model.hpp"
#include "glob/precyl.hpp"

namespace glob {

enum class DocKind { GlobSet, Theory, Model, PreCyl, Script };

const char* to_string(DocKind k);

/// A named pre-cylinder universe: "sets B", "rglob N B", "ssimp D B", "groupoid-a N",
/// "groupoid-h N". A missing size bound is filled in by the caller.
struct BuiltinPreCyl {
  std::string family;
  std::vector<long> args;
};

struct PreCylDoc {
  std::optional<BuiltinPreCyl> builtin;
  FinitePreCylCat table;  ///< when not builtin
};

struct Document {
  DocKind kind = DocKind::GlobSet;
  GlobularSet globset;
  TheoryPresentation theory;
  ExplicitModel model;
  /// A morphism from some source model into `model`, when the document carries one.
  std::optional<GlobMap> model_map;
  PreCylDoc precyl;
  std::vector<std::vector<std::string>> script;  ///< one tokenized command per line
};

/// Throws ParseError with a 1-based line and column.
Document parse_document(const std::string& text);
std::string print_document(const Document& d);

std::string print_globset(const GlobularSet& x);
std::string print_theory(const TheoryPresentation& t);
std::string print_model(const ExplicitModel& m, const std::optional<GlobMap>& map = std::nullopt);
std::string print_precyl(const FinitePreCylCat& c);

/// "sum(1,0,1)" or "1,0,1".
GlobularSumTable parse_table(const std::string& text);
/// Splits on whitespace; double quotes group a token.
std::vector<std::string> tokenize_command(const std::string& line);

}  // namespace glob
