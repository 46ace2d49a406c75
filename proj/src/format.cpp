#include "glob/format.hpp"

#include <charconv>
#include <sstream>

#include "glob/error.hpp"

namespace glob {

namespace {

constexpr const char* kHeader = "globular-format 1";
constexpr CellId kMissing = static_cast<CellId>(-1);

struct Token {
  std::string text;
  int col = 1;
};

struct Line {
  int no = 0;
  std::string text;
  std::vector<Token> tokens;
};

std::vector<Token> split_tokens(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    Token t;
    t.col = static_cast<int>(i) + 1;
    if (s[i] == '"') {
      auto j = s.find('"', i + 1);
      if (j == std::string::npos) throw ParseError("unterminated quote", 0, t.col);
      t.text = s.substr(i + 1, j - i - 1);
      i = j + 1;
    } else {
      auto j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
      t.text = s.substr(i, j - i);
      i = j;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Line> read_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  int no = 0;
  while (std::getline(in, s)) {
    ++no;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos || s[first] == '#') continue;
    Line l;
    l.no = no;
    l.text = s;
    try {
      l.tokens = split_tokens(s);
    } catch (const ParseError&) {
      throw ParseError("unterminated quote", no, static_cast<int>(first) + 1);
    }
    out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what, std::size_t token = 0) {
  int col = token < l.tokens.size() ? l.tokens[token].col : static_cast<int>(l.text.size()) + 1;
  if (what.rfind("reference to", 0) == 0 || what.rfind("unknown ", 0) == 0) throw ReferenceError(what, l.no, col);
  throw ParseError(what, l.no, col);
}

long to_long(const Line& l, std::size_t i) {
  if (i >= l.tokens.size()) fail(l, "missing number", i);
  const auto& s = l.tokens[i].text;
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(l, "expected a number, got '" + s + "'", i);
  return v;
}

std::size_t to_index(const Line& l, std::size_t i) {
  auto v = to_long(l, i);
  if (v < 0) fail(l, "negative index", i);
  return static_cast<std::size_t>(v);
}

void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n)
    fail(l, "'" + l.tokens[0].text + "' takes " + std::to_string(n - 1) + " arguments",
         std::min(l.tokens.size(), n));
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}
  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  const Line& last() const { return lines_[pos_ ? pos_ - 1 : 0]; }
  bool at(const std::string& a, const std::string& b = {}) const {
    if (done()) return false;
    const auto& t = peek().tokens;
    return t[0].text == a && (b.empty() || (t.size() > 1 && t[1].text == b));
  }
  int end_line() const { return lines_.empty() ? 1 : lines_.back().no + 1; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

// ---- globular sets ----

GlobularSet read_globset(Reader& r, const std::string& terminator) {
  if (r.done() || !r.at("bound")) {
    if (r.done()) throw ParseError("expected 'bound'", r.end_line());
    fail(r.peek(), "expected 'bound'");
  }
  const auto& bl = r.next();
  expect_arity(bl, 2);
  auto d = to_index(bl, 1);
  GlobularSet x = GlobularSet::empty(static_cast<int>(d));
  bool reflexive = false;
  if (r.at("reflexive")) {
    const auto& l = r.next();
    expect_arity(l, 2);
    if (l.tokens[1].text == "yes")
      reflexive = true;
    else if (l.tokens[1].text != "no")
      fail(l, "expected yes or no", 1);
  }
  if (r.at("points")) {
    const auto& l = r.next();
    expect_arity(l, 2);
    x.counts[0] = to_index(l, 1);
  }
  std::size_t last_dim = 1;
  while (r.at("cell")) {
    const auto& l = r.next();
    expect_arity(l, 4);
    auto k = to_index(l, 1);
    if (k < 1 || k > d) fail(l, "cell dimension " + std::to_string(k) + " outside 1.." + std::to_string(d), 1);
    if (k < last_dim) fail(l, "cells must be listed by dimension", 1);
    last_dim = k;
    for (std::size_t i = 2; i <= 3; ++i) {
      auto v = to_index(l, i);
      if (v >= x.counts[k - 1])
        fail(l, "reference to " + std::to_string(k - 1) + "-cell " + std::to_string(v) + " out of range (" +
                    std::to_string(x.counts[k - 1]) + " cells)",
             i);
    }
    x.src[k].push_back(static_cast<CellId>(to_index(l, 2)));
    x.tgt[k].push_back(static_cast<CellId>(to_index(l, 3)));
    ++x.counts[k];
  }
  if (reflexive) {
    std::vector<std::vector<CellId>> refl(d);
    for (std::size_t k = 0; k < d; ++k) refl[k].assign(x.counts[k], kMissing);
    while (r.at("refl")) {
      const auto& l = r.next();
      expect_arity(l, 4);
      auto k = to_index(l, 1), c = to_index(l, 2), v = to_index(l, 3);
      if (k >= d) fail(l, "refl dimension outside 0.." + std::to_string(d) + "-1", 1);
      if (c >= x.counts[k]) fail(l, "reference to " + std::to_string(k) + "-cell " + std::to_string(c) + " out of range", 2);
      if (v >= x.counts[k + 1])
        fail(l, "reference to " + std::to_string(k + 1) + "-cell " + std::to_string(v) + " out of range", 3);
      refl[k][c] = static_cast<CellId>(v);
    }
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t c = 0; c < refl[k].size(); ++c)
        if (refl[k][c] == kMissing)
          throw ParseError("missing refl for " + std::to_string(k) + "-cell " + std::to_string(c),
                           r.done() ? r.end_line() : r.peek().no);
    x.refl = std::move(refl);
  }
  if (!r.done() && !r.at(terminator.empty() ? std::string("\x01") : terminator)) fail(r.peek(), "unexpected line");
  return x;
}

void write_globset(std::ostream& o, const GlobularSet& x) {
  o << "bound " << x.dim_bound() << "\n";
  o << "reflexive " << (x.is_reflexive() ? "yes" : "no") << "\n";
  o << "points " << x.count(0) << "\n";
  for (int k = 1; k <= x.dim_bound(); ++k)
    for (CellId c = 0; c < x.count(k); ++c)
      o << "cell " << k << " " << x.source({k, c}) << " " << x.target({k, c}) << "\n";
  if (x.refl)
    for (std::size_t k = 0; k < x.refl->size(); ++k)
      for (std::size_t c = 0; c < (*x.refl)[k].size(); ++c) o << "refl " << k << " " << c << " " << (*x.refl)[k][c] << "\n";
}

// ---- theories ----

// Splits "head : term : term" at the separators, keeping the columns.
std::vector<std::pair<std::string, int>> split_colon(const Line& l) {
  std::vector<std::pair<std::string, int>> parts;
  std::size_t start = 0;
  while (true) {
    auto p = l.text.find(" : ", start);
    auto piece = l.text.substr(start, p == std::string::npos ? std::string::npos : p - start);
    parts.push_back({piece, static_cast<int>(start) + 1});
    if (p == std::string::npos) break;
    start = p + 3;
  }
  return parts;
}

TermPtr read_term(const TheoryPresentation& t, const GlobularSumTable& ctx, const Line& l,
                  const std::pair<std::string, int>& part) {
  try {
    TheoryIndex idx(t);
    return parse_term(idx, ctx, part.first);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    auto p = msg.find(": ");
    throw ParseError(p == std::string::npos ? msg : msg.substr(p + 2), l.no, part.second + e.column() - 1);
  } catch (const Error& e) {
    throw ParseError(e.what(), l.no, part.second);
  }
}

TheoryPresentation read_theory(Reader& r, const std::string& terminator) {
  TheoryPresentation t;
  if (r.done() || !r.at("trunc")) {
    if (r.done()) throw ParseError("expected 'trunc'", r.end_line());
    fail(r.peek(), "expected 'trunc'");
  }
  {
    const auto& l = r.next();
    expect_arity(l, 2);
    if (l.tokens[1].text != "none") t.trunc_dim = static_cast<int>(to_index(l, 1));
  }
  while (!r.done() && !(terminator.size() && r.at(terminator))) {
    const auto& l = r.next();
    const auto& head = l.tokens[0].text;
    if (head == "stage") {
      expect_arity(l, 1);
      t.stages.emplace_back();
      continue;
    }
    if (head != "gen" && head != "eq") fail(l, "expected 'stage', 'gen' or 'eq'");
    if (t.stages.empty()) fail(l, "'" + head + "' before the first 'stage'");
    auto parts = split_colon(l);
    if (parts.size() != 3) fail(l, "expected '" + head + " NAME K TABLE : TERM : TERM'");
    Line hl = l;
    hl.tokens = split_tokens(parts[0].first);
    if (hl.tokens.size() != 4) fail(l, "expected '" + head + " NAME K TABLE' before the terms");
    auto name = hl.tokens[1].text;
    auto k = static_cast<int>(to_index(hl, 2));
    GlobularSumTable arity;
    try {
      arity = parse_table(hl.tokens[3].text);
    } catch (const Error& e) {
      fail(hl, e.what(), 3);
    }
    if (t.find(name)) fail(l, "duplicate generator name '" + name + "'", 1);
    auto a = read_term(t, arity, l, parts[1]);
    auto b = read_term(t, arity, l, parts[2]);
    if (head == "gen")
      t.stages.back().generators.push_back({name, k, arity, a, b});
    else
      t.stages.back().equations.push_back({name, k, arity, a, b});
  }
  return t;
}

void write_theory(std::ostream& o, const TheoryPresentation& t) {
  o << "trunc " << (t.trunc_dim ? std::to_string(*t.trunc_dim) : "none") << "\n";
  for (const auto& s : t.stages) {
    o << "stage\n";
    for (const auto& g : s.generators)
      o << "gen " << g.name << " " << g.k << " " << g.arity.to_string() << " : " << to_string(g.h1) << " : "
        << to_string(g.h2) << "\n";
    for (const auto& e : s.equations)
      o << "eq " << e.name << " " << e.k << " " << e.arity.to_string() << " : " << to_string(e.lhs) << " : "
        << to_string(e.rhs) << "\n";
  }
}

// ---- models ----

void expect_line(Reader& r, const std::string& a, const std::string& b) {
  if (r.done()) throw ParseError("expected '" + a + " " + b + "'", r.end_line());
  if (!r.at(a, b) || r.peek().tokens.size() != 2) fail(r.peek(), "expected '" + a + " " + b + "'");
  r.next();
}

void read_model(Reader& r, Document& d) {
  expect_line(r, "begin", "theory");
  d.model.theory = read_theory(r, "end");
  expect_line(r, "end", "theory");
  expect_line(r, "begin", "carrier");
  d.model.carrier = read_globset(r, "end");
  expect_line(r, "end", "carrier");
  const auto& x = d.model.carrier;
  while (r.at("table")) {
    const auto& l = r.next();
    if (l.tokens.size() < 2) fail(l, "expected 'table NAME VALUES'");
    auto name = l.tokens[1].text;
    const auto* g = d.model.theory.find(name);
    if (!g) fail(l, "unknown generator '" + name + "'", 1);
    if (d.model.tables.count(name)) fail(l, "duplicate table '" + name + "'", 1);
    std::vector<CellId> vals;
    for (std::size_t i = 2; i < l.tokens.size(); ++i) {
      auto v = to_index(l, i);
      if (v >= x.count(g->output_dim()))
        fail(l, "reference to " + std::to_string(g->output_dim()) + "-cell " + std::to_string(v) + " out of range (" +
                    std::to_string(x.count(g->output_dim())) + " cells)",
             i);
      vals.push_back(static_cast<CellId>(v));
    }
    d.model.tables[name] = std::move(vals);
  }
  if (r.at("begin", "map")) {
    r.next();
    GlobMap f;
    while (r.at("comp")) {
      const auto& l = r.next();
      auto k = to_index(l, 1);
      if (k != f.components.size()) fail(l, "components must be listed by dimension from 0", 1);
      if (static_cast<int>(k) > x.dim_bound()) fail(l, "component above the dimension bound", 1);
      std::vector<CellId> row;
      for (std::size_t i = 2; i < l.tokens.size(); ++i) {
        auto v = to_index(l, i);
        if (v >= x.count(static_cast<int>(k)))
          fail(l, "reference to " + std::to_string(k) + "-cell " + std::to_string(v) + " out of range", i);
        row.push_back(static_cast<CellId>(v));
      }
      f.components.push_back(std::move(row));
    }
    expect_line(r, "end", "map");
    d.model_map = std::move(f);
  }
  if (!r.done()) fail(r.peek(), "unexpected line");
}

void write_model(std::ostream& o, const ExplicitModel& m, const std::optional<GlobMap>& map) {
  o << "begin theory\n";
  write_theory(o, m.theory);
  o << "end theory\nbegin carrier\n";
  write_globset(o, m.carrier);
  o << "end carrier\n";
  // Tables in generator order.
  for (const auto* g : m.theory.generators()) {
    auto it = m.tables.find(g->name);
    if (it == m.tables.end()) continue;
    o << "table " << g->name;
    for (auto v : it->second) o << " " << v;
    o << "\n";
  }
  if (map) {
    o << "begin map\n";
    for (std::size_t k = 0; k < map->components.size(); ++k) {
      o << "comp " << k;
      for (auto v : map->components[k]) o << " " << v;
      o << "\n";
    }
    o << "end map\n";
  }
}

// ---- pre-cylinder tables ----

void read_precyl(Reader& r, PreCylDoc& d) {
  if (r.at("builtin")) {
    const auto& l = r.next();
    if (l.tokens.size() < 2) fail(l, "expected 'builtin FAMILY ARGS'");
    BuiltinPreCyl b;
    b.family = l.tokens[1].text;
    for (std::size_t i = 2; i < l.tokens.size(); ++i) b.args.push_back(to_long(l, i));
    d.builtin = b;
    if (!r.done()) fail(r.peek(), "unexpected line after 'builtin'");
    return;
  }
  auto& c = d.table;
  std::map<std::string, ObjId> objs;
  std::map<std::string, MorId> mors;
  auto object = [&](const Line& l, std::size_t i) {
    auto it = objs.find(l.tokens[i].text);
    if (it == objs.end()) fail(l, "unknown object '" + l.tokens[i].text + "'", i);
    return it->second;
  };
  auto morphism = [&](const Line& l, std::size_t i) {
    auto it = mors.find(l.tokens[i].text);
    if (it == mors.end()) fail(l, "unknown morphism '" + l.tokens[i].text + "'", i);
    return it->second;
  };
  std::optional<ObjId> initial;
  while (!r.done()) {
    const auto& l = r.next();
    const auto& head = l.tokens[0].text;
    if (head == "bounded") {
      expect_arity(l, 2);
      if (l.tokens[1].text != "yes" && l.tokens[1].text != "no") fail(l, "expected yes or no", 1);
      c.bounded = l.tokens[1].text == "yes";
    } else if (head == "object") {
      expect_arity(l, 2);
      if (objs.count(l.tokens[1].text)) fail(l, "duplicate object '" + l.tokens[1].text + "'", 1);
      objs[l.tokens[1].text] = c.add_object(l.tokens[1].text);
    } else if (head == "morphism") {
      expect_arity(l, 5);
      if (mors.count(l.tokens[1].text)) fail(l, "duplicate morphism '" + l.tokens[1].text + "'", 1);
      auto f = c.add_morphism(object(l, 2), object(l, 3), l.tokens[1].text);
      const auto& flags = l.tokens[4].text;
      if (flags != "-" && flags != "c" && flags != "w" && flags != "cw") fail(l, "flags are -, c, w or cw", 4);
      c.cofib[f] = flags.find('c') != std::string::npos;
      c.weq[f] = flags.find('w') != std::string::npos;
      mors[l.tokens[1].text] = f;
    } else if (head == "identity") {
      expect_arity(l, 3);
      auto x = object(l, 1);
      auto f = morphism(l, 2);
      if (c.src[f] != x || c.tgt[f] != x) fail(l, "identity must be an endomorphism of its object", 2);
      c.set_identity(x, f);
    } else if (head == "compose") {
      expect_arity(l, 4);
      auto f = morphism(l, 1), g = morphism(l, 2), fg = morphism(l, 3);
      if (c.tgt[g] != c.src[f]) fail(l, "morphisms are not composable", 2);
      if (c.src[fg] != c.src[g] || c.tgt[fg] != c.tgt[f]) fail(l, "composite has the wrong endpoints", 3);
      c.set_composite(f, g, fg);
    } else if (head == "initial") {
      expect_arity(l, 2);
      initial = object(l, 1);
    } else if (head == "pushout") {
      expect_arity(l, 6);
      PushoutEntry e{morphism(l, 1), morphism(l, 2), object(l, 3), morphism(l, 4), morphism(l, 5)};
      if (c.src[e.f] != c.src[e.g]) fail(l, "the span legs have different sources", 2);
      if (c.src[e.u] != c.tgt[e.f] || c.tgt[e.u] != e.object) fail(l, "leg u has the wrong endpoints", 4);
      if (c.src[e.v] != c.tgt[e.g] || c.tgt[e.v] != e.object) fail(l, "leg v has the wrong endpoints", 5);
      c.add_pushout(e);
    } else {
      fail(l, "unknown directive '" + head + "'");
    }
  }
  if (!initial) throw ParseError("missing 'initial'", r.end_line());
  c.initial = *initial;
  try {
    c.finalize();
  } catch (const Error& e) {
    throw ParseError(e.what(), r.end_line());
  }
}

std::string obj_name(const FinitePreCylCat& c, ObjId x) {
  return x < c.object_names.size() && !c.object_names[x].empty() ? c.object_names[x] : "o" + std::to_string(x);
}

std::string mor_name(const FinitePreCylCat& c, MorId f) {
  return f < c.morphism_names.size() && !c.morphism_names[f].empty() ? c.morphism_names[f] : "m" + std::to_string(f);
}

void write_precyl(std::ostream& o, const FinitePreCylCat& c) {
  o << "bounded " << (c.bounded ? "yes" : "no") << "\n";
  for (ObjId x = 0; x < c.object_count(); ++x) o << "object " << obj_name(c, x) << "\n";
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    std::string flags = std::string(c.cofib[f] ? "c" : "") + (c.weq[f] ? "w" : "");
    o << "morphism " << mor_name(c, f) << " " << obj_name(c, c.src[f]) << " " << obj_name(c, c.tgt[f]) << " "
      << (flags.empty() ? "-" : flags) << "\n";
  }
  for (ObjId x = 0; x < c.object_count(); ++x) o << "identity " << obj_name(c, x) << " " << mor_name(c, c.identity[x]) << "\n";
  for (MorId g = 0; g < c.morphism_count(); ++g)
    for (auto f : c.out(c.tgt[g]))
      o << "compose " << mor_name(c, f) << " " << mor_name(c, g) << " " << mor_name(c, c.compose(f, g)) << "\n";
  o << "initial " << obj_name(c, c.initial) << "\n";
  for (const auto& e : c.pushouts)
    o << "pushout " << mor_name(c, e.f) << " " << mor_name(c, e.g) << " " << obj_name(c, e.object) << " "
      << mor_name(c, e.u) << " " << mor_name(c, e.v) << "\n";
}

std::string quote(const std::string& s) {
  if (s.empty() || s.find_first_of(" \t#") != std::string::npos) return "\"" + s + "\"";
  return s;
}

}  // namespace

const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::GlobSet: return "globset";
    case DocKind::Theory: return "theory";
    case DocKind::Model: return "model";
    case DocKind::PreCyl: return "precyl";
    case DocKind::Script: return "script";
  }
  return "?";
}

GlobularSumTable parse_table(const std::string& text) {
  std::string s = text;
  if (s.rfind("sum(", 0) == 0) {
    if (s.back() != ')') throw TableError("unbalanced table '" + text + "'");
    s = s.substr(4, s.size() - 5);
  }
  std::vector<int> seq;
  std::size_t i = 0;
  while (i <= s.size()) {
    auto j = s.find(',', i);
    auto piece = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
    int v = 0;
    auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc() || p != piece.data() + piece.size() || v < 0)
      throw TableError("bad table entry '" + piece + "' in '" + text + "'");
    seq.push_back(v);
    if (j == std::string::npos) break;
    i = j + 1;
  }
  if (seq.size() % 2 == 0) throw TableError("a table has an odd number of entries: '" + text + "'");
  GlobularSumTable t;
  for (std::size_t k = 0; k < seq.size(); ++k) (k % 2 ? t.valleys : t.peaks).push_back(seq[k]);
  t.validate();
  return t;
}

std::vector<std::string> tokenize_command(const std::string& line) {
  std::vector<std::string> out;
  for (auto& t : split_tokens(line)) out.push_back(std::move(t.text));
  return out;
}

Document parse_document(const std::string& text) {
  auto lines = read_lines(text);
  if (lines.empty() || lines[0].text != kHeader)
    throw ParseError(std::string("missing header '") + kHeader + "'", lines.empty() ? 1 : lines[0].no);
  if (lines.size() < 2) throw ParseError("missing 'kind'", lines[0].no + 1);
  const auto& kl = lines[1];
  if (kl.tokens[0].text != "kind" || kl.tokens.size() != 2) fail(kl, "expected 'kind KIND'");
  Document d;
  const auto& k = kl.tokens[1].text;
  Reader r(std::vector<Line>(lines.begin() + 2, lines.end()));
  if (k == "globset") {
    d.kind = DocKind::GlobSet;
    d.globset = read_globset(r, "");
  } else if (k == "theory") {
    d.kind = DocKind::Theory;
    d.theory = read_theory(r, "");
  } else if (k == "model") {
    d.kind = DocKind::Model;
    read_model(r, d);
  } else if (k == "precyl") {
    d.kind = DocKind::PreCyl;
    read_precyl(r, d.precyl);
  } else if (k == "script") {
    d.kind = DocKind::Script;
    while (!r.done()) {
      std::vector<std::string> cmd;
      for (const auto& t : r.next().tokens) cmd.push_back(t.text);
      d.script.push_back(std::move(cmd));
    }
  } else {
    fail(kl, "unknown kind '" + k + "'", 1);
  }
  return d;
}

std::string print_globset(const GlobularSet& x) {
  std::ostringstream o;
  o << kHeader << "\nkind globset\n";
  write_globset(o, x);
  return o.str();
}

std::string print_theory(const TheoryPresentation& t) {
  std::ostringstream o;
  o << kHeader << "\nkind theory\n";
  write_theory(o, t);
  return o.str();
}

std::string print_model(const ExplicitModel& m, const std::optional<GlobMap>& map) {
  std::ostringstream o;
  o << kHeader << "\nkind model\n";
  write_model(o, m, map);
  return o.str();
}

std::string print_precyl(const FinitePreCylCat& c) {
  std::ostringstream o;
  o << kHeader << "\nkind precyl\n";
  write_precyl(o, c);
  return o.str();
}

std::string print_document(const Document& d) {
  switch (d.kind) {
    case DocKind::GlobSet: return print_globset(d.globset);
    case DocKind::Theory: return print_theory(d.theory);
    case DocKind::Model: return print_model(d.model, d.model_map);
    case DocKind::PreCyl: {
      if (!d.precyl.builtin) return print_precyl(d.precyl.table);
      std::ostringstream o;
      o << kHeader << "\nkind precyl\nbuiltin " << d.precyl.builtin->family;
      for (auto a : d.precyl.builtin->args) o << " " << a;
      o << "\n";
      return o.str();
    }
    case DocKind::Script: {
      std::ostringstream o;
      o << kHeader << "\nkind script\n";
      for (const auto& cmd : d.script) {
        for (std::size_t i = 0; i < cmd.size(); ++i) o << (i ? " " : "") << quote(cmd[i]);
        o << "\n";
      }
      return o.str();
    }
  }
  return {};
}

}  // namespace glob
