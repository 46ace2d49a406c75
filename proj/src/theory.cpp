#include "glob/theory.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <mutex>
#include <set>
#include <unordered_set>

#include "glob/error.hpp"

namespace glob {

TermPtr make_cell(int dim, CellId cell) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Cell;
  t->dim = dim;
  t->cell = cell;
  return t;
}

TermPtr make_op(std::string name, int dim, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Op;
  t->dim = dim;
  t->op = std::move(name);
  t->args = std::move(args);
  return t;
}

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->dim != b->dim) return false;
  if (a->kind == Term::Kind::Cell) return a->cell == b->cell;
  if (a->op != b->op || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string to_string(const TermPtr& t) {
  if (t->kind == Term::Kind::Cell) return "(cell " + std::to_string(t->dim) + " " + std::to_string(t->cell) + ")";
  std::string s = "(" + t->op;
  for (const auto& a : t->args) s += " " + to_string(a);
  return s + ")";
}

std::size_t term_size(const TermPtr& t) {
  std::size_t n = 1;
  for (const auto& a : t->args) n += term_size(a);
  return n;
}

std::size_t term_depth(const TermPtr& t) {
  std::size_t d = 0;
  for (const auto& a : t->args) d = std::max(d, term_depth(a));
  return t->kind == Term::Kind::Op ? d + 1 : 0;
}

bool term_less(const TermPtr& a, const TermPtr& b) {
  auto sa = term_size(a), sb = term_size(b);
  if (sa != sb) return sa < sb;
  return to_string(a) < to_string(b);
}

std::size_t TheoryPresentation::generator_count() const {
  std::size_t n = 0;
  for (const auto& s : stages) n += s.generators.size();
  return n;
}

std::size_t TheoryPresentation::equation_count() const {
  std::size_t n = 0;
  for (const auto& s : stages) n += s.equations.size();
  return n;
}

std::vector<const FillerGenerator*> TheoryPresentation::generators() const {
  std::vector<const FillerGenerator*> out;
  for (const auto& s : stages)
    for (const auto& g : s.generators) out.push_back(&g);
  return out;
}

std::vector<const Equation*> TheoryPresentation::equations() const {
  std::vector<const Equation*> out;
  for (const auto& s : stages)
    for (const auto& e : s.equations) out.push_back(&e);
  return out;
}

const FillerGenerator* TheoryPresentation::find(const std::string& name) const {
  for (const auto& s : stages)
    for (const auto& g : s.generators)
      if (g.name == name) return &g;
  return nullptr;
}

int TheoryPresentation::max_output_dim() const {
  int d = -1;
  for (const auto* g : generators()) d = std::max(d, g->output_dim());
  return d;
}

TheoryPresentation globe_theory(std::optional<int> trunc_dim) { return TheoryPresentation{trunc_dim, {}}; }

const RealizedSum& realized(const GlobularSumTable& t) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::unique_ptr<RealizedSum>> cache;
  auto key = t.interleaved();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto r = std::make_unique<RealizedSum>(realize_globular_sum(t));
  auto& ref = *r;
  cache.emplace(std::move(key), std::move(r));
  return ref;
}

TheoryIndex::TheoryIndex(const TheoryPresentation& t) : theory_(&t) {
  for (const auto* g : t.generators())
    if (!by_name_.emplace(g->name, g).second) throw ValidationError("duplicate generator name " + g->name);
}

const FillerGenerator& TheoryIndex::generator(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw TypeError("unknown generator " + name);
  return *it->second;
}

TermPtr boundary(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& t, Side side) {
  if (t->dim < 1) throw DimensionError("a 0-dimensional term has no boundary: " + to_string(t));
  if (t->kind == Term::Kind::Cell) {
    const auto& shape = realized(ctx).shape;
    return make_cell(t->dim - 1, shape.boundary({t->dim, t->cell}, side));
  }
  const auto& g = idx.generator(t->op);
  return substitute(idx, g.arity, side == Side::Source ? g.h1 : g.h2, t->args, ctx);
}

TermPtr iterated_boundary(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& t, int i,
                          Side side) {
  if (i >= t->dim || i < 0) throw DimensionError("iterated boundary needs i < dim");
  auto cur = t;
  while (cur->dim > i) cur = boundary(idx, ctx, cur, side);
  return cur;
}

TermPtr substitute(const TheoryIndex& idx, const GlobularSumTable& b, const TermPtr& t,
                   const std::vector<TermPtr>& args, const GlobularSumTable& a) {
  if (t->kind == Term::Kind::Op) {
    std::vector<TermPtr> out;
    out.reserve(t->args.size());
    for (const auto& x : t->args) out.push_back(substitute(idx, b, x, args, a));
    return make_op(t->op, t->dim, std::move(out));
  }
  const auto& rb = realized(b);
  const auto& org = rb.origin[static_cast<std::size_t>(t->dim)][t->cell];
  const auto& arg = args[org.peak];
  if (t->dim == b.peaks[org.peak]) return arg;
  return iterated_boundary(idx, a, arg, t->dim, org.disk_cell == 0 ? Side::Source : Side::Target);
}

void check_tuple(const TheoryIndex& idx, const GlobularSumTable& b, const std::vector<TermPtr>& args,
                 const GlobularSumTable& a) {
  if (args.size() != b.peaks.size())
    throw TypeError("tuple for " + b.to_string() + " needs " + std::to_string(b.peaks.size()) + " components");
  for (std::size_t p = 0; p < args.size(); ++p)
    if (args[p]->dim != b.peaks[p])
      throw TypeError("component " + std::to_string(p) + " " + to_string(args[p]) + " should have dimension " +
                      std::to_string(b.peaks[p]));
  for (std::size_t j = 0; j < b.valleys.size(); ++j) {
    int v = b.valleys[j];
    auto left = iterated_boundary(idx, a, args[j], v, Side::Target);
    auto right = iterated_boundary(idx, a, args[j + 1], v, Side::Source);
    if (!structurally_equal(left, right))
      throw TypeError("components " + to_string(args[j]) + " and " + to_string(args[j + 1]) +
                      " do not agree on the valley of dimension " + std::to_string(v));
  }
}

void type_check(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& t) {
  if (t->kind == Term::Kind::Cell) {
    if (t->dim < 0 || t->cell >= realized(ctx).shape.count(t->dim))
      throw TypeError("cell term " + to_string(t) + " does not exist in " + ctx.to_string());
    return;
  }
  if (!idx.has(t->op)) throw TypeError("unknown generator in " + to_string(t));
  const auto& g = idx.generator(t->op);
  if (t->dim != g.output_dim())
    throw TypeError(to_string(t) + " has dimension " + std::to_string(g.output_dim()));
  if (t->args.size() != g.arity.peaks.size())
    throw TypeError(to_string(t) + ": wrong number of arguments for arity " + g.arity.to_string());
  for (const auto& a : t->args) type_check(idx, ctx, a);
  check_tuple(idx, g.arity, t->args, ctx);
}

std::vector<TermPtr> identity_tuple(const GlobularSumTable& t) {
  const auto& r = realized(t);
  std::vector<TermPtr> out;
  for (std::size_t p = 0; p < t.peaks.size(); ++p) {
    auto c = r.peak_cell(p);
    out.push_back(make_cell(c.dim, c.index));
  }
  return out;
}

TermPtr generic_term(const FillerGenerator& g) { return make_op(g.name, g.output_dim(), identity_tuple(g.arity)); }

bool parallel_terms(const TheoryIndex& idx, const GlobularSumTable& ctx, const TermPtr& f, const TermPtr& g) {
  if (f->dim != g->dim) return false;
  if (f->dim == 0) return true;
  return structurally_equal(boundary(idx, ctx, f, Side::Source), boundary(idx, ctx, g, Side::Source)) &&
         structurally_equal(boundary(idx, ctx, f, Side::Target), boundary(idx, ctx, g, Side::Target));
}

bool check_admissible(const TheoryPresentation& t, const Pair& pair) {
  TheoryIndex idx(t);
  pair.arity.validate();
  for (const auto& h : {pair.h1, pair.h2}) {
    type_check(idx, pair.arity, h);
    if (h->dim != pair.k) throw TypeError(to_string(h) + " is not of dimension " + std::to_string(pair.k));
  }
  if (pair.arity.height() > pair.k + 1) return false;
  return parallel_terms(idx, pair.arity, pair.h1, pair.h2);
}

namespace {

std::string pair_key(const GlobularSumTable& arity, const TermPtr& h1, const TermPtr& h2) {
  return arity.to_string() + "|" + to_string(h1) + "|" + to_string(h2);
}

std::set<std::string> used_names(const TheoryPresentation& t) {
  std::set<std::string> names;
  for (const auto* g : t.generators()) names.insert(g->name);
  for (const auto* e : t.equations()) names.insert(e->name);
  return names;
}

}  // namespace

TheoryPresentation extend_theory(const TheoryPresentation& t, const std::vector<Pair>& pairs) {
  if (pairs.empty()) return t;
  std::map<int, Stage> by_dim;
  Stage eqs;
  auto names = used_names(t);
  std::size_t counter = t.generator_count() + t.equation_count();
  auto fresh = [&](const std::string& requested, const std::string& prefix) {
    if (!requested.empty()) {
      if (!names.insert(requested).second) throw ValidationError("name already in use: " + requested);
      return requested;
    }
    std::string n;
    do n = prefix + std::to_string(counter++);
    while (names.count(n));
    names.insert(n);
    return n;
  };
  for (const auto& p : pairs) {
    if (t.trunc_dim && p.k > *t.trunc_dim)
      throw AdmissibilityError("pair dimension " + std::to_string(p.k) + " exceeds the truncation dimension");
    if (!check_admissible(t, p))
      throw AdmissibilityError("pair " + to_string(p.h1) + ", " + to_string(p.h2) + " over " + p.arity.to_string() +
                               " is not admissible");
    if (t.trunc_dim && p.k == *t.trunc_dim) {
      if (p.arity.height() > *t.trunc_dim)
        throw AdmissibilityError("equation arity " + p.arity.to_string() + " is not an object of the theory");
      eqs.equations.push_back({fresh(p.name, "e"), p.k, p.arity, p.h1, p.h2});
    } else {
      by_dim[p.k].generators.push_back({fresh(p.name, "c" + std::to_string(p.k + 1) + "_"), p.k, p.arity, p.h1, p.h2});
    }
  }
  auto out = t;
  for (auto& [k, stage] : by_dim) out.stages.push_back(std::move(stage));
  if (!eqs.equations.empty()) out.stages.push_back(std::move(eqs));
  return out;
}

std::vector<TermPtr> enumerate_terms(const TheoryIndex& idx, const GlobularSumTable& ctx, int k,
                                     std::size_t depth) {
  std::map<std::pair<int, std::size_t>, std::vector<TermPtr>> memo;
  std::function<const std::vector<TermPtr>&(int, std::size_t)> terms = [&](int d, std::size_t e)
      -> const std::vector<TermPtr>& {
    auto key = std::make_pair(d, e);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<TermPtr> out;
    if (e == 0) {
      for (CellId c = 0; c < realized(ctx).shape.count(d); ++c) out.push_back(make_cell(d, c));
    } else {
      out = terms(d, e - 1);
      for (const auto* g : idx.theory().generators()) {
        if (g->output_dim() != d) continue;
        const auto& ar = g->arity;
        std::vector<TermPtr> tuple;
        std::function<void(std::size_t)> fill = [&](std::size_t p) {
          if (p == ar.peaks.size()) {
            auto t = make_op(g->name, d, tuple);
            if (term_depth(t) == e) out.push_back(t);
            return;
          }
          for (const auto& cand : terms(ar.peaks[p], e - 1)) {
            if (p > 0) {
              int v = ar.valleys[p - 1];
              if (!structurally_equal(iterated_boundary(idx, ctx, tuple.back(), v, Side::Target),
                                      iterated_boundary(idx, ctx, cand, v, Side::Source)))
                continue;
            }
            tuple.push_back(cand);
            fill(p + 1);
            tuple.pop_back();
          }
        };
        fill(0);
      }
    }
    std::sort(out.begin(), out.end(), term_less);
    out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return structurally_equal(a, b); }),
              out.end());
    return memo.emplace(key, std::move(out)).first->second;
  };
  return terms(k, depth);
}

namespace {

std::vector<Pair> unfilled_pairs_at(const TheoryPresentation& t, const CanonicalBounds& bounds, int k) {
  TheoryIndex idx(t);
  std::set<std::string> filled;
  for (const auto* g : t.generators()) filled.insert(pair_key(g->arity, g->h1, g->h2));
  for (const auto* e : t.equations()) filled.insert(pair_key(e->arity, e->lhs, e->rhs));
  bool equations = t.trunc_dim && k == *t.trunc_dim;
  int max_height = equations ? k : k + 1;
  std::vector<Pair> out;
  for (const auto& arity : enumerate_tables(bounds.max_sum_size, max_height)) {
    auto terms = enumerate_terms(idx, arity, k, bounds.max_term_depth);
    for (const auto& h1 : terms)
      for (const auto& h2 : terms) {
        if (equations && structurally_equal(h1, h2)) continue;
        if (!parallel_terms(idx, arity, h1, h2)) continue;
        if (filled.count(pair_key(arity, h1, h2))) continue;
        out.push_back({"", k, arity, h1, h2});
      }
  }
  return out;
}

}  // namespace

std::vector<Pair> enumerate_unfilled_pairs(const TheoryPresentation& t, const CanonicalBounds& bounds) {
  std::vector<Pair> out;
  int top = bounds.max_dim;
  if (t.trunc_dim) top = std::min(top, *t.trunc_dim);
  for (int k = 0; k <= top; ++k) {
    auto part = unfilled_pairs_at(t, bounds, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

TheoryPresentation canonical_stage(const TheoryPresentation& t, const CanonicalBounds& bounds) {
  auto cur = t;
  int top = bounds.max_dim;
  if (t.trunc_dim) top = std::min(top, *t.trunc_dim);
  for (int k = 0; k <= top; ++k) {
    auto pairs = unfilled_pairs_at(cur, bounds, k);
    if (t.trunc_dim && k == *t.trunc_dim) {
      // Equations are added one at a time so that a pair already implied by the
      // previous ones (for instance its mirror image) is skipped.
      std::vector<Pair> kept;
      for (const auto& p : pairs) {
        auto trial = extend_theory(cur, kept);
        if (term_equal(trial, p.arity, p.h1, p.h2) == Tri::True) continue;
        kept.push_back(p);
      }
      cur = extend_theory(cur, kept);
    } else {
      cur = extend_theory(cur, pairs);
    }
  }
  return cur;
}

TheoryPresentation truncate_theory(const TheoryPresentation& t, int n) {
  if (n < 0) throw DimensionError("negative truncation dimension");
  if (t.trunc_dim && *t.trunc_dim < n)
    throw PreconditionError("cannot truncate an " + std::to_string(*t.trunc_dim) + "-theory at " + std::to_string(n));
  if (t.trunc_dim && *t.trunc_dim == n) return t;
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    const auto& gens = t.stages[i].generators;
    for (const auto& g : gens)
      if (g.output_dim() != gens.front().output_dim())
        throw NormalizationError("stage " + std::to_string(i) + " mixes operations of dimensions " +
                                 std::to_string(gens.front().output_dim()) + " and " + std::to_string(g.output_dim()));
  }
  TheoryPresentation out;
  out.trunc_dim = n;
  Stage eqs;
  for (const auto& s : t.stages) {
    Stage kept;
    for (const auto& g : s.generators) {
      if (g.output_dim() <= n)
        kept.generators.push_back(g);
      else if (g.output_dim() == n + 1 && g.arity.height() <= n)
        eqs.equations.push_back({g.name, g.k, g.arity, g.h1, g.h2});
    }
    if (!kept.generators.empty()) out.stages.push_back(std::move(kept));
  }
  if (!eqs.equations.empty()) out.stages.push_back(std::move(eqs));
  return out;
}

const char* to_string(Tri v) {
  switch (v) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

namespace {

struct Rewriter {
  const TheoryIndex& idx;
  const GlobularSumTable& ctx;
  std::vector<const Equation*> equations;
  int top;
  bool incomplete = false;

  struct Constraint {
    std::size_t peak;
    int dim;
    Side side;
    TermPtr value;
  };

  bool match(const GlobularSumTable& b, const TermPtr& pat, const TermPtr& term, std::vector<TermPtr>& bind,
             std::vector<Constraint>& cons) {
    if (pat->dim != term->dim) return false;
    if (pat->kind == Term::Kind::Cell) {
      const auto& org = realized(b).origin[static_cast<std::size_t>(pat->dim)][pat->cell];
      if (pat->dim == b.peaks[org.peak]) {
        if (bind[org.peak]) return structurally_equal(bind[org.peak], term);
        bind[org.peak] = term;
        return true;
      }
      cons.push_back({org.peak, pat->dim, org.disk_cell == 0 ? Side::Source : Side::Target, term});
      return true;
    }
    if (term->kind != Term::Kind::Op || term->op != pat->op) return false;
    for (std::size_t i = 0; i < pat->args.size(); ++i)
      if (!match(b, pat->args[i], term->args[i], bind, cons)) return false;
    return true;
  }

  void apply_root(const TermPtr& s, std::vector<TermPtr>& out) {
    for (const auto* e : equations)
      for (int dir = 0; dir < 2; ++dir) {
        const auto& from = dir == 0 ? e->lhs : e->rhs;
        const auto& to = dir == 0 ? e->rhs : e->lhs;
        std::vector<TermPtr> bind(e->arity.peaks.size());
        std::vector<Constraint> cons;
        if (!match(e->arity, from, s, bind, cons)) continue;
        if (std::any_of(bind.begin(), bind.end(), [](const auto& x) { return !x; })) {
          incomplete = true;
          continue;
        }
        bool ok = true;
        try {
          for (const auto& c : cons)
            if (!structurally_equal(iterated_boundary(idx, ctx, bind[c.peak], c.dim, c.side), c.value)) ok = false;
          if (ok) check_tuple(idx, e->arity, bind, ctx);
        } catch (const TypeError&) {
          ok = false;
        }
        if (ok) out.push_back(substitute(idx, e->arity, to, bind, ctx));
      }
  }

  std::vector<TermPtr> rewrites(const TermPtr& s) {
    std::vector<TermPtr> out;
    apply_root(s, out);
    if (s->kind == Term::Kind::Op)
      for (std::size_t i = 0; i < s->args.size(); ++i) {
        if (s->args[i]->dim != top) continue;
        for (auto& r : rewrites(s->args[i])) {
          auto args = s->args;
          args[i] = r;
          out.push_back(make_op(s->op, s->dim, std::move(args)));
        }
      }
    return out;
  }
};

}  // namespace

Tri term_equal(const TheoryPresentation& t, const GlobularSumTable& ctx, const TermPtr& f, const TermPtr& g,
               const EqualityOptions& options) {
  if (f->dim != g->dim) return Tri::False;
  if (structurally_equal(f, g)) return Tri::True;
  if (!t.trunc_dim || f->dim != *t.trunc_dim) return Tri::False;
  auto eqs = t.equations();
  if (eqs.empty()) return Tri::False;
  TheoryIndex idx(t);
  Rewriter rw{idx, ctx, eqs, *t.trunc_dim};
  auto target = to_string(g);
  std::unordered_set<std::string> seen{to_string(f)};
  std::deque<TermPtr> queue{f};
  std::size_t steps = 0;
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (auto& r : rw.rewrites(s)) {
      if (++steps > options.budget) return Tri::Unknown;
      auto key = to_string(r);
      if (key == target) return Tri::True;
      if (seen.insert(key).second) queue.push_back(r);
    }
  }
  return rw.incomplete ? Tri::Unknown : Tri::False;
}

namespace {

struct TermParser {
  const TheoryIndex& idx;
  const GlobularSumTable& ctx;
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, static_cast<int>(pos) + 1); }

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string atom() {
    skip();
    auto start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
           text[pos] != ')')
      ++pos;
    if (start == pos) fail("expected a symbol");
    return text.substr(start, pos - start);
  }

  long number() {
    auto s = atom();
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size() || v < 0) fail("expected a natural number, got " + s);
      return v;
    } catch (const std::logic_error&) {
      fail("expected a natural number, got " + s);
    }
  }

  void expect(char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  TermPtr term() {
    expect('(');
    auto head = atom();
    TermPtr out;
    if (head == "cell") {
      int d = static_cast<int>(number());
      auto c = static_cast<CellId>(number());
      out = make_cell(d, c);
      try {
        type_check(idx, ctx, out);
      } catch (const TypeError& e) {
        fail(e.what());
      }
    } else if (head == "src" || head == "tgt") {
      auto inner = term();
      if (inner->dim == 0) fail("a 0-dimensional term has no boundary");
      out = boundary(idx, ctx, inner, head == "src" ? Side::Source : Side::Target);
    } else {
      if (!idx.has(head)) fail("unknown generator " + head);
      const auto& g = idx.generator(head);
      std::vector<TermPtr> args;
      for (;;) {
        skip();
        if (pos < text.size() && text[pos] == ')') break;
        args.push_back(term());
      }
      out = make_op(head, g.output_dim(), std::move(args));
      try {
        type_check(idx, ctx, out);
      } catch (const TypeError& e) {
        fail(e.what());
      }
    }
    expect(')');
    return out;
  }
};

}  // namespace

TermPtr parse_term(const TheoryIndex& idx, const GlobularSumTable& ctx, const std::string& text) {
  TermParser p{idx, ctx, text};
  auto t = p.term();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input after term");
  return t;
}

}  // namespace glob
