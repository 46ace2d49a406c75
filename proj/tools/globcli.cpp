#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "glob/adjunction.hpp"
#include "glob/cylinder.hpp"
#include "glob/error.hpp"
#include "glob/format.hpp"
#include "glob/generators.hpp"
#include "glob/strict_models.hpp"

using namespace glob;
namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::uint64_t seed = 0;
  std::size_t bound = 0;
  fs::path base;  ///< directory that relative paths in a script resolve against
  int depth = 0;
};

std::string read_file(const Context& ctx, const std::string& name) {
  fs::path p(name);
  if (p.is_relative() && !ctx.base.empty()) p = ctx.base / p;
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + p.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Document load(const Context& ctx, const std::string& name) {
  try {
    return parse_document(read_file(ctx, name));
  } catch (const ParseError& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

Document load_kind(const Context& ctx, const std::string& name, DocKind k) {
  auto d = load(ctx, name);
  if (d.kind != k)
    throw UsageError(name + " is a " + to_string(d.kind) + " document, expected " + to_string(k));
  return d;
}

TheoryPresentation groupoid_stage(int n) {
  return canonical_stage(globe_theory(n + 1), {static_cast<std::size_t>(2 * n + 1), 0, n});
}

long arg(const BuiltinPreCyl& b, std::size_t i, long fallback) {
  if (i < b.args.size()) return b.args[i];
  if (fallback < 0) throw UsageError("builtin " + b.family + " needs " + std::to_string(i + 1) + " arguments");
  return fallback;
}

FinitePreCylCat materialize(const Context& ctx, const PreCylDoc& d) {
  if (!d.builtin) return d.table;
  const auto& b = *d.builtin;
  auto cap = [&](long dflt) { return static_cast<std::size_t>(ctx.bound ? static_cast<long>(ctx.bound) : dflt); };
  if (b.family == "sets") return finite_sets_precyl(static_cast<std::size_t>(arg(b, 0, static_cast<long>(cap(3))))).cat;
  if (b.family == "rglob")
    return rglob_precyl(static_cast<int>(arg(b, 0, -1)), static_cast<std::size_t>(arg(b, 1, static_cast<long>(cap(5))))).cat;
  if (b.family == "ssimp")
    return semisimplicial_precyl(static_cast<int>(arg(b, 0, -1)), static_cast<std::size_t>(arg(b, 1, static_cast<long>(cap(4))))).cat;
  if (b.family == "groupoid-a" || b.family == "groupoid-h") {
    int n = static_cast<int>(arg(b, 0, -1));
    return groupoid_precyl(groupoid_stage(n), n, b.family == "groupoid-h").cat();
  }
  throw UsageError("unknown builtin family '" + b.family + "'");
}

ObjId object_named(const FinitePreCylCat& c, const std::string& name) {
  auto x = c.find_object(name);
  if (!x) throw UsageError("no object named '" + name + "'");
  return *x;
}

void print_map(std::ostream& out, const GlobMap& f) {
  for (std::size_t k = 0; k < f.components.size(); ++k) {
    out << (k ? " |" : "");
    for (auto v : f.components[k]) out << " " << v;
  }
  out << "\n";
}

// ---- commands ----

int cmd_format(const Context& ctx, const std::string& file, std::ostream& out) {
  out << print_document(load(ctx, file));
  return 0;
}

int cmd_validate(const Context& ctx, const std::string& file, std::ostream& out) {
  auto d = load(ctx, file);
  std::vector<std::string> v;
  switch (d.kind) {
    case DocKind::GlobSet:
      for (const auto& x : validate_globular(d.globset))
        v.push_back(x.relation + " at " + std::to_string(x.cell.dim) + ":" + std::to_string(x.cell.index) + ": " + x.detail);
      break;
    case DocKind::Model:
      for (const auto& x : check_model(d.model))
        v.push_back(x.law + " " + x.name + " configuration " + std::to_string(x.configuration) + ": " + x.detail);
      break;
    case DocKind::Theory: {
      TheoryPresentation prefix;
      prefix.trunc_dim = d.theory.trunc_dim;
      for (const auto& s : d.theory.stages) {
        prefix.stages.emplace_back();
        for (const auto& g : s.generators) {
          try {
            if (!check_admissible(prefix, {g.name, g.k, g.arity, g.h1, g.h2}))
              v.push_back("admissibility " + g.name + ": the pair is not admissible");
          } catch (const Error& e) {
            v.push_back("admissibility " + g.name + ": " + e.what());
          }
          prefix.stages.back().generators.push_back(g);
        }
        for (const auto& e : s.equations) {
          TheoryIndex idx(prefix);
          if (!parallel_terms(idx, e.arity, e.lhs, e.rhs)) v.push_back("equation " + e.name + ": sides are not parallel");
          prefix.stages.back().equations.push_back(e);
        }
      }
      break;
    }
    case DocKind::PreCyl:
      for (const auto& x : materialize(ctx, d.precyl).check_category()) v.push_back("category: " + x);
      break;
    case DocKind::Script:
      break;
  }
  for (const auto& s : v) out << "violation " << s << "\n";
  if (v.empty()) out << "ok\n";
  return v.empty() ? 0 : 1;
}

int cmd_truncate(const Context& ctx, const std::string& file, int n, std::ostream& out) {
  auto d = load(ctx, file);
  if (d.kind == DocKind::GlobSet) {
    out << print_globset(truncate(d.globset, n).object);
  } else if (d.kind == DocKind::Model) {
    auto u = trunc_lower(d.model, n);
    out << print_model(u.model, u.unit);
  } else {
    throw UsageError("truncate takes a globset or a model");
  }
  return 0;
}

int cmd_coskeletify(const Context& ctx, const std::string& file, int n, int dim, std::ostream& out) {
  auto d = load(ctx, file);
  if (d.kind == DocKind::GlobSet) {
    int top = dim >= 0 ? dim : d.globset.dim_bound();
    out << print_globset(coskeleton(skeleton(d.globset, n), top));
  } else if (d.kind == DocKind::Model) {
    int top = dim >= 0 ? dim : d.model.dim_bound();
    out << print_model(cosk_upper(cosk_lower(d.model, n), top));
  } else {
    throw UsageError("coskeletify takes a globset or a model");
  }
  return 0;
}

int cmd_pi(const Context& ctx, const std::string& file, int k, const std::vector<CellId>& base, std::ostream& out) {
  auto d = load(ctx, file);
  GlobularSet x;
  if (d.kind == DocKind::GlobSet)
    x = d.globset;
  else if (d.kind == DocKind::Model)
    x = d.model.carrier;
  else
    throw UsageError("pi takes a globset or a model");
  auto show = [&](std::optional<std::pair<CellId, CellId>> b) {
    auto classes = d.kind == DocKind::Model ? homotopy_group(d.model, k, b) : homotopy_group(x, k, b);
    std::string label = "pi_" + std::to_string(k);
    if (b) label += "(" + std::to_string(b->first) + "," + std::to_string(b->second) + ")";
    for (const auto& c : classes) {
      out << label << " class:";
      for (auto v : c) out << " " << v;
      out << "\n";
    }
  };
  if (k == 0) {
    show(std::nullopt);
  } else if (!base.empty()) {
    if (base.size() != 2) throw UsageError("--base takes two cells a,b");
    show(std::make_pair(base[0], base[1]));
  } else {
    for (auto p : parallel_pairs(x, k)) show(p);
  }
  return 0;
}

int cmd_check_we(const Context& ctx, const std::string& src, const std::string& tgt, std::ostream& out) {
  auto a = load(ctx, src);
  auto b = load(ctx, tgt);
  bool we = false;
  if (a.kind == DocKind::Model && b.kind == DocKind::Model) {
    if (!b.model_map) throw UsageError(tgt + " carries no map");
    we = is_weak_equivalence(a.model, b.model, *b.model_map);
  } else {
    throw UsageError("check-we takes two models, the second carrying the map");
  }
  out << "weak-equivalence " << (we ? "yes" : "no") << "\n";
  return we ? 0 : 1;
}

int cmd_hom(const Context& ctx, const std::string& a, const std::string& x, bool injective, std::size_t limit,
            std::ostream& out) {
  auto da = load_kind(ctx, a, DocKind::GlobSet);
  auto dx = load_kind(ctx, x, DocKind::GlobSet);
  HomOptions o;
  o.injective = injective;
  o.limit = limit;
  auto maps = hom_set(da.globset, dx.globset, o);
  out << "hom " << maps.size() << "\n";
  for (const auto& f : maps) {
    out << "map";
    print_map(out, f);
  }
  return 0;
}

int cmd_axioms(const Context& ctx, const std::string& file, std::ostream& out) {
  auto c = materialize(ctx, load_kind(ctx, file, DocKind::PreCyl).precyl);
  auto r = check_precyl_axioms(c);
  out << "objects " << c.object_count() << " morphisms " << c.morphism_count() << " pushouts " << c.pushouts.size()
      << "\n";
  for (int a = 1; a <= 5; ++a) out << "axiom " << a << " " << (r.failed(a) ? "FAIL" : "ok") << " " << r.counts[static_cast<std::size_t>(a)] << "\n";
  for (const auto& w : r.witnesses) out << "witness " << w.axiom << ": " << w.detail << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_saturate(const Context& ctx, const std::string& file, const std::vector<std::string>& seeds, bool gluing,
                 std::ostream& out) {
  auto c = materialize(ctx, load_kind(ctx, file, DocKind::PreCyl).precyl);
  std::vector<MorId> ids;
  for (const auto& s : seeds) {
    auto f = c.find_morphism(s);
    if (!f) throw UsageError("no morphism named '" + s + "'");
    ids.push_back(*f);
  }
  out << print_precyl(saturate_equivalences(c, ids, {gluing}));
  return 0;
}

int cmd_ceq(const Context& ctx, const std::string& file, std::ostream& out) {
  auto c = materialize(ctx, load_kind(ctx, file, DocKind::PreCyl).precyl);
  auto e = ceq_build(c);
  std::size_t reedy = 0, weq = 0;
  for (const auto& m : e.morphisms) {
    reedy += m.reedy_cofibration;
    weq += m.weak_equivalence;
  }
  out << "triples " << e.objects.size() << "\nmorphisms " << e.morphisms.size() << "\nreedy-cofibrations " << reedy
      << "\nweak-equivalences " << weq << "\n";
  return 0;
}

int cmd_hslice(const Context& ctx, const std::string& file, const std::string& obj, std::ostream& out) {
  auto c = materialize(ctx, load_kind(ctx, file, DocKind::PreCyl).precyl);
  auto s = hslice_build(c, object_named(c, obj));
  out << "objects " << s.objects.size() << "\nmorphisms " << s.morphisms.size() << "\n";
  return 0;
}

int cmd_hterminal(const Context& ctx, const std::string& file, const std::string& obj, std::ostream& out) {
  auto c = materialize(ctx, load_kind(ctx, file, DocKind::PreCyl).precyl);
  out << obj << " homotopy-terminal " << (h_terminal(c, object_named(c, obj)) ? "yes" : "no") << "\n";
  return 0;
}

int cmd_rlp(const Context& ctx, const std::string& file, int lo, int hi, bool unique, std::ostream& out) {
  auto x = load_kind(ctx, file, DocKind::GlobSet).globset;
  GlobMap f;
  for (int k = 0; k <= x.dim_bound(); ++k) f.components.push_back(std::vector<CellId>(x.count(k), 0));
  auto r = rlp_check(x, terminal(x.dim_bound()), f, sphere_generators(lo, hi), unique);
  out << "squares " << r.squares << "\nholds " << (r.holds ? "yes" : "no") << "\n";
  if (!r.holds) out << "witness " << r.witness << "\n";
  return 0;
}

TheoryPresentation theory_or_default(const Context& ctx, const std::string& file, int n) {
  if (!file.empty()) return load_kind(ctx, file, DocKind::Theory).theory;
  return groupoid_stage(n);
}

int cmd_relative(const Context& ctx, const std::string& file, int k, std::ostream& out) {
  auto t = file.empty() ? canonical_stage(globe_theory(3), {5, 0, 2}) : load_kind(ctx, file, DocKind::Theory).theory;
  auto r = relative_cylinder(k, t);
  out << "k " << r.k << (r.top ? " top" : "") << "\n";
  out << "unit " << (r.unit ? to_string(r.unit) : std::string("fold")) << "\n";
  out << "pushout-identity " << (r.pushout_identity ? "yes" : "no") << "\n";
  out << "next-pushout-identity " << (r.next_pushout_identity ? "yes" : "no") << "\n";
  out << "retraction-source " << to_string(r.retraction_source) << "\n";
  out << "retraction-target " << to_string(r.retraction_target) << "\n";
  out << "verified " << (r.verified() ? "yes" : "no") << "\n";
  return r.verified() ? 0 : 1;
}

int cmd_cotruncation(const Context& ctx, const std::string& file, int n, const std::string& variant,
                     std::ostream& out) {
  if (variant != "a" && variant != "h") throw UsageError("--variant is a or h");
  auto g = groupoid_precyl(theory_or_default(ctx, file, n), n, variant == "h");
  bool ok = cotruncation_test(g.cat(), standard_chain(g));
  out << "objects " << g.cat().object_count() << " morphisms " << g.cat().morphism_count() << "\n";
  out << "cotruncation " << (ok ? "true" : "false") << "\n";
  return 0;
}

int cmd_theory_extend(const Context& ctx, const std::string& file, const std::vector<std::string>& pairs,
                      std::ostream& out) {
  auto t = load_kind(ctx, file, DocKind::Theory).theory;
  std::vector<Pair> ps;
  TheoryIndex idx(t);
  for (const auto& text : pairs) {
    // NAME K TABLE : H1 : H2, NAME optional.
    auto colon = text.find(" : ");
    if (colon == std::string::npos) throw UsageError("--pair is '[NAME] K TABLE : H1 : H2'");
    auto head = tokenize_command(text.substr(0, colon));
    auto rest = text.substr(colon + 3);
    auto colon2 = rest.find(" : ");
    if (colon2 == std::string::npos || head.size() < 2 || head.size() > 3)
      throw UsageError("--pair is '[NAME] K TABLE : H1 : H2'");
    Pair p;
    std::size_t i = 0;
    if (head.size() == 3) p.name = head[i++];
    p.k = std::stoi(head[i++]);
    p.arity = parse_table(head[i]);
    p.h1 = parse_term(idx, p.arity, rest.substr(0, colon2));
    p.h2 = parse_term(idx, p.arity, rest.substr(colon2 + 3));
    ps.push_back(p);
  }
  out << print_theory(extend_theory(t, ps));
  return 0;
}

int cmd_random(const Context& ctx, const std::string& what, int dim, std::size_t max, int n, std::ostream& out) {
  Rng rng(ctx.seed);
  if (what == "globset") {
    out << print_globset(random_globular_set(rng, dim, max));
  } else if (what == "model") {
    auto inst = random_model_pair(groupoid_test_theory(), n, rng);
    out << print_model(inst.target.model);
  } else {
    throw UsageError("random makes a globset or a model");
  }
  return 0;
}

int dispatch(std::vector<std::string> args, Context ctx, std::ostream& out, std::ostream& err);

int cmd_run(const Context& ctx, const std::string& file, std::ostream& out, std::ostream& err) {
  if (ctx.depth > 4) throw UsageError("scripts nest too deeply");
  auto d = load_kind(ctx, file, DocKind::Script);
  Context inner = ctx;
  fs::path p(file);
  if (p.is_relative() && !ctx.base.empty()) p = ctx.base / p;
  inner.base = p.parent_path();
  ++inner.depth;
  int worst = 0;
  for (const auto& cmd : d.script) {
    out << ">";
    for (const auto& t : cmd) out << " " << t;
    out << "\n";
    worst = std::max(worst, dispatch(cmd, inner, out, out));
  }
  (void)err;
  return worst;
}

int dispatch(std::vector<std::string> args, Context ctx, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite globular sets, globular theories, their models and pre-cylinder categories", "globcli"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", ctx.seed, "Seed for random generation");
  app.add_option("--bound", ctx.bound, "Size bound for builtin universes without one");

  std::string file, file2, obj, variant = "h", what, table;
  int n = 1, k = 1, dim = -1, lo = 1, hi = 1;
  std::size_t limit = 0, max = 3;
  bool injective = false, unique = false, no_gluing = false;
  std::vector<CellId> base;
  std::vector<std::string> list;
  std::function<int()> action;

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> f) {
    auto* s = parent->add_subcommand(name, help);
    s->callback([&action, f] { action = f; });
    return s;
  };

  auto* fmt = sub(&app, "format", "Re-print a document canonically", [&] { return cmd_format(ctx, file, out); });
  fmt->add_option("file", file)->required();
  auto* val = sub(&app, "validate", "Report violations of a document", [&] { return cmd_validate(ctx, file, out); });
  val->add_option("file", file)->required();
  auto* sum = sub(&app, "sum", "Realize a globular sum table", [&] {
    out << print_globset(realize_globular_sum(parse_table(table)).shape);
    return 0;
  });
  sum->add_option("table", table, "e.g. 1,0,1")->required();
  auto* hom = sub(&app, "hom", "Enumerate morphisms between globular sets",
                  [&] { return cmd_hom(ctx, file, file2, injective, limit, out); });
  hom->add_option("source", file)->required();
  hom->add_option("target", file2)->required();
  hom->add_flag("--injective", injective);
  hom->add_option("--limit", limit);
  auto* tr = sub(&app, "truncate", "Apply t_n (with the unit map for models)", [&] { return cmd_truncate(ctx, file, n, out); });
  tr->add_option("file", file)->required();
  tr->add_option("--n", n)->required();
  auto* ck = sub(&app, "coskeletify", "Apply the n-coskeleton", [&] { return cmd_coskeletify(ctx, file, n, dim, out); });
  ck->add_option("file", file)->required();
  ck->add_option("--n", n)->required();
  ck->add_option("--dim", dim, "Top dimension (default: the input's)");
  auto* pi = sub(&app, "pi", "Homotopy classes", [&] { return cmd_pi(ctx, file, k, base, out); });
  pi->add_option("file", file)->required();
  pi->add_option("--k", k)->required();
  pi->add_option("--base", base, "Parallel pair a,b of (k-1)-cells")->delimiter(',');
  auto* we = sub(&app, "check-we", "Decide whether the map into the target model is a weak equivalence",
                 [&] { return cmd_check_we(ctx, file, file2, out); });
  we->add_option("source", file)->required();
  we->add_option("target", file2, "Model carrying the map")->required();

  auto* th = app.add_subcommand("theory", "Theory presentations");
  th->require_subcommand(1);
  auto* ext = sub(th, "extend", "Add fillers for admissible pairs", [&] { return cmd_theory_extend(ctx, file, list, out); });
  ext->add_option("file", file)->required();
  ext->add_option("--pair", list, "'[NAME] K TABLE : H1 : H2'")->required();
  std::size_t max_sum = 5, depth = 0;
  int max_dim = 2;
  auto* cs = sub(th, "canonical-stage", "Fill every unfilled admissible pair within bounds", [&] {
    out << print_theory(canonical_stage(load_kind(ctx, file, DocKind::Theory).theory, {max_sum, depth, max_dim}));
    return 0;
  });
  cs->add_option("file", file)->required();
  cs->add_option("--max-sum", max_sum);
  cs->add_option("--depth", depth);
  cs->add_option("--max-dim", max_dim);
  auto* tt = sub(th, "truncate", "Truncate a presentation", [&] {
    out << print_theory(truncate_theory(load_kind(ctx, file, DocKind::Theory).theory, n));
    return 0;
  });
  tt->add_option("file", file)->required();
  tt->add_option("--n", n)->required();

  auto* pc = app.add_subcommand("precyl", "Pre-cylinder categories");
  pc->require_subcommand(1);
  sub(pc, "axioms", "Check the five axioms", [&] { return cmd_axioms(ctx, file, out); })->add_option("file", file)->required();
  auto* sat = sub(pc, "saturate", "Saturate the weak equivalences",
                  [&] { return cmd_saturate(ctx, file, list, !no_gluing, out); });
  sat->add_option("file", file)->required();
  sat->add_option("--seeds", list, "Morphism names")->delimiter(',');
  sat->add_flag("--no-gluing", no_gluing);
  sub(pc, "ceq", "Build C^eq and count Reedy cofibrations", [&] { return cmd_ceq(ctx, file, out); })
      ->add_option("file", file)
      ->required();
  auto* hs = sub(pc, "hslice", "Build the homotopy slice over an object", [&] { return cmd_hslice(ctx, file, obj, out); });
  hs->add_option("file", file)->required();
  hs->add_option("--object", obj)->required();
  auto* ht = sub(pc, "hterminal", "Decide homotopy terminality", [&] { return cmd_hterminal(ctx, file, obj, out); });
  ht->add_option("file", file)->required();
  ht->add_option("--object", obj)->required();
  auto* rl = sub(pc, "rlp", "Lifting of X -> terminal against sphere inclusions",
                 [&] { return cmd_rlp(ctx, file, lo, hi, unique, out); });
  rl->add_option("file", file)->required();
  rl->add_option("--from", lo);
  rl->add_option("--to", hi);
  rl->add_flag("--unique", unique);

  auto* cy = app.add_subcommand("cylinder", "Cylinder constructions");
  cy->require_subcommand(1);
  auto* rel = sub(cy, "relative", "Relative cylinder of the boundary of D_k", [&] { return cmd_relative(ctx, file, k, out); });
  rel->add_option("--theory", file);
  rel->add_option("--k", k)->required();
  auto* ct = sub(cy, "cotruncation", "Cotruncation test on the standard chain",
                 [&] { return cmd_cotruncation(ctx, file, n, variant, out); });
  ct->add_option("--theory", file);
  ct->add_option("--n", n)->required();
  ct->add_option("--variant", variant, "a or h");

  auto* rnd = sub(&app, "random", "Seeded random globset or model", [&] { return cmd_random(ctx, what, dim, max, n, out); });
  rnd->add_option("what", what)->required();
  rnd->add_option("--dim", dim);
  rnd->add_option("--max", max);
  rnd->add_option("--n", n);
  auto* term = sub(&app, "terminal", "The terminal model of a theory", [&] {
    out << print_model(terminal_model(load_kind(ctx, file, DocKind::Theory).theory, dim < 0 ? 2 : dim));
    return 0;
  });
  term->add_option("theory", file)->required();
  term->add_option("--dim", dim);
  auto* run = sub(&app, "run", "Execute a script document", [&] { return cmd_run(ctx, file, out, err); });
  run->add_option("file", file)->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (dim < 0) dim = what == "globset" ? 2 : -1;
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::ostringstream out, err;
  int code = dispatch(args, Context{}, out, err);
  std::cout << out.str() << std::flush;
  std::cerr << err.str() << std::flush;
  return code;
}
