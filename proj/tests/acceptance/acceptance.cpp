// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "glob/adjunction.hpp"
#include "glob/cylinder.hpp"
#include "glob/generators.hpp"
#include "glob/precyl.hpp"
#include "glob/strict_models.hpp"

using namespace glob;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool c, const std::string& what) {
    if (!c && ok) {
      ok = false;
      note = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) o.require(false, "time limit " + std::to_string(limit_s) + " s exceeded");
  if (!o.ok) ++failures;
  std::printf("%s %2d %s (%.2f s%s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), s,
              limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(limit_s)) + " s").c_str() : "",
              o.note.empty() ? "" : ": ", o.note.c_str());
  std::fflush(stdout);
}

// Pairs (a, b) of (k-1)-cells with equal boundaries, counted directly.
std::size_t parallel_count(const GlobularSet& x, int k) {
  if (k == 0) return 1;
  std::size_t n = 0;
  auto m = x.count(k - 1);
  for (CellId a = 0; a < m; ++a)
    for (CellId b = 0; b < m; ++b)
      if (k == 1 || (x.source({k - 1, a}) == x.source({k - 1, b}) && x.target({k - 1, a}) == x.target({k - 1, b})))
        ++n;
  return n;
}

GlobMap identity_on(const GlobularSet& x) { return identity_map(x); }

// Classes of k-cells mapped bijectively onto the classes of the target.
bool bijective_on_classes(const std::vector<std::vector<CellId>>& from, const std::vector<std::vector<CellId>>& to,
                          const std::vector<CellId>& image) {
  if (from.size() != to.size()) return false;
  std::vector<int> cls_of;
  std::size_t cells = 0;
  for (const auto& c : to)
    for (auto v : c) cells = std::max<std::size_t>(cells, v + 1);
  cls_of.assign(cells, -1);
  for (std::size_t i = 0; i < to.size(); ++i)
    for (auto v : to[i]) cls_of[v] = static_cast<int>(i);
  std::set<int> hit;
  for (const auto& c : from) {
    std::set<int> imgs;
    for (auto v : c) imgs.insert(image[v] < cls_of.size() ? cls_of[image[v]] : -1);
    if (imgs.size() != 1 || *imgs.begin() < 0) return false;
    if (!hit.insert(*imgs.begin()).second) return false;
  }
  return true;
}

bool reedy_oracle(const PresheafUniverse& u, const EqTriple& a, const EqTriple& b, MorId f1, MorId f2, MorId fi) {
  if (!is_mono(u.maps[f1]) || !is_mono(u.maps[f2])) return false;
  const auto& ja = u.maps[a.j];
  const auto& jb = u.maps[b.j];
  const auto& FI = u.maps[fi];
  const auto& xi = u.objects[a.xi];
  for (std::size_t l = 0; l < xi.counts.size(); ++l) {
    std::set<CellId> inside(ja.comp[l].begin(), ja.comp[l].end());
    std::set<CellId> hit(jb.comp[l].begin(), jb.comp[l].end());
    std::set<CellId> seen;
    for (CellId x = 0; x < xi.counts[l]; ++x) {
      if (inside.count(x)) continue;
      auto y = FI.comp[l][x];
      if (hit.count(y) || !seen.insert(y).second) return false;
    }
  }
  return true;
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(GLOB_CLI_PATH) + " " + args + " 2>&1";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "sphere/hom characterization", 10, [](Outcome& o) {
    Rng rng(101);
    for (int i = 0; i < 50; ++i) {
      auto x = random_globular_set(rng, 4, 8);
      for (int k = 0; k <= 4; ++k)
        o.require(count_homs(sphere(k), x) == parallel_count(x, k),
                  "instance " + std::to_string(i) + " k=" + std::to_string(k));
    }
  });

  criterion(2, "truncation/coskeleton adjunctions", 30, [](Outcome& o) {
    Rng rng(202);
    for (int n = 1; n <= 3; ++n)
      for (int i = 0; i < 100; ++i) {
        int d = n + 2;
        auto x = random_globular_set(rng, d, 3);
        std::string at = "n=" + std::to_string(n) + " instance " + std::to_string(i);
        // t_n -| t_n^*
        auto tx = truncate(x, n).object;
        auto up = constant_extension(tx, d);
        for (int k = n + 1; k <= d; ++k) {
          o.require(up.count(k) == tx.count(n), at + ": constant extension count");
          for (CellId c = 0; c < up.count(k); ++c)
            o.require(up.source({k, c}) == c && up.target({k, c}) == c,
                      at + ": constant extension boundary");
        }
        auto eta = truncation_unit(x, n);
        o.require(is_morphism(x, up, eta), at + ": unit is a morphism");
        auto t_eta = truncate_map(x, up, eta, n);
        auto eps_t = truncation_counit(tx, n, d);
        o.require(compose(eps_t, t_eta) == identity_on(tx), at + ": first triangle of t_n");
        auto eta_up = truncation_unit(up, n);
        auto tup = truncate(up, n).object;
        auto up_eps = constant_extension_map(tup, eps_t, n, d);
        o.require(compose(up_eps, eta_up) == identity_on(up), at + ": second triangle of t_n");
        // iota_n^* -| iota_n_*
        auto sk = skeleton(x, n);
        auto co = coskeleton(sk, d);
        for (int k = n + 1; k <= d; ++k) {
          o.require(co.count(k) == parallel_count(co, k), at + ": coskeleton count");
          std::vector<std::pair<CellId, CellId>> pairs;
          for (CellId a = 0; a < co.count(k - 1); ++a)
            for (CellId b = 0; b < co.count(k - 1); ++b)
              if (k == 1 || (co.source({k - 1, a}) == co.source({k - 1, b}) &&
                             co.target({k - 1, a}) == co.target({k - 1, b})))
                pairs.push_back({a, b});
          for (CellId c = 0; c < co.count(k) && c < pairs.size(); ++c)
            o.require(co.source({k, c}) == pairs[c].first && co.target({k, c}) == pairs[c].second,
                      at + ": coskeleton cell order");
        }
        auto ceta = coskeleton_unit(x, n);
        o.require(is_morphism(x, co, ceta), at + ": coskeleton unit is a morphism");
        o.require(compose(coskeleton_counit(sk), skeleton_map(ceta, n)) == identity_on(sk),
                  at + ": first triangle of iota_n");
        auto ceta_co = coskeleton_unit(co, n);
        auto back = coskeleton_map(skeleton(co, n), sk, coskeleton_counit(sk), d);
        o.require(compose(back, ceta_co) == identity_on(co), at + ": second triangle of iota_n");
      }
  });

  std::vector<GlobularSet> sweep;
  for_each_small_globular_set(5, 3, [&](const GlobularSet& x) { sweep.push_back(x); });

  criterion(3, "cell counting agrees with unique lifting", 120, [&](Outcome& o) {
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const auto& x = sweep[i];
      for (int n = 0; n <= 3; ++n) {
        o.require(is_truncated(x, n, Method::CellCounting) == is_truncated(x, n, Method::Lifting),
                  "truncation, instance " + std::to_string(i) + " n=" + std::to_string(n));
        o.require(is_coskeletal(x, n, Method::CellCounting) == is_coskeletal(x, n, Method::Lifting),
                  "coskeletality, instance " + std::to_string(i) + " n=" + std::to_string(n));
      }
    }
    o.note = o.ok ? std::to_string(sweep.size()) + " sets" : o.note;
  });

  criterion(4, "n-truncated implies (n+1)-coskeletal", 120, [&](Outcome& o) {
    for (std::size_t i = 0; i < sweep.size(); ++i)
      for (int n = 0; n <= 3; ++n)
        if (is_truncated(sweep[i], n, Method::CellCounting))
          o.require(is_coskeletal(sweep[i], n + 1, Method::CellCounting),
                    "instance " + std::to_string(i) + " n=" + std::to_string(n));
  });

  struct Instance {
    int n;
    ExplicitModel x, y;
    GlobMap f;
  };
  std::vector<Instance> instances;
  auto theory = groupoid_test_theory();

  criterion(5, "weak equivalences after truncation and pi compatibility", 120, [&](Outcome& o) {
    for (int n = 1; n <= 2; ++n)
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(1000 * static_cast<std::uint64_t>(n) + seed);
        auto inst = random_model_pair(theory, n, rng);
        Instance in{n, inst.over.source.model, inst.target.model, inst.over.map};
        std::string at = "n=" + std::to_string(n) + " seed " + std::to_string(seed);
        auto tx = trunc_lower(in.x, n);
        auto ty = trunc_lower(in.y, n);
        auto tf = trunc_lower_map(in.x, in.y, in.f, n);
        o.require(is_weak_equivalence(in.x, in.y, in.f) == is_weak_equivalence(tx.model, ty.model, tf),
                  at + ": W and W' differ");
        for (const auto* m : {&in.x, &in.y}) {
          const auto& t = m == &in.x ? tx : ty;
          o.require(bijective_on_classes(homotopy_group(*m, 0), homotopy_group(t.model, 0), t.unit.components[0]),
                    at + ": pi_0");
          for (int k = 1; k <= n; ++k)
            for (const auto& [a, b] : parallel_pairs(m->carrier, k)) {
              auto ua = t.unit.components[static_cast<std::size_t>(k - 1)][a];
              auto ub = t.unit.components[static_cast<std::size_t>(k - 1)][b];
              o.require(bijective_on_classes(homotopy_group(*m, k, std::make_pair(a, b)),
                                             homotopy_group(t.model, k, std::make_pair(ua, ub)),
                                             t.unit.components[static_cast<std::size_t>(k)]),
                        at + ": pi_" + std::to_string(k));
            }
        }
        instances.push_back(std::move(in));
      }
  });

  criterion(6, "the truncation unit is a weak equivalence", 0, [&](Outcome& o) {
    o.require(instances.size() == 60, "criterion 5 produced " + std::to_string(instances.size()) + " instances");
    for (const auto& in : instances)
      for (const auto* m : {&in.x, &in.y}) {
        auto t = trunc_lower(*m, in.n);
        o.require(is_weak_equivalence(*m, t.model, t.unit), "n=" + std::to_string(in.n));
      }
  });

  criterion(7, "pre-cylinder axiom suite and targeted mutations", 60, [](Outcome& o) {
    auto sets = finite_sets_precyl(3);
    o.require(check_precyl_axioms(sets.cat).ok(), "finite sets");
    o.require(check_precyl_axioms(rglob_precyl(1, 6).cat).ok(), "reflexive globular sets");
    o.require(check_precyl_axioms(semisimplicial_precyl(2, 4).cat).ok(), "semi-simplicial sets");
    for (int ax = 1; ax <= 5; ++ax)
      o.require(check_precyl_axioms(targeted_mutation(sets, ax)).failed_axioms() == std::vector<int>{ax},
                "mutation " + std::to_string(ax));
  });

  criterion(8, "semi-simplicial combinatorics and horn lifting", 0, [](Outcome& o) {
    for (int n = 0; n <= 5; ++n) {
      auto p = simplex(n, n);
      for (int k = 0; k <= n; ++k) {
        std::size_t b = 1;
        for (int i = 0; i < k + 1; ++i) b = b * static_cast<std::size_t>(n + 1 - i) / static_cast<std::size_t>(i + 1);
        o.require(p.counts[static_cast<std::size_t>(k)] == b, "count of simplex " + std::to_string(n));
        if (n == 0) continue;
        auto s = PresheafShape::semisimplicial(n);
        auto h = horn(n, k, n);
        o.require(is_mono(h.inclusion) && is_morphism(s, h.object, p, h.inclusion), "horn inclusion");
      }
      if (n >= 1) {
        auto bd = boundary_ss(n, n);
        o.require(is_mono(bd.inclusion), "boundary inclusion");
      }
    }
    Rng rng(808);
    for (int top = 2; top <= 3; ++top) {
      auto s = PresheafShape::semisimplicial(top);
      std::vector<Generator> gens;
      for (int n = 1; n <= top; ++n)
        for (int k = 0; k <= n; ++k) {
          auto h = horn(n, k, top);
          gens.push_back({h.object, simplex(n, top), h.inclusion});
        }
      for (int i = 0; i < 20; ++i) {
        auto x = random_semisimplicial(rng, top, top == 2 ? 10 : 7);
        auto y = random_semisimplicial(rng, top, 3);
        o.require(x.total_cells() <= 30, "instance size");
        std::vector<std::pair<Presheaf, PresheafMap>> targets;
        PresheafMap to_t;
        for (auto c : x.counts) to_t.comp.push_back(std::vector<CellId>(c, 0));
        targets.push_back({terminal_presheaf(s), to_t});
        targets.push_back({x, identity_map(x)});
        PresheafHomOptions one;
        one.limit = 1;
        for (const auto& f : hom_set(s, x, y, one)) targets.push_back({y, f});
        for (const auto& [t, f] : targets)
          for (bool unique : {false, true}) {
            auto a = rlp_check(s, x, t, f, gens, unique);
            auto b = rlp_check_exhaustive(s, x, t, f, gens, unique);
            o.require(a.holds == b.holds && (!a.holds || a.squares == b.squares),
                      "top " + std::to_string(top) + " instance " + std::to_string(i));
          }
      }
    }
  });

  criterion(9, "relative cylinders up to dimension 3", 60, [](Outcome& o) {
    auto t = canonical_stage(globe_theory(3), {5, 0, 2});
    for (int k = 0; k <= 3; ++k) {
      auto r = relative_cylinder(k, t);
      o.require(r.verified(), "k=" + std::to_string(k));
    }
  });

  criterion(10, "Reedy predicate against the latching oracle", 0, [](Outcome& o) {
    // The capped rglob universe has few triples, so the groupoidal universes are checked too.
    std::vector<std::pair<std::string, PresheafUniverse>> universes;
    universes.push_back({"rglob", rglob_precyl(1, 6)});
    for (int n = 1; n <= 2; ++n) {
      auto t = canonical_stage(globe_theory(n + 1), {static_cast<std::size_t>(2 * n + 1), 0, n});
      universes.push_back({"groupoid-h " + std::to_string(n), groupoid_precyl(t, n, true).universe});
    }
    std::string summary;
    for (const auto& [name, u] : universes) {
      auto eq = ceq_build(u.cat);
      std::size_t reedy = 0;
      for (const auto& m : eq.morphisms) {
        bool want = reedy_oracle(u, eq.objects[m.from], eq.objects[m.to], m.f1, m.f2, m.fi);
        o.require(m.reedy_cofibration == want, name + ": disagreement");
        reedy += m.reedy_cofibration;
      }
      o.require(!eq.morphisms.empty(), name + ": no morphisms");
      summary += (summary.empty() ? "" : "; ") + name + " " + std::to_string(reedy) + "/" +
                 std::to_string(eq.morphisms.size()) + " Reedy";
    }
    if (o.ok) o.note = summary;
  });

  criterion(11, "cotruncation on the disk/sphere chain", 0, [](Outcome& o) {
    for (int n = 1; n <= 2; ++n) {
      auto t = canonical_stage(globe_theory(n + 1), {static_cast<std::size_t>(2 * n + 1), 0, n});
      auto h = groupoid_precyl(t, n, true);
      auto a = groupoid_precyl(t, n, false);
      o.require(cotruncation_test(h.cat(), standard_chain(h)), "homotopical n=" + std::to_string(n));
      o.require(!cotruncation_test(a.cat(), standard_chain(a)), "algebraic n=" + std::to_string(n));
    }
  });

  criterion(12, "CLI round trip and determinism", 0, [](Outcome& o) {
    std::size_t files = 0;
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(GLOB_FIXTURE_DIR))
      if (e.is_regular_file()) paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
      o.require(run_cli("format " + p.string()) == slurp(p), "re-print of " + p.filename().string());
      ++files;
    }
    o.require(files >= 10, "too few fixtures");
    for (const auto& args : {std::string("random globset --seed 7 --dim 3 --max 4"), std::string("random model --n 2 --seed 7"),
                             std::string("run ") + GLOB_FIXTURE_DIR + "/demo.script"}) {
      auto a = run_cli(args), b = run_cli(args);
      o.require(!a.empty() && a == b, "nondeterministic: " + args);
    }
    o.require(run_cli("random globset --seed 7") != run_cli("random globset --seed 8"), "seed is ignored");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
