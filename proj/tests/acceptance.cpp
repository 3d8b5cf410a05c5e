#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "cut_corpus.hpp"
#include "generators.hpp"
#include "lip/encodings.hpp"
#include "lip/error.hpp"
#include "lip/polarity.hpp"
#include "lip/semantics.hpp"
#include "lip0_gen.hpp"
#include "samples.hpp"

using namespace lip;
using namespace lip::testing;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Collects failed conditions; the first few are shown in the summary line.
struct Tally {
  int checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

json run_lipkit(const std::string& args, double& elapsed) {
  std::string cmd = std::string("'") + LIPKIT_BIN + "' --format json " + args + " 2>/dev/null";
  auto start = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start lipkit");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  elapsed = seconds_since(start);
  return json::parse(out);
}

void criterion_1(Tally& t) {
  double elapsed = 0;
  json j = run_lipkit("demo p-counter2", elapsed);
  std::vector<std::string> vals;
  for (const auto& v : j["valuations"]) vals.push_back(v["value"]);
  t.expect(vals == std::vector<std::string>{"1", "0.5", "1"}, "per-valuation values");
  t.expect(j["meet"] == "0.5", "meet");
  t.expect(!j["certified"].empty(), "some premise certified");
  for (const auto& e : j["certified"]) t.expect(e["value"] == "0", "certified value " + e["delta"].dump());
  t.expect(j["unsound_instance"] == true, "UNSOUND-INSTANCE flag");
  t.expect(j["verdict"] == "UNSOUND-INSTANCE", "verdict");
  t.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed));

  Language lang;
  lang.open = false;
  lang.declare_function("*", 0);
  Structure s = Structure::full(FiniteHeytingAlgebra::three_chain(), lang, 0);
  t.expect(s.universe().size() == 1, "term universe is {*}");
}

void criterion_2(Tally& t) {
  auto corpus = cut_corpus();
  t.expect(corpus.size() >= 30, "corpus size " + std::to_string(corpus.size()));
  for (const auto& [name, d] : corpus) {
    t.expect(is_valid(d, CalculusId::li()), name + " input valid");
    t.expect(d.cut_count() > 0, name + " has a cut");
    t.expect(d.node_count() <= 200, name + " size");
    auto m = max_cut_rank(d);
    t.expect(m && *m <= 4, name + " rank");
    auto start = Clock::now();
    Derivation e = eliminate_cuts(d);
    double secs = seconds_since(start);
    t.expect(e.cut_count() == 0, name + " cut-free");
    t.expect(is_valid(e, CalculusId::li()), name + " output valid");
    t.expect(e.conclusion == d.conclusion, name + " endsequent");
    t.expect(secs < 10, name + " time");
  }
}

void criterion_3(Tally& t) {
  auto start = Clock::now();
  Lip0Gen gen(2024);
  std::mt19937 rng(99);
  auto algebras = heyting_catalogue(5);
  int passed = 0;
  for (int i = 0; i < 100; ++i) {
    Derivation d = gen.next();
    t.expect(is_valid(d, CalculusId::lip(0)), "sample " + std::to_string(i) + " valid");
    for (int j = 0; j < 10; ++j) {
      const auto& h = algebras[rng() % algebras.size()];
      std::size_t m = 1 + rng() % 3;
      Language l;
      l.open = false;
      l.declare_predicate("p", 1);
      l.declare_predicate("q", 0);
      const char* names[] = {"c", "d", "e"};
      for (std::size_t k = 0; k < m; ++k) l.declare_function(names[k], 0);
      auto s = Structure::full(h, l, 0);
      for (std::size_t a = 0; a < m; ++a) s.set_predicate("p", {a}, rng() % h.size());
      s.set_predicate("q", {}, rng() % h.size());
      bool ok = check_validity(d.conclusion, s);
      t.expect(ok, "valid in structure: " + to_string(d.conclusion));
      passed += ok;
    }
  }
  t.expect(passed == 1000, std::to_string(passed) + "/1000 validity checks");
  t.expect(seconds_since(start) < 60, "total time");
}

bool closed_under_intersection(const ClosedSetLattice& c) {
  std::set<Subset> members(c.members.begin(), c.members.end());
  if (!members.contains(full_set(c.polarity.w))) return false;
  for (auto a : c.members) {
    for (auto b : c.members) {
      if (!members.contains(a & b)) return false;
    }
  }
  return true;
}

void criterion_4(Tally& t) {
  std::size_t posets = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& p : posets_up_to_iso(n)) {
      ++posets;
      std::string tag = "poset " + std::to_string(posets);
      auto m = macneille(p, CompletionMode::AsLattice);
      t.expect(closed_under_intersection(m.closed), tag + " complete");
      t.expect(is_order_embedding(m.embedding), tag + " order-reflecting");
      auto d = density_check(m.embedding);
      t.expect(d.direct.join_dense && d.direct.meet_dense, tag + " dense");
      t.expect(d.rules.join_dense && d.rules.meet_dense, tag + " dense by rules");
      t.expect(d.agree, tag + " formulations agree");
      t.expect(regularity_check(m.embedding), tag + " regular");
    }
  }
  t.expect(posets == 1 + 2 + 5 + 16 + 63, "poset enumeration count");

  auto algebras = heyting_catalogue(6);
  t.expect(algebras.size() == 13, "catalogue size");
  for (std::size_t k = 0; k < algebras.size(); ++k) {
    const auto& a = algebras[k];
    std::string tag = "algebra " + std::to_string(k);
    auto m = macneille(a, CompletionMode::AsHeyting);
    if (!m.algebra) {
      t.expect(false, tag + " completion is Heyting");
      continue;
    }
    const auto& c = *m.algebra;
    const auto& g = m.embedding.map;
    t.expect(isomorphic(a, c) && std::set<std::size_t>(g.begin(), g.end()).size() == a.size(), tag + " isomorphic");
    t.expect(g[a.bottom()] == c.bottom(), tag + " bottom");
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        t.expect(g[a.meet(x, y)] == c.meet(g[x], g[y]), tag + " meet");
        t.expect(g[a.join(x, y)] == c.join(g[x], g[y]), tag + " join");
        t.expect(g[a.imp(x, y)] == c.imp(g[x], g[y]), tag + " implication");
      }
    }
  }
}

void criterion_5(Tally& t) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    std::string tag = "frame " + std::to_string(round);
    auto f = random_frame(rng);
    const auto& p = f.polarity;
    t.expect(p.w <= 4 && p.w2 <= 5, tag + " size");
    t.expect(!frame_violation(f), tag + " valid");
    auto plus = frame_plus(f);
    const auto& sets = plus.closed.members;
    auto arrow = [&](Subset X, Subset Y) {
      Subset out = 0;
      for (std::size_t y = 0; y < p.w; ++y) {
        bool all = true;
        for (auto x : elements(X)) all = all && has(Y, f.op[x][y]);
        if (all) out |= bit(y);
      }
      return out;
    };
    auto polar = [&](Subset X, Subset Y) {
      Subset res = 0;
      for (auto x : elements(X)) {
        for (auto z : elements(upper(p, Y))) res |= bit(f.residual[x][z]);
      }
      return lower(p, res);
    };
    auto sub = [](Subset a, Subset b) { return (a & ~b) == 0; };
    for (auto X : sets) {
      for (auto Y : sets) {
        t.expect(arrow(X, Y) == polar(X, Y), tag + " arrow identity");
        for (auto Z : sets) {
          t.expect(sub(X & Y, Z) == sub(X, arrow(Y, Z)), tag + " residuation");
          Subset lhs = X & closure(p, Y | Z);
          Subset rhs = closure(p, (X & Y) | (X & Z));
          t.expect(lhs == rhs, tag + " distributivity");
        }
      }
    }
  }
}

void criterion_6(Tally& t) {
  int cases = 0;
  bool disjoint_bot = false;
  for (const auto& c : kInterpCases) {
    std::string goal = std::string(c.left) + " | " + c.right + " |- " + c.succ;
    auto left = Fs(c.left);
    auto right = Fs(c.right);
    Formula succ = F(c.succ);
    auto all = left;
    all.insert(all.end(), right.begin(), right.end());
    auto d = prove(normalize_set(all), succ);
    if (!d) {
      t.expect(false, goal + " has a cut-free proof");
      continue;
    }
    ++cases;
    Formula i = interpolate(*d, left, right);
    if (c.expected) t.expect(to_string(i) == c.expected, goal + " expected interpolant");

    auto first = prove(left, i);
    t.expect(first && is_valid(*first, CalculusId::li()), goal + " left condition");
    auto second = prove(with(right, i), succ);
    t.expect(second && is_valid(*second, CalculusId::li()), goal + " right condition");

    std::set<std::string> lv, rv, iv;
    auto lvoc = vocabulary(left, &lv);
    auto rvoc = vocabulary(with(right, succ), &rv);
    for (const auto& s : vocabulary({i}, &iv)) t.expect(lvoc.contains(s) && rvoc.contains(s), goal + " symbol " + s);
    for (const auto& x : iv) t.expect(lv.contains(x) && rv.contains(x), goal + " variable " + x);

    std::set<std::string> shared;
    for (const auto& s : lvoc) {
      if (rvoc.contains(s)) shared.insert(s);
    }
    if (shared.empty() && i == Formula::bot() && std::string(c.succ).find('Y') != std::string::npos) disjoint_bot = true;
  }
  t.expect(cases >= 30, "case count " + std::to_string(cases));
  t.expect(disjoint_bot, "disjoint-vocabulary case yields bot");
}

void criterion_7(Tally& t) {
  FormulaGen gen(2024);
  int checked = 0;
  for (int n = 0; n <= 2; ++n) {
    for (int i = 0; i < 167; ++i) {
      Formula phi = gen.formula(n, 4, {"a"}, {"X"});
      Abstract tau = gen.abstract(n, 3);
      if (!level(phi).within(n) || !tau.level().within(n)) {
        t.expect(false, "generator left level " + std::to_string(n));
        continue;
      }
      Formula out = substitute_set(phi, "X", tau);
      t.expect(level(out).within(n), "closure at level " + std::to_string(n) + ": " + to_string(phi));
      t.expect(!out.has_free_set_var("X"), "X eliminated");
      ++checked;
    }
  }
  t.expect(checked >= 500, "checked " + std::to_string(checked));

  int rows = 0;
  for (const auto& row : kLevelRows) {
    Formula f = F(row.text);
    bool level_ok = row.level == -2 ? !f.level().parameter_free() : f.level() == Level::at(row.level);
    t.expect(level_ok, std::string("level of ") + row.text);
    t.expect(rank(f) == row.rank, std::string("rank of ") + row.text);
    ++rows;
  }
  t.expect(rows == 20, "golden table size");
}

void criterion_8(Tally& t) {
  for (const char* text : kInductionSamples) {
    Formula phi = F(text);
    Derivation d = induction_derivation(phi);
    t.expect(is_valid(d, CalculusId::lip(0)), std::string("induction for ") + text);
    t.expect(d.conclusion.succedent() == relativize(induction_statement(phi)), std::string("induction statement ") + text);
  }

  const char* bodies[] = {"x = 0 | ex y. x = s(y) & X(y)", "p(x) | all y. r(x,y) -> X(y)", "((X(x) -> bot) -> bot) & q(x)"};
  for (const char* body : bodies) {
    for (int n : {1, 2}) {
      std::string tag = std::string(body) + " at " + std::to_string(n);
      FixpointKit kit = fixpoint_kit(F(body), "X", "x", n);
      t.expect(is_valid(kit.lfp1(), CalculusId::lip(n)), tag + " first law");
      t.expect(kit.lfp1().conclusion.succedent() == kit.lfp1_statement(), tag + " first statement");
      Abstract tau = parse_abstract("\\x. ex y. r(x,y)");
      Derivation d = kit.lfp2(tau);
      t.expect(is_valid(d, CalculusId::lip(n)), tag + " second law");
      t.expect(d.conclusion.succedent() == kit.lfp2_statement(tau), tag + " second statement");
    }
  }

  int relativized = 0;
  SearchBudget budget;
  for (const char* term : kRelativizeTerms) budget.term_candidates.push_back(parse_term(term));
  for (const char* g : kRelativizeGoals) {
    if (std::string(g).find("(c)") != std::string::npos) continue;
    auto d = search_cutfree(parse_sequent(g), budget);
    if (!d) {
      t.expect(false, std::string("no LI proof of ") + g);
      continue;
    }
    auto r = relativize_derivation(*d);
    t.expect(is_valid(r.derivation, CalculusId::lip(0)), std::string("relativized ") + g);
    t.expect(r.derivation.conclusion.succedent() == relativize(*d->conclusion.succedent()), std::string("succedent ") + g);
    ++relativized;
  }
  t.expect(relativized >= 5, "relativized proofs " + std::to_string(relativized));
}

void criterion_9(Tally& t) {
  Language lang = Language::standard();
  Formula q = parse_formula("All X. X(c) -> X(x)", lang);
  Formula yc = parse_formula("Y(c)", lang);
  Derivation left = build::imp_r(build::bot_l({yc}, parse_formula("Y(x)", lang)), yc);
  Derivation stored = build::bot_l({}, parse_formula("r", lang));
  t.expect(is_valid(left, CalculusId::li()), "left premise valid");
  OmegaCutConfig cfg{{Formula::bot()}, q, left, {{{Formula::bot()}, stored}}};
  Derivation reduced = omega_cut_reduce(cfg);
  t.expect(to_string(reduced) == to_string(stored), "reduces to the stored premise derivation");
  t.expect(reduced.conclusion == stored.conclusion, "endsequent identical");

  SearchBudget b;
  OmegaVerdict member = omega_membership(q, {Formula::bot()}, b);
  t.expect(member.member, "bot context is a member");
  t.expect(member.certificate && is_valid(*member.certificate, CalculusId::li()), "certificate checks");
  OmegaVerdict empty = omega_membership(q, {}, b);
  t.expect(!empty.member && !empty.certificate, "empty context not found within budget");

  double elapsed = 0;
  json j = run_lipkit("demo omega-cut", elapsed);
  t.expect(j["verdict"] == "ok", "demo verdict");
  t.expect(j["empty_context"] == "NotFoundWithinBudget", "demo empty context");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Tally&)>> criteria[] = {
      {"counterexample structure reproduction", criterion_1},
      {"cut elimination corpus", criterion_2},
      {"soundness sampling", criterion_3},
      {"MacNeille suite", criterion_4},
      {"Heyting-frame suite", criterion_5},
      {"interpolation", criterion_6},
      {"parameter-free stratification", criterion_7},
      {"encodings", criterion_8},
      {"omega-cut reduction", criterion_9},
  };
  int failed = 0;
  int number = 0;
  for (const auto& [name, body] : criteria) {
    ++number;
    Tally t;
    auto start = Clock::now();
    try {
      body(t);
    } catch (const std::exception& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << "criterion " << number << " [" << name << "]: " << (t.ok() ? "PASS" : "FAIL") << " (" << t.checks
         << " checks, " << seconds_since(start) << " s)";
    for (std::size_t k = 0; k < t.failures.size() && k < 3; ++k) line << "\n    " << t.failures[k];
    if (t.failures.size() > 3) line << "\n    ... " << t.failures.size() - 3 << " more";
    std::cout << line.str() << std::endl;
    failed += !t.ok();
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria pass")) << std::endl;
  return failed ? 1 : 0;
}
