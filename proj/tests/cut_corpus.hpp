#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lip/builder.hpp"
#include "lip/cut_elim.hpp"
#include "lip/search.hpp"
#include "lip/syntax.hpp"

namespace lip::testing {

inline Formula F(const std::string& text) { return parse_formula(text); }

inline std::vector<Formula> Fs(const std::string& text) {
  if (text.empty()) return {};
  return parse_sequent(text + " |-").antecedent();
}

inline std::optional<Derivation> prove(const std::vector<Formula>& ant, const Formula& goal, int depth = 10) {
  SearchBudget b;
  b.max_depth = depth;
  return search_cutfree(Sequent(ant, goal), b);
}

inline Derivation must_prove(const std::vector<Formula>& ant, const Formula& goal) {
  auto d = prove(ant, goal);
  if (!d) throw std::runtime_error("no proof of " + to_string(Sequent(ant, goal)));
  return *d;
}

inline std::vector<Formula> with(std::vector<Formula> xs, const Formula& f) {
  xs.push_back(f);
  return normalize_set(std::move(xs));
}

// Gamma => phi proved directly, Gamma, phi => psi proved directly, joined by a cut.
inline Derivation cutd(const std::string& gamma, const std::string& phi, const std::string& psi) {
  auto g = Fs(gamma);
  return build::cut(must_prove(g, F(phi)), must_prove(with(g, F(phi)), F(psi)));
}

inline void cut_formulas(const Derivation& d, std::set<std::string>& out) {
  if (d.rule == Rule::Cut) out.insert(to_string(*d.witness.cut));
  for (const auto& p : d.premises) cut_formulas(p, out);
}

struct PositiveGen {
  std::mt19937 rng;
  explicit PositiveGen(unsigned seed) : rng(seed) {}
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  std::string atom() {
    const char* atoms[] = {"p", "q", "r", "p(c)"};
    return atoms[pick(4)];
  }
  std::string formula(int depth) {
    if (depth == 0) return atom();
    switch (pick(6)) {
      case 0:
        return "(" + formula(depth - 1) + " & " + formula(depth - 1) + ")";
      case 1:
        return "(" + formula(depth - 1) + " | " + formula(depth - 1) + ")";
      case 2:
        return "(" + formula(depth - 1) + " -> " + formula(depth - 1) + ")";
      case 3:
        return "(ex x. (p(x) & " + formula(depth - 1) + "))";
      case 4:
        return "(all x. (p(x) | " + formula(depth - 1) + "))";
      default:
        return atom();
    }
  }
};

inline const std::string kPositiveContext = "p, q, r, p(c), all x. p(x)";

inline std::vector<std::pair<std::string, Derivation>> cut_corpus() {
  std::vector<std::pair<std::string, Derivation>> out;
  auto add = [&](std::string name, const std::string& g, const std::string& phi, const std::string& psi) {
    out.emplace_back(std::move(name), cutd(g, phi, psi));
  };
  add("and", "p", "p & p", "p");
  add("and-swap", "p, q", "p & q", "q & p");
  add("or", "p", "p | q", "q | p");
  add("imp", "q -> r, (p & q) -> r", "(p & q) -> r", "q -> p -> r");
  add("all", "all x. p(x)", "all x. (p(x) | q)", "p(c) | q");
  add("ex", "p(c)", "ex x. p(x)", "ex y. (p(y) | q)");
  add("bot", "q, q -> bot", "bot", "r");
  add("atom-and", "p & q", "p", "p | r");
  add("atom-inst", "all x. (p(x) -> q(x)), p(c)", "q(c)", "ex x. q(x)");
  add("imp-chain", "p -> q, q -> r", "p -> r", "p -> (r | s)");
  add("ex-and", "ex x. (p(x) & q(x))", "ex x. p(x)", "ex x. (p(x) | r)");
  add("or-left", "p | q", "q | p", "p | q");
  add("all-all", "all x. all y. r(x, y)", "all y. r(c, y)", "r(c, d)");
  add("unused", "", "p -> p", "q -> q");
  add("and-chain", "p, p -> q, q -> r", "r & q", "q & r");
  add("ex-eigen-clash", "p(y), all x. (p(x) -> q(x))", "ex y. q(y)", "ex x. (q(x) | r)");

  {
    auto a = F("a"), b = F("b"), ab = F("a -> b");
    auto left = must_prove(Fs("a -> c, c -> b"), ab);
    auto right = build::imp_l(weaken(build::hyp({a}, a), {ab}), weaken(build::hyp({b}, b), {ab}), ab);
    out.emplace_back("imp-retained", build::cut(left, right));
  }
  {
    auto all = F("all x. (p(x) | q)");
    auto inst = F("p(c) | q");
    auto left = must_prove(Fs("all x. p(x)"), all);
      out.emplace_back("all-principal", build::cut(left, build::all_l(build::hyp({inst}, inst), all, Term::app("c", {}))));

    auto ex = F("ex x. p(x)");
    auto py = F("p(y)");
    auto target = F("ex z. (p(z) | q)");
    auto right = build::ex_l(build::ex_r(build::or_r(build::hyp({py}, py), F("p(y) | q"), 1), target, Term::var("y")), ex, "y");
    out.emplace_back("ex-principal", build::cut(build::ex_r(build::hyp({F("p(y)")}, F("p(y)")), ex, Term::var("y")), right));
  }
  {
    auto inner = cutd("p, q", "q & p", "p & q");
    auto g = Fs("p, q");
    out.emplace_back("nested-left", build::cut(inner, must_prove(with(g, F("p & q")), F("(p | r) & q"))));
    auto g2 = with(g, F("p & q"));
    out.emplace_back("nested-right", build::cut(must_prove(g, F("p & q")), build::cut(must_prove(g2, F("q | s")), must_prove(with(g2, F("q | s")), F("(q | s) & p")))));
  }

  auto ctx = Fs(kPositiveContext);
  int made = 0;
  for (unsigned seed = 1; made < 24 && seed < 400; ++seed) {
    PositiveGen gen(seed);
    Formula phi = F(gen.formula(1 + gen.pick(2)));
    Formula psi = F(gen.formula(1 + gen.pick(2)));
    if (ctx.end() != std::find(ctx.begin(), ctx.end(), phi)) continue;
    auto l = prove(ctx, phi, 8);
    auto r = prove(with(ctx, phi), psi, 8);
    if (!l || !r) continue;
    Derivation d = build::cut(*l, *r);
    if (seed % 3 == 0) {
      Formula chi = F(gen.formula(1));
      auto l2 = prove(ctx, chi, 8);
      auto r2 = prove(with(ctx, chi), phi, 8);
      if (!l2 || !r2) continue;
      d = build::cut(build::cut(*l2, *r2), *r);
    }
    auto m = max_cut_rank(d);
    if (!m || *m > 4 || d.node_count() > 200) continue;
    out.emplace_back("generated-" + std::to_string(seed), d);
    ++made;
  }
  return out;
}


struct InterpCase {
  const char* left;
  const char* right;
  const char* succ;
  const char* expected;
};

inline const InterpCase kInterpCases[] = {
    {"p & q", "", "q | r", "q"},
    {"q -> bot, q", "", "Y(c) -> Y(x)", "bot"},
    {"", "p", "p", "top"},
    {"p, p -> q", "q -> r", "r", "q"},
    {"p -> q", "p", "q", "p -> q"},
    {"all x. p(x)", "", "p(c)", "p(c)"},
    {"all x. p(x)", "p(y) -> q", "q", "all x. p(x)"},
    {"ex x. p(x)", "all x. (p(x) -> q)", "q", nullptr},
    {"p(c) & r", "all x. (p(x) -> q)", "q", "p(c)"},
    {"p | q", "p -> r, q -> r", "r", "p | q"},
    {"p", "q", "p & q", "p"},
    {"q", "p", "p & q", "q"},
    {"r, r -> s", "s -> t", "t", "s"},
    {"bot", "", "p", "bot"},
    {"", "bot", "p", "top"},
    {"p & q, r", "", "q & r", "q & r"},
    {"all x. (p(x) & q(x))", "", "all y. q(y)", nullptr},
    {"all x. r(x, c)", "all y. (r(d, y) -> s)", "s", "r(d,c)"},
    {"p -> q", "(p -> q) -> r", "r", nullptr},
    {"ex x. (p(x) & q(x))", "", "ex y. p(y)", nullptr},
    {"p, q", "", "p | s", "p"},
    {"p -> bot", "p", "r", "p -> bot"},
    {"s", "s -> (p & q)", "q", "s"},
    {"(p | q) & r", "", "r & (q | p)", nullptr},
    {"all x. (p(x) -> q(x)), p(c)", "", "q(c) | r", "q(c)"},
    {"ex x. p(x)", "", "ex y. (p(y) | q)", nullptr},
    {"p(c)", "all x. (p(x) -> q(x))", "q(c)", "p(c)"},
    {"p & (q -> r)", "q", "r & p", nullptr},
    {"", "p -> q, p", "q", "top"},
    {"p, q, r", "r -> s", "s & p", nullptr},
    {"all x. (q(x) | r)", "r -> q(c)", "q(c)", nullptr},
};

inline std::set<std::string> vocabulary(const std::vector<Formula>& fs, std::set<std::string>* vars) {
  std::set<std::string> out;
  for (const auto& f : fs) {
    collect_predicates(f, out);
    for (const auto& x : f.free_set_vars()) out.insert(x);
    if (vars) vars->insert(f.free_term_vars().begin(), f.free_term_vars().end());
  }
  return out;
}

}  // namespace lip::testing
