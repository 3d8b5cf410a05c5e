#pragma once

#include <random>
#include <string>
#include <vector>

#include "lip/builder.hpp"
#include "lip/derivation.hpp"
#include "lip/error.hpp"
#include "lip/search.hpp"
#include "lip/syntax.hpp"

namespace lip::testing {

inline int quant2_depth(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Binary:
      return std::max(quant2_depth(f.left()), quant2_depth(f.right()));
    case Formula::Kind::Quant1:
      return quant2_depth(f.body());
    case Formula::Kind::Quant2:
      return 1 + quant2_depth(f.body());
    default:
      return 0;
  }
}

inline bool uses_second_order(const Derivation& d) {
  if (is_second_order_rule(d.rule)) return true;
  for (const auto& p : d.premises) {
    if (uses_second_order(p)) return true;
  }
  return false;
}

// Random LIP_0 derivations: a cut-free first-order proof of a tautology
// instance, then a few second-order rules and set substitutions on top.
// Only the constant c occurs, so any universe containing c interprets them.
class Lip0Gen {
 public:
  explicit Lip0Gen(unsigned seed) : rng_(seed) {}

  Derivation next() {
    for (;;) {
      auto base = base_proof();
      if (!base) continue;
      Derivation d = *base;
      int steps = 1 + pick(3);
      for (int i = 0; i < steps; ++i) d = step(d);
      if (!is_valid(d, CalculusId::lip(0))) continue;
      if (d.conclusion.free_set_vars().size() > 1) continue;
      bool shallow = true;
      for (const auto& f : d.conclusion.antecedent()) shallow = shallow && quant2_depth(f) <= 1;
      if (d.conclusion.succedent()) shallow = shallow && quant2_depth(*d.conclusion.succedent()) <= 1;
      if (!shallow) continue;
      return d;
    }
  }

 private:
  std::mt19937 rng_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string atom() {
    const char* atoms[] = {"p(c)", "q", "X(c)", "Y(x)", "X(x)", "p(x)", "Y(c)", "X(c) & q", "Y(c) -> p(c)", "q | X(x)"};
    return atoms[pick(10)];
  }

  std::optional<Derivation> base_proof() {
    std::string a = atom(), b = atom(), c = atom();
    std::string goal;
    switch (pick(12)) {
      case 0: goal = "(" + a + ") -> (" + a + ")"; break;
      case 1: goal = "((" + a + ") & (" + b + ")) -> ((" + b + ") & (" + a + "))"; break;
      case 2: goal = "(" + a + ") -> (" + b + ") -> (" + a + ")"; break;
      case 3: goal = "((" + a + ") -> (" + b + ")) -> ((" + b + ") -> (" + c + ")) -> (" + a + ") -> (" + c + ")"; break;
      case 4: goal = "((" + a + ") | (" + b + ")) -> ((" + b + ") | (" + a + "))"; break;
      case 5: goal = "((" + a + ") & ((" + a + ") -> (" + b + "))) -> (" + b + ")"; break;
      case 6: goal = "(all x. p(x)) -> p(c)"; break;
      case 7: goal = "p(c) -> ex x. p(x)"; break;
      case 8: goal = "bot -> (" + a + ")"; break;
      case 9: goal = "((" + a + ") -> bot) -> (" + a + ") -> (" + b + ")"; break;
      case 10: goal = "(all x. (X(x) -> q)) -> (ex x. X(x)) -> q"; break;
      default: goal = "(" + a + ") -> ((" + b + ") | (" + a + "))"; break;
    }
    SearchBudget budget;
    budget.max_depth = 10;
    auto d = search_cutfree(Sequent({}, parse_formula(goal)), budget);
    if (!d) return std::nullopt;
    // Peel some implications back into the antecedent to vary the shape.
    Derivation out = *d;
    while (out.rule == Rule::ImpR && pick(2) == 0) out = out.premises[0];
    return out;
  }

  Abstract abstract() {
    const char* abs[] = {"\\x. p(x)", "\\x. X(x) & q", "\\x. q -> X(x)", "\\x. All Z. Z(x) -> Z(x)",
                         "\\x. p(x) | Y(c)", "\\x. bot", "\\x. Ex Z. Z(x)"};
    return parse_abstract(abs[pick(7)]);
  }

  std::string set_var_of(const Formula& f) {
    const auto& vs = f.free_set_vars();
    if (vs.empty()) return {};
    return vs[static_cast<std::size_t>(pick(static_cast<int>(vs.size())))];
  }

  Derivation step(const Derivation& d) {
    try {
      const auto& ant = d.conclusion.antecedent();
      const auto& succ = d.conclusion.succedent();
      Derivation out = d;
      switch (pick(6)) {
        case 0: {
          const char* vars[] = {"X", "Y"};
          out = substitute_derivation(d, SetBinding{vars[pick(2)], abstract()}, CalculusId::lip(0));
          break;
        }
        case 1: {
          if (!succ) return d;
          std::string y = set_var_of(*succ);
          if (y.empty()) return d;
          out = build::all2_r(d, y);
          break;
        }
        case 2: {
          if (!succ) return d;
          std::string y = set_var_of(*succ);
          if (y.empty()) return d;
          out = build::ex2_r(d, Formula::exists2(y, *succ), Abstract::of_set_var(y));
          break;
        }
        case 3: {
          if (ant.empty()) return d;
          const Formula& f = ant[static_cast<std::size_t>(pick(static_cast<int>(ant.size())))];
          std::string y = set_var_of(f);
          if (y.empty()) return d;
          out = build::all2_l(d, Formula::forall2(y, f), Abstract::of_set_var(y));
          break;
        }
        case 4: {
          if (ant.empty()) return d;
          const Formula& f = ant[static_cast<std::size_t>(pick(static_cast<int>(ant.size())))];
          std::string y = set_var_of(f);
          if (y.empty()) return d;
          out = build::ex2_l(d, Formula::exists2(y, f), y);
          break;
        }
        default: {
          if (ant.empty() || !succ) return d;
          out = build::imp_r(d, ant[static_cast<std::size_t>(pick(static_cast<int>(ant.size())))]);
          break;
        }
      }
      return is_valid(out, CalculusId::lip(0)) ? out : d;
    } catch (const Error&) {
      return d;
    }
  }
};

}  // namespace lip::testing
