#pragma once

#include <random>
#include <string>
#include <vector>

#include "lip/formula.hpp"
#include "lip/term.hpp"

namespace lip::testing {

class FormulaGen {
 public:
  explicit FormulaGen(unsigned seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }
  std::mt19937& rng() { return rng_; }

  Term term(int depth, const std::vector<std::string>& vars) {
    int choice = pick(depth > 0 ? 4 : 3);
    if (choice == 0 && !vars.empty()) return Term::var(vars[pick(static_cast<int>(vars.size()))]);
    if (choice == 1) return Term::app("0");
    if (choice == 2) return Term::app("c");
    if (depth > 0) return Term::app("s", {term(depth - 1, vars)});
    return Term::app("0");
  }

  // Random member of the level-n fragment (n = -1: no set quantifiers),
  // with free set variables drawn from `sets`.
  Formula formula(int level, int depth, std::vector<std::string> vars, const std::vector<std::string>& sets) {
    int options = depth <= 0 ? 3 : (level >= 0 ? 7 : 6);
    switch (pick(options)) {
      case 0:
        if (coin()) return Formula::pred("p", {term(1, vars)});
        return Formula::pred("q", {term(1, vars), term(1, vars)});
      case 1:
        if (!sets.empty()) return Formula::set_atom(sets[pick(static_cast<int>(sets.size()))], term(1, vars));
        return Formula::pred("r", {term(1, vars)});
      case 2:
        return pick(4) == 0 ? Formula::bot() : Formula::pred("p", {term(1, vars)});
      case 3:
      case 4: {
        Connective c = static_cast<Connective>(pick(3));
        Formula a = formula(level, depth - 1, vars, sets);
        Formula b = formula(level, depth - 1, vars, sets);
        return Formula::binary(c, a, b);
      }
      case 5: {
        std::string x = "v" + std::to_string(vars.size());
        auto inner = vars;
        inner.push_back(x);
        Formula body = formula(level, depth - 1, inner, sets);
        return coin() ? Formula::forall(x, body) : Formula::exists(x, body);
      }
      default: {
        std::string X = "S" + std::to_string(depth);
        Formula body = formula(level - 1, depth - 1, {}, {X});
        return coin() ? Formula::forall2(X, body) : Formula::exists2(X, body);
      }
    }
  }

  // Abstract whose body lies in the level-n fragment and has no free set
  // variables.
  Abstract abstract(int level, int depth) {
    Formula body = formula(level, depth, {"a"}, {});
    return Abstract::bind("a", body);
  }

 private:
  std::mt19937 rng_;
};

}  // namespace lip::testing
