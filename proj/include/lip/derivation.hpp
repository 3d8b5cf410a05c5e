#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lip/formula.hpp"
#include "lip/language.hpp"
#include "lip/sequent.hpp"

namespace lip {

enum class Rule : std::uint8_t {
  Id, Cut, BotL, BotR,
  AndL, AndR, OrL, OrR, ImpL, ImpR,
  AllL, AllR, ExL, ExR,
  All2L, All2R, Ex2L, Ex2R,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
std::size_t rule_arity(Rule r);
bool is_left_rule(Rule r);
bool is_second_order_rule(Rule r);

// Rule-specific data. Left rules record their main formula; Cut its cut
// formula; quantifier rules their instance term / abstract or eigenvariable;
// AndL and OrR the chosen component (1 or 2).
struct Witness {
  std::optional<Formula> main;
  std::optional<Formula> cut;
  std::optional<Term> term;
  std::optional<Abstract> abs;
  std::optional<std::string> eigen;
  int index = 0;
};

struct Derivation {
  Rule rule = Rule::Id;
  Sequent conclusion;
  Witness witness;
  std::vector<Derivation> premises;

  std::size_t node_count() const;
  std::size_t cut_count() const;
  std::size_t height() const;
  // Free variables, eigenvariables and symbols anywhere in the tree.
  std::set<std::string> names() const;
};

struct Violation {
  std::string path;  // "/" for the root, "/0/1" for premise 1 of premise 0
  std::string reason;
};

std::vector<Violation> check(const Derivation& d, const CalculusId& calculus);
inline bool is_valid(const Derivation& d, const CalculusId& calculus) { return check(d, calculus).empty(); }

// Adds `extra` to every antecedent on the way up, renaming eigenvariables
// that would become non-fresh.
Derivation weaken(const Derivation& d, const std::vector<Formula>& extra);
// Turns a derivation of Gamma => (empty) into one of Gamma => psi.
Derivation weaken_succedent(const Derivation& d, const Formula& psi);

struct TermBinding {
  std::string var;
  Term term;
};
struct SetBinding {
  std::string var;
  Abstract abs;
};
using Binding = std::variant<TermBinding, SetBinding>;

// Applies the binding to every sequent and witness; eigenvariables that
// would capture the substituted material are renamed. With a calculus,
// set bindings whose body exceeds its level raise LevelViolation.
Derivation substitute_derivation(const Derivation& d, const Binding& binding,
                                 const std::optional<CalculusId>& calculus = std::nullopt);

std::string to_string(const Derivation& d);
Derivation parse_derivation(std::string_view text, const Language& language = Language::standard());

}  // namespace lip
