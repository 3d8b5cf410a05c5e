#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lip/formula.hpp"
#include "lip/language.hpp"

namespace lip {

// Gamma => Pi with a set antecedent (sorted by canonical text, no
// duplicates) and at most one succedent formula.
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::vector<Formula> antecedent, std::optional<Formula> succedent = std::nullopt);

  const std::vector<Formula>& antecedent() const { return antecedent_; }
  const std::optional<Formula>& succedent() const { return succedent_; }

  bool contains(const Formula& f) const;
  Sequent with(const Formula& f) const;
  Sequent with(const std::vector<Formula>& fs) const;
  Sequent without(const Formula& f) const;
  Sequent with_succedent(std::optional<Formula> f) const;

  std::set<std::string> free_term_vars() const;
  std::set<std::string> free_set_vars() const;
  // Free variables and symbol names, for picking fresh names.
  std::set<std::string> names() const;

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.antecedent_ == b.antecedent_ && a.succedent_ == b.succedent_;
  }

 private:
  std::vector<Formula> antecedent_;
  std::optional<Formula> succedent_;
};

// Canonical antecedent order.
bool formula_less(const Formula& a, const Formula& b);
std::vector<Formula> normalize_set(std::vector<Formula> fs);

struct CalculusId {
  enum class Kind { LI, LIP, LIT };
  Kind kind = Kind::LI;
  int n = 0;

  static CalculusId li() { return {Kind::LI, 0}; }
  static CalculusId lip(int n) { return {Kind::LIP, n}; }
  static CalculusId lit() { return {Kind::LIT, 0}; }
  // "LI", "LIT", "LIP<n>".
  static CalculusId parse(std::string_view text);

  bool admits(const Formula& f) const;
  bool admits_second_order_rules() const { return kind != Kind::LI; }
  std::string name() const;

  friend bool operator==(const CalculusId&, const CalculusId&) = default;
};

std::string to_string(const Sequent& s);
Sequent parse_sequent(std::string_view text, const Language& language = Language::standard());

}  // namespace lip
