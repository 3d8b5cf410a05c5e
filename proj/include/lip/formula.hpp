#pragma once

#include <climits>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lip/term.hpp"

namespace lip {

enum class Connective : std::uint8_t { And, Or, Imp };
enum class Quantifier : std::uint8_t { All, Ex };

// Least parameter-free level of a formula: -1 for formulas without
// second-order quantifiers, n >= 0 for members of the level-n fragment, or
// the NotParameterFree marker.
class Level {
 public:
  static Level at(int n) { return Level(n); }
  static Level first_order() { return Level(-1); }
  static Level not_parameter_free() { return Level(kNotParameterFree); }

  bool parameter_free() const { return value_ != kNotParameterFree; }
  int value() const { return value_; }
  bool within(int n) const { return parameter_free() && value_ <= n; }

  friend bool operator==(Level a, Level b) = default;

 private:
  static constexpr int kNotParameterFree = INT_MIN;
  explicit Level(int v) : value_(v) {}
  int value_;
};

std::string to_string(Level level);

class Abstract;

// Second-order formula with alpha-canonical identity: binders carry only a
// display hint, occurrences are de Bruijn indices (term and set binders are
// counted separately). Values are immutable and cheap to copy.
class Formula {
 public:
  enum class Kind : std::uint8_t { Pred, SetAtom, Bot, Binary, Quant1, Quant2 };

  static Formula pred(std::string name, std::vector<Term> args = {});
  static Formula set_atom(std::string set_var, Term arg);
  static Formula bound_set_atom(unsigned index, Term arg);
  static Formula bot();
  // Defined as bot -> bot.
  static Formula top();
  static Formula binary(Connective c, Formula lhs, Formula rhs);
  static Formula conj(Formula lhs, Formula rhs) { return binary(Connective::And, std::move(lhs), std::move(rhs)); }
  static Formula disj(Formula lhs, Formula rhs) { return binary(Connective::Or, std::move(lhs), std::move(rhs)); }
  static Formula imp(Formula lhs, Formula rhs) { return binary(Connective::Imp, std::move(lhs), std::move(rhs)); }

  // Binder constructors over an already opened body (loose index 0 refers
  // to the new binder).
  static Formula quant1_open(Quantifier q, Formula body, std::string hint = "x");
  static Formula quant2_open(Quantifier q, Formula body, std::string hint = "X");

  // Binder constructors that close over a free variable of `body`.
  static Formula forall(std::string_view x, const Formula& body);
  static Formula exists(std::string_view x, const Formula& body);
  static Formula forall2(std::string_view set_var, const Formula& body);
  static Formula exists2(std::string_view set_var, const Formula& body);

  Kind kind() const { return node_->kind; }
  bool is_pred() const { return kind() == Kind::Pred; }
  bool is_set_atom() const { return kind() == Kind::SetAtom; }
  bool is_bot() const { return kind() == Kind::Bot; }
  bool is_binary() const { return kind() == Kind::Binary; }
  bool is_binary(Connective c) const { return is_binary() && connective() == c; }
  bool is_quant1() const { return kind() == Kind::Quant1; }
  bool is_quant1(Quantifier q) const { return is_quant1() && quantifier() == q; }
  bool is_quant2() const { return kind() == Kind::Quant2; }
  bool is_quant2(Quantifier q) const { return is_quant2() && quantifier() == q; }
  bool is_atomic() const { return is_pred() || is_set_atom() || is_bot(); }

  // Predicate name, free set-variable name, or binder hint.
  const std::string& name() const { return node_->name; }
  bool set_is_bound() const { return node_->set_bound; }
  unsigned set_index() const { return node_->set_index; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg() const { return node_->args.front(); }
  Connective connective() const { return node_->connective; }
  Quantifier quantifier() const { return node_->quantifier; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  const Formula& body() const { return node_->children[0]; }

  std::size_t hash() const { return node_->hash; }
  unsigned term_loose() const { return node_->term_loose; }
  unsigned set_loose() const { return node_->set_loose; }
  bool locally_closed() const { return term_loose() == 0 && set_loose() == 0; }
  Level level() const { return node_->level == INT_MIN ? Level::not_parameter_free() : Level::at(node_->level); }
  unsigned rank() const { return node_->rank; }
  std::size_t size() const { return node_->size; }
  // Sorted free term / set variable names.
  const std::vector<std::string>& free_term_vars() const { return node_->free_term_vars; }
  const std::vector<std::string>& free_set_vars() const { return node_->free_set_vars; }
  bool has_free_term_var(std::string_view x) const;
  bool has_free_set_var(std::string_view x) const;

  // Canonical text serialization, cached. Used as the sort key for
  // antecedents.
  const std::string& key() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind = Kind::Bot;
    std::string name;
    bool set_bound = false;
    unsigned set_index = 0;
    std::vector<Term> args;
    Connective connective = Connective::And;
    Quantifier quantifier = Quantifier::All;
    std::vector<Formula> children;
    std::size_t hash = 0;
    unsigned term_loose = 0;
    unsigned set_loose = 0;
    int level = -1;
    unsigned rank = 0;
    std::size_t size = 1;
    std::vector<std::string> free_term_vars;
    std::vector<std::string> free_set_vars;
    mutable std::once_flag key_once;
    mutable std::string key;
  };
  explicit Formula(std::shared_ptr<Node> node);
  void finish();

  std::shared_ptr<Node> node_;
};

// Abstract lambda x. body; body is stored opened (term index 0 is x).
class Abstract {
 public:
  static Abstract bind(std::string_view x, const Formula& body);
  // Body must have no loose set indices and no loose term index other
  // than 0.
  static Abstract from_open(Formula open_body, std::string hint = "x");
  // lambda x. X(x)
  static Abstract of_set_var(std::string_view set_var);

  const Formula& body() const { return body_; }
  const std::string& hint() const { return hint_; }
  Formula apply(const Term& t) const;
  Level level() const { return body_.level(); }

  friend bool operator==(const Abstract& a, const Abstract& b) { return a.body_ == b.body_; }

 private:
  Abstract(Formula body, std::string hint) : body_(std::move(body)), hint_(std::move(hint)) {}
  Formula body_;
  std::string hint_;
};

// Opens a first-order binder body with term t (t may carry loose indices
// relative to the binder's position).
Formula instantiate(const Formula& body, const Term& t);
// Opens a second-order binder body with an abstract.
Formula instantiate_set(const Formula& body, const Abstract& tau);
Formula abstract_term_var(const Formula& f, std::string_view x);
Formula abstract_set_var(const Formula& f, std::string_view set_var);

// Capture-avoiding substitution of a free term variable by a locally
// closed term.
Formula substitute_term(const Formula& f, std::string_view x, const Term& t);
// Replaces every atom X(t) with tau(t) for the free set variable X.
Formula substitute_set(const Formula& f, std::string_view set_var, const Abstract& tau);

Level level(const Formula& f);
unsigned rank(const Formula& f);
// Every free occurrence of the set variable sits under an even number of
// implication antecedents.
bool positive_in(const Formula& f, std::string_view set_var);

void collect_predicates(const Formula& f, std::set<std::string>& out);
void collect_function_symbols(const Formula& f, std::set<std::string>& out);
// Locally closed subterms of every atom.
void collect_subterms(const Formula& f, std::vector<Term>& out);
// Names of free term variables, free set variables, and binder-free
// identifiers, used to generate fresh names.
void collect_names(const Formula& f, std::set<std::string>& out);

}  // namespace lip

template <>
struct std::hash<lip::Formula> {
  std::size_t operator()(const lip::Formula& f) const noexcept { return f.hash(); }
};
