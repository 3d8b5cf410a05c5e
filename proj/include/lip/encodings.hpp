#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lip/derivation.hpp"
#include "lip/formula.hpp"

namespace lip {

// Nn(t) := All X. Sub(X) & Suc(X) & X(0) -> X(t)
Formula nn(const Term& t);
// Sub(X) := all x y. x = y & X(x) -> X(y)
Formula sub_formula(std::string_view set_var);
// Suc(X) := all x. X(x) -> X(s(x))
Formula suc_formula(std::string_view set_var);
// The argument t when f is syntactically Nn(t).
std::optional<Term> nn_argument(const Formula& f);

// Every first-order quantifier is bounded by Nn.
Formula relativize(const Formula& phi);

// Equality axioms for a fixed finite vocabulary: reflexivity, symmetry,
// transitivity, and one congruence sentence per function or predicate
// symbol of positive arity.
struct EqAxiomSet {
  Formula reflexivity;
  Formula symmetry;
  Formula transitivity;
  std::map<std::string, Formula> function_congruence;
  std::map<std::string, Formula> predicate_congruence;

  static EqAxiomSet for_formulas(const std::vector<Formula>& formulas);
  static EqAxiomSet for_symbols(const std::map<std::string, unsigned>& functions,
                                const std::map<std::string, unsigned>& predicates);
  std::vector<Formula> all() const;
};

Formula congruence_axiom(const std::string& symbol, unsigned arity, bool predicate);

// [all x (phi(x) -> phi(s(x))) & phi(0) -> all y. phi(y)] for the single
// free variable of phi (x when phi is closed).
Formula induction_statement(const Formula& phi);

// Gamma_eq => (induction_statement(phi))^Nn, valid in LIP0.
Derivation induction_derivation(const Formula& phi);

// Same shape for an already relativized level-0 formula psi with free
// variable `var`: Gamma => all x.(Nn(x) -> psi(x) -> psi(s(x))) & psi(0) ->
// all y.(Nn(y) -> psi(y)). The antecedent is the part of `axioms` used.
Derivation relativized_induction(const Formula& psi, const std::string& var, const EqAxiomSet& axioms);

// Nn(t(x)) induction for a term t over the variable `var`.
Derivation nn_term_induction(const Term& t, const std::string& var);

// Small Nn facts: => Nn(0); Nn(a) => Nn(s(a)); a = b, Nn(a) => Nn(b).
Derivation nn_zero();
Derivation nn_successor(const Term& a);
Derivation nn_substitution(const Term& a, const Term& b);

// Fix_phi(t) := All X. Sub(X) & all x (phi(X, x) -> X(x)) -> X(t)
Formula fix_formula(const Formula& body, const std::string& set_var, const std::string& term_var, const Term& t);
Abstract fix_abstract(const Formula& body, const std::string& set_var, const std::string& term_var);

class FixpointKit {
 public:
  FixpointKit(Formula body, std::string set_var, std::string term_var, int n);

  const Abstract& fix() const { return fix_; }
  const Formula& body() const { return body_; }
  int n() const { return n_; }

  // all x. phi(Fix, x) -> Fix(x)
  Formula lfp1_statement() const;
  // all x.(phi(tau, x) -> tau(x)) -> all y.(Fix(y) -> tau(y))
  Formula lfp2_statement(const Abstract& tau) const;
  // Sub(tau) for the given abstract.
  Formula sub_of(const Abstract& tau) const;

  const Derivation& lfp1() const { return lfp1_; }
  // Sub(tau) => lfp2_statement(tau)
  Derivation lfp2(const Abstract& tau) const;

 private:
  Formula body_;
  std::string set_var_;
  std::string term_var_;
  int n_;
  Abstract fix_;
  Derivation lfp1_;
};

FixpointKit fixpoint_kit(const Formula& body, const std::string& set_var, const std::string& term_var, int n);

// First-order formula with least fixed-point atoms I_xi(t). Variables are
// named; a fixed-point body may mention only its own set variable and term
// variable.
class IDFormula {
 public:
  enum class Kind { Pred, Bot, Binary, Quant, SetAtom, Fix };

  static IDFormula pred(std::string name, std::vector<Term> args = {});
  static IDFormula bot();
  static IDFormula binary(Connective c, IDFormula lhs, IDFormula rhs);
  static IDFormula quant(Quantifier q, std::string var, IDFormula body);
  static IDFormula set_atom(std::string set_var, Term arg);
  static IDFormula fix(IDFormula body, std::string set_var, std::string term_var, Term arg);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::string& term_var() const { return node_->term_var; }
  const std::vector<Term>& args() const { return node_->args; }
  Connective connective() const { return node_->connective; }
  Quantifier quantifier() const { return node_->quantifier; }
  const IDFormula& left() const { return node_->children[0]; }
  const IDFormula& right() const { return node_->children[1]; }
  const IDFormula& body() const { return node_->children[0]; }

  // Nesting depth of fixed-point atoms.
  int id_level() const;
  std::set<std::string> free_term_vars() const;
  std::string to_string() const;

 private:
  struct Node {
    Kind kind = Kind::Bot;
    std::string name;
    std::string term_var;
    std::vector<Term> args;
    Connective connective = Connective::And;
    Quantifier quantifier = Quantifier::All;
    std::vector<IDFormula> children;
  };
  explicit IDFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula id_translate(const IDFormula& phi);

// f(0) = base & all x. f(s(x)) = step(x, f(x)), where step is a term over
// the variables `step_n` and `step_acc`.
struct PrDefinition {
  std::string name;
  Term base;
  Term step;
  std::string step_n = "x";
  std::string step_acc = "y";

  Formula defining_axiom() const;
};

struct RelativizeOptions {
  // Variables that receive an Nn hypothesis in addition to the free
  // variables of the endsequent.
  std::vector<std::string> variables;
  std::vector<PrDefinition> pr_symbols;
};

struct RelativizedDerivation {
  Derivation derivation;
  // Defining axioms and equality axioms the closure proofs rely on.
  std::vector<Formula> axioms;
};

// Nn(vars), axioms => Nn(t).
Derivation nn_closure(const Term& t, const std::set<std::string>& vars, const std::vector<PrDefinition>& pr_symbols);
std::vector<Formula> closure_axioms(const std::vector<PrDefinition>& pr_symbols);

// From an LI derivation of Gamma => Pi, an LIP0 derivation of
// Nn(vars), Gamma^Nn, axioms => Pi^Nn.
RelativizedDerivation relativize_derivation(const Derivation& d, const RelativizeOptions& options = {});

}  // namespace lip
