#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lip/formula.hpp"
#include "lip/language.hpp"
#include "lip/lattice.hpp"
#include "lip/search.hpp"
#include "lip/sequent.hpp"

namespace lip {

// A function M -> H, listed in universe order.
using SetValue = std::vector<std::size_t>;

class Structure {
 public:
  // M = closed terms of `language` up to the given depth, D = H^M.
  static Structure full(FiniteHeytingAlgebra algebra, Language language, std::size_t depth);
  // Explicit domain; throws InvalidArgument when D is empty or malformed.
  static Structure with_domain(FiniteHeytingAlgebra algebra, Language language, std::size_t depth,
                               std::vector<SetValue> domain);

  const FiniteHeytingAlgebra& algebra() const { return algebra_; }
  const Language& language() const { return language_; }
  const std::vector<Term>& universe() const { return universe_; }
  const std::vector<SetValue>& domain() const { return domain_; }
  bool is_full() const { return full_; }

  // Throws TermOutsideUniverse.
  std::size_t term_index(const Term& closed) const;
  std::optional<std::size_t> find_member(const SetValue& f) const;

  void set_predicate(const std::string& name, const std::vector<std::size_t>& args, std::size_t value);
  // Unlisted tuples take the bottom element.
  std::size_t predicate_value(const std::string& name, const std::vector<std::size_t>& args) const;
  const std::map<std::string, std::map<std::vector<std::size_t>, std::size_t>, std::less<>>& predicates() const {
    return predicates_;
  }

 private:
  void init(FiniteHeytingAlgebra algebra, Language language, std::size_t depth);

  FiniteHeytingAlgebra algebra_;
  Language language_;
  std::vector<Term> universe_;
  std::map<std::string, std::size_t, std::less<>> term_index_;
  std::vector<SetValue> domain_;
  bool full_ = false;
  std::map<std::string, std::map<std::vector<std::size_t>, std::size_t>, std::less<>> predicates_;
};

// Set variable -> index into the domain D.
using Valuation = std::map<std::string, std::size_t, std::less<>>;
// Term variable -> index into the universe M.
using TermAssignment = std::map<std::string, std::size_t, std::less<>>;

// Throws UncoveredVariable or TermOutsideUniverse.
std::size_t interpret(const Formula& f, const Structure& s, const Valuation& v, const TermAssignment& sigma = {});

// Meet of the antecedent values against the succedent value (bottom when
// absent).
std::size_t antecedent_value(const std::vector<Formula>& gamma, const Structure& s, const Valuation& v,
                             const TermAssignment& sigma = {});

struct Countermodel {
  Valuation valuation;
  TermAssignment assignment;
  std::size_t antecedent = 0;
  std::size_t succedent = 0;
};

std::optional<Countermodel> find_countermodel(const Sequent& seq, const Structure& s);
inline bool check_validity(const Sequent& seq, const Structure& s) { return !find_countermodel(seq, s); }

struct ProbeEntry {
  std::vector<Formula> delta;
  bool member = false;
  std::optional<std::size_t> value;  // only for certified members
};

struct ProbeReport {
  std::size_t q_value = 0;
  std::vector<std::size_t> instance_values;  // V[F/X](phi) for F in D order
  std::vector<ProbeEntry> entries;
  std::size_t certified = 0;
  bool unsound_instance = false;
};

// Every free set variable is sent to the constantly-bottom member of D.
// UNSOUND-INSTANCE: at least one certified premise, every certified premise
// value below bottom, and V(q) not below bottom.
ProbeReport omega_soundness_probe(const Structure& s, const Formula& q, const std::vector<std::vector<Formula>>& pool,
                                  const SearchBudget& budget);

// Predicate-free sentence sets used by the probe demonstrations.
std::vector<std::vector<Formula>> sentence_pool();

// Structure text format:
//   algebra three-chain | chain<N> | boolean<K> | <n> [labels ...] <matrix>
//   constants a b ...      functions f/1 ...      depth k
//   member h1 ... hm       (repeatable; omitted means D = H^M)
//   p t1 ... tk -> h
Structure parse_structure(const std::string& text);

}  // namespace lip
