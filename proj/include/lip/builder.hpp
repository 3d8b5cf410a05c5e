#pragma once

#include <string>
#include <vector>

#include "lip/derivation.hpp"

// Natural-deduction style combinators over sequent derivations. Each
// combinator weakens its premises to a common context and computes the
// conclusion, so callers only track the formulas they care about. Minor
// formulas are discharged from the conclusion's antecedent.
namespace lip::build {

Derivation hyp(const std::vector<Formula>& context, const Formula& f);
Derivation bot_l(const std::vector<Formula>& context, const std::optional<Formula>& succedent);
Derivation bot_r(const Derivation& d);

Derivation and_l(const Derivation& d, const Formula& main, int index);
Derivation and_r(const Derivation& left, const Derivation& right);
Derivation or_l(const Derivation& left, const Derivation& right, const Formula& main);
Derivation or_r(const Derivation& d, const Formula& main, int index);
Derivation imp_l(const Derivation& arg, const Derivation& rest, const Formula& main);
Derivation imp_r(const Derivation& d, const Formula& assumption);

Derivation all_l(const Derivation& d, const Formula& main, const Term& t);
// Generalizes the succedent over the free variable `eigen`.
Derivation all_r(const Derivation& d, const std::string& eigen);
Derivation ex_l(const Derivation& d, const Formula& main, const std::string& eigen);
Derivation ex_r(const Derivation& d, const Formula& main, const Term& t);

Derivation all2_l(const Derivation& d, const Formula& main, const Abstract& tau);
Derivation all2_r(const Derivation& d, const std::string& eigen);
Derivation ex2_l(const Derivation& d, const Formula& main, const std::string& eigen);
Derivation ex2_r(const Derivation& d, const Formula& main, const Abstract& tau);

// Gamma => phi and phi, Delta => Pi give Gamma, Delta => Pi.
Derivation cut(const Derivation& left, const Derivation& right);

// Gamma => A -> B and Delta => A give Gamma, Delta => B.
Derivation mp(const Derivation& implication, const Derivation& argument);
// Gamma => all x. phi gives Gamma => phi(t).
Derivation inst(const Derivation& d, const Term& t);
// Gamma => All X. phi gives Gamma => phi(tau).
Derivation inst2(const Derivation& d, const Abstract& tau);
// Gamma => A & B gives Gamma => A (index 1) or B (index 2).
Derivation proj(const Derivation& d, int index);
// Gamma => A and Delta => B give Gamma, Delta => A & B.
inline Derivation conj(const Derivation& a, const Derivation& b) { return and_r(a, b); }
// phi => phi used as an assumption inside a larger proof.
inline Derivation assume(const Formula& f) { return hyp({}, f); }

}  // namespace lip::build
