#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lip/formula.hpp"
#include "lip/language.hpp"
#include "lip/term.hpp"

namespace lip {

// Text grammar:
//   formula  := imp
//   imp      := or ('->' imp)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := 'all' x+ '.' formula | 'ex' x+ '.' formula
//             | 'All' X+ '.' formula | 'Ex' X+ '.' formula
//             | 'bot' | 'top' | '(' formula ')' | X '(' term ')'
//             | term '=' term | p | p '(' term, ... ')'
//   abstract := '\' x '.' formula
// Lowercase identifiers name predicates, function symbols, and term
// variables; uppercase identifiers name set variables. An argument list
// must follow its symbol directly. '#' starts a comment.
class Reader {
 public:
  explicit Reader(std::string_view text, Language language = Language::standard());

  Term term();
  Formula formula();
  Abstract abstract();

  void skip_space();
  bool at_end();
  char peek();
  bool looking_at(std::string_view token);
  bool consume(std::string_view token);
  void expect(std::string_view token);
  std::string identifier();
  [[noreturn]] void fail(const std::string& message) const;

  std::size_t offset() const { return pos_; }
  void seek(std::size_t offset) { pos_ = offset; }
  const Language& language() const { return language_; }

 private:
  Formula implication();
  Formula disjunction();
  Formula conjunction();
  Formula unary();
  Formula quantifier(bool second_order, Quantifier q);
  // Argument lists must follow their symbol without intervening space.
  bool open_paren_follows() const;
  std::vector<Term> arguments();
  Term term_from(std::string name);
  bool is_ident_char(char c) const;

  std::string_view text_;
  std::size_t pos_ = 0;
  Language language_;
  std::vector<std::string> scope_;
};

Term parse_term(std::string_view text, const Language& language = Language::standard());
Formula parse_formula(std::string_view text, const Language& language = Language::standard());
Abstract parse_abstract(std::string_view text, const Language& language = Language::standard());

// Canonical printing: bound variables are named from fixed pools
// (x, y, z, u, v, w, x1, ... and X, Y, Z, U, V, W, X1, ...), skipping names
// already in use, so alpha-equivalent formulas print identically.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Abstract& a);

// A name based on `base` that avoids `used`.
std::string fresh_name(std::string_view base, const std::set<std::string>& used);

}  // namespace lip
