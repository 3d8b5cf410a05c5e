#pragma once

#include <map>
#include <string>
#include <string_view>

#include "lip/formula.hpp"
#include "lip/term.hpp"

namespace lip {

// Signature: function symbols (arity 0 = constant) and predicate symbols.
// An open language accepts undeclared applied symbols at their use arity;
// undeclared bare identifiers are read as variables.
struct Language {
  std::map<std::string, unsigned, std::less<>> functions;
  std::map<std::string, unsigned, std::less<>> predicates;
  bool open = true;

  // Constants 0, *, c, d; successor s; equality.
  static Language standard();
  // 0, s, = and the given unary recursion symbols; closed.
  static Language arithmetic(const std::map<std::string, unsigned>& extra_functions = {});

  bool is_constant(std::string_view name) const;
  void declare_function(const std::string& name, unsigned arity);
  void declare_predicate(const std::string& name, unsigned arity);

  // Throws UnknownFunctionSymbol / InvalidArgument on undeclared symbols
  // (closed languages) or arity mismatches.
  void validate(const Term& t) const;
  void validate(const Formula& f) const;
};

}  // namespace lip
