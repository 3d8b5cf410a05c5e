#include "lip/language.hpp"

#include "lip/error.hpp"

namespace lip {

Language Language::standard() {
  Language lang;
  lang.functions = {{"0", 0}, {"*", 0}, {"c", 0}, {"d", 0}, {"s", 1}};
  lang.predicates = {{"=", 2}};
  return lang;
}

Language Language::arithmetic(const std::map<std::string, unsigned>& extra_functions) {
  Language lang;
  lang.functions = {{"0", 0}, {"s", 1}};
  for (const auto& [name, arity] : extra_functions) lang.functions[name] = arity;
  lang.predicates = {{"=", 2}};
  lang.open = false;
  return lang;
}

bool Language::is_constant(std::string_view name) const {
  auto it = functions.find(name);
  return it != functions.end() && it->second == 0;
}

void Language::declare_function(const std::string& name, unsigned arity) { functions[name] = arity; }

void Language::declare_predicate(const std::string& name, unsigned arity) { predicates[name] = arity; }

void Language::validate(const Term& t) const {
  if (!t.is_app()) return;
  auto it = functions.find(t.name());
  if (it == functions.end()) {
    if (!open) throw Error(ErrorCode::UnknownFunctionSymbol, "undeclared function symbol '" + t.name() + "'");
  } else if (it->second != t.args().size()) {
    throw Error(ErrorCode::InvalidArgument, "arity mismatch for '" + t.name() + "'");
  }
  for (const auto& a : t.args()) validate(a);
}

void Language::validate(const Formula& f) const {
  switch (f.kind()) {
    case Formula::Kind::Pred: {
      auto it = predicates.find(f.name());
      if (it == predicates.end()) {
        if (!open) throw Error(ErrorCode::InvalidArgument, "undeclared predicate '" + f.name() + "'");
      } else if (it->second != f.args().size()) {
        throw Error(ErrorCode::InvalidArgument, "arity mismatch for predicate '" + f.name() + "'");
      }
      for (const auto& a : f.args()) validate(a);
      return;
    }
    case Formula::Kind::SetAtom:
      validate(f.arg());
      return;
    case Formula::Kind::Bot:
      return;
    case Formula::Kind::Binary:
      validate(f.left());
      validate(f.right());
      return;
    case Formula::Kind::Quant1:
    case Formula::Kind::Quant2:
      validate(f.body());
      return;
  }
}

}  // namespace lip
