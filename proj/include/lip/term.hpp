#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lip {

// First-order term in locally nameless form. Free variables carry names,
// variables bound by an enclosing first-order quantifier are de Bruijn
// indices counted over term binders only.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Bound, App };

  static Term var(std::string name);
  static Term bound(unsigned index);
  static Term app(std::string symbol, std::vector<Term> args = {});

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_bound() const { return kind() == Kind::Bound; }
  bool is_app() const { return kind() == Kind::App; }

  // Variable name or function symbol; empty for bound indices.
  const std::string& name() const { return node_->name; }
  unsigned index() const { return node_->index; }
  std::span<const Term> args() const { return node_->args; }

  std::size_t hash() const { return node_->hash; }
  // One past the largest loose bound index (0 when locally closed).
  unsigned loose_range() const { return node_->loose; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    unsigned index = 0;
    std::vector<Term> args;
    std::size_t hash = 0;
    unsigned loose = 0;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Shift every loose bound index by `amount`.
Term lift(const Term& t, unsigned amount);
// Replace loose index `depth` by `replacement` lifted by `depth`; indices
// above `depth` drop by one.
Term instantiate(const Term& t, const Term& replacement, unsigned depth = 0);
// Replace free variable `name` by bound index `depth`.
Term abstract(const Term& t, std::string_view name, unsigned depth = 0);
// Capture-free replacement of a free variable by a locally closed term.
Term substitute(const Term& t, std::string_view name, const Term& replacement);

bool occurs_free(const Term& t, std::string_view name);
void collect_vars(const Term& t, std::set<std::string>& out);
void collect_symbols(const Term& t, std::set<std::string>& out);
// All subterms that are locally closed, including t itself when it is.
void collect_subterms(const Term& t, std::vector<Term>& out);
std::size_t term_depth(const Term& t);

}  // namespace lip

template <>
struct std::hash<lip::Term> {
  std::size_t operator()(const lip::Term& t) const noexcept { return t.hash(); }
};
