#include "lip/term.hpp"

#include <algorithm>
#include <functional>

namespace lip {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = mix(0x11, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::bound(unsigned index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bound;
  n->index = index;
  n->hash = mix(0x22, index);
  n->loose = index + 1;
  return Term(std::move(n));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  std::size_t h = mix(0x33, std::hash<std::string>{}(symbol));
  unsigned loose = 0;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    loose = std::max(loose, a.loose_range());
  }
  n->name = std::move(symbol);
  n->args = std::move(args);
  n->hash = h;
  n->loose = loose;
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::Bound:
      return a.index() == b.index();
    case Term::Kind::App:
      return a.name() == b.name() && std::ranges::equal(a.args(), b.args());
  }
  return false;
}

Term lift(const Term& t, unsigned amount) {
  if (amount == 0 || t.loose_range() == 0) return t;
  switch (t.kind()) {
    case Term::Kind::Bound:
      return Term::bound(t.index() + amount);
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(lift(a, amount));
      return Term::app(t.name(), std::move(args));
    }
    case Term::Kind::Var:
      break;
  }
  return t;
}

Term instantiate(const Term& t, const Term& replacement, unsigned depth) {
  if (t.loose_range() <= depth) return t;
  switch (t.kind()) {
    case Term::Kind::Bound:
      if (t.index() == depth) return lift(replacement, depth);
      return Term::bound(t.index() - 1);
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(instantiate(a, replacement, depth));
      return Term::app(t.name(), std::move(args));
    }
    case Term::Kind::Var:
      break;
  }
  return t;
}

Term abstract(const Term& t, std::string_view name, unsigned depth) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == name ? Term::bound(depth) : t;
    case Term::Kind::App: {
      if (!occurs_free(t, name)) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(abstract(a, name, depth));
      return Term::app(t.name(), std::move(args));
    }
    case Term::Kind::Bound:
      break;
  }
  return t;
}

Term substitute(const Term& t, std::string_view name, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == name ? replacement : t;
    case Term::Kind::App: {
      if (!occurs_free(t, name)) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, name, replacement));
      return Term::app(t.name(), std::move(args));
    }
    case Term::Kind::Bound:
      break;
  }
  return t;
}

bool occurs_free(const Term& t, std::string_view name) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == name;
    case Term::Kind::App:
      return std::ranges::any_of(t.args(), [&](const Term& a) { return occurs_free(a, name); });
    case Term::Kind::Bound:
      break;
  }
  return false;
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
  } else if (t.is_app()) {
    for (const auto& a : t.args()) collect_vars(a, out);
  }
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  if (t.is_app()) {
    out.insert(t.name());
    for (const auto& a : t.args()) collect_symbols(a, out);
  }
}

void collect_subterms(const Term& t, std::vector<Term>& out) {
  if (t.loose_range() == 0 && std::ranges::find(out, t) == out.end()) out.push_back(t);
  if (t.is_app()) {
    for (const auto& a : t.args()) collect_subterms(a, out);
  }
}

std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, term_depth(a) + 1);
  return d;
}

}  // namespace lip
