#include "lip/formula.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void merge_into(std::vector<std::string>& out, const std::vector<std::string>& more) {
  if (more.empty()) return;
  std::vector<std::string> merged;
  merged.reserve(out.size() + more.size());
  std::set_union(out.begin(), out.end(), more.begin(), more.end(), std::back_inserter(merged));
  out = std::move(merged);
}

std::vector<std::string> term_vars(std::span<const Term> args) {
  std::set<std::string> vars;
  for (const auto& a : args) collect_vars(a, vars);
  return {vars.begin(), vars.end()};
}

bool sorted_contains(const std::vector<std::string>& v, std::string_view x) {
  return std::binary_search(v.begin(), v.end(), x, std::less<>{});
}

}  // namespace

std::string to_string(Level level) {
  if (!level.parameter_free()) return "not-parameter-free";
  return std::to_string(level.value());
}

Formula::Formula(std::shared_ptr<Node> node) : node_(std::move(node)) { finish(); }

void Formula::finish() {
  Node& n = *node_;
  std::size_t h = mix(0x51ed27ULL, static_cast<std::size_t>(n.kind));
  switch (n.kind) {
    case Kind::Pred: {
      h = mix(h, std::hash<std::string>{}(n.name));
      for (const auto& a : n.args) {
        h = mix(h, a.hash());
        n.term_loose = std::max(n.term_loose, a.loose_range());
      }
      n.free_term_vars = term_vars(n.args);
      n.level = -1;
      n.rank = 0;
      break;
    }
    case Kind::SetAtom: {
      if (n.set_bound) {
        h = mix(h, n.set_index + 1);
        n.set_loose = n.set_index + 1;
      } else {
        h = mix(h, std::hash<std::string>{}(n.name));
        n.free_set_vars = {n.name};
      }
      h = mix(h, n.args.front().hash());
      n.term_loose = n.args.front().loose_range();
      n.free_term_vars = term_vars(n.args);
      n.level = -1;
      n.rank = 0;
      break;
    }
    case Kind::Bot:
      n.level = -1;
      n.rank = 0;
      break;
    case Kind::Binary: {
      const Formula& a = n.children[0];
      const Formula& b = n.children[1];
      h = mix(h, static_cast<std::size_t>(n.connective));
      h = mix(h, a.hash());
      h = mix(h, b.hash());
      n.term_loose = std::max(a.term_loose(), b.term_loose());
      n.set_loose = std::max(a.set_loose(), b.set_loose());
      n.free_term_vars = a.free_term_vars();
      merge_into(n.free_term_vars, b.free_term_vars());
      n.free_set_vars = a.free_set_vars();
      merge_into(n.free_set_vars, b.free_set_vars());
      if (a.node_->level == INT_MIN || b.node_->level == INT_MIN) {
        n.level = INT_MIN;
      } else {
        n.level = std::max(a.node_->level, b.node_->level);
      }
      n.rank = std::max(a.rank(), b.rank()) + 1;
      n.size = a.size() + b.size() + 1;
      break;
    }
    case Kind::Quant1: {
      const Formula& body = n.children[0];
      h = mix(h, static_cast<std::size_t>(n.quantifier));
      h = mix(h, body.hash());
      n.term_loose = body.term_loose() > 0 ? body.term_loose() - 1 : 0;
      n.set_loose = body.set_loose();
      n.free_term_vars = body.free_term_vars();
      n.free_set_vars = body.free_set_vars();
      n.level = body.node_->level;
      n.rank = body.rank() + 1;
      n.size = body.size() + 1;
      break;
    }
    case Kind::Quant2: {
      const Formula& body = n.children[0];
      h = mix(h, 0x2000 + static_cast<std::size_t>(n.quantifier));
      h = mix(h, body.hash());
      n.term_loose = body.term_loose();
      n.set_loose = body.set_loose() > 0 ? body.set_loose() - 1 : 0;
      n.free_term_vars = body.free_term_vars();
      n.free_set_vars = body.free_set_vars();
      if (body.node_->level == INT_MIN || !body.free_set_vars().empty() || body.set_loose() > 1) {
        n.level = INT_MIN;
      } else {
        n.level = body.node_->level + 1;
      }
      n.rank = 0;
      n.size = body.size() + 1;
      break;
    }
  }
  n.hash = h;
}

Formula Formula::pred(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pred;
  n->name = std::move(name);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::set_atom(std::string set_var, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SetAtom;
  n->name = std::move(set_var);
  n->args.push_back(std::move(arg));
  return Formula(std::move(n));
}

Formula Formula::bound_set_atom(unsigned index, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SetAtom;
  n->set_bound = true;
  n->set_index = index;
  n->args.push_back(std::move(arg));
  return Formula(std::move(n));
}

Formula Formula::bot() {
  static const Formula instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bot;
    return Formula(std::move(n));
  }();
  return instance;
}

Formula Formula::top() {
  static const Formula instance = imp(bot(), bot());
  return instance;
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->connective = c;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::quant1_open(Quantifier q, Formula body, std::string hint) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quant1;
  n->quantifier = q;
  n->name = std::move(hint);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::quant2_open(Quantifier q, Formula body, std::string hint) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quant2;
  n->quantifier = q;
  n->name = std::move(hint);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::forall(std::string_view x, const Formula& body) {
  return quant1_open(Quantifier::All, abstract_term_var(body, x), std::string(x));
}

Formula Formula::exists(std::string_view x, const Formula& body) {
  return quant1_open(Quantifier::Ex, abstract_term_var(body, x), std::string(x));
}

Formula Formula::forall2(std::string_view set_var, const Formula& body) {
  return quant2_open(Quantifier::All, abstract_set_var(body, set_var), std::string(set_var));
}

Formula Formula::exists2(std::string_view set_var, const Formula& body) {
  return quant2_open(Quantifier::Ex, abstract_set_var(body, set_var), std::string(set_var));
}

bool Formula::has_free_term_var(std::string_view x) const { return sorted_contains(free_term_vars(), x); }

bool Formula::has_free_set_var(std::string_view x) const { return sorted_contains(free_set_vars(), x); }

const std::string& Formula::key() const {
  std::call_once(node_->key_once, [this] { node_->key = to_string(*this); });
  return node_->key;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  switch (x.kind) {
    case Formula::Kind::Pred:
      return x.name == y.name && x.args == y.args;
    case Formula::Kind::SetAtom:
      if (x.set_bound != y.set_bound) return false;
      if (x.set_bound ? x.set_index != y.set_index : x.name != y.name) return false;
      return x.args == y.args;
    case Formula::Kind::Bot:
      return true;
    case Formula::Kind::Binary:
      return x.connective == y.connective && x.children[0] == y.children[0] && x.children[1] == y.children[1];
    case Formula::Kind::Quant1:
    case Formula::Kind::Quant2:
      return x.quantifier == y.quantifier && x.children[0] == y.children[0];
  }
  return false;
}

Abstract Abstract::bind(std::string_view x, const Formula& body) {
  return Abstract(abstract_term_var(body, x), std::string(x));
}

Abstract Abstract::from_open(Formula open_body, std::string hint) {
  if (open_body.set_loose() != 0 || open_body.term_loose() > 1) {
    throw Error(ErrorCode::IndexOutOfRange, "abstract body has loose indices beyond its parameter");
  }
  return Abstract(std::move(open_body), std::move(hint));
}

Abstract Abstract::of_set_var(std::string_view set_var) {
  return Abstract(Formula::set_atom(std::string(set_var), Term::bound(0)), "x");
}

Formula Abstract::apply(const Term& t) const { return instantiate(body_, t); }

namespace {

Formula inst_term(const Formula& f, const Term& t, unsigned depth) {
  if (f.term_loose() <= depth) return f;
  switch (f.kind()) {
    case Formula::Kind::Pred: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(instantiate(a, t, depth));
      return Formula::pred(f.name(), std::move(args));
    }
    case Formula::Kind::SetAtom:
      if (f.set_is_bound()) return Formula::bound_set_atom(f.set_index(), instantiate(f.arg(), t, depth));
      return Formula::set_atom(f.name(), instantiate(f.arg(), t, depth));
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Binary:
      return Formula::binary(f.connective(), inst_term(f.left(), t, depth), inst_term(f.right(), t, depth));
    case Formula::Kind::Quant1:
      return Formula::quant1_open(f.quantifier(), inst_term(f.body(), t, depth + 1), f.name());
    case Formula::Kind::Quant2:
      return Formula::quant2_open(f.quantifier(), inst_term(f.body(), t, depth), f.name());
  }
  return f;
}

Formula inst_set(const Formula& f, const Abstract& tau, unsigned sdepth) {
  if (f.set_loose() <= sdepth) return f;
  switch (f.kind()) {
    case Formula::Kind::SetAtom: {
      if (f.set_index() == sdepth) {
        // The abstract body's only loose index is its parameter, so term
        // binders passed on the way down need no lifting.
        return inst_term(tau.body(), f.arg(), 0);
      }
      if (f.set_index() > sdepth) return Formula::bound_set_atom(f.set_index() - 1, f.arg());
      return f;
    }
    case Formula::Kind::Pred:
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Binary:
      return Formula::binary(f.connective(), inst_set(f.left(), tau, sdepth),
                             inst_set(f.right(), tau, sdepth));
    case Formula::Kind::Quant1:
      return Formula::quant1_open(f.quantifier(), inst_set(f.body(), tau, sdepth), f.name());
    case Formula::Kind::Quant2:
      return Formula::quant2_open(f.quantifier(), inst_set(f.body(), tau, sdepth + 1), f.name());
  }
  return f;
}

Formula abs_term(const Formula& f, std::string_view x, unsigned depth) {
  if (!f.has_free_term_var(x)) return f;
  switch (f.kind()) {
    case Formula::Kind::Pred: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(abstract(a, x, depth));
      return Formula::pred(f.name(), std::move(args));
    }
    case Formula::Kind::SetAtom:
      if (f.set_is_bound()) return Formula::bound_set_atom(f.set_index(), abstract(f.arg(), x, depth));
      return Formula::set_atom(f.name(), abstract(f.arg(), x, depth));
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Binary:
      return Formula::binary(f.connective(), abs_term(f.left(), x, depth), abs_term(f.right(), x, depth));
    case Formula::Kind::Quant1:
      return Formula::quant1_open(f.quantifier(), abs_term(f.body(), x, depth + 1), f.name());
    case Formula::Kind::Quant2:
      return Formula::quant2_open(f.quantifier(), abs_term(f.body(), x, depth), f.name());
  }
  return f;
}

Formula abs_set(const Formula& f, std::string_view X, unsigned depth) {
  if (!f.has_free_set_var(X)) return f;
  switch (f.kind()) {
    case Formula::Kind::SetAtom:
      return Formula::bound_set_atom(depth, f.arg());
    case Formula::Kind::Pred:
    case Formula::Kind::Bot:
      return f;
    case Formula::Kind::Binary:
      return Formula::binary(f.connective(), abs_set(f.left(), X, depth), abs_set(f.right(), X, depth));
    case Formula::Kind::Quant1:
      return Formula::quant1_open(f.quantifier(), abs_set(f.body(), X, depth), f.name());
    case Formula::Kind::Quant2:
      return Formula::quant2_open(f.quantifier(), abs_set(f.body(), X, depth + 1), f.name());
  }
  return f;
}

bool positive_rec(const Formula& f, std::string_view X, bool positive) {
  if (!f.has_free_set_var(X)) return true;
  switch (f.kind()) {
    case Formula::Kind::SetAtom:
      return positive;
    case Formula::Kind::Pred:
    case Formula::Kind::Bot:
      return true;
    case Formula::Kind::Binary:
      if (f.connective() == Connective::Imp) {
        return positive_rec(f.left(), X, !positive) && positive_rec(f.right(), X, positive);
      }
      return positive_rec(f.left(), X, positive) && positive_rec(f.right(), X, positive);
    case Formula::Kind::Quant1:
    case Formula::Kind::Quant2:
      return positive_rec(f.body(), X, positive);
  }
  return true;
}

}  // namespace

Formula instantiate(const Formula& body, const Term& t) { return inst_term(body, t, 0); }

Formula instantiate_set(const Formula& body, const Abstract& tau) { return inst_set(body, tau, 0); }

Formula abstract_term_var(const Formula& f, std::string_view x) { return abs_term(f, x, 0); }

Formula abstract_set_var(const Formula& f, std::string_view set_var) { return abs_set(f, set_var, 0); }

Formula substitute_term(const Formula& f, std::string_view x, const Term& t) {
  if (t.loose_range() != 0) throw Error(ErrorCode::IndexOutOfRange, "substituted term is not locally closed");
  if (!f.has_free_term_var(x)) return f;
  return inst_term(abs_term(f, x, 0), t, 0);
}

Formula substitute_set(const Formula& f, std::string_view set_var, const Abstract& tau) {
  if (!f.has_free_set_var(set_var)) return f;
  return inst_set(abs_set(f, set_var, 0), tau, 0);
}

Level level(const Formula& f) { return f.level(); }

unsigned rank(const Formula& f) { return f.rank(); }

bool positive_in(const Formula& f, std::string_view set_var) { return positive_rec(f, set_var, true); }

void collect_predicates(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Pred:
      out.insert(f.name());
      return;
    case Formula::Kind::SetAtom:
    case Formula::Kind::Bot:
      return;
    case Formula::Kind::Binary:
      collect_predicates(f.left(), out);
      collect_predicates(f.right(), out);
      return;
    case Formula::Kind::Quant1:
    case Formula::Kind::Quant2:
      collect_predicates(f.body(), out);
      return;
  }
}

void collect_function_symbols(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::SetAtom:
      for (const auto& a : f.args()) collect_symbols(a, out);
      return;
    case Formula::Kind::Bot:
      return;
    case Formula::Kind::Binary:
      collect_function_symbols(f.left(), out);
      collect_function_symbols(f.right(), out);
      return;
    case Formula::Kind::Quant1:
    case Formula::Kind::Quant2:
      collect_function_symbols(f.body(), out);
      return;
  }
}

void collect_subterms(const Formula& f, std::vector<Term>& out) {
  switch (f.kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::SetAtom:
      for (const auto& a : f.args()) collect_subterms(a, out);
      return;
    case Formula::Kind::Bot:
      return;
    case Formula::Kind::Binary:
      collect_subterms(f.left(), out);
      collect_subterms(f.right(), out);
      return;
    case Formula::Kind::Quant1:
    case Formula::Kind::Quant2:
      collect_subterms(f.body(), out);
      return;
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  out.insert(f.free_term_vars().begin(), f.free_term_vars().end());
  out.insert(f.free_set_vars().begin(), f.free_set_vars().end());
  collect_predicates(f, out);
  collect_function_symbols(f, out);
}

}  // namespace lip
