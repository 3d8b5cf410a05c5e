#include "lip/semantics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lip/error.hpp"
#include "lip/polarity.hpp"
#include "lip/syntax.hpp"

namespace lip {

namespace {

std::vector<Term> closed_terms(const Language& lang, std::size_t depth) {
  std::vector<Term> out;
  std::set<std::string> seen;
  auto add = [&](const Term& t) {
    if (seen.insert(to_string(t)).second) out.push_back(t);
  };
  for (const auto& [name, arity] : lang.functions) {
    if (arity == 0) add(Term::app(name));
  }
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Term> current = out;
    if (current.empty()) break;
    for (const auto& [name, arity] : lang.functions) {
      if (arity == 0) continue;
      std::vector<std::size_t> pick(arity, 0);
      for (;;) {
        std::vector<Term> args;
        for (auto i : pick) args.push_back(current[i]);
        add(Term::app(name, std::move(args)));
        std::size_t k = 0;
        while (k < arity && ++pick[k] == current.size()) pick[k++] = 0;
        if (k == arity) break;
      }
    }
    if (out.size() > 64) throw Error(ErrorCode::SizeBound, "term universe exceeds 64 terms");
  }
  return out;
}

double power(std::size_t base, std::size_t exp) {
  double out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= static_cast<double>(base);
  return out;
}

}  // namespace

void Structure::init(FiniteHeytingAlgebra algebra, Language language, std::size_t depth) {
  universe_ = closed_terms(language, depth);
  for (std::size_t i = 0; i < universe_.size(); ++i) term_index_[to_string(universe_[i])] = i;
  algebra_ = std::move(algebra);
  language_ = std::move(language);
}

Structure Structure::full(FiniteHeytingAlgebra algebra, Language language, std::size_t depth) {
  Structure s;
  s.init(std::move(algebra), std::move(language), depth);
  const std::size_t h = s.algebra_.size();
  if (power(h, s.universe_.size()) > double(1 << 20)) throw Error(ErrorCode::SizeBound, "full domain H^M is too large");
  SetValue f(s.universe_.size(), 0);
  for (;;) {
    s.domain_.push_back(f);
    std::size_t k = 0;
    while (k < f.size() && ++f[k] == h) f[k++] = 0;
    if (k == f.size()) break;
  }
  s.full_ = true;
  return s;
}

Structure Structure::with_domain(FiniteHeytingAlgebra algebra, Language language, std::size_t depth,
                                 std::vector<SetValue> domain) {
  Structure s;
  s.init(std::move(algebra), std::move(language), depth);
  if (domain.empty()) throw Error(ErrorCode::InvalidArgument, "the domain D must be nonempty");
  for (const auto& f : domain) {
    if (f.size() != s.universe_.size()) throw Error(ErrorCode::InvalidArgument, "domain member has the wrong length");
    for (auto v : f) {
      if (v >= s.algebra_.size()) throw Error(ErrorCode::InvalidArgument, "domain member leaves the algebra");
    }
  }
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  s.full_ = static_cast<double>(domain.size()) == power(s.algebra_.size(), s.universe_.size());
  s.domain_ = std::move(domain);
  return s;
}

std::size_t Structure::term_index(const Term& closed) const {
  auto it = term_index_.find(to_string(closed));
  if (it == term_index_.end()) throw Error(ErrorCode::TermOutsideUniverse, to_string(closed));
  return it->second;
}

std::optional<std::size_t> Structure::find_member(const SetValue& f) const {
  auto it = std::find(domain_.begin(), domain_.end(), f);
  if (it == domain_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

void Structure::set_predicate(const std::string& name, const std::vector<std::size_t>& args, std::size_t value) {
  if (value >= algebra_.size()) throw Error(ErrorCode::InvalidArgument, "predicate value leaves the algebra");
  for (auto a : args) {
    if (a >= universe_.size()) throw Error(ErrorCode::TermOutsideUniverse, "argument index " + std::to_string(a));
  }
  predicates_[name][args] = value;
}

std::size_t Structure::predicate_value(const std::string& name, const std::vector<std::size_t>& args) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return algebra_.bottom();
  auto jt = it->second.find(args);
  return jt == it->second.end() ? algebra_.bottom() : jt->second;
}

namespace {

struct Evaluator {
  const Structure& s;
  const Valuation& v;
  const TermAssignment& sigma;
  std::vector<std::size_t> terms;  // bound term variables, innermost last
  std::vector<std::size_t> sets;   // bound set variables, innermost last

  std::size_t term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = sigma.find(t.name());
        if (it == sigma.end()) throw Error(ErrorCode::UncoveredVariable, "term variable " + t.name());
        return it->second;
      }
      case Term::Kind::Bound:
        return terms.at(terms.size() - 1 - t.index());
      case Term::Kind::App: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(s.universe()[term(a)]);
        return s.term_index(Term::app(t.name(), std::move(args)));
      }
    }
    return 0;
  }

  std::size_t formula(const Formula& f) {
    const auto& H = s.algebra();
    switch (f.kind()) {
      case Formula::Kind::Pred: {
        std::vector<std::size_t> args;
        for (const auto& a : f.args()) args.push_back(term(a));
        return s.predicate_value(f.name(), args);
      }
      case Formula::Kind::SetAtom: {
        std::size_t member;
        if (f.set_is_bound()) {
          member = sets.at(sets.size() - 1 - f.set_index());
        } else {
          auto it = v.find(f.name());
          if (it == v.end()) throw Error(ErrorCode::UncoveredVariable, "set variable " + f.name());
          member = it->second;
        }
        return s.domain().at(member)[term(f.arg())];
      }
      case Formula::Kind::Bot:
        return H.bottom();
      case Formula::Kind::Binary: {
        std::size_t a = formula(f.left());
        std::size_t b = formula(f.right());
        switch (f.connective()) {
          case Connective::And:
            return H.meet(a, b);
          case Connective::Or:
            return H.join(a, b);
          case Connective::Imp:
            return H.imp(a, b);
        }
        break;
      }
      case Formula::Kind::Quant1: {
        bool all = f.quantifier() == Quantifier::All;
        std::size_t acc = all ? H.top() : H.bottom();
        for (std::size_t m = 0; m < s.universe().size(); ++m) {
          terms.push_back(m);
          std::size_t x = formula(f.body());
          terms.pop_back();
          acc = all ? H.meet(acc, x) : H.join(acc, x);
        }
        return acc;
      }
      case Formula::Kind::Quant2: {
        bool all = f.quantifier() == Quantifier::All;
        std::size_t acc = all ? H.top() : H.bottom();
        for (std::size_t F = 0; F < s.domain().size(); ++F) {
          sets.push_back(F);
          std::size_t x = formula(f.body());
          sets.pop_back();
          acc = all ? H.meet(acc, x) : H.join(acc, x);
        }
        return acc;
      }
    }
    return H.bottom();
  }
};

}  // namespace

std::size_t interpret(const Formula& f, const Structure& s, const Valuation& v, const TermAssignment& sigma) {
  Evaluator e{s, v, sigma, {}, {}};
  return e.formula(f);
}

std::size_t antecedent_value(const std::vector<Formula>& gamma, const Structure& s, const Valuation& v,
                             const TermAssignment& sigma) {
  std::size_t acc = s.algebra().top();
  for (const auto& f : gamma) acc = s.algebra().meet(acc, interpret(f, s, v, sigma));
  return acc;
}

std::optional<Countermodel> find_countermodel(const Sequent& seq, const Structure& s) {
  auto set_vars = seq.free_set_vars();
  auto term_vars = seq.free_term_vars();
  std::vector<std::string> sv(set_vars.begin(), set_vars.end());
  std::vector<std::string> tv(term_vars.begin(), term_vars.end());
  if (!tv.empty() && s.universe().empty()) return std::nullopt;
  std::vector<std::size_t> si(sv.size(), 0), ti(tv.size(), 0);
  const auto& H = s.algebra();
  for (;;) {
    Valuation v;
    TermAssignment sigma;
    for (std::size_t i = 0; i < sv.size(); ++i) v[sv[i]] = si[i];
    for (std::size_t i = 0; i < tv.size(); ++i) sigma[tv[i]] = ti[i];
    std::size_t left = antecedent_value(seq.antecedent(), s, v, sigma);
    std::size_t right = seq.succedent() ? interpret(*seq.succedent(), s, v, sigma) : H.bottom();
    if (!H.leq(left, right)) return Countermodel{v, sigma, left, right};

    std::size_t k = 0;
    while (k < ti.size() && ++ti[k] == s.universe().size()) ti[k++] = 0;
    if (k < ti.size()) continue;
    k = 0;
    while (k < si.size() && ++si[k] == s.domain().size()) si[k++] = 0;
    if (k == si.size()) return std::nullopt;
  }
}

ProbeReport omega_soundness_probe(const Structure& s, const Formula& q, const std::vector<std::vector<Formula>>& pool,
                                  const SearchBudget& budget) {
  if (!q.is_quant2(Quantifier::All) || !q.free_set_vars().empty() || !q.free_term_vars().empty()) {
    throw Error(ErrorCode::InvalidArgument, "the probe needs a closed formula All X. phi");
  }
  const auto& H = s.algebra();
  auto zero = s.find_member(SetValue(s.universe().size(), H.bottom()));
  if (!zero) throw Error(ErrorCode::InvalidArgument, "D lacks the constantly-bottom member");

  ProbeReport r;
  r.q_value = interpret(q, s, {});
  std::set<std::string> used;
  collect_names(q, used);
  std::string x = fresh_name(q.name().empty() ? "X" : q.name(), used);
  Formula open = instantiate_set(q.body(), Abstract::of_set_var(x));
  for (std::size_t F = 0; F < s.domain().size(); ++F) r.instance_values.push_back(interpret(open, s, {{x, F}}));

  SearchBudget b = budget;
  for (const auto& t : s.universe()) b.term_candidates.push_back(t);
  bool all_below = true;
  for (const auto& delta : pool) {
    ProbeEntry e;
    e.delta = delta;
    e.member = omega_membership(q, delta, b).member;
    if (e.member) {
      Valuation v;
      for (const auto& f : delta) {
        for (const auto& y : f.free_set_vars()) v[y] = *zero;
      }
      e.value = antecedent_value(delta, s, v);
      ++r.certified;
      all_below = all_below && H.leq(*e.value, H.bottom());
    }
    r.entries.push_back(std::move(e));
  }
  r.unsound_instance = r.certified > 0 && all_below && !H.leq(r.q_value, H.bottom());
  return r;
}

std::vector<std::vector<Formula>> sentence_pool() {
  const char* sets[] = {
      "",
      "bot",
      "top",
      "top -> bot",
      "bot & top",
      "top | bot",
      "(top -> bot) -> bot",
      "top, bot",
      "top, top -> bot",
      "bot | bot",
      "all x. bot",
      "ex x. top",
  };
  std::vector<std::vector<Formula>> out;
  for (const char* text : sets) out.push_back(parse_sequent(std::string(text) + " |-").antecedent());
  return out;
}

namespace {

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

FiniteHeytingAlgebra named_algebra(const std::string& line, const std::vector<std::string>& w) {
  const std::string& name = w[1];
  if (name == "three-chain") return FiniteHeytingAlgebra::three_chain();
  auto suffix = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
    return std::stoul(rest);
  };
  if (auto n = suffix("chain")) return FiniteHeytingAlgebra::chain(*n);
  if (auto k = suffix("boolean")) return FiniteHeytingAlgebra::boolean(*k);
  return parse_algebra(line);
}

std::size_t element(const FiniteHeytingAlgebra& h, const std::string& label) {
  auto i = h.find_label(label);
  if (!i) throw Error(ErrorCode::Parse, "unknown algebra element '" + label + "'");
  return *i;
}

}  // namespace

Structure parse_structure(const std::string& text) {
  std::optional<FiniteHeytingAlgebra> algebra;
  Language lang;
  lang.open = false;
  std::size_t depth = 0;
  std::vector<std::vector<std::string>> members, rows;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "algebra") {
      if (w.size() < 2) throw Error(ErrorCode::Parse, "algebra needs a name or size");
      algebra = named_algebra(line, w);
    } else if (w[0] == "constants") {
      for (std::size_t i = 1; i < w.size(); ++i) lang.declare_function(w[i], 0);
    } else if (w[0] == "functions") {
      for (std::size_t i = 1; i < w.size(); ++i) {
        auto slash = w[i].find('/');
        if (slash == std::string::npos) throw Error(ErrorCode::Parse, "function needs name/arity: " + w[i]);
        lang.declare_function(w[i].substr(0, slash), static_cast<unsigned>(std::stoul(w[i].substr(slash + 1))));
      }
    } else if (w[0] == "depth") {
      if (w.size() != 2) throw Error(ErrorCode::Parse, "depth takes one number");
      depth = std::stoul(w[1]);
    } else if (w[0] == "member") {
      members.emplace_back(w.begin() + 1, w.end());
    } else {
      rows.push_back(w);
    }
  }
  if (!algebra) throw Error(ErrorCode::Parse, "structure file lacks an algebra line");
  for (const auto& w : rows) {
    auto arrow = std::find(w.begin(), w.end(), "->");
    if (arrow != w.end()) lang.declare_predicate(w[0], static_cast<unsigned>(arrow - w.begin() - 1));
  }

  Structure s = Structure::full(*algebra, lang, depth);
  if (!members.empty()) {
    std::vector<SetValue> domain;
    for (const auto& m : members) {
      SetValue f;
      for (const auto& label : m) f.push_back(element(*algebra, label));
      domain.push_back(f);
    }
    s = Structure::with_domain(*algebra, lang, depth, std::move(domain));
  }
  for (const auto& w : rows) {
    auto arrow = std::find(w.begin(), w.end(), "->");
    if (arrow == w.end() || arrow + 2 != w.end()) throw Error(ErrorCode::Parse, "expected 'p t1 ... tk -> h'");
    std::vector<std::size_t> args;
    for (auto it = w.begin() + 1; it != arrow; ++it) args.push_back(s.term_index(parse_term(*it, lang)));
    s.set_predicate(w[0], args, element(*algebra, *(arrow + 1)));
  }
  return s;
}

}  // namespace lip
