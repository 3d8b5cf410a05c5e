#include "lip/derivation.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip {

namespace {

constexpr std::array<const char*, 18> kRuleNames = {
    "Id", "Cut", "BotL", "BotR", "AndL", "AndR", "OrL", "OrR", "ImpL",
    "ImpR", "AllL", "AllR", "ExL", "ExR", "All2L", "All2R", "Ex2L", "Ex2R",
};

bool has_term_eigen(Rule r) { return r == Rule::AllR || r == Rule::ExL; }
bool has_set_eigen(Rule r) { return r == Rule::All2R || r == Rule::Ex2L; }

}  // namespace

const char* rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (name == kRuleNames[i]) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::Id:
    case Rule::BotL:
      return 0;
    case Rule::Cut:
    case Rule::AndR:
    case Rule::OrL:
    case Rule::ImpL:
      return 2;
    default:
      return 1;
  }
}

bool is_left_rule(Rule r) {
  switch (r) {
    case Rule::BotL:
    case Rule::AndL:
    case Rule::OrL:
    case Rule::ImpL:
    case Rule::AllL:
    case Rule::ExL:
    case Rule::All2L:
    case Rule::Ex2L:
      return true;
    default:
      return false;
  }
}

bool is_second_order_rule(Rule r) {
  return r == Rule::All2L || r == Rule::All2R || r == Rule::Ex2L || r == Rule::Ex2R;
}

std::size_t Derivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

std::size_t Derivation::cut_count() const {
  std::size_t n = rule == Rule::Cut ? 1 : 0;
  for (const auto& p : premises) n += p.cut_count();
  return n;
}

std::size_t Derivation::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

std::set<std::string> Derivation::names() const {
  std::set<std::string> out = conclusion.names();
  if (witness.eigen) out.insert(*witness.eigen);
  if (witness.term) collect_vars(*witness.term, out);
  if (witness.abs) collect_names(witness.abs->body(), out);
  for (const auto& p : premises) {
    auto more = p.names();
    out.insert(more.begin(), more.end());
  }
  return out;
}

namespace {

// Gamma exists with conclusion = {main} u Gamma and premise_i = {extra_i} u
// Gamma, where each optional formula may also already lie in Gamma.
bool context_matches(const Sequent& conclusion, const std::optional<Formula>& main,
                     const std::vector<std::pair<const Sequent*, std::optional<Formula>>>& premises) {
  auto in_all = [&](const Formula& f) {
    if (!conclusion.contains(f)) return false;
    for (const auto& [s, extra] : premises) {
      if (!s->contains(f)) return false;
    }
    return true;
  };
  for (const auto& f : conclusion.antecedent()) {
    if (main && f == *main) continue;
    if (!in_all(f)) return false;
  }
  for (const auto& [s, extra] : premises) {
    for (const auto& f : s->antecedent()) {
      if (extra && f == *extra) continue;
      if (!in_all(f)) return false;
    }
  }
  return true;
}

class Checker {
 public:
  Checker(CalculusId calculus, std::vector<Violation>& out) : calculus_(calculus), out_(out) {}

  void visit(const Derivation& d, const std::string& path) {
    const Sequent& c = d.conclusion;
    for (const auto& f : c.antecedent()) {
      if (!calculus_.admits(f)) report(path, "formula outside " + calculus_.name() + ": " + to_string(f));
    }
    if (c.succedent() && !calculus_.admits(*c.succedent())) {
      report(path, "formula outside " + calculus_.name() + ": " + to_string(*c.succedent()));
    }
    if (is_second_order_rule(d.rule) && !calculus_.admits_second_order_rules()) {
      report(path, std::string("rule ") + rule_name(d.rule) + " not available in LI");
    }
    if (d.premises.size() != rule_arity(d.rule)) {
      report(path, std::string(rule_name(d.rule)) + " expects " + std::to_string(rule_arity(d.rule)) + " premises");
    } else if (auto reason = schema(d)) {
      report(path, *reason);
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      visit(d.premises[i], (path == "/" ? "/" : path + "/") + std::to_string(i));
    }
  }

 private:
  void report(const std::string& path, std::string reason) { out_.push_back({path, std::move(reason)}); }

  std::optional<std::string> schema(const Derivation& d) {
    const Sequent& c = d.conclusion;
    const Witness& w = d.witness;
    const auto& succ = c.succedent();
    auto prem = [&](std::size_t i) -> const Sequent& { return d.premises[i].conclusion; };
    auto same_succ = [&](std::size_t i) { return prem(i).succedent() == succ; };
    auto need_main = [&](auto pred) -> std::optional<std::string> {
      if (!w.main) return std::string("missing main formula witness");
      if (!pred(*w.main)) return std::string("main formula has the wrong shape");
      if (!c.contains(*w.main)) return std::string("main formula missing from antecedent");
      return std::nullopt;
    };
    auto minor_in = [&](std::size_t i, const Formula& f) { return prem(i).contains(f); };
    const char* context_error = "context mismatch between conclusion and premises";
    const char* succ_error = "succedent mismatch";

    switch (d.rule) {
      case Rule::Id:
        if (!w.main) return "missing main formula witness";
        if (!c.contains(*w.main)) return "main formula missing from antecedent";
        if (succ != w.main) return succ_error;
        return std::nullopt;
      case Rule::BotL:
        if (!c.contains(Formula::bot())) return "bot missing from antecedent";
        return std::nullopt;
      case Rule::BotR:
        if (succ != Formula::bot()) return "succedent must be bot";
        if (prem(0).succedent()) return "premise succedent must be empty";
        if (!context_matches(c, std::nullopt, {{&prem(0), std::nullopt}})) return context_error;
        return std::nullopt;
      case Rule::Cut:
        if (!w.cut) return "missing cut formula witness";
        if (prem(0).succedent() != w.cut) return "left premise must prove the cut formula";
        if (!same_succ(1)) return succ_error;
        if (!minor_in(1, *w.cut)) return "cut formula missing from right premise";
        if (!context_matches(c, std::nullopt, {{&prem(0), std::nullopt}, {&prem(1), w.cut}})) return context_error;
        return std::nullopt;
      case Rule::AndL: {
        if (auto e = need_main([](const Formula& f) { return f.is_binary(Connective::And); })) return e;
        if (w.index != 1 && w.index != 2) return "component index must be 1 or 2";
        Formula minor = w.index == 1 ? w.main->left() : w.main->right();
        if (!minor_in(0, minor)) return "minor formula missing from premise";
        if (!same_succ(0)) return succ_error;
        if (!context_matches(c, w.main, {{&prem(0), minor}})) return context_error;
        return std::nullopt;
      }
      case Rule::AndR:
        if (!succ || !succ->is_binary(Connective::And)) return "succedent must be a conjunction";
        if (prem(0).succedent() != succ->left() || prem(1).succedent() != succ->right()) return succ_error;
        if (!context_matches(c, std::nullopt, {{&prem(0), std::nullopt}, {&prem(1), std::nullopt}})) return context_error;
        return std::nullopt;
      case Rule::OrL:
        if (auto e = need_main([](const Formula& f) { return f.is_binary(Connective::Or); })) return e;
        if (!minor_in(0, w.main->left()) || !minor_in(1, w.main->right())) return "minor formula missing from premise";
        if (!same_succ(0) || !same_succ(1)) return succ_error;
        if (!context_matches(c, w.main, {{&prem(0), w.main->left()}, {&prem(1), w.main->right()}})) return context_error;
        return std::nullopt;
      case Rule::OrR: {
        if (!succ || !succ->is_binary(Connective::Or)) return "succedent must be a disjunction";
        if (w.index != 1 && w.index != 2) return "component index must be 1 or 2";
        if (prem(0).succedent() != (w.index == 1 ? succ->left() : succ->right())) return succ_error;
        if (!context_matches(c, std::nullopt, {{&prem(0), std::nullopt}})) return context_error;
        return std::nullopt;
      }
      case Rule::ImpL:
        if (auto e = need_main([](const Formula& f) { return f.is_binary(Connective::Imp); })) return e;
        if (prem(0).succedent() != w.main->left()) return "left premise must prove the antecedent";
        if (!minor_in(1, w.main->right())) return "minor formula missing from premise";
        if (!same_succ(1)) return succ_error;
        if (!context_matches(c, w.main, {{&prem(0), std::nullopt}, {&prem(1), w.main->right()}})) return context_error;
        return std::nullopt;
      case Rule::ImpR:
        if (!succ || !succ->is_binary(Connective::Imp)) return "succedent must be an implication";
        if (prem(0).succedent() != succ->right()) return succ_error;
        if (!minor_in(0, succ->left())) return "minor formula missing from premise";
        if (!context_matches(c, std::nullopt, {{&prem(0), succ->left()}})) return context_error;
        return std::nullopt;
      case Rule::AllL:
      case Rule::ExL:
      case Rule::All2L:
      case Rule::Ex2L: {
        bool first_order = d.rule == Rule::AllL || d.rule == Rule::ExL;
        Quantifier q = (d.rule == Rule::AllL || d.rule == Rule::All2L) ? Quantifier::All : Quantifier::Ex;
        if (auto e = need_main([&](const Formula& f) { return first_order ? f.is_quant1(q) : f.is_quant2(q); })) return e;
        std::optional<Formula> minor;
        if (d.rule == Rule::AllL) {
          if (!w.term) return "missing instance term";
          if (w.term->loose_range() != 0) return "instance term is not locally closed";
          minor = instantiate(w.main->body(), *w.term);
        } else if (d.rule == Rule::All2L) {
          if (!w.abs) return "missing instance abstract";
          minor = instantiate_set(w.main->body(), *w.abs);
          if (calculus_.kind == CalculusId::Kind::LIP && (!w.main->level().within(calculus_.n) || !minor->level().within(calculus_.n))) {
            return "main or minor formula exceeds level " + std::to_string(calculus_.n);
          }
        } else {
          if (!w.eigen) return "missing eigenvariable";
          if (first_order) {
            if (c.free_term_vars().contains(*w.eigen)) return "eigenvariable occurs free in conclusion";
            minor = instantiate(w.main->body(), Term::var(*w.eigen));
          } else {
            if (c.free_set_vars().contains(*w.eigen)) return "eigenvariable occurs free in conclusion";
            minor = instantiate_set(w.main->body(), Abstract::of_set_var(*w.eigen));
          }
        }
        if (!minor_in(0, *minor)) return "minor formula missing from premise";
        if (!same_succ(0)) return succ_error;
        if (!context_matches(c, w.main, {{&prem(0), minor}})) return context_error;
        return std::nullopt;
      }
      case Rule::AllR:
      case Rule::ExR:
      case Rule::All2R:
      case Rule::Ex2R: {
        bool first_order = d.rule == Rule::AllR || d.rule == Rule::ExR;
        Quantifier q = (d.rule == Rule::AllR || d.rule == Rule::All2R) ? Quantifier::All : Quantifier::Ex;
        if (!succ || !(first_order ? succ->is_quant1(q) : succ->is_quant2(q))) return "succedent has the wrong shape";
        std::optional<Formula> minor;
        if (d.rule == Rule::ExR) {
          if (!w.term) return "missing instance term";
          if (w.term->loose_range() != 0) return "instance term is not locally closed";
          minor = instantiate(succ->body(), *w.term);
        } else if (d.rule == Rule::Ex2R) {
          if (!w.abs) return "missing instance abstract";
          minor = instantiate_set(succ->body(), *w.abs);
          if (calculus_.kind == CalculusId::Kind::LIP && (!succ->level().within(calculus_.n) || !minor->level().within(calculus_.n))) {
            return "main or minor formula exceeds level " + std::to_string(calculus_.n);
          }
        } else {
          if (!w.eigen) return "missing eigenvariable";
          if (first_order) {
            if (c.free_term_vars().contains(*w.eigen)) return "eigenvariable occurs free in conclusion";
            minor = instantiate(succ->body(), Term::var(*w.eigen));
          } else {
            if (c.free_set_vars().contains(*w.eigen)) return "eigenvariable occurs free in conclusion";
            minor = instantiate_set(succ->body(), Abstract::of_set_var(*w.eigen));
          }
        }
        if (prem(0).succedent() != minor) return succ_error;
        if (!context_matches(c, std::nullopt, {{&prem(0), std::nullopt}})) return context_error;
        return std::nullopt;
      }
    }
    return "unknown rule";
  }

  CalculusId calculus_;
  std::vector<Violation>& out_;
};

}  // namespace

std::vector<Violation> check(const Derivation& d, const CalculusId& calculus) {
  std::vector<Violation> out;
  Checker(calculus, out).visit(d, "/");
  return out;
}

namespace {

Formula apply_binding(const Formula& f, const Binding& b) {
  if (const auto* t = std::get_if<TermBinding>(&b)) return substitute_term(f, t->var, t->term);
  const auto& s = std::get<SetBinding>(b);
  return substitute_set(f, s.var, s.abs);
}

Abstract apply_binding(const Abstract& a, const Binding& b) {
  Formula closed = Formula::quant1_open(Quantifier::All, a.body(), a.hint());
  return Abstract::from_open(apply_binding(closed, b).body(), a.hint());
}

Sequent apply_binding(const Sequent& s, const Binding& b) {
  std::vector<Formula> ant;
  ant.reserve(s.antecedent().size());
  for (const auto& f : s.antecedent()) ant.push_back(apply_binding(f, b));
  std::optional<Formula> succ;
  if (s.succedent()) succ = apply_binding(*s.succedent(), b);
  return Sequent(std::move(ant), std::move(succ));
}

std::set<std::string> binding_names(const Binding& b) {
  std::set<std::string> out;
  if (const auto* t = std::get_if<TermBinding>(&b)) {
    out.insert(t->var);
    collect_vars(t->term, out);
  } else {
    const auto& s = std::get<SetBinding>(b);
    out.insert(s.var);
    collect_names(s.abs.body(), out);
  }
  return out;
}

// Renames the eigenvariable of `d` to a name outside `avoid`.
Derivation rename_eigen(const Derivation& d, const std::set<std::string>& avoid) {
  std::set<std::string> used = avoid;
  auto names = d.names();
  used.insert(names.begin(), names.end());
  const std::string& old = *d.witness.eigen;
  std::string fresh = fresh_name(old, used);
  Derivation out = d;
  out.witness.eigen = fresh;
  Binding b = has_set_eigen(d.rule) ? Binding(SetBinding{old, Abstract::of_set_var(fresh)})
                                    : Binding(TermBinding{old, Term::var(fresh)});
  out.premises[0] = substitute_derivation(d.premises[0], b);
  return out;
}

Derivation substitute_rec(const Derivation& d, const Binding& b, const std::set<std::string>& avoid) {
  const bool term_binding = std::holds_alternative<TermBinding>(b);
  const std::string& var = term_binding ? std::get<TermBinding>(b).var : std::get<SetBinding>(b).var;
  if (d.witness.eigen && d.premises.size() == 1) {
    bool eigen_is_term = has_term_eigen(d.rule);
    const std::string& e = *d.witness.eigen;
    if (eigen_is_term == term_binding && e == var) {
      // The premise's occurrences are the eigenvariable, not the bound one.
      Derivation out = d;
      out.conclusion = apply_binding(d.conclusion, b);
      return out;
    }
    bool captured = false;
    if (term_binding) {
      std::set<std::string> vars;
      collect_vars(std::get<TermBinding>(b).term, vars);
      captured = eigen_is_term && vars.contains(e);
    } else {
      const Formula& body = std::get<SetBinding>(b).abs.body();
      captured = eigen_is_term ? body.has_free_term_var(e) : body.has_free_set_var(e);
    }
    if (captured) return substitute_rec(rename_eigen(d, avoid), b, avoid);
  }
  Derivation out;
  out.rule = d.rule;
  out.conclusion = apply_binding(d.conclusion, b);
  out.witness = d.witness;
  if (d.witness.main) out.witness.main = apply_binding(*d.witness.main, b);
  if (d.witness.cut) out.witness.cut = apply_binding(*d.witness.cut, b);
  if (d.witness.term && term_binding) {
    const auto& tb = std::get<TermBinding>(b);
    out.witness.term = substitute(*d.witness.term, tb.var, tb.term);
  }
  if (d.witness.abs) out.witness.abs = apply_binding(*d.witness.abs, b);
  out.premises.reserve(d.premises.size());
  for (const auto& p : d.premises) out.premises.push_back(substitute_rec(p, b, avoid));
  return out;
}

}  // namespace

Derivation substitute_derivation(const Derivation& d, const Binding& binding, const std::optional<CalculusId>& calculus) {
  if (const auto* s = std::get_if<SetBinding>(&binding); s && calculus && !calculus->admits(s->abs.body())) {
    throw Error(ErrorCode::LevelViolation, "abstract body " + to_string(s->abs) + " exceeds " + calculus->name());
  }
  if (const auto* t = std::get_if<TermBinding>(&binding); t && t->term.loose_range() != 0) {
    throw Error(ErrorCode::InvalidArgument, "substituted term is not locally closed");
  }
  return substitute_rec(d, binding, binding_names(binding));
}

namespace {

Derivation weaken_rec(const Derivation& d, const std::vector<Formula>& extra, const std::set<std::string>& term_vars,
                      const std::set<std::string>& set_vars, const std::set<std::string>& avoid) {
  if (d.witness.eigen && d.premises.size() == 1) {
    bool clash = has_term_eigen(d.rule) ? term_vars.contains(*d.witness.eigen)
                                        : has_set_eigen(d.rule) && set_vars.contains(*d.witness.eigen);
    if (clash) return weaken_rec(rename_eigen(d, avoid), extra, term_vars, set_vars, avoid);
  }
  Derivation out;
  out.rule = d.rule;
  out.witness = d.witness;
  out.conclusion = d.conclusion.with(extra);
  out.premises.reserve(d.premises.size());
  for (const auto& p : d.premises) out.premises.push_back(weaken_rec(p, extra, term_vars, set_vars, avoid));
  return out;
}

}  // namespace

Derivation weaken(const Derivation& d, const std::vector<Formula>& extra) {
  if (extra.empty()) return d;
  std::set<std::string> term_vars, set_vars, avoid;
  for (const auto& f : extra) {
    term_vars.insert(f.free_term_vars().begin(), f.free_term_vars().end());
    set_vars.insert(f.free_set_vars().begin(), f.free_set_vars().end());
    collect_names(f, avoid);
  }
  return weaken_rec(d, extra, term_vars, set_vars, avoid);
}

Derivation weaken_succedent(const Derivation& d, const Formula& psi) {
  if (d.conclusion.succedent()) {
    throw Error(ErrorCode::InvalidDerivation, "weaken_succedent needs an empty succedent");
  }
  if ((has_term_eigen(d.rule) && psi.has_free_term_var(*d.witness.eigen)) ||
      (has_set_eigen(d.rule) && psi.has_free_set_var(*d.witness.eigen))) {
    std::set<std::string> avoid;
    collect_names(psi, avoid);
    return weaken_succedent(rename_eigen(d, avoid), psi);
  }
  Derivation out = d;
  out.conclusion = d.conclusion.with_succedent(psi);
  switch (d.rule) {
    case Rule::BotL:
      break;
    case Rule::Cut:
    case Rule::ImpL:
      out.premises[1] = weaken_succedent(d.premises[1], psi);
      break;
    case Rule::OrL:
      out.premises[0] = weaken_succedent(d.premises[0], psi);
      out.premises[1] = weaken_succedent(d.premises[1], psi);
      break;
    case Rule::AndL:
    case Rule::AllL:
    case Rule::ExL:
    case Rule::All2L:
    case Rule::Ex2L:
      out.premises[0] = weaken_succedent(d.premises[0], psi);
      break;
    default:
      throw Error(ErrorCode::InvalidDerivation, std::string("rule ") + rule_name(d.rule) + " cannot end with an empty succedent");
  }
  return out;
}

namespace {

void print_rec(const Derivation& d, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent), ' ');
  out += "(";
  out += rule_name(d.rule);
  out += " {";
  std::vector<std::string> fields;
  const Witness& w = d.witness;
  if (w.main) fields.push_back("main: " + to_string(*w.main));
  if (w.cut) fields.push_back("cut: " + to_string(*w.cut));
  if (w.term) fields.push_back("term: " + to_string(*w.term));
  if (w.abs) fields.push_back("abs: " + to_string(*w.abs));
  if (w.eigen) fields.push_back("eigen: " + *w.eigen);
  if (w.index) fields.push_back("i: " + std::to_string(w.index));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += "; ";
    out += fields[i];
  }
  out += "} ";
  out += to_string(d.conclusion);
  for (const auto& p : d.premises) {
    out += "\n";
    print_rec(p, indent + 2, out);
  }
  out += ")";
}

bool premise_ahead(Reader& r) {
  std::size_t saved = r.offset();
  bool ok = false;
  if (r.consume("(")) {
    try {
      std::string name = r.identifier();
      ok = rule_from_name(name).has_value() && r.consume("{");
    } catch (const ParseError&) {
      ok = false;
    }
  }
  r.seek(saved);
  return ok;
}

Derivation read_node(Reader& r) {
  r.expect("(");
  std::string name = r.identifier();
  auto rule = rule_from_name(name);
  if (!rule) r.fail("unknown rule '" + name + "'");
  Derivation d;
  d.rule = *rule;
  r.expect("{");
  while (!r.consume("}")) {
    std::string key = r.identifier();
    r.expect(":");
    if (key == "main") {
      d.witness.main = r.formula();
    } else if (key == "cut") {
      d.witness.cut = r.formula();
    } else if (key == "term") {
      d.witness.term = r.term();
    } else if (key == "abs") {
      d.witness.abs = r.abstract();
    } else if (key == "eigen") {
      d.witness.eigen = r.identifier();
    } else if (key == "i") {
      std::string digits = r.identifier();
      if (digits != "1" && digits != "2") r.fail("component index must be 1 or 2");
      d.witness.index = digits[0] - '0';
    } else {
      r.fail("unknown witness key '" + key + "'");
    }
    if (!r.consume(";")) {
      r.expect("}");
      break;
    }
  }
  std::vector<Formula> ant;
  if (!r.looking_at("|-")) {
    do {
      ant.push_back(r.formula());
    } while (r.consume(","));
  }
  r.expect("|-");
  std::optional<Formula> succ;
  if (!r.looking_at(")") && !premise_ahead(r)) succ = r.formula();
  d.conclusion = Sequent(std::move(ant), std::move(succ));
  while (premise_ahead(r)) d.premises.push_back(read_node(r));
  r.expect(")");
  return d;
}

}  // namespace

std::string to_string(const Derivation& d) {
  std::string out;
  print_rec(d, 0, out);
  return out;
}

Derivation parse_derivation(std::string_view text, const Language& language) {
  Reader r(text, language);
  Derivation d = read_node(r);
  if (!r.at_end()) r.fail("unexpected trailing input");
  return d;
}

}  // namespace lip
