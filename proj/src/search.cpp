#include "lip/search.hpp"

#include <algorithm>

#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip {

namespace {

Derivation make(Rule rule, Sequent conclusion, Witness w, std::vector<Derivation> premises = {}) {
  Derivation d;
  d.rule = rule;
  d.conclusion = std::move(conclusion);
  d.witness = std::move(w);
  d.premises = std::move(premises);
  return d;
}

Witness main_witness(const Formula& f) {
  Witness w;
  w.main = f;
  return w;
}

class Searcher {
 public:
  Searcher(const SearchBudget& budget, const SearchOptions& options) : budget_(budget), options_(options) {}

  SearchResult run(const Sequent& goal) {
    SearchResult result;
    for (int depth = 1; depth <= budget_.max_depth; ++depth) {
      cutoff_ = false;
      history_.clear();
      auto d = prove(goal, depth);
      if (d) {
        result.derivation = std::move(d);
        break;
      }
      if (exhausted_ || !cutoff_) break;
    }
    result.nodes = nodes_;
    result.budget_exhausted = exhausted_;
    return result;
  }

 private:
  std::vector<Term> candidates(const Sequent& s) const {
    std::vector<Term> out = budget_.term_candidates;
    std::vector<Term> sub;
    for (const auto& f : s.antecedent()) collect_subterms(f, sub);
    if (s.succedent()) collect_subterms(*s.succedent(), sub);
    for (auto& t : sub) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
    return out;
  }

  std::optional<Derivation> prove(const Sequent& s, int depth) {
    if (exhausted_) return std::nullopt;
    if (++nodes_ > budget_.max_nodes) {
      exhausted_ = true;
      return std::nullopt;
    }
    const auto& succ = s.succedent();
    if (succ && s.contains(*succ)) return make(Rule::Id, s, main_witness(*succ));
    if (s.contains(Formula::bot())) return make(Rule::BotL, s, {});
    if (depth <= 0) {
      cutoff_ = true;
      return std::nullopt;
    }
    if (std::find(history_.begin(), history_.end(), s) != history_.end()) return std::nullopt;
    history_.push_back(s);
    auto result = expand(s, depth);
    history_.pop_back();
    return result;
  }

  std::optional<Derivation> expand(const Sequent& s, int depth) {
    const auto& succ = s.succedent();
    // Invertible left rules.
    for (const auto& f : s.antecedent()) {
      if (f.is_binary(Connective::And) && (!s.contains(f.left()) || !s.contains(f.right()))) {
        int index = s.contains(f.left()) ? 2 : 1;
        Formula minor = index == 1 ? f.left() : f.right();
        auto p = prove(s.with(minor), depth - 1);
        if (!p) return std::nullopt;
        Witness w = main_witness(f);
        w.index = index;
        return make(Rule::AndL, s, w, {std::move(*p)});
      }
      if (f.is_binary(Connective::Or) && !s.contains(f.left()) && !s.contains(f.right())) {
        Sequent rest = s.without(f);
        auto p1 = prove(rest.with(f.left()), depth - 1);
        if (!p1) return std::nullopt;
        auto p2 = prove(rest.with(f.right()), depth - 1);
        if (!p2) return std::nullopt;
        return make(Rule::OrL, s, main_witness(f), {std::move(*p1), std::move(*p2)});
      }
      if (f.is_quant1(Quantifier::Ex)) {
        std::string y = fresh_name(f.name(), s.names());
        Sequent rest = s.without(f);
        auto p = prove(rest.with(instantiate(f.body(), Term::var(y))), depth - 1);
        if (!p) return std::nullopt;
        Witness w = main_witness(f);
        w.eigen = y;
        return make(Rule::ExL, s, w, {std::move(*p)});
      }
    }
    // Invertible right rules.
    if (succ) {
      if (succ->is_binary(Connective::Imp)) {
        auto p = prove(s.with(succ->left()).with_succedent(succ->right()), depth - 1);
        if (!p) return std::nullopt;
        return make(Rule::ImpR, s, {}, {std::move(*p)});
      }
      if (succ->is_binary(Connective::And)) {
        auto p1 = prove(s.with_succedent(succ->left()), depth - 1);
        if (!p1) return std::nullopt;
        auto p2 = prove(s.with_succedent(succ->right()), depth - 1);
        if (!p2) return std::nullopt;
        return make(Rule::AndR, s, {}, {std::move(*p1), std::move(*p2)});
      }
      if (succ->is_quant1(Quantifier::All)) {
        std::string y = fresh_name(succ->name(), s.names());
        auto p = prove(s.with_succedent(instantiate(succ->body(), Term::var(y))), depth - 1);
        if (!p) return std::nullopt;
        Witness w;
        w.eigen = y;
        return make(Rule::AllR, s, w, {std::move(*p)});
      }
      if (succ->is_bot()) {
        auto p = prove(s.with_succedent(std::nullopt), depth - 1);
        if (!p) return std::nullopt;
        return make(Rule::BotR, s, {}, {std::move(*p)});
      }
    }
    // Alternatives.
    if (succ && succ->is_binary(Connective::Or)) {
      for (int i = 1; i <= 2; ++i) {
        auto p = prove(s.with_succedent(i == 1 ? succ->left() : succ->right()), depth - 1);
        if (p) {
          Witness w;
          w.index = i;
          return make(Rule::OrR, s, w, {std::move(*p)});
        }
        if (exhausted_) return std::nullopt;
      }
    }
    std::vector<Term> terms;
    bool terms_ready = false;
    auto get_terms = [&]() -> const std::vector<Term>& {
      if (!terms_ready) {
        terms = candidates(s);
        terms_ready = true;
      }
      return terms;
    };
    if (succ && succ->is_quant1(Quantifier::Ex)) {
      for (const auto& t : get_terms()) {
        auto p = prove(s.with_succedent(instantiate(succ->body(), t)), depth - 1);
        if (p) {
          Witness w;
          w.term = t;
          return make(Rule::ExR, s, w, {std::move(*p)});
        }
        if (exhausted_) return std::nullopt;
      }
    }
    for (const auto& f : s.antecedent()) {
      if (f.is_binary(Connective::Imp) && !s.contains(f.right())) {
        auto p1 = prove(s.with_succedent(f.left()), depth - 1);
        if (p1) {
          auto p2 = prove(s.with(f.right()), depth - 1);
          if (p2) return make(Rule::ImpL, s, main_witness(f), {std::move(*p1), std::move(*p2)});
        }
        if (exhausted_) return std::nullopt;
      }
    }
    for (const auto& f : s.antecedent()) {
      if (!f.is_quant1(Quantifier::All)) continue;
      for (const auto& t : get_terms()) {
        Formula minor = instantiate(f.body(), t);
        if (s.contains(minor)) continue;
        auto p = prove(s.with(minor), depth - 1);
        if (p) {
          Witness w = main_witness(f);
          w.term = t;
          return make(Rule::AllL, s, w, {std::move(*p)});
        }
        if (exhausted_) return std::nullopt;
      }
    }
    return std::nullopt;
  }

  const SearchBudget& budget_;
  SearchOptions options_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  bool cutoff_ = false;
  std::vector<Sequent> history_;
};

void require_first_order(const Formula& f, const char* what) {
  if (f.level() != Level::first_order()) {
    throw Error(ErrorCode::LevelViolation, std::string(what) + " must be first order: " + to_string(f));
  }
}

}  // namespace

SearchResult search(const Sequent& goal, const SearchBudget& budget, const SearchOptions& options) {
  if (!options.opaque_second_order) {
    for (const auto& f : goal.antecedent()) require_first_order(f, "search goal");
    if (goal.succedent()) require_first_order(*goal.succedent(), "search goal");
  }
  return Searcher(budget, options).run(goal);
}

std::optional<Derivation> search_cutfree(const Sequent& goal, const SearchBudget& budget) {
  return search(goal, budget).derivation;
}

OmegaVerdict omega_membership(const Formula& q, const std::vector<Formula>& delta, const SearchBudget& budget,
                              const std::optional<Formula>& lambda) {
  if (!q.is_quant2() || q.level() != Level::at(0)) {
    throw Error(ErrorCode::LevelViolation, "omega index sets need a level-0 set-quantified formula: " + to_string(q));
  }
  if (!q.free_set_vars().empty()) throw Error(ErrorCode::LevelViolation, "quantified formula has free set variables");
  for (const auto& f : delta) require_first_order(f, "context formula");
  if (lambda) require_first_order(*lambda, "succedent");
  if (q.quantifier() == Quantifier::All && lambda) {
    throw Error(ErrorCode::InvalidArgument, "universal index sets take no succedent");
  }

  std::set<std::string> used;
  collect_names(q, used);
  for (const auto& f : delta) collect_names(f, used);
  if (lambda) collect_names(*lambda, used);
  OmegaVerdict verdict;
  verdict.eigen = fresh_name(q.name().empty() ? "Y" : q.name(), used);
  Formula instance = instantiate_set(q.body(), Abstract::of_set_var(verdict.eigen));
  if (q.quantifier() == Quantifier::All) {
    verdict.goal = Sequent(delta, instance);
  } else {
    std::vector<Formula> ant = delta;
    ant.push_back(instance);
    verdict.goal = Sequent(ant, lambda);
  }
  auto d = search_cutfree(verdict.goal, budget);
  if (d) {
    verdict.member = true;
    verdict.certificate = std::move(d);
  }
  return verdict;
}

Derivation omega_cut_reduce(const OmegaCutConfig& config) {
  const Formula& q = config.q;
  if (!q.is_quant2(Quantifier::All)) throw Error(ErrorCode::InvalidArgument, "cut formula must be a set universal");
  Sequent gamma(config.gamma);
  const Derivation& left = config.left;
  auto invalid = [](const std::string& why) { throw Error(ErrorCode::InvalidCertificate, why); };
  if (!is_valid(left, CalculusId::li())) invalid("left derivation fails the LI checker");
  if (left.cut_count() != 0) invalid("left derivation is not cut-free");
  if (left.conclusion.antecedent() != gamma.antecedent()) invalid("left derivation has the wrong antecedent");
  const auto& succ = left.conclusion.succedent();
  if (!succ) invalid("left derivation has no succedent");
  std::optional<std::string> eigen;
  for (const auto& y : succ->free_set_vars()) {
    if (instantiate_set(q.body(), Abstract::of_set_var(y)) == *succ) eigen = y;
  }
  if (!eigen) invalid("left succedent is not an instance of the quantified formula");
  if (gamma.free_set_vars().contains(*eigen)) invalid("eigenvariable occurs in the context");

  for (const auto& [key, d] : config.premise_table) {
    if (Sequent(key).antecedent() != gamma.antecedent()) continue;
    if (!is_valid(d, CalculusId::li())) throw Error(ErrorCode::InvalidDerivation, "stored premise fails the LI checker");
    for (const auto& f : key) {
      if (!d.conclusion.contains(f)) throw Error(ErrorCode::InvalidDerivation, "stored premise does not contain its index set");
    }
    return d;
  }
  throw Error(ErrorCode::MissingPremise, "no premise indexed by the cut context");
}

}  // namespace lip
