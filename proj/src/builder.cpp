#include "lip/builder.hpp"

#include <algorithm>

#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip::build {

namespace {

std::vector<Formula> minus(const std::vector<Formula>& gamma, const std::optional<Formula>& f) {
  std::vector<Formula> out;
  for (const auto& g : gamma) {
    if (!f || g != *f) out.push_back(g);
  }
  return out;
}

std::vector<Formula> join(std::vector<Formula> a, const std::vector<Formula>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalize_set(std::move(a));
}

// Weakens d so that its antecedent is exactly ctx (plus extra, if given).
Derivation lift_to(const Derivation& d, const std::vector<Formula>& ctx, const std::optional<Formula>& extra) {
  std::vector<Formula> target = ctx;
  if (extra) target.push_back(*extra);
  std::vector<Formula> missing;
  for (const auto& f : target) {
    if (!d.conclusion.contains(f)) missing.push_back(f);
  }
  return weaken(d, missing);
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidDerivation, what); }

Derivation node(Rule rule, Sequent conclusion, Witness w, std::vector<Derivation> premises) {
  Derivation d;
  d.rule = rule;
  d.conclusion = std::move(conclusion);
  d.witness = std::move(w);
  d.premises = std::move(premises);
  return d;
}

// One-premise left rule with the given minor formula.
Derivation left1(Rule rule, const Derivation& d, const Formula& main, const Formula& minor, Witness w) {
  std::vector<Formula> ctx = minus(d.conclusion.antecedent(), minor);
  Derivation premise = lift_to(d, ctx, minor);
  w.main = main;
  return node(rule, Sequent(join(ctx, {main}), d.conclusion.succedent()), std::move(w), {premise});
}

}  // namespace

Derivation hyp(const std::vector<Formula>& context, const Formula& f) {
  Witness w;
  w.main = f;
  return node(Rule::Id, Sequent(join(context, {f}), f), std::move(w), {});
}

Derivation bot_l(const std::vector<Formula>& context, const std::optional<Formula>& succedent) {
  return node(Rule::BotL, Sequent(join(context, {Formula::bot()}), succedent), {}, {});
}

Derivation bot_r(const Derivation& d) {
  if (d.conclusion.succedent()) bad("bot_r needs an empty succedent");
  return node(Rule::BotR, d.conclusion.with_succedent(Formula::bot()), {}, {d});
}

Derivation and_l(const Derivation& d, const Formula& main, int index) {
  if (!main.is_binary(Connective::And)) bad("and_l main must be a conjunction");
  Witness w;
  w.index = index;
  return left1(Rule::AndL, d, main, index == 1 ? main.left() : main.right(), std::move(w));
}

Derivation and_r(const Derivation& left, const Derivation& right) {
  if (!left.conclusion.succedent() || !right.conclusion.succedent()) bad("and_r needs succedents");
  auto ctx = join(left.conclusion.antecedent(), right.conclusion.antecedent());
  Formula goal = Formula::conj(*left.conclusion.succedent(), *right.conclusion.succedent());
  return node(Rule::AndR, Sequent(ctx, goal), {}, {lift_to(left, ctx, {}), lift_to(right, ctx, {})});
}

Derivation or_l(const Derivation& left, const Derivation& right, const Formula& main) {
  if (!main.is_binary(Connective::Or)) bad("or_l main must be a disjunction");
  if (left.conclusion.succedent() != right.conclusion.succedent()) bad("or_l premises disagree on succedent");
  auto ctx = join(minus(left.conclusion.antecedent(), main.left()), minus(right.conclusion.antecedent(), main.right()));
  Witness w;
  w.main = main;
  return node(Rule::OrL, Sequent(join(ctx, {main}), left.conclusion.succedent()), std::move(w),
              {lift_to(left, ctx, main.left()), lift_to(right, ctx, main.right())});
}

Derivation or_r(const Derivation& d, const Formula& main, int index) {
  if (!main.is_binary(Connective::Or)) bad("or_r main must be a disjunction");
  if (d.conclusion.succedent() != (index == 1 ? main.left() : main.right())) bad("or_r premise proves the wrong disjunct");
  Witness w;
  w.index = index;
  return node(Rule::OrR, d.conclusion.with_succedent(main), std::move(w), {d});
}

Derivation imp_l(const Derivation& arg, const Derivation& rest, const Formula& main) {
  if (!main.is_binary(Connective::Imp)) bad("imp_l main must be an implication");
  if (arg.conclusion.succedent() != main.left()) bad("imp_l argument proves the wrong formula");
  auto ctx = join(arg.conclusion.antecedent(), minus(rest.conclusion.antecedent(), main.right()));
  Witness w;
  w.main = main;
  return node(Rule::ImpL, Sequent(join(ctx, {main}), rest.conclusion.succedent()), std::move(w),
              {lift_to(arg, ctx, {}), lift_to(rest, ctx, main.right())});
}

Derivation imp_r(const Derivation& d, const Formula& assumption) {
  if (!d.conclusion.succedent()) bad("imp_r needs a succedent");
  auto ctx = minus(d.conclusion.antecedent(), assumption);
  Formula goal = Formula::imp(assumption, *d.conclusion.succedent());
  return node(Rule::ImpR, Sequent(ctx, goal), {}, {lift_to(d, ctx, assumption)});
}

Derivation all_l(const Derivation& d, const Formula& main, const Term& t) {
  if (!main.is_quant1(Quantifier::All)) bad("all_l main must be universal");
  Witness w;
  w.term = t;
  return left1(Rule::AllL, d, main, instantiate(main.body(), t), std::move(w));
}

Derivation all_r(const Derivation& d, const std::string& eigen) {
  if (!d.conclusion.succedent()) bad("all_r needs a succedent");
  for (const auto& f : d.conclusion.antecedent()) {
    if (f.has_free_term_var(eigen)) bad("all_r eigenvariable " + eigen + " occurs in the context");
  }
  Witness w;
  w.eigen = eigen;
  Formula goal = Formula::forall(eigen, *d.conclusion.succedent());
  return node(Rule::AllR, d.conclusion.with_succedent(goal), std::move(w), {d});
}

Derivation ex_l(const Derivation& d, const Formula& main, const std::string& eigen) {
  if (!main.is_quant1(Quantifier::Ex)) bad("ex_l main must be existential");
  Witness w;
  w.eigen = eigen;
  Derivation out = left1(Rule::ExL, d, main, instantiate(main.body(), Term::var(eigen)), std::move(w));
  if (out.conclusion.free_term_vars().contains(eigen)) bad("ex_l eigenvariable " + eigen + " is not fresh");
  return out;
}

Derivation ex_r(const Derivation& d, const Formula& main, const Term& t) {
  if (!main.is_quant1(Quantifier::Ex)) bad("ex_r main must be existential");
  if (d.conclusion.succedent() != instantiate(main.body(), t)) bad("ex_r premise proves the wrong instance");
  Witness w;
  w.term = t;
  return node(Rule::ExR, d.conclusion.with_succedent(main), std::move(w), {d});
}

Derivation all2_l(const Derivation& d, const Formula& main, const Abstract& tau) {
  if (!main.is_quant2(Quantifier::All)) bad("all2_l main must be a set universal");
  Witness w;
  w.abs = tau;
  return left1(Rule::All2L, d, main, instantiate_set(main.body(), tau), std::move(w));
}

Derivation all2_r(const Derivation& d, const std::string& eigen) {
  if (!d.conclusion.succedent()) bad("all2_r needs a succedent");
  for (const auto& f : d.conclusion.antecedent()) {
    if (f.has_free_set_var(eigen)) bad("all2_r eigenvariable " + eigen + " occurs in the context");
  }
  Witness w;
  w.eigen = eigen;
  Formula goal = Formula::forall2(eigen, *d.conclusion.succedent());
  return node(Rule::All2R, d.conclusion.with_succedent(goal), std::move(w), {d});
}

Derivation ex2_l(const Derivation& d, const Formula& main, const std::string& eigen) {
  if (!main.is_quant2(Quantifier::Ex)) bad("ex2_l main must be a set existential");
  Witness w;
  w.eigen = eigen;
  Derivation out = left1(Rule::Ex2L, d, main, instantiate_set(main.body(), Abstract::of_set_var(eigen)), std::move(w));
  if (out.conclusion.free_set_vars().contains(eigen)) bad("ex2_l eigenvariable " + eigen + " is not fresh");
  return out;
}

Derivation ex2_r(const Derivation& d, const Formula& main, const Abstract& tau) {
  if (!main.is_quant2(Quantifier::Ex)) bad("ex2_r main must be a set existential");
  if (d.conclusion.succedent() != instantiate_set(main.body(), tau)) bad("ex2_r premise proves the wrong instance");
  Witness w;
  w.abs = tau;
  return node(Rule::Ex2R, d.conclusion.with_succedent(main), std::move(w), {d});
}

Derivation cut(const Derivation& left, const Derivation& right) {
  if (!left.conclusion.succedent()) bad("cut needs a left succedent");
  const Formula& phi = *left.conclusion.succedent();
  auto ctx = join(left.conclusion.antecedent(), minus(right.conclusion.antecedent(), phi));
  Witness w;
  w.cut = phi;
  return node(Rule::Cut, Sequent(ctx, right.conclusion.succedent()), std::move(w),
              {lift_to(left, ctx, {}), lift_to(right, ctx, phi)});
}

Derivation mp(const Derivation& implication, const Derivation& argument) {
  const auto& imp = implication.conclusion.succedent();
  if (!imp || !imp->is_binary(Connective::Imp)) bad("mp needs an implication");
  return cut(implication, imp_l(argument, hyp({}, imp->right()), *imp));
}

Derivation inst(const Derivation& d, const Term& t) {
  const auto& q = d.conclusion.succedent();
  if (!q || !q->is_quant1(Quantifier::All)) bad("inst needs a universal succedent");
  return cut(d, all_l(hyp({}, instantiate(q->body(), t)), *q, t));
}

Derivation inst2(const Derivation& d, const Abstract& tau) {
  const auto& q = d.conclusion.succedent();
  if (!q || !q->is_quant2(Quantifier::All)) bad("inst2 needs a set universal succedent");
  return cut(d, all2_l(hyp({}, instantiate_set(q->body(), tau)), *q, tau));
}

Derivation proj(const Derivation& d, int index) {
  const auto& c = d.conclusion.succedent();
  if (!c || !c->is_binary(Connective::And)) bad("proj needs a conjunction");
  return cut(d, and_l(hyp({}, index == 1 ? c->left() : c->right()), *c, index));
}

}  // namespace lip::build
