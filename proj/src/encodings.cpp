#include "lip/encodings.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "lip/builder.hpp"
#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip {

namespace b = build;

namespace {

Term zero() { return Term::app("0"); }
Term succ(const Term& t) { return Term::app("s", {t}); }
Term var(const std::string& x) { return Term::var(x); }
Formula eq(const Term& a, const Term& c) { return Formula::pred("=", {a, c}); }

Formula conj_all(const std::vector<Formula>& fs) {
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

// Monotone supply of names that avoid everything registered so far.
class Namer {
 public:
  Namer() = default;
  explicit Namer(const std::vector<Formula>& fs) {
    for (const auto& f : fs) avoid(f);
  }
  void avoid(const Formula& f) { collect_names(f, used_); }
  void avoid(const Term& t) {
    collect_vars(t, used_);
    collect_symbols(t, used_);
  }
  void avoid(const std::string& s) { used_.insert(s); }
  std::string operator()(std::string_view base) {
    std::string n = fresh_name(base, used_);
    used_.insert(n);
    return n;
  }

 private:
  std::set<std::string> used_{"x", "y", "z", "X", "Y", "Z", "s", "0"};
};

void expect_succedent(const Derivation& d, const Formula& f, const char* what) {
  if (d.conclusion.succedent() != f) {
    throw std::logic_error(std::string(what) + ": built " +
                           (d.conclusion.succedent() ? to_string(*d.conclusion.succedent()) : "(empty)") +
                           ", wanted " + to_string(f));
  }
}

Formula nn_premise(const std::string& x) {
  return Formula::conj(Formula::conj(sub_formula(x), suc_formula(x)), Formula::set_atom(x, zero()));
}

}  // namespace

Formula sub_formula(std::string_view set_var) {
  std::string x(set_var);
  Formula inner = Formula::imp(Formula::conj(eq(var("x"), var("y")), Formula::set_atom(x, var("x"))),
                               Formula::set_atom(x, var("y")));
  return Formula::forall("x", Formula::forall("y", inner));
}

Formula suc_formula(std::string_view set_var) {
  std::string x(set_var);
  return Formula::forall("x", Formula::imp(Formula::set_atom(x, var("x")), Formula::set_atom(x, succ(var("x")))));
}

Formula nn(const Term& t) {
  return Formula::forall2("X", Formula::imp(nn_premise("X"), Formula::set_atom("X", t)));
}

std::optional<Term> nn_argument(const Formula& f) {
  if (!f.is_quant2(Quantifier::All)) return std::nullopt;
  const Formula& body = f.body();
  if (!body.is_binary(Connective::Imp) || !body.right().is_set_atom() || !body.right().set_is_bound()) return std::nullopt;
  Term t = body.right().arg();
  if (t.loose_range() != 0) return std::nullopt;
  if (nn(t) != f) return std::nullopt;
  return t;
}

Formula relativize(const Formula& phi) {
  if (phi.level() != Level::first_order()) {
    throw Error(ErrorCode::LevelViolation, "relativize expects a first-order formula, got level " + to_string(phi.level()));
  }
  Namer names({phi});
  auto go = [&](auto& self, const Formula& f) -> Formula {
    switch (f.kind()) {
      case Formula::Kind::Binary:
        return Formula::binary(f.connective(), self(self, f.left()), self(self, f.right()));
      case Formula::Kind::Quant1: {
        std::string v = names(f.name().empty() ? "x" : f.name());
        Formula body = self(self, instantiate(f.body(), var(v)));
        if (f.quantifier() == Quantifier::All) return Formula::forall(v, Formula::imp(nn(var(v)), body));
        return Formula::exists(v, Formula::conj(nn(var(v)), body));
      }
      default:
        return f;
    }
  };
  return go(go, phi);
}

Formula congruence_axiom(const std::string& symbol, unsigned arity, bool predicate) {
  std::vector<Term> xs, ys;
  std::vector<Formula> eqs;
  for (unsigned i = 1; i <= arity; ++i) {
    xs.push_back(var("x" + std::to_string(i)));
    ys.push_back(var("y" + std::to_string(i)));
    eqs.push_back(eq(xs.back(), ys.back()));
  }
  Formula hyp = conj_all(eqs);
  Formula body = predicate ? Formula::imp(Formula::conj(hyp, Formula::pred(symbol, xs)), Formula::pred(symbol, ys))
                           : Formula::imp(hyp, eq(Term::app(symbol, xs), Term::app(symbol, ys)));
  for (unsigned i = arity; i >= 1; --i) body = Formula::forall("y" + std::to_string(i), body);
  for (unsigned i = arity; i >= 1; --i) body = Formula::forall("x" + std::to_string(i), body);
  return body;
}

namespace {

void symbols_of(const Term& t, std::map<std::string, unsigned>& out) {
  if (!t.is_app()) return;
  out[t.name()] = static_cast<unsigned>(t.args().size());
  for (const auto& a : t.args()) symbols_of(a, out);
}

void symbols_of(const Formula& f, std::map<std::string, unsigned>& fns, std::map<std::string, unsigned>& preds) {
  switch (f.kind()) {
    case Formula::Kind::Pred:
      preds[f.name()] = static_cast<unsigned>(f.args().size());
      for (const auto& a : f.args()) symbols_of(a, fns);
      break;
    case Formula::Kind::SetAtom:
      symbols_of(f.arg(), fns);
      break;
    case Formula::Kind::Bot:
      break;
    case Formula::Kind::Binary:
      symbols_of(f.left(), fns, preds);
      symbols_of(f.right(), fns, preds);
      break;
    default:
      symbols_of(f.body(), fns, preds);
  }
}

}  // namespace

EqAxiomSet EqAxiomSet::for_symbols(const std::map<std::string, unsigned>& functions,
                                   const std::map<std::string, unsigned>& predicates) {
  EqAxiomSet out{
      Formula::forall("x", eq(var("x"), var("x"))),
      Formula::forall("x", Formula::forall("y", Formula::imp(eq(var("x"), var("y")), eq(var("y"), var("x"))))),
      Formula::forall("x", Formula::forall("y", Formula::forall("z", Formula::imp(
          Formula::conj(eq(var("x"), var("y")), eq(var("y"), var("z"))), eq(var("x"), var("z")))))),
      {},
      {},
  };
  for (const auto& [name, arity] : functions) {
    if (arity > 0) out.function_congruence.emplace(name, congruence_axiom(name, arity, false));
  }
  for (const auto& [name, arity] : predicates) {
    if (arity > 0) out.predicate_congruence.emplace(name, congruence_axiom(name, arity, true));
  }
  return out;
}

EqAxiomSet EqAxiomSet::for_formulas(const std::vector<Formula>& formulas) {
  std::map<std::string, unsigned> fns, preds;
  for (const auto& f : formulas) symbols_of(f, fns, preds);
  return for_symbols(fns, preds);
}

std::vector<Formula> EqAxiomSet::all() const {
  std::vector<Formula> out{reflexivity, symmetry, transitivity};
  for (const auto& [_, f] : function_congruence) out.push_back(f);
  for (const auto& [_, f] : predicate_congruence) out.push_back(f);
  return out;
}


namespace {

Derivation apply_all(Derivation d, const std::vector<Term>& ts) {
  for (const auto& t : ts) d = b::inst(d, t);
  return d;
}

Derivation symmetric(const EqAxiomSet& ax, const Term& a, const Term& c) {
  return b::mp(apply_all(b::assume(ax.symmetry), {a, c}), b::assume(eq(a, c)));
}

// Gamma, a = c => t[v:=a] = t[v:=c]
Derivation eq_term(const Term& t, const std::string& v, const Term& a, const Term& c, const EqAxiomSet& ax) {
  Term ta = substitute(t, v, a);
  if (!occurs_free(t, v)) return b::inst(b::assume(ax.reflexivity), ta);
  if (t.is_var()) return b::assume(eq(a, c));
  auto it = ax.function_congruence.find(t.name());
  if (it == ax.function_congruence.end()) {
    throw Error(ErrorCode::UnknownFunctionSymbol, "no congruence axiom for " + t.name());
  }
  std::vector<Term> lhs, rhs;
  std::vector<Derivation> parts;
  for (const auto& arg : t.args()) {
    lhs.push_back(substitute(arg, v, a));
    rhs.push_back(substitute(arg, v, c));
    parts.push_back(eq_term(arg, v, a, c, ax));
  }
  Derivation hyp = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) hyp = b::conj(hyp, parts[i]);
  std::vector<Term> all = lhs;
  all.insert(all.end(), rhs.begin(), rhs.end());
  return b::mp(apply_all(b::assume(it->second), all), hyp);
}

}  // namespace

Derivation nn_zero() {
  Formula p = nn_premise("X");
  Derivation d = b::imp_r(b::proj(b::assume(p), 2), p);
  d = b::all2_r(d, "X");
  expect_succedent(d, nn(zero()), "nn_zero");
  return d;
}

Derivation nn_successor(const Term& a) {
  Formula p = nn_premise("X");
  Derivation xa = b::mp(b::inst2(b::assume(nn(a)), Abstract::of_set_var("X")), b::assume(p));
  Derivation step = b::inst(b::proj(b::proj(b::assume(p), 1), 2), a);
  Derivation d = b::all2_r(b::imp_r(b::mp(step, xa), p), "X");
  expect_succedent(d, nn(succ(a)), "nn_successor");
  return d;
}

Derivation nn_substitution(const Term& a, const Term& c) {
  Formula p = nn_premise("X");
  Derivation xa = b::mp(b::inst2(b::assume(nn(a)), Abstract::of_set_var("X")), b::assume(p));
  Derivation sub = apply_all(b::proj(b::proj(b::assume(p), 1), 1), {a, c});
  Derivation xc = b::mp(sub, b::conj(b::assume(eq(a, c)), xa));
  Derivation d = b::all2_r(b::imp_r(xc, p), "X");
  expect_succedent(d, nn(c), "nn_substitution");
  return d;
}

namespace {

// Gamma, a = c => phi[v:=a] -> phi[v:=c]
Derivation transport(const Formula& phi, const std::string& v, const Term& a, const Term& c, const EqAxiomSet& ax,
                     Namer& names) {
  Formula fa = substitute_term(phi, v, a);
  Formula fc = substitute_term(phi, v, c);
  if (!phi.has_free_term_var(v)) return b::imp_r(b::assume(fa), fa);
  switch (phi.kind()) {
    case Formula::Kind::Pred: {
      auto it = ax.predicate_congruence.find(phi.name());
      if (it == ax.predicate_congruence.end()) {
        throw Error(ErrorCode::InvalidArgument, "no congruence axiom for predicate " + phi.name());
      }
      std::vector<Term> lhs, rhs;
      std::vector<Derivation> parts;
      for (const auto& arg : phi.args()) {
        lhs.push_back(substitute(arg, v, a));
        rhs.push_back(substitute(arg, v, c));
        parts.push_back(eq_term(arg, v, a, c, ax));
      }
      Derivation hyp = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) hyp = b::conj(hyp, parts[i]);
      std::vector<Term> all = lhs;
      all.insert(all.end(), rhs.begin(), rhs.end());
      Derivation d = b::mp(apply_all(b::assume(it->second), all), b::conj(hyp, b::assume(fa)));
      return b::imp_r(d, fa);
    }
    case Formula::Kind::SetAtom:
      throw Error(ErrorCode::InvalidArgument, "cannot transport along a set variable atom");
    case Formula::Kind::Bot:
      return b::imp_r(b::assume(fa), fa);
    case Formula::Kind::Binary: {
      const Formula& l = phi.left();
      const Formula& r = phi.right();
      Derivation d;
      switch (phi.connective()) {
        case Connective::And: {
          Derivation dl = b::mp(transport(l, v, a, c, ax, names), b::proj(b::assume(fa), 1));
          Derivation dr = b::mp(transport(r, v, a, c, ax, names), b::proj(b::assume(fa), 2));
          d = b::conj(dl, dr);
          break;
        }
        case Connective::Or: {
          Formula la = substitute_term(l, v, a), ra = substitute_term(r, v, a);
          Derivation dl = b::or_r(b::mp(transport(l, v, a, c, ax, names), b::assume(la)), fc, 1);
          Derivation dr = b::or_r(b::mp(transport(r, v, a, c, ax, names), b::assume(ra)), fc, 2);
          d = b::or_l(dl, dr, fa);
          break;
        }
        case Connective::Imp: {
          Formula lc = substitute_term(l, v, c);
          Derivation back = b::cut(symmetric(ax, a, c), transport(l, v, c, a, ax, names));
          Derivation la = b::mp(back, b::assume(lc));
          Derivation rc = b::mp(transport(r, v, a, c, ax, names), b::mp(b::assume(fa), la));
          d = b::imp_r(rc, lc);
          break;
        }
      }
      return b::imp_r(d, fa);
    }
    case Formula::Kind::Quant1: {
      std::string w = names("w");
      Formula open = instantiate(phi.body(), var(w));
      Derivation tr = transport(open, v, a, c, ax, names);
      if (phi.quantifier() == Quantifier::All) {
        Derivation inst = b::all_l(b::assume(substitute_term(open, v, a)), fa, var(w));
        return b::imp_r(b::all_r(b::mp(tr, inst), w), fa);
      }
      Derivation moved = b::mp(tr, b::assume(substitute_term(open, v, a)));
      return b::imp_r(b::ex_l(b::ex_r(moved, fc, var(w)), fa, w), fa);
    }
    case Formula::Kind::Quant2: {
      if (auto t = nn_argument(phi)) {
        Term ta = substitute(*t, v, a), tc = substitute(*t, v, c);
        Derivation d = b::cut(eq_term(*t, v, a, c, ax), nn_substitution(ta, tc));
        return b::imp_r(d, fa);
      }
      std::string w = names("W");
      Formula open = instantiate_set(phi.body(), Abstract::of_set_var(w));
      Derivation tr = transport(open, v, a, c, ax, names);
      if (phi.quantifier() == Quantifier::All) {
        Derivation inst = b::all2_l(b::assume(substitute_term(open, v, a)), fa, Abstract::of_set_var(w));
        return b::imp_r(b::all2_r(b::mp(tr, inst), w), fa);
      }
      Derivation moved = b::mp(tr, b::assume(substitute_term(open, v, a)));
      return b::imp_r(b::ex2_l(b::ex2_r(moved, fc, Abstract::of_set_var(w)), fa, w), fa);
    }
  }
  throw std::logic_error("transport: unreachable");
}

Formula induction_goal(const Formula& psi, const std::string& v, Namer& names) {
  std::string x = names("x");
  std::string y = names("y");
  Formula px = substitute_term(psi, v, var(x));
  Formula step = Formula::forall(x, Formula::imp(nn(var(x)), Formula::imp(px, substitute_term(psi, v, succ(var(x))))));
  Formula base = substitute_term(psi, v, zero());
  Formula concl = Formula::forall(y, Formula::imp(nn(var(y)), substitute_term(psi, v, var(y))));
  return Formula::imp(Formula::conj(step, base), concl);
}

}  // namespace

Derivation relativized_induction(const Formula& psi, const std::string& v, const EqAxiomSet& ax) {
  if (!psi.level().within(0)) throw Error(ErrorCode::LevelViolation, "induction formula must lie in level 0");
  Namer names({psi});
  for (const auto& f : ax.all()) names.avoid(f);
  names.avoid(v);
  Formula goal = induction_goal(psi, v, names);
  const Formula& hb = goal.left();
  auto at = [&](const Term& t) { return substitute_term(psi, v, t); };

  std::string z = names("z");
  Abstract tau = Abstract::bind(z, Formula::conj(at(var(z)), nn(var(z))));
  std::string u = names("u");
  Formula inst = instantiate_set(nn(var(u)).body(), tau);
  const Formula& prem = inst.left();
  const Formula& sub_t = prem.left().left();
  const Formula& suc_t = prem.left().right();

  // Sub(tau)
  std::string p = names("p"), q = names("q");
  Formula e = Formula::conj(eq(var(p), var(q)), tau.apply(var(p)));
  Derivation eqd = b::proj(b::assume(e), 1);
  Derivation tp = b::proj(b::assume(e), 2);
  Derivation psi_q = b::cut(eqd, b::mp(transport(psi, v, var(p), var(q), ax, names), b::proj(tp, 1)));
  Derivation nn_q = b::cut(eqd, b::cut(b::proj(tp, 2), nn_substitution(var(p), var(q))));
  Derivation d_sub = b::all_r(b::all_r(b::imp_r(b::conj(psi_q, nn_q), e), q), p);
  expect_succedent(d_sub, sub_t, "Sub(tau)");

  // Suc(tau)
  Formula tpf = tau.apply(var(p));
  Derivation hp = b::inst(b::proj(b::assume(hb), 1), var(p));
  Derivation np = b::proj(b::assume(tpf), 2);
  Derivation next = b::mp(b::mp(hp, np), b::proj(b::assume(tpf), 1));
  Derivation nsp = b::cut(np, nn_successor(var(p)));
  Derivation d_suc = b::all_r(b::imp_r(b::conj(next, nsp), tpf), p);
  expect_succedent(d_suc, suc_t, "Suc(tau)");

  // tau(0)
  Derivation d_zero = b::conj(b::proj(b::assume(hb), 2), nn_zero());

  Derivation claim = b::conj(b::conj(d_sub, d_suc), d_zero);
  Derivation tu = b::mp(b::inst2(b::assume(nn(var(u))), tau), claim);
  Derivation d = b::imp_r(b::all_r(b::imp_r(b::proj(tu, 1), nn(var(u))), u), hb);
  expect_succedent(d, goal, "induction");
  return d;
}

Formula induction_statement(const Formula& phi) {
  const auto& fv = phi.free_term_vars();
  if (fv.size() > 1) throw Error(ErrorCode::LevelViolation, "induction formula must have at most one free variable");
  std::string v = fv.empty() ? "x" : fv.front();
  Namer names({phi});
  std::string x = names("x");
  std::string y = names("y");
  auto at = [&](const Term& t) { return substitute_term(phi, v, t); };
  Formula step = Formula::forall(x, Formula::imp(at(var(x)), at(succ(var(x)))));
  return Formula::imp(Formula::conj(step, at(zero())), Formula::forall(y, at(var(y))));
}

Derivation induction_derivation(const Formula& phi) {
  if (phi.level() != Level::first_order()) throw Error(ErrorCode::LevelViolation, "induction formula must be first-order");
  Formula statement = induction_statement(phi);
  const auto& fv = phi.free_term_vars();
  std::string v = fv.empty() ? "x" : fv.front();
  EqAxiomSet ax = EqAxiomSet::for_formulas({phi});
  Derivation d = relativized_induction(relativize(phi), v, ax);
  expect_succedent(d, relativize(statement), "induction_derivation");
  std::vector<Formula> missing;
  for (const auto& f : ax.all()) {
    if (!d.conclusion.contains(f)) missing.push_back(f);
  }
  return weaken(d, missing);
}

Derivation nn_term_induction(const Term& t, const std::string& var_name) {
  Formula psi = nn(t);
  EqAxiomSet ax = EqAxiomSet::for_formulas({Formula::pred("t", {t})});
  ax.predicate_congruence.clear();
  Derivation d = relativized_induction(psi, var_name, ax);
  std::vector<Formula> missing;
  for (const auto& f : ax.all()) {
    if (!d.conclusion.contains(f)) missing.push_back(f);
  }
  return weaken(d, missing);
}


Formula fix_formula(const Formula& body, const std::string& set_var, const std::string& term_var, const Term& t) {
  Formula closure = Formula::forall(term_var, Formula::imp(body, Formula::set_atom(set_var, var(term_var))));
  Formula inner = Formula::imp(Formula::conj(sub_formula(set_var), closure), Formula::set_atom(set_var, t));
  return Formula::forall2(set_var, inner);
}

Abstract fix_abstract(const Formula& body, const std::string& set_var, const std::string& term_var) {
  Namer names({body});
  std::string z = names("z");
  return Abstract::bind(z, fix_formula(body, set_var, term_var, var(z)));
}

namespace {

// Context P, psi[X:=from] => psi[X:=to] (forward) or the converse, given
// a generator for P, from(t) => to(t).
struct Monotone {
  std::string set_var;
  Abstract from;
  Abstract to;
  std::function<Derivation(const Term&)> step;
  Namer& names;

  Derivation run(const Formula& psi, bool forward) {
    Formula src = substitute_set(psi, set_var, forward ? from : to);
    Formula dst = substitute_set(psi, set_var, forward ? to : from);
    if (!psi.has_free_set_var(set_var)) return b::assume(src);
    switch (psi.kind()) {
      case Formula::Kind::SetAtom:
        if (!forward) throw Error(ErrorCode::NotPositive, set_var + " occurs negatively");
        return step(psi.arg());
      case Formula::Kind::Binary: {
        const Formula& l = psi.left();
        const Formula& r = psi.right();
        switch (psi.connective()) {
          case Connective::And:
            return b::conj(b::cut(b::proj(b::assume(src), 1), run(l, forward)),
                           b::cut(b::proj(b::assume(src), 2), run(r, forward)));
          case Connective::Or:
            return b::or_l(b::or_r(run(l, forward), dst, 1), b::or_r(run(r, forward), dst, 2), src);
          case Connective::Imp: {
            Formula dl = substitute_set(l, set_var, forward ? to : from);
            Derivation back = run(l, !forward);
            return b::imp_r(b::cut(b::mp(b::assume(src), back), run(r, forward)), dl);
          }
        }
        break;
      }
      case Formula::Kind::Quant1: {
        std::string w = names("w");
        Formula open = instantiate(psi.body(), var(w));
        Derivation inner = run(open, forward);
        if (psi.quantifier() == Quantifier::All) return b::all_r(b::all_l(inner, src, var(w)), w);
        return b::ex_l(b::ex_r(inner, dst, var(w)), src, w);
      }
      case Formula::Kind::Quant2: {
        std::string w = names("W");
        Abstract wa = Abstract::of_set_var(w);
        Formula open = instantiate_set(psi.body(), wa);
        Derivation inner = run(open, forward);
        if (psi.quantifier() == Quantifier::All) return b::all2_r(b::all2_l(inner, src, wa), w);
        return b::ex2_l(b::ex2_r(inner, dst, wa), src, w);
      }
      default:
        break;
    }
    throw std::logic_error("monotone: unreachable");
  }
};

void check_fix_body(const Formula& body, const std::string& set_var, const std::string& term_var, int n) {
  for (const auto& x : body.free_term_vars()) {
    if (x != term_var) throw Error(ErrorCode::InvalidArgument, "fixed-point body has extra free variable " + x);
  }
  for (const auto& x : body.free_set_vars()) {
    if (x != set_var) throw Error(ErrorCode::InvalidArgument, "fixed-point body has extra set variable " + x);
  }
  if (!positive_in(body, set_var)) throw Error(ErrorCode::NotPositive, set_var + " is not positive in " + to_string(body));
  if (!body.level().within(n - 1)) {
    throw Error(ErrorCode::LevelViolation,
                "fixed-point body has level " + to_string(body.level()) + ", needs at most " + std::to_string(n - 1));
  }
}

}  // namespace

FixpointKit::FixpointKit(Formula body, std::string set_var, std::string term_var, int n)
    : body_(std::move(body)),
      set_var_(std::move(set_var)),
      term_var_(std::move(term_var)),
      n_(n),
      fix_(fix_abstract(body_, set_var_, term_var_)) {
  check_fix_body(body_, set_var_, term_var_, n_);
  Namer names({body_});
  names.avoid(set_var_);
  names.avoid(term_var_);
  const std::string& x = term_var_;
  std::string y = names("Y");
  Abstract ya = Abstract::of_set_var(y);
  Formula fix_x = fix_.apply(var(x));
  Formula inst = instantiate_set(fix_x.body(), ya);
  const Formula& prem = inst.left();

  Monotone mono{set_var_, fix_, ya,
                [&](const Term& t) { return b::mp(b::inst2(b::assume(fix_.apply(t)), ya), b::assume(prem)); }, names};
  Derivation lifted = mono.run(body_, true);
  Derivation closure = b::inst(b::proj(b::assume(prem), 2), var(x));
  Derivation yx = b::mp(closure, lifted);
  Formula phi_fix = substitute_set(body_, set_var_, fix_);
  Derivation d = b::all2_r(b::imp_r(yx, prem), y);
  expect_succedent(d, fix_x, "lfp1 inner");
  lfp1_ = b::all_r(b::imp_r(d, phi_fix), x);
  expect_succedent(lfp1_, lfp1_statement(), "lfp1");
}

Formula FixpointKit::lfp1_statement() const {
  Formula phi_fix = substitute_set(body_, set_var_, fix_);
  return Formula::forall(term_var_, Formula::imp(phi_fix, fix_.apply(var(term_var_))));
}

Formula FixpointKit::lfp2_statement(const Abstract& tau) const {
  Namer names({body_, tau.body()});
  names.avoid(term_var_);
  std::string y = names("y");
  Formula phi_tau = substitute_set(body_, set_var_, tau);
  Formula closed = Formula::forall(term_var_, Formula::imp(phi_tau, tau.apply(var(term_var_))));
  return Formula::imp(closed, Formula::forall(y, Formula::imp(fix_.apply(var(y)), tau.apply(var(y)))));
}

Formula FixpointKit::sub_of(const Abstract& tau) const {
  return instantiate_set(fix_.apply(zero()).body(), tau).left().left();
}

Derivation FixpointKit::lfp2(const Abstract& tau) const {
  if (!tau.level().within(n_)) {
    throw Error(ErrorCode::LevelViolation, "abstract " + to_string(tau) + " exceeds level " + std::to_string(n_));
  }
  Formula goal = lfp2_statement(tau);
  std::string y = goal.right().name();
  Namer names({goal});
  std::string u = names("u");
  Formula fix_u = fix_.apply(var(u));
  Formula inst = instantiate_set(fix_u.body(), tau);
  const Formula& sub_t = inst.left().left();
  const Formula& closed = inst.left().right();
  Derivation tu = b::mp(b::inst2(b::assume(fix_u), tau), b::conj(b::assume(sub_t), b::assume(closed)));
  Derivation d = b::imp_r(b::all_r(b::imp_r(tu, fix_u), u), closed);
  expect_succedent(d, goal, "lfp2");
  return d;
}

FixpointKit fixpoint_kit(const Formula& body, const std::string& set_var, const std::string& term_var, int n) {
  return FixpointKit(body, set_var, term_var, n);
}


IDFormula IDFormula::pred(std::string name, std::vector<Term> args) {
  Node n;
  n.kind = Kind::Pred;
  n.name = std::move(name);
  n.args = std::move(args);
  return IDFormula(std::make_shared<const Node>(std::move(n)));
}

IDFormula IDFormula::bot() {
  Node n;
  n.kind = Kind::Bot;
  return IDFormula(std::make_shared<const Node>(std::move(n)));
}

IDFormula IDFormula::binary(Connective c, IDFormula lhs, IDFormula rhs) {
  Node n;
  n.kind = Kind::Binary;
  n.connective = c;
  n.children = {std::move(lhs), std::move(rhs)};
  return IDFormula(std::make_shared<const Node>(std::move(n)));
}

IDFormula IDFormula::quant(Quantifier q, std::string var_name, IDFormula body) {
  Node n;
  n.kind = Kind::Quant;
  n.quantifier = q;
  n.term_var = std::move(var_name);
  n.children = {std::move(body)};
  return IDFormula(std::make_shared<const Node>(std::move(n)));
}

IDFormula IDFormula::set_atom(std::string set_var, Term arg) {
  Node n;
  n.kind = Kind::SetAtom;
  n.name = std::move(set_var);
  n.args = {std::move(arg)};
  return IDFormula(std::make_shared<const Node>(std::move(n)));
}

IDFormula IDFormula::fix(IDFormula body, std::string set_var, std::string term_var, Term arg) {
  Node n;
  n.kind = Kind::Fix;
  n.name = std::move(set_var);
  n.term_var = std::move(term_var);
  n.args = {std::move(arg)};
  n.children = {std::move(body)};
  return IDFormula(std::make_shared<const Node>(std::move(n)));
}

int IDFormula::id_level() const {
  switch (kind()) {
    case Kind::Binary: return std::max(left().id_level(), right().id_level());
    case Kind::Quant: return body().id_level();
    case Kind::Fix: return body().id_level() + 1;
    default: return 0;
  }
}

std::set<std::string> IDFormula::free_term_vars() const {
  std::set<std::string> out;
  switch (kind()) {
    case Kind::Pred:
    case Kind::SetAtom:
    case Kind::Fix:
      for (const auto& a : args()) collect_vars(a, out);
      break;
    case Kind::Bot:
      break;
    case Kind::Binary:
      out = left().free_term_vars();
      out.merge(right().free_term_vars());
      break;
    case Kind::Quant:
      out = body().free_term_vars();
      out.erase(term_var());
      break;
  }
  return out;
}

std::string IDFormula::to_string() const {
  auto args_text = [&] {
    std::string out;
    for (std::size_t i = 0; i < args().size(); ++i) out += (i ? "," : "") + lip::to_string(args()[i]);
    return out;
  };
  switch (kind()) {
    case Kind::Pred:
      if (name() == "=" && args().size() == 2) return lip::to_string(args()[0]) + " = " + lip::to_string(args()[1]);
      return args().empty() ? name() : name() + "(" + args_text() + ")";
    case Kind::Bot: return "bot";
    case Kind::SetAtom: return name() + "(" + args_text() + ")";
    case Kind::Binary: {
      const char* op = connective() == Connective::And ? " & " : connective() == Connective::Or ? " | " : " -> ";
      return "(" + left().to_string() + op + right().to_string() + ")";
    }
    case Kind::Quant:
      return std::string(quantifier() == Quantifier::All ? "all " : "ex ") + term_var() + ". " + body().to_string();
    case Kind::Fix:
      return "I[" + name() + "," + term_var() + ". " + body().to_string() + "](" + args_text() + ")";
  }
  return "";
}

Formula id_translate(const IDFormula& phi) {
  switch (phi.kind()) {
    case IDFormula::Kind::Pred: return Formula::pred(phi.name(), phi.args());
    case IDFormula::Kind::Bot: return Formula::bot();
    case IDFormula::Kind::SetAtom: return Formula::set_atom(phi.name(), phi.args().front());
    case IDFormula::Kind::Binary:
      return Formula::binary(phi.connective(), id_translate(phi.left()), id_translate(phi.right()));
    case IDFormula::Kind::Quant: {
      const std::string& x = phi.term_var();
      Formula body = id_translate(phi.body());
      if (phi.quantifier() == Quantifier::All) return Formula::forall(x, Formula::imp(nn(var(x)), body));
      return Formula::exists(x, Formula::conj(nn(var(x)), body));
    }
    case IDFormula::Kind::Fix: {
      Formula body = id_translate(phi.body());
      check_fix_body(body, phi.name(), phi.term_var(), INT_MAX);
      return fix_abstract(body, phi.name(), phi.term_var()).apply(phi.args().front());
    }
  }
  throw std::logic_error("id_translate: unreachable");
}


Formula PrDefinition::defining_axiom() const {
  Term n = var(step_n);
  Formula base_eq = eq(Term::app(name, {zero()}), base);
  Term rhs = substitute(substitute(step, step_acc, Term::app(name, {n})), step_n, n);
  Formula step_eq = Formula::forall(step_n, eq(Term::app(name, {succ(n)}), rhs));
  return Formula::conj(base_eq, step_eq);
}

namespace {

EqAxiomSet pr_equality(const std::vector<PrDefinition>& prs) {
  std::map<std::string, unsigned> fns;
  for (const auto& pr : prs) {
    fns[pr.name] = 1;
    symbols_of(pr.base, fns);
    symbols_of(pr.step, fns);
  }
  return EqAxiomSet::for_symbols(fns, {});
}

class Closure {
 public:
  explicit Closure(const std::vector<PrDefinition>& prs) : prs_(prs), ax_(pr_equality(prs)) {}

  Derivation run(const Term& t, const std::set<std::string>& vars, const std::vector<Term>& known = {}) {
    if (std::find(known.begin(), known.end(), t) != known.end()) return b::assume(nn(t));
    if (t.is_var()) {
      if (!vars.contains(t.name())) throw Error(ErrorCode::InvalidArgument, "no Nn hypothesis for " + t.name());
      return b::assume(nn(t));
    }
    if (t.is_app() && t.name() == "0" && t.args().empty()) return nn_zero();
    if (t.is_app() && t.name() == "s" && t.args().size() == 1) {
      return b::cut(run(t.args()[0], vars, known), nn_successor(t.args()[0]));
    }
    const PrDefinition* pr = find(t);
    if (!pr) throw Error(ErrorCode::UnknownFunctionSymbol, "no recursion equations for " + lip::to_string(t));
    return b::mp(b::inst(lemma(*pr), t.args()[0]), run(t.args()[0], vars, known));
  }

  // axioms => all y.(Nn(y) -> Nn(f(y)))
  Derivation lemma(const PrDefinition& pr) {
    if (auto it = lemmas_.find(pr.name); it != lemmas_.end()) return it->second;
    if (!active_.insert(pr.name).second) {
      throw Error(ErrorCode::InvalidArgument, "recursion equations for " + pr.name + " are circular");
    }
    Namer names;
    names.avoid(pr.base);
    names.avoid(pr.step);
    std::string v = names("v");
    std::string p = names("p");
    auto f = [&](const Term& t) { return Term::app(pr.name, {t}); };
    Formula def = pr.defining_axiom();

    Derivation base_eq = b::cut(b::proj(b::assume(def), 1), symmetric(ax_, f(zero()), pr.base));
    Derivation d_base = b::cut(base_eq, b::cut(run(pr.base, {}), nn_substitution(pr.base, f(zero()))));

    Term pv = var(p);
    Term step_p = substitute(substitute(pr.step, pr.step_acc, f(pv)), pr.step_n, pv);
    Derivation unfold = b::inst(b::proj(b::assume(def), 2), pv);
    Derivation step_eq = b::cut(unfold, symmetric(ax_, f(succ(pv)), step_p));
    Derivation moved = b::cut(step_eq, b::cut(run(step_p, {p}, {f(pv)}), nn_substitution(step_p, f(succ(pv)))));
    Derivation d_step = b::all_r(b::imp_r(b::imp_r(moved, nn(f(pv))), nn(pv)), p);

    Derivation core = relativized_induction(nn(f(var(v))), v, ax_);
    Derivation d = b::mp(core, b::conj(d_step, d_base));
    active_.erase(pr.name);
    lemmas_.emplace(pr.name, d);
    return d;
  }

  std::vector<Formula> axioms() const {
    std::vector<Formula> out;
    for (const auto& pr : prs_) out.push_back(pr.defining_axiom());
    if (!prs_.empty()) {
      auto eqs = ax_.all();
      out.insert(out.end(), eqs.begin(), eqs.end());
    }
    return normalize_set(out);
  }

 private:
  const PrDefinition* find(const Term& t) const {
    if (!t.is_app() || t.args().size() != 1) return nullptr;
    for (const auto& pr : prs_) {
      if (pr.name == t.name()) return &pr;
    }
    return nullptr;
  }

  const std::vector<PrDefinition>& prs_;
  EqAxiomSet ax_;
  std::map<std::string, Derivation> lemmas_;
  std::set<std::string> active_;
};

}  // namespace

Derivation nn_closure(const Term& t, const std::set<std::string>& vars, const std::vector<PrDefinition>& pr_symbols) {
  Closure c(pr_symbols);
  return c.run(t, vars);
}

std::vector<Formula> closure_axioms(const std::vector<PrDefinition>& pr_symbols) {
  return Closure(pr_symbols).axioms();
}

namespace {

class Relativizer {
 public:
  explicit Relativizer(const std::vector<PrDefinition>& prs) : closure_(prs) {}

  Derivation run(const Derivation& node) {
    Derivation d = ground_extras(node);
    std::set<std::string> vars = d.conclusion.free_term_vars();
    auto prem = [&](std::size_t i) { return run(d.premises[i]); };
    const Witness& w = d.witness;
    switch (d.rule) {
      case Rule::Id: return b::assume(rel(*w.main));
      case Rule::BotL:
        return b::bot_l({}, d.conclusion.succedent() ? std::optional<Formula>(rel(*d.conclusion.succedent())) : std::nullopt);
      case Rule::BotR: return b::bot_r(prem(0));
      case Rule::AndL: return b::and_l(prem(0), rel(*w.main), w.index);
      case Rule::AndR: return b::and_r(prem(0), prem(1));
      case Rule::OrL: return b::or_l(prem(0), prem(1), rel(*w.main));
      case Rule::OrR: return b::or_r(prem(0), rel(*d.conclusion.succedent()), w.index);
      case Rule::ImpL: return b::imp_l(prem(0), prem(1), rel(*w.main));
      case Rule::ImpR: return b::imp_r(prem(0), rel(d.conclusion.succedent()->left()));
      case Rule::Cut: return b::cut(prem(0), prem(1));
      case Rule::AllR: {
        const std::string& e = *w.eigen;
        return b::all_r(b::imp_r(prem(0), nn(var(e))), e);
      }
      case Rule::ExL: {
        const std::string& e = *w.eigen;
        Formula main = rel(*w.main);
        Formula minor = instantiate(main.body(), var(e));
        Derivation inner = b::and_l(b::and_l(prem(0), minor, 1), minor, 2);
        return b::ex_l(inner, main, e);
      }
      case Rule::AllL: {
        Formula main = rel(*w.main);
        Formula minor = instantiate(main.body(), *w.term);
        return b::all_l(b::imp_l(closure_.run(*w.term, vars), prem(0), minor), main, *w.term);
      }
      case Rule::ExR: {
        Formula main = rel(*d.conclusion.succedent());
        return b::ex_r(b::and_r(closure_.run(*w.term, vars), prem(0)), main, *w.term);
      }
      default:
        throw Error(ErrorCode::InvalidDerivation, std::string("rule ") + rule_name(d.rule) + " is not an LI rule");
    }
  }

  Formula rel(const Formula& f) {
    auto it = memo_.find(f.key());
    if (it != memo_.end()) return it->second;
    Formula r = relativize(f);
    memo_.emplace(f.key(), r);
    return r;
  }

 private:
  // Variables that occur in a premise or instance term but not in the
  // conclusion are replaced by 0, so every Nn hypothesis comes from the
  // conclusion or an eigenvariable.
  static Derivation ground_extras(const Derivation& node) {
    std::set<std::string> keep = node.conclusion.free_term_vars();
    if (node.witness.eigen) keep.insert(*node.witness.eigen);
    std::set<std::string> extra;
    for (const auto& p : node.premises) {
      for (const auto& x : p.conclusion.free_term_vars()) {
        if (!keep.contains(x)) extra.insert(x);
      }
    }
    if (node.witness.term) {
      std::set<std::string> tv;
      collect_vars(*node.witness.term, tv);
      for (const auto& x : tv) {
        if (!keep.contains(x)) extra.insert(x);
      }
    }
    if (extra.empty()) return node;
    Derivation out = node;
    for (const auto& x : extra) {
      Binding bind = TermBinding{x, zero()};
      for (auto& p : out.premises) p = substitute_derivation(p, bind);
      if (out.witness.term) out.witness.term = substitute(*out.witness.term, x, zero());
    }
    return out;
  }

  Closure closure_;
  std::map<std::string, Formula> memo_;
};

}  // namespace

RelativizedDerivation relativize_derivation(const Derivation& d, const RelativizeOptions& options) {
  if (auto v = check(d, CalculusId::li()); !v.empty()) {
    throw Error(ErrorCode::InvalidDerivation, "not an LI derivation: " + v.front().path + ": " + v.front().reason);
  }
  Relativizer r(options.pr_symbols);
  Derivation out = r.run(d);

  std::vector<Formula> target;
  for (const auto& x : d.conclusion.free_term_vars()) target.push_back(nn(var(x)));
  for (const auto& x : options.variables) target.push_back(nn(var(x)));
  for (const auto& f : d.conclusion.antecedent()) target.push_back(r.rel(f));
  std::vector<Formula> axioms = closure_axioms(options.pr_symbols);
  target.insert(target.end(), axioms.begin(), axioms.end());
  target = normalize_set(target);

  for (const auto& f : out.conclusion.antecedent()) {
    if (std::find(target.begin(), target.end(), f) == target.end()) {
      throw std::logic_error("relativize_derivation: stray hypothesis " + to_string(f));
    }
  }
  std::vector<Formula> missing;
  for (const auto& f : target) {
    if (!out.conclusion.contains(f)) missing.push_back(f);
  }
  out = weaken(out, missing);
  std::optional<Formula> succ = d.conclusion.succedent() ? std::optional<Formula>(r.rel(*d.conclusion.succedent())) : std::nullopt;
  if (out.conclusion.succedent() != succ) {
    if (!out.conclusion.succedent() && succ) {
      out = weaken_succedent(out, *succ);
    } else {
      throw std::logic_error("relativize_derivation: succedent mismatch");
    }
  }
  return {out, axioms};
}

}  // namespace lip
