#include "lip/cut_elim.hpp"

#include <algorithm>
#include <stdexcept>

#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip {

std::optional<unsigned> max_cut_rank(const Derivation& d) {
  std::optional<unsigned> best;
  if (d.rule == Rule::Cut && d.witness.cut) best = rank(*d.witness.cut);
  for (const auto& p : d.premises) {
    auto r = max_cut_rank(p);
    if (r && (!best || *r > *best)) best = r;
  }
  return best;
}

namespace {

bool has_eigen(const Derivation& d) {
  return d.witness.eigen && (d.rule == Rule::AllR || d.rule == Rule::ExL);
}

bool is_right_intro(Rule r) {
  switch (r) {
    case Rule::BotR:
    case Rule::AndR:
    case Rule::OrR:
    case Rule::ImpR:
    case Rule::AllR:
    case Rule::ExR:
      return true;
    default:
      return false;
  }
}

// The formula a premise adds to the shared context (minor formula of a left
// rule, assumption of ImpR, cut formula of the right Cut premise).
std::optional<Formula> premise_extra(const Derivation& d, std::size_t i) {
  const Witness& w = d.witness;
  switch (d.rule) {
    case Rule::AndL:
      return w.index == 1 ? w.main->left() : w.main->right();
    case Rule::OrL:
      return i == 0 ? w.main->left() : w.main->right();
    case Rule::ImpL:
      if (i == 1) return w.main->right();
      return std::nullopt;
    case Rule::ImpR:
      return d.conclusion.succedent()->left();
    case Rule::AllL:
      return instantiate(w.main->body(), *w.term);
    case Rule::ExL:
      return instantiate(w.main->body(), Term::var(*w.eigen));
    case Rule::Cut:
      if (i == 1) return w.cut;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// Whether premise i carries the conclusion's succedent.
bool carries_succedent(const Derivation& d, std::size_t i) {
  switch (d.rule) {
    case Rule::ImpL:
    case Rule::Cut:
      return i == 1;
    case Rule::AndL:
    case Rule::OrL:
    case Rule::AllL:
    case Rule::ExL:
      return true;
    default:
      return false;
  }
}

Derivation freshen(const Derivation& d, const std::set<std::string>& avoid) {
  if (!has_eigen(d) || !avoid.contains(*d.witness.eigen)) return d;
  std::set<std::string> used = avoid;
  auto names = d.names();
  used.insert(names.begin(), names.end());
  std::string fresh = fresh_name(*d.witness.eigen, used);
  Derivation out = d;
  out.premises[0] = substitute_derivation(d.premises[0], TermBinding{*d.witness.eigen, Term::var(fresh)});
  out.witness.eigen = fresh;
  return out;
}

std::vector<Formula> minus(const std::vector<Formula>& a, const Formula& f) {
  std::vector<Formula> out;
  for (const auto& g : a) {
    if (g != f) out.push_back(g);
  }
  return out;
}

std::vector<Formula> join(std::vector<Formula> a, const std::vector<Formula>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalize_set(std::move(a));
}

Derivation lift_to(const Derivation& d, const std::vector<Formula>& target) {
  std::vector<Formula> missing;
  for (const auto& f : target) {
    if (!d.conclusion.contains(f)) missing.push_back(f);
  }
  Derivation out = weaken(d, missing);
  if (out.conclusion.antecedent() != normalize_set(target)) {
    throw std::logic_error("cut elimination: premise context exceeds its target");
  }
  return out;
}

Derivation make_cut(const Derivation& left, const Derivation& right, const std::vector<Formula>& target) {
  const Formula& psi = *left.conclusion.succedent();
  Derivation d;
  d.rule = Rule::Cut;
  d.witness.cut = psi;
  d.conclusion = Sequent(target, right.conclusion.succedent());
  d.premises = {lift_to(left, target), lift_to(right, join(target, {psi}))};
  return d;
}

class Eliminator {
 public:
  Derivation pass(const Derivation& d, unsigned r) {
    Derivation out = d;
    for (auto& p : out.premises) p = pass(p, r);
    if (out.rule == Rule::Cut && rank(*out.witness.cut) == r) {
      Derivation reduced = cut1(out.premises[0], out.premises[1], *out.witness.cut);
      if (!(reduced.conclusion == out.conclusion)) {
        throw std::logic_error("cut elimination changed a conclusion: " + to_string(reduced.conclusion) + " vs " +
                               to_string(out.conclusion));
      }
      return reduced;
    }
    return out;
  }

 private:
  // L proves Gamma => phi, R proves Sigma => Pi; the result proves
  // Gamma, Sigma \ {phi} => Pi with cuts only below rank(phi).
  Derivation cut1(const Derivation& L0, const Derivation& R0, const Formula& phi) {
    const auto& gamma = L0.conclusion.antecedent();
    const auto& sigma = R0.conclusion.antecedent();
    const auto& pi = R0.conclusion.succedent();
    std::vector<Formula> target = join(gamma, minus(sigma, phi));

    if (L0.conclusion.contains(phi) || !R0.conclusion.contains(phi)) return lift_to(R0, target);
    if (R0.rule == Rule::Id) {
      if (*R0.witness.main == phi) return lift_to(L0, target);
      return leaf(Rule::Id, target, pi, R0.witness);
    }
    if (L0.rule == Rule::BotL || (R0.rule == Rule::BotL && phi != Formula::bot())) {
      return leaf(Rule::BotL, target, pi, {});
    }

    bool right_principal = is_left_rule(R0.rule) && R0.rule != Rule::BotL && *R0.witness.main == phi;
    if (R0.rule == Rule::BotL) right_principal = true;
    if (!right_principal) {
      Derivation R = freshen(R0, L0.names());
      Derivation out;
      out.rule = R.rule;
      out.witness = R.witness;
      out.conclusion = Sequent(target, pi);
      for (std::size_t i = 0; i < R.premises.size(); ++i) {
        auto extra = premise_extra(R, i);
        if (extra && *extra == phi) {
          out.premises.push_back(lift_to(R.premises[i], join(R.premises[i].conclusion.antecedent(), gamma)));
        } else {
          out.premises.push_back(cut1(L0, R.premises[i], phi));
        }
      }
      return out;
    }

    if (!is_right_intro(L0.rule)) {
      Derivation L = freshen(L0, R0.names());
      Derivation out;
      out.rule = L.rule;
      out.witness = L.witness;
      out.conclusion = Sequent(target, pi);
      auto rest = minus(sigma, phi);
      for (std::size_t i = 0; i < L.premises.size(); ++i) {
        if (carries_succedent(L, i)) {
          out.premises.push_back(cut1(L.premises[i], R0, phi));
        } else {
          out.premises.push_back(lift_to(L.premises[i], join(L.premises[i].conclusion.antecedent(), rest)));
        }
      }
      return out;
    }

    // Both sides introduce phi. First cut phi out of right premises that
    // still contain it.
    Derivation R = freshen(R0, L0.names());
    std::vector<Derivation> rp;
    for (std::size_t i = 0; i < R.premises.size(); ++i) {
      auto extra = premise_extra(R, i);
      const Derivation& p = R.premises[i];
      if (p.conclusion.contains(phi) && !(extra && *extra == phi)) {
        rp.push_back(cut1(L0, p, phi));
      } else {
        rp.push_back(lift_to(p, join(p.conclusion.antecedent(), gamma)));
      }
    }
    const Derivation& L = L0;
    switch (phi.kind()) {
      case Formula::Kind::Bot: {
        Derivation body = lift_to(L.premises[0], target);
        return pi ? weaken_succedent(body, *pi) : body;
      }
      case Formula::Kind::Binary:
        switch (phi.connective()) {
          case Connective::And: {
            int i = R.witness.index;
            return make_cut(L.premises[static_cast<std::size_t>(i - 1)], rp[0], target);
          }
          case Connective::Or: {
            int i = L.witness.index;
            return make_cut(L.premises[0], rp[static_cast<std::size_t>(i - 1)], target);
          }
          case Connective::Imp: {
            // rp[0] proves A, L.premises[0] proves B from A, rp[1] uses B.
            Derivation b = make_cut(rp[0], L.premises[0], target);
            return make_cut(b, rp[1], target);
          }
        }
        break;
      case Formula::Kind::Quant1:
        if (phi.quantifier() == Quantifier::All) {
          Derivation inst = substitute_derivation(L.premises[0], TermBinding{*L.witness.eigen, *R.witness.term});
          return make_cut(inst, rp[0], target);
        } else {
          Derivation inst = substitute_derivation(rp[0], TermBinding{*R.witness.eigen, *L.witness.term});
          return make_cut(L.premises[0], inst, target);
        }
      default:
        break;
    }
    throw std::logic_error("cut elimination: unexpected principal pair on " + to_string(phi));
  }

  static Derivation leaf(Rule rule, const std::vector<Formula>& ant, const std::optional<Formula>& succ, Witness w) {
    Derivation d;
    d.rule = rule;
    d.conclusion = Sequent(ant, succ);
    d.witness = std::move(w);
    return d;
  }
};

}  // namespace

Derivation eliminate_cuts(const Derivation& d, CutEliminationReport* report) {
  auto violations = check(d, CalculusId::li());
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidDerivation, "input fails the LI checker at " + violations.front().path + ": " +
                                                  violations.front().reason);
  }
  CutEliminationReport local;
  local.nodes_before = d.node_count();
  local.cuts_before = d.cut_count();
  Derivation current = d;
  Eliminator eliminator;
  while (auto r = max_cut_rank(current)) {
    if (!local.pass_max_rank.empty() && *r >= local.pass_max_rank.back()) {
      throw std::logic_error("cut elimination: rank failed to decrease");
    }
    local.pass_max_rank.push_back(*r);
    current = eliminator.pass(current, *r);
    ++local.passes;
  }
  local.nodes_after = current.node_count();
  if (report) *report = local;
  return current;
}

Derivation lower_cut_rank(const Derivation& d) {
  if (!is_valid(d, CalculusId::li())) throw Error(ErrorCode::InvalidDerivation, "input fails the LI checker");
  auto r = max_cut_rank(d);
  if (!r) return d;
  return Eliminator{}.pass(d, *r);
}

namespace {

bool is_top(const Formula& f) {
  return f.is_binary(Connective::Imp) && f.left().is_bot() && f.right().is_bot();
}

Formula mk_and(const Formula& a, const Formula& b) {
  if (is_top(a) || a == b) return b;
  if (is_top(b)) return a;
  if (a.is_bot() || b.is_bot()) return Formula::bot();
  return Formula::conj(a, b);
}

Formula mk_or(const Formula& a, const Formula& b) {
  if (a.is_bot() || a == b) return b;
  if (b.is_bot()) return a;
  if (is_top(a) || is_top(b)) return Formula::top();
  return Formula::disj(a, b);
}

Formula mk_imp(const Formula& a, const Formula& b) {
  if (is_top(a)) return b;
  if (a.is_bot() || is_top(b) || a == b) return Formula::top();
  return Formula::imp(a, b);
}

std::set<std::string> vars_of(const std::vector<Formula>& fs, const std::optional<Formula>& extra = std::nullopt) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(f.free_term_vars().begin(), f.free_term_vars().end());
  if (extra) out.insert(extra->free_term_vars().begin(), extra->free_term_vars().end());
  return out;
}

bool member(const std::vector<Formula>& fs, const Formula& f) {
  return std::binary_search(fs.begin(), fs.end(), f, formula_less);
}

struct Maehara {
  // Returns I with  a => I  and  I, b => succedent  where a and b cover the
  // antecedent of d.
  Formula run(const Derivation& d, const std::vector<Formula>& a, const std::vector<Formula>& b) {
    const auto& succ = d.conclusion.succedent();
    const Witness& w = d.witness;
    auto sides = [&](std::size_t i, bool main_left, std::optional<Formula> minor) {
      const Sequent& ps = d.premises[i].conclusion;
      std::vector<Formula> pa, pb;
      for (const auto& f : ps.antecedent()) {
        bool in_a = member(a, f) || (minor && f == *minor && main_left);
        bool in_b = member(b, f) || (minor && f == *minor && !main_left);
        if (in_a) pa.push_back(f);
        if (in_b) pb.push_back(f);
      }
      return std::pair{pa, pb};
    };
    auto recurse = [&](std::size_t i, bool main_left, std::optional<Formula> minor) {
      auto [pa, pb] = sides(i, main_left, minor);
      return fix(run(d.premises[i], pa, pb), a, b, succ);
    };

    switch (d.rule) {
      case Rule::Id:
        return member(a, *w.main) ? *w.main : Formula::top();
      case Rule::BotL:
        return member(a, Formula::bot()) ? Formula::bot() : Formula::top();
      case Rule::BotR:
      case Rule::OrR:
      case Rule::AllR:
      case Rule::ExR:
        return recurse(0, false, std::nullopt);
      case Rule::ImpR:
        return recurse(0, false, succ->left());
      case Rule::AndR:
        return mk_and(recurse(0, false, std::nullopt), recurse(1, false, std::nullopt));
      case Rule::Cut:
        throw Error(ErrorCode::NotCutFree, "interpolation needs a cut-free derivation");
      default:
        break;
    }

    bool left = member(a, *w.main);
    switch (d.rule) {
      case Rule::AndL:
      case Rule::AllL:
      case Rule::ExL:
        return recurse(0, left, premise_extra(d, 0));
      case Rule::OrL: {
        Formula i1 = recurse(0, left, premise_extra(d, 0));
        Formula i2 = recurse(1, left, premise_extra(d, 1));
        return left ? mk_or(i1, i2) : mk_and(i1, i2);
      }
      case Rule::ImpL: {
        auto [pa, pb] = sides(0, left, std::nullopt);
        Formula rest = recurse(1, left, premise_extra(d, 1));
        if (left) {
          Formula j = fix(run(d.premises[0], pb, pa), b, a, d.premises[0].conclusion.succedent());
          return mk_imp(j, rest);
        }
        Formula j = fix(run(d.premises[0], pa, pb), a, b, d.premises[0].conclusion.succedent());
        return mk_and(j, rest);
      }
      default:
        throw Error(ErrorCode::InvalidDerivation, std::string("interpolation does not handle rule ") + rule_name(d.rule));
    }
  }

  // Binds variables of a premise interpolant that are not shared by the two
  // sides of the conclusion.
  static Formula fix(Formula f, const std::vector<Formula>& a, const std::vector<Formula>& b,
                     const std::optional<Formula>& succ) {
    auto va = vars_of(a);
    auto vb = vars_of(b, succ);
    std::vector<std::string> vars = f.free_term_vars();
    for (const auto& z : vars) {
      if (!va.contains(z)) {
        f = is_top(f) ? f : Formula::forall(z, f);
      } else if (!vb.contains(z)) {
        f = f.is_bot() ? f : Formula::exists(z, f);
      }
    }
    return f;
  }
};

}  // namespace

Formula interpolate(const Derivation& d, const std::vector<Formula>& left, const std::vector<Formula>& right) {
  auto violations = check(d, CalculusId::li());
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidDerivation, "input fails the LI checker: " + violations.front().reason);
  }
  if (d.cut_count() > 0) throw Error(ErrorCode::NotCutFree, "interpolation needs a cut-free derivation");
  auto a = normalize_set(left);
  auto b = normalize_set(right);
  for (const auto& f : a) {
    if (member(b, f)) throw Error(ErrorCode::InvalidPartition, "formula on both sides: " + to_string(f));
  }
  if (join(a, b) != d.conclusion.antecedent()) {
    throw Error(ErrorCode::InvalidPartition, "partition does not match the antecedent");
  }
  return Maehara{}.run(d, a, b);
}

}  // namespace lip
