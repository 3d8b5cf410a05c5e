#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "kernel_corpus.hpp"
#include "lip/builder.hpp"
#include "lip/derivation.hpp"
#include "lip/error.hpp"
#include "lip/syntax.hpp"

using namespace lip;

namespace {

Formula F(const char* text) { return parse_formula(text); }

Sequent expected_endsequent(const Sequent& s, const Binding& b) {
  auto apply = [&](const Formula& f) {
    if (const auto* t = std::get_if<TermBinding>(&b)) return substitute_term(f, t->var, t->term);
    const auto& sb = std::get<SetBinding>(b);
    return substitute_set(f, sb.var, sb.abs);
  };
  std::vector<Formula> ant;
  for (const auto& f : s.antecedent()) ant.push_back(apply(f));
  std::optional<Formula> succ;
  if (s.succedent()) succ = apply(*s.succedent());
  return Sequent(ant, succ);
}

void collect_rules(const Derivation& d, std::set<Rule>& out) {
  out.insert(d.rule);
  for (const auto& p : d.premises) collect_rules(p, out);
}

// A few derivations with free variables next to eigenvariables, so that
// substitutions have something to capture.
std::vector<std::pair<Derivation, CalculusId>> capture_prone() {
  using namespace build;
  std::vector<std::pair<Derivation, CalculusId>> out;
  Formula qzy = F("q(z,y)");
  out.push_back({all_r(imp_r(hyp({}, qzy), qzy), "y"), CalculusId::li()});
  Formula exq = F("ex x. q(z,x)");
  out.push_back({ex_l(ex_r(hyp({}, qzy), exq, Term::var("y")), exq, "y"), CalculusId::li()});
  Formula py = F("p(y) & X(z)");
  out.push_back({and_l(hyp({}, F("p(y)")), py, 1), CalculusId::li()});
  out.push_back({all2_r(imp_r(hyp({}, F("Y(z)")), F("Y(z)")), "Y"), CalculusId::lip(0)});
  return out;
}

}  // namespace

TEST_CASE("valid corpus passes the checker") {
  CHECK(testing::valid_corpus().size() >= 20);
  for (const auto& e : testing::valid_corpus()) {
    CAPTURE(std::string(e.name));
    Derivation d = parse_derivation(e.text);
    auto violations = check(d, CalculusId::parse(e.calculus));
    for (const auto& v : violations) MESSAGE(v.path << ": " << v.reason);
    CHECK(violations.empty());
  }
}

TEST_CASE("broken corpus is rejected with the expected reason") {
  CHECK(testing::broken_corpus().size() >= 20);
  for (const auto& e : testing::broken_corpus()) {
    CAPTURE(std::string(e.name));
    Derivation d = parse_derivation(e.text);
    auto violations = check(d, CalculusId::parse(e.calculus));
    REQUIRE_FALSE(violations.empty());
    bool found = false;
    for (const auto& v : violations) found = found || v.reason.find(e.reason) != std::string::npos;
    CHECK(found);
  }
}

TEST_CASE("corpus covers every rule") {
  std::set<Rule> valid_rules, broken_rules;
  for (const auto& e : testing::valid_corpus()) collect_rules(parse_derivation(e.text), valid_rules);
  for (const auto& e : testing::broken_corpus()) broken_rules.insert(parse_derivation(e.text).rule);
  CHECK(valid_rules.size() == 18);
  CHECK(broken_rules.size() == 18);
}

TEST_CASE("calculus inclusion is monotone") {
  for (const auto& e : testing::valid_corpus()) {
    Derivation d = parse_derivation(e.text);
    bool li = is_valid(d, CalculusId::li());
    bool prev = li;
    for (int n = 0; n <= 3; ++n) {
      bool now = is_valid(d, CalculusId::lip(n));
      if (prev) CHECK(now);
      prev = now;
    }
    if (prev) CHECK(is_valid(d, CalculusId::lit()));
  }
}

TEST_CASE("violation paths point at the broken node") {
  Derivation d = parse_derivation(R"((ImpR {} |- p -> q (AndL {main: p & q; i: 1} p |- q (Id {main: q} q |- q))))");
  auto v = check(d, CalculusId::li());
  REQUIRE(!v.empty());
  CHECK(v.front().path == "/0");
}

TEST_CASE("derivation printing round trip") {
  for (const auto& e : testing::valid_corpus()) {
    Derivation d = parse_derivation(e.text);
    std::string text = to_string(d);
    Derivation back = parse_derivation(text);
    CHECK(to_string(back) == text);
    CHECK(back.conclusion == d.conclusion);
  }
  CHECK_THROWS_AS(parse_derivation("(Foo {} p |- p)"), ParseError);
  CHECK_THROWS_AS(parse_derivation("(Id {main: p} p |- p"), ParseError);
}

TEST_CASE("sequent printing") {
  Sequent s = parse_sequent("q, p & r |- p");
  CHECK(to_string(s) == "p & r, q |- p");
  CHECK(to_string(parse_sequent("p |-")) == "p |-");
  CHECK(to_string(parse_sequent("|- p")) == "|- p");
  CHECK(parse_sequent("p, p, q |- r").antecedent().size() == 2);
}

TEST_CASE("weakening examples") {
  Derivation id = build::hyp({}, F("p"));
  Derivation w = weaken(id, {F("q")});
  CHECK(w.conclusion == parse_sequent("p, q |- p"));
  CHECK(is_valid(w, CalculusId::li()));

  Derivation all_right = parse_derivation(testing::valid_corpus()[11].text);
  REQUIRE(all_right.rule == Rule::AllR);
  Derivation w2 = weaken(all_right, {F("r(y)")});
  CHECK(is_valid(w2, CalculusId::li()));
  CHECK(*w2.witness.eigen != "y");
  CHECK(w2.conclusion == all_right.conclusion.with(F("r(y)")));

  CHECK(to_string(weaken(all_right, {})) == to_string(all_right));
}

TEST_CASE("succedent weakening") {
  Derivation d = parse_derivation(R"((ImpL {main: q -> bot} q, q -> bot |- (Id {main: q} q |- q) (BotL {} bot, q |-)))");
  Derivation w = weaken_succedent(d, F("r(y)"));
  CHECK(is_valid(w, CalculusId::li()));
  CHECK(w.conclusion.succedent() == F("r(y)"));
}

TEST_CASE("substitution examples") {
  Derivation d = build::hyp({}, F("p(x)"));
  Derivation s = substitute_derivation(d, TermBinding{"x", parse_term("0")});
  CHECK(s.conclusion == parse_sequent("p(0) |- p(0)"));
  CHECK(is_valid(s, CalculusId::li()));

  // Delta => phi(Y) for phi = X(c) -> X(x), instantiated with lambda x. q(x).
  Derivation pi = build::imp_r(build::bot_l({F("Y(c)")}, F("Y(x)")), F("Y(c)"));
  REQUIRE(pi.conclusion == parse_sequent("bot |- Y(c) -> Y(x)"));
  Derivation inst = substitute_derivation(pi, SetBinding{"Y", parse_abstract("\\x. q(x)")}, CalculusId::li());
  CHECK(inst.conclusion == parse_sequent("bot |- q(c) -> q(x)"));
  CHECK(is_valid(inst, CalculusId::li()));

  Derivation unchanged = substitute_derivation(pi, TermBinding{"w", parse_term("c")});
  CHECK(to_string(unchanged) == to_string(pi));

  CHECK_THROWS_AS(substitute_derivation(pi, SetBinding{"Y", parse_abstract("\\x. All Z. Z(x)")}, CalculusId::li()), Error);
}

TEST_CASE("substitution renames capturing eigenvariables") {
  auto cases = capture_prone();
  Derivation s = substitute_derivation(cases[0].first, TermBinding{"z", parse_term("s(y)")});
  CHECK(is_valid(s, CalculusId::li()));
  CHECK(s.conclusion == parse_sequent("|- all x. q(s(y),x) -> q(s(y),x)"));
}

TEST_CASE("weaken and substitute preserve validity on random inputs") {
  testing::FormulaGen gen(99);
  std::vector<std::pair<Derivation, CalculusId>> pool = capture_prone();
  for (const auto& e : testing::valid_corpus()) pool.push_back({parse_derivation(e.text), CalculusId::parse(e.calculus)});
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    const auto& [d, calc] = pool[static_cast<std::size_t>(gen.pick(static_cast<int>(pool.size())))];
    int allowed = calc.kind == CalculusId::Kind::LI ? -1 : calc.n;
    Binding b = gen.coin()
                    ? Binding(TermBinding{std::string(1, "xyz"[gen.pick(3)]), gen.term(2, {"y", "z"})})
                    : Binding(SetBinding{gen.coin() ? "X" : "Y", gen.abstract(gen.pick(allowed + 2) - 1, 2)});
    Derivation s = substitute_derivation(d, b, calc);
    CAPTURE(to_string(d));
    CHECK(is_valid(s, calc));
    CHECK(s.conclusion == expected_endsequent(d.conclusion, b));

    std::vector<Formula> extra = {gen.formula(-1, 2, {"y", "z"}, {"X", "Y"})};
    Derivation w = weaken(d, extra);
    CHECK(is_valid(w, calc));
    CHECK(w.conclusion == d.conclusion.with(extra));
    ++checked;
  }
  CHECK(checked >= 100);
}
