#include <doctest.h>

#include "lip/builder.hpp"
#include "lip/error.hpp"
#include "lip/search.hpp"
#include "lip/syntax.hpp"

using namespace lip;

namespace {

Formula F(const char* text) { return parse_formula(text); }
Sequent S(const char* text) { return parse_sequent(text); }

SearchBudget depth(int n) {
  SearchBudget b;
  b.max_depth = n;
  return b;
}

}  // namespace

TEST_CASE("search examples") {
  auto d = search_cutfree(S("|- p -> p"), depth(3));
  REQUIRE(d);
  CHECK(d->node_count() == 2);
  CHECK(d->rule == Rule::ImpR);
  CHECK(d->premises[0].rule == Rule::Id);

  auto e = search_cutfree(S("q, q -> bot |- r"), depth(5));
  REQUIRE(e);
  CHECK(e->rule == Rule::ImpL);
  CHECK(e->premises[1].rule == Rule::BotL);
  CHECK(is_valid(*e, CalculusId::li()));

  CHECK_FALSE(search_cutfree(S("|- p | (p -> bot)"), depth(8)));
}

TEST_CASE("search results are checker-valid and deterministic") {
  const char* goals[] = {
      "|- (p -> q) -> (q -> r) -> p -> r",
      "p & q |- q & p",
      "p | q |- q | p",
      "|- ((p | (p -> bot)) -> bot) -> bot",
      "all x. p(x) |- p(c) & p(s(c))",
      "all x. p(x) -> q(x), p(c) |- ex y. q(y)",
      "ex x. p(x) & q(x) |- ex x. p(x)",
      "|- (all x. p(x) & q(x)) -> all x. p(x)",
      "p -> bot |- p -> q",
      "ex x. bot |- r",
  };
  for (const char* g : goals) {
    CAPTURE(std::string(g));
    auto d1 = search_cutfree(S(g), depth(10));
    REQUIRE(d1);
    CHECK(is_valid(*d1, CalculusId::li()));
    CHECK(d1->cut_count() == 0);
    CHECK(d1->conclusion == S(g));
    auto d2 = search_cutfree(S(g), depth(10));
    CHECK(to_string(*d1) == to_string(*d2));
  }
}

TEST_CASE("term candidates come from the budget and the goal") {
  SearchBudget b = depth(6);
  CHECK_FALSE(search_cutfree(S("all x. p(x) |- ex y. p(y)"), b));
  b.term_candidates = {parse_term("c")};
  auto d = search_cutfree(S("all x. p(x) |- ex y. p(y)"), b);
  REQUIRE(d);
  CHECK(is_valid(*d, CalculusId::li()));
}

TEST_CASE("node budget is reported") {
  SearchBudget b = depth(30);
  b.max_nodes = 50;
  SearchResult r = search(S("all x. p(x) -> p(s(x)), p(0) |- p(s(s(s(s(s(s(0)))))))"), b);
  CHECK_FALSE(r.derivation);
  CHECK(r.budget_exhausted);
}

TEST_CASE("search rejects second-order goals") {
  CHECK_THROWS_AS(search_cutfree(S("All X. X(c) |- p(c)"), depth(3)), Error);
  SearchOptions opaque;
  opaque.opaque_second_order = true;
  CHECK(search(S("All X. X(c) |- All X. X(c)"), depth(3), opaque).derivation);
}

TEST_CASE("omega membership examples") {
  SearchBudget b = depth(8);
  OmegaVerdict v1 = omega_membership(F("All X. X(c) -> X(c)"), {}, b);
  CHECK(v1.member);
  REQUIRE(v1.certificate);
  CHECK(is_valid(*v1.certificate, CalculusId::li()));

  Formula q = F("All X. X(c) -> X(x)");
  OmegaVerdict v2 = omega_membership(q, {Formula::bot()}, b);
  CHECK(v2.member);
  CHECK(v2.goal.contains(Formula::bot()));
  CHECK_FALSE(v2.goal.free_set_vars().empty());

  OmegaVerdict v3 = omega_membership(q, {}, b);
  CHECK_FALSE(v3.member);
  CHECK_FALSE(v3.certificate);

  CHECK_THROWS_AS(omega_membership(F("All X. (All Y. Y(c)) -> X(c)"), {}, b), Error);
  CHECK_THROWS_AS(omega_membership(q, {F("All Y. Y(c)")}, b), Error);
}

TEST_CASE("omega membership on the existential side") {
  SearchBudget b = depth(8);
  OmegaVerdict v = omega_membership(F("Ex X. X(c) & p"), {}, b, F("p"));
  CHECK(v.member);
  REQUIRE(v.certificate);
  CHECK(is_valid(*v.certificate, CalculusId::li()));
  CHECK(v.certificate->conclusion.succedent() == F("p"));
}

TEST_CASE("certificates use a genuinely fresh set variable") {
  SearchBudget b = depth(8);
  OmegaVerdict v = omega_membership(F("All X. X(c) -> X(c)"), {F("Y(c)"), F("X(d)")}, b);
  CHECK(v.member);
  CHECK(v.eigen != "Y");
  CHECK(v.eigen != "X");
}

TEST_CASE("omega cut reduction") {
  Formula q = F("All X. X(c) -> X(x)");
  Derivation left = build::imp_r(build::bot_l({F("Y(c)")}, F("Y(x)")), F("Y(c)"));
  Derivation stored = build::bot_l({}, F("r"));
  OmegaCutConfig cfg{{Formula::bot()}, q, left, {{{Formula::bot()}, stored}}};
  Derivation out = omega_cut_reduce(cfg);
  CHECK(to_string(out) == to_string(stored));
  CHECK(out.conclusion == stored.conclusion);

  OmegaCutConfig missing{{Formula::bot()}, q, left, {{{F("p")}, build::hyp({}, F("p"))}}};
  try {
    omega_cut_reduce(missing);
    FAIL("expected MissingPremise");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingPremise);
  }

  Formula q2 = F("All X. X(c) -> X(c)");
  Derivation left2 = build::imp_r(build::hyp({}, F("Y(c)")), F("Y(c)"));
  Derivation d = build::hyp({}, F("p"));
  CHECK(to_string(omega_cut_reduce({{}, q2, left2, {{{}, d}}})) == to_string(d));

  Derivation bad = left2;
  bad.premises[0].witness.main = F("Y(d)");
  try {
    omega_cut_reduce({{}, q2, bad, {{{}, d}}});
    FAIL("expected InvalidCertificate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCertificate);
  }
}
