#include <doctest.h>

#include <random>
#include <set>

#include "lip/builder.hpp"
#include "lip/cut_elim.hpp"
#include "lip/error.hpp"
#include "lip/search.hpp"
#include "lip/syntax.hpp"

#include "cut_corpus.hpp"

using namespace lip;
using namespace lip::testing;

TEST_CASE("cut against identity collapses to the left premise") {
  auto p = F("p"), pq = F("p | q");
  auto d = build::cut(build::or_r(build::hyp({p}, p), pq, 1), build::hyp({pq}, pq));
  REQUIRE(is_valid(d, CalculusId::li()));
  CutEliminationReport report;
  auto e = eliminate_cuts(d, &report);
  CHECK(e.node_count() == 2);
  CHECK(e.rule == Rule::OrR);
  CHECK(e.cut_count() == 0);
  CHECK(e.conclusion == d.conclusion);
  CHECK(report.passes == 1);
  CHECK(report.nodes_before == 4);
  CHECK(report.nodes_after == 2);
}

TEST_CASE("cut-free input is returned unchanged") {
  auto d = must_prove(Fs("p -> q, q -> r"), F("p -> r"));
  CutEliminationReport report;
  auto e = eliminate_cuts(d, &report);
  CHECK(to_string(e) == to_string(d));
  CHECK(report.passes == 0);
  CHECK(report.pass_max_rank.empty());
}

TEST_CASE("implication cut with retained main formula splits into two lower cuts") {
  auto a = F("a"), b = F("b"), ab = F("a -> b");
  auto left = must_prove(Fs("a -> c, c -> b"), ab);
  REQUIRE(left.rule == Rule::ImpR);
  auto right = build::imp_l(weaken(build::hyp({a}, a), {ab}), weaken(build::hyp({b}, b), {ab}), ab);
  REQUIRE(right.premises[0].conclusion.contains(ab));
  REQUIRE(right.premises[1].conclusion.contains(ab));
  auto d = build::cut(left, right);
  REQUIRE(is_valid(d, CalculusId::li()));

  auto once = lower_cut_rank(d);
  CHECK(is_valid(once, CalculusId::li()));
  CHECK(once.conclusion == d.conclusion);
  std::set<std::string> cuts;
  cut_formulas(once, cuts);
  CHECK(cuts == std::set<std::string>{"a", "b"});
  CHECK(max_cut_rank(once) == 0u);

  auto full = eliminate_cuts(d);
  CHECK(full.cut_count() == 0);
  CHECK(is_valid(full, CalculusId::li()));
}

TEST_CASE("cut elimination over the corpus") {
  auto corpus = cut_corpus();
  CHECK(corpus.size() >= 30);
  std::set<Formula::Kind> kinds;
  std::set<Connective> connectives;
  std::set<Quantifier> quantifiers;
  for (const auto& [name, d] : corpus) {
    CAPTURE(name);
    REQUIRE(is_valid(d, CalculusId::li()));
    CHECK(d.node_count() <= 200);
    REQUIRE(max_cut_rank(d));
    CHECK(*max_cut_rank(d) <= 4u);
    std::set<std::string> cuts;
    cut_formulas(d, cuts);
    for (const auto& c : cuts) {
      Formula f = F(c);
      kinds.insert(f.kind());
      if (f.is_binary()) connectives.insert(f.connective());
      if (f.kind() == Formula::Kind::Quant1) quantifiers.insert(f.quantifier());
    }

    CutEliminationReport report;
    auto e = eliminate_cuts(d, &report);
    CHECK(e.cut_count() == 0);
    CHECK(e.conclusion == d.conclusion);
    auto violations = check(e, CalculusId::li());
    CHECK_MESSAGE(violations.empty(), (violations.empty() ? "" : violations[0].path + " " + violations[0].reason));
    CHECK(report.passes == report.pass_max_rank.size());
    for (std::size_t i = 1; i < report.pass_max_rank.size(); ++i) {
      CHECK(report.pass_max_rank[i] < report.pass_max_rank[i - 1]);
    }
    CHECK(report.nodes_before == d.node_count());
    CHECK(report.nodes_after == e.node_count());
  }
  CHECK(kinds.contains(Formula::Kind::Pred));
  CHECK(kinds.contains(Formula::Kind::Bot));
  CHECK(connectives.size() == 3);
  CHECK(quantifiers.size() == 2);
}

TEST_CASE("second-order input is rejected") {
  auto f = F("All X. X(c) -> X(c)");
  auto d = build::cut(build::all2_r(build::imp_r(build::hyp({}, F("Y(c)")), F("Y(c)")), "Y"), build::hyp({f}, f));
  REQUIRE(is_valid(d, CalculusId::lip(0)));
  CHECK_THROWS_AS(eliminate_cuts(d), Error);
}

TEST_CASE("interpolants satisfy the Craig conditions") {
  int checked = 0;
  for (const auto& c : kInterpCases) {
    std::string goal = std::string(c.left) + " | " + c.right + " |- " + c.succ;
    CAPTURE(goal);
    auto left = Fs(c.left);
    auto right = Fs(c.right);
    Formula succ = F(c.succ);
    auto all = left;
    all.insert(all.end(), right.begin(), right.end());
    auto d = must_prove(normalize_set(all), succ);
    Formula i = interpolate(d, left, right);
    std::string shown = to_string(i);
    CAPTURE(shown);
    if (c.expected) CHECK(shown == c.expected);

    auto first = prove(left, i);
    REQUIRE(first);
    CHECK(is_valid(*first, CalculusId::li()));
    auto second = prove(with(right, i), succ);
    REQUIRE(second);
    CHECK(is_valid(*second, CalculusId::li()));

    std::set<std::string> lv, rv;
    auto lvoc = vocabulary(left, &lv);
    auto rvoc = vocabulary(with(right, succ), &rv);
    std::set<std::string> iv;
    for (const auto& s : vocabulary({i}, &iv)) {
      CHECK(lvoc.contains(s));
      CHECK(rvoc.contains(s));
    }
    for (const auto& x : iv) {
      CHECK(lv.contains(x));
      CHECK(rv.contains(x));
    }
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("interpolation errors") {
  auto d = must_prove(Fs("p & q"), F("q | r"));
  CHECK(interpolate(d, {}, Fs("p & q")) == Formula::top());
  try {
    interpolate(d, Fs("p"), Fs("p & q"));
    FAIL("expected InvalidPartition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPartition);
  }
  auto p = F("p"), pq = F("p | q");
  auto c = build::cut(build::or_r(build::hyp({p}, p), pq, 1), build::hyp({pq}, pq));
  try {
    interpolate(c, Fs("p"), {});
    FAIL("expected NotCutFree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCutFree);
  }
}
