#pragma once

#include <string>
#include <vector>

namespace lip::testing {

struct CorpusEntry {
  const char* name;
  const char* calculus;
  const char* text;
  const char* reason;  // expected violation substring; empty for valid entries
};

inline const std::vector<CorpusEntry>& valid_corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"id", "LI", R"((Id {main: p} p, q |- p))", ""},
      {"bot-left", "LI", R"((BotL {} bot, q |- r))", ""},
      {"bot-left-empty", "LI", R"((BotL {} bot |-))", ""},
      {"bot-right", "LI", R"((BotR {} bot |- bot (BotL {} bot |-)))", ""},
      {"and-left-retained", "LI", R"((AndL {main: p & q; i: 2} p & q |- q (Id {main: q} q, p & q |- q)))", ""},
      {"and-left-dropped", "LI", R"((AndL {main: p & q; i: 1} p & q |- p (Id {main: p} p |- p)))", ""},
      {"and-right", "LI", R"((AndR {} p, q |- p & q (Id {main: p} p, q |- p) (Id {main: q} p, q |- q)))", ""},
      {"or-left", "LI",
       R"((OrL {main: p | q} p | q |- q | p
            (OrR {i: 2} p |- q | p (Id {main: p} p |- p))
            (OrR {i: 1} q |- q | p (Id {main: q} q |- q))))",
       ""},
      {"imp-left", "LI", R"((ImpL {main: q -> bot} q, q -> bot |- r (Id {main: q} q |- q) (BotL {} bot, q |- r)))", ""},
      {"imp-right", "LI", R"((ImpR {} |- p -> p (Id {main: p} p |- p)))", ""},
      {"all-left", "LI", R"((AllL {main: all x. p(x); term: c} all x. p(x) |- p(c) (Id {main: p(c)} p(c) |- p(c))))", ""},
      {"all-right", "LI",
       R"((AllR {eigen: y} all x. p(x) |- all x. p(x)
            (AllL {main: all x. p(x); term: y} all x. p(x) |- p(y) (Id {main: p(y)} p(y), all x. p(x) |- p(y)))))",
       ""},
      {"ex-left", "LI",
       R"((ExL {main: ex x. p(x); eigen: y} ex x. p(x) |- ex x. p(x)
            (ExR {term: y} p(y) |- ex x. p(x) (Id {main: p(y)} p(y) |- p(y)))))",
       ""},
      {"ex-right", "LI", R"((ExR {term: s(0)} p(s(0)) |- ex x. p(x) (Id {main: p(s(0))} p(s(0)) |- p(s(0)))))", ""},
      {"cut", "LI",
       R"((Cut {cut: p | q} p |- p | q
            (OrR {i: 1} p |- p | q (Id {main: p} p |- p))
            (Id {main: p | q} p, p | q |- p | q)))",
       ""},
      {"all2-left", "LIP0", R"((All2L {main: All X. X(c); abs: \x. p(x)} All X. X(c) |- p(c) (Id {main: p(c)} p(c) |- p(c))))", ""},
      {"all2-left-level", "LIP0",
       R"((All2L {main: All X. X(d) -> p; abs: \x. All Y. Y(c)} All X. X(d) -> p, All Y. Y(c) |- p
            (ImpL {main: (All Y. Y(c)) -> p} (All Y. Y(c)) -> p, All Y. Y(c) |- p
              (Id {main: All Y. Y(c)} All Y. Y(c) |- All Y. Y(c))
              (Id {main: p} p, All Y. Y(c) |- p))))",
       ""},
      {"all2-right", "LIP0", R"((All2R {eigen: Y} |- All X. X(c) -> X(c) (ImpR {} |- Y(c) -> Y(c) (Id {main: Y(c)} Y(c) |- Y(c)))))", ""},
      {"ex2-left", "LIP0",
       R"((Ex2L {main: Ex X. X(c); eigen: Y} Ex X. X(c) |- Ex X. X(c)
            (Ex2R {abs: \x. Y(x)} Y(c) |- Ex X. X(c) (Id {main: Y(c)} Y(c) |- Y(c)))))",
       ""},
      {"ex2-right", "LIP0",
       R"((Ex2R {abs: \x. p(x) & q(x)} p(c) & q(c) |- Ex X. X(c) (Id {main: p(c) & q(c)} p(c) & q(c) |- p(c) & q(c))))", ""},
      {"modus-ponens", "LI",
       R"((ImpR {} |- (p -> q) & p -> q
            (AndL {main: (p -> q) & p; i: 1} (p -> q) & p |- q
              (AndL {main: (p -> q) & p; i: 2} p -> q, (p -> q) & p |- q
                (ImpL {main: p -> q} p, p -> q, (p -> q) & p |- q
                  (Id {main: p} p, (p -> q) & p |- p)
                  (Id {main: q} p, q, (p -> q) & p |- q))))))",
       ""},
      {"bot-right-imp", "LI",
       R"((BotR {} q, q -> bot |- bot (ImpL {main: q -> bot} q, q -> bot |- (Id {main: q} q |- q) (BotL {} bot, q |-))))", ""},
      {"lip1", "LIP1",
       R"((All2L {main: All X. X(c) -> X(c); abs: \x. All Y. Y(x) -> (All Z. Z(x))}
            All X. X(c) -> X(c) |- (All Y. Y(c) -> (All Z. Z(c))) -> All Y. Y(c) -> (All Z. Z(c))
            (Id {main: (All Y. Y(c) -> (All Z. Z(c))) -> All Y. Y(c) -> (All Z. Z(c))}
              (All Y. Y(c) -> (All Z. Z(c))) -> All Y. Y(c) -> (All Z. Z(c))
              |- (All Y. Y(c) -> (All Z. Z(c))) -> All Y. Y(c) -> (All Z. Z(c)))))",
       ""},
  };
  return entries;
}

inline const std::vector<CorpusEntry>& broken_corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"id-wrong-succedent", "LI", R"((Id {main: p} p, q |- q))", "succedent mismatch"},
      {"id-main-absent", "LI", R"((Id {main: r} p |- r))", "main formula missing"},
      {"bot-left-no-bot", "LI", R"((BotL {} q |- r))", "bot missing"},
      {"bot-right-succedent", "LI", R"((BotR {} bot |- bot (Id {main: bot} bot |- bot)))", "premise succedent must be empty"},
      {"and-left-index", "LI", R"((AndL {main: p & q; i: 1} p & q |- q (Id {main: q} q |- q)))", "minor formula missing"},
      {"and-right-swapped", "LI", R"((AndR {} p, q |- p & q (Id {main: q} p, q |- q) (Id {main: p} p, q |- p)))", "succedent mismatch"},
      {"or-left-minor", "LI",
       R"((OrL {main: p | q} p | q |- p (Id {main: p} p |- p) (Id {main: p} p |- p)))", "minor formula missing"},
      {"or-right-index", "LI", R"((OrR {i: 2} p |- p | q (Id {main: p} p |- p)))", "succedent mismatch"},
      {"imp-left-argument", "LI", R"((ImpL {main: q -> bot} q, q -> bot |- r (Id {main: q} q |- bot) (BotL {} bot, q |- r)))",
       "left premise must prove"},
      {"imp-right-minor", "LI", R"((ImpR {} q |- p -> q (Id {main: q} q |- q)))", "minor formula missing"},
      {"all-left-term", "LI", R"((AllL {main: all x. p(x); term: d} all x. p(x) |- p(c) (Id {main: p(c)} p(c) |- p(c))))",
       "minor formula missing"},
      {"all-right-eigen", "LI",
       R"((AllR {eigen: y} p(y) |- all x. p(x) (Id {main: p(y)} p(y) |- p(y))))", "eigenvariable occurs free"},
      {"ex-left-eigen", "LI",
       R"((ExL {main: ex x. p(x); eigen: y} ex x. p(x) |- p(y) (Id {main: p(y)} p(y) |- p(y))))", "eigenvariable occurs free"},
      {"ex-right-term", "LI", R"((ExR {term: c} p(d) |- ex x. p(x) (Id {main: p(d)} p(d) |- p(d))))", "succedent mismatch"},
      {"cut-formula", "LI",
       R"((Cut {cut: q} p |- p | q (OrR {i: 1} p |- p | q (Id {main: p} p |- p)) (Id {main: p | q} p, p | q |- p | q)))",
       "left premise must prove the cut formula"},
      {"all2-left-in-li", "LI", R"((All2L {main: All X. X(c); abs: \x. p(x)} All X. X(c) |- p(c) (Id {main: p(c)} p(c) |- p(c))))",
       "not available in LI"},
      {"all2-left-parameter", "LIP0",
       R"((All2L {main: All X. X(d) -> p; abs: \x. All Y. Y(c) -> Z(c)} All X. X(d) -> p |- (All Y. Y(c) -> Z(c)) -> p
            (Id {main: (All Y. Y(c) -> Z(c)) -> p} (All Y. Y(c) -> Z(c)) -> p |- (All Y. Y(c) -> Z(c)) -> p)))",
       "exceeds level 0"},
      {"all2-right-eigen", "LIP0",
       R"((All2R {eigen: Y} Y(c) |- All X. X(c) (Id {main: Y(c)} Y(c) |- Y(c))))", "eigenvariable occurs free"},
      {"ex2-left-eigen", "LIP0",
       R"((Ex2L {main: Ex X. X(c); eigen: Y} Ex X. X(c) |- Y(c) (Id {main: Y(c)} Y(c) |- Y(c))))", "eigenvariable occurs free"},
      {"ex2-right-abstract", "LIP0",
       R"((Ex2R {abs: \x. q(x)} p(c) |- Ex X. X(c) (Id {main: p(c)} p(c) |- p(c))))", "succedent mismatch"},
      {"premise-count", "LI", R"((AndR {} p |- p & p (Id {main: p} p |- p)))", "expects 2 premises"},
      {"context-extra", "LI", R"((ImpR {} |- p -> p (Id {main: p} p, q |- p)))", "context mismatch"},
      {"level-in-lip0", "LIP0",
       R"((Id {main: All X. (All Y. Y(c)) -> X(c)} All X. (All Y. Y(c)) -> X(c) |- All X. (All Y. Y(c)) -> X(c)))", "outside LIP0"},
  };
  return entries;
}

}  // namespace lip::testing
