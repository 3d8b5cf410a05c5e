#include "lip/syntax.hpp"

#include <algorithm>
#include <cctype>

#include "lip/error.hpp"

namespace lip {

namespace {

bool is_keyword(std::string_view s) {
  return s == "all" || s == "ex" || s == "All" || s == "Ex" || s == "bot" || s == "top";
}

bool is_upper_name(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Reader::Reader(std::string_view text, Language language) : text_(text), language_(std::move(language)) {}

bool Reader::is_ident_char(char c) const {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

void Reader::skip_space() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

bool Reader::at_end() {
  skip_space();
  return pos_ >= text_.size();
}

char Reader::peek() {
  skip_space();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Reader::looking_at(std::string_view token) {
  skip_space();
  if (text_.substr(pos_, token.size()) != token) return false;
  // Keyword-like tokens must not run into an identifier.
  if (!token.empty() && is_ident_char(token.back())) {
    std::size_t end = pos_ + token.size();
    if (end < text_.size() && is_ident_char(text_[end])) return false;
  }
  return true;
}

bool Reader::consume(std::string_view token) {
  if (!looking_at(token)) return false;
  pos_ += token.size();
  return true;
}

void Reader::expect(std::string_view token) {
  if (!consume(token)) fail("expected '" + std::string(token) + "'");
}

std::string Reader::identifier() {
  skip_space();
  std::size_t start = pos_;
  if (pos_ < text_.size() && text_[pos_] == '*') {
    ++pos_;
    return "*";
  }
  while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
  if (start == pos_) fail("expected identifier");
  return std::string(text_.substr(start, pos_ - start));
}

void Reader::fail(const std::string& message) const {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
    if (text_[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError(line, column, message);
}

bool Reader::open_paren_follows() const { return pos_ < text_.size() && text_[pos_] == '('; }

std::vector<Term> Reader::arguments() {
  std::vector<Term> args;
  expect("(");
  if (consume(")")) return args;
  do {
    args.push_back(term());
  } while (consume(","));
  expect(")");
  return args;
}

Term Reader::term_from(std::string name) {
  if (is_upper_name(name) || is_keyword(name)) fail("'" + name + "' cannot start a term");
  if (open_paren_follows()) return Term::app(std::move(name), arguments());
  if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) return Term::var(std::move(name));
  if (language_.is_constant(name) || name == "*" || all_digits(name)) return Term::app(std::move(name));
  return Term::var(std::move(name));
}

Term Reader::term() {
  skip_space();
  std::size_t start = pos_;
  std::string name = identifier();
  Term t = term_from(std::move(name));
  try {
    language_.validate(t);
  } catch (const Error& e) {
    pos_ = start;
    fail(e.what());
  }
  return t;
}

Formula Reader::formula() { return implication(); }

Formula Reader::implication() {
  Formula lhs = disjunction();
  if (consume("->")) return Formula::imp(lhs, implication());
  return lhs;
}

Formula Reader::disjunction() {
  Formula lhs = conjunction();
  while (!looking_at("|-") && consume("|")) lhs = Formula::disj(lhs, conjunction());
  return lhs;
}

Formula Reader::conjunction() {
  Formula lhs = unary();
  while (consume("&")) lhs = Formula::conj(lhs, unary());
  return lhs;
}

Formula Reader::quantifier(bool second_order, Quantifier q) {
  std::vector<std::string> names;
  while (!looking_at(".")) {
    std::string name = identifier();
    if (is_keyword(name)) fail("keyword '" + name + "' used as a variable");
    if (second_order != is_upper_name(name)) {
      fail(second_order ? "set variables must be uppercase" : "term variables must be lowercase");
    }
    names.push_back(std::move(name));
  }
  if (names.empty()) fail("quantifier without variable");
  expect(".");
  std::size_t saved = scope_.size();
  if (!second_order) scope_.insert(scope_.end(), names.begin(), names.end());
  Formula body = formula();
  scope_.resize(saved);
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    if (second_order) {
      body = q == Quantifier::All ? Formula::forall2(*it, body) : Formula::exists2(*it, body);
    } else {
      body = q == Quantifier::All ? Formula::forall(*it, body) : Formula::exists(*it, body);
    }
  }
  return body;
}

Formula Reader::unary() {
  if (consume("(")) {
    Formula f = formula();
    expect(")");
    return f;
  }
  if (consume("bot")) return Formula::bot();
  if (consume("top")) return Formula::top();
  if (consume("all")) return quantifier(false, Quantifier::All);
  if (consume("ex")) return quantifier(false, Quantifier::Ex);
  if (consume("All")) return quantifier(true, Quantifier::All);
  if (consume("Ex")) return quantifier(true, Quantifier::Ex);
  skip_space();
  std::size_t start = pos_;
  std::string name = identifier();
  if (is_upper_name(name)) {
    if (!open_paren_follows()) fail("set variable needs an argument");
    expect("(");
    Term arg = term();
    expect(")");
    return Formula::set_atom(std::move(name), std::move(arg));
  }
  if (is_keyword(name)) fail("unexpected keyword '" + name + "'");
  bool has_args = open_paren_follows();
  std::vector<Term> args;
  if (has_args) args = arguments();
  if (looking_at("=")) {
    Term lhs = has_args ? Term::app(name, args) : term_from(name);
    expect("=");
    try {
      language_.validate(lhs);
    } catch (const Error& e) {
      pos_ = start;
      fail(e.what());
    }
    Term rhs = term();
    return Formula::pred("=", {lhs, rhs});
  }
  if (name == "*" || all_digits(name)) fail("expected '=' after term");
  Formula atom = Formula::pred(std::move(name), std::move(args));
  try {
    language_.validate(atom);
  } catch (const Error& e) {
    pos_ = start;
    fail(e.what());
  }
  return atom;
}

Abstract Reader::abstract() {
  expect("\\");
  std::string name = identifier();
  if (is_upper_name(name) || is_keyword(name)) fail("abstract parameter must be a lowercase variable");
  expect(".");
  scope_.push_back(name);
  Formula body = formula();
  scope_.pop_back();
  return Abstract::bind(name, body);
}

namespace {

template <typename T, typename F>
T parse_whole(std::string_view text, const Language& language, F f) {
  Reader reader(text, language);
  T value = f(reader);
  if (!reader.at_end()) reader.fail("unexpected trailing input");
  return value;
}

}  // namespace

Term parse_term(std::string_view text, const Language& language) {
  return parse_whole<Term>(text, language, [](Reader& r) { return r.term(); });
}

Formula parse_formula(std::string_view text, const Language& language) {
  return parse_whole<Formula>(text, language, [](Reader& r) { return r.formula(); });
}

Abstract parse_abstract(std::string_view text, const Language& language) {
  return parse_whole<Abstract>(text, language, [](Reader& r) { return r.abstract(); });
}

std::string fresh_name(std::string_view base, const std::set<std::string>& used) {
  std::string stem(base);
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  if (!used.contains(std::string(base))) return std::string(base);
  for (unsigned i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!used.contains(candidate)) return candidate;
  }
}

namespace {

class Printer {
 public:
  explicit Printer(std::set<std::string> used) : used_(std::move(used)) {}

  std::string term(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::Var:
        return t.name();
      case Term::Kind::Bound:
        if (t.index() < terms_.size()) return terms_[terms_.size() - 1 - t.index()];
        return "?" + std::to_string(t.index());
      case Term::Kind::App: {
        if (t.args().empty()) return t.name();
        std::string out = t.name() + "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ",";
          out += term(t.args()[i]);
        }
        return out + ")";
      }
    }
    return {};
  }

  std::string formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Pred: {
        if (f.name() == "=" && f.args().size() == 2) return term(f.args()[0]) + " = " + term(f.args()[1]);
        if (f.args().empty()) return f.name();
        std::string out = f.name() + "(";
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ",";
          out += term(f.args()[i]);
        }
        return out + ")";
      }
      case Formula::Kind::SetAtom: {
        std::string name;
        if (!f.set_is_bound()) {
          name = f.name();
        } else if (f.set_index() < sets_.size()) {
          name = sets_[sets_.size() - 1 - f.set_index()];
        } else {
          name = "?S" + std::to_string(f.set_index());
        }
        return name + "(" + term(f.arg()) + ")";
      }
      case Formula::Kind::Bot:
        return "bot";
      case Formula::Kind::Binary: {
        if (f == Formula::top()) return "top";
        int p = precedence(f);
        const char* op = f.connective() == Connective::And ? " & " : f.connective() == Connective::Or ? " | " : " -> ";
        bool right_assoc = f.connective() == Connective::Imp;
        int lp = precedence(f.left());
        int rp = precedence(f.right());
        bool left_paren = right_assoc ? lp <= p : lp < p;
        bool right_paren = right_assoc ? rp < p : rp <= p;
        std::string l = formula(f.left());
        std::string r = formula(f.right());
        if (left_paren) l = "(" + l + ")";
        if (right_paren) r = "(" + r + ")";
        return l + op + r;
      }
      case Formula::Kind::Quant1: {
        std::string name = pick(false);
        terms_.push_back(name);
        std::string body = formula(f.body());
        terms_.pop_back();
        return std::string(f.quantifier() == Quantifier::All ? "all " : "ex ") + name + ". " + body;
      }
      case Formula::Kind::Quant2: {
        std::string name = pick(true);
        sets_.push_back(name);
        std::string body = formula(f.body());
        sets_.pop_back();
        return std::string(f.quantifier() == Quantifier::All ? "All " : "Ex ") + name + ". " + body;
      }
    }
    return {};
  }

  std::string abstract(const Abstract& a) {
    std::string name = pick(false);
    terms_.push_back(name);
    std::string body = formula(a.body());
    terms_.pop_back();
    return "\\" + name + ". " + body;
  }

 private:
  static int precedence(const Formula& f) {
    if (f.is_quant1() || f.is_quant2()) return 0;
    if (f.is_binary()) {
      if (f == Formula::top()) return 4;
      switch (f.connective()) {
        case Connective::Imp: return 1;
        case Connective::Or: return 2;
        case Connective::And: return 3;
      }
    }
    return 4;
  }

  std::string pick(bool upper) const {
    static const char* lower_pool[] = {"x", "y", "z", "u", "v", "w"};
    static const char* upper_pool[] = {"X", "Y", "Z", "U", "V", "W"};
    const auto& stack = upper ? sets_ : terms_;
    auto free = [&](const std::string& s) {
      return !used_.contains(s) && std::find(stack.begin(), stack.end(), s) == stack.end();
    };
    for (const char* c : upper ? upper_pool : lower_pool) {
      if (free(c)) return c;
    }
    for (unsigned i = 1;; ++i) {
      std::string s = std::string(upper ? "X" : "x") + std::to_string(i);
      if (free(s)) return s;
    }
  }

  std::set<std::string> used_;
  std::vector<std::string> terms_;
  std::vector<std::string> sets_;
};

}  // namespace

std::string to_string(const Term& t) {
  std::set<std::string> used;
  collect_vars(t, used);
  return Printer(std::move(used)).term(t);
}

std::string to_string(const Formula& f) {
  std::set<std::string> used;
  collect_names(f, used);
  return Printer(std::move(used)).formula(f);
}

std::string to_string(const Abstract& a) {
  std::set<std::string> used;
  collect_names(a.body(), used);
  return Printer(std::move(used)).abstract(a);
}

}  // namespace lip
