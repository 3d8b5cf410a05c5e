#include "lip/sequent.hpp"

#include <algorithm>

#include "lip/error.hpp"
#include "lip/syntax.hpp"

namespace lip {

bool formula_less(const Formula& a, const Formula& b) {
  if (a == b) return false;
  const std::string& ka = a.key();
  const std::string& kb = b.key();
  if (ka != kb) return ka < kb;
  return a.hash() < b.hash();
}

std::vector<Formula> normalize_set(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end(), formula_less);
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

Sequent::Sequent(std::vector<Formula> antecedent, std::optional<Formula> succedent)
    : antecedent_(normalize_set(std::move(antecedent))), succedent_(std::move(succedent)) {}

bool Sequent::contains(const Formula& f) const {
  return std::binary_search(antecedent_.begin(), antecedent_.end(), f, formula_less);
}

Sequent Sequent::with(const Formula& f) const {
  if (contains(f)) return *this;
  Sequent out = *this;
  out.antecedent_.insert(std::lower_bound(out.antecedent_.begin(), out.antecedent_.end(), f, formula_less), f);
  return out;
}

Sequent Sequent::with(const std::vector<Formula>& fs) const {
  std::vector<Formula> all = antecedent_;
  all.insert(all.end(), fs.begin(), fs.end());
  return Sequent(std::move(all), succedent_);
}

Sequent Sequent::without(const Formula& f) const {
  Sequent out = *this;
  auto it = std::lower_bound(out.antecedent_.begin(), out.antecedent_.end(), f, formula_less);
  if (it != out.antecedent_.end() && *it == f) out.antecedent_.erase(it);
  return out;
}

Sequent Sequent::with_succedent(std::optional<Formula> f) const {
  Sequent out = *this;
  out.succedent_ = std::move(f);
  return out;
}

std::set<std::string> Sequent::free_term_vars() const {
  std::set<std::string> out;
  for (const auto& f : antecedent_) out.insert(f.free_term_vars().begin(), f.free_term_vars().end());
  if (succedent_) out.insert(succedent_->free_term_vars().begin(), succedent_->free_term_vars().end());
  return out;
}

std::set<std::string> Sequent::free_set_vars() const {
  std::set<std::string> out;
  for (const auto& f : antecedent_) out.insert(f.free_set_vars().begin(), f.free_set_vars().end());
  if (succedent_) out.insert(succedent_->free_set_vars().begin(), succedent_->free_set_vars().end());
  return out;
}

std::set<std::string> Sequent::names() const {
  std::set<std::string> out;
  for (const auto& f : antecedent_) collect_names(f, out);
  if (succedent_) collect_names(*succedent_, out);
  return out;
}

CalculusId CalculusId::parse(std::string_view text) {
  if (text == "LI") return li();
  if (text == "LIT") return lit();
  if (text.size() > 3 && text.substr(0, 3) == "LIP") {
    std::string digits(text.substr(3));
    if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return lip(std::stoi(digits));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown calculus '" + std::string(text) + "'");
}

bool CalculusId::admits(const Formula& f) const {
  switch (kind) {
    case Kind::LI: return f.level() == Level::first_order();
    case Kind::LIP: return f.level().within(n);
    case Kind::LIT: return true;
  }
  return false;
}

std::string CalculusId::name() const {
  switch (kind) {
    case Kind::LI: return "LI";
    case Kind::LIP: return "LIP" + std::to_string(n);
    case Kind::LIT: return "LIT";
  }
  return {};
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent().size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.antecedent()[i]);
  }
  out += out.empty() ? "|-" : " |-";
  if (s.succedent()) out += " " + to_string(*s.succedent());
  return out;
}

Sequent parse_sequent(std::string_view text, const Language& language) {
  Reader r(text, language);
  std::vector<Formula> ant;
  if (!r.looking_at("|-")) {
    do {
      ant.push_back(r.formula());
    } while (r.consume(","));
  }
  r.expect("|-");
  std::optional<Formula> succ;
  if (!r.at_end()) succ = r.formula();
  if (!r.at_end()) r.fail("unexpected trailing input");
  return Sequent(std::move(ant), std::move(succ));
}

}  // namespace lip
