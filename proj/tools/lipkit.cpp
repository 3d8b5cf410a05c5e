#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "lip/builder.hpp"
#include "lip/cut_elim.hpp"
#include "lip/encodings.hpp"
#include "lip/error.hpp"
#include "lip/polarity.hpp"
#include "lip/search.hpp"
#include "lip/semantics.hpp"
#include "lip/syntax.hpp"

using json = nlohmann::json;
using namespace lip;

namespace {

constexpr const char* kSchema = "lipkit-report/1";

struct Report {
  std::string command;
  std::string verdict = "ok";
  int exit_code = 0;
  json data = json::object();
  std::vector<std::string> lines;
  std::optional<std::string> payload;

  void fail(std::string v) {
    verdict = std::move(v);
    exit_code = 1;
  }
};

struct Settings {
  std::string calculus = "LI";
  int depth = 12;
  std::size_t nodes = 200000;
  std::string terms;
  std::string format = "text";
  std::string algebra = "three-chain";
  std::string output;
};

struct Input {
  std::string text;
  Language language = Language::standard();
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (auto& p : out) {
    auto b = p.find_first_not_of(" \t\n");
    if (b == std::string::npos) continue;
    auto e = p.find_last_not_of(" \t\n");
    trimmed.push_back(p.substr(b, e - b + 1));
  }
  return trimmed;
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Directive lines: %const a b, %fun f/2, %pred p/1. They are blanked so
// line numbers in parse errors stay meaningful.
Input with_directives(std::string text) {
  Input in;
  in.text = std::move(text);
  std::size_t pos = 0;
  while (pos < in.text.size()) {
    std::size_t end = in.text.find('\n', pos);
    if (end == std::string::npos) end = in.text.size();
    std::string line = in.text.substr(pos, end - pos);
    if (line.rfind('%', 0) == 0) {
      std::istringstream ls(line.substr(1));
      std::string kind, item;
      ls >> kind;
      while (ls >> item) {
        if (kind == "const") {
          in.language.declare_function(item, 0);
        } else if (kind == "fun" || kind == "pred") {
          auto slash = item.find('/');
          if (slash == std::string::npos) throw Error(ErrorCode::Parse, "directive needs name/arity: " + item);
          unsigned arity = static_cast<unsigned>(std::stoul(item.substr(slash + 1)));
          if (kind == "fun") {
            in.language.declare_function(item.substr(0, slash), arity);
          } else {
            in.language.declare_predicate(item.substr(0, slash), arity);
          }
        } else {
          throw Error(ErrorCode::Parse, "unknown directive %" + kind);
        }
      }
      std::fill(in.text.begin() + static_cast<std::ptrdiff_t>(pos), in.text.begin() + static_cast<std::ptrdiff_t>(end), ' ');
    }
    pos = end + 1;
  }
  return in;
}

// A path to an existing file is read; anything else is literal text.
Input source(const std::string& arg) {
  if (arg == "-" || std::filesystem::is_regular_file(arg)) return with_directives(slurp(arg));
  return with_directives(arg);
}

SearchBudget budget_of(const Settings& s, const Language& lang) {
  SearchBudget b;
  b.max_depth = s.depth;
  b.max_nodes = s.nodes;
  for (const auto& t : split(s.terms, ',')) b.term_candidates.push_back(parse_term(t, lang));
  return b;
}

std::vector<Formula> formula_list(const std::string& text, const Language& lang) {
  std::vector<Formula> out;
  for (const auto& part : split(text, ';')) out.push_back(parse_formula(part, lang));
  return out;
}

json formulas_json(const std::vector<Formula>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

std::string joined(const std::vector<Formula>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? ", " : "") + to_string(fs[i]);
  return out;
}

FiniteHeytingAlgebra algebra_named(const std::string& name) {
  if (name == "three-chain") return FiniteHeytingAlgebra::three_chain();
  if (name.rfind("chain", 0) == 0) return FiniteHeytingAlgebra::chain(std::stoul(name.substr(5)));
  if (name.rfind("boolean", 0) == 0) return FiniteHeytingAlgebra::boolean(std::stoul(name.substr(7)));
  return parse_algebra(source(name).text);
}

void add_derivation(Report& r, const Derivation& d, const std::string& key = "derivation") {
  r.payload = to_string(d);
  r.data[key] = *r.payload;
  r.data["nodes"] = d.node_count();
  r.data["cuts"] = d.cut_count();
  r.data["endsequent"] = to_string(d.conclusion);
}

void emit(const Report& r, const Settings& s) {
  if (s.format == "json") {
    json out = r.data;
    out["schema"] = kSchema;
    out["command"] = r.command;
    out["verdict"] = r.verdict;
    out["exit_code"] = r.exit_code;
    if (!s.output.empty() && r.payload) {
      std::ofstream(s.output) << *r.payload << "\n";
      out["output"] = s.output;
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  bool inline_payload = r.payload && s.output.empty();
  const char* prefix = inline_payload ? "# " : "";
  std::cout << prefix << r.verdict << "\n";
  for (const auto& l : r.lines) std::cout << prefix << l << "\n";
  if (r.payload) {
    if (inline_payload) {
      std::cout << *r.payload << "\n";
    } else {
      std::ofstream(s.output) << *r.payload << "\n";
    }
  }
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDerivation:
    case ErrorCode::NotCutFree:
    case ErrorCode::MissingPremise:
    case ErrorCode::InvalidCertificate:
    case ErrorCode::NotAHeytingFrame:
    case ErrorCode::NotHeyting:
    case ErrorCode::NotALattice:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

namespace cmd {

Report check_file(const std::string& path, const Settings& s) {
  Report r{"check"};
  Input in = source(path);
  Derivation d = parse_derivation(in.text, in.language);
  CalculusId calc = CalculusId::parse(s.calculus);
  auto violations = check(d, calc);
  r.data["calculus"] = calc.name();
  r.data["nodes"] = d.node_count();
  r.data["cuts"] = d.cut_count();
  r.data["height"] = d.height();
  r.data["endsequent"] = to_string(d.conclusion);
  json vs = json::array();
  for (const auto& v : violations) {
    vs.push_back({{"path", v.path}, {"reason", v.reason}});
    r.lines.push_back("violation at " + v.path + ": " + v.reason);
  }
  r.data["violations"] = vs;
  if (!violations.empty()) r.fail("invalid");
  r.lines.push_back("calculus: " + calc.name());
  r.lines.push_back("nodes: " + std::to_string(d.node_count()));
  r.lines.push_back("cuts: " + std::to_string(d.cut_count()));
  r.lines.push_back("endsequent: " + to_string(d.conclusion));
  return r;
}

Report elim_cut(const std::string& path) {
  Report r{"elim-cut"};
  Input in = source(path);
  Derivation d = parse_derivation(in.text, in.language);
  CutEliminationReport rep;
  auto start = std::chrono::steady_clock::now();
  Derivation out = eliminate_cuts(d, &rep);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  add_derivation(r, out);
  r.data["passes"] = rep.passes;
  r.data["pass_max_rank"] = rep.pass_max_rank;
  r.data["nodes_before"] = rep.nodes_before;
  r.data["cuts_before"] = rep.cuts_before;
  r.data["milliseconds"] = ms;
  r.lines.push_back("passes: " + std::to_string(rep.passes));
  r.lines.push_back("cuts: " + std::to_string(rep.cuts_before) + " -> " + std::to_string(out.cut_count()));
  r.lines.push_back("nodes: " + std::to_string(rep.nodes_before) + " -> " + std::to_string(out.node_count()));
  return r;
}

Report interpolate_file(const std::string& path, const std::string& left_text, const Settings& s) {
  Report r{"interpolate"};
  Input in = source(path);
  Derivation d = parse_derivation(in.text, in.language);
  std::vector<Formula> left = left_text.empty() ? std::vector<Formula>{} : formula_list(left_text, in.language);
  std::vector<Formula> right;
  for (const auto& f : d.conclusion.antecedent()) {
    if (std::find(left.begin(), left.end(), f) == left.end()) right.push_back(f);
  }
  Formula i = interpolate(d, left, right);
  SearchBudget b = budget_of(s, in.language);
  bool first = search_cutfree(Sequent(left, i), b).has_value();
  std::vector<Formula> rhs = right;
  rhs.push_back(i);
  bool second = search_cutfree(Sequent(rhs, d.conclusion.succedent()), b).has_value();
  r.data["interpolant"] = to_string(i);
  r.data["left"] = formulas_json(left);
  r.data["right"] = formulas_json(right);
  r.data["left_certified"] = first;
  r.data["right_certified"] = second;
  r.lines.push_back("interpolant: " + to_string(i));
  r.lines.push_back(std::string("left side re-proved: ") + (first ? "yes" : "not within budget"));
  r.lines.push_back(std::string("right side re-proved: ") + (second ? "yes" : "not within budget"));
  return r;
}

Report search_goal(const std::string& arg, const Settings& s) {
  Report r{"search"};
  Input in = source(arg);
  Sequent goal = parse_sequent(in.text, in.language);
  SearchResult res = search(goal, budget_of(s, in.language));
  r.data["goal"] = to_string(goal);
  r.data["search_nodes"] = res.nodes;
  r.data["budget_exhausted"] = res.budget_exhausted;
  r.lines.push_back("goal: " + to_string(goal));
  r.lines.push_back("search nodes: " + std::to_string(res.nodes));
  if (!res.derivation) {
    r.fail("NotFoundWithinBudget");
    return r;
  }
  r.verdict = "found";
  add_derivation(r, *res.derivation);
  return r;
}

Report omega_membership_cmd(const std::string& q_text, const std::string& delta_text, const std::string& lambda,
                            const Settings& s) {
  Report r{"omega membership"};
  Language lang = Language::standard();
  Formula q = parse_formula(q_text, lang);
  std::vector<Formula> delta = delta_text.empty() ? std::vector<Formula>{} : formula_list(delta_text, lang);
  std::optional<Formula> lam;
  if (!lambda.empty()) lam = parse_formula(lambda, lang);
  OmegaVerdict v = omega_membership(q, delta, budget_of(s, lang), lam);
  r.data["goal"] = to_string(v.goal);
  r.data["eigen"] = v.eigen;
  r.data["member"] = v.member;
  r.lines.push_back("defining sequent: " + to_string(v.goal));
  if (!v.member) {
    r.fail("NotFoundWithinBudget");
    return r;
  }
  r.verdict = "Member";
  add_derivation(r, *v.certificate, "certificate");
  return r;
}

Report omega_reduce_cmd(const std::string& q_text, const std::string& gamma_text, const std::string& left_path,
                        const std::vector<std::string>& entries) {
  Report r{"omega reduce"};
  Input left_in = source(left_path);
  Formula q = parse_formula(q_text, left_in.language);
  OmegaCutConfig cfg{gamma_text.empty() ? std::vector<Formula>{} : formula_list(gamma_text, left_in.language), q,
                     parse_derivation(left_in.text, left_in.language), {}};
  for (const auto& e : entries) {
    auto eqpos = e.rfind('=');
    if (eqpos == std::string::npos) throw Error(ErrorCode::InvalidArgument, "premise entry needs DELTA=FILE: " + e);
    std::string delta = e.substr(0, eqpos);
    Input p = source(e.substr(eqpos + 1));
    auto ds = split(delta, ';');
    std::vector<Formula> fs;
    for (const auto& t : ds) fs.push_back(parse_formula(t, p.language));
    cfg.premise_table.emplace_back(normalize_set(fs), parse_derivation(p.text, p.language));
  }
  Derivation out = omega_cut_reduce(cfg);
  add_derivation(r, out);
  r.lines.push_back("reduced to the premise for {" + joined(normalize_set(cfg.gamma)) + "}");
  return r;
}

Report omega_probe_cmd(const std::string& model, const std::string& q_text, const Settings& s) {
  Report r{"omega probe"};
  Structure st = parse_structure(source(model).text);
  Formula q = parse_formula(q_text, st.language());
  ProbeReport p = omega_soundness_probe(st, q, sentence_pool(), budget_of(s, st.language()));
  const auto& h = st.algebra();
  r.data["q_value"] = h.label(p.q_value);
  json iv = json::array();
  for (auto v : p.instance_values) iv.push_back(h.label(v));
  r.data["instance_values"] = iv;
  json es = json::array();
  for (const auto& e : p.entries) {
    json j{{"delta", formulas_json(e.delta)}, {"member", e.member}};
    if (e.value) j["value"] = h.label(*e.value);
    es.push_back(j);
  }
  r.data["entries"] = es;
  r.data["certified"] = p.certified;
  r.data["unsound_instance"] = p.unsound_instance;
  r.verdict = p.unsound_instance ? "UNSOUND-INSTANCE" : "no-violation";
  r.lines.push_back("V(q) = " + h.label(p.q_value));
  r.lines.push_back("certified premise sets: " + std::to_string(p.certified));
  return r;
}

}  // namespace cmd

namespace cmd {

json subsets_json(const ClosedSetLattice& c) {
  json out = json::array();
  for (auto m : c.members) out.push_back(subset_to_string(m));
  return out;
}

Report lattice_complete(const std::string& path, bool heyting) {
  Report r{"lattice complete"};
  Poset p = parse_poset(source(path).text);
  MacNeilleCompletion mc = macneille(p, heyting ? CompletionMode::AsHeyting : CompletionMode::AsLattice);
  r.data["source_size"] = p.size();
  r.data["closed_sets"] = subsets_json(mc.closed);
  r.data["embedding"] = mc.embedding.map;
  r.data["order_embedding"] = is_order_embedding(mc.embedding);
  r.lines.push_back("closed sets: " + std::to_string(mc.closed.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    r.lines.push_back(p.label(i) + " -> " + subset_to_string(mc.closed.members[mc.embedding.map[i]]));
  }
  if (heyting) {
    r.data["preserves_operations"] = mc.preserves_operations;
    r.lines.push_back(std::string("operations preserved: ") + (mc.preserves_operations ? "yes" : "no"));
    if (!mc.preserves_operations) r.fail("not-preserved");
  }
  return r;
}

Report lattice_density(const std::string& path) {
  Report r{"lattice density"};
  Poset p = parse_poset(source(path).text);
  MacNeilleCompletion mc = macneille(p, CompletionMode::AsLattice);
  DensityReport d = density_check(mc.embedding);
  r.data["join_dense"] = d.direct.join_dense;
  r.data["meet_dense"] = d.direct.meet_dense;
  r.data["rules_join_dense"] = d.rules.join_dense;
  r.data["rules_meet_dense"] = d.rules.meet_dense;
  r.data["agree"] = d.agree;
  r.lines.push_back(std::string("join-dense: ") + (d.direct.join_dense ? "yes" : "no"));
  r.lines.push_back(std::string("meet-dense: ") + (d.direct.meet_dense ? "yes" : "no"));
  r.lines.push_back(std::string("rule formulation agrees: ") + (d.agree ? "yes" : "no"));
  if (!(d.direct.join_dense && d.direct.meet_dense && d.agree)) r.fail("not-dense");
  return r;
}

Report lattice_regularity(const std::string& path) {
  Report r{"lattice regularity"};
  Poset p = parse_poset(source(path).text);
  MacNeilleCompletion mc = macneille(p, CompletionMode::AsLattice);
  bool ok = regularity_check(mc.embedding);
  r.data["regular"] = ok;
  r.lines.push_back(std::string("regular: ") + (ok ? "yes" : "no"));
  if (!ok) r.fail("not-regular");
  return r;
}

Report lattice_frame(const std::string& path) {
  Report r{"lattice frame"};
  Input in = source(path);
  std::istringstream first(in.text);
  std::string word;
  while (first >> word && word.starts_with("#")) first.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  HeytingFrame f = word == "polarity" ? parse_frame(in.text) : frame_of_algebra(algebra_named(path));
  if (auto v = frame_violation(f)) {
    r.data["violation"] = *v;
    r.lines.push_back("violated: " + *v);
    r.fail("not-a-heyting-frame");
    return r;
  }
  FramePlus fp = frame_plus(f);
  r.data["closed_sets"] = subsets_json(fp.closed);
  r.data["distributive"] = fp.algebra.is_distributive();
  r.data["boolean"] = fp.algebra.is_boolean();
  r.data["algebra"] = format_algebra(fp.algebra);
  r.lines.push_back("closed sets: " + std::to_string(fp.closed.size()));
  r.lines.push_back(std::string("distributive: ") + (fp.algebra.is_distributive() ? "yes" : "no"));
  r.lines.push_back(format_algebra(fp.algebra));
  return r;
}

Report eval(const std::string& model, const std::string& text, const std::vector<std::string>& sets) {
  Report r{"eval"};
  Structure st = parse_structure(source(model).text);
  const auto& h = st.algebra();
  if (text.find("|-") != std::string::npos) {
    Sequent seq = parse_sequent(text, st.language());
    auto cm = find_countermodel(seq, st);
    r.data["sequent"] = to_string(seq);
    r.data["valid"] = !cm;
    if (!cm) {
      r.verdict = "valid";
      return r;
    }
    r.fail("countermodel");
    json val = json::object();
    for (const auto& [k, v] : cm->valuation) val[k] = v;
    json asg = json::object();
    for (const auto& [k, v] : cm->assignment) asg[k] = to_string(st.universe()[v]);
    r.data["valuation"] = val;
    r.data["assignment"] = asg;
    r.data["antecedent"] = h.label(cm->antecedent);
    r.data["succedent"] = h.label(cm->succedent);
    r.lines.push_back("antecedent " + h.label(cm->antecedent) + " is not below succedent " + h.label(cm->succedent));
    return r;
  }
  Formula f = parse_formula(text, st.language());
  Valuation v;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--set needs X=index: " + s);
    std::size_t index = std::stoul(s.substr(eq + 1));
    if (index >= st.domain().size()) {
      throw Error(ErrorCode::IndexOutOfRange, "domain has " + std::to_string(st.domain().size()) + " members");
    }
    v[s.substr(0, eq)] = index;
  }
  std::size_t value = interpret(f, st, v);
  r.verdict = h.label(value);
  r.data["formula"] = to_string(f);
  r.data["value"] = h.label(value);
  return r;
}

}  // namespace cmd

namespace cmd {

void certify(Report& r, const Derivation& d, const CalculusId& calc) {
  auto v = check(d, calc);
  r.data["calculus"] = calc.name();
  r.data["check"] = v.empty() ? "ok" : v.front().path + ": " + v.front().reason;
  r.lines.push_back("check in " + calc.name() + ": " + (v.empty() ? "ok" : "FAILED " + v.front().reason));
  if (!v.empty()) r.fail("invalid");
}

Report encode_relativize(const std::string& text) {
  Report r{"encode relativize"};
  Input in = source(text);
  Formula f = relativize(parse_formula(in.text, in.language));
  r.verdict = to_string(f);
  r.data["formula"] = to_string(f);
  r.data["level"] = to_string(f.level());
  return r;
}

Report encode_induction(const std::string& text) {
  Report r{"encode induction"};
  Input in = source(text);
  Derivation d = induction_derivation(parse_formula(in.text, in.language));
  add_derivation(r, d);
  certify(r, d, CalculusId::lip(0));
  return r;
}

Report encode_fixpoint(const std::string& text, int n, const std::string& set_var, const std::string& term_var,
                       const std::string& tau_text) {
  Report r{"encode fixpoint"};
  Input in = source(text);
  FixpointKit kit = fixpoint_kit(parse_formula(in.text, in.language), set_var, term_var, n);
  r.data["fix"] = to_string(kit.fix());
  r.data["fix_level"] = to_string(kit.fix().level());
  r.lines.push_back("Fix = " + to_string(kit.fix()));
  r.lines.push_back("level: " + to_string(kit.fix().level()));
  if (tau_text.empty()) {
    add_derivation(r, kit.lfp1());
  } else {
    add_derivation(r, kit.lfp2(parse_abstract(tau_text, in.language)));
  }
  certify(r, tau_text.empty() ? kit.lfp1() : kit.lfp2(parse_abstract(tau_text, in.language)), CalculusId::lip(n));
  return r;
}

struct FixDefinition {
  std::string set_var;
  std::string term_var;
  Formula body;
};

IDFormula to_id(const Formula& f, const std::map<std::string, FixDefinition>& defs, std::set<std::string>& active,
                int& counter) {
  switch (f.kind()) {
    case Formula::Kind::Pred: {
      auto it = defs.find(f.name());
      if (it == defs.end() || f.args().size() != 1) return IDFormula::pred(f.name(), {f.args().begin(), f.args().end()});
      if (!active.insert(f.name()).second) throw Error(ErrorCode::InvalidArgument, "circular definition " + f.name());
      IDFormula body = to_id(it->second.body, defs, active, counter);
      active.erase(f.name());
      return IDFormula::fix(body, it->second.set_var, it->second.term_var, f.arg());
    }
    case Formula::Kind::SetAtom: {
      if (f.set_is_bound()) break;
      auto it = defs.find(f.name());
      if (it == defs.end()) return IDFormula::set_atom(f.name(), f.arg());
      if (!active.insert(f.name()).second) throw Error(ErrorCode::InvalidArgument, "circular definition " + f.name());
      IDFormula body = to_id(it->second.body, defs, active, counter);
      active.erase(f.name());
      return IDFormula::fix(body, it->second.set_var, it->second.term_var, f.arg());
    }
    case Formula::Kind::Bot:
      return IDFormula::bot();
    case Formula::Kind::Binary:
      return IDFormula::binary(f.connective(), to_id(f.left(), defs, active, counter),
                               to_id(f.right(), defs, active, counter));
    case Formula::Kind::Quant1: {
      std::string v = "v" + std::to_string(++counter);
      return IDFormula::quant(f.quantifier(), v, to_id(instantiate(f.body(), Term::var(v)), defs, active, counter));
    }
    default:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "fixed-point formulas are first-order: " + to_string(f));
}

Report encode_id_translate(const std::string& text, const std::vector<std::string>& defines) {
  Report r{"encode id-translate"};
  Input in = source(text);
  std::map<std::string, FixDefinition> defs;
  for (const auto& d : defines) {
    auto eq = d.find('=');
    auto colon = d.find(':');
    auto comma = d.find(',');
    if (eq == std::string::npos || colon == std::string::npos || comma == std::string::npos || !(eq < comma && comma < colon)) {
      throw Error(ErrorCode::InvalidArgument, "--define needs NAME=X,x: BODY, got " + d);
    }
    auto parts = split(d.substr(eq + 1, colon - eq - 1), ',');
    if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "--define needs NAME=X,x: BODY, got " + d);
    defs.emplace(split(d.substr(0, eq), ' ').at(0),
                 FixDefinition{parts[0], parts[1], parse_formula(d.substr(colon + 1), in.language)});
  }
  std::set<std::string> active;
  int counter = 0;
  IDFormula phi = to_id(parse_formula(in.text, in.language), defs, active, counter);
  Formula t = id_translate(phi);
  r.verdict = to_string(t);
  r.data["id_formula"] = phi.to_string();
  r.data["id_level"] = phi.id_level();
  r.data["formula"] = to_string(t);
  r.data["level"] = to_string(t.level());
  return r;
}

Report encode_relativize_derivation(const std::string& path, const std::vector<std::string>& prs,
                                    const std::vector<std::string>& vars) {
  Report r{"encode relativize-derivation"};
  Input in = source(path);
  Derivation d = parse_derivation(in.text, in.language);
  RelativizeOptions opts;
  opts.variables = vars;
  for (const auto& p : prs) {
    auto parts = split(p, ':');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "--pr needs NAME:BASE:STEP, got " + p);
    opts.pr_symbols.push_back(PrDefinition{parts[0], parse_term(parts[1], in.language), parse_term(parts[2], in.language)});
  }
  RelativizedDerivation out = relativize_derivation(d, opts);
  add_derivation(r, out.derivation);
  r.data["axioms"] = formulas_json(out.axioms);
  certify(r, out.derivation, CalculusId::lip(0));
  return r;
}

Report demo_p_counter2(const Settings& s) {
  Report r{"demo p-counter2"};
  auto start = std::chrono::steady_clock::now();
  FiniteHeytingAlgebra h = algebra_named(s.algebra);
  Language lang;
  lang.open = false;
  lang.declare_function("*", 0);
  Structure st = Structure::full(h, lang, 0);
  Formula phi = parse_formula("(X(*) -> bot) | X(*)", lang);
  Formula q = Formula::forall2("X", phi);

  r.data["algebra"] = format_algebra(h);
  r.lines.push_back("algebra: " + [&] {
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? " " : "") + h.label(i);
    return out;
  }());
  r.lines.push_back("phi = " + to_string(phi));
  json vals = json::array();
  for (std::size_t i = 0; i < st.domain().size(); ++i) {
    std::size_t v = interpret(phi, st, {{"X", i}});
    const std::string& at = h.label(st.domain()[i][0]);
    vals.push_back({{"X(*)", at}, {"value", h.label(v)}});
    r.lines.push_back("V(X(*)) = " + at + ": V(phi) = " + h.label(v));
  }
  r.data["valuations"] = vals;
  std::size_t meet = interpret(q, st, {});
  r.data["meet"] = h.label(meet);
  r.lines.push_back("V(All X. phi) = " + h.label(meet));

  SearchBudget b;
  b.max_depth = s.depth;
  b.max_nodes = s.nodes;
  ProbeReport p = omega_soundness_probe(st, q, sentence_pool(), b);
  json cert = json::array();
  for (const auto& e : p.entries) {
    if (!e.member) continue;
    cert.push_back({{"delta", formulas_json(e.delta)}, {"value", h.label(*e.value)}});
    r.lines.push_back("certified {" + joined(e.delta) + "} => bot with value " + h.label(*e.value));
  }
  r.data["certified"] = cert;
  r.data["unsound_instance"] = p.unsound_instance;
  r.verdict = p.unsound_instance ? "UNSOUND-INSTANCE" : "no-violation";
  r.data["milliseconds"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report demo_omega_cut(const Settings& s) {
  Report r{"demo omega-cut"};
  Language lang = Language::standard();
  Formula q = parse_formula("All X. X(c) -> X(x)", lang);
  Formula yc = parse_formula("Y(c)", lang);
  Derivation left = build::imp_r(build::bot_l({yc}, parse_formula("Y(x)", lang)), yc);
  Derivation stored = build::bot_l({}, parse_formula("r", lang));
  OmegaCutConfig cfg{{Formula::bot()}, q, left, {{{Formula::bot()}, stored}}};
  Derivation reduced = omega_cut_reduce(cfg);
  bool identical = to_string(reduced) == to_string(stored);

  SearchBudget b;
  b.max_depth = s.depth;
  b.max_nodes = s.nodes;
  OmegaVerdict member = omega_membership(q, {Formula::bot()}, b);
  bool certificate_ok = member.member && is_valid(*member.certificate, CalculusId::li());
  OmegaVerdict empty = omega_membership(q, {}, b);

  r.data["q"] = to_string(q);
  r.data["reduced_identical"] = identical;
  r.data["gamma_member"] = member.member;
  r.data["certificate_valid"] = certificate_ok;
  r.data["empty_context"] = empty.member ? "Member" : "NotFoundWithinBudget";
  r.lines.push_back("q = " + to_string(q));
  r.lines.push_back("left: " + to_string(left.conclusion));
  r.lines.push_back("reduced endsequent: " + to_string(reduced.conclusion) + (identical ? " (stored premise)" : ""));
  r.lines.push_back(std::string("{bot} certified member: ") + (certificate_ok ? "yes" : "no"));
  r.lines.push_back(std::string("empty context: ") + (empty.member ? "Member" : "NotFoundWithinBudget"));
  add_derivation(r, reduced);
  if (!(identical && certificate_ok && !empty.member)) r.fail("unexpected");
  return r;
}

}  // namespace cmd

int main(int argc, char** argv) {
  CLI::App app{"lipkit: sequent calculi for parameter-free second-order logic"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--calculus", s.calculus, "LI, LIT or LIP<n>");
  app.add_option("--depth", s.depth, "search depth bound");
  app.add_option("--nodes", s.nodes, "search node budget");
  app.add_option("--terms", s.terms, "comma separated instance terms");
  app.add_option("--format", s.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--algebra", s.algebra, "three-chain, chainN, booleanK or an algebra file");
  app.add_option("-o,--output", s.output, "write the derivation to this file");

  std::function<Report()> run;
  std::string file, text, left, q, delta, lambda, gamma, model, set_var = "X", term_var = "x", tau;
  std::vector<std::string> entries, sets, defines, prs, vars;
  int level = 1;
  bool heyting = false;

  auto* check = app.add_subcommand("check", "check a derivation file");
  check->add_option("file", file)->required();
  check->callback([&] { run = [&] { return cmd::check_file(file, s); }; });

  auto* elim = app.add_subcommand("elim-cut", "eliminate cuts from an LI derivation");
  elim->add_option("file", file)->required();
  elim->callback([&] { run = [&] { return cmd::elim_cut(file); }; });

  auto* interp = app.add_subcommand("interpolate", "interpolant of a cut-free derivation");
  interp->add_option("file", file)->required();
  interp->add_option("--left", left, "left-hand formulas, separated by ';'");
  interp->callback([&] { run = [&] { return cmd::interpolate_file(file, left, s); }; });

  auto* srch = app.add_subcommand("search", "bounded cut-free proof search");
  srch->add_option("sequent", text, "sequent text or file")->required();
  srch->callback([&] { run = [&] { return cmd::search_goal(text, s); }; });

  auto* omega = app.add_subcommand("omega", "index-set membership, cut reduction, soundness probe");
  omega->require_subcommand(1);
  auto* om = omega->add_subcommand("membership");
  om->add_option("--q", q)->required();
  om->add_option("--delta", delta, "formulas separated by ';'");
  om->add_option("--lambda", lambda);
  om->callback([&] { run = [&] { return cmd::omega_membership_cmd(q, delta, lambda, s); }; });
  auto* orr = omega->add_subcommand("reduce");
  orr->add_option("--q", q)->required();
  orr->add_option("--gamma", gamma);
  orr->add_option("--left", file, "certificate derivation")->required();
  orr->add_option("--premise", entries, "DELTA=FILE, repeatable");
  orr->callback([&] { run = [&] { return cmd::omega_reduce_cmd(q, gamma, file, entries); }; });
  auto* op = omega->add_subcommand("probe");
  op->add_option("model", model)->required();
  op->add_option("--q", q)->required();
  op->callback([&] { run = [&] { return cmd::omega_probe_cmd(model, q, s); }; });

  auto* lat = app.add_subcommand("lattice", "completions and frames");
  lat->require_subcommand(1);
  auto* lc = lat->add_subcommand("complete");
  lc->add_option("file", file)->required();
  lc->add_flag("--heyting", heyting, "complete as a Heyting algebra");
  lc->callback([&] { run = [&] { return cmd::lattice_complete(file, heyting); }; });
  auto* lf = lat->add_subcommand("frame");
  lf->add_option("file", file)->required();
  lf->callback([&] { run = [&] { return cmd::lattice_frame(file); }; });
  auto* ld = lat->add_subcommand("density");
  ld->add_option("file", file)->required();
  ld->callback([&] { run = [&] { return cmd::lattice_density(file); }; });
  auto* lr = lat->add_subcommand("regularity");
  lr->add_option("file", file)->required();
  lr->callback([&] { run = [&] { return cmd::lattice_regularity(file); }; });

  auto* ev = app.add_subcommand("eval", "evaluate a formula or sequent in a structure");
  ev->add_option("model", model)->required();
  ev->add_option("text", text)->required();
  ev->add_option("--set", sets, "X=index into the domain, repeatable");
  ev->callback([&] { run = [&] { return cmd::eval(model, text, sets); }; });

  auto* enc = app.add_subcommand("encode", "arithmetic encodings");
  enc->require_subcommand(1);
  auto* er = enc->add_subcommand("relativize");
  er->add_option("formula", text)->required();
  er->callback([&] { run = [&] { return cmd::encode_relativize(text); }; });
  auto* ei = enc->add_subcommand("induction");
  ei->add_option("formula", text)->required();
  ei->callback([&] { run = [&] { return cmd::encode_induction(text); }; });
  auto* ef = enc->add_subcommand("fixpoint");
  ef->add_option("body", text)->required();
  ef->add_option("--n", level, "level of the fixed point");
  ef->add_option("--set-var", set_var);
  ef->add_option("--term-var", term_var);
  ef->add_option("--tau", tau, "abstract for the second closure law");
  ef->callback([&] { run = [&] { return cmd::encode_fixpoint(text, level, set_var, term_var, tau); }; });
  auto* eid = enc->add_subcommand("id-translate");
  eid->add_option("formula", text)->required();
  eid->add_option("--define", defines, "NAME=X,x: BODY, repeatable");
  eid->callback([&] { run = [&] { return cmd::encode_id_translate(text, defines); }; });
  auto* erd = enc->add_subcommand("relativize-derivation");
  erd->add_option("file", file)->required();
  erd->add_option("--pr", prs, "NAME:BASE:STEP over x and y, repeatable");
  erd->add_option("--var", vars, "extra variables with an Nn hypothesis");
  erd->callback([&] { run = [&] { return cmd::encode_relativize_derivation(file, prs, vars); }; });

  auto* demo = app.add_subcommand("demo", "countermodel demonstrations");
  demo->require_subcommand(1);
  demo->add_subcommand("p-counter2")->callback([&] { run = [&] { return cmd::demo_p_counter2(s); }; });
  demo->add_subcommand("omega-cut")->callback([&] { run = [&] { return cmd::demo_omega_cut(s); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report r = run();
    emit(r, s);
    return r.exit_code;
  } catch (const Error& e) {
    int code = exit_for(e.code());
    if (s.format == "json") {
      json out{{"schema", kSchema}, {"verdict", "error"}, {"error", error_code_name(e.code())},
               {"message", e.what()}, {"exit_code", code}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
