#include "lip/polarity.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lip/error.hpp"

namespace lip {

Polarity Polarity::from_matrix(const std::vector<std::vector<bool>>& r) {
  Polarity p;
  p.w = r.size();
  p.w2 = r.empty() ? 0 : r[0].size();
  if (p.w > 64 || p.w2 > 64) throw Error(ErrorCode::SizeBound, "polarities are limited to 64 elements per side");
  p.rows.assign(p.w, 0);
  p.cols.assign(p.w2, 0);
  for (std::size_t x = 0; x < p.w; ++x) {
    if (r[x].size() != p.w2) throw Error(ErrorCode::InvalidArgument, "relation rows differ in length");
    for (std::size_t z = 0; z < p.w2; ++z) {
      if (r[x][z]) {
        p.rows[x] |= bit(z);
        p.cols[z] |= bit(x);
      }
    }
  }
  return p;
}

Polarity Polarity::of_poset(const Poset& a) { return from_matrix(a.matrix()); }

Subset galois(const Polarity& p, GaloisSide side, Subset s) {
  switch (side) {
    case GaloisSide::Up: {
      if (s & ~full_set(p.w)) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds W");
      Subset out = full_set(p.w2);
      for (auto x : elements(s)) out &= p.rows[x];
      return out;
    }
    case GaloisSide::Down: {
      if (s & ~full_set(p.w2)) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds W'");
      Subset out = full_set(p.w);
      for (auto z : elements(s)) out &= p.cols[z];
      return out;
    }
    case GaloisSide::Closure:
      return galois(p, GaloisSide::Down, galois(p, GaloisSide::Up, s));
  }
  return 0;
}

std::optional<std::size_t> ClosedSetLattice::find(Subset s) const {
  auto less = [](Subset a, Subset b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  };
  auto it = std::lower_bound(members.begin(), members.end(), s, less);
  if (it == members.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

std::size_t ClosedSetLattice::index_of(Subset s) const {
  auto i = find(s);
  if (!i) throw Error(ErrorCode::IndexOutOfRange, "not a closed set: " + subset_to_string(s));
  return *i;
}

FiniteLattice ClosedSetLattice::lattice() const {
  std::vector<std::vector<bool>> m(size(), std::vector<bool>(size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < size(); ++a) {
    labels.push_back(subset_to_string(members[a]));
    for (std::size_t b = 0; b < size(); ++b) m[a][b] = (members[a] & ~members[b]) == 0;
  }
  return FiniteLattice(Poset::from_matrix(m, std::move(labels)));
}

ClosedSetLattice concept_lattice(const Polarity& p, std::size_t size_bound) {
  if (p.w > size_bound) {
    throw Error(ErrorCode::SizeBound,
                "|W| = " + std::to_string(p.w) + " exceeds the bound " + std::to_string(size_bound));
  }
  std::set<Subset> found;
  if (p.w <= 12) {
    for (Subset s = 0; s <= full_set(p.w); ++s) found.insert(closure(p, s));
  } else {
    found.insert(full_set(p.w));
    std::vector<Subset> work = {full_set(p.w)};
    for (auto c : p.cols) {
      if (found.insert(c).second) work.push_back(c);
    }
    while (!work.empty()) {
      Subset s = work.back();
      work.pop_back();
      for (auto c : p.cols) {
        if (found.insert(s & c).second) work.push_back(s & c);
      }
    }
  }
  ClosedSetLattice out;
  out.polarity = p;
  out.members.assign(found.begin(), found.end());
  std::sort(out.members.begin(), out.members.end(), [](Subset a, Subset b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::optional<std::string> frame_violation(const HeytingFrame& f) {
  const auto& p = f.polarity;
  const std::size_t n = p.w;
  if (f.op.size() != n || f.residual.size() != n || f.unit >= n) return std::string("shape");
  for (std::size_t x = 0; x < n; ++x) {
    if (f.op[x].size() != n || f.residual[x].size() != p.w2) return std::string("shape");
    for (auto v : f.op[x]) {
      if (v >= n) return std::string("shape");
    }
    for (auto v : f.residual[x]) {
      if (v >= p.w2) return std::string("shape");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (f.op[f.op[x][y]][z] != f.op[x][f.op[y][z]]) return std::string("associativity");
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (f.op[f.unit][x] != x || f.op[x][f.unit] != x) return std::string("unit");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < p.w2; ++z) {
        if (p.related(f.op[x][y], z) != p.related(y, f.residual[x][z])) return std::string("residuation");
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < p.w2; ++z) {
        if (p.related(f.op[x][y], z) && !p.related(f.op[y][x], z)) return std::string("exchange");
      }
    }
  }
  for (std::size_t z = 0; z < p.w2; ++z) {
    if (p.related(f.unit, z) && p.cols[z] != full_set(n)) return std::string("weakening");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < p.w2; ++z) {
      if (p.related(f.op[x][x], z) && !p.related(x, z)) return std::string("contraction");
    }
  }
  return std::nullopt;
}

void validate_frame(const HeytingFrame& f) {
  if (auto law = frame_violation(f)) throw Error(ErrorCode::NotAHeytingFrame, *law);
}

HeytingFrame frame_of_algebra(const FiniteHeytingAlgebra& a) {
  HeytingFrame f;
  f.polarity = Polarity::of_poset(a);
  f.unit = a.top();
  f.op.assign(a.size(), std::vector<std::size_t>(a.size()));
  f.residual = f.op;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      f.op[x][y] = a.meet(x, y);
      f.residual[x][y] = a.imp(x, y);
    }
  }
  return f;
}

FramePlus frame_plus(const HeytingFrame& f) {
  validate_frame(f);
  const auto& p = f.polarity;
  ClosedSetLattice closed = concept_lattice(p, 64);
  FiniteHeytingAlgebra algebra{closed.lattice()};
  for (std::size_t i = 0; i < closed.size(); ++i) {
    for (std::size_t j = 0; j < closed.size(); ++j) {
      Subset X = closed.members[i], Y = closed.members[j];
      Subset imp = 0;
      for (std::size_t y = 0; y < p.w; ++y) {
        bool all = true;
        for (auto x : elements(X)) all = all && has(Y, f.op[x][y]);
        if (all) imp |= bit(y);
      }
      Subset res = 0;
      for (auto x : elements(X)) {
        for (auto z : elements(upper(p, Y))) res |= bit(f.residual[x][z]);
      }
      if (lower(p, res) != imp) throw std::logic_error("frame_plus: implication differs from its polar form");
      if (algebra.imp(i, j) != closed.index_of(imp)) {
        throw std::logic_error("frame_plus: implication is not the relative pseudo-complement");
      }
    }
  }
  return FramePlus{std::move(closed), std::move(algebra)};
}

bool is_order_embedding(const Embedding& e) {
  for (std::size_t a = 0; a < e.source.size(); ++a) {
    for (std::size_t b = 0; b < e.source.size(); ++b) {
      if (e.source.leq(a, b) != e.target.leq(e.map[a], e.map[b])) return false;
    }
  }
  return true;
}

MacNeilleCompletion macneille(const Poset& a, CompletionMode mode) {
  Polarity pol = Polarity::of_poset(a);
  MacNeilleCompletion out;
  out.closed = concept_lattice(pol, 64);
  out.embedding.source = a;
  out.embedding.target = out.closed.lattice();
  for (std::size_t x = 0; x < a.size(); ++x) out.embedding.map.push_back(out.closed.index_of(closure(pol, bit(x))));
  if (mode == CompletionMode::AsLattice) return out;

  std::optional<FiniteHeytingAlgebra> h;
  try {
    h.emplace(FiniteLattice(a));
  } catch (const Error& e) {
    throw Error(ErrorCode::NotHeyting, e.what());
  }
  FramePlus plus = frame_plus(frame_of_algebra(*h));
  const auto& g = out.embedding.map;
  bool ok = g[h->bottom()] == plus.closed.index_of(closure(pol, 0));
  for (std::size_t x = 0; x < a.size() && ok; ++x) {
    for (std::size_t y = 0; y < a.size() && ok; ++y) {
      ok = g[h->meet(x, y)] == plus.algebra.meet(g[x], g[y]) && g[h->join(x, y)] == plus.algebra.join(g[x], g[y]) &&
           g[h->imp(x, y)] == plus.algebra.imp(g[x], g[y]);
    }
  }
  out.algebra = std::move(plus.algebra);
  out.preserves_operations = ok;
  return out;
}

MacNeilleCompletion macneille(const std::vector<std::vector<bool>>& leq, CompletionMode mode) {
  return macneille(Poset::from_matrix(leq), mode);
}

Density density_direct(const Embedding& e, std::size_t x) {
  Subset below = 0, above = 0;
  for (std::size_t a = 0; a < e.source.size(); ++a) {
    if (e.target.leq(e.map[a], x)) below |= bit(e.map[a]);
    if (e.target.leq(x, e.map[a])) above |= bit(e.map[a]);
  }
  return {e.target.join_all(below) == x, e.target.meet_all(above) == x};
}

Density density_by_rules(const Embedding& e, std::size_t x) {
  const auto& B = e.target;
  Density d;
  for (std::size_t y = 0; y < B.size(); ++y) {
    bool left_premises = true, right_premises = true;
    for (std::size_t a = 0; a < e.source.size(); ++a) {
      std::size_t fa = e.map[a];
      if (B.leq(fa, x) && !B.leq(fa, y)) left_premises = false;
      if (B.leq(x, fa) && !B.leq(y, fa)) right_premises = false;
    }
    if (left_premises && !B.leq(x, y)) d.join_dense = false;
    if (right_premises && !B.leq(y, x)) d.meet_dense = false;
  }
  return d;
}

DensityReport density_check(const Embedding& e, std::optional<std::size_t> at) {
  DensityReport r;
  for (std::size_t x = 0; x < e.target.size(); ++x) {
    if (at && *at != x) continue;
    Density a = density_direct(e, x), b = density_by_rules(e, x);
    r.direct.join_dense = r.direct.join_dense && a.join_dense;
    r.direct.meet_dense = r.direct.meet_dense && a.meet_dense;
    r.rules.join_dense = r.rules.join_dense && b.join_dense;
    r.rules.meet_dense = r.rules.meet_dense && b.meet_dense;
    r.agree = r.agree && a.join_dense == b.join_dense && a.meet_dense == b.meet_dense;
  }
  return r;
}

bool regularity_check(const Embedding& e) {
  const std::size_t n = e.source.size();
  if (n > 20) throw Error(ErrorCode::SizeBound, "regularity check enumerates subsets of at most 20 elements");
  for (Subset s = 0; s <= full_set(n); ++s) {
    Subset image = 0;
    for (auto a : elements(s)) image |= bit(e.map[a]);
    if (auto b = e.source.lub(s); b && e.target.join_all(image) != e.map[*b]) return false;
    if (auto b = e.source.glb(s); b && e.target.meet_all(image) != e.map[*b]) return false;
  }
  return true;
}

HeytingFrame random_frame(std::mt19937_64& rng, std::size_t max_w, std::size_t max_w2) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (;;) {
    std::size_t k = 2 + pick(2);
    Subset base = full_set(k);
    std::set<Subset> family = {base};
    std::size_t extra = 1 + pick(max_w);
    for (std::size_t i = 0; i < extra; ++i) family.insert(static_cast<Subset>(pick(base + 1)));
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto a : std::vector<Subset>(family.begin(), family.end())) {
        for (auto b : std::vector<Subset>(family.begin(), family.end())) grew = family.insert(a & b).second || grew;
      }
    }
    if (family.size() > max_w) continue;
    std::vector<Subset> w(family.begin(), family.end());
    const std::size_t n = w.size();
    auto index = [&](Subset s) { return static_cast<std::size_t>(std::find(w.begin(), w.end(), s) - w.begin()); };

    auto down_closed = [&](Subset c) {
      for (auto i : elements(c)) {
        for (std::size_t j = 0; j < n; ++j) {
          if ((w[j] & ~w[i]) == 0 && !has(c, j)) return false;
        }
      }
      return true;
    };
    std::vector<Subset> cols;
    std::size_t seeds = 1 + pick(3);
    for (std::size_t tries = 0; cols.size() < seeds && tries < 50; ++tries) {
      Subset c = static_cast<Subset>(pick(full_set(n) + 1));
      if (down_closed(c) && std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }
    if (cols.empty()) continue;
    auto res = [&](std::size_t x, Subset c) {
      Subset out = 0;
      for (std::size_t y = 0; y < n; ++y) {
        if (has(c, index(w[x] & w[y]))) out |= bit(y);
      }
      return out;
    };
    for (std::size_t i = 0; i < cols.size() && cols.size() <= max_w2; ++i) {
      for (std::size_t x = 0; x < n; ++x) {
        Subset r = res(x, cols[i]);
        if (std::find(cols.begin(), cols.end(), r) == cols.end()) cols.push_back(r);
      }
    }
    if (cols.size() > max_w2) continue;

    HeytingFrame f;
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(cols.size()));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t z = 0; z < cols.size(); ++z) rel[x][z] = has(cols[z], x);
    }
    f.polarity = Polarity::from_matrix(rel);
    f.unit = index(base);
    f.op.assign(n, std::vector<std::size_t>(n));
    f.residual.assign(n, std::vector<std::size_t>(cols.size()));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) f.op[x][y] = index(w[x] & w[y]);
      for (std::size_t z = 0; z < cols.size(); ++z) {
        f.residual[x][z] = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), res(x, cols[z])) - cols.begin());
      }
    }
    if (!frame_violation(f)) return f;
  }
}

HeytingFrame contraction_failing_frame() {
  HeytingFrame f;
  f.polarity = Polarity::from_matrix({{false, false, true}, {false, true, true}, {true, true, true}});
  f.unit = 0;
  f.op = {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}};
  f.residual = {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}};
  return f;
}

Embedding boolean_into_five_chain() {
  Embedding e;
  e.source = Poset::from_matrix({{true, true, true, true}, {false, true, false, true}, {false, false, true, true},
                                 {false, false, false, true}},
                                {"0", "a", "b", "1"});
  e.target = FiniteLattice(Poset::chain(5));
  e.map = {0, 1, 2, 4};
  return e;
}

namespace {

class Tokens {
 public:
  explicit Tokens(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) items_.push_back(t);
    }
  }
  bool done() const { return pos_ >= items_.size(); }
  const std::string& peek() const {
    if (done()) throw Error(ErrorCode::Parse, "unexpected end of input");
    return items_[pos_];
  }
  std::string next() {
    std::string t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& word) {
    std::string t = next();
    if (t != word) throw Error(ErrorCode::Parse, "expected '" + word + "' but found '" + t + "'");
  }
  std::size_t number() {
    std::string t = next();
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorCode::Parse, "expected a number but found '" + t + "'");
    }
    return std::stoul(t);
  }
  // rows x cols of 0/1, either space separated or packed per row.
  std::vector<std::vector<bool>> bits(std::size_t rows, std::size_t cols) {
    std::vector<bool> flat;
    while (flat.size() < rows * cols) {
      std::string t = next();
      for (char c : t) {
        if (c != '0' && c != '1') throw Error(ErrorCode::Parse, "expected 0 or 1 but found '" + t + "'");
        flat.push_back(c == '1');
      }
    }
    if (flat.size() != rows * cols) throw Error(ErrorCode::Parse, "matrix row overruns its width");
    std::vector<std::vector<bool>> m(rows, std::vector<bool>(cols));
    for (std::size_t i = 0; i < rows * cols; ++i) m[i / cols][i % cols] = flat[i];
    return m;
  }

 private:
  std::vector<std::string> items_;
  std::size_t pos_ = 0;
};

std::string format_bits(const std::vector<std::vector<bool>>& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + std::string(row[i] ? "1" : "0");
    out += "\n";
  }
  return out;
}

Polarity read_polarity(Tokens& t) {
  t.expect("polarity");
  std::size_t w = t.number(), w2 = t.number();
  return Polarity::from_matrix(t.bits(w, w2));
}

}  // namespace

Polarity parse_polarity(const std::string& text) {
  Tokens t(text);
  Polarity p = read_polarity(t);
  if (!t.done()) throw Error(ErrorCode::Parse, "trailing input after polarity: " + t.peek());
  return p;
}

std::string format_polarity(const Polarity& p) {
  std::vector<std::vector<bool>> m(p.w, std::vector<bool>(p.w2));
  for (std::size_t x = 0; x < p.w; ++x) {
    for (std::size_t z = 0; z < p.w2; ++z) m[x][z] = p.related(x, z);
  }
  return "polarity " + std::to_string(p.w) + " " + std::to_string(p.w2) + "\n" + format_bits(m);
}

HeytingFrame parse_frame(const std::string& text) {
  Tokens t(text);
  HeytingFrame f;
  f.polarity = read_polarity(t);
  const std::size_t n = f.polarity.w;
  t.expect("monoid");
  f.op.assign(n, std::vector<std::size_t>(n));
  for (auto& row : f.op) {
    for (auto& v : row) v = t.number();
  }
  t.expect("unit");
  f.unit = t.number();
  t.expect("residual");
  f.residual.assign(n, std::vector<std::size_t>(f.polarity.w2));
  for (auto& row : f.residual) {
    for (auto& v : row) v = t.number();
  }
  if (!t.done()) throw Error(ErrorCode::Parse, "trailing input after frame: " + t.peek());
  return f;
}

std::string format_frame(const HeytingFrame& f) {
  std::string out = format_polarity(f.polarity) + "monoid\n";
  for (const auto& row : f.op) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + std::to_string(row[i]);
    out += "\n";
  }
  out += "unit " + std::to_string(f.unit) + "\nresidual\n";
  for (const auto& row : f.residual) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + std::to_string(row[i]);
    out += "\n";
  }
  return out;
}

namespace {

std::pair<std::vector<std::vector<bool>>, std::vector<std::string>> read_order(Tokens& t) {
  std::size_t n = t.number();
  std::vector<std::string> labels;
  if (!t.done() && t.peek() == "labels") {
    t.next();
    for (std::size_t i = 0; i < n; ++i) labels.push_back(t.next());
  }
  auto m = t.bits(n, n);
  if (!t.done()) throw Error(ErrorCode::Parse, "trailing input after order matrix: " + t.peek());
  return {m, labels};
}

}  // namespace

FiniteHeytingAlgebra parse_algebra(const std::string& text) {
  Tokens t(text);
  t.expect("algebra");
  auto [m, labels] = read_order(t);
  return FiniteHeytingAlgebra::from_matrix(m, std::move(labels));
}

Poset parse_poset(const std::string& text) {
  Tokens t(text);
  if (!t.done() && t.peek() == "algebra") {
    t.next();
  } else {
    t.expect("poset");
  }
  auto [m, labels] = read_order(t);
  return Poset::from_matrix(m, std::move(labels));
}

std::string format_algebra(const Poset& a) {
  std::string out = "algebra " + std::to_string(a.size()) + "\nlabels";
  for (const auto& l : a.labels()) out += " " + l;
  return out + "\n" + format_bits(a.matrix());
}

}  // namespace lip
