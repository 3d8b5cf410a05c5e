#include "lip/lattice.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "lip/error.hpp"

namespace lip {

std::vector<std::size_t> elements(Subset s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (auto i : elements(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

Poset Poset::from_matrix(const std::vector<std::vector<bool>>& leq, std::vector<std::string> labels) {
  const std::size_t n = leq.size();
  if (n > 64) throw Error(ErrorCode::SizeBound, "posets are limited to 64 elements");
  for (const auto& row : leq) {
    if (row.size() != n) throw Error(ErrorCode::NotAPartialOrder, "order matrix is not square");
  }
  Poset p;
  p.up_.assign(n, 0);
  p.down_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (leq[a][b]) {
        p.up_[a] |= bit(b);
        p.down_[b] |= bit(a);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) throw Error(ErrorCode::NotAPartialOrder, "not reflexive at " + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) {
        throw Error(ErrorCode::NotAPartialOrder,
                    "not antisymmetric at " + std::to_string(a) + ", " + std::to_string(b));
      }
      if (leq[a][b] && (p.up_[b] & ~p.up_[a])) {
        throw Error(ErrorCode::NotAPartialOrder, "not transitive at " + std::to_string(a) + ", " + std::to_string(b));
      }
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) throw Error(ErrorCode::InvalidArgument, "label count differs from carrier size");
  p.labels_ = std::move(labels);
  return p;
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) m[a][b] = true;
  }
  return from_matrix(m);
}

Poset Poset::antichain(std::size_t n) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) m[a][a] = true;
  return from_matrix(m);
}

Subset Poset::upper_bounds(Subset s) const {
  Subset out = full_set(size());
  for (auto a : elements(s)) out &= up_[a];
  return out;
}

Subset Poset::lower_bounds(Subset s) const {
  Subset out = full_set(size());
  for (auto a : elements(s)) out &= down_[a];
  return out;
}

std::optional<std::size_t> Poset::lub(Subset s) const {
  Subset ub = upper_bounds(s);
  for (auto u : elements(ub)) {
    if ((ub & ~up_[u]) == 0) return u;
  }
  return std::nullopt;
}

std::optional<std::size_t> Poset::glb(Subset s) const {
  Subset lb = lower_bounds(s);
  for (auto l : elements(lb)) {
    if ((lb & ~down_[l]) == 0) return l;
  }
  return std::nullopt;
}

bool Poset::is_lattice() const {
  if (size() == 0) return false;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) {
      if (!lub(bit(a) | bit(b)) || !glb(bit(a) | bit(b))) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (!less(a, b)) continue;
      Subset between = (up_[a] & down_[b]) & ~(bit(a) | bit(b));
      if (between == 0) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::vector<bool>> Poset::matrix() const {
  std::vector<std::vector<bool>> m(size(), std::vector<bool>(size()));
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) m[a][b] = leq(a, b);
  }
  return m;
}

std::optional<std::size_t> Poset::find_label(const std::string& l) const {
  auto it = std::find(labels_.begin(), labels_.end(), l);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

FiniteLattice::FiniteLattice(const Poset& p) : Poset(p) {
  const std::size_t n = size();
  if (n == 0) throw Error(ErrorCode::NotALattice, "empty carrier");
  meet_.resize(n * n);
  join_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto m = glb(bit(a) | bit(b));
      auto j = lub(bit(a) | bit(b));
      if (!m) throw Error(ErrorCode::NotALattice, "no meet for " + label(a) + ", " + label(b));
      if (!j) throw Error(ErrorCode::NotALattice, "no join for " + label(a) + ", " + label(b));
      meet_[a * n + b] = *m;
      join_[a * n + b] = *j;
    }
  }
  bottom_ = *lub(0);
  top_ = *glb(0);
}

std::size_t FiniteLattice::meet_all(Subset s) const {
  std::size_t out = top_;
  for (auto a : elements(s)) out = meet(out, a);
  return out;
}

std::size_t FiniteLattice::join_all(Subset s) const {
  std::size_t out = bottom_;
  for (auto a : elements(s)) out = join(out, a);
  return out;
}

bool FiniteLattice::is_distributive() const {
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      for (std::size_t c = 0; c < size(); ++c) {
        if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
      }
    }
  }
  return true;
}

FiniteHeytingAlgebra::FiniteHeytingAlgebra(const FiniteLattice& l) : FiniteLattice(l) {
  const std::size_t n = size();
  imp_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Subset c = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (leq(meet(a, x), b)) c |= bit(x);
      }
      std::optional<std::size_t> best;
      for (auto x : elements(c)) {
        if ((c & ~down_[x]) == 0) best = x;
      }
      if (!best) throw Error(ErrorCode::NotHeyting, "no implication " + label(a) + " -> " + label(b));
      imp_[a * n + b] = *best;
    }
  }
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::from_matrix(const std::vector<std::vector<bool>>& leq,
                                                       std::vector<std::string> labels) {
  return FiniteHeytingAlgebra(FiniteLattice(Poset::from_matrix(leq, std::move(labels))));
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::chain(std::size_t n, std::vector<std::string> labels) {
  return from_matrix(Poset::chain(n).matrix(), std::move(labels));
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::three_chain() { return chain(3, {"0", "0.5", "1"}); }

FiniteHeytingAlgebra FiniteHeytingAlgebra::boolean(std::size_t k) {
  if (k > 6) throw Error(ErrorCode::SizeBound, "boolean algebras are limited to 64 elements");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(subset_to_string(a));
    for (std::size_t b = 0; b < n; ++b) m[a][b] = (a & ~b) == 0;
  }
  return from_matrix(m, std::move(labels));
}

bool FiniteHeytingAlgebra::is_boolean() const {
  for (std::size_t a = 0; a < size(); ++a) {
    if (join(a, neg(a)) != top()) return false;
  }
  return true;
}

namespace {

std::vector<std::pair<int, int>> degree_profile(const Poset& p) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    out.emplace_back(std::popcount(p.up(a)), std::popcount(p.down(a)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool isomorphic(const Poset& a, const Poset& b) {
  const std::size_t n = a.size();
  if (n != b.size() || degree_profile(a) != degree_profile(b)) return false;
  std::vector<std::size_t> map(n);
  Subset used = 0;
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (has(used, j)) continue;
      if (std::popcount(a.up(i)) != std::popcount(b.up(j)) || std::popcount(a.down(i)) != std::popcount(b.down(j))) {
        continue;
      }
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = a.leq(i, k) == b.leq(j, map[k]) && a.leq(k, i) == b.leq(map[k], j);
      }
      if (!ok) continue;
      map[i] = j;
      used |= bit(j);
      if (extend(i + 1)) return true;
      used &= ~bit(j);
    }
    return false;
  };
  return extend(0);
}

std::vector<Poset> posets_up_to_iso(std::size_t n) {
  if (n > 6) throw Error(ErrorCode::SizeBound, "poset enumeration is limited to 6 elements");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::map<std::vector<std::pair<int, int>>, std::vector<Poset>> buckets;
  std::vector<Poset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<Subset> up(n);
    for (std::size_t i = 0; i < n; ++i) up[i] = bit(i);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (has(mask, s)) up[slots[s].first] |= bit(slots[s].second);
    }
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i) {
      for (auto j : elements(up[i])) {
        if (up[j] & ~up[i]) {
          transitive = false;
          break;
        }
      }
    }
    if (!transitive) continue;
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (auto j : elements(up[i])) m[i][j] = true;
    }
    Poset p = Poset::from_matrix(m);
    auto& bucket = buckets[degree_profile(p)];
    bool seen = std::any_of(bucket.begin(), bucket.end(), [&](const Poset& q) { return isomorphic(p, q); });
    if (seen) continue;
    bucket.push_back(p);
    out.push_back(p);
  }
  return out;
}

std::vector<FiniteHeytingAlgebra> heyting_catalogue(std::size_t max_size) {
  std::vector<FiniteHeytingAlgebra> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const auto& p : posets_up_to_iso(n)) {
      if (!p.is_lattice()) continue;
      FiniteLattice l(p);
      if (!l.is_distributive()) continue;
      out.emplace_back(l);
    }
  }
  return out;
}

}  // namespace lip
