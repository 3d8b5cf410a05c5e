#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lip {

// Subsets of a finite carrier (at most 64 elements) as bitmasks.
using Subset = std::uint64_t;

inline bool has(Subset s, std::size_t i) { return (s >> i) & 1u; }
inline Subset bit(std::size_t i) { return Subset{1} << i; }
inline Subset full_set(std::size_t n) { return n >= 64 ? ~Subset{0} : bit(n) - 1; }
std::vector<std::size_t> elements(Subset s);
std::string subset_to_string(Subset s);

class Poset {
 public:
  Poset() = default;

  // leq[a][b] is true when a <= b. Throws NotAPartialOrder.
  static Poset from_matrix(const std::vector<std::vector<bool>>& leq, std::vector<std::string> labels = {});
  static Poset chain(std::size_t n);
  static Poset antichain(std::size_t n);

  std::size_t size() const { return up_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return has(up_[a], b); }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  Subset up(std::size_t a) const { return up_[a]; }
  Subset down(std::size_t a) const { return down_[a]; }

  Subset upper_bounds(Subset s) const;
  Subset lower_bounds(Subset s) const;
  std::optional<std::size_t> lub(Subset s) const;
  std::optional<std::size_t> glb(Subset s) const;
  bool is_lattice() const;

  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
  std::vector<std::vector<bool>> matrix() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> find_label(const std::string& l) const;

 protected:
  std::vector<Subset> up_;
  std::vector<Subset> down_;
  std::vector<std::string> labels_;
};

class FiniteLattice : public Poset {
 public:
  FiniteLattice() = default;
  // Throws NotALattice when some pair lacks a meet or join.
  explicit FiniteLattice(const Poset& p);

  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }
  std::size_t meet_all(Subset s) const;
  std::size_t join_all(Subset s) const;
  bool is_distributive() const;

 protected:
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
};

class FiniteHeytingAlgebra : public FiniteLattice {
 public:
  FiniteHeytingAlgebra() = default;
  // Throws NotHeyting when a relative pseudo-complement is missing.
  explicit FiniteHeytingAlgebra(const FiniteLattice& l);

  static FiniteHeytingAlgebra from_matrix(const std::vector<std::vector<bool>>& leq,
                                          std::vector<std::string> labels = {});
  static FiniteHeytingAlgebra chain(std::size_t n, std::vector<std::string> labels = {});
  // {0, 0.5, 1}
  static FiniteHeytingAlgebra three_chain();
  // Powerset of a k-element set.
  static FiniteHeytingAlgebra boolean(std::size_t k);

  std::size_t imp(std::size_t a, std::size_t b) const { return imp_[a * size() + b]; }
  std::size_t neg(std::size_t a) const { return imp(a, bottom()); }
  bool is_boolean() const;

 private:
  std::vector<std::size_t> imp_;
};

// Isomorphism of finite posets by exhaustive search over permutations.
bool isomorphic(const Poset& a, const Poset& b);

// One representative per isomorphism class of n-element posets (n <= 6).
std::vector<Poset> posets_up_to_iso(std::size_t n);

// Heyting algebras (equivalently finite distributive lattices) of size
// 1..max_size up to isomorphism.
std::vector<FiniteHeytingAlgebra> heyting_catalogue(std::size_t max_size);

}  // namespace lip
