#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lip/lattice.hpp"

namespace lip {

// A relation R between W = {0..w-1} and W' = {0..w2-1}.
struct Polarity {
  std::size_t w = 0;
  std::size_t w2 = 0;
  std::vector<Subset> rows;  // rows[x] = {z : x R z}
  std::vector<Subset> cols;  // cols[z] = {x : x R z}

  static Polarity from_matrix(const std::vector<std::vector<bool>>& r);
  // <A, A, <=>
  static Polarity of_poset(const Poset& p);

  bool related(std::size_t x, std::size_t z) const { return has(rows[x], z); }
};

enum class GaloisSide { Up, Down, Closure };

Subset galois(const Polarity& p, GaloisSide side, Subset s);
inline Subset upper(const Polarity& p, Subset x) { return galois(p, GaloisSide::Up, x); }
inline Subset lower(const Polarity& p, Subset z) { return galois(p, GaloisSide::Down, z); }
inline Subset closure(const Polarity& p, Subset x) { return galois(p, GaloisSide::Closure, x); }

struct ClosedSetLattice {
  Polarity polarity;
  std::vector<Subset> members;  // sorted by size, then by mask

  std::size_t size() const { return members.size(); }
  std::optional<std::size_t> find(Subset s) const;
  std::size_t index_of(Subset s) const;
  std::size_t meet(std::size_t a, std::size_t b) const { return index_of(members[a] & members[b]); }
  std::size_t join(std::size_t a, std::size_t b) const {
    return index_of(closure(polarity, members[a] | members[b]));
  }
  // Ordered by inclusion, labelled by the member sets.
  FiniteLattice lattice() const;
};

// Throws SizeBound when |W| exceeds size_bound.
ClosedSetLattice concept_lattice(const Polarity& p, std::size_t size_bound = 16);

struct HeytingFrame {
  Polarity polarity;
  std::vector<std::vector<std::size_t>> op;        // op[x][y] = x o y
  std::size_t unit = 0;
  std::vector<std::vector<std::size_t>> residual;  // residual[x][z] in W'
};

// First violated law in the order associativity, unit, residuation,
// exchange, weakening, contraction; nullopt for a Heyting frame.
std::optional<std::string> frame_violation(const HeytingFrame& f);
void validate_frame(const HeytingFrame& f);

// <A, A, <=, meet, top, ->
HeytingFrame frame_of_algebra(const FiniteHeytingAlgebra& a);

struct FramePlus {
  ClosedSetLattice closed;
  FiniteHeytingAlgebra algebra;  // element i is closed.members[i]
};

// Throws NotAHeytingFrame naming the violated law.
FramePlus frame_plus(const HeytingFrame& f);

struct Embedding {
  Poset source;
  FiniteLattice target;
  std::vector<std::size_t> map;
};

bool is_order_embedding(const Embedding& e);

enum class CompletionMode { AsLattice, AsHeyting };

struct MacNeilleCompletion {
  ClosedSetLattice closed;
  Embedding embedding;
  std::optional<FiniteHeytingAlgebra> algebra;
  // AsHeyting only: gamma commutes with meet, join, -> and bot.
  bool preserves_operations = false;
};

// Throws NotAPartialOrder or, in AsHeyting mode, NotHeyting.
MacNeilleCompletion macneille(const Poset& p, CompletionMode mode);
MacNeilleCompletion macneille(const std::vector<std::vector<bool>>& leq, CompletionMode mode);

struct Density {
  bool join_dense = true;
  bool meet_dense = true;
};

// x = join of the image below x, and x = meet of the image above x.
Density density_direct(const Embedding& e, std::size_t x);
// Validity of the two infinitary rules at x.
Density density_by_rules(const Embedding& e, std::size_t x);

struct DensityReport {
  Density direct;
  Density rules;
  bool agree = true;
};

// at = nullopt checks every target element and reports the conjunction.
DensityReport density_check(const Embedding& e, std::optional<std::size_t> at = std::nullopt);

// Existing joins and meets of the source are preserved by the map.
bool regularity_check(const Embedding& e);

HeytingFrame random_frame(std::mt19937_64& rng, std::size_t max_w = 4, std::size_t max_w2 = 5);
// Three-element monoid with a nilpotent element.
HeytingFrame contraction_failing_frame();
// {0, a, b, 1} into a five-element chain with a + b sent below the image of 1.
Embedding boolean_into_five_chain();

Polarity parse_polarity(const std::string& text);
std::string format_polarity(const Polarity& p);
HeytingFrame parse_frame(const std::string& text);
std::string format_frame(const HeytingFrame& f);
FiniteHeytingAlgebra parse_algebra(const std::string& text);
std::string format_algebra(const Poset& a);
// "poset n [labels ...] matrix"; an algebra file is accepted as well.
Poset parse_poset(const std::string& text);

}  // namespace lip
