#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lip/derivation.hpp"

namespace lip {

struct CutEliminationReport {
  std::size_t passes = 0;
  // Maximum cut rank present at the start of each pass.
  std::vector<unsigned> pass_max_rank;
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  std::size_t cuts_before = 0;
};

// Largest cut-formula rank in d, if d has any cut.
std::optional<unsigned> max_cut_rank(const Derivation& d);

// Removes every cut from an LI derivation, one rank level per pass. The
// endsequent is preserved exactly.
Derivation eliminate_cuts(const Derivation& d, CutEliminationReport* report = nullptr);

// One pass: removes the cuts of maximal rank, leaving only lower-rank cuts.
Derivation lower_cut_rank(const Derivation& d);

// Interpolant for a cut-free LI derivation of left, right => Pi: a formula
// I with left => I and I, right => Pi provable and its predicates and free
// variables shared by both sides.
Formula interpolate(const Derivation& d, const std::vector<Formula>& left, const std::vector<Formula>& right);

}  // namespace lip
